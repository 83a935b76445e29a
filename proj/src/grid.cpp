#include "dsr/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dsr {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Grid1D::Grid1D(int n, double length) : n_(n), length_(length) {
  if (n < 16 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("Grid1D: n must be a power of two >= 16, got " +
                                std::to_string(n));
  }
  if (!(length > 0.0)) {
    throw std::invalid_argument("Grid1D: length must be > 0");
  }
}

double Grid1D::mode_momentum(int j) const {
  const int j_eff = j < n_ / 2 ? j : j - n_;
  return kTwoPi * j_eff / length_;
}

Eigen::ArrayXd Grid1D::positions() const {
  Eigen::ArrayXd x(n_);
  for (int i = 0; i < n_; ++i) x[i] = position(i);
  return x;
}

Eigen::ArrayXd Grid1D::mode_momenta() const {
  Eigen::ArrayXd p(n_);
  for (int j = 0; j < n_; ++j) p[j] = mode_momentum(j);
  return p;
}

double Grid1D::max_mode_momentum() const {
  return std::numbers::pi * n_ / length_;
}

ScalarField::ScalarField(Grid1D grid_, Eigen::VectorXcd values_)
    : grid(grid_), values(std::move(values_)) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("ScalarField: value count does not match grid");
  }
}

double ScalarField::norm_squared() const {
  return values.squaredNorm() * grid.spacing();
}

SpinorField::SpinorField(Grid1D grid_, Eigen::VectorXcd upper_,
                         Eigen::VectorXcd lower_)
    : grid(grid_), upper(std::move(upper_)), lower(std::move(lower_)) {
  if (upper.size() != grid.size() || lower.size() != grid.size()) {
    throw std::invalid_argument("SpinorField: component size mismatch");
  }
}

double SpinorField::norm_squared() const {
  return (upper.squaredNorm() + lower.squaredNorm()) * grid.spacing();
}

Eigen::ArrayXd SpinorField::density() const {
  return upper.array().abs2() + lower.array().abs2();
}

Observables observables(const Grid1D& grid, const Eigen::ArrayXd& density) {
  if (density.size() != grid.size()) {
    throw std::invalid_argument("observables: density size mismatch");
  }
  const double dx = grid.spacing();
  const double l = grid.length();
  const double norm = density.sum() * dx;

  std::complex<double> first_moment(0.0, 0.0);
  for (int i = 0; i < grid.size(); ++i) {
    const double theta = kTwoPi * grid.position(i) / l;
    first_moment += density[i] * dx *
                    std::complex<double>(std::cos(theta), std::sin(theta));
  }

  double mean;
  if (std::abs(first_moment) < 1e-12 * std::max(norm, 1e-300)) {
    mean = 0.5 * l;  // no circular mean: report the box center
  } else {
    mean = std::arg(first_moment) / kTwoPi * l;
    if (mean < 0.0) mean += l;
  }

  double variance = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    double d = grid.position(i) - mean;
    d -= l * std::round(d / l);  // wrapped signed distance in [-L/2, L/2)
    variance += density[i] * d * d;
  }
  variance *= dx;
  if (norm > 0.0) variance /= norm;

  return {norm, mean, variance};
}

Observables observables(const ScalarField& field) {
  return observables(field.grid, field.values.array().abs2());
}

Observables observables(const SpinorField& field) {
  return observables(field.grid, field.density());
}

ScalarField gaussian_packet(const Grid1D& grid, double center, double sigma,
                            double p0) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gaussian_packet: sigma must be > 0");
  }
  const double norm_factor = std::pow(kTwoPi * sigma * sigma, -0.25);

  Eigen::VectorXcd values(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const double x = grid.position(i);
    const double u = x - center;
    const double envelope = norm_factor * std::exp(-u * u / (4.0 * sigma * sigma));
    values[i] = envelope *
                std::complex<double>(std::cos(p0 * x), std::sin(p0 * x));
  }
  return {grid, std::move(values)};
}

}  // namespace dsr
