#include "dsr/series.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace dsr {

namespace {

void check_same_order(const TruncatedSeries& a, const TruncatedSeries& b,
                      const char* op) {
  if (a.order() != b.order()) {
    throw std::invalid_argument(std::string(op) + ": order mismatch (" +
                                std::to_string(a.order()) + " vs " +
                                std::to_string(b.order()) + ")");
  }
}

}  // namespace

TruncatedSeries::TruncatedSeries(int order, std::string variable_label)
    : coefficients_(Eigen::ArrayXd::Zero(order + 1)),
      variable_label_(std::move(variable_label)) {
  if (order < 0) throw std::invalid_argument("TruncatedSeries: order < 0");
}

TruncatedSeries::TruncatedSeries(Eigen::ArrayXd coefficients,
                                 std::string variable_label)
    : coefficients_(std::move(coefficients)),
      variable_label_(std::move(variable_label)) {
  if (coefficients_.size() < 1) {
    throw std::invalid_argument("TruncatedSeries: empty coefficient list");
  }
}

TruncatedSeries TruncatedSeries::constant(double value, int order,
                                          std::string variable_label) {
  TruncatedSeries s(order, std::move(variable_label));
  s.coefficients_[0] = value;
  return s;
}

TruncatedSeries TruncatedSeries::variable(int order,
                                          std::string variable_label) {
  if (order < 1) {
    throw std::invalid_argument("TruncatedSeries::variable: order < 1");
  }
  TruncatedSeries s(order, std::move(variable_label));
  s.coefficients_[1] = 1.0;
  return s;
}

double TruncatedSeries::coeff(int i) const {
  if (i < 0 || i > order()) {
    throw std::out_of_range("TruncatedSeries::coeff: index " +
                            std::to_string(i));
  }
  return coefficients_[i];
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_same_order(a, b, "series_add");
  return TruncatedSeries(a.coefficients() + b.coefficients(),
                         a.variable_label());
}

TruncatedSeries series_scale(const TruncatedSeries& a, double factor) {
  return TruncatedSeries(a.coefficients() * factor, a.variable_label());
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_same_order(a, b, "series_mul");
  const int n = a.order();
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(n + 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n - i; ++j) {
      out[i + j] += a.coeff(i) * b.coeff(j);
    }
  }
  return TruncatedSeries(std::move(out), a.variable_label());
}

TruncatedSeries series_reciprocal(const TruncatedSeries& a) {
  const double c0 = a.coeff(0);
  if (c0 == 0.0) {
    throw std::domain_error("series_reciprocal: leading coefficient is zero");
  }
  const int n = a.order();
  Eigen::ArrayXd out(n + 1);
  out[0] = 1.0 / c0;
  for (int i = 1; i <= n; ++i) {
    double acc = 0.0;
    for (int j = 1; j <= i; ++j) {
      acc += a.coeff(j) * out[i - j];
    }
    out[i] = -acc / c0;
  }
  return TruncatedSeries(std::move(out), a.variable_label());
}

TruncatedSeries series_sqrt(const TruncatedSeries& a) {
  const double c0 = a.coeff(0);
  if (!(c0 > 0.0)) {
    throw std::domain_error("series_sqrt: leading coefficient must be > 0");
  }
  const int n = a.order();
  TruncatedSeries y =
      TruncatedSeries::constant(std::sqrt(c0), n, a.variable_label());
  // Each Newton sweep doubles the number of correct orders.
  int sweeps = 1;
  while ((1 << sweeps) < n + 1) ++sweeps;
  for (int it = 0; it <= sweeps; ++it) {
    y = series_scale(series_add(y, series_mul(a, series_reciprocal(y))), 0.5);
  }
  return y;
}

bool series_approx_equal(const TruncatedSeries& a, const TruncatedSeries& b,
                         double tolerance) {
  if (a.order() != b.order()) return false;
  return ((a.coefficients() - b.coefficients()).abs() <= tolerance).all();
}

TruncatedSeries expand_energy(const PhysParams& params, DispersionBranch branch,
                              DispersionModel model, int order) {
  if (order < 2 || order % 2 != 0) {
    throw std::invalid_argument("expand_energy: order must be even and >= 2");
  }
  if (model == DispersionModel::AmelinoCameliaExact) {
    throw std::invalid_argument(
        "expand_energy: the exact model has no closed-form root; "
        "use effective_masses");
  }

  const double mc2 = params.rest_energy();
  const double k = params.k();
  const double sign = branch_sign(branch);

  const TruncatedSeries p = TruncatedSeries::variable(order);
  const TruncatedSeries pc2 =
      series_scale(series_mul(p, p), params.c() * params.c());  // (pc)^2

  switch (model) {
    case DispersionModel::SpecialRelativity: {
      // E = +- sqrt(mc2^2 + (pc)^2)
      const TruncatedSeries inner =
          series_add(TruncatedSeries::constant(mc2 * mc2, order), pc2);
      return series_scale(series_sqrt(inner), sign);
    }
    case DispersionModel::AmelinoCameliaTruncated: {
      // E = [ t/k +- sqrt(t^2/k^2 + 4t + 4 mc2^2) ] / 2,  t = (pc)^2
      const TruncatedSeries inner = series_add(
          series_scale(series_mul(pc2, pc2), 1.0 / (k * k)),
          series_add(series_scale(pc2, 4.0),
                     TruncatedSeries::constant(4.0 * mc2 * mc2, order)));
      return series_scale(series_add(series_scale(pc2, 1.0 / k),
                                     series_scale(series_sqrt(inner), sign)),
                          0.5);
    }
    case DispersionModel::MagueijoSmolin: {
      // E = [ -mc2^2/k +- sqrt(mc2^2 + beta t) ] / beta
      const double beta = 1.0 - (mc2 / k) * (mc2 / k);
      const TruncatedSeries inner =
          series_add(TruncatedSeries::constant(mc2 * mc2, order),
                     series_scale(pc2, beta));
      return series_scale(
          series_add(TruncatedSeries::constant(-mc2 * mc2 / k, order),
                     series_scale(series_sqrt(inner), sign)),
          1.0 / beta);
    }
    case DispersionModel::AmelinoCameliaExact:
      break;  // rejected above
  }
  throw std::logic_error("expand_energy: bad model");
}

ReciprocityReport reciprocity_report(const PhysParams& params) {
  const auto ac = expand_energy(params, DispersionBranch::Particle,
                                DispersionModel::AmelinoCameliaTruncated);
  const auto ms = expand_energy(params, DispersionBranch::Particle,
                                DispersionModel::MagueijoSmolin);

  ReciprocityReport report{};
  report.ac_rest_energy = ac.coeff(0);
  report.ac_inertial_mass = 1.0 / (2.0 * ac.coeff(2));
  report.ms_rest_energy = ms.coeff(0);
  report.ms_inertial_mass = 1.0 / (2.0 * ms.coeff(2));

  const double c2 = params.c() * params.c();
  const double scale = params.rest_energy();
  const double cross_a =
      std::abs(report.ac_rest_energy - report.ms_inertial_mass * c2) / scale;
  const double cross_b =
      std::abs(report.ac_inertial_mass * c2 - report.ms_rest_energy) / scale;
  report.max_cross_error = std::max(cross_a, cross_b);
  if (report.max_cross_error > 1e-10) {
    throw std::logic_error(
        "reciprocity_report: cross-equality violated, relative error " +
        std::to_string(report.max_cross_error));
  }
  return report;
}

}  // namespace dsr
