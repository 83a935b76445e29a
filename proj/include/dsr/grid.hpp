#ifndef DSR_GRID_HPP
#define DSR_GRID_HPP

#include <Eigen/Core>
#include <complex>

namespace dsr {

/// Periodic 1D box of n sites (power of two, n >= 16) and length L.
/// Site positions are x_i = i * L/n; mode momenta are 2 pi j / L with j in
/// the symmetric integer range [-n/2, n/2), stored in DFT order.
class Grid1D {
 public:
  Grid1D(int n, double length);

  int size() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  double position(int i) const { return i * spacing(); }

  /// Momentum of DFT bin j (aliased to the symmetric range).
  double mode_momentum(int j) const;

  Eigen::ArrayXd positions() const;
  Eigen::ArrayXd mode_momenta() const;

  /// Largest |p| representable on the grid, pi * n / L.
  double max_mode_momentum() const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  int n_;
  double length_;
};

/// Complex scalar samples on a grid.
struct ScalarField {
  ScalarField(Grid1D grid, Eigen::VectorXcd values);

  Grid1D grid;
  Eigen::VectorXcd values;

  /// Discrete L2 norm-squared, sum |psi|^2 dx.
  double norm_squared() const;
};

/// Two-component (chi, eta) spinor samples on a grid.
struct SpinorField {
  SpinorField(Grid1D grid, Eigen::VectorXcd upper, Eigen::VectorXcd lower);

  Grid1D grid;
  Eigen::VectorXcd upper;  // chi
  Eigen::VectorXcd lower;  // eta

  /// sum (|chi|^2 + |eta|^2) dx.
  double norm_squared() const;

  /// Position density |chi|^2 + |eta|^2 per site.
  Eigen::ArrayXd density() const;
};

struct Observables {
  double norm;
  double mean_position;
  double position_variance;
};

/// Quadrature moments of a density on the periodic box. The mean uses the
/// circular-mean convention (arg of the density-weighted first Fourier
/// moment), which reduces to the ordinary mean for densities supported well
/// inside one period; a density with no circular mean (e.g. flat) reports
/// the box center. The variance averages wrapped squared distances from the
/// mean.
Observables observables(const Grid1D& grid, const Eigen::ArrayXd& density);
Observables observables(const ScalarField& field);
Observables observables(const SpinorField& field);

/// Unit-norm Gaussian wavepacket (2 pi sigma^2)^{-1/4}
/// exp(-(x-center)^2/(4 sigma^2) + i p0 x), sampled on the grid. The caller
/// keeps tails inside the box (6 sigma within L).
ScalarField gaussian_packet(const Grid1D& grid, double center, double sigma,
                            double p0);

}  // namespace dsr

#endif  // DSR_GRID_HPP
