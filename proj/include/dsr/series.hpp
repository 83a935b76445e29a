#ifndef DSR_SERIES_HPP
#define DSR_SERIES_HPP

#include <Eigen/Core>
#include <string>

#include "dsr/params.hpp"

namespace dsr {

/// Polynomial c0 + c1 x + ... + cN x^N with all arithmetic closed at order N
/// (terms beyond N are dropped). Used to expand dispersion roots about p = 0.
class TruncatedSeries {
 public:
  /// Zero series of the given order.
  explicit TruncatedSeries(int order, std::string variable_label = "p");

  /// Series from explicit coefficients c0..cN.
  explicit TruncatedSeries(Eigen::ArrayXd coefficients,
                           std::string variable_label = "p");

  static TruncatedSeries constant(double value, int order,
                                  std::string variable_label = "p");

  /// 0 + 1*x. Requires order >= 1.
  static TruncatedSeries variable(int order, std::string variable_label = "p");

  int order() const { return static_cast<int>(coefficients_.size()) - 1; }
  double coeff(int i) const;
  const Eigen::ArrayXd& coefficients() const { return coefficients_; }
  const std::string& variable_label() const { return variable_label_; }

 private:
  Eigen::ArrayXd coefficients_;
  std::string variable_label_;
};

// Operands must share the same order; results keep it.
TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_scale(const TruncatedSeries& a, double factor);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// Square root by Newton iteration on series, y <- (y + a/y)/2, started at
/// the scalar sqrt(c0). Requires c0 > 0.
TruncatedSeries series_sqrt(const TruncatedSeries& a);

/// Multiplicative inverse through order N. Requires c0 != 0.
TruncatedSeries series_reciprocal(const TruncatedSeries& a);

/// Coefficient-wise comparison at the given tolerance.
bool series_approx_equal(const TruncatedSeries& a, const TruncatedSeries& b,
                         double tolerance = 1e-14);

/// Power series of E(p) about p = 0 on the chosen branch, built by series
/// arithmetic on the model's closed-form root. order must be even and >= 2.
/// The exact model has no closed form and is rejected (use effective_masses
/// for its curvature instead). Coefficients: [0] is the signed rest energy,
/// [2] is +-1/(2 * inertial mass), odd entries vanish identically.
TruncatedSeries expand_energy(const PhysParams& params, DispersionBranch branch,
                              DispersionModel model, int order = 4);

/// The four particle-branch nonrelativistic-limit entries of the truncated
/// Amelino-Camelia and Magueijo-Smolin models. The models swap which mass is
/// modified: cross-equalities ac_rest = ms_inertial * c^2 and
/// ac_inertial * c^2 = ms_rest are verified to 1e-10 (relative to m c^2)
/// before returning.
struct ReciprocityReport {
  double ac_rest_energy;
  double ac_inertial_mass;
  double ms_rest_energy;
  double ms_inertial_mass;
  double max_cross_error;  // relative
};

ReciprocityReport reciprocity_report(const PhysParams& params);

}  // namespace dsr

#endif  // DSR_SERIES_HPP
