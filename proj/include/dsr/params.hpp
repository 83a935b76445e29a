#ifndef DSR_PARAMS_HPP
#define DSR_PARAMS_HPP

#include <stdexcept>
#include <string>

namespace dsr {

/// Arguments of cosh/exp in the deformed relations are rejected beyond this
/// ratio |E|/k. cosh saturates the double range near 710; 30 leaves ample
/// headroom while covering every desk-scale regime used here.
inline constexpr double kEnergyRatioCap = 30.0;

/// Root selector of a dispersion relation: the positive-energy (particle)
/// or negative-energy (antiparticle) branch.
enum class DispersionBranch { Particle, Antiparticle };

/// Dispersion relations supported by the solvers and evolution routines.
///
///   SpecialRelativity        E^2 = p^2 c^2 + m^2 c^4
///   AmelinoCameliaExact      2k^2[cosh(E/k) - cosh(mc^2/k)] = p^2 c^2 e^{E/k}
///   AmelinoCameliaTruncated  E^2 - p^2 c^2 - (p^2 c^2 / k) E = m^2 c^4
///   MagueijoSmolin           E^2 = p^2 c^2 + m^2 c^4 (1 - E/k)^2
enum class DispersionModel {
  SpecialRelativity,
  AmelinoCameliaExact,
  AmelinoCameliaTruncated,
  MagueijoSmolin,
};

constexpr double branch_sign(DispersionBranch b) {
  return b == DispersionBranch::Particle ? 1.0 : -1.0;
}

inline const char* to_string(DispersionBranch b) {
  return b == DispersionBranch::Particle ? "particle" : "antiparticle";
}

inline const char* to_string(DispersionModel m) {
  switch (m) {
    case DispersionModel::SpecialRelativity: return "special-relativity";
    case DispersionModel::AmelinoCameliaExact: return "ac-exact";
    case DispersionModel::AmelinoCameliaTruncated: return "ac-truncated";
    case DispersionModel::MagueijoSmolin: return "magueijo-smolin";
  }
  return "?";
}

/// Model constants, hbar = 1 throughout. c and k are explicit; the deformed
/// relations consume momenta as p*c and the mass as m*c^2 so that every
/// formula reduces to its c=1 form on desk-scale inputs.
///
/// The dimensionless deformation strength mu = m c^2 / k must satisfy
/// 0 < mu < 1: the antiparticle inertial mass m/(1 - mu) diverges at mu = 1
/// and we reject rather than extrapolate.
class PhysParams {
 public:
  PhysParams(double m, double c, double k) : m_(m), c_(c), k_(k) {
    if (!(m > 0.0)) throw std::invalid_argument("PhysParams: m must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("PhysParams: c must be > 0");
    if (!(k > 0.0)) throw std::invalid_argument("PhysParams: k must be > 0");
    if (!(mu() < 1.0)) {
      throw std::invalid_argument(
          "PhysParams: mu = m*c^2/k = " + std::to_string(mu()) +
          " must be < 1 (antiparticle mass validity)");
    }
  }

  double m() const { return m_; }
  double c() const { return c_; }
  double k() const { return k_; }

  /// Rest energy m c^2.
  double rest_energy() const { return m_ * c_ * c_; }

  /// Deformation strength mu = m c^2 / k, in (0, 1).
  double mu() const { return rest_energy() / k_; }

 private:
  double m_, c_, k_;
};

/// Rest energy |E(p=0)| and inertial mass 1/(d^2E/dp^2 at p=0) of one branch.
/// The inertial mass is reported positive on both branches.
struct EffectiveMasses {
  double rest_energy;
  double inertial_mass;
  DispersionBranch branch;
};

}  // namespace dsr

#endif  // DSR_PARAMS_HPP
