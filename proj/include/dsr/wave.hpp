#ifndef DSR_WAVE_HPP
#define DSR_WAVE_HPP

#include <Eigen/Core>

#include "dsr/grid.hpp"
#include "dsr/params.hpp"

namespace dsr {

enum class WaveEquation { KleinGordon, Dirac };

inline const char* to_string(WaveEquation e) {
  return e == WaveEquation::KleinGordon ? "kg" : "dirac";
}

/// Per-mode split of Klein-Gordon initial data onto the two frequency
/// branches of a dispersion model. Mode j evolves as
///   a+_j e^{-i E+(p_j) t} + a-_j e^{-i E-(p_j) t}.
/// The branch amplitude moduli are exact invariants of the evolution; the
/// spatial L2 norm of the reconstructed field is conserved only for
/// single-branch content (two-branch interference beats, as it must for a
/// second-order-in-time equation).
struct ModeDecomposition {
  Grid1D grid;
  Eigen::VectorXcd a_plus;
  Eigen::VectorXcd a_minus;
  Eigen::VectorXd e_plus;   // particle-branch energy per mode
  Eigen::VectorXd e_minus;  // antiparticle-branch energy per mode
  DispersionModel model;
  WaveEquation equation;
  PhysParams params;
};

/// Splits (psi0, dpsi0/dt) per mode by solving
///   a+ + a- = psi_hat,   -i(E+ a+ + E- a-) = dpsi_hat,
/// which realizes the first-order branch construction without forming
/// operator square roots. Requires both fields on the same grid and
/// |E+ - E-| > 1e-12 mc^2 on every mode.
ModeDecomposition decompose_kg(const PhysParams& params,
                               const ScalarField& psi0,
                               const ScalarField& dpsi0_dt,
                               DispersionModel model);

/// Decomposition with all content assigned to one branch: a_branch = psi_hat,
/// the other amplitude zero. Equivalent to decompose_kg with
/// dpsi0/dt = -i E_branch(p) psi0 built mode-wise.
ModeDecomposition decompose_kg_single_branch(const PhysParams& params,
                                             const ScalarField& psi0,
                                             DispersionBranch branch,
                                             DispersionModel model);

/// Reconstructs the field at time t (exact per-mode phases; no time
/// stepping). t = 0 reproduces the decomposed data.
ScalarField evolve_kg(const ModeDecomposition& decomposition, double t);

/// Free Schroedinger evolution with rest energy already removed: mode p
/// gains the phase e^{-s i p^2 t / (2 mass_eff)} with s = +1 on the particle
/// branch and s = -1 on the antiparticle branch.
ScalarField evolve_schrodinger(double mass_eff, DispersionBranch sign,
                               const ScalarField& psi0, double t);

/// Mode equations of the 1+1D two-component Dirac reduction.
enum class DiracModel { Ordinary, ModifiedDirac };

inline const char* to_string(DiracModel m) {
  return m == DiracModel::Ordinary ? "ordinary" : "modified";
}

/// Energy of mode p from the consistency condition
///   ModifiedDirac:  E^2 - m^2 c^4 = (1 + E/2k)^2 p^2 c^2
///   Ordinary:       E^2 = p^2 c^2 + m^2 c^4
/// solved on the chosen branch by the same safeguarded Newton as
/// solve_dispersion (the Ordinary case coincides with the undeformed model
/// bit for bit). The ModifiedDirac particle branch needs |p| c < 2k.
double dirac_mode_energy(const PhysParams& params, double p,
                         DispersionBranch branch, DiracModel model);

/// Normalized on-shell spinor (chi, eta) of mode p. Components satisfy
///   eta/chi = g p c / (E + mc^2)  (particle form)
///   chi/eta = g p c / (E - mc^2)  (antiparticle form, regular at E = -mc^2)
/// with g = 1 + E/2k for the modified model and 1 otherwise.
Eigen::Vector2cd dirac_mode_spinor(const PhysParams& params, double p,
                                   DispersionBranch branch, DiracModel model);

/// Mode-wise Dirac evolution: project (chi_hat, eta_hat) onto the two branch
/// spinors (a 2x2 linear solve; the modified model's branch spinors are not
/// orthogonal), advance each by e^{-i E_b t}, recombine. Branch amplitude
/// moduli are exact invariants; the spatial norm is conserved for
/// single-branch content and for the ordinary model.
SpinorField evolve_dirac(const PhysParams& params, const SpinorField& initial,
                         double t, DiracModel model);

/// Gaussian packet placed entirely on one branch: scalar envelope amplitudes
/// times the branch spinor of each mode.
SpinorField dirac_gaussian_packet(const PhysParams& params, const Grid1D& grid,
                                  double center, double sigma, double p0,
                                  DispersionBranch branch, DiracModel model);

}  // namespace dsr

#endif  // DSR_WAVE_HPP
