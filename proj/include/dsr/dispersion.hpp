#ifndef DSR_DISPERSION_HPP
#define DSR_DISPERSION_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "dsr/params.hpp"
#include "dsr/root_find.hpp"

namespace dsr {

// ---------------------------------------------------------------------------
// Scalar core. Free functions templated on the scalar so tests can rerun any
// of them in long double as an independent high-precision route. Arguments
// are the energy-unit combinations: pc = p*c, mc2 = m*c^2.
// ---------------------------------------------------------------------------

/// Residual of the exact deformed relation,
///   2k^2[cosh(E/k) - cosh(mc2/k)] - (pc)^2 e^{E/k},
/// with the cosh difference in product form (no cancellation near the shell).
template <class Real>
Real casimir_value(Real energy, Real pc, Real mc2, Real k) {
  const Real x = energy / k;
  const Real mu = mc2 / k;
  const Real half = Real(0.5);
  return Real(4) * k * k * std::sinh(half * (x + mu)) *
             std::sinh(half * (x - mu)) -
         pc * pc * std::exp(x);
}

/// dC/dE of casimir_value at fixed momentum.
template <class Real>
Real casimir_energy_derivative(Real energy, Real pc, Real k) {
  const Real x = energy / k;
  return Real(2) * k * std::sinh(x) - (pc * pc / k) * std::exp(x);
}

template <class Real>
Real sr_energy(Real pc, Real mc2, DispersionBranch branch) {
  return Real(branch_sign(branch)) * std::hypot(pc, mc2);
}

/// Root of the quadratic E^2 - (pc)^2 - ((pc)^2/k) E = mc2^2:
///   E = [ (pc)^2/k +- sqrt((pc)^4/k^2 + 4((pc)^2 + mc2^2)) ] / 2.
template <class Real>
Real act_energy_closed_form(Real pc, Real mc2, Real k,
                            DispersionBranch branch) {
  const Real t = pc * pc;
  const Real disc = std::sqrt(t * t / (k * k) + Real(4) * (t + mc2 * mc2));
  return (t / k + Real(branch_sign(branch)) * disc) / Real(2);
}

/// Root of E^2 = (pc)^2 + mc2^2 (1 - E/k)^2. The discriminant simplifies to
/// mc2^2 + beta (pc)^2 with beta = 1 - (mc2/k)^2.
template <class Real>
Real ms_energy_closed_form(Real pc, Real mc2, Real k, DispersionBranch branch) {
  const Real beta = Real(1) - (mc2 / k) * (mc2 / k);
  const Real disc = std::sqrt(mc2 * mc2 + beta * pc * pc);
  return (-mc2 * mc2 / k + Real(branch_sign(branch)) * disc) / beta;
}

/// Closed form of the exact relation via u = e^{E/k}, which obeys
///   (k^2 - (pc)^2) u^2 - 2k^2 cosh(mc2/k) u + k^2 = 0.
/// The larger root (particle) needs pc < k; the smaller one is evaluated as
/// k^2/q to stay stable. Used as a cross-check of the iterative solver.
template <class Real>
Real ace_energy_closed_form(Real pc, Real mc2, Real k,
                            DispersionBranch branch) {
  const Real q = k * k * std::cosh(mc2 / k) +
                 k * std::hypot(k * std::sinh(mc2 / k), pc);
  const Real u = branch == DispersionBranch::Particle
                     ? q / (k * k - pc * pc)
                     : k * k / q;
  return k * std::log(u);
}

/// Analytic inertial mass of the exact model, from the implicit p^2-curvature
/// of E(p) at p = 0:  m_eff = k sinh(mc2/k) e^{-sgn(E) mc2/k} / c^2.
template <class Real>
Real ace_inertial_mass_closed_form(Real mc2, Real k, Real c,
                                   DispersionBranch branch) {
  const Real mu = mc2 / k;
  return k * std::sinh(mu) * std::exp(-Real(branch_sign(branch)) * mu) /
         (c * c);
}

/// D0^2 - sum_a Da^2 for the deformed Dirac operator,
///   D0 = (e^{E/k} - cosh(mc2/k)) / sinh(mc2/k),
///   sum_a Da^2 = 2 e^{E/k} [cosh(E/k) - cosh(mc2/k)] / sinh^2(mc2/k).
/// Algebraically this equals 1 for every (E, p); the momentum enters only
/// through the unit vector p_a/p, which squares away.
template <class Real>
Real dirac_identity_value(Real energy, Real mc2, Real k) {
  const Real x = energy / k;
  const Real mu = mc2 / k;
  const Real half = Real(0.5);
  const Real s = std::sinh(mu);
  const Real d0 = (std::exp(x) - std::cosh(mu)) / s;
  const Real cosh_diff =
      Real(2) * std::sinh(half * (x + mu)) * std::sinh(half * (x - mu));
  const Real sum_da2 = Real(2) * std::exp(x) * cosh_diff / (s * s);
  return d0 * d0 - sum_da2;
}

namespace detail {

/// Branch root of a residual g with the generic sign structure
///   g(0) < 0,  g -> +inf toward the branch's infinity,
/// shared by all four dispersion models and the deformed Dirac condition.
/// The bracket is seeded from the undeformed root e_seed inflated by a
/// factor, then expanded geometrically up to |E| = e_cap before giving up.
template <class Fdf>
double solve_branch(Fdf&& fdf, DispersionBranch branch, double e_seed,
                    double inflation, double e_cap, int max_iterations = 100) {
  const double sgn = branch_sign(branch);
  auto g = [&](double e) { return fdf(e).first; };

  double inner = sgn * e_seed / inflation;  // bracket end nearer zero
  double outer = sgn * e_seed * inflation;  // bracket end nearer infinity
  const double g0 = g(0.0);
  if (!(g0 < 0.0)) {
    throw BracketError("solve_branch: residual at E=0 not negative");
  }

  double gi = g(inner);
  if (gi == 0.0) return inner;
  if (gi > 0.0) {
    // Root lies between 0 and the seeded bracket.
    outer = inner;
    inner = 0.0;
  } else {
    double go = g(outer);
    while (go < 0.0) {
      outer *= 2.0;
      if (std::abs(outer) > e_cap) {
        throw BracketError("solve_branch: branch root not found below |E| = " +
                           std::to_string(e_cap) + ", last bracket [" +
                           std::to_string(inner) + ", " +
                           std::to_string(outer / 2.0) + "]");
      }
      go = g(outer);
    }
    if (go == 0.0) return outer;
  }

  RootOptions opt;
  opt.max_iterations = max_iterations;
  return safeguarded_newton(fdf, std::min(inner, outer),
                            std::max(inner, outer), opt);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public kinematics API (double precision, PhysParams-based).
// ---------------------------------------------------------------------------

/// Residual of the exact deformed relation at (E, p); zero exactly on-shell.
/// Throws std::domain_error when |E|/k exceeds kEnergyRatioCap.
double casimir_residual(const PhysParams& params, double energy, double p);

/// Scale used for relative residual statements: 2 k^2 cosh(mc^2/k).
double casimir_scale(const PhysParams& params);

/// Energy root of the chosen model on the chosen branch, by bracketed
/// safeguarded Newton seeded from the undeformed root +-sqrt(p^2c^2 + m^2c^4)
/// inflated by (1 + mu)^{+-2}. The exact model's particle branch requires
/// |p| c < k (the shell leaves the real axis there).
double solve_dispersion(const PhysParams& params, double p,
                        DispersionBranch branch, DispersionModel model);

/// dE/dp by Richardson-refined central differences on solve_dispersion,
/// step h = max(1e-6, 1e-6 |p|) in the caller's momentum units.
double group_velocity(const PhysParams& params, double p,
                      DispersionBranch branch, DispersionModel model);

/// p c^2 / E. Throws std::domain_error when E = 0.
double particle_velocity(const PhysParams& params, double p, double energy);

/// Deformed inertial masses m / (1 +- mu). PhysParams construction already
/// guarantees mu < 1, so m_minus is always finite here.
double m_plus(const PhysParams& params);
double m_minus(const PhysParams& params);

/// Rest energy |E(0)| and inertial mass 1/(d^2 E/dp^2 at p=0) on a branch.
/// The curvature uses a 5-point stencil with step 1e-3 * m c, Richardson
/// extrapolated once.
EffectiveMasses effective_masses(const PhysParams& params,
                                 DispersionBranch branch,
                                 DispersionModel model);

/// D0^2 - sum_a Da^2 of the deformed Dirac operator; identically 1 for all
/// (E, p). The momentum argument is accepted for interface symmetry and
/// cancels exactly. Same overflow cap as casimir_residual.
double dirac_massshell_identity(const PhysParams& params, double energy,
                                double p);

/// |m+ - m-| / m = 2 mu / (1 - mu^2). The first-order value is 2 mu.
double cpt_ratio(const PhysParams& params);
double cpt_ratio_first_order(const PhysParams& params);

/// First-order inversion of the mass-splitting ratio: k_min = 2 mc^2 / split.
/// Takes the rest energy m c^2 directly. Rejects nonpositive splits.
double k_lower_bound(double rest_energy, double relative_mass_split);

}  // namespace dsr

#endif  // DSR_DISPERSION_HPP
