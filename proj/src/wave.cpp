#include "dsr/wave.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dsr/dispersion.hpp"
#include "dsr/spectral.hpp"

namespace dsr {

namespace {

using Complex = std::complex<double>;

Complex phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Branch energies of every grid mode for one dispersion model. Energies
/// depend on |p| only, so conjugate bins share a solve.
void branch_energies(const PhysParams& params, const Grid1D& grid,
                     DispersionModel model, Eigen::VectorXd& e_plus,
                     Eigen::VectorXd& e_minus) {
  const int n = grid.size();
  e_plus.resize(n);
  e_minus.resize(n);
  for (int j = 0; j <= n / 2; ++j) {
    const double p = grid.mode_momentum(j);
    const double ep =
        solve_dispersion(params, p, DispersionBranch::Particle, model);
    const double em =
        solve_dispersion(params, p, DispersionBranch::Antiparticle, model);
    e_plus[j] = ep;
    e_minus[j] = em;
    if (j > 0 && j < n / 2) {
      e_plus[n - j] = ep;
      e_minus[n - j] = em;
    }
  }
}

}  // namespace

ModeDecomposition decompose_kg(const PhysParams& params,
                               const ScalarField& psi0,
                               const ScalarField& dpsi0_dt,
                               DispersionModel model) {
  if (!(psi0.grid == dpsi0_dt.grid)) {
    throw std::invalid_argument("decompose_kg: fields on different grids");
  }
  const Grid1D& grid = psi0.grid;

  Eigen::VectorXd e_plus, e_minus;
  branch_energies(params, grid, model, e_plus, e_minus);

  const Eigen::VectorXcd psi_hat = forward_modes(psi0);
  const Eigen::VectorXcd dpsi_hat = forward_modes(dpsi0_dt);

  const int n = grid.size();
  Eigen::VectorXcd a_plus(n), a_minus(n);
  const Complex i_unit(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    const double gap = e_plus[j] - e_minus[j];
    if (std::abs(gap) < 1e-12 * params.rest_energy()) {
      throw std::domain_error("decompose_kg: degenerate branches at mode " +
                              std::to_string(j));
    }
    a_plus[j] = (i_unit * dpsi_hat[j] - e_minus[j] * psi_hat[j]) / gap;
    a_minus[j] = (e_plus[j] * psi_hat[j] - i_unit * dpsi_hat[j]) / gap;
  }
  return {grid,    std::move(a_plus), std::move(a_minus),  std::move(e_plus),
          std::move(e_minus), model,  WaveEquation::KleinGordon, params};
}

ModeDecomposition decompose_kg_single_branch(const PhysParams& params,
                                             const ScalarField& psi0,
                                             DispersionBranch branch,
                                             DispersionModel model) {
  const Grid1D& grid = psi0.grid;
  Eigen::VectorXd e_plus, e_minus;
  branch_energies(params, grid, model, e_plus, e_minus);

  Eigen::VectorXcd a_plus = Eigen::VectorXcd::Zero(grid.size());
  Eigen::VectorXcd a_minus = Eigen::VectorXcd::Zero(grid.size());
  if (branch == DispersionBranch::Particle) {
    a_plus = forward_modes(psi0);
  } else {
    a_minus = forward_modes(psi0);
  }
  return {grid,    std::move(a_plus), std::move(a_minus), std::move(e_plus),
          std::move(e_minus), model,  WaveEquation::KleinGordon, params};
}

ScalarField evolve_kg(const ModeDecomposition& decomposition, double t) {
  const int n = decomposition.grid.size();
  Eigen::VectorXcd modes(n);
  for (int j = 0; j < n; ++j) {
    modes[j] = decomposition.a_plus[j] * phase(-decomposition.e_plus[j] * t) +
               decomposition.a_minus[j] * phase(-decomposition.e_minus[j] * t);
  }
  return inverse_modes(decomposition.grid, modes);
}

ScalarField evolve_schrodinger(double mass_eff, DispersionBranch sign,
                               const ScalarField& psi0, double t) {
  if (!(mass_eff > 0.0)) {
    throw std::invalid_argument("evolve_schrodinger: mass must be > 0");
  }
  const double s = branch_sign(sign);
  Eigen::VectorXcd modes = forward_modes(psi0);
  for (int j = 0; j < psi0.grid.size(); ++j) {
    const double p = psi0.grid.mode_momentum(j);
    modes[j] *= phase(-s * p * p * t / (2.0 * mass_eff));
  }
  return inverse_modes(psi0.grid, modes);
}

double dirac_mode_energy(const PhysParams& params, double p,
                         DispersionBranch branch, DiracModel model) {
  if (model == DiracModel::Ordinary) {
    // Same defining relation, same solver, same seed: bit-identical to the
    // undeformed dispersion root.
    return solve_dispersion(params, p, branch,
                            DispersionModel::SpecialRelativity);
  }

  const double pc = std::abs(p) * params.c();
  const double mc2 = params.rest_energy();
  const double k = params.k();
  if (branch == DispersionBranch::Particle && pc >= 2.0 * k) {
    throw std::domain_error(
        "dirac_mode_energy: modified particle branch needs |p| c < 2k");
  }

  auto fdf = [&](double e) {
    const double g = 1.0 + e / (2.0 * k);
    return std::pair<double, double>(
        e * e - mc2 * mc2 - g * g * pc * pc,
        2.0 * e - g * pc * pc / k);
  };
  const double inflation = (1.0 + params.mu()) * (1.0 + params.mu());
  return detail::solve_branch(fdf, branch, std::hypot(pc, mc2), inflation,
                              kEnergyRatioCap * k);
}

Eigen::Vector2cd dirac_mode_spinor(const PhysParams& params, double p,
                                   DispersionBranch branch, DiracModel model) {
  const double energy = dirac_mode_energy(params, p, branch, model);
  const double mc2 = params.rest_energy();
  const double g = model == DiracModel::ModifiedDirac
                       ? 1.0 + energy / (2.0 * params.k())
                       : 1.0;
  const double pc = p * params.c();  // signed: the coupling is sigma.p -> p

  Eigen::Vector2cd spinor;
  if (branch == DispersionBranch::Particle) {
    const double ratio = g * pc / (energy + mc2);
    const double norm = std::sqrt(1.0 + ratio * ratio);
    spinor << Complex(1.0 / norm, 0.0), Complex(ratio / norm, 0.0);
  } else {
    // eta-normalized form; regular at E = -mc^2 where chi vanishes.
    const double ratio = g * pc / (energy - mc2);
    const double norm = std::sqrt(1.0 + ratio * ratio);
    spinor << Complex(ratio / norm, 0.0), Complex(1.0 / norm, 0.0);
  }
  return spinor;
}

SpinorField evolve_dirac(const PhysParams& params, const SpinorField& initial,
                         double t, DiracModel model) {
  const Grid1D& grid = initial.grid;
  const int n = grid.size();

  const Eigen::VectorXcd chi_hat =
      forward_modes(ScalarField(grid, initial.upper));
  const Eigen::VectorXcd eta_hat =
      forward_modes(ScalarField(grid, initial.lower));

  Eigen::VectorXcd chi_out(n), eta_out(n);
  for (int j = 0; j < n; ++j) {
    const double p = grid.mode_momentum(j);
    const Eigen::Vector2cd s_plus =
        dirac_mode_spinor(params, p, DispersionBranch::Particle, model);
    const Eigen::Vector2cd s_minus =
        dirac_mode_spinor(params, p, DispersionBranch::Antiparticle, model);
    const double e_plus =
        dirac_mode_energy(params, p, DispersionBranch::Particle, model);
    const double e_minus =
        dirac_mode_energy(params, p, DispersionBranch::Antiparticle, model);

    const Complex det = s_plus[0] * s_minus[1] - s_minus[0] * s_plus[1];
    if (std::abs(det) < 1e-12) {
      throw std::domain_error("evolve_dirac: degenerate branch spinors at mode " +
                              std::to_string(j));
    }
    const Complex v0 = chi_hat[j];
    const Complex v1 = eta_hat[j];
    Complex b_plus = (v0 * s_minus[1] - v1 * s_minus[0]) / det;
    Complex b_minus = (v1 * s_plus[0] - v0 * s_plus[1]) / det;

    b_plus *= phase(-e_plus * t);
    b_minus *= phase(-e_minus * t);

    chi_out[j] = b_plus * s_plus[0] + b_minus * s_minus[0];
    eta_out[j] = b_plus * s_plus[1] + b_minus * s_minus[1];
  }

  ScalarField chi = inverse_modes(grid, chi_out);
  ScalarField eta = inverse_modes(grid, eta_out);
  return {grid, std::move(chi.values), std::move(eta.values)};
}

SpinorField dirac_gaussian_packet(const PhysParams& params, const Grid1D& grid,
                                  double center, double sigma, double p0,
                                  DispersionBranch branch, DiracModel model) {
  const Eigen::VectorXcd envelope =
      forward_modes(gaussian_packet(grid, center, sigma, p0));
  const int n = grid.size();
  Eigen::VectorXcd chi_hat(n), eta_hat(n);
  for (int j = 0; j < n; ++j) {
    const Eigen::Vector2cd s =
        dirac_mode_spinor(params, grid.mode_momentum(j), branch, model);
    chi_hat[j] = envelope[j] * s[0];
    eta_hat[j] = envelope[j] * s[1];
  }
  ScalarField chi = inverse_modes(grid, chi_hat);
  ScalarField eta = inverse_modes(grid, eta_hat);
  return {grid, std::move(chi.values), std::move(eta.values)};
}

}  // namespace dsr
