#include "dsr/dispersion.hpp"

#include <cmath>

namespace dsr {

namespace {

void check_energy_cap(double energy, double k) {
  if (std::abs(energy) / k > kEnergyRatioCap) {
    throw std::domain_error("energy ratio |E|/k = " +
                            std::to_string(std::abs(energy) / k) +
                            " exceeds cap " + std::to_string(kEnergyRatioCap));
  }
}

// Residual and dE-derivative of the defining relation of each model.
std::pair<double, double> model_residual(DispersionModel model, double energy,
                                         double pc, double mc2, double k) {
  switch (model) {
    case DispersionModel::SpecialRelativity:
      return {energy * energy - pc * pc - mc2 * mc2, 2.0 * energy};
    case DispersionModel::AmelinoCameliaTruncated:
      return {energy * energy - pc * pc - (pc * pc / k) * energy - mc2 * mc2,
              2.0 * energy - pc * pc / k};
    case DispersionModel::MagueijoSmolin: {
      const double w = 1.0 - energy / k;
      return {energy * energy - pc * pc - mc2 * mc2 * w * w,
              2.0 * energy + 2.0 * mc2 * mc2 * w / k};
    }
    case DispersionModel::AmelinoCameliaExact:
      return {casimir_value(energy, pc, mc2, k),
              casimir_energy_derivative(energy, pc, k)};
  }
  throw std::logic_error("model_residual: bad model");
}

}  // namespace

double casimir_residual(const PhysParams& params, double energy, double p) {
  check_energy_cap(energy, params.k());
  return casimir_value(energy, std::abs(p) * params.c(), params.rest_energy(),
                       params.k());
}

double casimir_scale(const PhysParams& params) {
  return 2.0 * params.k() * params.k() * std::cosh(params.mu());
}

double solve_dispersion(const PhysParams& params, double p,
                        DispersionBranch branch, DispersionModel model) {
  const double pc = std::abs(p) * params.c();
  const double mc2 = params.rest_energy();
  const double k = params.k();

  if (model == DispersionModel::AmelinoCameliaExact &&
      branch == DispersionBranch::Particle && pc >= k) {
    throw std::domain_error(
        "solve_dispersion: exact-model particle branch needs |p| c < k "
        "(got pc = " +
        std::to_string(pc) + ", k = " + std::to_string(k) + ")");
  }

  auto fdf = [&](double e) { return model_residual(model, e, pc, mc2, k); };
  const double inflation = (1.0 + params.mu()) * (1.0 + params.mu());
  return detail::solve_branch(fdf, branch, std::hypot(pc, mc2), inflation,
                              kEnergyRatioCap * k);
}

double group_velocity(const PhysParams& params, double p,
                      DispersionBranch branch, DispersionModel model) {
  const double h = std::max(1e-6, 1e-6 * std::abs(p));
  auto energy = [&](double q) {
    return solve_dispersion(params, q, branch, model);
  };
  const double coarse = (energy(p + h) - energy(p - h)) / (2.0 * h);
  const double fine = (energy(p + 0.5 * h) - energy(p - 0.5 * h)) / h;
  return (4.0 * fine - coarse) / 3.0;
}

double particle_velocity(const PhysParams& params, double p, double energy) {
  if (energy == 0.0) {
    throw std::domain_error("particle_velocity: E = 0");
  }
  return p * params.c() * params.c() / energy;
}

double m_plus(const PhysParams& params) {
  return params.m() / (1.0 + params.mu());
}

double m_minus(const PhysParams& params) {
  return params.m() / (1.0 - params.mu());
}

EffectiveMasses effective_masses(const PhysParams& params,
                                 DispersionBranch branch,
                                 DispersionModel model) {
  const double rest =
      std::abs(solve_dispersion(params, 0.0, branch, model));

  auto energy = [&](double q) {
    return solve_dispersion(params, q, branch, model);
  };
  auto second_derivative = [&](double h) {
    return (-energy(2.0 * h) + 16.0 * energy(h) - 30.0 * energy(0.0) +
            16.0 * energy(-h) - energy(-2.0 * h)) /
           (12.0 * h * h);
  };

  const double h = 1e-3 * params.m() * params.c();
  const double coarse = second_derivative(h);
  const double fine = second_derivative(0.5 * h);
  const double curvature = (16.0 * fine - coarse) / 15.0;

  // Particle branches curve upward, antiparticle branches downward; the
  // inertial mass is the positive reciprocal either way.
  return {rest, 1.0 / std::abs(curvature), branch};
}

double dirac_massshell_identity(const PhysParams& params, double energy,
                                double p) {
  (void)p;  // sum_a (p_a/p)^2 = 1: the identity is momentum-independent
  check_energy_cap(energy, params.k());
  return dirac_identity_value(energy, params.rest_energy(), params.k());
}

double cpt_ratio(const PhysParams& params) {
  // Cancellation-free form of (m_minus - m_plus)/m; the direct subtraction
  // loses the low-order digits once mu is tiny.
  const double mu = params.mu();
  return 2.0 * mu / (1.0 - mu * mu);
}

double cpt_ratio_first_order(const PhysParams& params) {
  return 2.0 * params.mu();
}

double k_lower_bound(double rest_energy, double relative_mass_split) {
  if (!(rest_energy > 0.0)) {
    throw std::invalid_argument("k_lower_bound: rest energy must be > 0");
  }
  if (!(relative_mass_split > 0.0)) {
    throw std::invalid_argument("k_lower_bound: split must be > 0");
  }
  return 2.0 * rest_energy / relative_mass_split;
}

}  // namespace dsr
