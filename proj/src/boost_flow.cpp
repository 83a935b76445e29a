#include "dsr/boost_flow.hpp"

#include <cmath>
#include <stdexcept>

#include "dsr/dispersion.hpp"

namespace dsr {

PhaseSpaceVelocity boost_vector_field(const PhysParams& params,
                                      const PhaseSpacePoint& point,
                                      int direction, BoostGenerator generator) {
  if (direction < 0 || direction > 2) {
    throw std::invalid_argument("boost_vector_field: direction must be 0..2");
  }
  const double c = params.c();
  const double k = params.k();
  const double pa = point.momentum[direction];

  PhaseSpaceVelocity v;
  v.d_energy = c * pa;
  if (generator == BoostGenerator::Ordinary) {
    v.d_momentum[direction] = point.energy / c;
    return v;
  }

  const double p2 = point.momentum.squaredNorm();
  // The -p_a p_b c / k closure terms act on every axis, including a itself.
  // expm1 keeps 1 - e^{-2E/k} accurate when E/k is tiny.
  v.d_momentum = -(pa * c / k) * point.momentum;
  v.d_momentum[direction] +=
      p2 * c / (2.0 * k) -
      (k / (2.0 * c)) * std::expm1(-2.0 * point.energy / k);
  return v;
}

FlowTrajectory integrate_flow(const PhysParams& params,
                              const PhaseSpacePoint& start, int direction,
                              BoostGenerator generator, double lambda_max,
                              double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("integrate_flow: step must be > 0");
  }
  if (!(lambda_max >= step)) {
    throw std::invalid_argument("integrate_flow: lambda_max must be >= step");
  }

  FlowTrajectory traj{params, generator, direction, {}, std::nullopt};
  const auto n_steps = static_cast<long>(std::llround(lambda_max / step));

  auto within_cap = [&](const PhaseSpacePoint& pt) {
    return std::isfinite(pt.energy) &&
           std::abs(pt.energy) / params.k() <= kEnergyRatioCap;
  };
  auto record = [&](double lambda, const PhaseSpacePoint& pt) {
    traj.samples.push_back(
        {lambda, pt, casimir_residual(params, pt.energy, pt.momentum.norm())});
  };

  PhaseSpacePoint pt = start;
  if (!within_cap(pt)) {
    throw std::domain_error("integrate_flow: start point beyond energy cap");
  }
  record(0.0, pt);

  for (long i = 1; i <= n_steps; ++i) {
    const auto k1 = boost_vector_field(params, pt, direction, generator);
    PhaseSpacePoint q2{pt.energy + 0.5 * step * k1.d_energy,
                       pt.momentum + 0.5 * step * k1.d_momentum};
    const auto k2 = boost_vector_field(params, q2, direction, generator);
    PhaseSpacePoint q3{pt.energy + 0.5 * step * k2.d_energy,
                       pt.momentum + 0.5 * step * k2.d_momentum};
    const auto k3 = boost_vector_field(params, q3, direction, generator);
    PhaseSpacePoint q4{pt.energy + step * k3.d_energy,
                       pt.momentum + step * k3.d_momentum};
    const auto k4 = boost_vector_field(params, q4, direction, generator);

    pt.energy += step / 6.0 *
                 (k1.d_energy + 2.0 * (k2.d_energy + k3.d_energy) +
                  k4.d_energy);
    pt.momentum += step / 6.0 *
                   (k1.d_momentum + 2.0 * (k2.d_momentum + k3.d_momentum) +
                    k4.d_momentum);

    if (!within_cap(pt)) {
      traj.abort_reason = "energy cap |E|/k <= " +
                          std::to_string(kEnergyRatioCap) +
                          " breached at rapidity " +
                          std::to_string(static_cast<double>(i) * step);
      break;
    }
    record(static_cast<double>(i) * step, pt);
  }
  return traj;
}

double casimir_drift(const FlowTrajectory& trajectory) {
  if (trajectory.samples.empty()) return 0.0;
  const double c0 = trajectory.samples.front().casimir;
  const double scale = std::max(std::abs(c0), casimir_scale(trajectory.params));
  double drift = 0.0;
  for (const auto& s : trajectory.samples) {
    drift = std::max(drift, std::abs(s.casimir - c0) / scale);
  }
  return drift;
}

}  // namespace dsr
