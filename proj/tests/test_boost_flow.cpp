#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dsr/boost_flow.hpp"
#include "dsr/dispersion.hpp"

using namespace dsr;

namespace {

const PhysParams desk{1.0, 1.0, 10.0};

PhaseSpacePoint on_shell(const PhysParams& params, const Eigen::Vector3d& p) {
  return {solve_dispersion(params, p.norm(), DispersionBranch::Particle,
                           DispersionModel::AmelinoCameliaExact),
          p};
}

/// Directional derivative of the Casimir along a field, from its analytic
/// gradient. Zero along the modified generator for every (E, p) and c.
double casimir_rate(const PhysParams& params, const PhaseSpacePoint& pt,
                    const PhaseSpaceVelocity& v) {
  const double c = params.c();
  const double k = params.k();
  const double dc_de =
      casimir_energy_derivative(pt.energy, pt.momentum.norm() * c, k);
  const double expo = std::exp(pt.energy / k);
  double rate = dc_de * v.d_energy;
  for (int b = 0; b < 3; ++b) {
    rate += -2.0 * pt.momentum[b] * c * c * expo * v.d_momentum[b];
  }
  return rate;
}

}  // namespace

TEST_CASE("modified field at the rest point") {
  const auto v = boost_vector_field(desk, {1.0, Eigen::Vector3d::Zero()}, 0,
                                    BoostGenerator::Modified);
  CHECK(v.d_energy == 0.0);
  const double expected = 10.0 * (1.0 - std::exp(-0.2)) / 2.0;
  CHECK(v.d_momentum[0] == doctest::Approx(expected).epsilon(1e-14));
  CHECK(v.d_momentum[0] > 0.0);
  CHECK(v.d_momentum[1] == 0.0);
  CHECK(v.d_momentum[2] == 0.0);
}

TEST_CASE("ordinary field boosts a rest state along the axis") {
  const auto v = boost_vector_field(desk, {1.7, Eigen::Vector3d::Zero()}, 1,
                                    BoostGenerator::Ordinary);
  CHECK(v.d_energy == 0.0);
  CHECK(v.d_momentum[1] == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(v.d_momentum[0] == 0.0);
  CHECK(v.d_momentum[2] == 0.0);
}

TEST_CASE("modified field reduces to the ordinary one for huge k") {
  const PhysParams flat{1.0, 1.0, 1e12};
  const PhaseSpacePoint pt{1.3, {0.5, -0.2, 0.1}};
  const auto modified =
      boost_vector_field(flat, pt, 0, BoostGenerator::Modified);
  const auto ordinary =
      boost_vector_field(flat, pt, 0, BoostGenerator::Ordinary);
  CHECK(modified.d_energy == ordinary.d_energy);
  for (int b = 0; b < 3; ++b) {
    CHECK(std::abs(modified.d_momentum[b] - ordinary.d_momentum[b]) <=
          1e-9 * std::max(1.0, std::abs(ordinary.d_momentum[b])));
  }
}

TEST_CASE("modified generator conserves the casimir analytically") {
  // The gradient-contracted rate vanishes identically, on- or off-shell,
  // including with an explicit c != 1.
  for (const auto& params :
       {PhysParams{1.0, 1.0, 10.0}, PhysParams{0.5, 2.0, 7.0}}) {
    for (double e : {-1.5, 0.3, 2.0}) {
      const PhaseSpacePoint pt{e, {0.4, -0.3, 0.25}};
      const auto v = boost_vector_field(params, pt, 0,
                                        BoostGenerator::Modified);
      const double scale =
          std::abs(casimir_energy_derivative(
              e, pt.momentum.norm() * params.c(), params.k())) +
          1.0;
      CHECK(std::abs(casimir_rate(params, pt, v)) < 1e-12 * scale);
    }
  }
}

TEST_CASE("dropping the closure terms breaks conservation") {
  // Same field without the -p_a p_b c / k terms: its casimir rate is
  // nonzero as soon as the momentum is nonzero.
  const PhaseSpacePoint pt = on_shell(desk, {0.3, 0.4, 0.0});
  auto v = boost_vector_field(desk, pt, 0, BoostGenerator::Modified);
  v.d_momentum += (pt.momentum[0] * desk.c() / desk.k()) * pt.momentum;
  CHECK(std::abs(casimir_rate(desk, pt, v)) > 1e-4);
}

TEST_CASE("modified flow keeps the shell to integrator accuracy") {
  for (double k : {5.0, 10.0}) {
    const PhysParams params{1.0, 1.0, k};
    for (const auto& p0 :
         {Eigen::Vector3d{0.0, 0.0, 0.0}, Eigen::Vector3d{0.5, 0.0, 0.0},
          Eigen::Vector3d{0.3, 0.4, 0.0}}) {
      const auto traj =
          integrate_flow(params, on_shell(params, p0), 0,
                         BoostGenerator::Modified, 2.0, 1e-3);
      CHECK_FALSE(traj.abort_reason.has_value());
      CHECK(traj.samples.size() == 2001);
      CHECK(std::abs(traj.samples.front().casimir) <
            1e-12 * casimir_scale(params));
      CHECK(casimir_drift(traj) <= 1e-9);
    }
  }
}

TEST_CASE("fourth-order step scaling above the roundoff floor") {
  // At step 1e-3 the drift sits at the roundoff floor, so the order is
  // measured where truncation still dominates.
  const PhysParams params{1.0, 1.0, 5.0};
  const auto start = on_shell(params, {0.5, 0.0, 0.0});
  const double coarse = casimir_drift(integrate_flow(
      params, start, 0, BoostGenerator::Modified, 2.0, 0.1));
  const double fine = casimir_drift(integrate_flow(
      params, start, 0, BoostGenerator::Modified, 2.0, 0.05));
  const double factor = coarse / fine;
  CHECK(factor > 12.0);
  CHECK(factor < 20.0);
}

TEST_CASE("ordinary flow leaves the deformed shell") {
  const PhysParams params{1.0, 1.0, 5.0};
  const auto traj = integrate_flow(params, on_shell(params, {0.0, 0.0, 0.0}),
                                   0, BoostGenerator::Ordinary, 1.0, 1e-3);
  CHECK(casimir_drift(traj) >= 1e-3);

  // The departure grows monotonically with rapidity on [0, 1].
  const double c0 = traj.samples.front().casimir;
  double previous = 0.0;
  for (const auto& s : traj.samples) {
    const double gap = std::abs(s.casimir - c0);
    CHECK(gap >= previous - 1e-15);
    previous = gap;
  }
}

TEST_CASE("off-axis modified flow still conserves the casimir") {
  const auto traj = integrate_flow(desk, on_shell(desk, {0.3, 0.4, 0.0}), 0,
                                   BoostGenerator::Modified, 2.0, 1e-3);
  CHECK(casimir_drift(traj) <= 1e-9);
  // Explicit c != 1 exercises the unit dressing of the field.
  const PhysParams dressed{0.5, 2.0, 7.0};
  const auto traj_c =
      integrate_flow(dressed, on_shell(dressed, {0.2, 0.15, 0.0}), 0,
                     BoostGenerator::Modified, 2.0, 1e-3);
  CHECK(casimir_drift(traj_c) <= 1e-9);
}

TEST_CASE("huge-k modified flow is the undeformed hyperbolic rotation") {
  const PhysParams flat{1.0, 1.0, 1e8};
  const auto traj = integrate_flow(flat, {1.0, Eigen::Vector3d::Zero()}, 0,
                                   BoostGenerator::Modified, 1.5, 1e-3);
  const auto& end = traj.samples.back();
  CHECK(std::abs(end.point.energy - std::cosh(1.5)) < 1e-6);
  CHECK(std::abs(end.point.momentum[0] - std::sinh(1.5)) < 1e-6);
}

TEST_CASE("casimir drift of degenerate trajectories") {
  FlowTrajectory traj{desk, BoostGenerator::Modified, 0, {}, std::nullopt};
  CHECK(casimir_drift(traj) == 0.0);  // no samples
  traj.samples.push_back({0.0, {1.0, Eigen::Vector3d::Zero()}, 0.0});
  CHECK(casimir_drift(traj) == 0.0);  // a single sample never drifts
}

TEST_CASE("cap breach mid-flow aborts with a partial trajectory") {
  // Boosted momenta saturate at pc -> k, so the energy climbs at a rate of
  // about k per unit rapidity; the cap E/k = 30 is reached near lambda = 30.
  const PhysParams tight{1.0, 1.0, 1.2};
  const auto traj = integrate_flow(tight, on_shell(tight, {1.0, 0.0, 0.0}), 0,
                                   BoostGenerator::Modified, 40.0, 1e-2);
  REQUIRE(traj.abort_reason.has_value());
  CHECK(traj.samples.size() > 1);
  CHECK(traj.samples.size() < 4001);
  for (const auto& s : traj.samples) {
    CHECK(std::abs(s.point.energy) / tight.k() <= kEnergyRatioCap);
  }
}

TEST_CASE("flow preconditions") {
  CHECK_THROWS_AS(integrate_flow(desk, {1.0, Eigen::Vector3d::Zero()}, 0,
                                 BoostGenerator::Modified, 1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate_flow(desk, {1.0, Eigen::Vector3d::Zero()}, 0,
                                 BoostGenerator::Modified, 0.5, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(boost_vector_field(desk, {1.0, Eigen::Vector3d::Zero()}, 3,
                                     BoostGenerator::Modified),
                  std::invalid_argument);
}
