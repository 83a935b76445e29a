#ifndef DSR_BOOST_FLOW_HPP
#define DSR_BOOST_FLOW_HPP

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "dsr/params.hpp"

namespace dsr {

struct PhaseSpacePoint {
  double energy = 0.0;
  Eigen::Vector3d momentum = Eigen::Vector3d::Zero();
};

enum class BoostGenerator { Modified, Ordinary };

inline const char* to_string(BoostGenerator g) {
  return g == BoostGenerator::Modified ? "modified" : "ordinary";
}

/// Rate of change of (E, p) per unit rapidity.
struct PhaseSpaceVelocity {
  double d_energy = 0.0;
  Eigen::Vector3d d_momentum = Eigen::Vector3d::Zero();
};

/// One recorded point of a boost flow: rapidity, phase-space point and the
/// value of the deformed Casimir there.
struct FlowSample {
  double rapidity;
  PhaseSpacePoint point;
  double casimir;
};

/// Rapidity-parameterized boost orbit. abort_reason is set when integration
/// stopped early (energy cap breached mid-flow); the samples collected up to
/// that point are kept.
struct FlowTrajectory {
  PhysParams params;
  BoostGenerator generator;
  int direction = 0;  // boosted axis, 0..2
  std::vector<FlowSample> samples;
  std::optional<std::string> abort_reason;
};

/// The boost generator as a real vector field on (E, p). Axis `direction`
/// is 0-based.
///
/// Modified (conserves the deformed Casimir exactly, any c):
///   dE/dl   = c p_a
///   dp_a/dl = |p|^2 c / (2k) + (k / 2c)(1 - e^{-2E/k}) - p_a^2 c / k
///   dp_b/dl = -p_a p_b c / k            (b != a)
/// Ordinary (undeformed hyperbolic rotation):
///   dE/dl = c p_a,  dp_a/dl = E / c,  dp_b/dl = 0.
PhaseSpaceVelocity boost_vector_field(const PhysParams& params,
                                      const PhaseSpacePoint& point,
                                      int direction, BoostGenerator generator);

/// Classical fixed-step RK4 flow of the chosen generator, recording the
/// Casimir at every sample. The step count is round(lambda_max / step);
/// samples sit at rapidities i * step. Deterministic.
FlowTrajectory integrate_flow(const PhysParams& params,
                              const PhaseSpacePoint& start, int direction,
                              BoostGenerator generator, double lambda_max,
                              double step);

/// max_i |C(l_i) - C(0)| / max(|C(0)|, 2 k^2 cosh(mc^2/k)).
double casimir_drift(const FlowTrajectory& trajectory);

}  // namespace dsr

#endif  // DSR_BOOST_FLOW_HPP
