#ifndef DSR_IO_HPP
#define DSR_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "dsr/boost_flow.hpp"
#include "dsr/experiments.hpp"
#include "dsr/grid.hpp"
#include "dsr/params.hpp"
#include "dsr/wave.hpp"

namespace dsr {

inline constexpr int kSchemaVersion = 1;

/// Full configuration of a run: physics constants, model/branch selectors,
/// grid, experiment settings and output routing. Defaults are the desk-scale
/// reference setup.
struct RunConfig {
  double m = 1.0;
  double c = 1.0;
  double k = 10.0;
  std::string model = "ac-truncated";
  std::string branch = "particle";

  int grid_n = 4096;
  double grid_length = 800.0;

  double p0 = 0.05;
  double sigma = 20.0;
  double t_max = 2000.0;
  int frames = 48;
  std::vector<double> k_list = {10.0, 20.0, 40.0, 80.0};
  double split = 0.0;  // 0 disables the deformation-scale bound

  std::string output_directory = ".";
  std::vector<std::string> formats = {"csv", "json"};

  /// Validates the physics block (throws std::invalid_argument on bad input,
  /// naming the offending quantity).
  PhysParams physics() const { return {m, c, k}; }
  Grid1D grid() const { return {grid_n, grid_length}; }
};

DispersionModel parse_model(const std::string& name);
DispersionBranch parse_branch(const std::string& name);
BoostGenerator parse_generator(const std::string& name);

/// Loads a JSON document with the RunConfig schema. Unknown keys are
/// rejected with the offending key named.
RunConfig config_from_json(const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path);
nlohmann::ordered_json config_to_json(const RunConfig& config);

nlohmann::ordered_json report_to_json(const ExperimentReport& report);

/// Serializes a report with schema_version and the exact RunConfig used.
void write_json(const ExperimentReport& report, const RunConfig& config,
                const std::string& path);

/// CSV writers: '.' decimal separator, '\n' line endings, %.17g values.
void write_csv(const FlowTrajectory& trajectory, const std::string& path);
void write_csv(const ScalarField& field, const std::string& path);
void write_csv(const SpinorField& field, const std::string& path);

struct ObservableSample {
  double t;
  Observables observables;
};

void write_csv(const std::vector<ObservableSample>& series,
               const std::string& path);

/// Generic numeric table (used for series coefficients, convergence sweeps).
void write_csv_table(const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows,
                     const std::string& path);

/// %.17g rendering used by every CSV writer.
std::string format_full(double value);

}  // namespace dsr

#endif  // DSR_IO_HPP
