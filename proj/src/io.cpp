#include "dsr/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dsr {

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: keep '\n' endings
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  return out;
}

void check_keys(const nlohmann::json& obj, const std::set<std::string>& known,
                const std::string& scope) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!known.contains(key)) {
      throw std::invalid_argument("unknown config key: " + scope + key);
    }
  }
}

const char* verdict_kind_name(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::WithinRelative: return "within-relative";
    case Verdict::Kind::WithinAbsolute: return "within-absolute";
    case Verdict::Kind::SeparatedRelative: return "separated-relative";
  }
  return "?";
}

}  // namespace

DispersionModel parse_model(const std::string& name) {
  if (name == "special-relativity" || name == "sr")
    return DispersionModel::SpecialRelativity;
  if (name == "ac-exact") return DispersionModel::AmelinoCameliaExact;
  if (name == "ac-truncated") return DispersionModel::AmelinoCameliaTruncated;
  if (name == "magueijo-smolin" || name == "ms")
    return DispersionModel::MagueijoSmolin;
  throw std::invalid_argument(
      "unknown model '" + name +
      "' (expected special-relativity, ac-exact, ac-truncated, "
      "magueijo-smolin)");
}

DispersionBranch parse_branch(const std::string& name) {
  if (name == "particle") return DispersionBranch::Particle;
  if (name == "antiparticle") return DispersionBranch::Antiparticle;
  throw std::invalid_argument("unknown branch '" + name +
                              "' (expected particle or antiparticle)");
}

BoostGenerator parse_generator(const std::string& name) {
  if (name == "modified") return BoostGenerator::Modified;
  if (name == "ordinary") return BoostGenerator::Ordinary;
  throw std::invalid_argument("unknown generator '" + name +
                              "' (expected modified or ordinary)");
}

RunConfig config_from_json(const nlohmann::json& doc) {
  RunConfig config;
  check_keys(doc, {"physics", "model", "branch", "grid", "experiment",
                   "output"},
             "");

  if (doc.contains("physics")) {
    const auto& physics = doc.at("physics");
    check_keys(physics, {"m", "c", "k"}, "physics.");
    config.m = physics.value("m", config.m);
    config.c = physics.value("c", config.c);
    config.k = physics.value("k", config.k);
  }
  if (doc.contains("model")) config.model = doc.at("model").get<std::string>();
  if (doc.contains("branch"))
    config.branch = doc.at("branch").get<std::string>();
  if (doc.contains("grid")) {
    const auto& grid = doc.at("grid");
    check_keys(grid, {"n", "length"}, "grid.");
    config.grid_n = grid.value("n", config.grid_n);
    config.grid_length = grid.value("length", config.grid_length);
  }
  if (doc.contains("experiment")) {
    const auto& experiment = doc.at("experiment");
    check_keys(experiment,
               {"p0", "sigma", "t_max", "frames", "k_list", "split"},
               "experiment.");
    config.p0 = experiment.value("p0", config.p0);
    config.sigma = experiment.value("sigma", config.sigma);
    config.t_max = experiment.value("t_max", config.t_max);
    config.frames = experiment.value("frames", config.frames);
    if (experiment.contains("k_list")) {
      config.k_list = experiment.at("k_list").get<std::vector<double>>();
    }
    config.split = experiment.value("split", config.split);
  }
  if (doc.contains("output")) {
    const auto& output = doc.at("output");
    check_keys(output, {"directory", "formats"}, "output.");
    config.output_directory =
        output.value("directory", config.output_directory);
    if (output.contains("formats")) {
      config.formats = output.at("formats").get<std::vector<std::string>>();
    }
  }

  parse_model(config.model);    // validate names early
  parse_branch(config.branch);
  config.physics();
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::invalid_argument("config parse error in " + path + ": " +
                                err.what());
  }
  return config_from_json(doc);
}

nlohmann::ordered_json config_to_json(const RunConfig& config) {
  nlohmann::ordered_json doc;
  doc["physics"] = {{"m", config.m}, {"c", config.c}, {"k", config.k}};
  doc["model"] = config.model;
  doc["branch"] = config.branch;
  doc["grid"] = {{"n", config.grid_n}, {"length", config.grid_length}};
  doc["experiment"] = {{"p0", config.p0},       {"sigma", config.sigma},
                       {"t_max", config.t_max}, {"frames", config.frames},
                       {"k_list", config.k_list}, {"split", config.split}};
  doc["output"] = {{"directory", config.output_directory},
                   {"formats", config.formats}};
  return doc;
}

nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
  nlohmann::ordered_json doc;
  doc["name"] = report.name;
  doc["params_used"] = report.params_used;
  doc["measurements"] = report.measurements;
  nlohmann::ordered_json predictions;
  for (const auto& [key, prediction] : report.predictions) {
    predictions[key] = {{"value", prediction.value},
                        {"formula", prediction.formula}};
  }
  doc["predictions"] = predictions;
  nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back({{"name", v.name},
                        {"measured", v.measured},
                        {"predicted", v.predicted},
                        {"tolerance", v.tolerance},
                        {"kind", verdict_kind_name(v.kind)},
                        {"passed", v.passed}});
  }
  doc["verdicts"] = verdicts;
  doc["all_passed"] = report.all_passed();
  return doc;
}

void write_json(const ExperimentReport& report, const RunConfig& config,
                const std::string& path) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["config"] = config_to_json(config);
  doc["report"] = report_to_json(report);
  auto out = open_or_throw(path);
  out << doc.dump(2) << '\n';
}

std::string format_full(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

namespace {

void write_rows(std::ofstream& out, const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << columns[i] << (i + 1 < columns.size() ? "," : "");
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << format_full(row[i]) << (i + 1 < row.size() ? "," : "");
    }
    out << '\n';
  }
}

}  // namespace

void write_csv_table(const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows,
                     const std::string& path) {
  auto out = open_or_throw(path);
  write_rows(out, columns, rows);
}

void write_csv(const FlowTrajectory& trajectory, const std::string& path) {
  std::vector<std::vector<double>> rows;
  rows.reserve(trajectory.samples.size());
  for (const auto& s : trajectory.samples) {
    rows.push_back({s.rapidity, s.point.energy, s.point.momentum[0],
                    s.point.momentum[1], s.point.momentum[2], s.casimir});
  }
  write_csv_table({"lambda", "E", "p1", "p2", "p3", "casimir"}, rows, path);
}

void write_csv(const ScalarField& field, const std::string& path) {
  std::vector<std::vector<double>> rows;
  rows.reserve(field.grid.size());
  for (int i = 0; i < field.grid.size(); ++i) {
    const auto v = field.values[i];
    rows.push_back({field.grid.position(i), v.real(), v.imag(),
                    std::norm(v)});
  }
  write_csv_table({"x", "re", "im", "density"}, rows, path);
}

void write_csv(const SpinorField& field, const std::string& path) {
  std::vector<std::vector<double>> rows;
  rows.reserve(field.grid.size());
  const Eigen::ArrayXd density = field.density();
  for (int i = 0; i < field.grid.size(); ++i) {
    rows.push_back({field.grid.position(i), field.upper[i].real(),
                    field.upper[i].imag(), field.lower[i].real(),
                    field.lower[i].imag(), density[i]});
  }
  write_csv_table({"x", "re_chi", "im_chi", "re_eta", "im_eta", "density"},
                  rows, path);
}

void write_csv(const std::vector<ObservableSample>& series,
               const std::string& path) {
  std::vector<std::vector<double>> rows;
  rows.reserve(series.size());
  for (const auto& s : series) {
    rows.push_back({s.t, s.observables.norm, s.observables.mean_position,
                    s.observables.position_variance});
  }
  write_csv_table({"t", "norm", "mean_x", "var_x"}, rows, path);
}

}  // namespace dsr
