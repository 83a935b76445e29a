// dsrlab: command-line front end for the deformed-dispersion laboratory.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dsr/boost_flow.hpp"
#include "dsr/dispersion.hpp"
#include "dsr/experiments.hpp"
#include "dsr/io.hpp"
#include "dsr/series.hpp"
#include "dsr/spectral.hpp"
#include "dsr/wave.hpp"

namespace {

struct CliState {
  dsr::RunConfig config;

  // boost settings
  std::string generator = "modified";
  int direction = 1;  // 1..3
  double lambda_max = 2.0;
  double step = 1e-3;
  std::vector<double> start_momentum = {0.0, 0.0, 0.0};

  // dispersion / expand settings
  double p = 0.05;
  int order = 4;

  std::string equation = "kg";
  std::string experiment_name;
};

std::filesystem::path output_path(const dsr::RunConfig& config,
                                  const std::string& filename) {
  std::filesystem::path dir(config.output_directory);
  std::filesystem::create_directories(dir);
  return dir / filename;
}

bool wants_format(const dsr::RunConfig& config, const std::string& fmt) {
  for (const auto& f : config.formats) {
    if (f == fmt) return true;
  }
  return false;
}

void write_table_csv(const dsr::ExperimentReport& report,
                     const dsr::RunConfig& config) {
  if (!wants_format(config, "csv")) return;
  if (report.name == "velocity-table") {
    std::vector<std::vector<double>> row(1);
    for (const auto& key :
         {"ac_group_velocity", "ac_particle_velocity", "ms_group_velocity",
          "ms_particle_velocity"}) {
      row[0].push_back(report.measurements.at(key));
    }
    dsr::write_csv_table({"ac_v_group", "ac_v_particle", "ms_v_group",
                          "ms_v_particle"},
                         row, output_path(config, "velocity_table.csv")
                                  .string());
  } else if (report.name == "convergence-study") {
    std::vector<std::vector<double>> rows;
    for (const auto& [key, value] : report.measurements) {
      if (key.rfind("error_k_", 0) == 0) {
        rows.push_back({std::stod(key.substr(8)), value});
      }
    }
    dsr::write_csv_table({"k", "error"}, rows,
                         output_path(config, "convergence_table.csv")
                             .string());
  }
}

int finish_report(const dsr::ExperimentReport& report,
                  const dsr::RunConfig& config) {
  write_table_csv(report, config);
  for (const auto& v : report.verdicts) {
    std::cout << (v.passed ? "[PASS] " : "[FAIL] ") << v.name
              << ": measured " << dsr::format_full(v.measured)
              << ", predicted " << dsr::format_full(v.predicted)
              << ", tolerance " << dsr::format_full(v.tolerance) << "\n";
  }
  if (wants_format(config, "json")) {
    const auto path = output_path(config, report.name + ".json");
    dsr::write_json(report, config, path.string());
    std::cout << "report written to " << path.string() << "\n";
  }
  if (!report.all_passed()) {
    std::cerr << "failed verdicts:";
    for (const auto& name : report.failed_verdicts()) std::cerr << " " << name;
    std::cerr << "\n";
    return 1;
  }
  return 0;
}

int cmd_dispersion(const CliState& state) {
  const auto params = state.config.physics();
  const auto model = dsr::parse_model(state.config.model);
  const auto branch = dsr::parse_branch(state.config.branch);

  const double energy = dsr::solve_dispersion(params, state.p, branch, model);
  const double vg = dsr::group_velocity(params, state.p, branch, model);
  const double vp = dsr::particle_velocity(params, state.p, energy);
  const double residual =
      model == dsr::DispersionModel::AmelinoCameliaExact
          ? dsr::casimir_residual(params, energy, state.p) /
                dsr::casimir_scale(params)
          : 0.0;

  std::cout << "model " << state.config.model << ", branch "
            << state.config.branch << ", p = " << dsr::format_full(state.p)
            << "\n"
            << "  E          = " << dsr::format_full(energy) << "\n"
            << "  v_group    = " << dsr::format_full(vg) << "\n"
            << "  v_particle = " << dsr::format_full(vp) << "\n";
  if (model == dsr::DispersionModel::AmelinoCameliaExact) {
    std::cout << "  relative shell residual = " << dsr::format_full(residual)
              << "\n";
  }
  return 0;
}

int cmd_masses(const CliState& state) {
  const auto params = state.config.physics();
  std::cout << "deformed inertial masses: m+ = "
            << dsr::format_full(dsr::m_plus(params))
            << ", m- = " << dsr::format_full(dsr::m_minus(params)) << "\n";
  std::cout << "model             branch        rest_energy        "
               "inertial_mass\n";
  for (const auto model : {dsr::DispersionModel::SpecialRelativity,
                           dsr::DispersionModel::AmelinoCameliaExact,
                           dsr::DispersionModel::AmelinoCameliaTruncated,
                           dsr::DispersionModel::MagueijoSmolin}) {
    for (const auto branch : {dsr::DispersionBranch::Particle,
                              dsr::DispersionBranch::Antiparticle}) {
      const auto masses = dsr::effective_masses(params, branch, model);
      std::printf("%-17s %-13s %-18.12g %-18.12g\n", dsr::to_string(model),
                  dsr::to_string(branch), masses.rest_energy,
                  masses.inertial_mass);
    }
  }
  std::cout << "cpt ratio exact = " << dsr::format_full(dsr::cpt_ratio(params))
            << ", first order = "
            << dsr::format_full(dsr::cpt_ratio_first_order(params)) << "\n";
  if (state.config.split > 0.0) {
    std::cout << "k lower bound for split "
              << dsr::format_full(state.config.split) << " = "
              << dsr::format_full(dsr::k_lower_bound(params.rest_energy(),
                                                     state.config.split))
              << "\n";
  }
  return 0;
}

int cmd_boost(const CliState& state) {
  const auto params = state.config.physics();
  const auto generator = dsr::parse_generator(state.generator);
  const auto branch = dsr::parse_branch(state.config.branch);
  if (state.direction < 1 || state.direction > 3) {
    throw std::invalid_argument("boost: --direction must be 1..3");
  }

  Eigen::Vector3d p0(state.start_momentum[0], state.start_momentum[1],
                     state.start_momentum[2]);
  const double energy = dsr::solve_dispersion(
      params, p0.norm(), branch, dsr::DispersionModel::AmelinoCameliaExact);

  const auto trajectory =
      dsr::integrate_flow(params, {energy, p0}, state.direction - 1, generator,
                          state.lambda_max, state.step);
  const double drift = dsr::casimir_drift(trajectory);

  std::cout << "generator " << state.generator << ", start E = "
            << dsr::format_full(energy) << ", |p| = "
            << dsr::format_full(p0.norm()) << "\n"
            << "samples = " << trajectory.samples.size()
            << ", relative casimir drift = " << dsr::format_full(drift)
            << "\n";
  if (trajectory.abort_reason) {
    std::cerr << "flow aborted: " << *trajectory.abort_reason << "\n";
  }
  if (wants_format(state.config, "csv")) {
    const auto path = output_path(state.config, "boost_trajectory.csv");
    dsr::write_csv(trajectory, path.string());
    std::cout << "trajectory written to " << path.string() << "\n";
  }
  return trajectory.abort_reason ? 1 : 0;
}

int cmd_expand(const CliState& state) {
  const auto params = state.config.physics();
  const auto model = dsr::parse_model(state.config.model);
  const auto branch = dsr::parse_branch(state.config.branch);

  const auto series = dsr::expand_energy(params, branch, model, state.order);
  std::cout << "E(p) coefficients about p = 0 (" << state.config.model << ", "
            << state.config.branch << "):\n";
  std::vector<std::vector<double>> rows;
  for (int i = 0; i <= series.order(); ++i) {
    std::cout << "  p^" << i << ": " << dsr::format_full(series.coeff(i))
              << "\n";
    rows.push_back({static_cast<double>(i), series.coeff(i)});
  }
  if (wants_format(state.config, "csv")) {
    const auto path = output_path(state.config, "energy_series.csv");
    dsr::write_csv_table({"power", "coefficient"}, rows, path.string());
    std::cout << "series written to " << path.string() << "\n";
  }
  return 0;
}

int cmd_evolve(const CliState& state) {
  if (state.config.frames < 2) {
    throw std::invalid_argument("evolve: --frames must be >= 2");
  }
  const auto params = state.config.physics();
  const auto branch = dsr::parse_branch(state.config.branch);
  const auto grid = state.config.grid();
  const double x0 = 0.5 * grid.length();
  const auto& cfg = state.config;

  std::vector<dsr::ObservableSample> series;
  series.reserve(cfg.frames);

  auto record = [&](double t, const dsr::Observables& obs) {
    series.push_back({t, obs});
  };

  std::optional<dsr::ScalarField> final_scalar;
  std::optional<dsr::SpinorField> final_spinor;

  if (state.equation == "kg") {
    const auto model = dsr::parse_model(cfg.model);
    const auto packet = dsr::gaussian_packet(grid, x0, cfg.sigma, cfg.p0);
    const auto modes =
        dsr::decompose_kg_single_branch(params, packet, branch, model);
    for (int i = 0; i < cfg.frames; ++i) {
      const double t = cfg.t_max * i / (cfg.frames - 1);
      auto field = dsr::evolve_kg(modes, t);
      record(t, dsr::observables(field));
      if (i == cfg.frames - 1) final_scalar.emplace(std::move(field));
    }
  } else if (state.equation == "dirac") {
    const auto model = dsr::parse_model(cfg.model);
    dsr::DiracModel dirac_model;
    if (model == dsr::DispersionModel::SpecialRelativity) {
      dirac_model = dsr::DiracModel::Ordinary;
    } else if (model == dsr::DispersionModel::AmelinoCameliaTruncated ||
               model == dsr::DispersionModel::AmelinoCameliaExact) {
      dirac_model = dsr::DiracModel::ModifiedDirac;
    } else {
      throw std::invalid_argument(
          "evolve: the magueijo-smolin model has no wave equation here; "
          "choose ac-truncated or special-relativity");
    }
    const auto packet = dsr::dirac_gaussian_packet(params, grid, x0, cfg.sigma,
                                                   cfg.p0, branch, dirac_model);
    for (int i = 0; i < cfg.frames; ++i) {
      const double t = cfg.t_max * i / (cfg.frames - 1);
      auto field = dsr::evolve_dirac(params, packet, t, dirac_model);
      record(t, dsr::observables(field));
      if (i == cfg.frames - 1) final_spinor.emplace(std::move(field));
    }
  } else if (state.equation == "schrodinger") {
    const double mass = branch == dsr::DispersionBranch::Particle
                            ? dsr::m_plus(params)
                            : dsr::m_minus(params);
    const auto packet = dsr::gaussian_packet(grid, x0, cfg.sigma, cfg.p0);
    for (int i = 0; i < cfg.frames; ++i) {
      const double t = cfg.t_max * i / (cfg.frames - 1);
      auto field = dsr::evolve_schrodinger(mass, branch, packet, t);
      record(t, dsr::observables(field));
      if (i == cfg.frames - 1) final_scalar.emplace(std::move(field));
    }
  } else {
    throw std::invalid_argument(
        "evolve: --equation must be kg, dirac or schrodinger");
  }

  const auto& last = series.back().observables;
  std::cout << "final frame: norm = " << dsr::format_full(last.norm)
            << ", <x> = " << dsr::format_full(last.mean_position)
            << ", var = " << dsr::format_full(last.position_variance) << "\n";

  if (wants_format(cfg, "csv")) {
    const auto obs_path = output_path(cfg, "observables.csv");
    dsr::write_csv(series, obs_path.string());
    const auto snap_path = output_path(cfg, "field_final.csv");
    if (final_scalar) dsr::write_csv(*final_scalar, snap_path.string());
    if (final_spinor) dsr::write_csv(*final_spinor, snap_path.string());
    std::cout << "series written to " << obs_path.string()
              << ", final snapshot to " << snap_path.string() << "\n";
  }
  return 0;
}

int cmd_experiment(const CliState& state) {
  const auto params = state.config.physics();
  const auto branch = dsr::parse_branch(state.config.branch);
  const auto& cfg = state.config;
  const std::string& name = state.experiment_name;

  dsr::ExperimentReport report;
  if (name == "mass-extraction") {
    report = dsr::run_mass_extraction(params, cfg.p0, cfg.sigma, cfg.t_max,
                                      cfg.grid(), dsr::WaveEquation::KleinGordon,
                                      branch, cfg.frames);
  } else if (name == "mass-extraction-dirac") {
    report = dsr::run_mass_extraction(params, cfg.p0, cfg.sigma, cfg.t_max,
                                      cfg.grid(), dsr::WaveEquation::Dirac,
                                      branch, cfg.frames);
  } else if (name == "schrodinger-equivalence") {
    report = dsr::run_schrodinger_equivalence(
        params, cfg.p0, cfg.sigma, cfg.t_max, cfg.grid(), branch,
        dsr::WaveEquation::KleinGordon, cfg.frames);
  } else if (name == "schrodinger-equivalence-dirac") {
    report = dsr::run_schrodinger_equivalence(
        params, cfg.p0, cfg.sigma, cfg.t_max, cfg.grid(), branch,
        dsr::WaveEquation::Dirac, cfg.frames);
  } else if (name == "velocity-table") {
    report = dsr::run_velocity_table(params, cfg.p0);
  } else if (name == "convergence") {
    report = dsr::run_convergence_study(params, state.p, cfg.k_list);
  } else if (name == "cpt") {
    report = dsr::run_cpt_report(
        params, cfg.split > 0.0 ? std::optional<double>(cfg.split)
                                : std::nullopt);
  } else if (name == "dirac-consistency") {
    report = dsr::run_dirac_consistency(params, 1000);
  } else {
    throw std::invalid_argument(
        "unknown experiment '" + name +
        "' (expected mass-extraction, mass-extraction-dirac, "
        "schrodinger-equivalence, schrodinger-equivalence-dirac, "
        "velocity-table, convergence, cpt, dirac-consistency)");
  }
  return finish_report(report, cfg);
}

int cmd_table(const CliState& state) {
  const auto params = state.config.physics();
  const auto report = dsr::run_velocity_table(params, state.p);
  return finish_report(report, state.config);
}

}  // namespace

int main(int argc, char** argv) {
  CliState state;

  // First pass: honor --config before binding flag overrides.
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config" && i + 1 < argc) {
        state.config = dsr::load_config_file(argv[i + 1]);
      } else if (arg.rfind("--config=", 0) == 0) {
        state.config = dsr::load_config_file(arg.substr(9));
      }
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }

  CLI::App app{"dsrlab: deformed-dispersion kinematics and wave evolution"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--m", state.config.m, "rest mass");
  app.add_option("--c", state.config.c, "speed of light");
  app.add_option("--k", state.config.k, "deformation energy scale");
  app.add_option("--model", state.config.model,
                 "special-relativity | ac-exact | ac-truncated | "
                 "magueijo-smolin");
  app.add_option("--branch", state.config.branch, "particle | antiparticle");
  app.add_option("--output-dir", state.config.output_directory,
                 "directory for CSV/JSON output");

  auto* dispersion =
      app.add_subcommand("dispersion", "energy and velocities at a momentum");
  dispersion->fallthrough();
  dispersion->add_option("--p", state.p, "momentum");

  auto* masses =
      app.add_subcommand("masses", "effective-mass table and mass splitting");
  masses->fallthrough();
  masses->add_option("--split", state.config.split,
                     "measured relative mass splitting (enables the "
                     "deformation-scale bound)");

  auto* boost = app.add_subcommand("boost", "integrate a boost flow");
  boost->fallthrough();
  boost->add_option("--generator", state.generator, "modified | ordinary");
  boost->add_option("--direction", state.direction, "boost axis, 1..3");
  boost->add_option("--lambda", state.lambda_max, "maximum rapidity");
  boost->add_option("--step", state.step, "RK4 rapidity step");
  boost->add_option("--px", state.start_momentum[0], "start momentum x");
  boost->add_option("--py", state.start_momentum[1], "start momentum y");
  boost->add_option("--pz", state.start_momentum[2], "start momentum z");

  auto* expand =
      app.add_subcommand("expand", "power series of E(p) about p = 0");
  expand->fallthrough();
  expand->add_option("--order", state.order, "truncation order (even, >= 2)");

  auto* evolve = app.add_subcommand("evolve", "wavepacket evolution");
  evolve->fallthrough();
  evolve->add_option("--equation", state.equation,
                     "kg | dirac | schrodinger");
  evolve->add_option("--p0", state.config.p0, "packet central momentum");
  evolve->add_option("--sigma", state.config.sigma, "packet width");
  evolve->add_option("--t-max", state.config.t_max, "final time");
  evolve->add_option("--frames", state.config.frames, "number of frames");
  evolve->add_option("--grid-n", state.config.grid_n, "grid sites");
  evolve->add_option("--grid-length", state.config.grid_length, "box length");

  auto* experiment =
      app.add_subcommand("experiment", "run a named experiment");
  experiment->fallthrough();
  experiment->add_option("name", state.experiment_name, "experiment name")
      ->required();
  experiment->add_option("--p0", state.config.p0, "packet central momentum");
  experiment->add_option("--p", state.p, "probe momentum (convergence)");
  experiment->add_option("--sigma", state.config.sigma, "packet width");
  experiment->add_option("--t-max", state.config.t_max, "final time");
  experiment->add_option("--frames", state.config.frames, "number of frames");
  experiment->add_option("--grid-n", state.config.grid_n, "grid sites");
  experiment->add_option("--grid-length", state.config.grid_length,
                         "box length");
  experiment->add_option("--k-list", state.config.k_list,
                         "deformation scales for convergence");
  experiment->add_option("--split", state.config.split,
                         "assumed relative mass splitting");

  auto* table = app.add_subcommand(
      "table", "nonrelativistic velocity comparison of the two models");
  table->fallthrough();
  table->add_option("--p", state.p, "probe momentum");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dispersion->parsed()) return cmd_dispersion(state);
    if (masses->parsed()) return cmd_masses(state);
    if (boost->parsed()) return cmd_boost(state);
    if (expand->parsed()) return cmd_expand(state);
    if (evolve->parsed()) return cmd_evolve(state);
    if (experiment->parsed()) return cmd_experiment(state);
    if (table->parsed()) return cmd_table(state);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
