#include "noonsim/runner.hpp"

#include <chrono>
#include <ostream>

#include "json.hpp"
#include "noonsim/error.hpp"
#include "noonsim/io.hpp"
#include "noonsim/oracle_suite.hpp"
#include "noonsim/version.hpp"

namespace noonsim {

namespace {

using nlohmann::ordered_json;

ordered_json pairs(const std::vector<std::pair<std::string, double>>& v) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, x] : v) j[k] = x;
  return j;
}

ordered_json run_entry(const SweepResult& r) {
  ordered_json reg = ordered_json::object();
  for (const auto& s : r.series) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      if (s.points[k].regularized) idx.push_back(k);
    }
    reg["N" + std::to_string(s.photons)] = idx;
  }
  ordered_json j;
  j["label"] = r.label;
  j["dof_count"] = r.meta.dof_count;
  j["mode_count"] = r.meta.mode_count;
  j["eigen_residual"] = r.meta.eigen_residual;
  j["capture_fractions"] = pairs(r.meta.capture_fractions);
  j["diagnostics"] = pairs(r.meta.diagnostics);
  j["stage_seconds"] = pairs(r.meta.stage_seconds);
  j["regularized_points"] = reg;
  j["warnings"] = r.meta.warnings;
  return j;
}

ordered_json empty_run(const std::string& label) {
  ordered_json j;
  j["label"] = label;
  j["dof_count"] = 0;
  j["mode_count"] = 0;
  j["eigen_residual"] = 0.0;
  j["capture_fractions"] = ordered_json::object();
  j["diagnostics"] = ordered_json::object();
  j["stage_seconds"] = ordered_json::object();
  j["regularized_points"] = ordered_json::object();
  j["warnings"] = ordered_json::array();
  return j;
}

const std::vector<double>& chosen(const SweepSeries& s, Normalization mode) {
  return mode == Normalization::max ? s.normalized : s.raw;
}

}  // namespace

RunReport execute(const RunConfig& cfg, const std::filesystem::path& out_dir, std::string& stage) {
  const auto start = std::chrono::steady_clock::now();
  stage = "validate";
  validate(cfg);
  const std::string kind = to_string(cfg.kind);
  const std::string hash = config_hash(cfg);

  RunReport report;
  ordered_json runs = ordered_json::array();
  ordered_json summary = ordered_json::object();
  std::vector<std::string> warnings = cfg.warnings;

  auto write = [&](const std::string& name, const std::string& content) {
    stage = "write " + name;
    const auto path = out_dir / name;
    write_file(path, content);
    report.files.push_back(path);
  };

  switch (cfg.kind) {
    case ExperimentKind::phase_sweep: {
      stage = "phase-sweep";
      SweepResult r = run_phase_sweep(cfg.phase);
      r.meta.config_hash = hash;
      write("result_phase-sweep.csv", sweep_csv(r));
      write("components_phase-sweep.csv", components_csv(r));
      stage = "phase-sweep metrics";
      for (const auto& s : r.series) {
        summary["fringe_period_N" + std::to_string(s.photons)] =
            estimate_fringe_period(r.x, chosen(s, cfg.normalization));
      }
      summary["classical_period"] = estimate_fringe_period(r.x, r.classical_norm);
      runs.push_back(run_entry(r));
      break;
    }
    case ExperimentKind::ghost_scan: {
      for (double p : cfg.ghost.perturbations) {
        const std::string label = perturbation_label(p);
        stage = "ghost-scan " + label;
        SweepResult r = run_ghost_perturbation(cfg.ghost, p);
        r.meta.config_hash = hash;
        write("result_ghost-scan_" + label + ".csv", sweep_csv(r));
        write("components_ghost-scan_" + label + ".csv", components_csv(r));
        runs.push_back(run_entry(r));
      }
      break;
    }
    case ExperimentKind::oracle_check: {
      stage = "oracle-check";
      const OracleReport o = run_oracle_suite(cfg.oracle);
      ordered_json j;
      j["draws"] = o.draws;
      j["photons"] = cfg.oracle.photons;
      j["mode_counts"] = cfg.oracle.mode_counts;
      j["seed"] = cfg.oracle.seed;
      j["tolerance"] = cfg.oracle.tolerance;
      j["max_rel_deviation"] = {{"numerator", o.max_rel_numerator},
                                {"denom_alpha", o.max_rel_denom_alpha},
                                {"denom_beta", o.max_rel_denom_beta},
                                {"state_norm", o.max_rel_state_norm},
                                {"value", o.max_rel_value}};
      j["max_rel_deviation_overall"] = o.max_rel;
      j["regularization_flags_match"] = o.flags_match;
      j["pass"] = o.pass;
      j["seconds"] = o.seconds;
      write("oracle_report.json", j.dump(2) + "\n");
      summary["max_rel_deviation"] = o.max_rel;
      summary["pass"] = o.pass;
      ordered_json entry = empty_run("");
      entry["stage_seconds"] = {{"oracle", o.seconds}};
      runs.push_back(entry);
      if (!o.pass) {
        stage = "oracle-check";
        throw NumericalError("closed form deviates from the Wick oracle by " +
                             std::to_string(o.max_rel) + " (tolerance " +
                             std::to_string(cfg.oracle.tolerance) + ")");
      }
      break;
    }
    case ExperimentKind::modes: {
      stage = "modes";
      const auto& m = cfg.modes;
      const auto t0 = std::chrono::steady_clock::now();
      PermittivityMap map = [&] {
        if (m.permittivity_csv) {
          stage = "modes read " + *m.permittivity_csv;
          return read_permittivity_csv(*m.permittivity_csv, m.cell_size);
        }
        const Grid g = m.dimension == 1
                           ? Grid::centered_line(m.cells[0], m.cells[0] * m.cell_size[0])
                           : Grid::centered_plane(m.cells, {m.cells[0] * m.cell_size[0],
                                                            m.cells[1] * m.cell_size[1]});
        return PermittivityMap(g, std::vector<double>(g.dof_count(), m.background_eps));
      }();
      stage = "modes solve";
      const DiscreteOperators ops = build_operators(map);
      const ModeBasis basis =
          solve_modes(ops, m.omega_floor.value_or(default_omega_floor(map.grid())));
      const double solve_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      write("permittivity.csv", permittivity_csv(map));
      write("omegas.csv", omegas_csv(basis));
      if (m.dump_modes) write("modes.csv", modes_csv(basis));
      ordered_json entry = empty_run("");
      entry["dof_count"] = basis.dof_count();
      entry["mode_count"] = basis.kept_count();
      entry["eigen_residual"] = eigen_residual(ops, basis);
      entry["stage_seconds"] = {{"modes", solve_s}};
      runs.push_back(entry);
      break;
    }
  }

  write("config.yaml", emit_config(cfg));

  ordered_json defaults = ordered_json::object();
  for (const auto& [k, v] : cfg.defaults_applied) defaults[k] = v;
  for (const auto& r : runs) {
    for (const auto& w : r["warnings"]) warnings.push_back(w.get<std::string>());
  }
  ordered_json manifest;
  manifest["tool"] = "noonsim";
  manifest["version"] = kVersion;
  manifest["experiment"] = kind;
  manifest["config_hash"] = hash;
  manifest["normalization"] = to_string(cfg.normalization);
  manifest["defaults_applied"] = defaults;
  manifest["warnings"] = warnings;
  manifest["runs"] = runs;
  manifest["summary"] = summary;
  std::vector<std::string> outputs;
  for (const auto& f : report.files) outputs.push_back(f.filename().string());
  outputs.emplace_back("manifest.json");
  manifest["outputs"] = outputs;
  manifest["wall_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.manifest_json = manifest.dump(2) + "\n";
  write("manifest.json", report.manifest_json);
  stage = "done";
  return report;
}

int run(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& err) {
  std::string stage = "start";
  try {
    execute(cfg, out_dir, stage);
    return static_cast<int>(ExitCode::success);
  } catch (const Error& e) {
    err << "error [" << stage << "]: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::out_of_range& e) {
    err << "error [" << stage << "]: " << e.what() << "\n";
    return static_cast<int>(ExitCode::config);
  }
}

}  // namespace noonsim
