#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "artifacts.hpp"
#include "config.hpp"
#include "pipeline.hpp"
#include "soqft/circuits.hpp"
#include "soqft/oracle.hpp"

namespace fs = std::filesystem;
using namespace soqft;
using namespace soqft::app;

namespace {

std::string dashed(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

// Config file plus per-key command-line overrides shared by every subcommand.
struct CommonOptions {
  std::string config_path;
  std::map<std::string, std::string> overrides;

  void attach(CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration file (key = value lines)");
    for (const auto& key : config_keys()) {
      auto* opt = sub->add_option("--" + dashed(key), overrides[key], "Override config key '" + key + "'");
      opt->default_str("");
    }
  }

  RunConfig resolve() const {
    RunConfig cfg = run_stage("config", [&] { return config_path.empty() ? RunConfig{} : load_config(config_path); });
    run_stage("config", [&] {
      for (const auto& key : config_keys()) {
        const auto it = overrides.find(key);
        if (it != overrides.end() && !it->second.empty()) set_value(cfg, key, it->second);
      }
    });
    return cfg;
  }
};

ForceField load_checked(const RunConfig& cfg) {
  return run_stage("forcefield", [&] {
    if (cfg.forcefield.empty()) throw std::runtime_error("no force field given (--forcefield or config key)");
    ForceField ff = load_forcefield(cfg.forcefield);
    for (const auto& d : validate(ff)) {
      if (d.severity == Diagnostic::Severity::error) throw std::runtime_error(d.message);
      std::cerr << "soqft: warning: " << d.message << "\n";
    }
    return ff;
  });
}

fs::path out_path(const RunConfig& cfg, const std::string& name) { return fs::path(cfg.output_dir) / name; }

std::string sidecar(const std::string& csv) { return fs::path(csv).replace_extension(".json").string(); }

void write_manifest(const RunConfig& cfg, const std::string& command, const std::vector<fs::path>& files) {
  Manifest m(command);
  m.set("config", config_json(cfg));
  m.set("config_sha256", sha256_hex(serialize_config(cfg)));
  for (const auto& f : files) m.add_file(f.string());
  m.write(out_path(cfg, "manifest_" + command + ".json").string());
}

void print_bands(const std::vector<BandReport>& bands) {
  std::printf("%10s %10s %14s %10s %16s %8s\n", "window_lo", "window_hi", "centroid", "ci95", "intensity_km/mol",
              "points");
  for (const auto& b : bands)
    std::printf("%10.2f %10.2f %14.4f %10.4f %16.6g %8zu\n", b.window.lo, b.window.hi, b.centroid, b.ci95,
                b.intensity, b.n_points);
}

int cmd_prepare(const RunConfig& cfg) {
  const ForceField ff = load_checked(cfg);
  run_stage("config", [&] { check_config(cfg); });
  const PreparedState p = prepare_state(cfg, ff, config_grid(cfg, ff));
  run_stage("write", [&] {
    write_state(out_path(cfg, "state.csv").string(), p.state);
    write_json(out_path(cfg, "state.json").string(), "state",
               {{"E0", p.E0},
                {"iterations", p.iterations},
                {"converged", p.converged},
                {"initial_state", p.kind},
                {"n_qubits", cfg.n_qubits},
                {"L", cfg.L}});
    write_manifest(cfg, "prepare", {out_path(cfg, "state.csv"), out_path(cfg, "state.json")});
  });
  std::printf("E0 = %.10f cm^-1 (%ld iterations, %s); state '%s' written to %s\n", p.E0, p.iterations,
              p.converged ? "converged" : "NOT converged", p.kind.c_str(), out_path(cfg, "state.csv").c_str());
  return 0;
}

int cmd_dipole(const RunConfig& cfg, std::string state_path) {
  const ForceField ff = load_checked(cfg);
  run_stage("config", [&] { check_config(cfg); });
  if (state_path.empty()) state_path = out_path(cfg, "state.csv").string();
  const GridSpec g = config_grid(cfg, ff);
  const Wavefunction psi = run_stage("input", [&] { return read_state(state_path, g); });
  const nlohmann::json meta = run_stage("input", [&] { return read_json(sidecar(state_path), "state"); });
  const double E0 = meta.at("E0").get<double>();
  std::vector<fs::path> files;
  for (char axis : cfg.axes) {
    const DipoleOutcome d = dipole_stage(cfg, ff, psi, axis);
    const std::string a(1, axis);
    run_stage("write", [&] {
      nlohmann::json j{{"axis", a},
                       {"norm_mu_sq", d.norm_mu_sq},
                       {"E0", E0},
                       {"dipole_order", cfg.dipole_order},
                       {"dipole_mode", cfg.dipole_mode}};
      if (d.record) {
        j["beta"] = d.record->beta;
        j["success_probability"] = d.record->success_probability;
        j["overlap_with_exact"] = d.record->overlap_with_exact;
      }
      write_state(out_path(cfg, "dipole_" + a + ".csv").string(), d.state);
      write_json(out_path(cfg, "dipole_" + a + ".json").string(), "dipole", j);
    });
    files.push_back(out_path(cfg, "dipole_" + a + ".csv"));
    files.push_back(out_path(cfg, "dipole_" + a + ".json"));
    std::printf("axis %s: <mu^2> = %.10g D^2", a.c_str(), d.norm_mu_sq);
    if (d.record)
      std::printf(", beta = %.6g, success probability = %.6g, overlap = %.12f", d.record->beta,
                  d.record->success_probability, d.record->overlap_with_exact);
    std::printf("\n");
  }
  run_stage("write", [&] { write_manifest(cfg, "dipole", files); });
  return 0;
}

int cmd_propagate(const RunConfig& cfg, std::vector<std::string> inputs) {
  const ForceField ff = load_checked(cfg);
  run_stage("config", [&] { check_config(cfg); });
  if (inputs.empty())
    for (char axis : cfg.axes) inputs.push_back(out_path(cfg, std::string("dipole_") + axis + ".csv").string());
  const GridSpec g = config_grid(cfg, ff);
  std::vector<fs::path> files;
  for (const auto& path : inputs) {
    DipoleOutcome d;
    double E0 = 0.0;
    run_stage("input", [&] {
      const auto meta = read_json(sidecar(path), "dipole");
      d.axis = meta.at("axis").get<std::string>().at(0);
      d.norm_mu_sq = meta.at("norm_mu_sq").get<double>();
      E0 = meta.at("E0").get<double>();
      d.state = read_state(path, g);
    });
    const AutocorrelationSeries s = propagate_stage(cfg, ff, d, E0);
    const std::string a(1, d.axis);
    run_stage("write", [&] {
      write_series(out_path(cfg, "autocorr_" + a + ".csv").string(), s);
      write_json(out_path(cfg, "autocorr_" + a + ".json").string(), "autocorrelation",
                 {{"axis", a}, {"E0", s.E0}, {"norm_mu_sq", s.norm_mu_sq}, {"config", config_json(cfg)}});
    });
    files.push_back(out_path(cfg, "autocorr_" + a + ".csv"));
    files.push_back(out_path(cfg, "autocorr_" + a + ".json"));
    std::printf("axis %s: %zu samples written to %s\n", a.c_str(), s.times.size(),
                out_path(cfg, "autocorr_" + a + ".csv").c_str());
  }
  run_stage("write", [&] { write_manifest(cfg, "propagate", files); });
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, std::vector<std::string> inputs) {
  if (inputs.empty())
    for (char axis : cfg.axes) inputs.push_back(out_path(cfg, std::string("autocorr_") + axis + ".csv").string());
  std::vector<AutocorrelationSeries> series;
  for (const auto& path : inputs)
    series.push_back(run_stage("input", [&] {
      AutocorrelationSeries s = read_series(path);
      const auto meta = read_json(sidecar(path), "autocorrelation");
      s.axis = meta.at("axis").get<std::string>().at(0);
      s.E0 = meta.at("E0").get<double>();
      s.norm_mu_sq = meta.at("norm_mu_sq").get<double>();
      return s;
    }));
  const SpectrumOutcome out = spectrum_stage(cfg, series);
  run_stage("write", [&] {
    write_spectrum(out_path(cfg, "spectrum.csv").string(), out.spectrum);
    write_gnuplot(out_path(cfg, "spectrum.dat").string(), out.spectrum);
    write_json(out_path(cfg, "bands.json").string(), "bands",
               {{"bands", bands_json(out.bands)},
                {"resolution_cm-1", out.spectrum.resolution},
                {"native_spacing_cm-1", out.spectrum.native_spacing}});
    write_manifest(cfg, "spectrum",
                   {out_path(cfg, "spectrum.csv"), out_path(cfg, "spectrum.dat"), out_path(cfg, "bands.json")});
  });
  std::printf("resolution %.4f cm^-1, native spacing %.4f cm^-1\n", out.spectrum.resolution,
              out.spectrum.native_spacing);
  print_bands(out.bands);
  return 0;
}

int cmd_oracle(const RunConfig& cfg, std::size_t n_states) {
  const ForceField ff = load_checked(cfg);
  const GridSpec g = run_stage("config", [&] { return config_grid(cfg, ff); });
  const Eigenpairs eig = run_stage("oracle", [&] { return solve(ff, g); });
  std::vector<AxisSticks> sticks;
  run_stage("oracle", [&] {
    for (char axis : cfg.axes) sticks.push_back({axis, stick_spectrum(eig, ff, axis, cfg.dipole_order)});
  });
  const std::size_t k = std::min(n_states, eig.values.size());
  run_stage("write", [&] {
    write_eigenvalues(out_path(cfg, "eigenvalues.csv").string(),
                      std::vector<double>(eig.values.begin(), eig.values.begin() + static_cast<long>(k)));
    write_sticks(out_path(cfg, "sticks.csv").string(), sticks);
    write_json(out_path(cfg, "oracle.json").string(), "oracle",
               {{"E0", eig.values.front()}, {"dimension", eig.values.size()}, {"dipole_order", cfg.dipole_order}});
    write_manifest(cfg, "oracle",
                   {out_path(cfg, "eigenvalues.csv"), out_path(cfg, "sticks.csv"), out_path(cfg, "oracle.json")});
  });
  std::printf("E0 = %.10f cm^-1 (dimension %zu)\n", eig.values.front(), eig.values.size());
  std::printf("%6s %16s %16s\n", "state", "energy", "excitation");
  for (std::size_t i = 0; i < k; ++i)
    std::printf("%6zu %16.6f %16.6f\n", i, eig.values[i], eig.values[i] - eig.values.front());
  return 0;
}

int cmd_resources(const RunConfig& cfg) {
  const ForceField ff = load_checked(cfg);
  const GridSpec g = run_stage("config", [&] { return config_grid(cfg, ff); });
  const ResourceReport r = run_stage("resources", [&] {
    return resource_report(ff, g, ResourceConfig{cfg.n_t, cfg.dipole_order, cfg.axes});
  });
  std::printf("Counted depth = gate applications after multi-control decomposition (not parallel layers).\n");
  std::printf("n = %d qubits per mode, %d modes, %d qubits including ancillas\n\n", r.n, r.modes, r.qubits);
  std::size_t width = 0;
  for (const auto& row : r.rows) width = std::max(width, row.label.size());
  std::string section;
  for (const auto& row : r.rows) {
    if (row.section != section) {
      section = row.section;
      std::printf("[%s]\n", section.c_str());
    }
    std::printf("  %-*s %12ld\n", static_cast<int>(width), row.label.c_str(), row.count);
  }
  std::printf("\nevolution (%ld steps) %.6g\n", r.n_t, r.evolution_total);
  std::printf("total (evolution + state prep + largest dipole) %.6g\n", r.total);
  run_stage("write", [&] {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) rows.push_back({{"section", row.section}, {"label", row.label}, {"count", row.count}});
    nlohmann::json dip = nlohmann::json::object();
    for (const auto& [axis, count] : r.dipole) dip[std::string(1, axis)] = count;
    write_json(out_path(cfg, "resources.json").string(), "resources",
               {{"n", r.n},
                {"modes", r.modes},
                {"qubits", r.qubits},
                {"rows", rows},
                {"state_prep", r.state_prep},
                {"dipole", dip},
                {"u_v", r.u_v},
                {"u_k", r.u_k},
                {"qft", r.qft},
                {"step", r.step},
                {"n_t", r.n_t},
                {"evolution_total", r.evolution_total},
                {"total", r.total}});
  });
  return 0;
}

int cmd_scan(const RunConfig& cfg, const std::string& fixture) {
  const ForceField ff = load_checked(cfg);
  const auto rows = run_scan(cfg, ff);
  std::vector<fs::path> files{out_path(cfg, "scan.csv")};
  run_stage("write", [&] { write_text(files[0].string(), scan_csv(rows)); });
  std::printf("%-16s %10s %8s %5s %14s %10s %16s\n", "scheme", "T_fs", "n_t", "band", "centroid", "ci95",
              "intensity_km/mol");
  for (const auto& r : rows)
    std::printf("%-16s %10.1f %8ld %5zu %14.4f %10.4f %16.6g\n", r.scheme.name().c_str(), r.point.T, r.point.n_t,
                r.band, r.report.centroid, r.report.ci95, r.report.intensity);
  if (!fixture.empty()) {
    const auto published = run_stage("fixture", [&] { return load_fixture(fixture); });
    const auto cmp = compare_fixture(published, rows);
    files.push_back(out_path(cfg, "comparison.csv"));
    run_stage("write", [&] { write_text(files.back().string(), comparison_csv(cmp)); });
    const auto matched = std::count_if(cmp.begin(), cmp.end(), [](const auto& c) { return c.matched; });
    const auto inside = std::count_if(cmp.begin(), cmp.end(), [](const auto& c) { return c.within_ci; });
    std::printf("fixture: %zu published bands, %ld matched, %ld within the published 95%% interval\n", cmp.size(),
                static_cast<long>(matched), static_cast<long>(inside));
  }
  run_stage("write", [&] { write_manifest(cfg, "scan", files); });
  return 0;
}

int cmd_pipeline(const RunConfig& cfg) {
  const ForceField ff = load_checked(cfg);
  const PipelineResult r = run_pipeline(cfg, ff);
  write_pipeline(cfg, ff, r);
  std::printf("E0 = %.10f cm^-1; outputs in %s\n", r.prepared.E0, cfg.output_dir.c_str());
  print_bands(r.spectrum.bands);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vibrational spectra from simulated quantum time evolution"};
  app.require_subcommand(1);
  app.set_version_flag("--version", soqft_version);

  std::map<std::string, CommonOptions> common;
  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    common[name].attach(sub);
    return sub;
  };

  add("prepare", "Relax the ground state and write the initial state");
  auto* dipole = add("dipole", "Apply the dipole operator to a prepared state");
  std::string state_path;
  dipole->add_option("--state", state_path, "State CSV (default <output_dir>/state.csv)");
  auto* propagate = add("propagate", "Propagate dipole-operated states and record autocorrelations");
  std::vector<std::string> dipole_inputs;
  propagate->add_option("--input", dipole_inputs, "Dipole state CSV files (default one per axis)");
  auto* spectrum = add("spectrum", "Cross section and band report from autocorrelation series");
  std::vector<std::string> series_inputs;
  spectrum->add_option("--series", series_inputs, "Autocorrelation CSV files (default one per axis)");
  auto* oracle = add("oracle", "Exact diagonalization reference");
  std::size_t n_states = 20;
  oracle->add_option("--states", n_states, "Number of eigenvalues to print and write")->check(CLI::PositiveNumber);
  add("resources", "Gate-count report for the circuits");
  auto* scan = add("scan", "Run every scheme at every (T, n_t) point");
  std::string fixture;
  scan->add_option("--fixture", fixture, "Published band table to compare against")->check(CLI::ExistingFile);
  add("pipeline", "Prepare, dipole, propagate and spectrum in one run");

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const RunConfig cfg = common[name].resolve();
    if (name == "prepare") return cmd_prepare(cfg);
    if (name == "dipole") return cmd_dipole(cfg, state_path);
    if (name == "propagate") return cmd_propagate(cfg, dipole_inputs);
    if (name == "spectrum") return cmd_spectrum(cfg, series_inputs);
    if (name == "oracle") return cmd_oracle(cfg, n_states);
    if (name == "resources") return cmd_resources(cfg);
    if (name == "scan") return cmd_scan(cfg, fixture);
    return cmd_pipeline(cfg);
  } catch (const StageError& e) {
    std::cerr << "soqft: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "soqft: " << e.what() << "\n";
  }
  return 1;
}
