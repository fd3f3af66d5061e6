#include "pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "artifacts.hpp"
#include "soqft/propagator.hpp"
#include "soqft/state_prep.hpp"

namespace soqft::app {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::uint64_t axis_seed(std::uint64_t seed, char axis) { return seed ^ (static_cast<std::uint64_t>(axis) << 56); }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

StageError::StageError(std::string stage, const std::string& what)
    : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

GridSpec config_grid(const RunConfig& cfg, const ForceField& ff) { return make_grid(cfg.n_qubits, ff.n_modes, cfg.L); }

PreparedState prepare_state(const RunConfig& cfg, const ForceField& ff, const GridSpec& g) {
  return run_stage("prepare", [&] {
    IteOptions opt;
    opt.dtau = cfg.ite_dtau;
    opt.tol = cfg.ite_tol;
    IteResult ite = imaginary_time_evolve(ff, g, opt);
    PreparedState p;
    p.kind = cfg.initial_state;
    p.E0 = ite.E0;
    p.iterations = ite.iterations;
    p.converged = ite.converged;
    p.state = cfg.initial_state == "harmonic" ? harmonic_ground_state(g) : std::move(ite.state);
    return p;
  });
}

DipoleOutcome dipole_stage(const RunConfig& cfg, const ForceField& ff, const Wavefunction& psi, char axis) {
  return run_stage(std::string("dipole ") + axis, [&] {
    DipoleOutcome out;
    out.axis = axis;
    if (cfg.dipole_mode == "circuit") {
      const double beta = choose_beta(ff, psi.grid, axis, cfg.dipole_order, cfg.beta_margin);
      auto r = apply_dipole_probabilistic(psi, ff, axis, cfg.dipole_order, beta);
      out.state = std::move(r.state);
      out.norm_mu_sq = r.record.norm_mu_sq;
      out.record = r.record;
    } else {
      auto r = apply_dipole_exact(psi, ff, axis, cfg.dipole_order);
      out.state = std::move(r.state);
      out.norm_mu_sq = r.norm_mu_sq;
    }
    return out;
  });
}

AutocorrelationSeries propagate_stage(const RunConfig& cfg, const ForceField& ff, const DipoleOutcome& dip,
                                      double E0) {
  return run_stage(std::string("propagate ") + dip.axis, [&] {
    SamplingOptions sampling{cfg.shots, axis_seed(cfg.seed, dip.axis)};
    return propagate(dip.state, dip.norm_mu_sq, E0, dip.axis, cfg.propagation(), ff, dip.state.grid, sampling);
  });
}

SpectrumOutcome spectrum_stage(const RunConfig& cfg, const std::vector<AutocorrelationSeries>& series) {
  return run_stage("spectrum", [&] {
    std::vector<AutocorrelationSeries> damped;
    for (const auto& s : series) damped.push_back(damp(s));
    SpectrumOutcome out;
    out.spectrum = cross_section(damped, cfg.spectrum_options());
    if (!cfg.windows.empty()) {
      for (const auto& w : cfg.windows) out.bands.push_back(band_report(out.spectrum, w));
      return out;
    }
    // Detected windows with a non-positive cross-section sum or fewer than two
    // native samples are dropped.
    const Spectrum& sp = out.spectrum;
    for (const auto& w : auto_window(sp, cfg.threshold)) {
      double total = 0.0;
      std::size_t native = 0;
      for (std::size_t i = 0; i < sp.energies.size(); ++i)
        if (sp.energies[i] >= w.lo && sp.energies[i] <= w.hi) {
          total += sp.sigma[i];
          native += sp.is_native(i) ? 1 : 0;
        }
      if (total > 0.0 && native >= 2) out.bands.push_back(band_report(sp, w));
    }
    return out;
  });
}

PipelineResult run_pipeline(const RunConfig& cfg, const ForceField& ff) {
  run_stage("config", [&] { check_config(cfg); });
  const GridSpec g = run_stage("config", [&] { return config_grid(cfg, ff); });
  PipelineResult r;
  auto t0 = Clock::now();
  r.prepared = prepare_state(cfg, ff, g);
  r.timings["prepare"] = seconds_since(t0);
  for (char axis : cfg.axes) {
    t0 = Clock::now();
    r.dipoles.push_back(dipole_stage(cfg, ff, r.prepared.state, axis));
    r.timings[std::string("dipole_") + axis] = seconds_since(t0);
    t0 = Clock::now();
    r.series.push_back(propagate_stage(cfg, ff, r.dipoles.back(), r.prepared.E0));
    r.timings[std::string("propagate_") + axis] = seconds_since(t0);
  }
  t0 = Clock::now();
  r.spectrum = spectrum_stage(cfg, r.series);
  r.timings["spectrum"] = seconds_since(t0);
  return r;
}

void write_pipeline(const RunConfig& cfg, const ForceField& ff, const PipelineResult& result) {
  run_stage("write", [&] {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    Manifest manifest("pipeline");
    auto emit = [&](const fs::path& p) { manifest.add_file(p.string()); };

    const auto cfg_text = serialize_config(cfg);
    manifest.set("config", config_json(cfg));
    manifest.set("config_sha256", sha256_hex(cfg_text));
    manifest.set("forcefield", {{"name", ff.name}, {"sha256", sha256_hex(serialize_forcefield(ff))}});
    manifest.set("seeds", {{"seed", cfg.seed}, {"shots", cfg.shots}});

    write_state((dir / "state.csv").string(), result.prepared.state);
    emit(dir / "state.csv");
    write_json((dir / "state.json").string(), "state",
               {{"E0", result.prepared.E0},
                {"iterations", result.prepared.iterations},
                {"converged", result.prepared.converged},
                {"initial_state", result.prepared.kind},
                {"n_qubits", cfg.n_qubits},
                {"L", cfg.L}});
    emit(dir / "state.json");

    for (std::size_t k = 0; k < result.dipoles.size(); ++k) {
      const auto& d = result.dipoles[k];
      const std::string a(1, d.axis);
      write_state((dir / ("dipole_" + a + ".csv")).string(), d.state);
      nlohmann::json meta{{"axis", a},
                          {"norm_mu_sq", d.norm_mu_sq},
                          {"E0", result.prepared.E0},
                          {"dipole_order", cfg.dipole_order},
                          {"dipole_mode", cfg.dipole_mode}};
      if (d.record) {
        meta["beta"] = d.record->beta;
        meta["success_probability"] = d.record->success_probability;
        meta["overlap_with_exact"] = d.record->overlap_with_exact;
      }
      write_json((dir / ("dipole_" + a + ".json")).string(), "dipole", meta);
      emit(dir / ("dipole_" + a + ".csv"));
      emit(dir / ("dipole_" + a + ".json"));

      const auto& s = result.series[k];
      write_series((dir / ("autocorr_" + a + ".csv")).string(), s);
      write_json((dir / ("autocorr_" + a + ".json")).string(), "autocorrelation",
                 {{"axis", a}, {"E0", s.E0}, {"norm_mu_sq", s.norm_mu_sq}, {"config", config_json(cfg)}});
      emit(dir / ("autocorr_" + a + ".csv"));
      emit(dir / ("autocorr_" + a + ".json"));
    }

    const auto& spec = result.spectrum.spectrum;
    write_spectrum((dir / "spectrum.csv").string(), spec);
    write_gnuplot((dir / "spectrum.dat").string(), spec);
    write_json((dir / "bands.json").string(), "bands",
               {{"bands", bands_json(result.spectrum.bands)},
                {"resolution_cm-1", spec.resolution},
                {"native_spacing_cm-1", spec.native_spacing}});
    emit(dir / "spectrum.csv");
    emit(dir / "spectrum.dat");
    emit(dir / "bands.json");

    for (const auto& [stage, secs] : result.timings) manifest.add_timing(stage, secs);
    manifest.write((dir / "manifest.json").string());
  });
}

std::vector<ScanRow> run_scan(const RunConfig& cfg, const ForceField& ff) {
  run_stage("config", [&] { check_config(cfg); });
  const GridSpec g = run_stage("config", [&] { return config_grid(cfg, ff); });
  const auto points = cfg.scan_points.empty() ? std::vector<ScanPoint>{{cfg.T, cfg.n_t}} : cfg.scan_points;
  const auto schemes = cfg.schemes.empty() ? std::vector<Scheme>{cfg.scheme()} : cfg.schemes;

  RunConfig base = cfg;
  base.initial_state = "ite";
  const PreparedState relaxed = prepare_state(base, ff, g);
  const Wavefunction harmonic = harmonic_ground_state(g);

  std::vector<ScanRow> rows;
  for (const auto& scheme : schemes) {
    RunConfig sc = cfg;
    sc.dipole_order = scheme.dipole_order;
    sc.initial_state = scheme.initial_state;
    const Wavefunction& psi = scheme.initial_state == "ite" ? relaxed.state : harmonic;
    std::vector<DipoleOutcome> dipoles;
    for (char axis : cfg.axes) dipoles.push_back(dipole_stage(sc, ff, psi, axis));
    for (const auto& pt : points) {
      RunConfig pc = sc;
      pc.T = pt.T;
      pc.n_t = pt.n_t;
      std::vector<AutocorrelationSeries> series;
      for (const auto& d : dipoles) series.push_back(propagate_stage(pc, ff, d, relaxed.E0));
      const auto spec = spectrum_stage(pc, series);
      for (std::size_t b = 0; b < spec.bands.size(); ++b) rows.push_back({scheme, pt, b, spec.bands[b]});
    }
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = "scheme,T_fs,n_t,dt_fs,band,window_lo,window_hi,centroid,ci95,intensity_km_mol,n_points\n";
  for (const auto& r : rows)
    out += r.scheme.name() + "," + format_real(r.point.T) + "," + std::to_string(r.point.n_t) + "," +
           format_real(r.point.T / static_cast<double>(r.point.n_t)) + "," + std::to_string(r.band) + "," +
           format_real(r.report.window.lo) + "," + format_real(r.report.window.hi) + "," +
           format_real(r.report.centroid) + "," + format_real(r.report.ci95) + "," +
           format_real(r.report.intensity) + "," + std::to_string(r.report.n_points) + "\n";
  return out;
}

std::vector<FixtureRow> load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty fixture");
  const auto head = split_csv(line);
  auto col = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < head.size(); ++i)
      if (head[i] == name) return static_cast<int>(i);
    return -1;
  };
  const int c_scheme = col("scheme"), c_T = col("T_fs"), c_nt = col("n_t"), c_c = col("centroid"),
            c_ci = col("ci95"), c_I = col("intensity_km_mol");
  for (int c : {c_scheme, c_T, c_nt, c_c, c_ci, c_I})
    if (c < 0) throw std::runtime_error(path + ": fixture lacks a required column");
  std::vector<FixtureRow> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != head.size()) throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad row");
    FixtureRow r;
    try {
      r.scheme = cells[c_scheme];
      r.T = std::stod(cells[c_T]);
      r.n_t = std::stol(cells[c_nt]);
      r.centroid = std::stod(cells[c_c]);
      r.ci95 = std::stod(cells[c_ci]);
      r.intensity = std::stod(cells[c_I]);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad number");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const int ii = static_cast<int>(i);
      if (ii == c_scheme || ii == c_T || ii == c_nt || ii == c_c || ii == c_ci || ii == c_I) continue;
      r.label += (r.label.empty() ? "" : " ") + head[i] + "=" + cells[i];
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<FixtureComparison> compare_fixture(const std::vector<FixtureRow>& fixture, const std::vector<ScanRow>& rows) {
  std::vector<FixtureComparison> out;
  for (const auto& f : fixture) {
    FixtureComparison c;
    c.published = f;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
      if (r.scheme.name() != f.scheme || r.point.n_t != f.n_t || std::abs(r.point.T - f.T) > 1e-6) continue;
      const double d = std::abs(r.report.centroid - f.centroid);
      if (d < best) {
        best = d;
        c.matched = true;
        c.computed = r.report;
      }
    }
    if (c.matched) {
      c.within_ci = best <= f.ci95;
      c.intensity_rel_diff = f.intensity != 0.0 ? (c.computed.intensity - f.intensity) / f.intensity : 0.0;
    }
    out.push_back(c);
  }
  return out;
}

std::string comparison_csv(const std::vector<FixtureComparison>& cmp) {
  std::string out =
      "scheme,T_fs,n_t,label,published_centroid,published_ci95,computed_centroid,computed_ci95,within_ci,"
      "published_intensity,computed_intensity,intensity_rel_diff\n";
  for (const auto& c : cmp) {
    out += c.published.scheme + "," + format_real(c.published.T) + "," + std::to_string(c.published.n_t) + "," +
           c.published.label + "," + format_real(c.published.centroid) + "," + format_real(c.published.ci95) + ",";
    if (c.matched)
      out += format_real(c.computed.centroid) + "," + format_real(c.computed.ci95) + "," +
             (c.within_ci ? "yes" : "no") + "," + format_real(c.published.intensity) + "," +
             format_real(c.computed.intensity) + "," + format_real(c.intensity_rel_diff) + "\n";
    else
      out += ",,unmatched," + format_real(c.published.intensity) + ",,\n";
  }
  return out;
}

}  // namespace soqft::app
