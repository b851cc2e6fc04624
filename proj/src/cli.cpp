#include "torusfhn/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "torusfhn/analysis.hpp"
#include "torusfhn/config.hpp"
#include "torusfhn/errors.hpp"
#include "torusfhn/normalform.hpp"
#include "torusfhn/spectrum.hpp"
#include "torusfhn/trajectory_io.hpp"

namespace torusfhn {

using nlohmann::json;

namespace {

struct CliFailure {
  int code;
  std::string message;
};

ModeIndex parse_mode(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw CliFailure{kExitInvalidMode, "mode must be given as r,s"};
  try {
    std::size_t used_r = 0;
    std::size_t used_s = 0;
    const std::string rs = text.substr(0, comma);
    const std::string ss = text.substr(comma + 1);
    const int r = std::stoi(rs, &used_r);
    const int s = std::stoi(ss, &used_s);
    if (used_r != rs.size() || used_s != ss.size()) throw std::invalid_argument(text);
    return {r, s};
  } catch (const std::logic_error&) {
    throw CliFailure{kExitInvalidMode, "mode must be given as r,s with integers, got '" + text + "'"};
  }
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw CliFailure{kExitConfig, "range must be given as lo:hi"};
  try {
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::logic_error&) {
    throw CliFailure{kExitConfig, "range must be given as lo:hi with numbers, got '" + text + "'"};
  }
}

RunConfig load_config_or_fail(const std::string& path, std::ostream& err) {
  try {
    auto cfg = load_run_config(path);
    for (const auto& note : diagnostics(cfg.torus)) err << "note: " << note << '\n';
    return cfg;
  } catch (const ConfigError& e) {
    throw CliFailure{kExitConfig, e.what()};
  }
}

std::string fmt(double v, int precision = 12) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

json mode_records(const ModeSpectrum& m) {
  json out = json::array();
  for (int branch = 1; branch <= 2; ++branch) {
    const Complex lambda = branch == 1 ? m.lambda1 : m.lambda2;
    out.push_back({{"r", m.mode.r},
                   {"s", m.mode.s},
                   {"branch", branch},
                   {"lambda_re", lambda.real()},
                   {"lambda_im", lambda.imag()},
                   {"re", branch == 1 ? m.parts.re1 : m.parts.re2},
                   {"im", branch == 1 ? m.parts.im1 : m.parts.im2},
                   {"a1", m.terms.a1},
                   {"b1", m.terms.b1},
                   {"a2", m.terms.a2},
                   {"b2", m.terms.b2}});
  }
  return out;
}

json verdict_json(const StabilityVerdict& v) {
  json modes = json::array();
  for (const auto& m : v.critical_modes) modes.push_back({m.r, m.s});
  return {{"stable", v.stable}, {"max_re", v.max_re}, {"critical_modes", modes}};
}

void print_verdict(std::ostream& out, const StabilityVerdict& v) {
  out << "verdict: " << (v.stable ? "stable" : "unstable") << " (max Re lambda = " << fmt(v.max_re) << ")\n";
  out << "critical modes:";
  for (const auto& m : v.critical_modes) out << " (" << m.r << "," << m.s << ")";
  out << '\n';
}

json report_json(const PatternReport& r) {
  json j = {{"kind", to_string(r.kind)},
            {"phase_shift", r.phase_shift ? json(*r.phase_shift) : json(nullptr)},
            {"dominant_freq_per_neuron", r.dominant_freq_per_neuron},
            {"diagonal_symmetry_ok", r.diagonal_symmetry_ok ? json(*r.diagonal_symmetry_ok) : json(nullptr)},
            {"consensus_frequency", r.consensus_frequency ? json(*r.consensus_frequency) : json(nullptr)},
            {"amplitude", r.amplitude},
            {"note", r.note},
            {"tolerances",
             {{"phase", r.phase_tolerance},
              {"diagonal_rms", r.rms_tolerance},
              {"frequency_bins", r.bin_tolerance},
              {"decay_amplitude", r.decay_threshold}}}};
  return j;
}

void print_report(std::ostream& out, const std::string& label, const PatternReport& r) {
  out << label << "kind: " << to_string(r.kind) << '\n';
  if (r.phase_shift) out << label << "phase_shift: " << fmt(*r.phase_shift) << '\n';
  if (r.consensus_frequency) out << label << "dominant_frequency: " << fmt(*r.consensus_frequency) << '\n';
  if (r.diagonal_symmetry_ok) out << label << "diagonal_symmetry_ok: " << (*r.diagonal_symmetry_ok ? "true" : "false") << '\n';
  out << label << "amplitude: " << fmt(r.amplitude) << '\n';
  if (!r.note.empty()) out << label << "note: " << r.note << '\n';
}

Trajectory run_simulation(const RunConfig& cfg) {
  const auto ic = cfg.initial_state();
  if (ic.size() != cfg.state_dim()) throw CliFailure{kExitConfig, "initial condition size mismatch"};
  try {
    if (cfg.two_tori()) return simulate(cfg.two_tori_config(), ic, cfg.settings);
    return simulate(cfg.torus, ic, cfg.settings);
  } catch (const DivergenceError& e) {
    throw CliFailure{kExitDiverged, e.what()};
  }
}

int cmd_spectrum(const std::string& path, const std::string& mode_text, const std::string& format,
                 std::ostream& out, std::ostream& err) {
  const auto cfg = load_config_or_fail(path, err);
  std::vector<ModeSpectrum> modes;
  if (!mode_text.empty()) {
    const auto mode = parse_mode(mode_text);
    try {
      modes.push_back(mode_spectrum(mode, cfg.torus));
    } catch (const InvalidModeError& e) {
      throw CliFailure{kExitInvalidMode, e.what()};
    }
  } else {
    modes = full_spectrum(cfg.torus);
  }
  const auto verdict = cfg.two_tori() ? origin_stability(cfg.two_tori_config()) : origin_stability(cfg.torus);
  if (format == "json") {
    json records = json::array();
    for (const auto& m : modes) {
      for (auto& rec : mode_records(m)) records.push_back(rec);
    }
    json doc = {{"schema_version", kReportSchemaVersion},
                {"config", to_json(cfg)},
                {"records", records},
                {"verdict", verdict_json(verdict)},
                {"diagnostics", diagnostics(cfg.torus)}};
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  out << std::left << std::setw(4) << "r" << std::setw(4) << "s" << std::setw(7) << "branch" << std::setw(21)
      << "Re(lambda)" << std::setw(21) << "Im(lambda)" << std::setw(21) << "a1" << std::setw(21) << "b1"
      << std::setw(21) << "a2" << "b2\n";
  for (const auto& m : modes) {
    for (int branch = 1; branch <= 2; ++branch) {
      out << std::setw(4) << m.mode.r << std::setw(4) << m.mode.s << std::setw(7) << branch << std::setw(21)
          << fmt(branch == 1 ? m.parts.re1 : m.parts.re2) << std::setw(21)
          << fmt(branch == 1 ? m.parts.im1 : m.parts.im2) << std::setw(21) << fmt(m.terms.a1) << std::setw(21)
          << fmt(m.terms.b1) << std::setw(21) << fmt(m.terms.a2) << fmt(m.terms.b2) << '\n';
    }
  }
  print_verdict(out, verdict);
  return kExitOk;
}

Parameter parse_parameter(const std::string& name) {
  if (name == "gamma") return Parameter::Gamma;
  if (name == "delta") return Parameter::Delta;
  if (name == "a") return Parameter::A;
  if (name == "c") return Parameter::C;
  throw CliFailure{kExitConfig, "--vary must be one of gamma, delta, a, c"};
}

int cmd_hopf(const std::string& path, const std::string& mode_text, const std::string& vary,
             const std::string& range, const std::string& store, std::ostream& out, std::ostream& err) {
  const auto cfg = load_config_or_fail(path, err);
  const auto mode = parse_mode(mode_text);
  const auto param = parse_parameter(vary);
  const auto [lo, hi] = parse_range(range);
  HopfBoundary hb{};
  try {
    hb = find_hopf_boundary(mode, cfg.torus, param, lo, hi);
  } catch (const InvalidModeError& e) {
    throw CliFailure{kExitInvalidMode, e.what()};
  } catch (const NoBoundaryError& e) {
    throw CliFailure{kExitNoBoundary, e.what()};
  } catch (const DegenerateCrossingError& e) {
    throw CliFailure{kExitNoBoundary, e.what()};
  } catch (const InvalidArgumentError& e) {
    throw CliFailure{kExitConfig, e.what()};
  }
  out << "mode: (" << mode.r << "," << mode.s << ")\n";
  out << "critical " << to_string(param) << ": " << format_double(hb.value) << '\n';
  out << "residual: " << format_double(hb.residual) << '\n';
  out << "imaginary part: " << format_double(hb.imag) << '\n';
  if (!store.empty()) {
    const bool fresh = !std::ifstream(store).good();
    std::ofstream os(store, std::ios::app);
    if (!os) throw CliFailure{kExitConfig, "cannot append to results store '" + store + "'"};
    if (fresh) os << "config,r,s,parameter,lo,hi,critical_value,residual,imag\n";
    os << path << ',' << mode.r << ',' << mode.s << ',' << to_string(param) << ',' << format_double(lo) << ','
       << format_double(hi) << ',' << format_double(hb.value) << ',' << format_double(hb.residual) << ','
       << format_double(hb.imag) << '\n';
  }
  return kExitOk;
}

int cmd_simulate(const std::string& path, const std::string& out_path, std::ostream& out, std::ostream& err) {
  const auto cfg = load_config_or_fail(path, err);
  const auto traj = run_simulation(cfg);
  write_trajectory_csv(out_path, traj);
  out << "wrote " << traj.size() << " rows x " << (traj.dim + 1) << " columns to " << out_path << '\n';
  return kExitOk;
}

int cmd_analyze(const std::string& traj_path, const std::string& path, const std::string& format,
                std::ostream& out, std::ostream& err) {
  const auto cfg = load_config_or_fail(path, err);
  Trajectory traj;
  try {
    traj = read_trajectory_csv(traj_path, cfg);
  } catch (const TrajectoryFormatError& e) {
    throw CliFailure{kExitBadTrajectory, e.what()};
  }
  if (!cfg.two_tori()) {
    const auto report = classify_pattern(traj);
    if (format == "json") {
      out << json{{"schema_version", kReportSchemaVersion}, {"report", report_json(report)}}.dump(2) << '\n';
    } else {
      print_report(out, "", report);
    }
    return kExitOk;
  }
  const auto r1 = classify_pattern(traj.torus(0));
  const auto r2 = classify_pattern(traj.torus(1));
  std::optional<double> ratio;
  if (r1.consensus_frequency && r2.consensus_frequency) ratio = *r2.consensus_frequency / *r1.consensus_frequency;
  if (format == "json") {
    out << json{{"schema_version", kReportSchemaVersion},
                {"torus1", report_json(r1)},
                {"torus2", report_json(r2)},
                {"freq_ratio", ratio ? json(*ratio) : json(nullptr)}}
               .dump(2)
        << '\n';
  } else {
    print_report(out, "torus1.", r1);
    print_report(out, "torus2.", r2);
    out << "freq_ratio: " << (ratio ? fmt(*ratio) : std::string("n/a")) << '\n';
  }
  return kExitOk;
}

int cmd_normal_form(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto cfg = load_config_or_fail(path, err);
  try {
    const auto nf = first_lyapunov_sign(cfg.torus.neuron);
    std::ostringstream s16;
    s16 << std::fixed << std::setprecision(12) << nf.s_star_times_16;
    out << "varphi: " << format_double(nf.varphi) << '\n';
    out << "16s* = " << s16.str() << '\n';
    out << to_string(nf.classification) << '\n';
  } catch (const NotAtHopfError& e) {
    throw CliFailure{kExitNotAtHopf, std::string(e.what()) + " (config has a != c)"};
  } catch (const TransformUndefinedError& e) {
    throw CliFailure{kExitNotAtHopf, e.what()};
  }
  return kExitOk;
}

struct SweepRow {
  double value = 0.0;
  double max_re = 0.0;
  std::string kind1;
  std::string kind2;
  std::optional<double> phase;
  std::optional<double> ratio;
  std::string status = "ok";
};

SweepRow sweep_point(RunConfig cfg, const std::string& vary, double value) {
  SweepRow row;
  row.value = value;
  if (vary == "gamma") cfg.torus.gamma = value;
  if (vary == "delta") cfg.torus.delta = value;
  if (vary == "epsilon") cfg.epsilon = value;
  row.max_re = cfg.two_tori() ? origin_stability(cfg.two_tori_config()).max_re : origin_stability(cfg.torus).max_re;
  try {
    const auto ic = cfg.initial_state();
    if (cfg.two_tori()) {
      const auto traj = simulate(cfg.two_tori_config(), ic, cfg.settings);
      const auto r1 = classify_pattern(traj.torus(0));
      const auto r2 = classify_pattern(traj.torus(1));
      row.kind1 = to_string(r1.kind);
      row.kind2 = to_string(r2.kind);
      row.phase = r1.phase_shift;
      if (r1.consensus_frequency && r2.consensus_frequency) {
        row.ratio = *r2.consensus_frequency / *r1.consensus_frequency;
      }
    } else {
      const auto report = classify_pattern(simulate(cfg.torus, ic, cfg.settings));
      row.kind1 = to_string(report.kind);
      row.phase = report.phase_shift;
    }
  } catch (const DivergenceError& e) {
    row.status = e.what();
  } catch (const Error& e) {
    row.status = e.what();
  }
  return row;
}

int cmd_sweep(const std::string& path, const std::string& vary, const std::string& range, int steps,
              const std::string& out_path, int jobs, std::ostream& out, std::ostream& err) {
  auto cfg = load_config_or_fail(path, err);
  if (vary != "gamma" && vary != "delta" && vary != "epsilon") {
    throw CliFailure{kExitConfig, "--vary must be one of gamma, delta, epsilon"};
  }
  const auto [lo, hi] = parse_range(range);
  if (steps < 2) throw CliFailure{kExitConfig, "--steps must be >= 2"};
  if (!(lo < hi)) throw CliFailure{kExitConfig, "--range must satisfy lo < hi"};
  if (vary == "epsilon" && !cfg.two_tori()) {
    cfg.epsilon = 0.0;
    if (cfg.ic) throw CliFailure{kExitConfig, "epsilon sweep needs a two-tori 'ic' (config has a single-torus ic)"};
  }

  std::vector<double> values(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) values[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  std::vector<SweepRow> rows(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) rows[i] = sweep_point(cfg, vary, values[i]);
  };
  const auto threads = static_cast<std::size_t>(std::max(1, jobs));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(threads, values.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw CliFailure{kExitConfig, "cannot write '" + out_path + "'"};
  os << vary << ",max_re,kind_t1,kind_t2,phase_shift,freq_ratio,status\n";
  for (const auto& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    os << format_double(r.value) << ',' << format_double(r.max_re) << ',' << r.kind1 << ',' << r.kind2 << ','
       << (r.phase ? format_double(*r.phase) : "") << ',' << (r.ratio ? format_double(*r.ratio) : "") << ','
       << status << '\n';
  }
  out << "wrote " << rows.size() << " sweep rows to " << out_path << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Torus networks of modified FitzHugh-Nagumo neurons: spectra, Hopf boundaries, simulation, analysis",
               "torusfhn"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "Print tool and schema versions");

  std::string config, mode, format = "table", vary, range, out_path, traj_path, store;
  bool all = false;
  int steps = 0;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto* spectrum = app.add_subcommand("spectrum", "Closed-form spectrum of the linearization at the origin");
  spectrum->add_option("config", config, "Run config (JSON)")->required();
  auto* mode_opt = spectrum->add_option("--mode", mode, "Single mode r,s");
  spectrum->add_flag("--all", all, "All modes (default)")->excludes(mode_opt);
  spectrum->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

  auto* hopf = app.add_subcommand("hopf-boundary", "Locate a Hopf boundary by bisection");
  hopf->add_option("config", config)->required();
  hopf->add_option("--mode", mode, "Mode r,s")->required();
  hopf->add_option("--vary", vary, "gamma | delta | a | c")->required();
  hopf->add_option("--range", range, "Bracket lo:hi")->required();
  hopf->add_option("--store", store, "CSV results store to append to");

  auto* sim = app.add_subcommand("simulate", "Integrate the network and write a CSV trajectory");
  sim->add_option("config", config)->required();
  sim->add_option("--out", out_path, "Trajectory CSV")->required();

  auto* analyze = app.add_subcommand("analyze", "Classify the pattern in a trajectory CSV");
  analyze->add_option("--traj", traj_path)->required();
  analyze->add_option("--config", config)->required();
  analyze->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

  auto* nf = app.add_subcommand("normal-form", "First Lyapunov sign of the single-neuron Hopf bifurcation");
  nf->add_option("config", config)->required();

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep: closed-form max Re lambda and simulated pattern");
  sweep->add_option("config", config)->required();
  sweep->add_option("--vary", vary, "gamma | delta | epsilon")->required();
  sweep->add_option("--range", range, "lo:hi")->required();
  sweep->add_option("--steps", steps)->required();
  sweep->add_option("--out", out_path)->required();
  sweep->add_option("--jobs", jobs, "Worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (version) {
      out << "torusfhn " << kToolVersion << " (config schema " << kConfigSchemaVersion << ", report schema "
          << kReportSchemaVersion << ")\n";
      return kExitOk;
    }
    if (spectrum->parsed()) return cmd_spectrum(config, mode, format, out, err);
    if (hopf->parsed()) return cmd_hopf(config, mode, vary, range, store, out, err);
    if (sim->parsed()) return cmd_simulate(config, out_path, out, err);
    if (analyze->parsed()) return cmd_analyze(traj_path, config, format, out, err);
    if (nf->parsed()) return cmd_normal_form(config, out, err);
    if (sweep->parsed()) return cmd_sweep(config, vary, range, steps, out_path, jobs, out, err);
    out << app.help();
    return kExitOk;
  } catch (const CliFailure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, out, err);
}

}  // namespace torusfhn
