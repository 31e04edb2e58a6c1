#include "vascflow/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "vascflow/analysis.hpp"
#include "vascflow/errors.hpp"
#include "vascflow/metrics.hpp"
#include "vascflow/netio.hpp"
#include "vascflow/solver0d.hpp"
#include "vascflow/solver1d.hpp"

namespace vascflow {

namespace fs = std::filesystem;

namespace {

using KeyValues = std::map<std::string, std::string>;

KeyValues read_key_values(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  KeyValues kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

fs::path resolve_out(const std::string& out, const std::string& fallback) {
  fs::path p = out.empty() ? fs::path(fallback) : fs::path(out);
  return p.is_absolute() ? p : output_root() / p;
}

void apply_waveform(Network& net, const RunConfig& c) {
  if (c.waveform.empty()) {
    if (c.T0) {
      if (net.inflow.synthetic) {
        auto s = *net.inflow.synthetic;
        s.period = *c.T0;
        net.inflow.waveform = synthetic_inflow(s);
        net.inflow.synthetic = s;
      } else {
        const auto& w = net.inflow.waveform;
        net.inflow.waveform = WaveformSeries({w.times().begin(), w.times().end()}, {w.values().begin(), w.values().end()}, *c.T0);
      }
    }
    return;
  }
  if (c.waveform == "synthetic") {
    SyntheticInflow s;
    if (c.T0) s.period = *c.T0;
    net.inflow.waveform = synthetic_inflow(s);
    net.inflow.synthetic = s;
    net.inflow.source = "synthetic";
  } else {
    net.inflow.waveform = load_waveform(c.waveform, c.T0);
    net.inflow.synthetic.reset();
    net.inflow.source = c.waveform;
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

}  // namespace

fs::path output_root() {
  if (const char* env = std::getenv("VASCFLOW_OUTPUT_ROOT"); env && *env) return fs::path(env);
  return {};
}

fs::path cmd_run(const RunConfig& c, std::ostream& log) {
  if (c.solver != "1d" && c.solver != "0d") throw ConfigError("solver must be 1d or 0d, got '" + c.solver + "'");
  Network net = load_network(c.network);
  apply_waveform(net, c);

  SimulationResult result;
  ModelMode mode;
  if (c.solver == "1d") {
    Run1DOptions o;
    o.dx_max = c.dx_max;
    o.cfl = c.cfl;
    o.t_end = c.t_end;
    result = run_1d(net, o);
  } else {
    mode = ModelMode::from_name(c.mode);
    Run0DOptions o;
    o.dt = c.dt;
    o.t_end = c.t_end;
    // Steps coarser than the output grid are recorded every step.
    if (c.dt > o.sample_interval) o.sample_interval = c.dt;
    result = run_0d(net, mode, o);
  }

  const fs::path dir = resolve_out(c.out, c.solver == "1d" ? "run_1d" : "run_0d_" + c.mode);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  std::string ids;
  for (const auto& s : result.series) {
    write_series(dir / (s.id + ".csv"), s);
    ids += (ids.empty() ? "" : ",") + s.id;
  }
  std::ofstream out(dir / "run.txt");
  if (!out) throw IoError("cannot write '" + (dir / "run.txt").string() + "'");
  out << "solver=" << c.solver << "\n";
  if (c.solver == "0d") out << "mode=" << mode.name() << "\ndt=" << fmt(c.dt) << "\n";
  if (c.solver == "1d") out << "dx_max=" << fmt(c.dx_max) << "\ncfl=" << fmt(c.cfl) << "\n";
  out << "network=" << c.network << "\n"
      << "inflow=" << net.inflow.source << "\n"
      << "period=" << fmt(result.period) << "\n"
      << "t_end=" << fmt(result.t_end) << "\n"
      << "vessels=" << ids << "\n"
      << "steps=" << result.timing.steps << "\n"
      << "loop_seconds=" << fmt(result.timing.loop_seconds) << "\n"
      << "seconds_per_cycle=" << fmt(result.timing.seconds_per_cycle) << "\n"
      << "periodic_cycle=" << (result.periodic_cycle ? std::to_string(*result.periodic_cycle) : "none") << "\n";
  if (!out) throw IoError("write failed for run.txt");

  log << c.solver << (c.solver == "0d" ? " (" + mode.name() + ")" : "") << ": " << result.timing.steps
      << " steps, " << fmt(result.timing.seconds_per_cycle) << " s/cycle, periodic from cycle "
      << (result.periodic_cycle ? std::to_string(*result.periodic_cycle) : "never") << " -> " << dir.string() << "\n";
  return dir;
}

fs::path cmd_compare(const fs::path& ref_dir, const fs::path& test_dir, const std::string& model_label,
                     const fs::path& out_csv, std::ostream& log) {
  const auto ref_kv = read_key_values(ref_dir / "run.txt");
  const auto test_kv = read_key_values(test_dir / "run.txt");
  const auto ref_ids = split_ids(ref_kv.at("vessels"));
  const auto test_ids = split_ids(test_kv.count("vessels") ? test_kv.at("vessels") : "");
  std::string missing;
  for (const auto& id : ref_ids) {
    if (std::find(test_ids.begin(), test_ids.end(), id) == test_ids.end()) missing += " -" + id;
  }
  for (const auto& id : test_ids) {
    if (std::find(ref_ids.begin(), ref_ids.end(), id) == ref_ids.end()) missing += " +" + id;
  }
  if (!missing.empty()) throw ConfigError("vessel ids differ between runs:" + missing);

  for (const auto* kv : {&ref_kv, &test_kv}) {
    if (kv->count("periodic_cycle") && kv->at("periodic_cycle") == "none") {
      log << "warning: run " << (kv == &ref_kv ? ref_dir : test_dir).string() << " never reached periodicity\n";
    }
  }
  const double period = std::stod(ref_kv.at("period"));
  std::vector<ErrorRow> rows;
  for (const auto& id : ref_ids) {
    const auto ref = last_cycle(read_series(ref_dir / (id + ".csv"), id), period);
    const auto test = last_cycle(read_series(test_dir / (id + ".csv"), id), period);
    rows.push_back({id, model_label, error_metrics(test, ref)});
  }
  const fs::path out = out_csv.empty() ? test_dir / "errors.csv" : out_csv;
  write_error_table(out, rows);
  for (const auto& r : rows) {
    log << r.vessel << " " << r.model << ": eP_RMS=" << fmt(100 * r.report.P_rms) << "% eQ_RMS="
        << fmt(100 * r.report.Q_rms) << "% eP_SYS=" << fmt(100 * r.report.P_sys) << "%\n";
  }
  return out;
}

void cmd_analyze(const std::string& network, const std::optional<fs::path>& run_dir, std::ostream& out) {
  const Network net = load_network(network);
  std::optional<KeyValues> run_kv;
  if (run_dir) run_kv = read_key_values(*run_dir / "run.txt");
  const double period = net.inflow.waveform.period();

  for (const auto& v : net.vessels) {
    const auto d = discriminant_factors(v);
    const auto k = lumped_constants(v);
    out << "[" << v.id << "]\n"
        << "R0=" << fmt(k.R0) << "\nL0=" << fmt(k.L0) << "\nC0=" << fmt(k.C0) << "\n"
        << "f1=" << fmt(d.f1) << "\nf2=" << fmt(d.f2) << "\n"
        << "discriminant=" << fmt(d.discriminant) << "\n"
        << "discriminant_sign=" << (d.discriminant < 0 ? "negative" : d.discriminant > 0 ? "positive" : "zero")
        << "\n";
    for (auto kind : {VesselKind::pin_qout, VesselKind::qin_pout, VesselKind::pin_pout, VesselKind::qin_qout}) {
      const auto r = stability_report(kind, k);
      out << "eigenvalues_" << kind_name(kind) << "=";
      for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        out << (i ? ";" : "") << fmt(r.eigenvalues[i].real()) << (r.eigenvalues[i].imag() < 0 ? "" : "+")
            << fmt(r.eigenvalues[i].imag()) << "i";
      }
      out << "\nstability_" << kind_name(kind) << "=" << stability_name(r.classification) << "\n";
    }
    if (run_dir) {
      const auto series = read_series(*run_dir / (v.id + ".csv"), v.id);
      const auto vel = velocity_stats(last_cycle(series, period));
      const double c = wave_speed(v.wall.A0, v.wall, v.fluid);
      const double kR = viscous_resistance_coeff(v.fluid);
      for (const auto& [name, U0] : {std::pair{"mean", vel.mean}, std::pair{"max", vel.max}}) {
        const auto g = dimensional_coefficients({period, v.length, v.wall.A0, U0}, c, kR);
        out << "U_" << name << "=" << fmt(U0) << "\n"
            << "gammaC_over_gammaP_" << name << "=" << fmt(g.convective_to_pressure) << "\n"
            << "gammaF_over_gammaP_" << name << "=" << fmt(g.friction_to_pressure) << "\n";
      }
    }
    out << "\n";
  }
  if (!run_dir) out << "# dimensional coefficients omitted: pass --run with a 1D run directory\n";
}

namespace {

int exit_code_for(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (dynamic_cast<const NumericalError*>(&e) || dynamic_cast<const CollapseError*>(&e) ||
      dynamic_cast<const ConvergenceError*>(&e)) {
    return 2;
  }
  return 1;
}

void add_run_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--network", c.network, "Network file or bundled name")->capture_default_str();
  cmd->add_option("--waveform", c.waveform, "Inflow CSV (t,Q) or 'synthetic'");
  cmd->add_option("--dx-max", c.dx_max, "1D maximum cell size (cm)")->capture_default_str();
  cmd->add_option("--cfl", c.cfl, "1D CFL number")->capture_default_str();
  cmd->add_option("--dt", c.dt, "0D RK4 time step (s)")->capture_default_str();
  cmd->add_option("--T0", c.T0, "Cardiac period (s)");
  cmd->add_option("--t-end", c.t_end, "Final time (s)")->capture_default_str();
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"vascflow: 1D and lumped-parameter blood flow in arterial networks"};
  app.require_subcommand(1);

  RunConfig run_cfg;
  auto* run = app.add_subcommand("run", "Run the 1D or 0D solver");
  add_run_options(run, run_cfg);
  run->add_option("--solver", run_cfg.solver, "1d or 0d")->capture_default_str();
  run->add_option("--mode", run_cfg.mode, "0D mode: linear, nonlinear, nonlinear-R, nonlinear-L, nonlinear-P, collapsed")
      ->capture_default_str();
  run->add_option("--out", run_cfg.out, "Output directory");

  std::string ref_dir;
  std::string test_dir;
  std::string compare_out;
  std::string label = "0D";
  auto* compare = app.add_subcommand("compare", "Error metrics of a test run against a reference run");
  compare->add_option("ref", ref_dir, "Reference run directory")->required();
  compare->add_option("test", test_dir, "Test run directory")->required();
  compare->add_option("--label", label, "Model label in the table")->capture_default_str();
  compare->add_option("--out", compare_out, "Error table path (default <test>/errors.csv)");

  std::string analyze_network = "aortic_bif";
  std::string analyze_run;
  auto* analyze = app.add_subcommand("analyze", "Stability and dimensional analysis report");
  analyze->add_option("--network", analyze_network, "Network file or bundled name")->capture_default_str();
  analyze->add_option("--run", analyze_run, "1D run directory for velocity statistics");

  RunConfig pipe_cfg;
  pipe_cfg.out = "pipeline";
  auto* pipeline = app.add_subcommand("pipeline", "1D, linear 0D and nonlinear 0D runs with comparison");
  add_run_options(pipeline, pipe_cfg);
  pipeline->add_option("--out", pipe_cfg.out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      cmd_run(run_cfg, std::cout);
    } else if (*compare) {
      cmd_compare(ref_dir, test_dir, label, compare_out.empty() ? fs::path{} : resolve_out(compare_out, ""), std::cout);
    } else if (*analyze) {
      std::optional<fs::path> rd;
      if (!analyze_run.empty()) rd = analyze_run;
      cmd_analyze(analyze_network, rd, std::cout);
    } else if (*pipeline) {
      const fs::path base = fs::absolute(resolve_out(pipe_cfg.out, "pipeline"));
      RunConfig c = pipe_cfg;
      c.solver = "1d";
      c.out = (base / "1d").string();
      const auto d1 = cmd_run(c, std::cout);
      c.solver = "0d";
      c.mode = "linear";
      c.out = (base / "0d_linear").string();
      const auto dl = cmd_run(c, std::cout);
      c.mode = "nonlinear";
      c.out = (base / "0d_nonlinear").string();
      const auto dn = cmd_run(c, std::cout);

      for (const auto& [dir, name] : {std::pair{dn, "0D-NL"}, std::pair{dl, "0D-L"}}) {
        cmd_compare(d1, dir, name, dir / "errors.csv", std::cout);
      }
      const double t1 = std::stod(read_key_values(d1 / "run.txt").at("seconds_per_cycle"));
      const double tl = std::stod(read_key_values(dl / "run.txt").at("seconds_per_cycle"));
      const double tn = std::stod(read_key_values(dn / "run.txt").at("seconds_per_cycle"));
      std::ofstream sp(base / "speedup.txt");
      sp << "cpu_per_cycle_1d=" << fmt(t1) << "\ncpu_per_cycle_0d_linear=" << fmt(tl)
         << "\ncpu_per_cycle_0d_nonlinear=" << fmt(tn) << "\nspeedup_linear=" << fmt(speedup(t1, tl))
         << "\nspeedup_nonlinear=" << fmt(speedup(t1, tn)) << "\n";
      if (!sp) throw IoError("cannot write speedup.txt");
      std::cout << "speedup (1D / nonlinear 0D) = " << fmt(speedup(t1, tn)) << "\n";
    }
  } catch (const std::exception& e) {
    return exit_code_for(e, std::cerr);
  }
  return 0;
}

}  // namespace vascflow
