#include "equi/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "equi/evolution.hpp"
#include "equi/invariants.hpp"
#include "equi/io.hpp"
#include "equi/resample.hpp"
#include "equi/validation.hpp"

namespace equi::cli {

namespace {

using nlohmann::json;

void require(bool ok, const std::string& message) {
  if (!ok) fail(errc::config, message);
}

void check_even(int v, const char* name) {
  require(v > 0 && v % 2 == 0, std::string(name) + " must be even and positive");
}

// "droplet:1.7" -> name + params.
std::pair<std::string, std::vector<double>> parse_builtin(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return {text, {}};
  std::vector<double> params;
  std::istringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ','))
    params.push_back(std::stod(item));
  return {text.substr(0, colon), params};
}

Monitor load_monitor(const std::string& name, const std::filesystem::path& file) {
  if (!file.empty()) return io::read_monitor(file);
  require(is_monitor_preset(name), "unknown monitor: " + name);
  return monitor_preset(name);
}

PlanarCurveSamples load_curve(const std::string& builtin, std::span<const double> params,
                              const std::filesystem::path& file, int n1) {
  if (!file.empty()) {
    PlanarCurveSamples curve = io::read_curve(file);
    require(n1 == 0 || n1 == curve.grid.n,
            "n1 does not match the sample count of the input curve file");
    return curve;
  }
  require(!builtin.empty(), "either a curve file or a builtin curve is required");
  require(n1 > 0, "n1 is required for builtin curves");
  return make_example(builtin, params, n1);
}

struct Summary {
  std::vector<std::pair<std::string, std::string>> lines;
  void add(const std::string& key, double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    lines.emplace_back(key, s.str());
  }
  void add(const std::string& key, const std::string& v) { lines.emplace_back(key, v); }
  void print() const {
    for (const auto& [k, v] : lines) std::cout << k << " = " << v << "\n";
  }
};

int cmd_extract(const std::string& input, const std::string& demo, int n1, int nup, int kmax,
                double eps, const std::string& output) {
  std::string builtin;
  std::vector<double> params;
  if (!demo.empty()) std::tie(builtin, params) = parse_builtin(demo);
  const PlanarCurveSamples curve =
      load_curve(builtin, params, std::filesystem::path(input), n1);

  const ArclengthInvariants inv = extract(curve, ExtractParams{nup, kmax, eps, true});
  io::write_invariants(output, inv);

  Summary s;
  s.add("n1", static_cast<double>(curve.grid.n));
  s.add("L", inv.L);
  s.add("k_max", static_cast<double>(inv.k_max));
  s.add("closure_defect", inv.closure_defect);
  s.add("output", output);
  if (inv.resolution_warning)
    std::cerr << "warning: resolution: coefficient tail above 1e-10 of peak\n";
  s.print();
  return 0;
}

int cmd_evolve(const std::string& inv_path, const std::string& monitor, int n2, double dt,
               double eps, const std::string& output) {
  const ArclengthInvariants inv = io::read_invariants(inv_path);
  auto [name, mfile] = is_monitor_preset(monitor)
                           ? std::pair<std::string, std::filesystem::path>{monitor, {}}
                           : std::pair<std::string, std::filesystem::path>{{}, monitor};
  const NormalizedMonitor phi = normalize(load_monitor(name, mfile), n2);

  const EvolveResult result = evolve(phi, EvolveOptions{n2, dt, eps, EvalMode::automatic});
  io::write_spacing(output, result.state);

  Summary s;
  s.add("L", inv.L);
  s.add("l1_norm", phi.l1_norm);
  s.add("steps", static_cast<double>(result.steps));
  s.add("residual", equidistribution_residual(result.state, phi));
  s.add("mean_drift", result.max_mean_drift);
  s.add("min_spacing", result.min_spacing);
  s.add("output", output);
  if (result.drift_warning) std::cerr << "warning: drift: mean spacing drift above 1e-8\n";
  s.print();
  return 0;
}

int cmd_resample(const std::string& inv_path, const std::string& spacing_path, int n3, double eps,
                 const std::string& output) {
  const ArclengthInvariants inv = io::read_invariants(inv_path);
  const SpacingState spacing = io::read_spacing(spacing_path);
  const RefinedCurve refined = refine(inv, spacing, n3, eps);
  io::write_curve(output, as_curve_samples(refined, inv.kind));

  Summary s;
  s.add("n3", static_cast<double>(n3));
  s.add("s_max", refined.s_targets.back());
  s.add("output", output);
  s.print();
  return 0;
}

int cmd_validate(const std::string& ref_path, const std::string& test_path, int dense,
                 const std::string& output) {
  const ArclengthInvariants ref = io::read_invariants(ref_path);
  const ArclengthInvariants test = io::read_invariants(test_path);
  const InvariantsComparison cmp = compare_invariants(ref, test, dense);

  Summary s;
  s.add("l2_rel", cmp.l2_rel);
  s.add("linf_rel", cmp.linf_rel);
  s.add("length_mismatch", cmp.length_mismatch);
  s.add("length_flagged", cmp.length_flagged ? "1" : "0");
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) fail(errc::io, "cannot open for writing: " + output);
    out.precision(17);
    out << "l2_rel " << cmp.l2_rel << "\nlinf_rel " << cmp.linf_rel << "\nlength_mismatch "
        << cmp.length_mismatch << "\nlength_flagged " << (cmp.length_flagged ? 1 : 0) << "\n";
  }
  s.print();
  return 0;
}

int run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  const PlanarCurveSamples curve =
      load_curve(cfg.curve_builtin, cfg.curve_params, cfg.curve_file, cfg.n1);
  const int kmax = cfg.k_max > 0 ? cfg.k_max : curve.grid.n / 2;

  const ArclengthInvariants inv =
      extract(curve, ExtractParams{cfg.n_up, kmax, cfg.eps_rel, true});
  const NormalizedMonitor phi = normalize(load_monitor(cfg.monitor_name, cfg.monitor_file), cfg.n2);
  const EvolveResult evolved = evolve(phi, EvolveOptions{cfg.n2, cfg.dt, cfg.eps_rel});
  RefinedCurve refined = refine(inv, evolved.state, cfg.n3, cfg.eps_rel);
  refined.n1 = curve.grid.n;
  refined.monitor_name = cfg.monitor_name;

  if (!cfg.out_invariants.empty()) io::write_invariants(cfg.out_invariants, inv);
  if (!cfg.out_spacing.empty()) io::write_spacing(cfg.out_spacing, evolved.state);
  if (!cfg.out_curve.empty()) io::write_curve(cfg.out_curve, as_curve_samples(refined, inv.kind));

  Summary s;
  s.add("L", inv.L);
  s.add("closure_defect", inv.closure_defect);
  s.add("l1_norm", phi.l1_norm);
  s.add("residual", equidistribution_residual(evolved.state, phi));
  s.add("mean_drift", evolved.max_mean_drift);
  s.add("min_spacing", evolved.min_spacing);
  s.print();
  return 0;
}

int cmd_study(const std::string& kind_name, StudyParams params, const std::string& output) {
  StudyKind kind;
  if (kind_name == "step1_convergence" || kind_name == "step1")
    kind = StudyKind::step1_convergence;
  else if (kind_name == "rk4_convergence" || kind_name == "rk4")
    kind = StudyKind::rk4_convergence;
  else if (kind_name == "refinement")
    kind = StudyKind::refinement;
  else
    fail(errc::parameter, "unknown study kind: " + kind_name);

  const ErrorTable table = run_study(kind, params);
  if (output.empty())
    std::cout << io::format_error_table(table);
  else
    io::write_error_table(output, table);
  return 0;
}

int cmd_demo(const std::string& name, const std::string& out_dir) {
  const auto [builtin, params] = parse_builtin(name);
  const int n = builtin == "circle" ? 64 : (builtin == "droplet" ? 1024 : 4096);
  const PlanarCurveSamples curve = make_example(builtin, params, n);
  const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;

  const auto curve_path = dir / (builtin + "_curve.txt");
  const auto inv_path = dir / (builtin + ".inv");
  io::write_curve(curve_path, curve);
  const ArclengthInvariants inv = extract(curve, ExtractParams{0, 0, 1e-15, true});
  io::write_invariants(inv_path, inv);

  Summary s;
  s.add("curve", curve_path.string());
  s.add("invariants", inv_path.string());
  s.add("L", inv.L);

  if (builtin == "circle") {
    // Identity check: a constant monitor leaves the parametrization alone, so
    // the pipeline must reproduce the input nodes.
    const NormalizedMonitor phi = normalize(MonitorSpec{1.0, {}}, n);
    const EvolveResult evolved = evolve(phi, EvolveOptions{n, 1e-2, 1e-15});
    const RefinedCurve refined = refine(inv, evolved.state, n, 1e-15);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(refined.x[static_cast<size_t>(j)] - curve.x[static_cast<size_t>(j)]));
      worst = std::max(worst, std::abs(refined.y[static_cast<size_t>(j)] - curve.y[static_cast<size_t>(j)]));
    }
    s.add("identity_error", worst);
    s.add("identity_check", worst < 1e-12 ? "PASS" : "FAIL");
  }
  s.print();
  return 0;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

void PipelineConfig::validate() const {
  check_even(n1, "n1");
  check_even(n2, "n2");
  check_even(n3, "n3");
  if (n_up != 0) {
    check_even(n_up, "n_up");
    require(n_up >= n1, "n_up must be >= n1");
    if (k_max != 0) require(k_max <= n_up / 2, "k_max must be <= n_up/2");
  }
  require(n3 >= n2, "n3 must be >= n2");
  require(dt > 0.0 && dt <= 0.25, "dt must lie in (0, 0.25]");
  require(eps_rel >= 1e-15 && eps_rel <= 1e-2, "eps_rel must lie in [1e-15, 1e-2]");
  require(!curve_builtin.empty() || !curve_file.empty(), "a curve source is required");
  require(!monitor_name.empty() || !monitor_file.empty(), "a monitor source is required");
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open config: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(errc::config, path.string() + ": " + e.what());
  }

  PipelineConfig cfg;
  try {
    if (j.contains("curve")) {
      const auto& c = j["curve"];
      if (c.contains("builtin")) cfg.curve_builtin = c["builtin"].get<std::string>();
      if (c.contains("params")) cfg.curve_params = c["params"].get<std::vector<double>>();
      if (c.contains("file")) cfg.curve_file = c["file"].get<std::string>();
    }
    if (j.contains("monitor")) {
      const auto& m = j["monitor"];
      if (m.is_string())
        cfg.monitor_name = m.get<std::string>();
      else if (m.contains("file"))
        cfg.monitor_file = m["file"].get<std::string>();
    }
    cfg.n1 = j.value("n1", 0);
    cfg.n2 = j.value("n2", 0);
    cfg.n3 = j.value("n3", 0);
    cfg.n_up = j.value("nup", 0);
    cfg.k_max = j.value("kmax", 0);
    cfg.dt = j.value("dt", 1e-4);
    cfg.eps_rel = j.value("eps_rel", 1e-15);
    if (j.contains("out")) {
      const auto& o = j["out"];
      if (o.contains("invariants")) cfg.out_invariants = o["invariants"].get<std::string>();
      if (o.contains("spacing")) cfg.out_spacing = o["spacing"].get<std::string>();
      if (o.contains("curve")) cfg.out_curve = o["curve"].get<std::string>();
    }
  } catch (const json::exception& e) {
    fail(errc::config, path.string() + ": " + e.what());
  }
  return cfg;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"static reparametrization of periodic planar curves"};
  app.require_subcommand(1);

  // extract
  auto* extract_cmd = app.add_subcommand("extract", "compute arclength invariants (step 1)");
  std::string ex_input, ex_demo, ex_out;
  int ex_n1 = 0, ex_nup = 0, ex_kmax = 0;
  double ex_eps = 1e-15;
  extract_cmd->add_option("--input", ex_input, "curve file");
  extract_cmd->add_option("--demo", ex_demo, "builtin curve, e.g. droplet:1.7");
  extract_cmd->add_option("--n1", ex_n1, "sample count for builtin curves");
  extract_cmd->add_option("--nup", ex_nup, "upsampled grid size (default: kind rule)");
  extract_cmd->add_option("--kmax", ex_kmax, "retained band (default: n1/2)");
  extract_cmd->add_option("--eps", ex_eps, "NUFFT relative accuracy");
  extract_cmd->add_option("-o,--output", ex_out, "invariants file")->required();

  // evolve
  auto* evolve_cmd = app.add_subcommand("evolve", "solve for the equidistributing spacing (step 2)");
  std::string ev_inv, ev_monitor = "phi1", ev_out;
  int ev_n2 = 2048;
  double ev_dt = 1e-4, ev_eps = 1e-15;
  evolve_cmd->add_option("--inv", ev_inv, "invariants file")->required();
  evolve_cmd->add_option("--monitor", ev_monitor, "phi0|phi1|phi2 or monitor file");
  evolve_cmd->add_option("--n2", ev_n2, "evolution grid size");
  evolve_cmd->add_option("--dt", ev_dt, "RK4 step");
  evolve_cmd->add_option("--eps", ev_eps, "NUFFT relative accuracy");
  evolve_cmd->add_option("-o,--output", ev_out, "spacing file")->required();

  // resample
  auto* resample_cmd = app.add_subcommand("resample", "invert the invariants at the new nodes (step 3)");
  std::string rs_inv, rs_spacing, rs_out;
  int rs_n3 = 0;
  double rs_eps = 1e-15;
  resample_cmd->add_option("--inv", rs_inv, "invariants file")->required();
  resample_cmd->add_option("--spacing", rs_spacing, "spacing file")->required();
  resample_cmd->add_option("--n3", rs_n3, "output size")->required();
  resample_cmd->add_option("--eps", rs_eps, "NUFFT relative accuracy");
  resample_cmd->add_option("-o,--output", rs_out, "output curve file")->required();

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "compare two invariants files");
  std::string va_ref, va_test, va_out;
  int va_dense = 4096;
  validate_cmd->add_option("--ref", va_ref, "reference invariants")->required();
  validate_cmd->add_option("--test", va_test, "test invariants")->required();
  validate_cmd->add_option("--dense", va_dense, "dense inversion grid");
  validate_cmd->add_option("-o,--output", va_out, "report file");

  // pipeline
  auto* pipeline_cmd = app.add_subcommand("pipeline", "run steps 1-3 from a config file");
  std::string pl_config;
  PipelineConfig overrides;
  bool has_n1 = false, has_n2 = false, has_n3 = false, has_nup = false, has_kmax = false,
       has_dt = false, has_eps = false, has_monitor = false;
  std::string pl_monitor;
  pipeline_cmd->add_option("--config", pl_config, "config file")->required();
  pipeline_cmd->add_option("--n1", overrides.n1)->each([&](const std::string&) { has_n1 = true; });
  pipeline_cmd->add_option("--n2", overrides.n2)->each([&](const std::string&) { has_n2 = true; });
  pipeline_cmd->add_option("--n3", overrides.n3)->each([&](const std::string&) { has_n3 = true; });
  pipeline_cmd->add_option("--nup", overrides.n_up)->each([&](const std::string&) { has_nup = true; });
  pipeline_cmd->add_option("--kmax", overrides.k_max)->each([&](const std::string&) { has_kmax = true; });
  pipeline_cmd->add_option("--dt", overrides.dt)->each([&](const std::string&) { has_dt = true; });
  pipeline_cmd->add_option("--eps", overrides.eps_rel)->each([&](const std::string&) { has_eps = true; });
  pipeline_cmd->add_option("--monitor", pl_monitor)->each([&](const std::string&) { has_monitor = true; });
  std::string pl_out_inv, pl_out_spacing, pl_out_curve;
  pipeline_cmd->add_option("--out-inv", pl_out_inv);
  pipeline_cmd->add_option("--out-spacing", pl_out_spacing);
  pipeline_cmd->add_option("--out-curve", pl_out_curve);

  // study
  auto* study_cmd = app.add_subcommand("study", "convergence and refinement studies");
  std::string st_kind, st_out, st_n1_list, st_n3_list, st_dt_list;
  StudyParams st_params;
  study_cmd->add_option("kind", st_kind, "step1_convergence|rk4_convergence|refinement")->required();
  study_cmd->add_option("--example", st_params.example, "circle|droplet|peakons");
  study_cmd->add_option("--eps-p", st_params.eps_p, "droplet deformation");
  study_cmd->add_option("--eps-r", st_params.eps_r, "peakon rounding");
  study_cmd->add_option("--n1", st_n1_list, "comma-separated N1 sweep");
  study_cmd->add_option("--n3", st_n3_list, "comma-separated N3 sweep");
  study_cmd->add_option("--dt", st_dt_list, "comma-separated dt sweep");
  study_cmd->add_option("--n2", st_params.n2, "evolution grid size");
  study_cmd->add_option("--evolve-dt", st_params.dt, "RK4 step for the refinement study");
  study_cmd->add_option("--monitor", st_params.monitor, "monitor preset");
  study_cmd->add_option("--n1-ref", st_params.n1_ref, "reference sample size");
  study_cmd->add_option("--nup-ref", st_params.nup_ref, "reference upsampling");
  study_cmd->add_option("--kmax-ref", st_params.kmax_ref, "reference band");
  study_cmd->add_option("--nup-restudy", st_params.nup_restudy, "re-extraction upsampling");
  study_cmd->add_option("--dense", st_params.dense_n, "dense comparison grid");
  study_cmd->add_option("--rk4-n2", st_params.rk4_n2, "grid size for the rk4 study");
  study_cmd->add_option("--eps", st_params.eps, "NUFFT relative accuracy");
  study_cmd->add_option("-o,--output", st_out, "table file (default: stdout)");

  // demo
  auto* demo_cmd = app.add_subcommand("demo", "write a builtin example curve and its invariants");
  std::string dm_name, dm_dir;
  demo_cmd->add_option("name", dm_name, "circle|droplet[:eps]|peakons[:eps]")->required();
  demo_cmd->add_option("--out-dir", dm_dir, "output directory (default: .)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help();
      return 0;
    }
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    if (extract_cmd->parsed())
      return cmd_extract(ex_input, ex_demo, ex_n1, ex_nup, ex_kmax, ex_eps, ex_out);
    if (evolve_cmd->parsed()) return cmd_evolve(ev_inv, ev_monitor, ev_n2, ev_dt, ev_eps, ev_out);
    if (resample_cmd->parsed()) return cmd_resample(rs_inv, rs_spacing, rs_n3, rs_eps, rs_out);
    if (validate_cmd->parsed()) return cmd_validate(va_ref, va_test, va_dense, va_out);
    if (pipeline_cmd->parsed()) {
      PipelineConfig cfg = load_config(pl_config);
      if (has_n1) cfg.n1 = overrides.n1;
      if (has_n2) cfg.n2 = overrides.n2;
      if (has_n3) cfg.n3 = overrides.n3;
      if (has_nup) cfg.n_up = overrides.n_up;
      if (has_kmax) cfg.k_max = overrides.k_max;
      if (has_dt) cfg.dt = overrides.dt;
      if (has_eps) cfg.eps_rel = overrides.eps_rel;
      if (has_monitor) {
        cfg.monitor_name = is_monitor_preset(pl_monitor) ? pl_monitor : "";
        cfg.monitor_file = is_monitor_preset(pl_monitor) ? "" : pl_monitor;
      }
      if (!pl_out_inv.empty()) cfg.out_invariants = pl_out_inv;
      if (!pl_out_spacing.empty()) cfg.out_spacing = pl_out_spacing;
      if (!pl_out_curve.empty()) cfg.out_curve = pl_out_curve;
      return run_pipeline(cfg);
    }
    if (study_cmd->parsed()) {
      if (!st_n1_list.empty()) st_params.n_sweep = parse_int_list(st_n1_list);
      if (!st_n3_list.empty()) st_params.n_sweep = parse_int_list(st_n3_list);
      if (!st_dt_list.empty()) st_params.dt_sweep = parse_double_list(st_dt_list);
      return cmd_study(st_kind, std::move(st_params), st_out);
    }
    if (demo_cmd->parsed()) return cmd_demo(dm_name, dm_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == errc::config ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 3;
  }
  std::cerr << "error: usage: no subcommand\n";
  return 2;
}

int dispatch(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args);
}

}  // namespace equi::cli
