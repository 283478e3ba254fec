#include "goldsplit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "goldsplit/io.hpp"
#include "goldsplit/problems.hpp"
#include "goldsplit/solvers.hpp"
#include "goldsplit/verify.hpp"
#include "json.hpp"

namespace goldsplit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct GenFlags {
  std::optional<std::string> family, scheme, image, libsvm;
  std::optional<std::uint64_t> seed;
  std::optional<Index> m, n, s, n1, n2, rows, cols;
  std::optional<double> q, lambda, lambda1, lambda2, alpha, sparsity, noise_sd, missing, density, ridge_eps;
};

void add_gen_flags(CLI::App* app, GenFlags& g) {
  app->add_option("--family", g.family, "lasso, fused_lasso, logistic1, logistic2, graphnet, inpainting, strongly_convex");
  app->add_option("--seed", g.seed, "generator seed");
  app->add_option("--m", g.m, "rows of the design / measurements");
  app->add_option("--n", g.n, "signal length");
  app->add_option("--s", g.s, "lasso sparsity");
  app->add_option("--scheme", g.scheme, "lasso design: correlated or gaussian");
  app->add_option("--q", g.q, "column correlation of the correlated scheme");
  app->add_option("--lambda", g.lambda, "regularization weight");
  app->add_option("--lambda1", g.lambda1, "first regularization weight");
  app->add_option("--lambda2", g.lambda2, "second regularization weight");
  app->add_option("--n1", g.n1, "graphnet grid rows");
  app->add_option("--n2", g.n2, "graphnet grid columns");
  app->add_option("--alpha", g.alpha, "graphnet smoothing strength");
  app->add_option("--sparsity", g.sparsity, "graphnet fraction of entries kept");
  app->add_option("--noise-sd", g.noise_sd, "noise standard deviation");
  app->add_option("--missing", g.missing, "inpainting fraction of removed pixels");
  app->add_option("--image", g.image, "inpainting source image (PGM P5)");
  app->add_option("--rows", g.rows, "synthetic image rows");
  app->add_option("--cols", g.cols, "synthetic image columns");
  app->add_option("--libsvm", g.libsvm, "logistic data in LIBSVM format");
  app->add_option("--density", g.density, "synthetic logistic design density");
  app->add_option("--ridge-eps", g.ridge_eps, "strongly convex ridge weight");
}

GenSpec spec_from_flags(const GenFlags& g) {
  if (!g.family) throw UsageError("--family is required");
  GenSpec s = default_spec(parse_family(*g.family));
  if (g.seed) s.seed = *g.seed;
  if (g.m) s.m = *g.m;
  if (g.n) s.n = *g.n;
  if (g.s) s.s = *g.s;
  if (g.scheme) s.scheme = parse_lasso_scheme(*g.scheme);
  if (g.q) s.q = *g.q;
  if (g.lambda) {
    s.lambda = *g.lambda;
    if (s.family == Family::logistic1) s.logistic_lambda = *g.lambda;
  }
  if (g.lambda1) s.lambda1 = *g.lambda1;
  if (g.lambda2) s.lambda2 = *g.lambda2;
  if (g.n1) s.n1 = *g.n1;
  if (g.n2) s.n2 = *g.n2;
  if (g.alpha) s.alpha = *g.alpha;
  if (g.sparsity) s.sparsity_fraction = *g.sparsity;
  if (g.noise_sd) s.noise_sd = *g.noise_sd;
  if (g.missing) s.missing_fraction = *g.missing;
  if (g.image) s.image_path = *g.image;
  if (g.rows) s.image_rows = *g.rows;
  if (g.cols) s.image_cols = *g.cols;
  if (g.libsvm) s.libsvm_path = *g.libsvm;
  if (g.density) s.density = *g.density;
  if (g.ridge_eps) s.ridge_eps = *g.ridge_eps;
  s.validate();
  return s;
}

struct SolverFlags {
  std::string solvers;
  std::optional<double> tau0, beta, psi, mu, mu_prime, rho, theta0, tau_max, k_norm, stop_tol;
  std::optional<std::string> tau, sigma, region;
  std::optional<long> iters, stride;
  std::optional<std::uint64_t> seed;
  bool agraal_direct = false;
};

void add_solver_flags(CLI::App* app, SolverFlags& f) {
  app->add_option("--solvers", f.solvers, "comma-separated list of pgrpda, aegrpda, egrpda, condat_vu, pdhg, grpda, agraal");
  app->add_option("--tau0", f.tau0, "initial primal step of the adaptive methods");
  app->add_option("--beta", f.beta, "dual/primal step ratio");
  app->add_option("--psi", f.psi, "golden-ratio parameter");
  app->add_option("--mu", f.mu, "P-GRPDA mu");
  app->add_option("--mu-prime", f.mu_prime, "P-GRPDA mu'");
  app->add_option("--region", f.region, "P-GRPDA parameter region: base or extended");
  app->add_option("--rho", f.rho, "aEGRPDA/aGRAAL growth factor");
  app->add_option("--theta0", f.theta0, "initial theta");
  app->add_option("--tau-max", f.tau_max, "stepsize cap");
  app->add_option("--tau", f.tau, "fixed primal step; '<c>/K' divides by |K|");
  app->add_option("--sigma", f.sigma, "fixed dual step; '<c>/K' divides by |K|");
  app->add_option("--k-norm", f.k_norm, "|K| to use instead of the power-iteration estimate");
  app->add_option("--iters", f.iters, "iteration budget");
  app->add_option("--stride", f.stride, "record a trace row every this many iterations");
  app->add_option("--stop-tol", f.stop_tol, "early exit when the step residual drops below this");
  app->add_flag("--agraal-direct", f.agraal_direct, "run aGRAAL on min h + g directly (K = I, f = 0)");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string flag_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  throw UsageError("config value " + v.dump() + " is not a scalar");
}

// Top-level config keys become flags placed before the command-line ones, so
// the command line wins under the take-last policy. Per-solver objects are
// returned separately.
std::vector<std::string> config_args(const json& cfg, json& per_solver) {
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
  std::vector<std::string> args;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + flag_key(key);
    if (key == "solvers" && value.is_array() && !value.empty() && value.front().is_object()) {
      per_solver = value;
      continue;
    }
    if (key == "problem" && value.is_object()) {
      for (const auto& [k, v] : value.items()) {
        if (k == "sparsity_fraction") {
          args.insert(args.end(), {"--sparsity", scalar_text(v)});
        } else if (k == "missing_fraction") {
          args.insert(args.end(), {"--missing", scalar_text(v)});
        } else if (k == "image_path") {
          args.insert(args.end(), {"--image", scalar_text(v)});
        } else if (k == "libsvm_path") {
          args.insert(args.end(), {"--libsvm", scalar_text(v)});
        } else {
          args.insert(args.end(), {"--" + flag_key(k), scalar_text(v)});
        }
      }
      continue;
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) joined += (joined.empty() ? "" : ",") + scalar_text(item);
      args.insert(args.end(), {flag, joined});
    } else if (!value.is_null()) {
      args.insert(args.end(), {flag, scalar_text(value)});
    }
  }
  return args;
}

std::set<std::string> given_flags(const std::vector<std::string>& args) {
  std::set<std::string> out;
  for (const auto& a : args) {
    if (a.rfind("--", 0) == 0) out.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  }
  return out;
}

void apply_value(SolverConfig& c, const std::string& key, const std::string& text, double k_norm) {
  auto number = [&] { return parse_scaled_value(text, k_norm); };
  if (key == "algorithm") c.algorithm = parse_algorithm(text);
  else if (key == "tau0") c.tau0 = number();
  else if (key == "beta") c.beta = number();
  else if (key == "psi") c.psi = number();
  else if (key == "mu") c.mu = number();
  else if (key == "mu-prime") c.mu_prime = number();
  else if (key == "region") {
    if (text == "base") c.region = Region::base;
    else if (text == "extended") c.region = Region::extended;
    else throw UsageError("--region must be base or extended");
  } else if (key == "rho") c.rho = number();
  else if (key == "theta0") c.theta0 = number();
  else if (key == "tau-max") c.tau_max = number();
  else if (key == "tau") c.tau = number();
  else if (key == "sigma") c.sigma = number();
  else if (key == "k-norm") c.k_norm = number();
  else if (key == "iters") c.max_iters = static_cast<long>(number());
  else if (key == "stride") c.trace_stride = static_cast<long>(number());
  else if (key == "stop-tol") c.stop_tol = number();
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(number());
  else if (key == "agraal-direct") c.agraal_direct = text == "true";
  else throw UsageError("unknown solver setting '" + key + "'");
}

SolverConfig shared_config(const SolverFlags& f, double k_norm) {
  SolverConfig c;
  if (f.tau0) c.tau0 = *f.tau0;
  if (f.beta) c.beta = *f.beta;
  if (f.psi) c.psi = *f.psi;
  if (f.mu) c.mu = *f.mu;
  if (f.mu_prime) c.mu_prime = *f.mu_prime;
  if (f.region) apply_value(c, "region", *f.region, k_norm);
  if (f.rho) c.rho = *f.rho;
  if (f.theta0) c.theta0 = *f.theta0;
  if (f.tau_max) c.tau_max = *f.tau_max;
  if (f.k_norm) c.k_norm = *f.k_norm;
  if (f.tau) c.tau = parse_scaled_value(*f.tau, k_norm);
  if (f.sigma) c.sigma = parse_scaled_value(*f.sigma, k_norm);
  if (f.iters) c.max_iters = *f.iters;
  if (f.stride) c.trace_stride = *f.stride;
  if (f.stop_tol) c.stop_tol = *f.stop_tol;
  if (f.seed) c.seed = *f.seed;
  c.agraal_direct = f.agraal_direct;
  return c;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json config_json(const SolverConfig& c) {
  return {{"algorithm", to_string(c.algorithm)},
          {"tau0", c.tau0},
          {"beta", c.beta},
          {"psi", c.psi},
          {"mu", c.mu},
          {"mu_prime", c.mu_prime},
          {"region", c.region == Region::base ? "base" : "extended"},
          {"rho", c.rho_value()},
          {"theta0", c.theta0},
          {"tau_max", c.tau_max},
          {"tau", c.tau},
          {"sigma", c.sigma},
          {"k_norm", optional_json(c.k_norm)},
          {"iters", c.max_iters},
          {"stride", c.trace_stride},
          {"stop_tol", c.stop_tol},
          {"agraal_direct", c.agraal_direct}};
}

json fit_json(const IterationTrace& trace, const char* column, bool loglog) {
  try {
    const FitResult fit = loglog ? loglog_slope(trace, column) : linear_rate_fit(trace, column, 0.0);
    return {{"column", column},
            {loglog ? "slope" : "log_rate", fit.slope},
            {"intercept", fit.intercept},
            {"r_squared", fit.r_squared},
            {"used", fit.used},
            {"dropped", fit.dropped}};
  } catch (const InsufficientDataError&) {
    return nullptr;
  }
}

json summary_json(const ProblemInstance& p, const SolverConfig& c, const RunResult& r) {
  const RunSummary& s = r.summary;
  json j;
  j["instance"] = p.name;
  j["family"] = p.family;
  j["algorithm"] = to_string(s.algorithm);
  j["config"] = config_json(c);
  j["iterations"] = s.iterations;
  j["stopped_early"] = s.stopped_early;
  j["final_objective"] = s.final_objective;
  j["min_objective"] = finite_or_null(s.min_objective);
  if (p.F_star) {
    j["F_star"] = {{"value", p.F_star->value}, {"provenance", p.F_star->provenance}};
  } else {
    j["F_star"] = nullptr;
  }
  j["final_gap"] = optional_json(s.final_gap);
  j["tau"] = s.tau;
  j["sigma"] = s.sigma;
  j["theta"] = optional_json(s.theta);
  j["dx"] = s.dx;
  j["xz"] = optional_json(s.xz);
  j["cviol"] = s.cviol;
  j["rel_err"] = optional_json(s.rel_err);
  j["psnr"] = s.psnr && std::isfinite(*s.psnr) ? json(*s.psnr) : json(nullptr);
  j["elapsed_seconds"] = s.elapsed;
  j["k_norm"] = s.k_norm;
  j["warnings"] = s.warnings;
  j["fits"] = {{"cviol_loglog", fit_json(r.trace, "cviol", true)},
               {"F_gap_linear", p.F_star ? fit_json(r.trace, "F_gap", false) : json(nullptr)}};
  return j;
}

void ensure_fresh_dir(const fs::path& dir, bool overwrite) {
  if (fs::exists(dir) && !fs::is_directory(dir)) throw UsageError(dir.string() + " exists and is not a directory");
  if (fs::exists(dir) && !fs::is_empty(dir) && !overwrite) {
    throw UsageError("output directory " + dir.string() + " is not empty; pass --overwrite to replace its contents");
  }
  fs::create_directories(dir);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

Matrix as_image(const Vector& x, Index rows, Index cols) {
  Matrix img(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) img(i, j) = x(i * cols + j);
  return img;
}

int cmd_generate(const GenFlags& gen, const fs::path& out_dir, long reference_iters, bool overwrite,
                 std::ostream& out) {
  const GenSpec spec = spec_from_flags(gen);
  InstanceData data = generate_data(spec);
  if (reference_iters > 0) {
    const ProblemInstance p = assemble(data);
    data.F_star = compute_reference_optimum(p, default_reference_config(p, reference_iters)).F_star;
  }
  ensure_fresh_dir(out_dir, overwrite);
  out << write_instance(out_dir, data).string() << '\n';
  return kExitOk;
}

int cmd_run(const GenFlags& gen, const std::string& instance_path, const SolverFlags& flags,
            const json& per_solver, const std::set<std::string>& cli_given, const fs::path& out_dir,
            long reference_iters, bool overwrite, bool no_time, std::ostream& out, std::ostream& err) {
  ProblemInstance p;
  if (!instance_path.empty()) {
    p = assemble(read_instance(instance_path));
  } else if (gen.family) {
    p = generate(spec_from_flags(gen));
  } else {
    throw UsageError("run needs --instance or --family");
  }
  const double k_norm = flags.k_norm.value_or(p.k_norm);
  std::vector<SolverConfig> configs;
  const SolverConfig base = shared_config(flags, k_norm);
  for (const auto& name : split_list(flags.solvers)) {
    SolverConfig c = base;
    c.algorithm = parse_algorithm(name);
    configs.push_back(c);
  }
  if (per_solver.is_array()) {
    if (!flags.solvers.empty() && cli_given.count("solvers")) {
      // An explicit --solvers list replaces the configured one.
    } else {
      configs.clear();
      for (const auto& obj : per_solver) {
        SolverConfig c = base;
        if (!obj.contains("algorithm")) throw UsageError("each configured solver needs an 'algorithm'");
        for (const auto& [key, value] : obj.items()) {
          const std::string k = flag_key(key);
          if (k != "algorithm" && cli_given.count(k)) continue;
          apply_value(c, k, value.is_boolean() ? (value.get<bool>() ? "true" : "false") : scalar_text(value), k_norm);
        }
        configs.push_back(c);
      }
    }
  }
  if (configs.empty()) throw UsageError("no solvers given; use --solvers");
  for (const auto& c : configs) require_valid(c);
  if (!p.F_star && reference_iters > 0) {
    p.F_star = compute_reference_optimum(p, default_reference_config(p, reference_iters)).F_star;
  }

  ensure_fresh_dir(out_dir, overwrite);
  std::map<std::string, int> seen;
  for (const auto& c : configs) {
    std::string stem(to_string(c.algorithm));
    if (seen[stem]++ > 0) stem += "-" + std::to_string(seen[stem]);
    MetricHooks hooks;
    hooks.record_time = !no_time;
    RunResult r;
    try {
      r = run_solver(p, c, hooks);
    } catch (const NumericError& e) {
      err << "numeric abort: " << e.what() << '\n';
      return kExitNumeric;
    }
    for (const auto& w : r.summary.warnings) err << "warning: " << w << '\n';
    std::ostringstream csv;
    write_trace_csv(csv, r.trace, CsvOptions{!no_time});
    write_text(out_dir / (stem + ".trace.csv"), csv.str());
    write_text(out_dir / (stem + ".summary.json"), summary_json(p, c, r).dump(2) + "\n");
    if (p.image_shape && r.state.x.size() == p.image_shape->first * p.image_shape->second) {
      write_pgm_file(out_dir / (stem + ".pgm"), as_image(r.state.x, p.image_shape->first, p.image_shape->second));
    }
    std::ostringstream line;
    line.precision(6);
    line << stem << ": " << r.summary.iterations << " iterations, F " << r.summary.final_objective;
    if (r.summary.final_gap) line << ", F - F* " << *r.summary.final_gap;
    if (r.summary.psnr) line << ", PSNR " << *r.summary.psnr;
    if (r.summary.rel_err) line << ", rel. error " << *r.summary.rel_err;
    out << line.str() << '\n';
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite_name, const std::string& report_path, bool print_json, std::ostream& out) {
  const Suite suite = parse_suite(suite_name);
  const auto results = run_suite(suite, [&](const CheckResult& r) { out << format_result(r) << std::endl; });
  bool ok = true;
  json report;
  report["suite"] = to_string(suite);
  report["checks"] = json::array();
  std::vector<std::string> failed;
  for (const auto& r : results) {
    ok = ok && r.passed;
    if (!r.passed) failed.push_back(r.id);
    report["checks"].push_back(
        {{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
  }
  report["passed"] = ok;
  if (!report_path.empty()) write_text(report_path, report.dump(2) + "\n");
  if (print_json) out << report.dump(2) << '\n';
  if (ok) {
    out << results.size() << " checks passed\n";
  } else {
    out << "failed checks:";
    for (const auto& id : failed) out << ' ' << id;
    out << '\n';
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

bool is_k_scaled(const std::string& text) {
  return text.size() > 2 && text.compare(text.size() - 2, 2, "/K") == 0;
}

double parse_scaled_value(const std::string& text, double k_norm) {
  const bool scaled = is_k_scaled(text);
  const std::string number = scaled ? text.substr(0, text.size() - 2) : text;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(number, &used);
  } catch (const std::exception&) {
    throw UsageError("expected a number or '<number>/K', got '" + text + "'");
  }
  if (used != number.size()) throw UsageError("expected a number or '<number>/K', got '" + text + "'");
  if (scaled) {
    if (!(k_norm > 0.0)) throw UsageError("'" + text + "' needs a positive |K|");
    value /= k_norm;
  }
  return value;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"goldsplit: golden-ratio primal-dual solvers and benchmarks", "goldsplit"};
  app.option_defaults()->take_last();
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  std::string config_path;

  CLI::App* gen_cmd = app.add_subcommand("generate", "generate a benchmark instance");
  GenFlags gen;
  fs::path gen_out;
  long gen_ref = 0;
  bool gen_overwrite = false;
  add_gen_flags(gen_cmd, gen);
  gen_cmd->get_option("--family")->required();
  gen_cmd->add_option("--out", gen_out, "output directory")->required();
  gen_cmd->add_option("--reference-iters", gen_ref, "compute F* with a reference run of this budget");
  gen_cmd->add_flag("--overwrite", gen_overwrite, "replace an existing output directory");
  gen_cmd->add_option("--config", config_path, "JSON file mirroring the flags");

  CLI::App* run_cmd = app.add_subcommand("run", "run solvers on an instance");
  GenFlags run_gen;
  SolverFlags solver;
  std::string instance;
  fs::path run_out;
  long run_ref = 0;
  bool run_overwrite = false, no_time = false;
  add_gen_flags(run_cmd, run_gen);
  add_solver_flags(run_cmd, solver);
  run_cmd->add_option("--instance", instance, "instance manifest or directory");
  run_cmd->add_option("--out", run_out, "output directory")->required();
  run_cmd->add_option("--reference-iters", run_ref, "compute F* when the instance has none");
  run_cmd->add_flag("--overwrite", run_overwrite, "replace an existing output directory");
  run_cmd->add_flag("--no-time", no_time, "leave the time column empty");
  run_cmd->add_option("--config", config_path, "JSON file mirroring the flags");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the acceptance battery");
  std::string suite = "all", report_path;
  bool print_json = false;
  verify_cmd->add_option("--suite", suite, "prox, linops, stepsize, convergence, rates, experiments, determinism, all");
  verify_cmd->add_option("--report", report_path, "write the JSON report here");
  verify_cmd->add_flag("--json", print_json, "print the JSON report");

  // Locate --config before the real parse so its contents can be merged in.
  std::vector<std::string> merged = args;
  json per_solver;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    if (path.empty()) continue;
    std::ifstream in(path);
    if (!in) {
      err << "cannot open config file " << path << '\n';
      return kExitUsage;
    }
    json cfg;
    try {
      cfg = json::parse(in);
      const auto extra = config_args(cfg, per_solver);
      if (merged.empty()) break;
      merged.insert(merged.begin() + 1, extra.begin(), extra.end());
    } catch (const std::exception& e) {
      err << "bad config file " << path << ": " << e.what() << '\n';
      return kExitUsage;
    }
    break;
  }
  const std::set<std::string> cli_given = given_flags(args);

  try {
    std::vector<std::string> reversed(merged.rbegin(), merged.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n";
    const CLI::App* failing = gen_cmd->parsed() ? gen_cmd : run_cmd->parsed() ? run_cmd : verify_cmd->parsed() ? verify_cmd : &app;
    err << failing->help();
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_generate(gen, gen_out, gen_ref, gen_overwrite, out);
    if (run_cmd->parsed()) {
      return cmd_run(run_gen, instance, solver, per_solver, cli_given, run_out, run_ref, run_overwrite, no_time, out,
                     err);
    }
    return cmd_verify(suite, report_path, print_json, out);
  } catch (const NumericError& e) {
    err << "numeric abort: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace goldsplit
