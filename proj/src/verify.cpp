#include "goldsplit/verify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "goldsplit/metrics.hpp"
#include "goldsplit/problems.hpp"
#include "goldsplit/solvers.hpp"

namespace goldsplit {

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

// Golden-section search for the minimizer of a unimodal function on [a, b].
template <class F>
double golden_section(F&& phi, double a, double b, double tol = 1e-11) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = phi(c), fd = phi(d);
  while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = phi(d);
    }
  }
  return 0.5 * (a + b);
}

// prox of t * lambda * |.|_1 by projected gradient on the split u = p - q, p, q >= 0.
Vector l1_prox_by_projected_gradient(const Vector& v, double c) {
  Vector p = v.cwiseMax(0.0), q = (-v).cwiseMax(0.0);
  const double step = 0.5;
  for (int it = 0; it < 4000; ++it) {
    const Vector r = p - q - v;
    p = (p - step * (Vector::Constant(v.size(), c) + r)).cwiseMax(0.0);
    q = (q - step * (Vector::Constant(v.size(), c) - r)).cwiseMax(0.0);
  }
  return p - q;
}

// prox of c |.|_2 on one group: minimize c s + |u - v|^2 / 2 over the cone |u| <= s.
Vector group_prox_by_projected_gradient(const Vector& v, double c) {
  auto project = [](Vector& u, double& s) {
    const double nu = u.norm();
    if (nu <= s) return;
    if (nu <= -s) {
      u.setZero();
      s = 0.0;
      return;
    }
    const double a = 0.5 * (nu + s);
    u *= a / nu;
    s = a;
  };
  Vector u = v;
  double s = v.norm();
  for (int it = 0; it < 400; ++it) {
    Vector un = u - (u - v);
    double sn = s - c;
    project(un, sn);
    u = un;
    s = sn;
  }
  return u;
}

// Closed forms of prox_{sigma g*} written from the conjugates directly.
Vector conjugate_prox_closed_form(const ProxOracle& g, const Vector& v, double sigma) {
  switch (g.kind()) {
    case ProxKind::zero: return Vector::Zero(v.size());
    case ProxKind::l1: return v.cwiseMax(-g.weight()).cwiseMin(g.weight());
    case ProxKind::group_l21: {
      Vector out = v;
      const Index P = g.groups();
      for (Index p = 0; p < P; ++p) {
        const double nrm = std::hypot(v(p), v(P + p));
        if (nrm > g.weight()) {
          out(p) *= g.weight() / nrm;
          out(P + p) *= g.weight() / nrm;
        }
      }
      return out;
    }
    case ProxKind::sq_l2_translated: return (v - sigma * g.translation()) / (1.0 + sigma / g.weight());
    case ProxKind::scaled_sq_l2: return v / (1.0 + sigma / g.weight());
  }
  return v;
}

struct LassoContext {
  ProblemInstance problem;
  double reference_seconds = 0.0;
};

const LassoContext& convergence_instance() {
  static const LassoContext ctx = [] {
    const auto t0 = Clock::now();
    LassoContext c{gen_lasso(50, 100, 5, LassoScheme::gaussian, 0.5, 0.1, 1), 0.0};
    c.problem.F_star = compute_reference_optimum(c.problem, default_reference_config(c.problem, 200000)).F_star;
    c.reference_seconds = seconds_since(t0);
    return c;
  }();
  return ctx;
}

double exact_norm(const LinearOperator& K) {
  Eigen::BDCSVD<Matrix> svd(K.to_dense());
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

SolverConfig lasso_pgrpda(double beta) {
  SolverConfig c;
  c.algorithm = Algorithm::pgrpda;
  c.tau0 = 10.0;
  c.psi = 1.76;
  c.mu = 0.77236;
  c.mu_prime = 0.25;
  c.beta = beta;
  c.region = Region::extended;
  return c;
}

// P-GRPDA, aEGRPDA, E-GRPDA and Condat-Vu with a common dual/primal ratio beta.
std::vector<SolverConfig> featured_lasso_solvers(double k_norm, double beta, long iterations) {
  std::vector<SolverConfig> out(4);
  out[0] = lasso_pgrpda(beta);
  out[1].algorithm = Algorithm::aegrpda;
  out[1].tau0 = 10.0;
  out[1].beta = beta;
  out[1].psi = 1.5;
  out[2].algorithm = Algorithm::egrpda;
  out[2].psi = 1.5;
  out[2].tau = std::sqrt(0.99 * out[2].psi / beta) / k_norm;
  out[2].sigma = beta * out[2].tau;
  out[3].algorithm = Algorithm::condat_vu;
  out[3].tau = 1.0 / (std::sqrt(beta) * k_norm);
  out[3].sigma = beta * out[3].tau;
  for (auto& c : out) c.max_iters = iterations;
  return out;
}

class Collector {
 public:
  void fail(const std::string& what) {
    ok_ = false;
    if (failures_.size() < 6) failures_.push_back(what);
  }
  void note(const std::string& what) { notes_.push_back(what); }
  void expect(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
  bool ok() const { return ok_; }
  std::string detail() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + f;
    for (const auto& n : notes_) out += (out.empty() ? "" : "; ") + n;
    return out;
  }

 private:
  bool ok_ = true;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

CheckResult finish(std::string id, std::string title, const Collector& c, Clock::time_point t0,
                   double time_limit = kInf) {
  CheckResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  r.seconds = seconds_since(t0);
  r.passed = c.ok() && r.seconds < time_limit;
  r.detail = c.detail();
  if (r.seconds >= time_limit) {
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("runtime ") + fmt(r.seconds) + " s over the " +
                fmt(time_limit) + " s limit";
  }
  return r;
}

}  // namespace

Suite parse_suite(std::string_view name) {
  for (auto s : {Suite::prox, Suite::linops, Suite::stepsize, Suite::convergence, Suite::rates, Suite::experiments,
                 Suite::determinism, Suite::all}) {
    if (to_string(s) == name) return s;
  }
  throw ParameterError("unknown verify suite '" + std::string(name) + "'");
}

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::prox: return "prox";
    case Suite::linops: return "linops";
    case Suite::stepsize: return "stepsize";
    case Suite::convergence: return "convergence";
    case Suite::rates: return "rates";
    case Suite::experiments: return "experiments";
    case Suite::determinism: return "determinism";
    case Suite::all: return "all";
  }
  return "unknown";
}

CheckResult check_prox_oracles() {
  const auto t0 = Clock::now();
  Collector c;
  Rng rng(20260101);
  std::normal_distribution<double> normal(0.0, 2.0);
  std::uniform_real_distribution<double> step(0.05, 3.0), weight(0.0, 2.0), pos_weight(0.1, 3.0);
  std::uniform_int_distribution<int> dim(1, 6);
  auto random_vector = [&](Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = normal(rng);
    return v;
  };
  double worst = 0.0, worst_moreau = 0.0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const Index n = dim(rng);
    const Vector v = random_vector(n);
    const double t = step(rng);
    const double lam = weight(rng);
    const double w = pos_weight(rng);
    const Vector b = random_vector(n);

    std::vector<std::pair<ProxOracle, Vector>> cases;
    {
      Vector oracle(n);
      for (Index i = 0; i < n; ++i) {
        const double vi = v(i);
        oracle(i) = golden_section([&](double u) { return t * lam * std::abs(u) + 0.5 * (u - vi) * (u - vi); },
                                   vi - t * lam - 1.0, vi + t * lam + 1.0);
      }
      const Vector pg = l1_prox_by_projected_gradient(v, t * lam);
      const Vector got = ProxOracle::l1(lam).prox(v, t);
      worst = std::max({worst, (got - oracle).cwiseAbs().maxCoeff(), (got - pg).cwiseAbs().maxCoeff()});
      cases.emplace_back(ProxOracle::l1(lam), v);
    }
    {
      Vector oracle(n);
      for (Index i = 0; i < n; ++i) {
        const double vi = v(i), bi = b(i);
        oracle(i) = golden_section(
            [&](double u) { return t * 0.5 * w * (u - bi) * (u - bi) + 0.5 * (u - vi) * (u - vi); },
            std::min(vi, bi) - 1.0, std::max(vi, bi) + 1.0);
      }
      const Vector got = ProxOracle::sq_l2_translated(w, b).prox(v, t);
      worst = std::max(worst, (got - oracle).cwiseAbs().maxCoeff());
      cases.emplace_back(ProxOracle::sq_l2_translated(w, b), v);
    }
    {
      Vector oracle(n);
      for (Index i = 0; i < n; ++i) {
        const double vi = v(i);
        oracle(i) = golden_section([&](double u) { return t * 0.5 * w * u * u + 0.5 * (u - vi) * (u - vi); },
                                   -std::abs(vi) - 1.0, std::abs(vi) + 1.0);
      }
      const Vector got = ProxOracle::scaled_sq_l2(w).prox(v, t);
      worst = std::max(worst, (got - oracle).cwiseAbs().maxCoeff());
      cases.emplace_back(ProxOracle::scaled_sq_l2(w), v);
    }
    {
      Vector oracle(n);
      for (Index i = 0; i < n; ++i) {
        const double vi = v(i);
        oracle(i) = golden_section([&](double u) { return 0.5 * (u - vi) * (u - vi); }, vi - 1.0, vi + 1.0);
      }
      const Vector got = ProxOracle::zero().prox(v, t);
      worst = std::max(worst, (got - oracle).cwiseAbs().maxCoeff());
      cases.emplace_back(ProxOracle::zero(), v);
    }
    {
      const Index P = n;
      const Vector field = random_vector(2 * P);
      const ProxOracle group = ProxOracle::group_l21(lam, P);
      const Vector got = group.prox(field, t);
      Vector oracle(2 * P);
      for (Index p = 0; p < P; ++p) {
        Vector pair(2);
        pair << field(p), field(P + p);
        const Vector u = group_prox_by_projected_gradient(pair, t * lam);
        oracle(p) = u(0);
        oracle(P + p) = u(1);
      }
      worst = std::max(worst, (got - oracle).cwiseAbs().maxCoeff());
      cases.emplace_back(group, field);
    }

    const double sigma = step(rng);
    for (const auto& [g, x] : cases) {
      Vector dual, primal;
      g.conjugate_prox(x, sigma, dual, &primal);
      const Vector closed = conjugate_prox_closed_form(g, x, sigma);
      const Vector direct = g.prox(x / sigma, 1.0 / sigma);
      worst_moreau = std::max(
          {worst_moreau, (x - closed - sigma * direct).cwiseAbs().maxCoeff(), (dual - closed).cwiseAbs().maxCoeff(),
           (primal - direct).cwiseAbs().maxCoeff()});
    }
  }
  c.expect(worst <= kProxOracleTol, "prox deviates from the minimization oracle by " + fmt(worst));
  c.expect(worst_moreau <= kMoreauTol, "Moreau identity residual " + fmt(worst_moreau));
  c.note(std::to_string(trials) + " inputs per kind, max oracle error " + fmt(worst) + ", Moreau residual " +
         fmt(worst_moreau));
  return finish("1", "prox oracle equivalence", c, t0, 10.0);
}

CheckResult check_operators() {
  const auto t0 = Clock::now();
  Collector c;
  Rng rng(7);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_vector = [&](Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = normal(rng);
    return v;
  };
  auto random_dense = [&](Index r, Index k) {
    Matrix M(r, k);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < k; ++j) M(i, j) = normal(rng);
    return M;
  };
  std::vector<Triplet> trip;
  std::bernoulli_distribution keep(0.05);
  for (Index i = 0; i < 150; ++i)
    for (Index j = 0; j < 100; ++j)
      if (keep(rng)) trip.push_back({i, j, normal(rng)});

  auto grid = std::make_shared<LinearOperator>(grid_incidence(6, 7));
  std::vector<std::pair<std::string, LinearOperator>> ops;
  ops.emplace_back("dense 10x7", LinearOperator::dense(random_dense(10, 7)));
  ops.emplace_back("dense 60x40", LinearOperator::dense(random_dense(60, 40)));
  ops.emplace_back("dense 200x300", LinearOperator::dense(random_dense(200, 300)));
  ops.emplace_back("csr 150x100", csr_from_triplets(150, 100, trip));
  ops.emplace_back("first_difference 50", first_difference(50));
  ops.emplace_back("grid_incidence 6x7", grid_incidence(6, 7));
  ops.emplace_back("gradient 8x9", discrete_gradient_2d(8, 9));
  ops.emplace_back("identity 10", identity_operator(10));
  ops.emplace_back("gram of grid 6x7", graph_laplacian(grid));

  double worst_adj = 0.0, worst_norm = 0.0;
  for (const auto& [name, op] : ops) {
    for (int rep = 0; rep < 5; ++rep) {
      Vector x = random_vector(op.domain_dim()).normalized();
      Vector y = random_vector(op.codomain_dim()).normalized();
      const double err = std::abs(op.apply(x).dot(y) - x.dot(op.apply_adjoint(y)));
      worst_adj = std::max(worst_adj, err);
      c.expect(err <= kAdjointTol, name + ": adjoint residual " + fmt(err));
    }
    const Matrix D = op.to_dense();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(D.transpose() * D, Eigen::EigenvaluesOnly);
    const double exact = std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
    const double est = estimate_operator_norm(op);
    const double rel = std::abs(est - exact) / std::max(exact, 1e-300);
    worst_norm = std::max(worst_norm, rel);
    c.expect(rel <= kOperatorNormRelTol, name + ": norm estimate off by " + fmt(rel));
  }

  const double fd5 = estimate_operator_norm(first_difference(5));
  const double fd5_exact = 2.0 * std::sin(2.0 * M_PI / 5.0);
  c.expect(std::abs(fd5 - fd5_exact) <= 1e-4, "|first_difference(5)| = " + fmt(fd5));

  double worst_grad = 0.0;
  for (auto [r, k] : {std::pair<Index, Index>{2, 2}, {5, 7}, {16, 16}, {32, 32}, {40, 25}}) {
    const double est = estimate_operator_norm(discrete_gradient_2d(r, k));
    worst_grad = std::max(worst_grad, est);
    c.expect(est <= std::sqrt(8.0), "gradient norm " + fmt(est) + " exceeds sqrt(8)");
  }
  c.note("adjoint residual " + fmt(worst_adj) + ", norm rel. error " + fmt(worst_norm) + ", |D_5| " + fmt(fd5) +
         ", max |grad| " + fmt(worst_grad));
  return finish("2", "operator correctness", c, t0);
}

CheckResult check_pgrpda_stepsize() {
  const auto t0 = Clock::now();
  Collector c;
  const ProblemInstance p = gen_lasso(100, 300, 5, LassoScheme::gaussian, 0.5, 0.1, 1);
  const double K = exact_norm(*p.K);
  const double L = p.lipschitz_bound();
  SolverConfig cfg = lasso_pgrpda(0.2);
  cfg.max_iters = 10000;
  cfg.trace_stride = cfg.max_iters;
  cfg.k_norm = K;
  const double eta = eta_bound(cfg.tau0, cfg.mu, cfg.mu_prime, cfg.beta, K, L);

  double prev = cfg.tau0, min_tau = kInf;
  long increases = 0, below = 0;
  MetricHooks hooks;
  hooks.record_time = false;
  hooks.observer = [&](const SolverState& s) {
    if (s.tau > prev) ++increases;
    if (s.tau < eta - kStepsizeTol) ++below;
    min_tau = std::min(min_tau, s.tau);
    prev = s.tau;
  };
  run_solver(p, cfg, hooks);
  c.expect(increases == 0, std::to_string(increases) + " stepsize increases");
  c.expect(below == 0, std::to_string(below) + " steps below eta");

  SolverConfig fixed = cfg;
  fixed.tau0 = 0.5 * std::min(cfg.mu / (std::sqrt(cfg.beta) * K), L > 0.0 ? cfg.mu_prime / L : kInf);
  long changed = 0;
  hooks.observer = [&](const SolverState& s) {
    if (s.tau != fixed.tau0) ++changed;
  };
  run_solver(p, fixed, hooks);
  c.expect(changed == 0, std::to_string(changed) + " iterations moved tau away from a small tau0");
  c.note("eta " + fmt(eta) + ", min tau " + fmt(min_tau) + ", small tau0 " + fmt(fixed.tau0) + " kept for " +
         std::to_string(cfg.max_iters) + " iterations");
  return finish("3", "P-GRPDA stepsize bounds", c, t0, 30.0);
}

CheckResult check_aegrpda_stepsize() {
  const auto t0 = Clock::now();
  Collector c;
  const ProblemInstance p = gen_lasso(100, 300, 5, LassoScheme::gaussian, 0.5, 0.1, 1);
  SolverConfig cfg;
  cfg.algorithm = Algorithm::aegrpda;
  cfg.tau0 = 10.0;
  cfg.beta = 0.2;
  cfg.psi = 1.5;
  cfg.max_iters = 10000;
  cfg.trace_stride = cfg.max_iters;
  const double K = resolve_k_norm(p, cfg);
  const double rho = cfg.rho_value();
  long bad_l = 0, bad_k = 0, bad_theta = 0, bad_max = 0, undefined = 0;
  MetricHooks hooks;
  hooks.record_time = false;
  hooks.observer = [&](const SolverState& s) {
    const double root = std::sqrt(s.theta * s.theta_prev);
    if (s.local_l) {
      if (s.tau * *s.local_l > root / 3.0 + kStepsizeTol) ++bad_l;
      if (s.tau > std::sqrt(s.theta * s.theta_prev / (cfg.beta * cfg.psi * K * K)) / 3.0 + kStepsizeTol) ++bad_k;
    } else {
      ++undefined;
    }
    if (s.theta > cfg.psi * rho + kStepsizeTol) ++bad_theta;
    if (s.tau > cfg.tau_max) ++bad_max;
  };
  run_solver(p, cfg, hooks);
  c.expect(bad_l == 0, std::to_string(bad_l) + " violations of tau L <= sqrt(theta theta')/3");
  c.expect(bad_k == 0, std::to_string(bad_k) + " violations of the |K| bound");
  c.expect(bad_theta == 0, std::to_string(bad_theta) + " violations of theta <= psi rho");
  c.expect(bad_max == 0, std::to_string(bad_max) + " steps above tau_max");
  c.note(std::to_string(cfg.max_iters) + " updates, " + std::to_string(undefined) + " without a local estimate");
  return finish("4", "aEGRPDA stepsize bounds", c, t0);
}

CheckResult check_global_convergence() {
  const auto t0 = Clock::now();
  Collector c;
  const LassoContext& ctx = convergence_instance();
  const ProblemInstance& p = ctx.problem;
  for (SolverConfig cfg : featured_lasso_solvers(p.k_norm, 0.2, 30000)) {
    cfg.trace_stride = 100;
    const RunResult r = run_solver(p, cfg);
    long first = -1;
    for (const auto& row : r.trace.rows) {
      if (row.F_gap && *row.F_gap <= kConvergenceGapTol) {
        first = row.n;
        break;
      }
    }
    const std::string name(to_string(cfg.algorithm));
    c.expect(first > 0, name + " never reached F - F* <= 1e-6 (final " + fmt(r.summary.final_gap.value_or(kInf)) + ")");
    if (uses_golden_step(cfg.algorithm)) {
      c.expect(r.summary.xz.value_or(kInf) <= kGoldenResidualTol, name + " final |x - z| " + fmt(*r.summary.xz));
    }
    c.note(name + " below 1e-6 by n=" + std::to_string(first));
  }
  c.note("F* " + fmt(p.F_star->value) + " from " + p.F_star->provenance);
  return finish("5", "global convergence on LASSO", c, t0, 120.0);
}

CheckResult check_ergodic_rate() {
  const auto t0 = Clock::now();
  Collector c;
  const ProblemInstance& p = convergence_instance().problem;
  auto solvers = featured_lasso_solvers(p.k_norm, 0.2, 10000);
  for (SolverConfig cfg : {solvers[0], solvers[1]}) {
    cfg.trace_stride = 1;
    const RunResult r = run_solver(p, cfg);
    const FitResult fit = loglog_slope(r.trace, "cviol", {100.0, 10000.0});
    const std::string name(to_string(cfg.algorithm));
    c.expect(fit.slope <= kErgodicSlopeMax, name + " slope " + fmt(fit.slope));
    c.note(name + " slope " + fmt(fit.slope) + " (R^2 " + fmt(fit.r_squared) + ")");
  }
  return finish("6", "ergodic O(1/N) constraint violation", c, t0);
}

CheckResult check_linear_rate() {
  const auto t0 = Clock::now();
  Collector c;
  const ProblemInstance p = gen_strongly_convex(200, 50, 1.0, 0);
  SolverConfig cfg;
  cfg.algorithm = Algorithm::pgrpda;
  cfg.tau0 = 10.0;
  cfg.psi = 1.5;
  cfg.mu = 0.7;
  cfg.mu_prime = 0.3;
  cfg.beta = 1.0;
  cfg.max_iters = 5000;
  const Vector x_star = run_solver(p, cfg).state.x;

  // Short enough that the error stays well above round-off.
  const long N = 300;
  const double burn_in = 0.1 * static_cast<double>(N);
  cfg.max_iters = N;
  MetricHooks hooks;
  hooks.reference_solution = &x_star;
  const RunResult r = run_solver(p, cfg, hooks);
  const FitResult fit = linear_rate_fit(r.trace, "rel_err", burn_in);

  std::vector<double> n, control;
  for (long i = 1; i <= N; ++i) {
    n.push_back(static_cast<double>(i));
    control.push_back(1.0 / static_cast<double>(i));
  }
  const FitResult control_fit = linear_rate_fit(n, control, burn_in);

  c.expect(fit.r_squared >= kLinearFitMinR2, "P-GRPDA R^2 " + fmt(fit.r_squared) + " below 0.9");
  c.expect(fit.r_squared >= kLinearFitCalibratedR2,
           "P-GRPDA R^2 " + fmt(fit.r_squared) + " below the calibrated " + fmt(kLinearFitCalibratedR2));
  c.expect(fit.slope < 0.0, "error is not decaying");
  c.expect(control_fit.r_squared < kLinearFitCalibratedR2, "c/n control passes the linear fit with R^2 " +
                                                               fmt(control_fit.r_squared));
  c.note("P-GRPDA rate " + fmt(std::exp(fit.slope)) + " per iteration, R^2 " + fmt(fit.r_squared) +
         "; c/n control R^2 " + fmt(control_fit.r_squared) + " vs threshold " + fmt(kLinearFitCalibratedR2));
  return finish("7", "R-linear decay under strong convexity", c, t0);
}

CheckResult check_extended_region() {
  const auto t0 = Clock::now();
  Collector c;
  const ProblemInstance& p = convergence_instance().problem;
  SolverConfig cfg = lasso_pgrpda(0.2);
  cfg.psi = 2.5;
  cfg.mu = 0.26;
  cfg.mu_prime = 0.08;
  cfg.max_iters = 30000;
  cfg.trace_stride = 1000;
  const double bound = pgrpda_mu_bound(cfg.psi, Region::extended);
  c.expect(validate_config(cfg).ok(), "psi = 2.5 configuration rejected: " + validate_config(cfg).summary());
  if (validate_config(cfg).ok()) {
    const RunResult r = run_solver(p, cfg);
    const double gap = r.summary.final_gap.value_or(kInf);
    c.expect(gap <= kExtendedGapTol, "final gap " + fmt(gap));
    c.note("psi 2.5, mu 0.26 < " + fmt(bound) + ": final gap " + fmt(gap));
  }
  SolverConfig bad = cfg;
  bad.psi = 2.8;
  bad.mu = 0.3;
  bad.mu_prime = 0.05;
  const auto report = validate_config(bad);
  c.expect(!report.ok(), "psi = 2.8 with mu = 0.3 accepted");
  c.note("psi 2.8 rejected: " + report.summary());
  return finish("8", "extended parameter region", c, t0);
}

CheckResult check_conventions() {
  const auto t0 = Clock::now();
  Collector c;
  c.expect(pgrpda_tau_update(0.7, 0.0, 0.0, 0.0, 0.7, 0.3, 1.0) == 0.7, "dx = 0 does not keep tau");
  c.expect(pgrpda_tau_update(0.7, 0.0, 3.0, 2.0, 0.7, 0.3, 1.0) == 0.7, "dx = 0 with moving Kx does not keep tau");
  c.expect(pgrpda_tau_update(0.7, 1.5, 0.0, 0.0, 0.7, 0.3, 1.0) == 0.7, "dKx = dgrad = 0 does not keep tau");
  c.expect(pgrpda_tau_update(0.7, 1.0, 0.0, 1.0, 0.7, 0.3, 1.0) == 0.3, "dKx = 0 does not drop its term");
  c.expect(!local_lipschitz(0.0, 0.0).has_value(), "local Lipschitz estimate defined for dx = 0");
  c.expect(local_lipschitz(0.0, 2.0) == 0.0, "flat gradient does not give L = 0");
  const double rho = 1.0 / 1.5 + 1.0 / (1.5 * 1.5);
  const auto grow = aegrpda_tau_update(2.0, 1.0, std::nullopt, 5.0, 1.0, 1.5, rho, 1e7);
  c.expect(grow.tau == rho * 2.0, "undefined L does not give tau = rho tau_prev");
  c.expect(grow.theta == 1.5 * grow.tau / 2.0, "theta is not psi tau / tau_prev");
  const auto capped = aegrpda_tau_update(9e6, 1.0, std::nullopt, 5.0, 1.0, 1.5, rho, 1e7);
  c.expect(capped.tau == 1e7, "tau_max cap not applied");

  // A start at a fixed point: x never moves, so both rules fall back.
  ProblemInstance still;
  still.name = "stationary";
  still.K = std::make_shared<LinearOperator>(identity_operator(3));
  still.h = SmoothOracle::zero(3);
  still.x0 = Vector::Ones(3);
  still.y0 = Vector::Zero(3);
  still.k_norm = 1.0;
  SolverConfig pg;
  pg.algorithm = Algorithm::pgrpda;
  pg.tau0 = 0.9;
  pg.max_iters = 20;
  const RunResult a = run_solver(still, pg);
  c.expect(a.state.tau == 0.9, "P-GRPDA tau changed with x at rest");
  SolverConfig ae;
  ae.algorithm = Algorithm::aegrpda;
  ae.tau0 = 0.9;
  ae.max_iters = 3;
  const RunResult b = run_solver(still, ae);
  const double expected = 0.9 * std::pow(ae.rho_value(), 3);
  c.expect(std::abs(b.state.tau - expected) <= 1e-15 * expected, "aEGRPDA did not grow by rho with x at rest");
  return finish("9", "stepsize conventions", c, t0);
}

CheckResult check_experiments() {
  const auto t0 = Clock::now();
  Collector c;

  {
    const auto ta = Clock::now();
    ProblemInstance p = gen_lasso(300, 1000, 10, LassoScheme::gaussian, 0.5, 0.1, 1);
    p.F_star = compute_reference_optimum(p, default_reference_config(p, 600000)).F_star;
    for (SolverConfig cfg : featured_lasso_solvers(p.k_norm, 0.2, 30000)) {
      cfg.trace_stride = 100;
      const RunResult r = run_solver(p, cfg);
      long first = -1;
      for (const auto& row : r.trace.rows) {
        if (row.F_gap && *row.F_gap <= kLassoGapTol) {
          first = row.n;
          break;
        }
      }
      const std::string name(to_string(cfg.algorithm));
      c.expect(first > 0, "(a) " + name + " did not reach F - F* <= 1e-4");
      c.note("(a) " + name + " below 1e-4 by n=" + std::to_string(first));
    }
    const double ta_s = seconds_since(ta);
    c.expect(ta_s < 120.0, "(a) took " + fmt(ta_s) + " s");
  }
  {
    const auto tb = Clock::now();
    const ProblemInstance p = gen_inpainting(synthetic_piecewise_image(32, 32), 0.3, 1e-2, 1);
    const double damaged = psnr(p.x0, *p.x_true);
    SolverConfig cfg;
    cfg.algorithm = Algorithm::aegrpda;
    cfg.tau0 = 1.0;
    cfg.beta = 0.1;
    cfg.psi = 1.5;
    cfg.max_iters = 2000;
    cfg.trace_stride = 100;
    const RunResult r = run_solver(p, cfg);
    const double recon = r.summary.psnr.value_or(-kInf);
    c.expect(recon - damaged >= kPsnrGainDb, "(b) PSNR gain " + fmt(recon - damaged) + " dB");
    c.note("(b) PSNR " + fmt(damaged) + " -> " + fmt(recon) + " dB");
    const double tb_s = seconds_since(tb);
    c.expect(tb_s < 120.0, "(b) took " + fmt(tb_s) + " s");
  }
  {
    const auto tc = Clock::now();
    const ProblemInstance p = gen_graphnet(10, 10, 60, 2.0, 0.05, 6.64e-6, 1e-6, 0.01, 1);
    SolverConfig cfg;
    cfg.algorithm = Algorithm::pgrpda;
    cfg.tau0 = 10.0;
    cfg.beta = 1e-4;
    cfg.psi = kGoldenRatio;
    cfg.mu = 0.80;
    cfg.mu_prime = 0.39;
    cfg.max_iters = 20000;
    cfg.trace_stride = 100;
    const RunResult r = run_solver(p, cfg);
    double best = kInf;
    for (const auto& row : r.trace.rows) best = std::min(best, row.rel_err.value_or(kInf));
    c.expect(best < kGraphnetRelErr, "(c) relative error " + fmt(best));
    c.note("(c) relative error " + fmt(best) + " (final " + fmt(r.summary.rel_err.value_or(kInf)) + ")");
    const double tc_s = seconds_since(tc);
    c.expect(tc_s < 120.0, "(c) took " + fmt(tc_s) + " s");
  }
  return finish("10", "desk-scale experiments", c, t0);
}

CheckResult check_determinism() {
  const auto t0 = Clock::now();
  Collector c;
  auto trace_text = [](Algorithm alg) {
    GenSpec spec = default_spec(Family::fused_lasso);
    spec.m = 40;
    spec.n = 60;
    spec.seed = 11;
    const ProblemInstance p = generate(spec);
    SolverConfig cfg;
    cfg.algorithm = alg;
    cfg.tau0 = 1.0;
    cfg.beta = 0.5;
    cfg.tau = 0.5;
    cfg.sigma = 0.5;
    cfg.max_iters = 500;
    cfg.trace_stride = 7;
    MetricHooks hooks;
    hooks.record_time = false;
    std::ostringstream os;
    write_trace_csv(os, run_solver(p, cfg, hooks).trace, CsvOptions{false});
    return os.str();
  };
  for (Algorithm alg : kAllAlgorithms) {
    const std::string first = trace_text(alg);
    const std::string second = trace_text(alg);
    c.expect(first == second, std::string(to_string(alg)) + " traces differ between runs");
    c.expect(first.size() > kTraceCsvHeader.size() + 1, std::string(to_string(alg)) + " trace is empty");
  }
  c.note("7 solvers, byte-identical traces");
  return finish("11", "determinism", c, t0);
}

std::vector<CheckResult> run_suite(Suite suite, const std::function<void(const CheckResult&)>& on_result) {
  struct Entry {
    const char* id;
    Suite suite;
    CheckResult (*fn)();
  };
  const Entry table[] = {
      {"1", Suite::prox, check_prox_oracles},          {"2", Suite::linops, check_operators},
      {"3", Suite::stepsize, check_pgrpda_stepsize},   {"4", Suite::stepsize, check_aegrpda_stepsize},
      {"5", Suite::convergence, check_global_convergence}, {"6", Suite::rates, check_ergodic_rate},
      {"7", Suite::rates, check_linear_rate},          {"8", Suite::convergence, check_extended_region},
      {"9", Suite::stepsize, check_conventions},       {"10", Suite::experiments, check_experiments},
      {"11", Suite::determinism, check_determinism},
  };
  std::vector<CheckResult> out;
  for (const auto& e : table) {
    if (suite != Suite::all && suite != e.suite) continue;
    CheckResult r;
    try {
      r = e.fn();
    } catch (const std::exception& ex) {
      r.id = e.id;
      r.title = "criterion " + r.id;
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    out.push_back(r);
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CheckResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title;
  if (!r.detail.empty()) os << ": " << r.detail;
  os.precision(3);
  os << " (" << r.seconds << " s)";
  return os.str();
}

}  // namespace goldsplit
