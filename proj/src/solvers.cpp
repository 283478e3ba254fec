#include "goldsplit/solvers.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace goldsplit {

namespace {

constexpr double kExtendedPsiLimit = 2.7320508075688772935;  // 1 + sqrt(3)
// Relative slack used when a tuned value is meant to sit exactly on a boundary.
constexpr double kBoundaryEps = 1e-12;

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void check_finite(const SolverState& s, Algorithm algorithm) {
  if (!s.x.allFinite() || !s.y.allFinite() || !std::isfinite(s.tau) || !std::isfinite(s.sigma)) {
    throw NumericError("non-finite iterate in " + std::string(to_string(algorithm)), s.n);
  }
}

// z_n = ((psi - 1) x_{n-1} + z_{n-1}) / psi
void golden_step(Vector& z, const Vector& x, double psi) { z = ((psi - 1.0) * x + z) / psi; }

// w = prox_{g / sigma}(y / sigma + v), y <- y + sigma (v - w): the two-line
// form of y = prox_{sigma g*}(y + sigma v) that also materializes w.
void dual_update(SolverState& s, const ProblemInstance& p, const Vector& v, double sigma) {
  Vector arg = s.y / sigma + v;
  p.g.prox(arg, 1.0 / sigma, s.w);
  s.y += sigma * (v - s.w);
}

void smooth_gradient(const ProblemInstance& p, const Vector& x, Vector& out) {
  if (p.h.is_zero()) {
    out.setZero(x.size());
  } else {
    p.h.gradient(x, out);
  }
}

// Shared primal half-step of the golden-ratio family with step tau:
// z update, then x_n = prox_{tau f}(z_n - tau K^* y_{n-1} - tau grad h(x_{n-1})).
// Leaves the previous iterate in x_prev/Kx_prev/grad_prev and refreshes x, Kx, grad.
void golden_primal_step(SolverState& s, const ProblemInstance& p, double psi, double tau, bool use_gradient) {
  golden_step(s.z, s.x, psi);
  Vector Kty;
  p.K->apply_adjoint(s.y, Kty);
  Vector arg = s.z - tau * Kty;
  if (use_gradient) arg -= tau * s.grad;
  s.x_prev.swap(s.x);
  s.Kx_prev.swap(s.Kx);
  s.grad_prev.swap(s.grad);
  p.f.prox(arg, tau, s.x);
  // K x_n = K x_{n-1} + K (x_n - x_{n-1}): differencing two separate products
  // loses all accuracy in K dx once dx reaches round-off level, and the step
  // rules divide by |K dx|.
  Vector dKx;
  p.K->apply(s.x - s.x_prev, dKx);
  s.Kx = s.Kx_prev + dKx;
  if (use_gradient) {
    smooth_gradient(p, s.x, s.grad);
  } else {
    s.grad.setZero(s.x.size());
  }
}

double grad_change(const SolverState& s, const ProblemInstance& p) {
  return p.h.is_zero() ? 0.0 : (s.grad - s.grad_prev).norm();
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::pgrpda: return "pgrpda";
    case Algorithm::aegrpda: return "aegrpda";
    case Algorithm::egrpda: return "egrpda";
    case Algorithm::condat_vu: return "condat_vu";
    case Algorithm::pdhg: return "pdhg";
    case Algorithm::grpda: return "grpda";
    case Algorithm::agraal: return "agraal";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : kAllAlgorithms) {
    if (to_string(a) == name) return a;
  }
  throw ParameterError("unknown algorithm '" + std::string(name) + "'");
}

bool uses_golden_step(Algorithm algorithm) {
  return algorithm != Algorithm::condat_vu && algorithm != Algorithm::pdhg;
}

bool has_adaptive_stepsize(Algorithm algorithm) {
  return algorithm == Algorithm::pgrpda || algorithm == Algorithm::aegrpda || algorithm == Algorithm::agraal;
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& d : errors) {
    if (!out.empty()) out += "; ";
    out += d.constraint + ": " + d.message;
  }
  return out;
}

double pgrpda_mu_bound(double psi, Region region) {
  if (region == Region::base) return psi / 2.0;
  return psi / 2.0 + psi * (1.0 + psi - psi * psi) / (2.0 * (psi + 1.0));
}

ValidationReport validate_config(const SolverConfig& c) {
  ValidationReport report;
  auto fail = [&](std::string constraint, std::string message) {
    report.errors.push_back({std::move(constraint), std::move(message)});
  };
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0)) fail(std::string(name) + " > 0", std::string(name) + " = " + num(v));
  };

  if (c.max_iters < 0) fail("max_iters >= 0", "max_iters = " + std::to_string(c.max_iters));
  if (c.trace_stride < 1) fail("trace_stride >= 1", "trace_stride = " + std::to_string(c.trace_stride));
  if (!(c.stop_tol >= 0.0)) fail("stop_tol >= 0", "stop_tol = " + num(c.stop_tol));

  auto psi_in = [&](double upper, bool inclusive, const char* label) {
    const bool ok = c.psi > 1.0 && (inclusive ? c.psi <= upper * (1.0 + kBoundaryEps) : c.psi < upper);
    if (!ok) fail(label, "psi = " + num(c.psi));
  };
  auto rho_ok = [&] {
    const double rho = c.rho_value();
    const double limit = 1.0 / c.psi + 1.0 / (c.psi * c.psi);
    if (!(rho > 0.0) || rho > limit * (1.0 + kBoundaryEps)) {
      fail("0 < rho <= 1/psi + 1/psi^2", "rho = " + num(rho) + ", limit " + num(limit));
    }
  };

  switch (c.algorithm) {
    case Algorithm::pgrpda: {
      positive(c.tau0, "tau0");
      positive(c.beta, "beta");
      positive(c.mu_prime, "mu'");
      const double slack = 1.0 + c.region_slack;
      if (c.region == Region::base) {
        psi_in(kGoldenRatio, true, "psi in (1, phi]");
        if (!(2.0 * c.mu_prime < c.mu)) fail("2 mu' < mu", "mu = " + num(c.mu) + ", mu' = " + num(c.mu_prime));
      } else {
        psi_in(kExtendedPsiLimit, false, "psi in (1, 1 + sqrt(3))");
        if (!(3.0 * c.mu_prime < c.mu)) fail("3 mu' < mu", "mu = " + num(c.mu) + ", mu' = " + num(c.mu_prime));
      }
      const double bound = pgrpda_mu_bound(c.psi, c.region);
      if (!(c.mu < bound * slack)) {
        fail(c.region == Region::base ? "mu < psi/2" : "mu < psi/2 + psi(1+psi-psi^2)/(2(psi+1))",
             "mu = " + num(c.mu) + ", bound " + num(bound));
      }
      break;
    }
    case Algorithm::aegrpda:
      positive(c.tau0, "tau0");
      positive(c.beta, "beta");
      positive(c.theta0, "theta0");
      psi_in(kGoldenRatio, true, "psi in (1, phi]");
      rho_ok();
      if (!(c.tau_max > c.tau0)) fail("tau_max > tau0", "tau_max = " + num(c.tau_max) + ", tau0 = " + num(c.tau0));
      if (c.k_norm && !(*c.k_norm >= 0.0)) fail("|K| >= 0", "k_norm = " + num(*c.k_norm));
      break;
    case Algorithm::agraal:
      positive(c.tau0, "lambda0");
      positive(c.theta0, "theta0");
      psi_in(kGoldenRatio, true, "psi in (1, phi]");
      rho_ok();
      if (!(c.tau_max > c.tau0)) {
        fail("lambda_max > lambda0", "lambda_max = " + num(c.tau_max) + ", lambda0 = " + num(c.tau0));
      }
      break;
    case Algorithm::egrpda:
      positive(c.tau, "tau");
      positive(c.sigma, "sigma");
      psi_in(kGoldenRatio, true, "psi in (1, phi]");
      break;
    case Algorithm::grpda:
      positive(c.tau, "tau");
      positive(c.sigma, "sigma");
      psi_in(kExtendedPsiLimit, false, "psi in (1, 1 + sqrt(3))");
      break;
    case Algorithm::condat_vu:
    case Algorithm::pdhg:
      positive(c.tau, "tau");
      positive(c.sigma, "sigma");
      break;
  }
  return report;
}

void require_valid(const SolverConfig& config) {
  const auto report = validate_config(config);
  if (!report.ok()) {
    throw ParameterError(std::string(to_string(config.algorithm)) + " configuration rejected: " + report.summary());
  }
}

std::vector<std::string> stepsize_warnings(const SolverConfig& c, double k_norm, double lipschitz,
                                           bool smooth_term_present) {
  std::vector<std::string> warnings;
  const double tsk = c.tau * c.sigma * k_norm * k_norm;
  auto warn = [&](const std::string& condition, double lhs, double rhs) {
    warnings.push_back(std::string(to_string(c.algorithm)) + ": stepsize condition " + condition +
                       " violated (" + num(lhs) + " vs " + num(rhs) + ")");
  };
  switch (c.algorithm) {
    case Algorithm::pdhg:
      if (!smooth_term_present) {
        // Equality is admissible (Condat's extension of the PDHG theory).
        if (tsk > 1.0 + kBoundaryEps) warn("tau sigma |K|^2 <= 1", tsk, 1.0);
        break;
      }
      [[fallthrough]];
    case Algorithm::condat_vu: {
      const double lhs = tsk + c.tau * lipschitz / 2.0;
      if (lhs > 1.0 + kBoundaryEps) warn("tau sigma |K|^2 + tau L/2 <= 1", lhs, 1.0);
      break;
    }
    case Algorithm::grpda:
      if (tsk >= c.psi) warn("tau sigma |K|^2 < psi", tsk, c.psi);
      if (smooth_term_present) {
        warnings.push_back("grpda: the smooth term h has no place in the GRPDA step and is ignored");
      }
      break;
    case Algorithm::egrpda: {
      const double lhs = tsk + 2.0 * c.tau * lipschitz;
      if (lhs >= c.psi) warn("tau sigma |K|^2 + 2 tau L < psi", lhs, c.psi);
      break;
    }
    default: break;
  }
  return warnings;
}

double eta_bound(double tau0, double mu, double mu_prime, double beta, double k_norm, double lipschitz) {
  const double k_term = k_norm > 0.0 ? mu / (std::sqrt(beta) * k_norm) : kInf;
  const double l_term = lipschitz > 0.0 ? mu_prime / lipschitz : kInf;
  return std::min({tau0, k_term, l_term});
}

double pgrpda_tau_update(double tau_prev, double dx_norm, double dKx_norm, double dgrad_norm, double mu,
                         double mu_prime, double beta) {
  if (dx_norm == 0.0) return tau_prev;
  double tau = tau_prev;
  if (dKx_norm > 0.0) tau = std::min(tau, mu * dx_norm / (std::sqrt(beta) * dKx_norm));
  if (dgrad_norm > 0.0) tau = std::min(tau, mu_prime * dx_norm / dgrad_norm);
  return tau;
}

double pgrpda_tau_update(double tau_prev, const Vector& dx, const Vector& dKx, const Vector& dgrad, double mu,
                         double mu_prime, double beta) {
  return pgrpda_tau_update(tau_prev, dx.norm(), dKx.norm(), dgrad.norm(), mu, mu_prime, beta);
}

std::optional<double> local_lipschitz(double dgrad_norm, double dx_norm) {
  if (dx_norm == 0.0) return std::nullopt;
  return dgrad_norm / dx_norm;
}

std::optional<double> local_lipschitz(const Vector& dgrad, const Vector& dx) {
  return local_lipschitz(dgrad.norm(), dx.norm());
}

StepAndTheta aegrpda_tau_update(double tau_prev, double theta_prev, std::optional<double> local_l, double k_norm,
                                double beta, double psi, double rho, double tau_max) {
  double tau = std::min(rho * tau_prev, tau_max);
  if (local_l) {
    const double denom = 9.0 * (*local_l * *local_l + beta * psi * k_norm * k_norm);
    if (denom > 0.0) tau = std::min(tau, psi * theta_prev / denom / tau_prev);
  }
  return {tau, psi * tau / tau_prev};
}

double resolve_k_norm(const ProblemInstance& problem, const SolverConfig& config) {
  return config.k_norm.value_or(problem.k_norm);
}

SolverState init_state(const ProblemInstance& p, const SolverConfig& c, const Vector* x0, const Vector* y0) {
  p.validate();
  SolverState s;
  s.x = x0 ? *x0 : p.x0;
  s.y = y0 ? *y0 : p.y0;
  if (s.x.size() != p.primal_dim()) throw DimensionError("initial x has the wrong length");
  if (s.y.size() != p.dual_dim()) throw DimensionError("initial y has the wrong length");
  s.z = s.x;
  s.x_prev = s.x;
  p.K->apply(s.x, s.Kx);
  s.Kx_prev = s.Kx;
  s.w = s.Kx;
  smooth_gradient(p, s.x, s.grad);
  s.grad_prev = s.grad;
  s.theta = s.theta_prev = c.theta0;

  if (has_adaptive_stepsize(c.algorithm)) {
    s.tau = s.tau_prev = c.tau0;
    s.sigma = c.algorithm == Algorithm::agraal ? c.tau0 : c.beta * c.tau0;
  } else {
    s.tau = s.tau_prev = c.tau;
    s.sigma = c.sigma;
  }

  if (c.algorithm == Algorithm::agraal) {
    // aGRAAL needs two starting points; u_1 is one forward-backward step from
    // u_0 with lambda_0, and (x_bar_0, y_bar_0) = u_0.
    const double lambda = c.tau0;
    s.y_bar = s.y;
    s.y_prev = s.y;
    if (c.agraal_direct) {
      if (p.K->kind() != OperatorKind::identity || p.f.kind() != ProxKind::zero) {
        throw ParameterError("direct aGRAAL needs K = I and f = 0");
      }
      s.F_primal_prev = s.grad;
      Vector x1;
      p.g.prox(s.x - lambda * s.grad, lambda, x1);
      s.x = std::move(x1);
      s.y.setZero();
      s.y_bar.setZero();
      s.y_prev.setZero();
    } else {
      Vector Kty;
      p.K->apply_adjoint(s.y, Kty);
      s.F_primal_prev = s.grad + Kty;
      s.F_dual_prev = -s.Kx;
      Vector x1;
      p.f.prox(s.x - lambda * s.F_primal_prev, lambda, x1);
      Vector y1;
      p.g.conjugate_prox(s.y + lambda * s.Kx, lambda, y1, &s.w);
      s.x = std::move(x1);
      s.y = std::move(y1);
    }
    p.K->apply(s.x, s.Kx);
    smooth_gradient(p, s.x, s.grad);
    if (c.agraal_direct) s.w = s.Kx;
  }
  return s;
}

void pgrpda_iterate(SolverState& s, const ProblemInstance& p, const SolverConfig& c) {
  golden_primal_step(s, p, c.psi, s.tau, !p.h.is_zero());
  const double dx = (s.x - s.x_prev).norm();
  const double dKx = (s.Kx - s.Kx_prev).norm();
  const double tau = pgrpda_tau_update(s.tau, dx, dKx, grad_change(s, p), c.mu, c.mu_prime, c.beta);
  s.tau_prev = s.tau;
  s.tau = tau;
  s.sigma = c.beta * tau;
  dual_update(s, p, s.Kx, s.sigma);
  ++s.n;
}

void aegrpda_iterate(SolverState& s, const ProblemInstance& p, const SolverConfig& c) {
  golden_primal_step(s, p, c.psi, s.tau, !p.h.is_zero());
  const double dx = (s.x - s.x_prev).norm();
  s.local_l = local_lipschitz(grad_change(s, p), dx);
  const auto [tau, theta] = aegrpda_tau_update(s.tau, s.theta, s.local_l, resolve_k_norm(p, c), c.beta, c.psi,
                                               c.rho_value(), c.tau_max);
  s.tau_prev = s.tau;
  s.tau = tau;
  s.theta_prev = s.theta;
  s.theta = theta;
  s.sigma = c.beta * tau;
  dual_update(s, p, s.Kx, s.sigma);
  ++s.n;
}

void egrpda_iterate(SolverState& s, const ProblemInstance& p, const SolverConfig& c) {
  golden_primal_step(s, p, c.psi, c.tau, !p.h.is_zero());
  s.tau_prev = s.tau = c.tau;
  s.sigma = c.sigma;
  dual_update(s, p, s.Kx, c.sigma);
  ++s.n;
}

void grpda_iterate(SolverState& s, const ProblemInstance& p, const SolverConfig& c) {
  golden_primal_step(s, p, c.psi, c.tau, false);
  s.tau_prev = s.tau = c.tau;
  s.sigma = c.sigma;
  dual_update(s, p, s.Kx, c.sigma);
  ++s.n;
}

void condat_vu_iterate(SolverState& s, const ProblemInstance& p, const SolverConfig& c) {
  Vector Kty;
  p.K->apply_adjoint(s.y, Kty);
  Vector arg = s.x - c.tau * Kty;
  const bool smooth = !p.h.is_zero();
  if (smooth) arg -= c.tau * s.grad;
  s.x_prev.swap(s.x);
  s.Kx_prev.swap(s.Kx);
  s.grad_prev.swap(s.grad);
  p.f.prox(arg, c.tau, s.x);
  p.K->apply(s.x, s.Kx);
  smooth_gradient(p, s.x, s.grad);
  // K x_tilde with x_tilde = 2 x_n - x_{n-1}.
  const Vector Kx_tilde = 2.0 * s.Kx - s.Kx_prev;
  dual_update(s, p, Kx_tilde, c.sigma);
  s.z = s.x;
  s.tau_prev = s.tau = c.tau;
  s.sigma = c.sigma;
  ++s.n;
}

void pdhg_iterate(SolverState& s, const ProblemInstance& p, const SolverConfig& c) {
  // Extrapolation with delta = 1; a nonzero h is handled through its gradient
  // in the primal step, which is the Condat-Vu scheme.
  condat_vu_iterate(s, p, c);
}

void agraal_iterate(SolverState& s, const ProblemInstance& p, const SolverConfig& c) {
  const double psi = c.psi;
  const double lambda_prev = s.tau;

  Vector F_primal = s.grad;
  Vector F_dual;
  if (!c.agraal_direct) {
    Vector Kty;
    p.K->apply_adjoint(s.y, Kty);
    F_primal += Kty;
    F_dual = -s.Kx;
  }

  double du2 = (s.x - s.x_prev).squaredNorm();
  double dF2 = (F_primal - s.F_primal_prev).squaredNorm();
  if (!c.agraal_direct) {
    du2 += (s.y - s.y_prev).squaredNorm();
    dF2 += (F_dual - s.F_dual_prev).squaredNorm();
  }
  double lambda = std::min(c.rho_value() * lambda_prev, c.tau_max);
  if (du2 > 0.0 && dF2 > 0.0) {
    lambda = std::min(lambda, psi * s.theta / (4.0 * lambda_prev) * du2 / dF2);
  }

  golden_step(s.z, s.x, psi);
  Vector x_next;
  if (c.agraal_direct) {
    p.g.prox(s.z - lambda * F_primal, lambda, x_next);
  } else {
    p.f.prox(s.z - lambda * F_primal, lambda, x_next);
    golden_step(s.y_bar, s.y, psi);
    Vector y_next;
    p.g.conjugate_prox(s.y_bar + lambda * s.Kx, lambda, y_next, &s.w);
    s.y_prev.swap(s.y);
    s.y = std::move(y_next);
    s.F_dual_prev = std::move(F_dual);
  }
  s.F_primal_prev = std::move(F_primal);

  s.x_prev.swap(s.x);
  s.Kx_prev.swap(s.Kx);
  s.grad_prev.swap(s.grad);
  s.x = std::move(x_next);
  p.K->apply(s.x, s.Kx);
  smooth_gradient(p, s.x, s.grad);
  if (c.agraal_direct) s.w = s.Kx;

  s.tau_prev = lambda_prev;
  s.tau = lambda;
  s.sigma = lambda;
  s.theta_prev = s.theta;
  s.theta = psi * lambda / lambda_prev;
  ++s.n;
}

void iterate(SolverState& state, const ProblemInstance& problem, const SolverConfig& config) {
  switch (config.algorithm) {
    case Algorithm::pgrpda: pgrpda_iterate(state, problem, config); return;
    case Algorithm::aegrpda: aegrpda_iterate(state, problem, config); return;
    case Algorithm::egrpda: egrpda_iterate(state, problem, config); return;
    case Algorithm::condat_vu: condat_vu_iterate(state, problem, config); return;
    case Algorithm::pdhg: pdhg_iterate(state, problem, config); return;
    case Algorithm::grpda: grpda_iterate(state, problem, config); return;
    case Algorithm::agraal: agraal_iterate(state, problem, config); return;
  }
}

double stopping_residual(const SolverState& state, Algorithm algorithm) {
  if (uses_golden_step(algorithm)) return (state.x - state.z).norm();
  return (state.x - state.x_prev).norm();
}

RunResult run_solver(const ProblemInstance& problem, const SolverConfig& config, const MetricHooks& hooks) {
  require_valid(config);
  problem.validate();

  RunResult result;
  RunSummary& summary = result.summary;
  summary.algorithm = config.algorithm;
  summary.k_norm = resolve_k_norm(problem, config);
  summary.warnings = stepsize_warnings(config, summary.k_norm, problem.lipschitz_bound(), !problem.h.is_zero());
  if (config.algorithm == Algorithm::aegrpda && !config.k_norm) {
    summary.warnings.push_back("aegrpda: |K| taken from the power-iteration estimate " + num(summary.k_norm) +
                               "; an underestimate voids the convergence guarantee");
  }

  const auto clock_start = std::chrono::steady_clock::now();
  auto seconds = [&] {
    if (!hooks.record_time) return 0.0;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  };

  SolverState s = init_state(problem, config, hooks.x0, hooks.y0);
  const Vector* reference = hooks.reference_solution ? hooks.reference_solution
                                                     : (problem.x_true ? &*problem.x_true : nullptr);
  const double reference_norm = reference ? reference->norm() : 0.0;
  const bool golden = uses_golden_step(config.algorithm);
  const bool report_theta = config.algorithm == Algorithm::aegrpda || config.algorithm == Algorithm::agraal;

  s.x_avg.setZero(s.x.size());
  s.w_avg.setZero(s.w.size());
  s.Kx_avg.setZero(s.Kx.size());

  auto make_row = [&](const SolverState& st) {
    TraceRow row;
    row.n = st.n;
    row.t = st.elapsed;
    try {
      row.F = objective(problem, st.x, &st.Kx);
    } catch (const NumericError&) {
      throw NumericError("non-finite objective in " + std::string(to_string(config.algorithm)), st.n);
    }
    if (problem.F_star) row.F_gap = row.F - problem.F_star->value;
    row.tau = st.tau;
    row.sigma = st.sigma;
    if (report_theta) row.theta = st.theta;
    row.dx = (st.x - st.x_prev).norm();
    if (golden) row.xz = (st.x - st.z).norm();
    row.cviol = (st.Kx_avg - st.w_avg).norm();
    if (reference) {
      const double err = (st.x - *reference).norm();
      row.rel_err = reference_norm > 0.0 ? err / reference_norm : err;
    }
    if (problem.image_shape && problem.x_true) row.psnr = psnr(st.x, *problem.x_true);
    return row;
  };

  for (long it = 0; it < config.max_iters; ++it) {
    iterate(s, problem, config);
    check_finite(s, config.algorithm);
    const double inv = 1.0 / static_cast<double>(s.n);
    s.x_avg += (s.x - s.x_avg) * inv;
    s.w_avg += (s.w - s.w_avg) * inv;
    s.Kx_avg += (s.Kx - s.Kx_avg) * inv;
    s.elapsed = seconds();
    if (hooks.observer) hooks.observer(s);

    const bool stop = config.stop_tol > 0.0 && stopping_residual(s, config.algorithm) <= config.stop_tol;
    const bool last = stop || it + 1 == config.max_iters;
    if (s.n % config.trace_stride == 0 || last) {
      result.trace.rows.push_back(make_row(s));
      summary.min_objective = std::min(summary.min_objective, result.trace.rows.back().F);
    }
    if (stop) {
      summary.stopped_early = true;
      break;
    }
  }

  summary.iterations = s.n;
  summary.elapsed = s.elapsed;
  if (!result.trace.empty()) {
    const TraceRow& last = result.trace.rows.back();
    summary.final_objective = last.F;
    summary.final_gap = last.F_gap;
    summary.tau = last.tau;
    summary.sigma = last.sigma;
    summary.theta = last.theta;
    summary.dx = last.dx;
    summary.xz = last.xz;
    summary.cviol = last.cviol;
    summary.rel_err = last.rel_err;
    summary.psnr = last.psnr;
  } else {
    summary.final_objective = objective(problem, s.x, &s.Kx);
    summary.min_objective = summary.final_objective;
    summary.tau = s.tau;
    summary.sigma = s.sigma;
  }
  result.state = std::move(s);
  return result;
}

}  // namespace goldsplit
