#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "goldsplit/metrics.hpp"
#include "goldsplit/problem.hpp"

namespace goldsplit {

enum class Algorithm { pgrpda, aegrpda, egrpda, condat_vu, pdhg, grpda, agraal };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::pgrpda,    Algorithm::aegrpda, Algorithm::egrpda,
                                               Algorithm::condat_vu, Algorithm::pdhg,    Algorithm::grpda,
                                               Algorithm::agraal};

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

/// Methods built on the golden-ratio convex combination z_n.
bool uses_golden_step(Algorithm algorithm);
bool has_adaptive_stepsize(Algorithm algorithm);

/// Parameter region used to validate P-GRPDA's (psi, mu, mu').
enum class Region { base, extended };

struct SolverConfig {
  Algorithm algorithm = Algorithm::pgrpda;

  double tau0 = 1.0;  // initial primal step (lambda_0 for aGRAAL)
  double beta = 1.0;  // dual/primal step ratio, sigma = beta * tau
  double psi = 1.5;
  double mu = 0.7;
  double mu_prime = 0.3;
  Region region = Region::base;
  std::optional<double> rho;  // defaults to 1/psi + 1/psi^2
  double theta0 = 1.0;
  double tau_max = 1e7;  // lambda_max for aGRAAL

  // Fixed steps for E-GRPDA, Condat-Vu, PDHG and GRPDA.
  double tau = 0.0;
  double sigma = 0.0;

  std::optional<double> k_norm;  // falls back to the instance's estimate

  long max_iters = 1000;
  long trace_stride = 1;
  std::uint64_t seed = 0;
  double stop_tol = 0.0;  // 0 disables the early exit

  // aGRAAL on min h + g directly; needs K = I and f = 0.
  bool agraal_direct = false;

  // Slack accepted on the strict P-GRPDA region inequalities, relative to the
  // bound. Published parameter choices are rounded to the boundary.
  double region_slack = 1e-6;

  double rho_value() const { return rho.value_or(1.0 / psi + 1.0 / (psi * psi)); }
};

struct Diagnostic {
  std::string constraint;
  std::string message;
};

struct ValidationReport {
  std::vector<Diagnostic> errors;

  bool ok() const noexcept { return errors.empty(); }
  std::string summary() const;
};

/// Upper bound on mu for P-GRPDA: psi/2 on the base region, the larger bound
/// psi/2 + psi(1 + psi - psi^2) / (2(psi + 1)) on the extended one.
double pgrpda_mu_bound(double psi, Region region);

ValidationReport validate_config(const SolverConfig& config);
/// Throws ParameterError listing every violated constraint.
void require_valid(const SolverConfig& config);

/// Problem-dependent stepsize conditions of the fixed-step baselines. These
/// only warn: tuned values routinely sit on the boundary.
std::vector<std::string> stepsize_warnings(const SolverConfig& config, double k_norm, double lipschitz,
                                           bool smooth_term_present);

/// min{tau0, mu / (sqrt(beta) |K|), mu' / L}, with x/0 = +inf.
double eta_bound(double tau0, double mu, double mu_prime, double beta, double k_norm, double lipschitz);

/// P-GRPDA step rule from norms of the differences. Zero denominators drop
/// their term; dx = 0 keeps tau_prev.
double pgrpda_tau_update(double tau_prev, double dx_norm, double dKx_norm, double dgrad_norm, double mu,
                         double mu_prime, double beta);
double pgrpda_tau_update(double tau_prev, const Vector& dx, const Vector& dKx, const Vector& dgrad, double mu,
                         double mu_prime, double beta);

/// |grad h(x_n) - grad h(x_{n-1})| / |x_n - x_{n-1}|; empty when x did not move.
std::optional<double> local_lipschitz(double dgrad_norm, double dx_norm);
std::optional<double> local_lipschitz(const Vector& dgrad, const Vector& dx);

struct StepAndTheta {
  double tau;
  double theta;
};

/// aEGRPDA rule: min{rho tau_prev, psi theta_prev / (9 (L^2 + beta psi |K|^2) tau_prev), tau_max},
/// dropping the middle branch when L is undefined; theta = psi tau / tau_prev.
StepAndTheta aegrpda_tau_update(double tau_prev, double theta_prev, std::optional<double> local_l, double k_norm,
                                double beta, double psi, double rho, double tau_max);

struct SolverState {
  Vector x, z, y, w;
  Vector x_prev;
  Vector Kx, Kx_prev;
  Vector grad, grad_prev;  // grad h at x and x_prev

  // aGRAAL only: dual golden average, previous dual iterate and F(u_{n-1}).
  Vector y_bar, y_prev;
  Vector F_primal_prev, F_dual_prev;

  double tau = 0.0, tau_prev = 0.0;
  double sigma = 0.0;
  double theta = 0.0, theta_prev = 0.0;
  std::optional<double> local_l;  // last local Lipschitz estimate

  long n = 0;
  Vector x_avg, w_avg, Kx_avg;  // ergodic means of x_1..x_n, w_1..w_n, Kx_1..Kx_n
  double elapsed = 0.0;
};

/// Start point defaults to the instance's x0/y0; z0 = x0, w0 = K x0.
SolverState init_state(const ProblemInstance& problem, const SolverConfig& config,
                       const Vector* x0 = nullptr, const Vector* y0 = nullptr);

void pgrpda_iterate(SolverState& state, const ProblemInstance& problem, const SolverConfig& config);
void aegrpda_iterate(SolverState& state, const ProblemInstance& problem, const SolverConfig& config);
void egrpda_iterate(SolverState& state, const ProblemInstance& problem, const SolverConfig& config);
void condat_vu_iterate(SolverState& state, const ProblemInstance& problem, const SolverConfig& config);
void pdhg_iterate(SolverState& state, const ProblemInstance& problem, const SolverConfig& config);
void grpda_iterate(SolverState& state, const ProblemInstance& problem, const SolverConfig& config);
void agraal_iterate(SolverState& state, const ProblemInstance& problem, const SolverConfig& config);

/// One step of config.algorithm. Does not touch the ergodic means.
void iterate(SolverState& state, const ProblemInstance& problem, const SolverConfig& config);

/// The quantity watched by the early exit: |x - z| for golden-ratio methods,
/// |x - x_prev| otherwise.
double stopping_residual(const SolverState& state, Algorithm algorithm);

struct MetricHooks {
  std::function<void(const SolverState&)> observer;  // called after every iteration
  const Vector* reference_solution = nullptr;        // rel_err against this instead of x_true
  const Vector* x0 = nullptr;
  const Vector* y0 = nullptr;
  bool record_time = true;
};

struct RunSummary {
  Algorithm algorithm = Algorithm::pgrpda;
  long iterations = 0;
  bool stopped_early = false;
  double final_objective = 0.0;
  double min_objective = kInf;
  std::optional<double> final_gap;
  double tau = 0.0, sigma = 0.0;
  std::optional<double> theta;
  double dx = 0.0;
  std::optional<double> xz;
  double cviol = 0.0;
  std::optional<double> rel_err;
  std::optional<double> psnr;
  double elapsed = 0.0;
  double k_norm = 0.0;
  std::vector<std::string> warnings;
};

struct RunResult {
  SolverState state;
  IterationTrace trace;
  RunSummary summary;
};

/// Validates, initializes and iterates up to config.max_iters, maintaining the
/// ergodic means incrementally and recording a trace row every trace_stride
/// iterations (and at the last one). Throws NumericError on a non-finite iterate.
RunResult run_solver(const ProblemInstance& problem, const SolverConfig& config, const MetricHooks& hooks = {});

/// Norm of K used by a run: config.k_norm when given, the instance estimate otherwise.
double resolve_k_norm(const ProblemInstance& problem, const SolverConfig& config);

}  // namespace goldsplit
