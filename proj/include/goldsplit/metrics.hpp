#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "goldsplit/problem.hpp"

namespace goldsplit {

struct TraceRow {
  long n = 0;
  double t = 0.0;
  double F = 0.0;
  std::optional<double> F_gap;
  double tau = 0.0;
  double sigma = 0.0;
  std::optional<double> theta;
  double dx = 0.0;
  std::optional<double> xz;
  double cviol = 0.0;
  std::optional<double> rel_err;
  std::optional<double> psnr;
};

struct IterationTrace {
  std::vector<TraceRow> rows;

  bool empty() const noexcept { return rows.empty(); }
  std::size_t size() const noexcept { return rows.size(); }
};

inline constexpr std::string_view kTraceCsvHeader = "n,t,F,F_gap,tau,sigma,theta,dx,xz,cviol,rel_err,psnr";

struct CsvOptions {
  bool include_time = true;  // false writes an empty t cell
};

void write_trace_csv(std::ostream& out, const IterationTrace& trace, const CsvOptions& options = {});
IterationTrace read_trace_csv(std::istream& in);

/// Values of one named column ("F", "F_gap", "cviol", ...); absent cells are NaN.
std::vector<double> trace_column(const IterationTrace& trace, std::string_view column);
std::vector<double> trace_iterations(const IterationTrace& trace);

/// f(x) + g(Kx) + h(x). `Kx` may be passed when already available.
double objective(const ProblemInstance& problem, const Vector& x, const Vector* Kx = nullptr);

/// Phi(x, w) + <y, Kx - w> - Phi_star with Phi(x, w) = f(x) + h(x) + g(w).
/// Refuses a reference value that carries no provenance.
double lagrangian_gap(const ProblemInstance& problem, const Vector& x, const Vector& w, const Vector& y,
                      const ReferenceValue& phi_star);

double constraint_violation(const LinearOperator& K, const Vector& x_avg, const Vector& w_avg);

/// 10 log10(1 / MSE); +inf when the images coincide.
double psnr(const Vector& x, const Vector& x_true);

struct FitResult {
  double slope = 0.0;  // log-log slope, or per-iteration log decay rate
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t used = 0;
  std::size_t dropped = 0;  // non-positive or non-finite values skipped
};

struct IterationWindow {
  double first = 0.0;
  double last = kInf;
};

/// Least-squares slope of log(value) against log(n) for n in the window.
FitResult loglog_slope(const std::vector<double>& n, const std::vector<double>& values,
                       IterationWindow window = {});
FitResult loglog_slope(const IterationTrace& trace, std::string_view column, IterationWindow window = {});

/// Least-squares fit of log(value) against n for n > burn_in. The slope is
/// log of the per-iteration contraction factor.
FitResult linear_rate_fit(const std::vector<double>& n, const std::vector<double>& values, double burn_in);
FitResult linear_rate_fit(const IterationTrace& trace, std::string_view column, double burn_in);

}  // namespace goldsplit
