#include "goldsplit/metrics.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace goldsplit {

void ProblemInstance::validate() const {
  if (!K) throw DimensionError(name + ": missing linear operator");
  const Index n = K->domain_dim();
  const Index m = K->codomain_dim();
  if (h.dim() != n) throw DimensionError(name + ": smooth term dimension differs from K's domain");
  if (g.kind() == ProxKind::sq_l2_translated && g.translation().size() != m) {
    throw DimensionError(name + ": g's translation differs from K's codomain");
  }
  if (g.kind() == ProxKind::group_l21 && 2 * g.groups() != m) {
    throw DimensionError(name + ": group_l21 field differs from K's codomain");
  }
  if (f.kind() == ProxKind::sq_l2_translated && f.translation().size() != n) {
    throw DimensionError(name + ": f's translation differs from K's domain");
  }
  if (x0.size() != n) throw DimensionError(name + ": x0 has the wrong length");
  if (y0.size() != m) throw DimensionError(name + ": y0 has the wrong length");
  if (x_true && x_true->size() != n) throw DimensionError(name + ": x_true has the wrong length");
}

namespace {

void append_number(std::string& line, double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("failed to format a trace value");
  line.append(buf, ptr);
}

void append_optional(std::string& line, const std::optional<double>& value) {
  if (value) append_number(line, *value);
}

std::optional<double> parse_cell(std::string_view cell, long line_no) {
  if (cell.empty()) return std::nullopt;
  if (cell == "inf") return kInf;
  if (cell == "-inf") return -kInf;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("bad trace cell '" + std::string(cell) + "'", line_no);
  }
  return value;
}

std::optional<double> column_of(const TraceRow& row, std::string_view column) {
  if (column == "n") return static_cast<double>(row.n);
  if (column == "t") return row.t;
  if (column == "F") return row.F;
  if (column == "F_gap") return row.F_gap;
  if (column == "tau") return row.tau;
  if (column == "sigma") return row.sigma;
  if (column == "theta") return row.theta;
  if (column == "dx") return row.dx;
  if (column == "xz") return row.xz;
  if (column == "cviol") return row.cviol;
  if (column == "rel_err") return row.rel_err;
  if (column == "psnr") return row.psnr;
  throw ParameterError("unknown trace column '" + std::string(column) + "'");
}

FitResult least_squares_line(const std::vector<double>& xs, const std::vector<double>& ys, std::size_t dropped) {
  if (xs.size() < 5) {
    throw InsufficientDataError("need at least 5 usable points for a fit, have " + std::to_string(xs.size()));
  }
  const double count = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw InsufficientDataError("fit abscissae are all equal");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  // A perfectly flat series is explained exactly by a zero slope.
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.used = xs.size();
  fit.dropped = dropped;
  return fit;
}

}  // namespace

void write_trace_csv(std::ostream& out, const IterationTrace& trace, const CsvOptions& options) {
  out << kTraceCsvHeader << '\n';
  std::string line;
  for (const auto& row : trace.rows) {
    line.clear();
    line += std::to_string(row.n);
    line += ',';
    if (options.include_time) append_number(line, row.t);
    line += ',';
    append_number(line, row.F);
    line += ',';
    append_optional(line, row.F_gap);
    line += ',';
    append_number(line, row.tau);
    line += ',';
    append_number(line, row.sigma);
    line += ',';
    append_optional(line, row.theta);
    line += ',';
    append_number(line, row.dx);
    line += ',';
    append_optional(line, row.xz);
    line += ',';
    append_number(line, row.cviol);
    line += ',';
    append_optional(line, row.rel_err);
    line += ',';
    append_optional(line, row.psnr);
    out << line << '\n';
  }
}

IterationTrace read_trace_csv(std::istream& in) {
  std::string line;
  long line_no = 1;
  if (!std::getline(in, line) || line != kTraceCsvHeader) {
    throw ParseError("trace CSV header mismatch", line_no);
  }
  IterationTrace trace;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cells.size() != 12) throw ParseError("expected 12 trace cells", line_no);
    auto required = [&](std::size_t i) {
      auto v = parse_cell(cells[i], line_no);
      if (!v) throw ParseError("missing required trace cell " + std::to_string(i), line_no);
      return *v;
    };
    TraceRow row;
    row.n = static_cast<long>(required(0));
    row.t = parse_cell(cells[1], line_no).value_or(0.0);
    row.F = required(2);
    row.F_gap = parse_cell(cells[3], line_no);
    row.tau = required(4);
    row.sigma = required(5);
    row.theta = parse_cell(cells[6], line_no);
    row.dx = required(7);
    row.xz = parse_cell(cells[8], line_no);
    row.cviol = required(9);
    row.rel_err = parse_cell(cells[10], line_no);
    row.psnr = parse_cell(cells[11], line_no);
    trace.rows.push_back(row);
  }
  return trace;
}

std::vector<double> trace_column(const IterationTrace& trace, std::string_view column) {
  std::vector<double> values;
  values.reserve(trace.rows.size());
  for (const auto& row : trace.rows) {
    values.push_back(column_of(row, column).value_or(std::nan("")));
  }
  return values;
}

std::vector<double> trace_iterations(const IterationTrace& trace) { return trace_column(trace, "n"); }

double objective(const ProblemInstance& problem, const Vector& x, const Vector* Kx) {
  Vector local;
  if (!Kx) {
    problem.K->apply(x, local);
    Kx = &local;
  }
  const double value = problem.f.value(x) + problem.g.value(*Kx) + problem.h.value(x);
  if (!std::isfinite(value)) throw NumericError("objective is not finite", 0);
  return value;
}

double lagrangian_gap(const ProblemInstance& problem, const Vector& x, const Vector& w, const Vector& y,
                      const ReferenceValue& phi_star) {
  if (phi_star.provenance.empty()) {
    throw ParameterError("lagrangian_gap: reference value has no provenance");
  }
  const Vector Kx = problem.K->apply(x);
  if (w.size() != Kx.size() || y.size() != Kx.size()) {
    throw DimensionError("lagrangian_gap: dual vectors do not match K's codomain");
  }
  const double phi = problem.f.value(x) + problem.h.value(x) + problem.g.value(w);
  return phi + y.dot(Kx - w) - phi_star.value;
}

double constraint_violation(const LinearOperator& K, const Vector& x_avg, const Vector& w_avg) {
  return (K.apply(x_avg) - w_avg).norm();
}

double psnr(const Vector& x, const Vector& x_true) {
  if (x.size() != x_true.size() || x.size() == 0) throw DimensionError("psnr: image sizes differ");
  const double mse = (x - x_true).squaredNorm() / static_cast<double>(x.size());
  if (mse == 0.0) return kInf;
  return 10.0 * std::log10(1.0 / mse);
}

FitResult loglog_slope(const std::vector<double>& n, const std::vector<double>& values, IterationWindow window) {
  if (n.size() != values.size()) throw DimensionError("loglog_slope: length mismatch");
  std::vector<double> xs, ys;
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < window.first || n[i] > window.last) continue;
    if (!(values[i] > 0.0) || !std::isfinite(values[i]) || !(n[i] > 0.0)) {
      ++dropped;
      continue;
    }
    xs.push_back(std::log(n[i]));
    ys.push_back(std::log(values[i]));
  }
  return least_squares_line(xs, ys, dropped);
}

FitResult loglog_slope(const IterationTrace& trace, std::string_view column, IterationWindow window) {
  return loglog_slope(trace_iterations(trace), trace_column(trace, column), window);
}

FitResult linear_rate_fit(const std::vector<double>& n, const std::vector<double>& values, double burn_in) {
  if (n.size() != values.size()) throw DimensionError("linear_rate_fit: length mismatch");
  std::vector<double> xs, ys;
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] <= burn_in) continue;
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      ++dropped;
      continue;
    }
    xs.push_back(n[i]);
    ys.push_back(std::log(values[i]));
  }
  return least_squares_line(xs, ys, dropped);
}

FitResult linear_rate_fit(const IterationTrace& trace, std::string_view column, double burn_in) {
  return linear_rate_fit(trace_iterations(trace), trace_column(trace, column), burn_in);
}

}  // namespace goldsplit
