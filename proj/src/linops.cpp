#include "goldsplit/linops.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace goldsplit {

namespace {

void require_positive(Index value, const char* what) {
  if (value < 1) {
    throw DimensionError(std::string(what) + " must be at least 1, got " + std::to_string(value));
  }
}

void check_size(const Vector& v, Index expected, const char* what) {
  if (v.size() != expected) {
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(expected) +
                         ", got " + std::to_string(v.size()));
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::dense: return "dense";
    case OperatorKind::sparse_csr: return "sparse_csr";
    case OperatorKind::first_difference: return "first_difference";
    case OperatorKind::grid_incidence: return "grid_incidence";
    case OperatorKind::discrete_gradient_2d: return "discrete_gradient_2d";
    case OperatorKind::identity: return "identity";
    case OperatorKind::gram: return "gram";
  }
  return "unknown";
}

LinearOperator::LinearOperator(OperatorKind kind, Shape shape, Payload payload)
    : kind_(kind), shape_(shape), payload_(std::move(payload)) {}

LinearOperator LinearOperator::dense(Matrix values) {
  require_positive(values.rows(), "dense operator rows");
  require_positive(values.cols(), "dense operator cols");
  Shape shape{values.cols(), values.rows()};
  return {OperatorKind::dense, shape, DenseData{std::move(values)}};
}

LinearOperator LinearOperator::sparse(SparseMatrix values) {
  require_positive(values.rows(), "sparse operator rows");
  require_positive(values.cols(), "sparse operator cols");
  values.makeCompressed();
  Shape shape{values.cols(), values.rows()};
  return {OperatorKind::sparse_csr, shape, std::move(values)};
}

LinearOperator LinearOperator::first_difference(Index n) {
  if (n < 2) {
    throw DimensionError("first_difference needs n >= 2, got " + std::to_string(n));
  }
  return {OperatorKind::first_difference, Shape{n, n - 1}, FirstDifferenceData{n}};
}

LinearOperator LinearOperator::grid_incidence(Index n1, Index n2) {
  require_positive(n1, "grid rows");
  require_positive(n2, "grid cols");
  const Index edges = n1 * (n2 - 1) + n2 * (n1 - 1);
  if (edges < 1) {
    throw DimensionError("grid " + std::to_string(n1) + "x" + std::to_string(n2) + " has no edges");
  }
  return {OperatorKind::grid_incidence, Shape{n1 * n2, edges}, GridData{n1, n2}};
}

LinearOperator LinearOperator::discrete_gradient_2d(Index rows, Index cols) {
  require_positive(rows, "image rows");
  require_positive(cols, "image cols");
  return {OperatorKind::discrete_gradient_2d, Shape{rows * cols, 2 * rows * cols},
          GradientData{rows, cols}};
}

LinearOperator LinearOperator::identity(Index n) {
  require_positive(n, "identity size");
  return {OperatorKind::identity, Shape{n, n}, IdentityData{n}};
}

LinearOperator LinearOperator::gram(std::shared_ptr<const LinearOperator> inner) {
  if (!inner) throw ParameterError("gram operator needs an inner operator");
  const Index n = inner->domain_dim();
  return {OperatorKind::gram, Shape{n, n}, GramData{std::move(inner)}};
}

void LinearOperator::apply(const Vector& x, Vector& out) const {
  check_size(x, shape_.domain_dim, "apply");
  out.resize(shape_.codomain_dim);
  std::visit(
      Overloaded{
          [&](const DenseData& d) { out.noalias() = d.values * x; },
          [&](const SparseMatrix& s) { out.noalias() = s * x; },
          [&](const FirstDifferenceData& d) {
            for (Index k = 0; k + 1 < d.n; ++k) out[k] = x[k + 1] - x[k];
          },
          [&](const GridData& g) {
            Index e = 0;
            for (Index r = 0; r < g.n1; ++r) {
              for (Index c = 0; c + 1 < g.n2; ++c) {
                const Index i = r * g.n2 + c;
                out[e++] = x[i + 1] - x[i];
              }
            }
            for (Index r = 0; r + 1 < g.n1; ++r) {
              for (Index c = 0; c < g.n2; ++c) {
                const Index i = r * g.n2 + c;
                out[e++] = x[i + g.n2] - x[i];
              }
            }
          },
          [&](const GradientData& g) {
            const Index pixels = g.rows * g.cols;
            for (Index r = 0; r < g.rows; ++r) {
              for (Index c = 0; c < g.cols; ++c) {
                const Index p = r * g.cols + c;
                out[p] = (c + 1 < g.cols) ? x[p + 1] - x[p] : 0.0;
                out[pixels + p] = (r + 1 < g.rows) ? x[p + g.cols] - x[p] : 0.0;
              }
            }
          },
          [&](const IdentityData&) { out = x; },
          [&](const GramData& g) {
            Vector tmp;
            g.inner->apply(x, tmp);
            g.inner->apply_adjoint(tmp, out);
          },
      },
      payload_);
}

void LinearOperator::apply_adjoint(const Vector& y, Vector& out) const {
  check_size(y, shape_.codomain_dim, "apply_adjoint");
  out.resize(shape_.domain_dim);
  std::visit(
      Overloaded{
          [&](const DenseData& d) { out.noalias() = d.values.transpose() * y; },
          [&](const SparseMatrix& s) { out.noalias() = s.transpose() * y; },
          [&](const FirstDifferenceData& d) {
            out.setZero();
            for (Index k = 0; k + 1 < d.n; ++k) {
              out[k] -= y[k];
              out[k + 1] += y[k];
            }
          },
          [&](const GridData& g) {
            out.setZero();
            Index e = 0;
            for (Index r = 0; r < g.n1; ++r) {
              for (Index c = 0; c + 1 < g.n2; ++c) {
                const Index i = r * g.n2 + c;
                out[i] -= y[e];
                out[i + 1] += y[e];
                ++e;
              }
            }
            for (Index r = 0; r + 1 < g.n1; ++r) {
              for (Index c = 0; c < g.n2; ++c) {
                const Index i = r * g.n2 + c;
                out[i] -= y[e];
                out[i + g.n2] += y[e];
                ++e;
              }
            }
          },
          [&](const GradientData& g) {
            // -div with the boundary convention matching apply().
            const Index pixels = g.rows * g.cols;
            for (Index r = 0; r < g.rows; ++r) {
              for (Index c = 0; c < g.cols; ++c) {
                const Index p = r * g.cols + c;
                double v = 0.0;
                if (c + 1 < g.cols) v -= y[p];
                if (c > 0) v += y[p - 1];
                if (r + 1 < g.rows) v -= y[pixels + p];
                if (r > 0) v += y[pixels + p - g.cols];
                out[p] = v;
              }
            }
          },
          [&](const IdentityData&) { out = y; },
          [&](const GramData& g) {
            Vector tmp;
            g.inner->apply(y, tmp);
            g.inner->apply_adjoint(tmp, out);
          },
      },
      payload_);
}

Vector LinearOperator::apply(const Vector& x) const {
  Vector out;
  apply(x, out);
  return out;
}

Vector LinearOperator::apply_adjoint(const Vector& y) const {
  Vector out;
  apply_adjoint(y, out);
  return out;
}

Matrix LinearOperator::to_dense() const {
  Matrix m(shape_.codomain_dim, shape_.domain_dim);
  Vector e = Vector::Zero(shape_.domain_dim);
  Vector col;
  for (Index j = 0; j < shape_.domain_dim; ++j) {
    e[j] = 1.0;
    apply(e, col);
    m.col(j) = col;
    e[j] = 0.0;
  }
  return m;
}

const Matrix& LinearOperator::dense_values() const {
  if (const auto* d = std::get_if<DenseData>(&payload_)) return d->values;
  throw ParameterError("operator is not dense");
}

const SparseMatrix& LinearOperator::csr_values() const {
  if (const auto* s = std::get_if<SparseMatrix>(&payload_)) return *s;
  throw ParameterError("operator is not sparse_csr");
}

std::pair<Index, Index> LinearOperator::grid_dims() const {
  if (const auto* g = std::get_if<GridData>(&payload_)) return {g->n1, g->n2};
  if (const auto* g = std::get_if<GradientData>(&payload_)) return {g->rows, g->cols};
  throw ParameterError("operator has no grid dimensions");
}

LinearOperator first_difference(Index n) { return LinearOperator::first_difference(n); }
LinearOperator grid_incidence(Index n1, Index n2) { return LinearOperator::grid_incidence(n1, n2); }
LinearOperator discrete_gradient_2d(Index rows, Index cols) {
  return LinearOperator::discrete_gradient_2d(rows, cols);
}
LinearOperator identity_operator(Index n) { return LinearOperator::identity(n); }

LinearOperator graph_laplacian(std::shared_ptr<const LinearOperator> incidence) {
  if (!incidence) throw ParameterError("graph_laplacian: null incidence operator");
  const auto kind = incidence->kind();
  if (kind != OperatorKind::grid_incidence && kind != OperatorKind::sparse_csr &&
      kind != OperatorKind::first_difference) {
    throw ParameterError("graph_laplacian expects an incidence operator, got " +
                         std::string(to_string(kind)));
  }
  return LinearOperator::gram(std::move(incidence));
}

SparseMatrix sparse_from_triplets(Index n_rows, Index n_cols, const std::vector<Triplet>& triplets) {
  if (n_rows < 0 || n_cols < 0) throw DimensionError("negative sparse matrix dimensions");
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(triplets.size());
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols) {
      throw DimensionError("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                           ") outside " + std::to_string(n_rows) + "x" + std::to_string(n_cols));
    }
    entries.emplace_back(static_cast<int>(t.row), static_cast<int>(t.col), t.value);
  }
  SparseMatrix m(n_rows, n_cols);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

LinearOperator csr_from_triplets(Index n_rows, Index n_cols, const std::vector<Triplet>& triplets) {
  return LinearOperator::sparse(sparse_from_triplets(n_rows, n_cols, triplets));
}

double estimate_operator_norm(const LinearOperator& op, const PowerIterationOptions& options) {
  if (!(options.tol > 0.0)) throw ParameterError("power iteration tolerance must be positive");
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Vector v(op.domain_dim());
  for (Index i = 0; i < v.size(); ++i) v[i] = normal(rng);
  v.normalize();

  Vector kv, w;
  double best = 0.0;
  double previous = 0.0;
  for (int it = 0; it < options.max_iter; ++it) {
    op.apply(v, kv);
    const double rayleigh = kv.squaredNorm();  // <v, K^T K v> with |v| = 1
    best = std::max(best, rayleigh);
    if (rayleigh == 0.0) break;
    op.apply_adjoint(kv, w);
    const double wn = w.norm();
    if (wn == 0.0) break;
    v = w / wn;
    if (it > 0 && std::abs(rayleigh - previous) <= options.tol * rayleigh) break;
    previous = rayleigh;
  }
  return std::sqrt(best);
}

}  // namespace goldsplit
