#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <memory>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "goldsplit/types.hpp"

namespace goldsplit {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

enum class OperatorKind {
  dense,
  sparse_csr,
  first_difference,
  grid_incidence,
  discrete_gradient_2d,
  identity,
  gram,  // D^T D of another operator
};

std::string_view to_string(OperatorKind kind);

struct Shape {
  Index domain_dim = 0;
  Index codomain_dim = 0;
};

/// The linear map K of the composite model together with its adjoint.
///
/// Operators are immutable once built; apply/apply_adjoint are const and
/// reentrant. Image-shaped operators use row-major pixel order, and the 2-D
/// gradient stacks its horizontal channel before its vertical channel.
class LinearOperator {
 public:
  static LinearOperator dense(Matrix values);
  static LinearOperator sparse(SparseMatrix values);
  static LinearOperator first_difference(Index n);
  static LinearOperator grid_incidence(Index n1, Index n2);
  static LinearOperator discrete_gradient_2d(Index rows, Index cols);
  static LinearOperator identity(Index n);
  static LinearOperator gram(std::shared_ptr<const LinearOperator> inner);

  OperatorKind kind() const noexcept { return kind_; }
  Shape shape() const noexcept { return shape_; }
  Index domain_dim() const noexcept { return shape_.domain_dim; }
  Index codomain_dim() const noexcept { return shape_.codomain_dim; }

  void apply(const Vector& x, Vector& out) const;
  void apply_adjoint(const Vector& y, Vector& out) const;
  Vector apply(const Vector& x) const;
  Vector apply_adjoint(const Vector& y) const;

  /// Dense materialization, column by column. Meant for small operators.
  Matrix to_dense() const;

  // Kind-specific payload access; throw ParameterError on the wrong kind.
  const Matrix& dense_values() const;
  const SparseMatrix& csr_values() const;
  std::pair<Index, Index> grid_dims() const;

 private:
  struct DenseData {
    Matrix values;
  };
  struct FirstDifferenceData {
    Index n;
  };
  struct GridData {
    Index n1, n2;
  };
  struct GradientData {
    Index rows, cols;
  };
  struct IdentityData {
    Index n;
  };
  struct GramData {
    std::shared_ptr<const LinearOperator> inner;
  };
  using Payload = std::variant<DenseData, SparseMatrix, FirstDifferenceData, GridData, GradientData,
                               IdentityData, GramData>;

  LinearOperator(OperatorKind kind, Shape shape, Payload payload);

  OperatorKind kind_;
  Shape shape_;
  Payload payload_;
};

LinearOperator first_difference(Index n);
LinearOperator grid_incidence(Index n1, Index n2);
LinearOperator discrete_gradient_2d(Index rows, Index cols);
LinearOperator identity_operator(Index n);

/// W = D^T D for a grid-incidence or CSR incidence operator D.
LinearOperator graph_laplacian(std::shared_ptr<const LinearOperator> incidence);

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Canonical CSR (sorted columns, duplicates summed). Throws DimensionError on
/// an out-of-range index.
SparseMatrix sparse_from_triplets(Index n_rows, Index n_cols, const std::vector<Triplet>& triplets);
LinearOperator csr_from_triplets(Index n_rows, Index n_cols, const std::vector<Triplet>& triplets);

struct PowerIterationOptions {
  double tol = 1e-8;
  int max_iter = 5000;
  std::uint64_t seed = 0;
};

/// sqrt of the largest eigenvalue of K^T K by power iteration from a seeded
/// random start. The returned value is the largest Rayleigh quotient seen, so
/// it never decreases when max_iter grows. Zero operator -> 0.
double estimate_operator_norm(const LinearOperator& op, const PowerIterationOptions& options = {});

}  // namespace goldsplit
