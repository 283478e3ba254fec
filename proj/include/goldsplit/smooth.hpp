#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "goldsplit/linops.hpp"

namespace goldsplit {

enum class SmoothKind { zero, least_squares, masked_least_squares, logistic, quadratic_ridge, sum };

std::string_view to_string(SmoothKind kind);

/// The smooth term h with its gradient and a cached global smoothness bound.
class SmoothOracle {
 public:
  static SmoothOracle zero(Index dim);
  /// scale * 1/2 |A x - b|^2.
  static SmoothOracle least_squares(std::shared_ptr<const LinearOperator> A, Vector b, double scale = 1.0);
  /// 1/2 |M .* (x - b)|^2 with a binary mask M.
  static SmoothOracle masked_least_squares(Vector mask, Vector b);
  /// sum_i log(1 + exp(-b_i <a_i, x>)), labels in {-1, +1}.
  static SmoothOracle logistic(std::shared_ptr<const LinearOperator> A, Vector labels);
  /// eps/2 |x|^2.
  static SmoothOracle quadratic_ridge(Index dim, double eps);
  static SmoothOracle sum(std::vector<SmoothOracle> terms);

  SmoothKind kind() const noexcept { return kind_; }
  Index dim() const noexcept { return dim_; }
  bool is_zero() const noexcept { return kind_ == SmoothKind::zero; }
  /// Global Lipschitz constant of the gradient (L-bar); power-iteration based
  /// for operator-backed terms.
  double lipschitz_bound() const noexcept { return lipschitz_; }

  double value(const Vector& x) const;
  void gradient(const Vector& x, Vector& out) const;
  Vector gradient(const Vector& x) const;

  const std::vector<SmoothOracle>& terms() const noexcept { return terms_; }
  const LinearOperator* design() const noexcept { return A_.get(); }
  const Vector& response() const noexcept { return b_; }
  const Vector& mask() const noexcept { return mask_; }
  double scale() const noexcept { return scale_; }

 private:
  SmoothOracle(SmoothKind kind, Index dim);

  SmoothKind kind_;
  Index dim_;
  std::shared_ptr<const LinearOperator> A_;
  Vector b_;
  Vector mask_;
  double scale_ = 1.0;
  double lipschitz_ = 0.0;
  std::vector<SmoothOracle> terms_;
};

/// Numerically stable log(1 + exp(t)).
double softplus(double t);

}  // namespace goldsplit
