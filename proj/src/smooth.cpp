#include "goldsplit/smooth.hpp"

#include <algorithm>
#include <cmath>

namespace goldsplit {

namespace {

void check_dim(const Vector& x, Index dim) {
  if (x.size() != dim) {
    throw DimensionError("smooth oracle: expected length " + std::to_string(dim) + ", got " +
                         std::to_string(x.size()));
  }
}

// 1 / (1 + exp(t)) without overflow.
double logistic_weight(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

}  // namespace

double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

std::string_view to_string(SmoothKind kind) {
  switch (kind) {
    case SmoothKind::zero: return "zero";
    case SmoothKind::least_squares: return "least_squares";
    case SmoothKind::masked_least_squares: return "masked_least_squares";
    case SmoothKind::logistic: return "logistic";
    case SmoothKind::quadratic_ridge: return "quadratic_ridge";
    case SmoothKind::sum: return "sum";
  }
  return "unknown";
}

SmoothOracle::SmoothOracle(SmoothKind kind, Index dim) : kind_(kind), dim_(dim) {}

SmoothOracle SmoothOracle::zero(Index dim) { return {SmoothKind::zero, dim}; }

SmoothOracle SmoothOracle::least_squares(std::shared_ptr<const LinearOperator> A, Vector b, double scale) {
  if (!A) throw ParameterError("least_squares: null design operator");
  if (b.size() != A->codomain_dim()) throw DimensionError("least_squares: response length mismatch");
  if (!(scale > 0.0)) throw ParameterError("least_squares: scale must be positive");
  SmoothOracle h(SmoothKind::least_squares, A->domain_dim());
  const double norm = estimate_operator_norm(*A);
  h.A_ = std::move(A);
  h.b_ = std::move(b);
  h.scale_ = scale;
  h.lipschitz_ = scale * norm * norm;
  return h;
}

SmoothOracle SmoothOracle::masked_least_squares(Vector mask, Vector b) {
  if (mask.size() != b.size()) throw DimensionError("masked_least_squares: mask/data length mismatch");
  for (Index i = 0; i < mask.size(); ++i) {
    if (mask[i] != 0.0 && mask[i] != 1.0) {
      throw DataError("mask entry " + std::to_string(i) + " is not in {0, 1}");
    }
  }
  SmoothOracle h(SmoothKind::masked_least_squares, mask.size());
  h.lipschitz_ = mask.size() > 0 && mask.maxCoeff() > 0.0 ? 1.0 : 0.0;
  h.mask_ = std::move(mask);
  h.b_ = std::move(b);
  return h;
}

SmoothOracle SmoothOracle::logistic(std::shared_ptr<const LinearOperator> A, Vector labels) {
  if (!A) throw ParameterError("logistic: null design operator");
  if (labels.size() != A->codomain_dim()) throw DimensionError("logistic: label count mismatch");
  for (Index i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1.0 && labels[i] != -1.0) {
      throw DataError("label " + std::to_string(i) + " is not in {-1, +1}");
    }
  }
  SmoothOracle h(SmoothKind::logistic, A->domain_dim());
  const double norm = estimate_operator_norm(*A);
  h.A_ = std::move(A);
  h.b_ = std::move(labels);
  h.lipschitz_ = 0.25 * norm * norm;
  return h;
}

SmoothOracle SmoothOracle::quadratic_ridge(Index dim, double eps) {
  if (!(eps >= 0.0)) throw ParameterError("ridge weight must be nonnegative");
  SmoothOracle h(SmoothKind::quadratic_ridge, dim);
  h.scale_ = eps;
  h.lipschitz_ = eps;
  return h;
}

SmoothOracle SmoothOracle::sum(std::vector<SmoothOracle> terms) {
  if (terms.empty()) throw ParameterError("sum of smooth terms needs at least one term");
  const Index dim = terms.front().dim();
  SmoothOracle h(SmoothKind::sum, dim);
  for (const auto& t : terms) {
    if (t.dim() != dim) throw DimensionError("sum: smooth terms disagree on dimension");
    h.lipschitz_ += t.lipschitz_bound();
  }
  h.terms_ = std::move(terms);
  return h;
}

double SmoothOracle::value(const Vector& x) const {
  check_dim(x, dim_);
  switch (kind_) {
    case SmoothKind::zero: return 0.0;
    case SmoothKind::least_squares: return 0.5 * scale_ * (A_->apply(x) - b_).squaredNorm();
    case SmoothKind::masked_least_squares: return 0.5 * (mask_.cwiseProduct(x - b_)).squaredNorm();
    case SmoothKind::logistic: {
      const Vector margins = A_->apply(x);
      double total = 0.0;
      for (Index i = 0; i < margins.size(); ++i) total += softplus(-b_[i] * margins[i]);
      return total;
    }
    case SmoothKind::quadratic_ridge: return 0.5 * scale_ * x.squaredNorm();
    case SmoothKind::sum: {
      double total = 0.0;
      for (const auto& t : terms_) total += t.value(x);
      return total;
    }
  }
  return 0.0;
}

void SmoothOracle::gradient(const Vector& x, Vector& out) const {
  check_dim(x, dim_);
  switch (kind_) {
    case SmoothKind::zero: out.setZero(dim_); return;
    case SmoothKind::least_squares: {
      Vector residual = A_->apply(x) - b_;
      A_->apply_adjoint(residual, out);
      out *= scale_;
      return;
    }
    case SmoothKind::masked_least_squares:
      // M is binary so M .* M = M.
      out = mask_.cwiseProduct(x - b_);
      return;
    case SmoothKind::logistic: {
      Vector coeff = A_->apply(x);
      for (Index i = 0; i < coeff.size(); ++i) coeff[i] = -b_[i] * logistic_weight(b_[i] * coeff[i]);
      A_->apply_adjoint(coeff, out);
      return;
    }
    case SmoothKind::quadratic_ridge: out = scale_ * x; return;
    case SmoothKind::sum: {
      out.setZero(dim_);
      Vector part;
      for (const auto& t : terms_) {
        t.gradient(x, part);
        out += part;
      }
      return;
    }
  }
}

Vector SmoothOracle::gradient(const Vector& x) const {
  Vector out;
  gradient(x, out);
  return out;
}

}  // namespace goldsplit
