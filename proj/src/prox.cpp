#include "goldsplit/prox.hpp"

#include <cmath>

namespace goldsplit {

namespace {

void require_nonnegative(double value, const char* what) {
  if (!(value >= 0.0)) {
    throw ParameterError(std::string(what) + " must be nonnegative, got " + std::to_string(value));
  }
}

void soft_threshold(const Vector& v, double threshold, Vector& out) {
  out.resize(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]) - threshold;
    out[i] = a > 0.0 ? std::copysign(a, v[i]) : 0.0;
  }
}

void group_shrink(const Vector& v, double threshold, Vector& out) {
  if (v.size() % 2 != 0) {
    throw DimensionError("group_l21 needs an even-length two-channel field, got " +
                         std::to_string(v.size()));
  }
  const Index pixels = v.size() / 2;
  out.resize(v.size());
  for (Index p = 0; p < pixels; ++p) {
    const double a = v[p];
    const double b = v[pixels + p];
    const double norm = std::hypot(a, b);
    const double scale = norm > threshold ? 1.0 - threshold / norm : 0.0;
    out[p] = scale * a;
    out[pixels + p] = scale * b;
  }
}

}  // namespace

std::string_view to_string(ProxKind kind) {
  switch (kind) {
    case ProxKind::zero: return "zero";
    case ProxKind::l1: return "l1";
    case ProxKind::group_l21: return "group_l21";
    case ProxKind::sq_l2_translated: return "sq_l2_translated";
    case ProxKind::scaled_sq_l2: return "scaled_sq_l2";
  }
  return "unknown";
}

ProxOracle::ProxOracle(ProxKind kind, double weight, Vector b, Index groups)
    : kind_(kind), weight_(weight), b_(std::move(b)), groups_(groups) {}

ProxOracle ProxOracle::zero() { return {ProxKind::zero, 0.0, Vector(), 0}; }

ProxOracle ProxOracle::l1(double weight) {
  require_nonnegative(weight, "l1 weight");
  return {ProxKind::l1, weight, Vector(), 0};
}

ProxOracle ProxOracle::group_l21(double weight, Index pixels) {
  require_nonnegative(weight, "group_l21 weight");
  if (pixels < 1) throw DimensionError("group_l21 needs at least one pixel");
  return {ProxKind::group_l21, weight, Vector(), pixels};
}

ProxOracle ProxOracle::sq_l2_translated(double weight, Vector b) {
  if (!(weight > 0.0)) throw ParameterError("squared-l2 weight must be positive");
  return {ProxKind::sq_l2_translated, weight, std::move(b), 0};
}

ProxOracle ProxOracle::scaled_sq_l2(double weight) {
  require_nonnegative(weight, "squared-l2 weight");
  return {ProxKind::scaled_sq_l2, weight, Vector(), 0};
}

double ProxOracle::value(const Vector& v) const {
  switch (kind_) {
    case ProxKind::zero: return 0.0;
    case ProxKind::l1: return weight_ * v.lpNorm<1>();
    case ProxKind::group_l21: {
      if (v.size() != 2 * groups_) throw DimensionError("group_l21 value: field size mismatch");
      double total = 0.0;
      for (Index p = 0; p < groups_; ++p) total += std::hypot(v[p], v[groups_ + p]);
      return weight_ * total;
    }
    case ProxKind::sq_l2_translated:
      if (v.size() != b_.size()) throw DimensionError("squared-l2 value: size mismatch");
      return 0.5 * weight_ * (v - b_).squaredNorm();
    case ProxKind::scaled_sq_l2: return 0.5 * weight_ * v.squaredNorm();
  }
  return 0.0;
}

void ProxOracle::prox(const Vector& v, double t, Vector& out) const {
  require_nonnegative(t, "prox step");
  switch (kind_) {
    case ProxKind::zero: out = v; return;
    case ProxKind::l1: soft_threshold(v, t * weight_, out); return;
    case ProxKind::group_l21:
      if (v.size() != 2 * groups_) throw DimensionError("group_l21 prox: field size mismatch");
      group_shrink(v, t * weight_, out);
      return;
    case ProxKind::sq_l2_translated:
      if (v.size() != b_.size()) throw DimensionError("squared-l2 prox: size mismatch");
      out = (v + (t * weight_) * b_) / (1.0 + t * weight_);
      return;
    case ProxKind::scaled_sq_l2: out = v / (1.0 + t * weight_); return;
  }
}

Vector ProxOracle::prox(const Vector& v, double t) const {
  Vector out;
  prox(v, t, out);
  return out;
}

void ProxOracle::conjugate_prox(const Vector& v, double sigma, Vector& out, Vector* primal_part) const {
  if (!(sigma > 0.0)) throw ParameterError("conjugate prox needs sigma > 0");
  Vector scaled = v / sigma;
  Vector p;
  prox(scaled, 1.0 / sigma, p);
  out = v - sigma * p;
  if (primal_part) *primal_part = std::move(p);
}

Vector prox_zero(const Vector& v, double t) { return ProxOracle::zero().prox(v, t); }

Vector prox_l1(const Vector& v, double t, double lambda) {
  require_nonnegative(t, "prox step");
  return ProxOracle::l1(lambda).prox(v, t);
}

Vector prox_group_l21(const Vector& v, double t, double lambda) {
  if (v.size() % 2 != 0 || v.size() == 0) {
    throw DimensionError("group_l21 needs a non-empty two-channel field");
  }
  return ProxOracle::group_l21(lambda, v.size() / 2).prox(v, t);
}

Vector prox_sq_l2(const Vector& v, double t, double weight, const Vector& b) {
  return ProxOracle::sq_l2_translated(weight, b).prox(v, t);
}

Vector moreau_conjugate_prox(const ProxOracle& g, const Vector& v, double sigma) {
  Vector out;
  g.conjugate_prox(v, sigma, out);
  return out;
}

}  // namespace goldsplit
