#pragma once

#include <string_view>

#include "goldsplit/types.hpp"

namespace goldsplit {

enum class ProxKind {
  zero,              // 0
  l1,                // weight * |v|_1
  group_l21,         // weight * sum_p |(v_p, v_{P+p})|_2, channels stacked
  sq_l2_translated,  // weight/2 * |v - b|^2
  scaled_sq_l2,      // weight/2 * |v|^2
};

std::string_view to_string(ProxKind kind);

/// A proper closed convex function with a closed-form proximal map.
class ProxOracle {
 public:
  static ProxOracle zero();
  static ProxOracle l1(double weight);
  static ProxOracle group_l21(double weight, Index pixels);
  static ProxOracle sq_l2_translated(double weight, Vector b);
  static ProxOracle scaled_sq_l2(double weight);

  ProxKind kind() const noexcept { return kind_; }
  double weight() const noexcept { return weight_; }
  const Vector& translation() const noexcept { return b_; }
  Index groups() const noexcept { return groups_; }

  double value(const Vector& v) const;

  /// prox_{t * this}(v) = argmin_u this(u) + |u - v|^2 / (2t).
  void prox(const Vector& v, double t, Vector& out) const;
  Vector prox(const Vector& v, double t) const;

  /// prox_{sigma * this^*}(v) through the Moreau decomposition,
  /// v - sigma * prox_{this / sigma}(v / sigma). When `primal_part` is given it
  /// receives prox_{this / sigma}(v / sigma).
  void conjugate_prox(const Vector& v, double sigma, Vector& out, Vector* primal_part = nullptr) const;

 private:
  ProxOracle(ProxKind kind, double weight, Vector b, Index groups);

  ProxKind kind_;
  double weight_;
  Vector b_;
  Index groups_;
};

// Componentwise maps behind the oracle kinds.
Vector prox_zero(const Vector& v, double t);
Vector prox_l1(const Vector& v, double t, double lambda);
Vector prox_group_l21(const Vector& v, double t, double lambda);
Vector prox_sq_l2(const Vector& v, double t, double weight, const Vector& b);
Vector moreau_conjugate_prox(const ProxOracle& g, const Vector& v, double sigma);

}  // namespace goldsplit
