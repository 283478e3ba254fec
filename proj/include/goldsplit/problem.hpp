#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "goldsplit/linops.hpp"
#include "goldsplit/prox.hpp"
#include "goldsplit/smooth.hpp"

namespace goldsplit {

/// A value together with a record of how it was obtained.
struct ReferenceValue {
  double value = 0.0;
  std::string provenance;
};

/// min_x f(x) + g(Kx) + h(x), plus the data needed to score a run.
struct ProblemInstance {
  std::string name;
  std::string family;
  std::uint64_t seed = 0;

  ProxOracle f = ProxOracle::zero();
  ProxOracle g = ProxOracle::zero();
  std::shared_ptr<const LinearOperator> K;
  SmoothOracle h = SmoothOracle::zero(0);

  Vector x0;  // default primal start
  Vector y0;  // default dual start

  std::optional<Vector> x_true;
  std::optional<ReferenceValue> F_star;
  std::optional<std::pair<Index, Index>> image_shape;  // set for image problems

  double k_norm = 0.0;  // power-iteration estimate of |K|
  std::vector<std::string> notes;

  Index primal_dim() const { return K ? K->domain_dim() : 0; }
  Index dual_dim() const { return K ? K->codomain_dim() : 0; }
  double lipschitz_bound() const { return h.lipschitz_bound(); }

  /// Throws DimensionError when the pieces disagree on shapes.
  void validate() const;
};

}  // namespace goldsplit
