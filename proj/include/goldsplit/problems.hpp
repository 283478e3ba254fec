#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "goldsplit/problem.hpp"
#include "goldsplit/solvers.hpp"

namespace goldsplit {

enum class Family { lasso, fused_lasso, logistic1, logistic2, graphnet, inpainting, strongly_convex };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

enum class LassoScheme { correlated, gaussian };

std::string_view to_string(LassoScheme scheme);
LassoScheme parse_lasso_scheme(std::string_view name);

/// Everything needed to regenerate an instance. Fields irrelevant to the
/// family are ignored.
struct GenSpec {
  Family family = Family::lasso;
  std::uint64_t seed = 0;

  Index m = 300;
  Index n = 1000;
  Index s = 10;
  LassoScheme scheme = LassoScheme::gaussian;
  double q = 0.5;

  double lambda = 0.1;
  double lambda1 = 0.001;
  double lambda2 = 0.03;

  // graphnet
  Index n1 = 30;
  Index n2 = 30;
  double alpha = 2.0;
  double sparsity_fraction = 0.05;

  // Standard deviation of the additive noise; negative selects the family default.
  double noise_sd = -1.0;

  // inpainting
  double missing_fraction = 0.3;
  std::string image_path;  // PGM; empty selects the synthetic test image
  Index image_rows = 32;
  Index image_cols = 32;

  // logistic
  std::string libsvm_path;  // empty selects the synthetic data set
  double density = 0.1;
  std::optional<double> logistic_lambda;  // setting 1; defaults to 0.005 |A^T b|_inf

  // strongly convex
  double ridge_eps = 1.0;

  /// Throws ParameterError on an invalid combination.
  void validate() const;
};

/// Per-family defaults (dimensions and regularization weights of the
/// published benchmark setups).
GenSpec default_spec(Family family);

/// Raw arrays of a generated instance: what gets written to disk. The
/// instance itself is rebuilt from these by `assemble`.
struct InstanceData {
  GenSpec spec;
  std::map<std::string, Matrix> dense;
  std::map<std::string, SparseMatrix> sparse;
  std::map<std::string, Vector> vectors;
  std::map<std::string, double> scalars;
  std::vector<std::string> notes;
  std::optional<ReferenceValue> F_star;
};

ProblemInstance assemble(const InstanceData& data);

InstanceData lasso_data(const GenSpec& spec);
InstanceData fused_lasso_data(const GenSpec& spec);
InstanceData logistic_data(const GenSpec& spec);
InstanceData graphnet_data(const GenSpec& spec);
InstanceData inpainting_data(const GenSpec& spec);
InstanceData strongly_convex_data(const GenSpec& spec);

/// Dispatches on spec.family.
InstanceData generate_data(const GenSpec& spec);
ProblemInstance generate(const GenSpec& spec);

ProblemInstance gen_lasso(Index m, Index n, Index s, LassoScheme scheme, double q, double lambda,
                          std::uint64_t seed);
ProblemInstance gen_fused_lasso(Index m, Index n, double lambda1, double lambda2, std::uint64_t seed);
/// A given as CSR with labels in {-1, +1}. Setting 1: K = I, g = lambda |.|_1
/// (lambda defaults to 0.005 |A^T b|_inf). Setting 2: f = lambda1 |.|_1,
/// g = lambda2 |.|_1, K = first differences.
ProblemInstance build_logistic(const SparseMatrix& A, const Vector& labels, int setting, double lambda1,
                               double lambda2, std::optional<double> lambda = std::nullopt);
ProblemInstance gen_graphnet(Index n1, Index n2, Index m, double alpha, double sparsity_fraction, double lambda1,
                             double lambda2, double noise_sd, std::uint64_t seed);
ProblemInstance gen_inpainting(const Matrix& image, double missing_fraction, double lambda, std::uint64_t seed);
ProblemInstance gen_strongly_convex(Index m, Index n, double ridge_eps, std::uint64_t seed);

double logistic_default_lambda(const SparseMatrix& A, const Vector& labels);

/// Sparse design with labels from a planted linear classifier.
std::pair<SparseMatrix, Vector> synthetic_logistic_data(Index m, Index n, double density, std::uint64_t seed);

/// Rectangles and a disc on a grey background, values in [0, 1].
Matrix synthetic_piecewise_image(Index rows, Index cols);

struct CgOptions {
  double tol = 1e-8;
  int max_iter = 1000;
};

struct CgResult {
  Vector x;
  int iterations = 0;
  double residual = 0.0;  // |(I + alpha W) x - rhs| / |rhs|
  bool converged = false;
};

/// Solves (I + alpha W) x = rhs for a symmetric positive semidefinite W.
/// Throws ContractError when W fails a randomized symmetry probe.
CgResult conjugate_gradient_solve(const LinearOperator& W, double alpha, const Vector& rhs,
                                  const CgOptions& options = {});

/// Tikhonov-smoothed field used as the GraphNet ground truth before thresholding.
Vector graphnet_smooth_signal(const Vector& x0, Index n1, Index n2, double alpha, const CgOptions& options = {});

/// Keeps the entries with |v_i| >= c, c the k-th largest magnitude. Ties at c
/// are all kept, so the count can exceed k.
Vector keep_largest(const Vector& v, Index k);

struct ReferenceRun {
  ReferenceValue F_star;
  Vector x;
  long iterations = 0;
};

/// F* from a long run of `config` with early exit, taking the smallest
/// objective value seen. The provenance string records the run.
ReferenceRun compute_reference_optimum(const ProblemInstance& problem, const SolverConfig& config);

/// The configuration used by default for reference runs: aEGRPDA, psi = 1.5.
SolverConfig default_reference_config(const ProblemInstance& problem, long iterations);

}  // namespace goldsplit
