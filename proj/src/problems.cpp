#include "goldsplit/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "goldsplit/io.hpp"

namespace goldsplit {

namespace {

using Rng = std::mt19937_64;

Matrix normal_matrix(Index rows, Index cols, double sd, Rng& rng) {
  std::normal_distribution<double> dist(0.0, sd);
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) out(i, j) = dist(rng);
  }
  return out;
}

Vector normal_vector(Index n, double sd, Rng& rng) {
  std::normal_distribution<double> dist(0.0, sd);
  Vector out(n);
  for (Index i = 0; i < n; ++i) out(i) = dist(rng);
  return out;
}

// k distinct positions out of n, uniformly, in sampling order.
std::vector<Index> sample_without_replacement(Index n, Index k, Rng& rng) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
  }
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

const Matrix& need_dense(const InstanceData& d, const std::string& key) {
  auto it = d.dense.find(key);
  if (it == d.dense.end()) throw DataError("instance data lacks dense array '" + key + "'");
  return it->second;
}

const SparseMatrix& need_sparse(const InstanceData& d, const std::string& key) {
  auto it = d.sparse.find(key);
  if (it == d.sparse.end()) throw DataError("instance data lacks sparse array '" + key + "'");
  return it->second;
}

const Vector& need_vector(const InstanceData& d, const std::string& key) {
  auto it = d.vectors.find(key);
  if (it == d.vectors.end()) throw DataError("instance data lacks vector '" + key + "'");
  return it->second;
}

std::optional<Vector> maybe_vector(const InstanceData& d, const std::string& key) {
  auto it = d.vectors.find(key);
  if (it == d.vectors.end()) return std::nullopt;
  return it->second;
}

double need_scalar(const InstanceData& d, const std::string& key) {
  auto it = d.scalars.find(key);
  if (it == d.scalars.end()) throw DataError("instance data lacks scalar '" + key + "'");
  return it->second;
}

double noise_or(const GenSpec& spec, double fallback) { return spec.noise_sd >= 0.0 ? spec.noise_sd : fallback; }

std::string instance_name(const GenSpec& spec, const std::string& dims) {
  return std::string(to_string(spec.family)) + "-" + dims + "-seed" + std::to_string(spec.seed);
}

template <class T>
std::string join_dims(std::initializer_list<T> values) {
  std::ostringstream os;
  bool first = true;
  for (auto v : values) {
    if (!first) os << 'x';
    os << v;
    first = false;
  }
  return os.str();
}

InstanceData inpainting_from_image(const GenSpec& spec, const Matrix& image) {
  if (image.size() == 0) throw DataError("inpainting: empty image");
  if (image.minCoeff() < 0.0 || image.maxCoeff() > 1.0) throw DataError("inpainting: pixel values outside [0, 1]");
  InstanceData d;
  d.spec = spec;
  const Index rows = image.rows(), cols = image.cols(), pixels = rows * cols;
  d.spec.image_rows = rows;
  d.spec.image_cols = cols;
  Vector x_true(pixels);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) x_true(i * cols + j) = image(i, j);
  }
  Rng rng(spec.seed);
  const auto missing = static_cast<Index>(std::floor(spec.missing_fraction * static_cast<double>(pixels)));
  Vector mask = Vector::Ones(pixels);
  for (Index i : sample_without_replacement(pixels, missing, rng)) mask(i) = 0.0;
  d.vectors["b"] = mask.cwiseProduct(x_true);
  d.vectors["mask"] = std::move(mask);
  d.vectors["x_true"] = std::move(x_true);
  d.scalars["rows"] = static_cast<double>(rows);
  d.scalars["cols"] = static_cast<double>(cols);
  return d;
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::lasso: return "lasso";
    case Family::fused_lasso: return "fused_lasso";
    case Family::logistic1: return "logistic1";
    case Family::logistic2: return "logistic2";
    case Family::graphnet: return "graphnet";
    case Family::inpainting: return "inpainting";
    case Family::strongly_convex: return "strongly_convex";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (auto f : {Family::lasso, Family::fused_lasso, Family::logistic1, Family::logistic2, Family::graphnet,
                 Family::inpainting, Family::strongly_convex}) {
    if (to_string(f) == name) return f;
  }
  throw ParameterError("unknown problem family '" + std::string(name) + "'");
}

std::string_view to_string(LassoScheme scheme) {
  return scheme == LassoScheme::correlated ? "correlated" : "gaussian";
}

LassoScheme parse_lasso_scheme(std::string_view name) {
  if (name == "correlated" || name == "i") return LassoScheme::correlated;
  if (name == "gaussian" || name == "ii") return LassoScheme::gaussian;
  throw ParameterError("unknown lasso scheme '" + std::string(name) + "'");
}

GenSpec default_spec(Family family) {
  GenSpec s;
  s.family = family;
  switch (family) {
    case Family::lasso: break;
    case Family::fused_lasso:
      s.m = 500;
      s.n = 1000;
      s.lambda1 = 0.001;
      s.lambda2 = 0.03;
      break;
    case Family::logistic1:
    case Family::logistic2:
      s.m = 500;
      s.n = 100;
      s.lambda1 = 1.0;
      s.lambda2 = 150.0;
      break;
    case Family::graphnet:
      s.m = 300;
      s.lambda1 = 6.64e-6;
      s.lambda2 = 1e-6;
      break;
    case Family::inpainting: s.lambda = 1e-2; break;
    case Family::strongly_convex:
      s.m = 200;
      s.n = 50;
      s.lambda = 0.1;
      break;
  }
  return s;
}

void GenSpec::validate() const {
  auto positive = [](Index v, const char* what) {
    if (v <= 0) throw ParameterError(std::string(what) + " must be positive");
  };
  auto nonneg = [](double v, const char* what) {
    if (!(v >= 0.0)) throw ParameterError(std::string(what) + " must be nonnegative");
  };
  switch (family) {
    case Family::lasso:
      positive(m, "m");
      positive(n, "n");
      if (s < 0 || s > n) throw ParameterError("s must lie in [0, n]");
      if (scheme == LassoScheme::correlated && !(q > 0.0 && q < 1.0)) {
        throw ParameterError("q must lie in (0, 1) for the correlated scheme");
      }
      nonneg(lambda, "lambda");
      break;
    case Family::fused_lasso:
      positive(m, "m");
      positive(n, "n");
      nonneg(lambda1, "lambda1");
      nonneg(lambda2, "lambda2");
      break;
    case Family::logistic1:
    case Family::logistic2:
      if (libsvm_path.empty()) {
        positive(m, "m");
        positive(n, "n");
        if (!(density > 0.0 && density <= 1.0)) throw ParameterError("density must lie in (0, 1]");
      }
      nonneg(lambda1, "lambda1");
      nonneg(lambda2, "lambda2");
      if (logistic_lambda) nonneg(*logistic_lambda, "lambda");
      break;
    case Family::graphnet:
      positive(n1, "n1");
      positive(n2, "n2");
      positive(m, "m");
      nonneg(alpha, "alpha");
      if (!(sparsity_fraction > 0.0 && sparsity_fraction <= 1.0)) {
        throw ParameterError("sparsity_fraction must lie in (0, 1]");
      }
      if (static_cast<Index>(std::floor(sparsity_fraction * static_cast<double>(n1 * n2))) == 0) {
        throw ParameterError("sparsity_fraction keeps no entry of the grid signal");
      }
      nonneg(lambda1, "lambda1");
      nonneg(lambda2, "lambda2");
      break;
    case Family::inpainting:
      if (!(missing_fraction >= 0.0 && missing_fraction < 1.0)) {
        throw ParameterError("missing_fraction must lie in [0, 1)");
      }
      if (image_path.empty()) {
        positive(image_rows, "image_rows");
        positive(image_cols, "image_cols");
      }
      nonneg(lambda, "lambda");
      break;
    case Family::strongly_convex:
      positive(m, "m");
      positive(n, "n");
      if (!(ridge_eps > 0.0)) throw ParameterError("ridge_eps must be positive");
      nonneg(lambda, "lambda");
      break;
  }
}

ProblemInstance assemble(const InstanceData& data) {
  const GenSpec& spec = data.spec;
  ProblemInstance p;
  p.family = std::string(to_string(spec.family));
  p.seed = spec.seed;
  p.notes = data.notes;
  p.F_star = data.F_star;

  switch (spec.family) {
    case Family::lasso: {
      const Matrix& K = need_dense(data, "K");
      const Vector& b = need_vector(data, "b");
      p.name = instance_name(spec, join_dims({K.rows(), K.cols(), spec.s}));
      p.f = ProxOracle::l1(spec.lambda);
      p.g = ProxOracle::sq_l2_translated(1.0, b);
      p.K = std::make_shared<LinearOperator>(LinearOperator::dense(K));
      p.h = SmoothOracle::zero(K.cols());
      p.x0 = Vector::Zero(K.cols());
      p.y0 = -b;
      break;
    }
    case Family::fused_lasso: {
      auto A = std::make_shared<LinearOperator>(LinearOperator::dense(need_dense(data, "A")));
      const Vector& b = need_vector(data, "b");
      const Index n = A->domain_dim();
      p.name = instance_name(spec, join_dims({A->codomain_dim(), n}));
      p.f = ProxOracle::l1(spec.lambda1);
      p.g = ProxOracle::l1(spec.lambda2);
      p.K = std::make_shared<LinearOperator>(first_difference(n));
      p.h = SmoothOracle::least_squares(A, b);
      p.x0 = Vector::Zero(n);
      p.y0 = Vector::Zero(p.K->codomain_dim());
      break;
    }
    case Family::logistic1:
    case Family::logistic2: {
      const SparseMatrix& A = need_sparse(data, "A");
      const Vector& labels = need_vector(data, "labels");
      const int setting = spec.family == Family::logistic1 ? 1 : 2;
      std::optional<double> lambda;
      if (auto it = data.scalars.find("lambda"); it != data.scalars.end()) lambda = it->second;
      ProblemInstance built = build_logistic(A, labels, setting, spec.lambda1, spec.lambda2, lambda);
      built.family = p.family;
      built.seed = p.seed;
      built.notes = p.notes;
      built.F_star = p.F_star;
      built.name = instance_name(spec, join_dims({A.rows(), A.cols()}));
      return built;
    }
    case Family::graphnet: {
      auto A = std::make_shared<LinearOperator>(LinearOperator::dense(need_dense(data, "A")));
      const Vector& b = need_vector(data, "b");
      const Index m = A->codomain_dim();
      p.name = instance_name(spec, join_dims({spec.n1, spec.n2, m}));
      p.f = ProxOracle::l1(spec.lambda1);
      p.g = ProxOracle::scaled_sq_l2(spec.lambda2);
      p.K = std::make_shared<LinearOperator>(grid_incidence(spec.n1, spec.n2));
      p.h = SmoothOracle::least_squares(A, b, 1.0 / static_cast<double>(m));
      p.x0 = Vector::Zero(spec.n1 * spec.n2);
      p.y0 = Vector::Zero(p.K->codomain_dim());
      break;
    }
    case Family::inpainting: {
      const Vector& mask = need_vector(data, "mask");
      const Vector& b = need_vector(data, "b");
      const auto rows = static_cast<Index>(need_scalar(data, "rows"));
      const auto cols = static_cast<Index>(need_scalar(data, "cols"));
      if (rows * cols != b.size()) throw DataError("inpainting: image shape disagrees with the data");
      p.name = instance_name(spec, join_dims({rows, cols}));
      p.f = ProxOracle::zero();
      p.g = ProxOracle::group_l21(spec.lambda, rows * cols);
      p.K = std::make_shared<LinearOperator>(discrete_gradient_2d(rows, cols));
      p.h = SmoothOracle::masked_least_squares(mask, b);
      p.x0 = b;
      p.y0 = Vector::Zero(2 * rows * cols);
      p.image_shape = std::make_pair(rows, cols);
      break;
    }
    case Family::strongly_convex: {
      auto A = std::make_shared<LinearOperator>(LinearOperator::dense(need_dense(data, "A")));
      const Matrix& K = need_dense(data, "K");
      const Index n = A->domain_dim();
      p.name = instance_name(spec, join_dims({A->codomain_dim(), n}));
      p.f = ProxOracle::l1(spec.lambda);
      p.g = ProxOracle::sq_l2_translated(1.0, need_vector(data, "b_prime"));
      p.K = std::make_shared<LinearOperator>(LinearOperator::dense(K));
      std::vector<SmoothOracle> terms;
      terms.push_back(SmoothOracle::least_squares(A, need_vector(data, "b")));
      terms.push_back(SmoothOracle::quadratic_ridge(n, spec.ridge_eps));
      p.h = SmoothOracle::sum(std::move(terms));
      p.x0 = Vector::Zero(n);
      p.y0 = Vector::Zero(K.rows());
      break;
    }
  }
  p.x_true = maybe_vector(data, "x_true");
  PowerIterationOptions opts;
  opts.seed = spec.seed;
  p.k_norm = estimate_operator_norm(*p.K, opts);
  p.validate();
  return p;
}

InstanceData lasso_data(const GenSpec& spec) {
  spec.validate();
  InstanceData d;
  d.spec = spec;
  Rng rng(spec.seed);
  const Index m = spec.m, n = spec.n;
  Matrix K;
  if (spec.scheme == LassoScheme::gaussian) {
    K = normal_matrix(m, n, 1.0, rng);
  } else {
    // Columns follow an AR(1) recursion K_j = q K_{j-1} + B_j, started at the
    // stationary scale so that every column has variance 1 / (1 - q^2).
    const Matrix B = normal_matrix(m, n, 1.0, rng);
    K.resize(m, n);
    K.col(0) = B.col(0) / std::sqrt(1.0 - spec.q * spec.q);
    for (Index j = 1; j < n; ++j) K.col(j) = spec.q * K.col(j - 1) + B.col(j);
  }
  Vector x_true = Vector::Zero(n);
  std::uniform_real_distribution<double> value(-10.0, 10.0);
  for (Index i : sample_without_replacement(n, spec.s, rng)) x_true(i) = value(rng);
  const double sd = noise_or(spec, 0.1);
  const Vector noise = normal_vector(m, sd, rng);
  d.vectors["b"] = K * x_true + noise;
  d.vectors["x_true"] = x_true;
  d.dense["K"] = std::move(K);
  d.notes.push_back("nonzero signal entries uniform on [-10, 10]");
  d.notes.push_back("noise standard deviation " + std::to_string(sd));
  return d;
}

InstanceData fused_lasso_data(const GenSpec& spec) {
  spec.validate();
  InstanceData d;
  d.spec = spec;
  Rng rng(spec.seed);
  const double sd = noise_or(spec, 0.01);
  Matrix A = normal_matrix(spec.m, spec.n, 0.01, rng);
  const Vector x_true = normal_vector(spec.n, 1.0, rng);
  const Vector noise = normal_vector(spec.m, sd, rng);
  d.vectors["b"] = A * x_true + noise;
  d.vectors["x_true"] = x_true;
  d.dense["A"] = std::move(A);
  d.notes.push_back("design and noise standard deviation 0.01, dense Gaussian signal");
  return d;
}

std::pair<SparseMatrix, Vector> synthetic_logistic_data(Index m, Index n, double density, std::uint64_t seed) {
  Rng rng(seed);
  std::bernoulli_distribution keep(density);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Triplet> triplets;
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (keep(rng)) triplets.push_back({i, j, normal(rng)});
    }
  }
  SparseMatrix A = sparse_from_triplets(m, n, triplets);
  const Vector w = normal_vector(n, 1.0, rng);
  const Vector score = A * w;
  Vector labels(m);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (Index i = 0; i < m; ++i) {
    const double p = 1.0 / (1.0 + std::exp(-score(i)));
    labels(i) = unit(rng) < p ? 1.0 : -1.0;
  }
  return {std::move(A), std::move(labels)};
}

InstanceData logistic_data(const GenSpec& spec) {
  spec.validate();
  InstanceData d;
  d.spec = spec;
  if (!spec.libsvm_path.empty()) {
    auto parsed = parse_libsvm_file(spec.libsvm_path);
    d.sparse["A"] = std::move(parsed.A);
    d.vectors["labels"] = std::move(parsed.labels);
    d.notes.push_back("data read from " + spec.libsvm_path);
  } else {
    auto [A, labels] = synthetic_logistic_data(spec.m, spec.n, spec.density, spec.seed);
    d.sparse["A"] = std::move(A);
    d.vectors["labels"] = std::move(labels);
    d.notes.push_back("synthetic sparse design with labels from a planted classifier");
  }
  if (spec.family == Family::logistic1) {
    d.scalars["lambda"] = spec.logistic_lambda.value_or(
        logistic_default_lambda(d.sparse.at("A"), d.vectors.at("labels")));
  }
  return d;
}

InstanceData graphnet_data(const GenSpec& spec) {
  spec.validate();
  InstanceData d;
  d.spec = spec;
  Rng rng(spec.seed);
  const Index n = spec.n1 * spec.n2;
  const Vector field = normal_vector(n, 1.0, rng);
  const Vector smooth = graphnet_smooth_signal(field, spec.n1, spec.n2, spec.alpha);
  const auto k = static_cast<Index>(std::floor(spec.sparsity_fraction * static_cast<double>(n)));
  const Vector x_true = keep_largest(smooth, k);
  const double sd = noise_or(spec, 0.01);
  Matrix A = normal_matrix(spec.m, n, 1.0 / std::sqrt(static_cast<double>(spec.m)), rng);
  const Vector noise = normal_vector(spec.m, sd, rng);
  d.vectors["b"] = A * x_true + noise;
  d.vectors["x_true"] = x_true;
  d.dense["A"] = std::move(A);
  d.notes.push_back("design entries with variance 1/m, noise standard deviation " + std::to_string(sd));
  return d;
}

Matrix synthetic_piecewise_image(Index rows, Index cols) {
  Matrix img = Matrix::Constant(rows, cols, 0.35);
  const double r = static_cast<double>(rows), c = static_cast<double>(cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const double u = (static_cast<double>(i) + 0.5) / r;
      const double v = (static_cast<double>(j) + 0.5) / c;
      if (u > 0.1 && u < 0.45 && v > 0.1 && v < 0.6) img(i, j) = 0.9;
      if (u > 0.55 && u < 0.9 && v > 0.2 && v < 0.45) img(i, j) = 0.1;
      const double du = u - 0.68, dv = v - 0.72;
      if (du * du + dv * dv < 0.04) img(i, j) = 0.65;
    }
  }
  return img;
}

InstanceData inpainting_data(const GenSpec& spec) {
  spec.validate();
  if (!spec.image_path.empty()) {
    InstanceData d = inpainting_from_image(spec, read_pgm_file(spec.image_path));
    d.notes.push_back("image read from " + spec.image_path);
    return d;
  }
  InstanceData d = inpainting_from_image(spec, synthetic_piecewise_image(spec.image_rows, spec.image_cols));
  d.notes.push_back("synthetic piecewise-constant test image");
  return d;
}

InstanceData strongly_convex_data(const GenSpec& spec) {
  spec.validate();
  InstanceData d;
  d.spec = spec;
  if (spec.m < spec.n) d.notes.push_back("warning: m < n, the design may be rank deficient");
  Rng rng(spec.seed);
  const double sd = 1.0 / std::sqrt(static_cast<double>(spec.m));
  d.dense["A"] = normal_matrix(spec.m, spec.n, sd, rng);
  d.dense["K"] = normal_matrix(spec.m, spec.n, sd, rng);
  d.vectors["b"] = normal_vector(spec.m, 1.0, rng);
  d.vectors["b_prime"] = normal_vector(spec.m, 1.0, rng);
  d.notes.push_back("h strongly convex with modulus at least ridge_eps; g* 1-strongly convex");
  return d;
}

InstanceData generate_data(const GenSpec& spec) {
  switch (spec.family) {
    case Family::lasso: return lasso_data(spec);
    case Family::fused_lasso: return fused_lasso_data(spec);
    case Family::logistic1:
    case Family::logistic2: return logistic_data(spec);
    case Family::graphnet: return graphnet_data(spec);
    case Family::inpainting: return inpainting_data(spec);
    case Family::strongly_convex: return strongly_convex_data(spec);
  }
  throw ParameterError("unknown family");
}

ProblemInstance generate(const GenSpec& spec) { return assemble(generate_data(spec)); }

ProblemInstance gen_lasso(Index m, Index n, Index s, LassoScheme scheme, double q, double lambda,
                          std::uint64_t seed) {
  GenSpec spec;
  spec.family = Family::lasso;
  spec.m = m;
  spec.n = n;
  spec.s = s;
  spec.scheme = scheme;
  spec.q = q;
  spec.lambda = lambda;
  spec.seed = seed;
  return generate(spec);
}

ProblemInstance gen_fused_lasso(Index m, Index n, double lambda1, double lambda2, std::uint64_t seed) {
  GenSpec spec;
  spec.family = Family::fused_lasso;
  spec.m = m;
  spec.n = n;
  spec.lambda1 = lambda1;
  spec.lambda2 = lambda2;
  spec.seed = seed;
  return generate(spec);
}

double logistic_default_lambda(const SparseMatrix& A, const Vector& labels) {
  if (A.rows() != labels.size()) throw DimensionError("logistic: labels do not match the design rows");
  const Vector atb = A.transpose() * labels;
  return atb.size() == 0 ? 0.0 : 0.005 * atb.cwiseAbs().maxCoeff();
}

ProblemInstance build_logistic(const SparseMatrix& A, const Vector& labels, int setting, double lambda1,
                               double lambda2, std::optional<double> lambda) {
  if (setting != 1 && setting != 2) throw ParameterError("logistic setting must be 1 or 2");
  if (A.rows() != labels.size()) throw DimensionError("logistic: labels do not match the design rows");
  for (Index i = 0; i < labels.size(); ++i) {
    if (labels(i) != 1.0 && labels(i) != -1.0) throw DataError("logistic: labels must be -1 or +1");
  }
  const Index n = A.cols();
  ProblemInstance p;
  p.family = setting == 1 ? "logistic1" : "logistic2";
  p.name = p.family;
  auto design = std::make_shared<LinearOperator>(LinearOperator::sparse(A));
  p.h = SmoothOracle::logistic(design, labels);
  if (setting == 1) {
    const double lam = lambda.value_or(logistic_default_lambda(A, labels));
    p.f = ProxOracle::zero();
    p.g = ProxOracle::l1(lam);
    p.K = std::make_shared<LinearOperator>(identity_operator(n));
    p.notes.push_back("lambda = " + std::to_string(lam));
  } else {
    p.f = ProxOracle::l1(lambda1);
    p.g = ProxOracle::l1(lambda2);
    p.K = std::make_shared<LinearOperator>(first_difference(n));
  }
  p.x0 = Vector::Zero(n);
  p.y0 = Vector::Zero(p.K->codomain_dim());
  p.k_norm = estimate_operator_norm(*p.K);
  p.validate();
  return p;
}

ProblemInstance gen_graphnet(Index n1, Index n2, Index m, double alpha, double sparsity_fraction, double lambda1,
                             double lambda2, double noise_sd, std::uint64_t seed) {
  GenSpec spec;
  spec.family = Family::graphnet;
  spec.n1 = n1;
  spec.n2 = n2;
  spec.m = m;
  spec.alpha = alpha;
  spec.sparsity_fraction = sparsity_fraction;
  spec.lambda1 = lambda1;
  spec.lambda2 = lambda2;
  spec.noise_sd = noise_sd;
  spec.seed = seed;
  return generate(spec);
}

ProblemInstance gen_inpainting(const Matrix& image, double missing_fraction, double lambda, std::uint64_t seed) {
  GenSpec spec;
  spec.family = Family::inpainting;
  spec.missing_fraction = missing_fraction;
  spec.lambda = lambda;
  spec.seed = seed;
  spec.image_rows = image.rows();
  spec.image_cols = image.cols();
  spec.validate();
  return assemble(inpainting_from_image(spec, image));
}

ProblemInstance gen_strongly_convex(Index m, Index n, double ridge_eps, std::uint64_t seed) {
  GenSpec spec;
  spec.family = Family::strongly_convex;
  spec.m = m;
  spec.n = n;
  spec.ridge_eps = ridge_eps;
  spec.seed = seed;
  return generate(spec);
}

CgResult conjugate_gradient_solve(const LinearOperator& W, double alpha, const Vector& rhs, const CgOptions& options) {
  if (W.domain_dim() != W.codomain_dim()) throw DimensionError("conjugate gradient: operator is not square");
  if (rhs.size() != W.domain_dim()) throw DimensionError("conjugate gradient: right-hand side has the wrong length");
  if (!(options.tol > 0.0)) throw ParameterError("conjugate gradient: tol must be positive");
  const Index n = rhs.size();

  if (n > 0) {
    Rng rng(0x5eed);
    Vector u = normal_vector(n, 1.0, rng);
    Vector v = normal_vector(n, 1.0, rng);
    u.normalize();
    v.normalize();
    const double a = u.dot(W.apply(v));
    const double b = W.apply(u).dot(v);
    if (std::abs(a - b) > 1e-8 * std::max({1.0, std::abs(a), std::abs(b)})) {
      throw ContractError("conjugate gradient: operator is not symmetric");
    }
  }

  auto apply = [&](const Vector& x) -> Vector { return x + alpha * W.apply(x); };
  CgResult result;
  result.x = Vector::Zero(n);
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) {
    result.converged = true;
    return result;
  }
  Vector r = rhs;
  Vector p = r;
  double rr = r.squaredNorm();
  for (int it = 0; it < options.max_iter; ++it) {
    if (std::sqrt(rr) <= options.tol * rhs_norm) break;
    const Vector Ap = apply(p);
    const double pAp = p.dot(Ap);
    if (!(pAp > 0.0)) throw ContractError("conjugate gradient: operator is not positive definite");
    const double step = rr / pAp;
    result.x += step * p;
    r -= step * Ap;
    const double rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
    result.iterations = it + 1;
  }
  result.residual = (apply(result.x) - rhs).norm() / rhs_norm;
  result.converged = result.residual <= options.tol * (1.0 + 1e-6) || std::sqrt(rr) <= options.tol * rhs_norm;
  return result;
}

Vector graphnet_smooth_signal(const Vector& x0, Index n1, Index n2, double alpha, const CgOptions& options) {
  if (x0.size() != n1 * n2) throw DimensionError("graphnet: field size differs from the grid");
  auto D = std::make_shared<LinearOperator>(grid_incidence(n1, n2));
  const LinearOperator W = graph_laplacian(D);
  return conjugate_gradient_solve(W, alpha, x0, options).x;
}

Vector keep_largest(const Vector& v, Index k) {
  if (k <= 0) throw ParameterError("keep_largest: k must be positive");
  if (k > v.size()) throw ParameterError("keep_largest: k exceeds the vector length");
  std::vector<double> mags(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(v(i));
  std::nth_element(mags.begin(), mags.begin() + (k - 1), mags.end(), std::greater<>());
  const double c = mags[static_cast<std::size_t>(k - 1)];
  Vector out = Vector::Zero(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= c) out(i) = v(i);
  }
  return out;
}

SolverConfig default_reference_config(const ProblemInstance& problem, long iterations) {
  SolverConfig c;
  c.algorithm = Algorithm::aegrpda;
  c.psi = 1.5;
  c.beta = 1.0;
  c.tau0 = problem.k_norm > 0.0 ? 1.0 / problem.k_norm : 1.0;
  c.tau_max = 1e7;
  c.max_iters = iterations;
  c.trace_stride = std::max<long>(1, iterations);
  c.stop_tol = 1e-13;
  return c;
}

ReferenceRun compute_reference_optimum(const ProblemInstance& problem, const SolverConfig& config) {
  ReferenceRun out;
  double best = kInf;
  Vector best_x = problem.x0;
  MetricHooks hooks;
  hooks.record_time = false;
  hooks.observer = [&](const SolverState& s) {
    const double F = objective(problem, s.x, &s.Kx);
    if (F < best) {
      best = F;
      best_x = s.x;
    }
  };
  SolverConfig c = config;
  c.trace_stride = std::max<long>(1, c.max_iters);
  const RunResult run = run_solver(problem, c, hooks);
  if (!std::isfinite(best)) best = objective(problem, problem.x0);
  out.iterations = run.summary.iterations;
  out.x = std::move(best_x);
  std::ostringstream prov;
  prov << "reference run: " << to_string(c.algorithm) << ", " << out.iterations << " iterations"
       << (run.summary.stopped_early ? " (early exit)" : "") << ", minimum objective over all iterates";
  out.F_star = {best, prov.str()};
  return out;
}

}  // namespace goldsplit
