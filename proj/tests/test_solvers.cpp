#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "goldsplit/problems.hpp"
#include "goldsplit/solvers.hpp"
#include "test_util.hpp"

using namespace goldsplit;
using testutil::random_vector;
using testutil::toy_lasso;

namespace {

// Straight-line re-transcriptions of each scheme on a LASSO-type toy with an
// optional least-squares smooth term h = 1/2 |H x - c|^2. All proximal maps
// are written out in closed form here rather than taken from the library.
struct Toy {
  Matrix K;
  Vector b;
  double lambda = 0.1;
  bool smooth = false;
  Matrix H;
  Vector c;

  Vector soft(const Vector& v, double t) const {
    Vector out(v.size());
    for (Index i = 0; i < v.size(); ++i) {
      const double a = std::abs(v(i)) - t * lambda;
      out(i) = a > 0.0 ? (v(i) > 0.0 ? a : -a) : 0.0;
    }
    return out;
  }
  // prox of sigma g* for g = 1/2 |. - b|^2, g*(y) = 1/2 |y|^2 + <b, y>.
  Vector conj_prox(const Vector& v, double sigma) const { return (v - sigma * b) / (1.0 + sigma); }
  Vector grad(const Vector& x) const {
    if (!smooth) return Vector::Zero(x.size());
    return H.transpose() * (H * x - c);
  }

  ProblemInstance instance() const {
    ProblemInstance p = toy_lasso(K, b, lambda);
    if (smooth) {
      p.h = SmoothOracle::least_squares(std::make_shared<LinearOperator>(LinearOperator::dense(H)), c);
    }
    return p;
  }
};

Toy spec_toy() {
  Toy t;
  t.K = Matrix::Identity(2, 2);
  t.b = Vector(2);
  t.b << 1.0, 0.0;
  return t;
}

Toy smooth_toy() {
  Toy t;
  t.K = Matrix(3, 2);
  t.K << 1.0, 0.5, -0.3, 1.0, 0.2, 0.4;
  t.b = Vector(3);
  t.b << 0.7, -1.2, 0.4;
  t.lambda = 0.05;
  t.smooth = true;
  t.H = Matrix(2, 2);
  t.H << 2.0, -1.0, 0.5, 1.5;
  t.c = Vector(2);
  t.c << 1.0, 3.0;
  return t;
}

struct Snapshot {
  Vector x, z, y;
  double tau, sigma, theta;
};

std::vector<Snapshot> library_run(const ProblemInstance& p, const SolverConfig& c, int steps) {
  SolverState s = init_state(p, c);
  std::vector<Snapshot> out;
  for (int k = 0; k < steps; ++k) {
    iterate(s, p, c);
    out.push_back({s.x, s.z, s.y, s.tau, s.sigma, s.theta});
  }
  return out;
}

void compare(const std::vector<Snapshot>& lib, const std::vector<Snapshot>& oracle, bool check_theta,
             bool check_z = true) {
  REQUIRE(lib.size() == oracle.size());
  for (std::size_t k = 0; k < lib.size(); ++k) {
    CAPTURE(k);
    CHECK((lib[k].x - oracle[k].x).norm() <= 1e-12);
    CHECK((lib[k].y - oracle[k].y).norm() <= 1e-12);
    if (check_z) CHECK((lib[k].z - oracle[k].z).norm() <= 1e-12);
    CHECK(std::abs(lib[k].tau - oracle[k].tau) <= 1e-12 * std::max(1.0, oracle[k].tau));
    CHECK(std::abs(lib[k].sigma - oracle[k].sigma) <= 1e-12 * std::max(1.0, oracle[k].sigma));
    // theta is a ratio of consecutive steps and doubles their relative error.
    if (check_theta) CHECK(std::abs(lib[k].theta - oracle[k].theta) <= 2e-12 * std::max(1.0, oracle[k].theta));
  }
}

std::vector<Snapshot> oracle_pgrpda(const Toy& t, const SolverConfig& c, int steps) {
  Vector x = Vector::Zero(t.K.cols()), z = x, y = -t.b;
  double tau = c.tau0;
  std::vector<Snapshot> out;
  for (int k = 0; k < steps; ++k) {
    z = ((c.psi - 1.0) * x + z) / c.psi;
    const Vector xn = t.soft(z - tau * t.K.transpose() * y - tau * t.grad(x), tau);
    const double dx = (xn - x).norm();
    const double dKx = (t.K * (xn - x)).norm();
    const double dg = (t.grad(xn) - t.grad(x)).norm();
    double tn = tau;
    if (dx > 0.0) {
      if (dKx > 0.0) tn = std::min(tn, c.mu * dx / (std::sqrt(c.beta) * dKx));
      if (dg > 0.0) tn = std::min(tn, c.mu_prime * dx / dg);
    }
    const double sigma = c.beta * tn;
    y = t.conj_prox(y + sigma * t.K * xn, sigma);
    x = xn;
    tau = tn;
    out.push_back({x, z, y, tau, sigma, 0.0});
  }
  return out;
}

std::vector<Snapshot> oracle_aegrpda(const Toy& t, const SolverConfig& c, double k_norm, int steps) {
  Vector x = Vector::Zero(t.K.cols()), z = x, y = -t.b;
  double tau = c.tau0, theta = c.theta0;
  const double rho = 1.0 / c.psi + 1.0 / (c.psi * c.psi);
  std::vector<Snapshot> out;
  for (int k = 0; k < steps; ++k) {
    z = ((c.psi - 1.0) * x + z) / c.psi;
    const Vector xn = t.soft(z - tau * t.K.transpose() * y - tau * t.grad(x), tau);
    const double dx = (xn - x).norm();
    double tn = std::min(rho * tau, c.tau_max);
    if (dx > 0.0) {
      const double L = (t.grad(xn) - t.grad(x)).norm() / dx;
      tn = std::min(tn, c.psi * theta / (9.0 * (L * L + c.beta * c.psi * k_norm * k_norm) * tau));
    }
    theta = c.psi * tn / tau;
    tau = tn;
    const double sigma = c.beta * tau;
    y = t.conj_prox(y + sigma * t.K * xn, sigma);
    x = xn;
    out.push_back({x, z, y, tau, sigma, theta});
  }
  return out;
}

std::vector<Snapshot> oracle_fixed_golden(const Toy& t, const SolverConfig& c, bool use_grad, int steps) {
  Vector x = Vector::Zero(t.K.cols()), z = x, y = -t.b;
  std::vector<Snapshot> out;
  for (int k = 0; k < steps; ++k) {
    z = ((c.psi - 1.0) * x + z) / c.psi;
    Vector arg = z - c.tau * t.K.transpose() * y;
    if (use_grad) arg -= c.tau * t.grad(x);
    x = t.soft(arg, c.tau);
    y = t.conj_prox(y + c.sigma * t.K * x, c.sigma);
    out.push_back({x, z, y, c.tau, c.sigma, 0.0});
  }
  return out;
}

std::vector<Snapshot> oracle_condat_vu(const Toy& t, const SolverConfig& c, int steps) {
  Vector x = Vector::Zero(t.K.cols()), y = -t.b;
  std::vector<Snapshot> out;
  for (int k = 0; k < steps; ++k) {
    const Vector xn = t.soft(x - c.tau * t.K.transpose() * y - c.tau * t.grad(x), c.tau);
    y = t.conj_prox(y + c.sigma * t.K * (2.0 * xn - x), c.sigma);
    x = xn;
    out.push_back({x, x, y, c.tau, c.sigma, 0.0});
  }
  return out;
}

std::vector<Snapshot> oracle_agraal(const Toy& t, const SolverConfig& c, int steps) {
  const double psi = c.psi, rho = 1.0 / psi + 1.0 / (psi * psi);
  auto Fx = [&](const Vector& x, const Vector& y) -> Vector { return t.grad(x) + t.K.transpose() * y; };
  auto Fy = [&](const Vector& x) -> Vector { return -(t.K * x); };

  Vector x0 = Vector::Zero(t.K.cols()), y0 = -t.b;
  double lambda = c.tau0, theta = c.theta0;
  Vector x = t.soft(x0 - lambda * Fx(x0, y0), lambda);
  Vector y = t.conj_prox(y0 + lambda * t.K * x0, lambda);
  Vector xbar = x0, ybar = y0, xp = x0, yp = y0;
  std::vector<Snapshot> out;
  for (int k = 0; k < steps; ++k) {
    const double du2 = (x - xp).squaredNorm() + (y - yp).squaredNorm();
    const double dF2 = (Fx(x, y) - Fx(xp, yp)).squaredNorm() + (Fy(x) - Fy(xp)).squaredNorm();
    double ln = std::min(rho * lambda, c.tau_max);
    if (du2 > 0.0 && dF2 > 0.0) ln = std::min(ln, psi * theta / (4.0 * lambda) * du2 / dF2);
    xbar = ((psi - 1.0) * x + xbar) / psi;
    ybar = ((psi - 1.0) * y + ybar) / psi;
    const Vector xn = t.soft(xbar - ln * Fx(x, y), ln);
    const Vector yn = t.conj_prox(ybar - ln * Fy(x), ln);
    xp = x, yp = y;
    x = xn, y = yn;
    theta = psi * ln / lambda;
    lambda = ln;
    out.push_back({x, xbar, y, lambda, lambda, theta});
  }
  return out;
}

SolverConfig pgrpda_toy_config() {
  SolverConfig c;
  c.algorithm = Algorithm::pgrpda;
  c.tau0 = 1.0;
  c.beta = 0.2;
  c.psi = 1.5;
  c.mu = 0.7;
  c.mu_prime = 0.3;
  return c;
}

SolverConfig fixed_config(Algorithm a, double tau, double sigma, double psi = 1.5) {
  SolverConfig c;
  c.algorithm = a;
  c.tau = tau;
  c.sigma = sigma;
  c.psi = psi;
  return c;
}

std::string trace_text(const IterationTrace& trace) {
  std::ostringstream os;
  write_trace_csv(os, trace, CsvOptions{false});
  return os.str();
}

}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("parameter validation") {
  SolverConfig c;
  c.algorithm = Algorithm::pgrpda;
  c.psi = 1.76;
  c.mu = 0.77236;
  c.mu_prime = 0.25;
  c.region = Region::extended;
  CHECK(validate_config(c).ok());
  c.region = Region::base;
  CHECK_FALSE(validate_config(c).ok());

  SolverConfig d;
  d.algorithm = Algorithm::pgrpda;
  d.psi = 1.5;
  d.mu = 0.8;
  d.mu_prime = 0.3;
  const auto report = validate_config(d);
  REQUIRE_FALSE(report.ok());
  CHECK(report.summary().find("mu") != std::string::npos);

  // Every violated inequality gets its own diagnostic.
  SolverConfig e = d;
  e.mu_prime = 0.5;
  e.tau0 = -1.0;
  CHECK(validate_config(e).errors.size() >= 3);
  CHECK_THROWS_AS(require_valid(e), ParameterError);

  SolverConfig a;
  a.algorithm = Algorithm::aegrpda;
  a.psi = 1.5;
  CHECK(a.rho_value() == doctest::Approx(1.0 / 1.5 + 1.0 / 2.25));
  CHECK(a.rho_value() == doctest::Approx(1.1111).epsilon(1e-4));
  CHECK(validate_config(a).ok());
  a.rho = 1.2;
  CHECK_FALSE(validate_config(a).ok());
  a.rho.reset();
  a.psi = 1.7;
  CHECK_FALSE(validate_config(a).ok());
  a.psi = 1.5;
  a.tau_max = 0.5;
  CHECK_FALSE(validate_config(a).ok());

  CHECK(pgrpda_mu_bound(1.5, Region::base) == doctest::Approx(0.75));
  const double psi = 2.5;
  CHECK(pgrpda_mu_bound(psi, Region::extended) ==
        doctest::Approx(psi / 2 + psi * (1 + psi - psi * psi) / (2 * (psi + 1))));
  SolverConfig ext = c;
  ext.region = Region::extended;
  ext.psi = 2.8;
  ext.mu = 0.3;
  ext.mu_prime = 0.05;
  CHECK_FALSE(validate_config(ext).ok());
  ext.psi = 2.5;
  ext.mu = 0.26;
  ext.mu_prime = 0.08;
  CHECK(validate_config(ext).ok());
}

TEST_CASE("eta lower bound") {
  CHECK(eta_bound(10, 0.7, 0.3, 0.2, 2, 3) == doctest::Approx(0.1));
  CHECK(eta_bound(10, 0.7, 10.0, 0.2, 2, 3) == doctest::Approx(0.7 / (std::sqrt(0.2) * 2)));
  CHECK(eta_bound(10, 0.7, 0.3, 0.2, 0, 0) == 10.0);
  const double middle = eta_bound(100, 0.7, 100.0, 0.2, 2, 1e-9);
  CHECK(eta_bound(100, 0.7, 100.0, 0.8, 2, 1e-9) == doctest::Approx(middle / 2));
}

TEST_CASE("P-GRPDA step rule and its conventions") {
  CHECK(pgrpda_tau_update(1.0, 1.0, 2.0, 3.0, 0.7, 0.3, 0.25) == doctest::Approx(0.1));
  CHECK(pgrpda_tau_update(0.37, 0.0, 0.0, 0.0, 0.7, 0.3, 0.25) == 0.37);
  CHECK(pgrpda_tau_update(0.37, 0.0, 5.0, 5.0, 0.7, 0.3, 0.25) == 0.37);
  CHECK(pgrpda_tau_update(0.37, 1.0, 0.0, 0.0, 0.7, 0.3, 0.25) == 0.37);
  CHECK(pgrpda_tau_update(5.0, 1.0, 0.0, 1.0, 0.7, 0.3, 0.25) == doctest::Approx(0.3));
  CHECK(pgrpda_tau_update(5.0, 1.0, 2.0, 0.0, 0.7, 0.3, 0.25) == doctest::Approx(0.7));

  Vector dx(2), zero = Vector::Zero(2);
  dx << 0.6, 0.8;
  CHECK(pgrpda_tau_update(2.0, zero, zero, zero, 0.7, 0.3, 1.0) == 2.0);
  CHECK(pgrpda_tau_update(2.0, dx, zero, zero, 0.7, 0.3, 1.0) == 2.0);
}

TEST_CASE("local Lipschitz estimate") {
  CHECK(local_lipschitz(0.0, 2.0).value() == 0.0);
  CHECK_FALSE(local_lipschitz(1.0, 0.0).has_value());
  std::mt19937_64 rng(3);
  const SmoothOracle half = SmoothOracle::quadratic_ridge(4, 1.0);
  for (int k = 0; k < 10; ++k) {
    const Vector a = random_vector(4, rng), b = random_vector(4, rng);
    CHECK(local_lipschitz(half.gradient(a) - half.gradient(b), a - b).value() == doctest::Approx(1.0));
  }
}

TEST_CASE("aEGRPDA step rule") {
  const double psi = 1.5, rho = 1 / psi + 1 / (psi * psi);
  const auto r = aegrpda_tau_update(1.0, 1.5, 0.0, 1.0, 1.0, psi, rho, 1e7);
  CHECK(r.tau == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(r.theta == doctest::Approx(0.25).epsilon(1e-14));

  const auto flat = aegrpda_tau_update(0.3, 1.5, std::nullopt, 100.0, 1.0, psi, rho, 1e7);
  CHECK(flat.tau == rho * 0.3);
  CHECK(flat.theta == doctest::Approx(psi * rho));
  const auto capped = aegrpda_tau_update(0.3, 1.5, std::nullopt, 100.0, 1.0, psi, rho, 0.31);
  CHECK(capped.tau == 0.31);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (int k = 0; k < 200; ++k) {
    const double tp = u(rng), thp = u(rng), L = u(rng), kn = u(rng), beta = u(rng);
    const auto s = aegrpda_tau_update(tp, thp, L, kn, beta, psi, rho, 1e7);
    CHECK(s.tau * L <= std::sqrt(s.theta * thp) / 3.0 + 1e-12);
    CHECK(s.tau <= std::sqrt(s.theta * thp / (beta * psi * kn * kn)) / 3.0 + 1e-12);
    CHECK(s.theta <= psi * rho + 1e-15);
  }
}

TEST_CASE("P-GRPDA matches a step-by-step transcription") {
  const Toy t = spec_toy();
  const SolverConfig c = pgrpda_toy_config();
  compare(library_run(t.instance(), c, 12), oracle_pgrpda(t, c, 12), false);

  const Toy s = smooth_toy();
  SolverConfig cs = c;
  cs.tau0 = 2.0;
  compare(library_run(s.instance(), cs, 25), oracle_pgrpda(s, cs, 25), false);
}

TEST_CASE("aEGRPDA matches a step-by-step transcription") {
  for (const Toy& t : {spec_toy(), smooth_toy()}) {
    SolverConfig c;
    c.algorithm = Algorithm::aegrpda;
    c.tau0 = 1.0;
    c.beta = 0.2;
    c.psi = 1.5;
    c.tau_max = 1e7;
    const double k_norm = Eigen::BDCSVD<Matrix>(t.K).singularValues()(0);
    c.k_norm = k_norm;
    compare(library_run(t.instance(), c, 25), oracle_aegrpda(t, c, k_norm, 25), true);
  }
}

TEST_CASE("E-GRPDA and GRPDA match step-by-step transcriptions") {
  for (const Toy& t : {spec_toy(), smooth_toy()}) {
    const SolverConfig e = fixed_config(Algorithm::egrpda, 0.3, 0.5);
    compare(library_run(t.instance(), e, 25), oracle_fixed_golden(t, e, true, 25), false);
    const SolverConfig g = fixed_config(Algorithm::grpda, 0.3, 0.5, kGoldenRatio);
    compare(library_run(t.instance(), g, 25), oracle_fixed_golden(t, g, false, 25), false);
  }
}

TEST_CASE("Condat-Vu and PDHG match step-by-step transcriptions") {
  const Toy t = spec_toy();
  const SolverConfig cv = fixed_config(Algorithm::condat_vu, 0.4, 0.9);
  compare(library_run(t.instance(), cv, 25), oracle_condat_vu(t, cv, 25), false);
  const SolverConfig pd = fixed_config(Algorithm::pdhg, 0.4, 0.9);
  compare(library_run(t.instance(), pd, 25), oracle_condat_vu(t, pd, 25), false);

  // With a smooth term PDHG runs the Condat-Vu scheme.
  const Toy s = smooth_toy();
  const SolverConfig cs = fixed_config(Algorithm::condat_vu, 0.05, 0.5);
  compare(library_run(s.instance(), cs, 25), oracle_condat_vu(s, cs, 25), false);
  const SolverConfig ps = fixed_config(Algorithm::pdhg, 0.05, 0.5);
  compare(library_run(s.instance(), ps, 25), oracle_condat_vu(s, ps, 25), false);
}

TEST_CASE("aGRAAL matches a step-by-step transcription") {
  for (const Toy& t : {spec_toy(), smooth_toy()}) {
    SolverConfig c;
    c.algorithm = Algorithm::agraal;
    c.tau0 = 0.5;
    c.psi = 1.5;
    c.theta0 = 1.0;
    compare(library_run(t.instance(), c, 25), oracle_agraal(t, c, 25), true);
  }
}

TEST_CASE("aGRAAL product-space norm") {
  // lambda_1 from a single Jacobi step: the ratio uses |du|^2 = |dx|^2 + |dy|^2.
  const Toy t = spec_toy();
  SolverConfig c;
  c.algorithm = Algorithm::agraal;
  c.tau0 = 0.5;
  c.psi = 1.5;
  const ProblemInstance p = t.instance();
  SolverState s = init_state(p, c);
  const Vector x1 = s.x, y1 = s.y, x0 = p.x0, y0 = p.y0;
  const double du2 = (x1 - x0).squaredNorm() + (y1 - y0).squaredNorm();
  const Vector dFx = t.K.transpose() * (y1 - y0);
  const Vector dFy = -(t.K * (x1 - x0));
  const double dF2 = dFx.squaredNorm() + dFy.squaredNorm();
  iterate(s, p, c);
  const double expected = std::min(c.rho_value() * 0.5, 1.5 * 1.0 / (4 * 0.5) * du2 / dF2);
  CHECK(s.tau == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("aGRAAL with a constant operator field grows lambda to its cap") {
  // K = 0 and a linear h: F(u) does not change, so only rho and lambda_max bind.
  ProblemInstance p;
  p.name = "flat";
  p.f = ProxOracle::zero();
  p.g = ProxOracle::zero();
  p.K = std::make_shared<LinearOperator>(LinearOperator::dense(Matrix::Zero(2, 3)));
  p.h = SmoothOracle::zero(3);
  p.x0 = Vector::Ones(3);
  p.y0 = Vector::Zero(2);
  SolverConfig cfg;
  cfg.algorithm = Algorithm::agraal;
  cfg.tau0 = 1.0;
  cfg.tau_max = 3.0;
  cfg.psi = 1.5;
  SolverState s = init_state(p, cfg);
  double prev = s.tau;
  for (int k = 0; k < 30; ++k) {
    iterate(s, p, cfg);
    CHECK(s.tau == doctest::Approx(std::min(cfg.rho_value() * prev, 3.0)));
    prev = s.tau;
  }
  CHECK(s.tau == 3.0);
}

TEST_CASE("P-GRPDA with K = 0 and h = 0 stays at a prox fixed point") {
  ProblemInstance p;
  p.name = "degenerate";
  p.f = ProxOracle::l1(0.5);
  p.g = ProxOracle::zero();
  p.K = std::make_shared<LinearOperator>(LinearOperator::dense(Matrix::Zero(2, 3)));
  p.h = SmoothOracle::zero(3);
  p.x0 = Vector::Zero(3);
  p.y0 = Vector::Zero(2);
  SolverConfig c = pgrpda_toy_config();
  SolverState s = init_state(p, c);
  for (int k = 0; k < 50; ++k) {
    iterate(s, p, c);
    CHECK(s.x.norm() == 0.0);
    CHECK(s.tau == c.tau0);
  }
}

TEST_CASE("frozen P-GRPDA coincides with E-GRPDA") {
  const ProblemInstance p = gen_lasso(20, 30, 3, LassoScheme::gaussian, 0.5, 0.1, 4);
  SolverConfig pg = pgrpda_toy_config();
  // Below mu / (sqrt(beta) |K|) the rule never shrinks the step (h = 0).
  pg.tau0 = 0.5 * pg.mu / (std::sqrt(pg.beta) * Eigen::BDCSVD<Matrix>(p.K->to_dense()).singularValues()(0));
  const SolverConfig eg = fixed_config(Algorithm::egrpda, pg.tau0, pg.beta * pg.tau0, pg.psi);
  SolverState a = init_state(p, pg), b = init_state(p, eg);
  for (int k = 0; k < 500; ++k) {
    iterate(a, p, pg);
    iterate(b, p, eg);
    CHECK(a.tau == pg.tau0);
    CHECK((a.x - b.x).norm() <= 1e-12 * (1.0 + b.x.norm()));
    CHECK((a.y - b.y).norm() <= 1e-12 * (1.0 + b.y.norm()));
  }
}

TEST_CASE("stepsize warnings for the fixed-step baselines") {
  const double K = 4.0;
  CHECK(stepsize_warnings(fixed_config(Algorithm::pdhg, 25 / K, 0.04 / K), K, 0.0, false).empty());
  CHECK_FALSE(stepsize_warnings(fixed_config(Algorithm::pdhg, 26 / K, 0.04 / K), K, 0.0, false).empty());

  CHECK(stepsize_warnings(fixed_config(Algorithm::condat_vu, 0.1, 0.5), K, 2.0, true).empty());
  // 0.1 * 0.6 * 16 + 0.1 * 2 / 2 = 1.06.
  CHECK_FALSE(stepsize_warnings(fixed_config(Algorithm::condat_vu, 0.1, 0.6), K, 2.0, true).empty());

  CHECK(stepsize_warnings(fixed_config(Algorithm::egrpda, 0.1, 0.5), K, 2.0, true).empty());
  // 0.1 * 0.7 * 16 + 2 * 0.1 * 2 = 1.52 >= 1.5.
  CHECK_FALSE(stepsize_warnings(fixed_config(Algorithm::egrpda, 0.1, 0.7), K, 2.0, true).empty());

  const double phi = kGoldenRatio;
  CHECK(stepsize_warnings(fixed_config(Algorithm::grpda, 0.1, 1.0, phi), K, 0.0, false).empty());
  CHECK_FALSE(stepsize_warnings(fixed_config(Algorithm::grpda, 0.1, 1.02, phi), K, 0.0, false).empty());
}

TEST_CASE("P-GRPDA step is nonincreasing and bounded below") {
  const ProblemInstance p = gen_lasso(40, 80, 4, LassoScheme::gaussian, 0.5, 0.1, 2);
  SolverConfig c = pgrpda_toy_config();
  c.tau0 = 10.0;
  c.max_iters = 10000;
  const double eta = eta_bound(c.tau0, c.mu, c.mu_prime, c.beta, p.k_norm, p.lipschitz_bound());
  double prev = c.tau0;
  long shrinks = 0;
  MetricHooks hooks;
  hooks.observer = [&](const SolverState& s) {
    CHECK(s.tau <= prev);
    CHECK(s.tau >= eta - 1e-12);
    if (s.tau < prev) ++shrinks;
    prev = s.tau;
  };
  run_solver(p, c, hooks);
  CHECK(shrinks > 0);

  // Below every bound the step never moves.
  const ProblemInstance sc = gen_strongly_convex(30, 8, 1.0, 3);
  SolverConfig small = pgrpda_toy_config();
  small.tau0 = 0.5 * std::min(small.mu / (std::sqrt(small.beta) * sc.k_norm), small.mu_prime / sc.lipschitz_bound());
  small.max_iters = 2000;
  MetricHooks fixed;
  fixed.observer = [&](const SolverState& s) { CHECK(s.tau == small.tau0); };
  run_solver(sc, small, fixed);
}

TEST_CASE("aEGRPDA step bounds along a run") {
  const ProblemInstance p = gen_strongly_convex(40, 10, 1.0, 5);
  SolverConfig c;
  c.algorithm = Algorithm::aegrpda;
  c.tau0 = 5.0;
  c.beta = 0.5;
  c.psi = 1.5;
  c.max_iters = 3000;
  const double rho = c.rho_value();
  const double kn = resolve_k_norm(p, c);
  double tau_prev = c.tau0, theta_prev = c.theta0;
  MetricHooks hooks;
  hooks.observer = [&](const SolverState& s) {
    CHECK(s.tau <= std::min(rho * tau_prev, c.tau_max) + 1e-15);
    CHECK(s.theta == doctest::Approx(c.psi * s.tau / tau_prev).epsilon(1e-15));
    CHECK(s.theta <= c.psi * rho + 1e-15);
    CHECK(c.psi * rho <= 1.0 + 1.0 / c.psi + 1e-15);
    if (s.local_l) CHECK(s.tau * *s.local_l <= std::sqrt(s.theta * theta_prev) / 3.0 + 1e-12);
    CHECK(s.tau <= std::sqrt(s.theta * theta_prev / (c.beta * c.psi * kn * kn)) / 3.0 + 1e-12);
    tau_prev = s.tau;
    theta_prev = s.theta;
  };
  run_solver(p, c, hooks);
}

TEST_CASE("aEGRPDA grows its step by rho in a flat region") {
  ProblemInstance p;
  p.name = "flat";
  p.f = ProxOracle::zero();
  p.g = ProxOracle::zero();
  p.K = std::make_shared<LinearOperator>(LinearOperator::dense(1e-4 * Matrix::Identity(3, 3)));
  p.h = SmoothOracle::quadratic_ridge(3, 1e-4);
  p.x0 = Vector::Ones(3);
  p.y0 = Vector::Zero(3);
  SolverConfig c;
  c.algorithm = Algorithm::aegrpda;
  c.tau0 = 1e-3;
  c.beta = 1.0;
  c.psi = 1.5;
  c.k_norm = 1e-4;
  SolverState s = init_state(p, c);
  int grown = 0;
  bool bound = false;
  for (int k = 0; k < 200 && !bound; ++k) {
    const double before = s.tau;
    iterate(s, p, c);
    if (s.tau == c.rho_value() * before) {
      ++grown;
    } else {
      bound = true;
    }
  }
  CHECK(grown > 10);
  CHECK(bound);
}

TEST_CASE("a saddle point is a fixed point of every solver") {
  // Toy LASSO with A = I: x* = soft(b, lambda), y* = x* - b.
  const Toy t = spec_toy();
  const ProblemInstance toy = t.instance();
  Vector xs(2), ys(2);
  xs << 0.9, 0.0;
  ys << -0.1, 0.0;

  // A strongly convex instance solved far past round-off.
  const ProblemInstance sc = gen_strongly_convex(30, 8, 1.0, 7);
  SolverConfig ref = default_reference_config(sc, 200000);
  ref.stop_tol = 1e-15;
  MetricHooks quiet;
  quiet.record_time = false;
  const RunResult r = run_solver(sc, ref, quiet);
  const Vector xs2 = r.state.x, ys2 = r.state.y;

  for (Algorithm a : kAllAlgorithms) {
    CAPTURE(to_string(a));
    for (int which = 0; which < 2; ++which) {
      const ProblemInstance& p = which == 0 ? toy : sc;
      const Vector& x0 = which == 0 ? xs : xs2;
      const Vector& y0 = which == 0 ? ys : ys2;
      SolverConfig c;
      c.algorithm = a;
      c.tau0 = 0.1;
      c.beta = 1.0;
      c.psi = a == Algorithm::grpda ? kGoldenRatio : 1.5;
      c.tau = (which == 0 ? 0.5 : 0.1) / p.k_norm;
      c.sigma = (which == 0 ? 0.5 : 1.0) / p.k_norm;
      if (a == Algorithm::grpda && which == 1) continue;  // GRPDA drops h
      SolverState s = init_state(p, c, &x0, &y0);
      for (int k = 0; k < 100; ++k) {
        iterate(s, p, c);
        CHECK((s.x - s.x_prev).norm() <= 1e-8);
      }
      CHECK((s.x - x0).norm() <= 1e-8);
    }
  }
}

TEST_CASE("run loop") {
  const ProblemInstance p = gen_lasso(20, 40, 3, LassoScheme::gaussian, 0.5, 0.1, 9);
  SolverConfig c = pgrpda_toy_config();
  c.tau0 = 10.0;

  SUBCASE("zero budget") {
    c.max_iters = 0;
    const RunResult r = run_solver(p, c);
    CHECK(r.trace.empty());
    CHECK(r.state.n == 0);
    CHECK((r.state.x - p.x0).norm() == 0.0);
    CHECK(r.summary.iterations == 0);
  }

  SUBCASE("incremental ergodic means equal batch means") {
    c.max_iters = 1000;
    Vector sum_x = Vector::Zero(p.primal_dim()), sum_w = Vector::Zero(p.dual_dim());
    MetricHooks hooks;
    hooks.observer = [&](const SolverState& s) {
      sum_x += s.x;
      sum_w += s.w;
    };
    const RunResult r = run_solver(p, c, hooks);
    CHECK((r.state.x_avg - sum_x / 1000.0).norm() <= 1e-12 * (1.0 + r.state.x_avg.norm()));
    CHECK((r.state.w_avg - sum_w / 1000.0).norm() <= 1e-12 * (1.0 + r.state.w_avg.norm()));
  }

  SUBCASE("trace stride keeps the last iteration") {
    c.max_iters = 95;
    c.trace_stride = 10;
    const RunResult r = run_solver(p, c);
    REQUIRE(r.trace.size() == 10);
    CHECK(r.trace.rows.front().n == 10);
    CHECK(r.trace.rows.back().n == 95);
    for (std::size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace.rows[k].n > r.trace.rows[k - 1].n);
  }

  SUBCASE("early exit") {
    const ProblemInstance sc = gen_strongly_convex(40, 10, 1.0, 1);
    c.max_iters = 100000;
    c.tau0 = 1.0;
    c.stop_tol = 1e-9;
    const RunResult r = run_solver(sc, c);
    CHECK(r.summary.stopped_early);
    CHECK(r.summary.iterations < c.max_iters);
    CHECK(stopping_residual(r.state, c.algorithm) <= 1e-9);
  }

  SUBCASE("non-finite iterates abort with the iteration") {
    Vector bad = p.x0;
    bad(0) = std::nan("");
    MetricHooks hooks;
    hooks.x0 = &bad;
    c.max_iters = 10;
    try {
      run_solver(p, c, hooks);
      FAIL("expected a numeric error");
    } catch (const NumericError& e) {
      CHECK(e.iteration() == 1);
    }
  }

  SUBCASE("invalid configuration is refused") {
    c.mu = 5.0;
    CHECK_THROWS_AS(run_solver(p, c), ParameterError);
  }
}

TEST_CASE("the coupling residual decays in trend") {
  const ProblemInstance p = gen_lasso(30, 60, 3, LassoScheme::gaussian, 0.5, 0.1, 12);
  SolverConfig c = pgrpda_toy_config();
  c.tau0 = 10.0;
  c.max_iters = 4000;
  const RunResult r = run_solver(p, c);
  const auto xz = trace_column(r.trace, "xz");
  const std::size_t window = 500;
  double previous = kInf;
  for (std::size_t start = 0; start + window <= xz.size(); start += window) {
    const double peak = *std::max_element(xz.begin() + start, xz.begin() + start + window);
    CHECK(peak < previous);
    previous = peak;
  }
}

TEST_CASE("identical configurations give identical traces") {
  const ProblemInstance p = gen_fused_lasso(30, 40, 0.001, 0.03, 2);
  for (Algorithm a : kAllAlgorithms) {
    CAPTURE(to_string(a));
    SolverConfig c;
    c.algorithm = a;
    c.tau0 = 1.0;
    c.beta = 1.0;
    c.psi = a == Algorithm::grpda ? kGoldenRatio : 1.5;
    c.tau = 0.5 / p.k_norm;
    c.sigma = 0.5 / p.k_norm;
    c.max_iters = 300;
    MetricHooks hooks;
    hooks.record_time = false;
    CHECK(trace_text(run_solver(p, c, hooks).trace) == trace_text(run_solver(p, c, hooks).trace));
  }
}

TEST_CASE("algorithm names") {
  for (Algorithm a : kAllAlgorithms) CHECK(parse_algorithm(to_string(a)) == a);
  CHECK_THROWS_AS(parse_algorithm("admm"), ParameterError);
  CHECK(uses_golden_step(Algorithm::pgrpda));
  CHECK_FALSE(uses_golden_step(Algorithm::pdhg));
  CHECK(has_adaptive_stepsize(Algorithm::agraal));
  CHECK_FALSE(has_adaptive_stepsize(Algorithm::egrpda));
}

}  // TEST_SUITE
