#include <atomic>
#include <cmath>
#include <stdexcept>

#include "diraclab/dense.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/exact_linalg.hpp"
#include "diraclab/ode.hpp"
#include "diraclab/parallel.hpp"
#include "diraclab/quadrature.hpp"
#include "diraclab/report.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace diraclab;
using namespace diraclab::numerics;

namespace {

QMatrix random_qmatrix(std::size_t rows, std::size_t cols, gen::Rng& rng) {
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = gen::small_rational(rng);
  return m;
}

// Leibniz expansion over permutations.
Rational leibniz_determinant(const QMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Rational total = 0;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Rational term = sign;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

VectorField linear_field(double rate) {
  VectorField f;
  f.dim = 1;
  f.value = [rate](double, const Eigen::VectorXd& x, Eigen::VectorXd& out) { out = rate * x; };
  return f;
}

}  // namespace

TEST_CASE("exact determinant, inverse and null space") {
  gen::Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 4;
    const auto m = random_qmatrix(n, n, rng);
    CHECK(determinant(m) == leibniz_determinant(m));
    const auto inv = inverse(m);
    CHECK(inv.has_value() == (leibniz_determinant(m) != 0));
    if (inv) CHECK(m * *inv == QMatrix::identity(n));
  }
  for (int t = 0; t < 30; ++t) {
    const std::size_t rows = 1 + t % 3, cols = 2 + t % 4;
    auto m = random_qmatrix(rows, cols, rng);
    // Force a dependent row now and then.
    if (rows > 1 && t % 2 == 0)
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = 2 * m(0, j);
    const auto ns = nullspace(m);
    CHECK(rank(m) + ns.cols() == cols);
    CHECK((m * ns).is_zero());
    CHECK(rref(rref(m)) == rref(m));
    const auto x = gen::rational_point(cols, rng);
    const auto b = multiply(m, x);
    const auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(multiply(m, *sol) == b);
  }
  QMatrix singular(2, 2);
  singular(0, 0) = 1;
  singular(0, 1) = 2;
  singular(1, 0) = 2;
  singular(1, 1) = 4;
  CHECK_FALSE(inverse(singular).has_value());
  CHECK_FALSE(solve(singular, {Rational(1), Rational(0)}).has_value());
}

TEST_CASE("numeric rank, spaces and distances") {
  Eigen::MatrixXd m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  CHECK(numeric_rank(m) == 2);
  const Eigen::MatrixXd cs = column_space(m);
  CHECK(cs.cols() == 2);
  CHECK((cs.transpose() * cs - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-14);
  const Eigen::MatrixXd ns = null_space(m);
  CHECK(ns.cols() == 1);
  CHECK((m * ns).norm() < 1e-13);
  const Eigen::MatrixXd e1 = Eigen::Vector3d(1, 0, 0), e2 = Eigen::Vector3d(0, 1, 0);
  CHECK(subspace_distance(e1, e1) == doctest::Approx(0.0));
  CHECK(subspace_distance(e1, e2) == doctest::Approx(1.0));
  Eigen::MatrixXd plane(3, 2);
  plane << 1, 0, 0, 1, 0, 0;
  CHECK(subspace_distance(e1, plane) < 1e-15);
  const Eigen::MatrixXd j = canonical_symplectic(2);
  CHECK((j * j + Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
  CHECK(j(0, 2) == 1.0);
  CHECK(j(2, 0) == -1.0);
  CHECK(max_abs(j) == 1.0);
}

TEST_CASE("Gauss-Legendre rules") {
  const auto two = gauss_legendre(2);
  CHECK(two.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)));
  CHECK(two.weights[0] == doctest::Approx(1.0));
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto rule = gauss_legendre(n, 0.0, 1.0);
    // Exact through degree 2n - 1.
    for (std::size_t d = 0; d < 2 * n; ++d) {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], static_cast<double>(d));
      CHECK(s == doctest::Approx(1.0 / static_cast<double>(d + 1)).epsilon(1e-13));
    }
  }
  const auto eight = gauss_legendre(8, 0.0, 1.0);
  double s = 0;
  for (std::size_t i = 0; i < 8; ++i) s += eight.weights[i] * std::exp(eight.nodes[i]);
  CHECK(std::abs(s - (std::exp(1.0) - 1.0)) < 1e-14);
}

TEST_CASE("RK4 and the flow convention") {
  IntegratorOptions opts;
  const auto f = linear_field(1.0);
  const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(1, 2.0);
  // Phi_t of x d/dx solves x' = -x.
  const auto r = flow(f, x0, 1.0, opts, true);
  CHECK(std::abs(r.point(0) - 2.0 * std::exp(-1.0)) < 1e-12);
  // The Jacobian comes from differenced field values here.
  CHECK(std::abs(r.jacobian(0, 0) - std::exp(-1.0)) < 1e-9);
  const auto dense = rk4_dense(f, x0, 0.0, {0.25, 0.5, 1.0}, opts);
  REQUIRE(dense.size() == 3);
  CHECK(std::abs(dense[1].point(0) - 2.0 * std::exp(0.5)) < 1e-12);
  // Fourth order: halving the step cuts the error by about 16.
  IntegratorOptions coarse{0.1, false}, fine{0.05, false};
  const double e1 = std::abs(rk4(f, x0, 0.0, 1.0, coarse).point(0) - 2.0 * std::exp(1.0));
  const double e2 = std::abs(rk4(f, x0, 0.0, 1.0, fine).point(0) - 2.0 * std::exp(1.0));
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.05));
  // Time-dependent X_t = t d/dx: w' = -(t - s) gives w(t) = x0 - t^2 / 2.
  VectorField td;
  td.dim = 1;
  td.value = [](double t, const Eigen::VectorXd&, Eigen::VectorXd& out) { out = Eigen::VectorXd::Constant(1, t); };
  CHECK(std::abs(flow(td, x0, 0.8, opts, false).point(0) - (2.0 - 0.32)) < 1e-12);
}

TEST_CASE("finite-difference Jacobian fallback") {
  VectorField f;
  f.dim = 2;
  f.value = [](double, const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    out.resize(2);
    out << x(0) * x(1), std::sin(x(0));
  };
  const Eigen::Vector2d p(0.3, -0.7);
  Eigen::Matrix2d exact;
  exact << p(1), p(0), std::cos(p(0)), 0;
  CHECK((f.jacobian_at(0.0, p) - exact).norm() < 1e-8);
}

TEST_CASE("escaping trajectories raise DomainEscape") {
  VectorField blow;
  blow.dim = 1;
  blow.value = [](double, const Eigen::VectorXd& x, Eigen::VectorXd& out) { out = -x.cwiseProduct(x); };
  IntegratorOptions opts;
  opts.escape_bound = 1e6;
  // x' = x^2 from 1 blows up at t = 1.
  CHECK_THROWS_AS(flow(blow, Eigen::VectorXd::Ones(1), 2.0, opts, true), DomainEscape);
}

TEST_CASE("parallel_for fills slots and rethrows the first failure") {
  std::vector<int> out(100, 0);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i));
  std::atomic<int> ran{0};
  try {
    parallel_for(50, [&](std::size_t i) {
      ++ran;
      if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "7");
  }
  CHECK(ran == 50);
  CHECK(worker_count() >= 1);
}

TEST_CASE("residual reports") {
  ResidualReport r;
  r.record(1e-3, {1.0});
  r.record(1e-5, {2.0});
  CHECK(r.max_residual == 1e-3);
  CHECK(r.worst_point == std::vector<double>{1.0});
  CHECK(r.samples == 2);
  ResidualReport s;
  s.record(std::nan(""), {3.0});
  r.merge(s);
  CHECK(std::isinf(r.max_residual));
  CHECK(r.worst_point == std::vector<double>{3.0});
  CHECK_FALSE(r.within(1.0));
  CHECK(r.to_json()["max_residual"] == "inf");
  CHECK(r.samples == 3);
}
