#include <random>

#include "diraclab/errors.hpp"
#include "diraclab/maningroup.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace diraclab;
using namespace diraclab::maningroup;

namespace {

std::vector<Eigen::VectorXd> ball_points(std::size_t dim, std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Eigen::VectorXd> r;
  while (r.size() < count) {
    Eigen::VectorXd x(dim);
    for (auto& v : x) v = u(rng);
    if (x.norm() <= 1.0) r.push_back(radius * x);
  }
  return r;
}

Eigen::VectorXd random_vector(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd x(dim);
  for (auto& v : x) v = u(rng);
  return x;
}

QMatrix identity_metric(std::size_t n, long scale) {
  QMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) b(i, i) = scale;
  return b;
}

QMatrix basis_columns(std::size_t dim, const std::vector<std::size_t>& indices) {
  QMatrix m(dim, indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) m(indices[j], j) = 1;
  return m;
}

}  // namespace

TEST_CASE("check_metrized accepts so(3) with a Killing-proportional metric") {
  const auto c = StructureConstants::so3();
  // Killing form of so(3) in this basis is -2 times the identity.
  const QMatrix killing = identity_metric(3, -2);
  CHECK_FALSE(oracle::metrized_violation(c, killing).has_value());
  CHECK(check_metrized(c, killing).ok);
  CHECK(check_metrized(c, identity_metric(3, 5)).ok);
}

TEST_CASE("check_metrized accepts an abelian algebra with any symmetric invertible metric") {
  QMatrix b(3, 3);
  b(0, 0) = 2, b(0, 1) = b(1, 0) = 1, b(1, 1) = -1, b(2, 2) = 7;
  CHECK(check_metrized(StructureConstants(3), b).ok);
}

TEST_CASE("check_metrized rejects a perturbed structure constant with a witness") {
  auto c = StructureConstants::so3();
  c.set_antisymmetric(0, 1, 2, 2);
  const auto oracle_reason = oracle::metrized_violation(c, identity_metric(3, 1));
  REQUIRE(oracle_reason.has_value());
  const auto r = check_metrized(c, identity_metric(3, 1));
  CHECK_FALSE(r.ok);
  CHECK(r.reason == *oracle_reason);
  CHECK(r.witness.size() == 3);
}

TEST_CASE("check_metrized rejects a degenerate or non-invariant metric") {
  QMatrix degenerate = identity_metric(3, 1);
  degenerate(2, 2) = 0;
  CHECK(check_metrized(StructureConstants::so3(), degenerate).reason == "metric degenerate");
  QMatrix skewed = identity_metric(3, 1);
  skewed(0, 0) = 2;
  CHECK(oracle::metrized_violation(StructureConstants::so3(), skewed) == std::optional<std::string>("ad-invariance"));
  CHECK(check_metrized(StructureConstants::so3(), skewed).reason == "ad-invariance");
}

TEST_CASE("built-in triples pass check_manin_triple and their duals do too") {
  for (const auto& b : builtin_triples()) {
    CAPTURE(b.name);
    const auto r = check_manin_triple(b.triple);
    CHECK_MESSAGE(r.ok, r.reason);
    CHECK(check_manin_triple(b.triple.dual()).ok);
    CHECK_FALSE(oracle::metrized_violation(b.triple.algebra().constants(), b.triple.algebra().metric()));
    CHECK(oracle::gram(b.triple.algebra().metric(), b.triple.g_basis()).is_zero());
    CHECK(oracle::gram(b.triple.algebra().metric(), b.triple.h_basis()).is_zero());
  }
}

TEST_CASE("a non-Lagrangian g is rejected") {
  // sl(2,C) with the real part of the trace form: su(2) is no longer isotropic.
  const ManinTriple iw = iwasawa_su2();
  QMatrix real_trace(6, 6);
  // Re tr(XY) on the basis (u1, u2, u3, a1, n1, n2), computed by hand.
  const long table[6][6] = {{-2, 0, 0, 0, 0, 0}, {0, -2, 0, 0, -1, 0}, {0, 0, -2, 0, 0, -1},
                            {0, 0, 0, 2, 0, 0},  {0, -1, 0, 0, 0, 0}, {0, 0, -1, 0, 0, 0}};
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) real_trace(i, j) = table[i][j];
  REQUIRE_FALSE(oracle::metrized_violation(iw.algebra().constants(), real_trace));
  const QMatrix gram = oracle::gram(real_trace, iw.g_basis());
  CHECK_FALSE(gram.is_zero());
  const ManinTriple broken(MetrizedLieAlgebra(iw.algebra().constants(), real_trace), iw.g_basis(), iw.h_basis());
  const auto r = check_manin_triple(broken);
  CHECK_FALSE(r.ok);
  CHECK(r.reason == "g not Lagrangian");
  REQUIRE(r.witness.size() == 2);
  CHECK(gram(r.witness[0], r.witness[1]) != 0);
}

TEST_CASE("overlapping subspaces and non-subalgebras are rejected") {
  const ManinTriple s = semidirect_so3();
  const ManinTriple same(s.algebra(), s.g_basis(), s.g_basis());
  CHECK(check_manin_triple(same).reason == "g + h != d");
  // span(e1 + f1, e2, e3) is not closed: [e2, e3] = e1.
  QMatrix h(6, 3);
  h(1, 0) = 1, h(2, 1) = 1, h(0, 2) = 1, h(3, 2) = 1;
  const ManinTriple bad(s.algebra(), basis_columns(6, {3, 4, 5}), h);
  CHECK_FALSE(check_manin_triple(bad).ok);
}

TEST_CASE("charts: Ad at the identity is the identity and Ad is an isometric automorphism") {
  for (const auto& b : builtin_triples()) {
    CAPTURE(b.name);
    const std::size_t n = b.triple.half_dim();
    const Eigen::MatrixXd ad_e = b.chart.ad_at(Eigen::VectorXd::Zero(n));
    CHECK((ad_e - Eigen::MatrixXd::Identity(b.triple.dim(), b.triple.dim())).cwiseAbs().maxCoeff() < 1e-14);
    for (const auto& x : ball_points(n, 5, 0.8, 11)) {
      CHECK(ad_residuals(b.triple, b.chart.ad_at(x)).max() < kAdTolerance);
      // The chart inverse recovers the coordinates.
      CHECK((b.chart.coordinates(b.chart.element(x)) - x).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("semidirect chart Ad matches the rotation action on both factors") {
  const auto b = builtin_triple("semidirect-so3");
  for (const auto& x : ball_points(3, 8, 1.5, 3)) {
    const Eigen::Matrix3d r = oracle::rotation(x);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(6, 6);
    expected.topLeftCorner(3, 3) = r;
    expected.bottomRightCorner(3, 3) = r;
    CHECK((b.chart.ad_at(x) - expected).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("conjugation and adjoint-exponential charts agree on the Iwasawa triple") {
  const auto b = builtin_triple("iwasawa-su2");
  const GroupChart adjoint = GroupChart::adjoint(b.triple);
  for (const auto& x : ball_points(3, 6, 1.0, 5)) {
    CHECK((b.chart.ad_at(x) - adjoint.ad_at(x)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((b.chart.maurer_cartan(x) - adjoint.maurer_cartan(x)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("Maurer-Cartan form matches g^-1 dg by finite differences") {
  const auto b = builtin_triple("iwasawa-su2");
  const double h = 1e-6;
  for (const auto& x : ball_points(3, 4, 1.0, 8)) {
    const Eigen::MatrixXd theta = b.chart.maurer_cartan(x);
    const GroupChart::Element g_inv = b.chart.element(x).inverse();
    for (Eigen::Index i = 0; i < 3; ++i) {
      Eigen::VectorXd xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      const GroupChart::Element dg = (b.chart.element(xp) - b.chart.element(xm)) / (2 * h);
      // theta column i, mapped through the su(2) basis matrices.
      GroupChart::Element expected = GroupChart::Element::Zero(2, 2);
      const GroupChart::Element basis[3] = {
          (GroupChart::Element(2, 2) << std::complex<double>(0, 1), 0, 0, std::complex<double>(0, -1)).finished(),
          (GroupChart::Element(2, 2) << 0, 1, -1, 0).finished(),
          (GroupChart::Element(2, 2) << 0, std::complex<double>(0, 1), std::complex<double>(0, 1), 0).finished()};
      for (int c = 0; c < 3; ++c) expected += theta(c, i) * basis[c];
      CHECK((g_inv * dg - expected).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("drinfeld_bivector vanishes at the identity for every triple") {
  for (const auto& b : builtin_triples()) {
    CAPTURE(b.name);
    const Eigen::VectorXd e = Eigen::VectorXd::Zero(b.triple.half_dim());
    CHECK(drinfeld_bivector(b.chart, e).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(chart_bivector(b.chart, e).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("drinfeld_bivector is identically zero for the semidirect triple") {
  const auto b = builtin_triple("semidirect-so3");
  for (const auto& x : ball_points(3, 20, 2.0, 21)) CHECK(drinfeld_bivector(b.chart, x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("drinfeld_bivector is skew and nonzero away from e for the Iwasawa triple") {
  const auto b = builtin_triple("iwasawa-su2");
  double largest = 0.0;
  for (const auto& x : ball_points(3, 10, 1.0, 4)) {
    const Eigen::MatrixXd w = drinfeld_bivector(b.chart, x);
    CHECK((w + w.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd p = chart_bivector(b.chart, x);
    CHECK((p + p.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    largest = std::max(largest, w.cwiseAbs().maxCoeff());
  }
  CHECK(largest > 0.1);
}

TEST_CASE("Iwasawa bivector satisfies Jacobi and multiplicativity within finite-difference tolerance") {
  const auto b = builtin_triple("iwasawa-su2");
  const auto samples = ball_points(3, 10, 1.0, 7);
  CHECK(jacobi_residuals(b.chart, samples).max_residual < 1e-5);
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
  const auto second = ball_points(3, 10, 1.0, 8);
  for (std::size_t i = 0; i < samples.size(); ++i) pairs.emplace_back(samples[i], second[i]);
  const auto r = verify_multiplicativity(b.chart, pairs);
  CHECK(r.samples == 10);
  CHECK(r.max_residual < 1e-5);
}

TEST_CASE("multiplicativity with the unit as second factor") {
  for (const auto& b : builtin_triples()) {
    CAPTURE(b.name);
    const std::size_t n = b.triple.half_dim();
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
    for (const auto& x : ball_points(n, 4, 0.8, 9)) pairs.emplace_back(x, Eigen::VectorXd::Zero(n));
    CHECK(verify_multiplicativity(b.chart, pairs).max_residual < 1e-8);
  }
}

TEST_CASE("dressing action: left-invariant on g, trivial on g* for the semidirect triple, pr_g at e") {
  std::mt19937_64 rng(13);
  for (const auto& b : builtin_triples()) {
    CAPTURE(b.name);
    const std::size_t n = b.triple.half_dim();
    for (const auto& x : ball_points(n, 3, 0.8, 14)) {
      const Eigen::VectorXd c = random_vector(n, rng);
      const Eigen::VectorXd xi = b.triple.g_matrix() * c;
      CHECK((dressing_action(b.chart, x, xi) - c).cwiseAbs().maxCoeff() < 1e-12);
      // Linear in zeta.
      const Eigen::VectorXd z1 = random_vector(b.triple.dim(), rng), z2 = random_vector(b.triple.dim(), rng);
      const Eigen::VectorXd lin = dressing_action(b.chart, x, 2.0 * z1 - z2) -
                                  (2.0 * dressing_action(b.chart, x, z1) - dressing_action(b.chart, x, z2));
      CHECK(lin.cwiseAbs().maxCoeff() < 1e-12);
    }
    const Eigen::VectorXd zeta = random_vector(b.triple.dim(), rng);
    const Eigen::VectorXd at_e = dressing_action(b.chart, Eigen::VectorXd::Zero(n), zeta);
    CHECK((at_e - b.triple.g_coordinates(zeta)).cwiseAbs().maxCoeff() < 1e-14);
  }
  const auto s = builtin_triple("semidirect-so3");
  for (const auto& x : ball_points(3, 5, 2.0, 15)) {
    for (std::size_t k = 3; k < 6; ++k) {
      CHECK(dressing_action(s.chart, x, Eigen::VectorXd::Unit(6, k)).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
}

TEST_CASE("e-map residuals for the Iwasawa triple") {
  const auto b = builtin_triple("iwasawa-su2");
  std::mt19937_64 rng(17);
  const Eigen::VectorXd z1 = random_vector(6, rng), z2 = random_vector(6, rng);
  const auto r = e_map_residuals(b.chart, ball_points(3, 10, 1.0, 18), z1, z2);
  CHECK(r.metric.max_residual < 1e-9);
  CHECK(r.bracket.max_residual < 1e-4);
  CHECK(r.maurer_cartan.max_residual < 1e-4);
}

TEST_CASE("e-map bracket residual is exactly zero for equal arguments in g") {
  const auto b = builtin_triple("iwasawa-su2");
  const Eigen::VectorXd xi = b.triple.g_matrix() * Eigen::Vector3d(0.3, -0.2, 0.5);
  const auto r = e_map_residuals(b.chart, ball_points(3, 5, 1.0, 19), xi, xi);
  CHECK(r.bracket.max_residual == 0.0);
}

TEST_CASE("Ad does not preserve h in general") {
  const auto b = builtin_triple("iwasawa-su2");
  const Eigen::VectorXd x = Eigen::Vector3d(0.4, 0.1, -0.3);
  const Eigen::MatrixXd moved = b.chart.ad_at(x) * b.triple.h_matrix();
  double g_part = 0.0;
  for (Eigen::Index i = 0; i < 3; ++i) g_part = std::max(g_part, b.triple.project_g(moved.col(i)).norm());
  CHECK(g_part > 1e-3);
}

TEST_CASE("dual Iwasawa triple: adjoint chart, bivector vanishing at e, Jacobi") {
  const ManinTriple dual = iwasawa_su2().dual();
  REQUIRE(check_manin_triple(dual).ok);
  const GroupChart chart = GroupChart::adjoint(dual);
  CHECK(drinfeld_bivector(chart, Eigen::VectorXd::Zero(3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(jacobi_residuals(chart, ball_points(3, 5, 0.5, 23)).max_residual < 1e-5);
}

TEST_CASE("Drinfeld double of the semidirect triple has a nonzero multiplicative bivector") {
  const auto b = builtin_triple("double-semidirect-so3");
  const auto xs = ball_points(6, 4, 0.5, 24), ys = ball_points(6, 4, 0.5, 25);
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
  for (std::size_t i = 0; i < xs.size(); ++i) pairs.emplace_back(xs[i], ys[i]);
  CHECK(jacobi_residuals(b.chart, xs).max_residual < 1e-5);
  CHECK(verify_multiplicativity(b.chart, pairs).max_residual < 1e-5);
}

TEST_CASE("charts reject non-homomorphic representations and report points off the chart") {
  const ManinTriple t = iwasawa_su2();
  std::vector<GroupChart::Element> rep(6, GroupChart::Element::Identity(2, 2));
  CHECK_THROWS_AS(GroupChart::representation(t, rep, "bad"), PreconditionError);
  const auto b = builtin_triple("iwasawa-su2");
  // diag(2, 1/2) lies in AN, not in SU(2).
  GroupChart::Element off(2, 2);
  off << 2.0, 0.0, 0.0, 0.5;
  CHECK_THROWS_AS(b.chart.coordinates(off), DomainEscape);
}

TEST_CASE("homogeneous spaces: l = h with k = 0, l = g with k = g, and the torus example") {
  const auto b = builtin_triple("iwasawa-su2");
  const ManinTriple& t = b.triple;
  const QMatrix none(6, 0);
  HomogeneousSpaceData full{t, none, t.h_basis()};
  const auto r1 = homogeneous_space_check(full, b.chart, {});
  CHECK(r1.check.ok);
  CHECK(r1.identity_component_only);

  HomogeneousSpaceData point{t, t.g_basis(), t.g_basis()};
  std::vector<Eigen::VectorXd> gens;
  for (std::size_t i = 0; i < 3; ++i) gens.push_back(0.7 * t.g_matrix().col(i));
  const auto r2 = homogeneous_space_check(point, b.chart, gens);
  CHECK(r2.check.ok);
  CHECK(r2.invariance_residual < 1e-12);

  // k = span(u1), l = k + (h orthogonal to k) = span(u1, n1, n2).
  HomogeneousSpaceData torus{t, basis_columns(6, {0}), basis_columns(6, {0, 4, 5})};
  const auto r3 = homogeneous_space_check(torus, b.chart, {1.3 * Eigen::VectorXd::Unit(6, 0)});
  CHECK(r3.check.ok);
  CHECK(r3.invariance_residual < 1e-9);

  // span(u1, a1, n1) is not isotropic: <u1, a1> = 2.
  HomogeneousSpaceData bad{t, basis_columns(6, {0}), basis_columns(6, {0, 3, 4})};
  const auto r4 = homogeneous_space_check(bad, b.chart, {});
  CHECK_FALSE(r4.check.ok);
  CHECK(r4.check.reason == "l not Lagrangian");

  // l = h but k = span(u1): the intersection with g is zero, not k.
  HomogeneousSpaceData mismatch{t, basis_columns(6, {0}), t.h_basis()};
  CHECK(homogeneous_space_check(mismatch, b.chart, {}).check.reason == "l meets g outside k");

  // k must be a subalgebra of g.
  HomogeneousSpaceData not_sub{t, basis_columns(6, {0, 1}), t.h_basis()};
  CHECK_THROWS_AS(homogeneous_space_check(not_sub, b.chart, {}), PreconditionError);
}

TEST_CASE("homogeneous check with l = h agrees with the triple's validity") {
  for (const auto& b : builtin_triples()) {
    CAPTURE(b.name);
    HomogeneousSpaceData data{b.triple, QMatrix(b.triple.dim(), 0), b.triple.h_basis()};
    CHECK(homogeneous_space_check(data, b.chart, {}).check.ok == check_manin_triple(b.triple).ok);
  }
}

TEST_CASE("Ad-invariance fails for a generator whose exponential moves l") {
  const auto b = builtin_triple("iwasawa-su2");
  // l = span(u1, n1, n2) is stable under the torus but not under exp(u2).
  HomogeneousSpaceData torus{b.triple, basis_columns(6, {0}), basis_columns(6, {0, 4, 5})};
  CHECK_THROWS_AS(homogeneous_space_check(torus, b.chart, {0.5 * Eigen::VectorXd::Unit(6, 1)}), PreconditionError);
}
