#include "diraclab/dense.hpp"
#include "diraclab/dirac.hpp"
#include "diraclab/errors.hpp"

namespace diraclab::dirac {

LagrangianFrame LagrangianFrame::symbolic(std::vector<GeneralizedSection> sections) {
  if (sections.empty()) throw PreconditionError("a frame needs at least one section");
  const std::size_t n = sections.front().dim();
  if (sections.size() != n) throw PreconditionError("a Lagrangian frame has exactly dim sections");
  for (const auto& s : sections)
    if (s.dim() != n) throw ChartMismatch("frame sections on different charts");
  LagrangianFrame f;
  f.mode_ = Mode::Symbolic;
  f.dim_ = n;
  f.sections_ = std::move(sections);
  return f;
}

LagrangianFrame LagrangianFrame::pointwise(Eigen::MatrixXd fiber) {
  if (fiber.rows() != 2 * fiber.cols()) throw PreconditionError("a fiber frame is a 2n x n matrix");
  LagrangianFrame f;
  f.mode_ = Mode::Pointwise;
  f.dim_ = static_cast<std::size_t>(fiber.cols());
  f.fiber_ = std::move(fiber);
  return f;
}

Eigen::MatrixXd LagrangianFrame::fiber_at(std::span<const double> x) const {
  if (mode_ == Mode::Pointwise) return fiber_;
  if (x.size() != dim_) throw ChartMismatch("point has the wrong dimension");
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXd m(2 * n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    m.col(a).head(n) = sections_[a].vector.vector_at(x);
    m.col(a).tail(n) = sections_[a].form.vector_at(x);
  }
  return m;
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& fiber) {
  const Eigen::Index n = fiber.rows() / 2;
  const Eigen::MatrixXd v = fiber.topRows(n), mu = fiber.bottomRows(n);
  return mu.transpose() * v + v.transpose() * mu;
}

bool is_lagrangian(const Eigen::MatrixXd& fiber, double tol) {
  if (fiber.rows() != 2 * fiber.cols()) return false;
  return numerics::numeric_rank(fiber) == static_cast<std::size_t>(fiber.cols()) &&
         numerics::max_abs(gram(fiber)) < tol;
}

namespace {

bool symbolic_isotropic(const LagrangianFrame& frame) {
  const auto& s = frame.sections();
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a; b < s.size(); ++b)
      if (!pairing(s[a], s[b]).is_zero()) return false;
  return true;
}

}  // namespace

bool is_lagrangian(const LagrangianFrame& frame, std::span<const double> x) {
  if (frame.mode() == LagrangianFrame::Mode::Pointwise) return is_lagrangian(frame.fiber_at(x));
  return symbolic_isotropic(frame) && numerics::numeric_rank(frame.fiber_at(x)) == frame.dim();
}

LagrangianFrame graph_of_poisson(const PoissonBivector& pi) {
  const std::size_t n = pi.dim();
  std::vector<GeneralizedSection> s;
  for (std::size_t i = 0; i < n; ++i) {
    auto dx = fields::coordinate_differential(n, i);
    s.emplace_back(poisson::sharp(pi, dx), dx);
  }
  return LagrangianFrame::symbolic(std::move(s));
}

LagrangianFrame graph_of_form(const PolyKForm& omega) {
  if (omega.degree() != 2) throw DegreeError("graph_of_form expects a 2-form");
  const std::size_t n = omega.dim();
  std::vector<GeneralizedSection> s;
  for (std::size_t i = 0; i < n; ++i) {
    auto d = fields::coordinate_vector(n, i);
    s.emplace_back(d, fields::interior_product(d, omega));
  }
  return LagrangianFrame::symbolic(std::move(s));
}

Eigen::MatrixXd graph_fiber(const Eigen::MatrixXd& p) {
  const Eigen::Index n = p.rows();
  Eigen::MatrixXd f(2 * n, n);
  f.topRows(n) = p.transpose();
  f.bottomRows(n) = Eigen::MatrixXd::Identity(n, n);
  return f;
}

PolyKVector integrability_symbolic(const LagrangianFrame& frame) {
  if (frame.mode() != LagrangianFrame::Mode::Symbolic) {
    throw PreconditionError("the integrability tensor needs a symbolic frame");
  }
  if (!symbolic_isotropic(frame)) throw PreconditionError("frame is not Lagrangian");
  const auto& s = frame.sections();
  const auto n = static_cast<std::uint32_t>(frame.dim());
  PolyKVector ups(n, 3);
  for (std::uint32_t b = 0; b < n; ++b)
    for (std::uint32_t c = b + 1; c < n; ++c) {
      GeneralizedSection bc = courant_bracket(s[b], s[c]);
      for (std::uint32_t a = 0; a < b; ++a) ups.set({a, b, c}, pairing(s[a], bc));
    }
  return ups;
}

fields::PointValues<double> integrability_tensor(const LagrangianFrame& frame, std::span<const double> x) {
  return integrability_symbolic(frame).evaluate(x);
}

fields::PointValues<Rational> integrability_tensor(const LagrangianFrame& frame, std::span<const Rational> x) {
  return integrability_symbolic(frame).evaluate(x);
}

}  // namespace diraclab::dirac
