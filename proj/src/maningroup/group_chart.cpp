#include <unsupported/Eigen/MatrixFunctions>

#include "diraclab/dense.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/maningroup.hpp"

namespace diraclab::maningroup {

namespace {

constexpr double kRepTolerance = 1e-12;
constexpr double kChartTolerance = 1e-8;

Eigen::VectorXd stack(const GroupChart::Element& m) {
  const Eigen::Index k = m.size();
  Eigen::VectorXd v(2 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    v(i) = m.data()[i].real();
    v(k + i) = m.data()[i].imag();
  }
  return v;
}

}  // namespace

GroupChart::GroupChart(ManinTriple t, Mode mode, std::vector<Element> rep, std::string name)
    : triple_(std::move(t)), mode_(mode), name_(std::move(name)), rep_(std::move(rep)) {
  const std::size_t n = triple_.dim();
  if (rep_.size() != n) throw ChartMismatch("representation needs one matrix per basis vector of d");
  const Eigen::Index size = rep_.front().rows();
  for (const auto& m : rep_) {
    if (m.rows() != size || m.cols() != size) throw ChartMismatch("representation matrices differ in size");
  }
  rep_stacked_.resize(2 * size * size, n);
  for (std::size_t a = 0; a < n; ++a) rep_stacked_.col(a) = stack(rep_[a]);
  if (numerics::numeric_rank(rep_stacked_) != n) throw PreconditionError("representation of d is not faithful");
  rep_pinv_ = rep_stacked_.completeOrthogonalDecomposition().pseudoInverse();
  const auto& d = triple_.algebra();
  double scale = 1.0;
  for (const auto& m : rep_) scale = std::max(scale, m.cwiseAbs().maxCoeff());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Element image = Element::Zero(size, size);
      for (std::size_t k = 0; k < n; ++k) image += to_double(d.constants().at(a, b, k)) * rep_[k];
      const Element commutator = rep_[a] * rep_[b] - rep_[b] * rep_[a];
      if ((commutator - image).cwiseAbs().maxCoeff() > kRepTolerance * scale * scale) {
        throw PreconditionError("representation does not preserve the bracket on (" + std::to_string(a + 1) + "," +
                                std::to_string(b + 1) + ")");
      }
    }
  const Eigen::MatrixXd& g = triple_.g_matrix();
  for (Eigen::Index i = 0; i < g.cols(); ++i) {
    Element m = Element::Zero(size, size);
    for (std::size_t a = 0; a < n; ++a) m += g(a, i) * rep_[a];
    g_rep_.push_back(std::move(m));
  }
}

GroupChart GroupChart::representation(const ManinTriple& t, std::vector<Element> rep, std::string name) {
  return GroupChart(t, Mode::Representation, std::move(rep), std::move(name));
}

GroupChart GroupChart::adjoint(const ManinTriple& t) {
  std::vector<Element> rep;
  for (std::size_t a = 0; a < t.dim(); ++a) {
    rep.push_back(t.algebra().ad(Eigen::VectorXd::Unit(t.dim(), a)).cast<std::complex<double>>());
  }
  try {
    return GroupChart(t, Mode::Adjoint, std::move(rep), "adjoint");
  } catch (const PreconditionError&) {
    throw PreconditionError("ad is not faithful on d; an explicit representation chart is required");
  }
}

GroupChart::Element GroupChart::element(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != dim()) throw ChartMismatch("chart point has the wrong dimension");
  Element m = Element::Zero(rep_.front().rows(), rep_.front().cols());
  for (std::size_t i = 0; i < dim(); ++i) m += x(i) * g_rep_[i];
  return m.exp();
}

Eigen::VectorXd GroupChart::decompose(const Element& m) const {
  const Eigen::VectorXd y = stack(m);
  Eigen::VectorXd zeta = rep_pinv_ * y;
  if ((rep_stacked_ * zeta - y).norm() > kChartTolerance * (1.0 + y.norm())) {
    throw DomainEscape("matrix is outside the image of d", numerics::to_std(zeta));
  }
  return zeta;
}

Eigen::VectorXd GroupChart::coordinates(const Element& g) const {
  const Element log = g.log();
  const Eigen::VectorXd zeta = decompose(log);
  const Eigen::VectorXd x = triple_.g_coordinates(zeta);
  if ((triple_.g_matrix() * x - zeta).norm() > kChartTolerance * (1.0 + zeta.norm())) {
    throw DomainEscape("group element is outside the exponential chart", numerics::to_std(zeta));
  }
  return x;
}

Eigen::MatrixXd GroupChart::ad(const Element& g) const {
  if (mode_ == Mode::Adjoint) return g.real();
  const Element inv = g.inverse();
  Eigen::MatrixXd m(triple_.dim(), triple_.dim());
  for (std::size_t a = 0; a < triple_.dim(); ++a) m.col(a) = decompose(g * rep_[a] * inv);
  return m;
}

Eigen::MatrixXd GroupChart::maurer_cartan(const Eigen::VectorXd& x) const {
  const std::size_t n = dim();
  // exp([[-A, I], [0, 0]]) has top-right block int_0^1 exp(-s A) ds.
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = -triple_.ad_g(x);
  block.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd e = block.exp();
  return e.topRightCorner(n, n);
}

}  // namespace diraclab::maningroup
