#include "diraclab/dense.hpp"

namespace diraclab::numerics {

namespace {

std::size_t rank_from(const Eigen::VectorXd& s, double rel) {
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * s(0)) ++r;
  return r;
}

}  // namespace

std::size_t numeric_rank(const Eigen::MatrixXd& m, double rel) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return rank_from(svd.singularValues(), rel);
}

Eigen::MatrixXd column_space(const Eigen::MatrixXd& m, double rel) {
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
  std::size_t r = rank_from(svd.singularValues(), rel);
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rel) {
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  std::size_t r = rank_from(svd.singularValues(), rel);
  return svd.matrixV().rightCols(m.cols() - r);
}

double subspace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() == 0) return 0.0;
  Eigen::MatrixXd resid = a - b * (b.transpose() * a);
  if (resid.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(resid).singularValues()(0);
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::MatrixXd canonical_symplectic(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * k, 2 * k);
  w.topRightCorner(k, k) = Eigen::MatrixXd::Identity(k, k);
  w.bottomLeftCorner(k, k) = -Eigen::MatrixXd::Identity(k, k);
  return w;
}

}  // namespace diraclab::numerics
