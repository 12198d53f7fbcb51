#include "diraclab/dense.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/poisson.hpp"

namespace diraclab::poisson {

LeafData leaf_data_at_point(const PoissonBivector& pi, const std::vector<double>& m) {
  if (m.size() != pi.dim()) throw ChartMismatch("point has the wrong dimension");
  const Eigen::MatrixXd p = pi.matrix_at(m);
  LeafData leaf;
  leaf.point = m;
  // ran(pi#) is the column space of the (antisymmetric) component matrix.
  const Eigen::MatrixXd range = numerics::column_space(p);
  leaf.rank = static_cast<std::size_t>(range.cols());
  // Gram-Schmidt on the projected coordinate vectors, so that coordinate
  // planes contained in the leaf come back as coordinate vectors.
  const Eigen::MatrixXd projector = range * range.transpose();
  leaf.basis = Eigen::MatrixXd(pi.dim(), leaf.rank);
  Eigen::Index found = 0;
  for (Eigen::Index i = 0; i < p.rows() && found < range.cols(); ++i) {
    Eigen::VectorXd v = projector.col(i);
    for (Eigen::Index k = 0; k < found; ++k) v -= leaf.basis.col(k).dot(v) * leaf.basis.col(k);
    if (v.norm() > 1e-8) leaf.basis.col(found++) = v.normalized();
  }
  leaf.leaf_poisson = leaf.basis.transpose() * p * leaf.basis;
  leaf.leaf_form = leaf.rank == 0 ? Eigen::MatrixXd(0, 0) : Eigen::MatrixXd(-leaf.leaf_poisson.inverse());
  return leaf;
}

}  // namespace diraclab::poisson
