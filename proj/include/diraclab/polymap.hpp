#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "diraclab/tensor.hpp"

namespace diraclab::fields {

// Polynomial map from a chart of dimension source_dim to one of target_dim.
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(std::size_t source_dim, std::vector<Poly> components);

  static PolyMap identity(std::size_t n);

  std::size_t source_dim() const { return source_dim_; }
  std::size_t target_dim() const { return components_.size(); }
  const std::vector<Poly>& components() const { return components_; }

  // jacobian()[i][j] = d(component i)/d(x_j).
  std::vector<std::vector<Poly>> jacobian() const;

  Eigen::VectorXd value_at(std::span<const double> x) const;
  Eigen::MatrixXd jacobian_at(std::span<const double> x) const;
  std::vector<Rational> value_at(std::span<const Rational> x) const;

 private:
  std::size_t source_dim_ = 0;
  std::vector<Poly> components_;
};

// phi^* f = f o phi.
Poly pullback(const PolyMap& phi, const Poly& f);
PolyKForm pullback_form(const PolyMap& phi, const PolyKForm& a);
// (d phi)_x v.
Eigen::VectorXd pushforward_vector_at_point(const PolyMap& phi, std::span<const double> x,
                                            const Eigen::VectorXd& v);
// outer o inner.
PolyMap compose(const PolyMap& outer, const PolyMap& inner);

// Smooth map given by callbacks, for maps outside the polynomial class.
// Without an explicit Jacobian, central differences are used.
struct NumericMap {
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> value;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian;
  double fd_step = 1e-6;

  static NumericMap from_poly(const PolyMap& phi);
  Eigen::MatrixXd jacobian_at(const Eigen::VectorXd& x) const;
};

}  // namespace diraclab::fields
