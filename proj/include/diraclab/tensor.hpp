#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "diraclab/poly.hpp"

namespace diraclab::fields {

struct Chart {
  std::size_t dim = 0;
  std::vector<std::string> names;

  static Chart standard(std::size_t n);
  static Chart named(std::vector<std::string> names);
};

enum class TensorKind { Vector, Form };

const char* kind_name(TensorKind k);

// Strictly increasing 0-based index tuple.
using Indices = std::vector<std::uint32_t>;

// Sorts idx in place; returns the permutation sign, or 0 on a repeated index.
int sort_indices(Indices& idx);

// Exact values of an evaluated tensor, keyed by increasing index tuples.
template <class T>
struct PointValues {
  std::size_t dim = 0;
  std::size_t degree = 0;
  std::map<Indices, T> values;

  T get(Indices idx) const;
};

// Totally antisymmetric tensor with polynomial coefficients: a k-vector field
// (contravariant) or a k-form (covariant). Only components with strictly
// increasing indices are stored.
template <TensorKind K>
class Multi {
 public:
  Multi() = default;
  Multi(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {}

  static Multi scalar(const Poly& f);

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  static constexpr TensorKind kind() { return K; }
  const std::map<Indices, Poly>& components() const { return comps_; }

  bool is_zero() const { return comps_.empty(); }

  // Indices may come in any order; the value is stored with the sign of the
  // sorting permutation. Repeated indices require a zero value.
  void set(Indices idx, const Poly& value);
  void add(Indices idx, const Poly& value);
  Poly get(Indices idx) const;

  Multi& operator+=(const Multi& o);
  Multi& operator-=(const Multi& o);
  Multi& operator*=(const Rational& c);
  Multi operator-() const;
  Multi times(const Poly& f) const;

  PointValues<double> evaluate(std::span<const double> x) const;
  PointValues<Rational> evaluate(std::span<const Rational> x) const;

  // Dense n x n antisymmetric matrix of a degree-2 tensor at x.
  Eigen::MatrixXd matrix_at(std::span<const double> x) const;
  // Dense component vector of a degree-1 tensor at x.
  Eigen::VectorXd vector_at(std::span<const double> x) const;

  std::string str(const Chart& chart) const;

  friend bool operator==(const Multi& a, const Multi& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

 private:
  void check_index(const Indices& idx) const;

  std::size_t dim_ = 0;
  std::size_t degree_ = 0;
  std::map<Indices, Poly> comps_;
};

using PolyKVector = Multi<TensorKind::Vector>;
using PolyKForm = Multi<TensorKind::Form>;

template <TensorKind K>
Multi<K> operator+(Multi<K> a, const Multi<K>& b) {
  return a += b;
}
template <TensorKind K>
Multi<K> operator-(Multi<K> a, const Multi<K>& b) {
  return a -= b;
}

PolyKVector coordinate_vector(std::size_t dim, std::size_t i);
PolyKForm coordinate_differential(std::size_t dim, std::size_t i);
PolyKVector vector_field(const std::vector<Poly>& components);
PolyKForm one_form(const std::vector<Poly>& components);
std::vector<Poly> components_of(const PolyKVector& v);
std::vector<Poly> components_of(const PolyKForm& a);

// X(f) for a vector field X.
Poly apply(const PolyKVector& x, const Poly& f);

PolyKForm exterior_derivative(const PolyKForm& a);
PolyKForm differential(const Poly& f);
PolyKForm interior_product(const PolyKVector& x, const PolyKForm& a);

PolyKForm wedge(const PolyKForm& a, const PolyKForm& b);
PolyKVector wedge(const PolyKVector& a, const PolyKVector& b);

// Lie derivative of a form by Cartan's formula.
PolyKForm lie_derivative(const PolyKVector& x, const PolyKForm& a);
// Lie derivative of a multivector field; for degree 1 this is [x, t].
PolyKVector lie_derivative(const PolyKVector& x, const PolyKVector& t);
PolyKVector lie_bracket(const PolyKVector& x, const PolyKVector& y);

// Full contraction a(v1, ..., vk) for k-form a and vector fields v.
Poly contract(const PolyKForm& a, const std::vector<PolyKVector>& vs);
// Full contraction t(a1, ..., ak) for k-vector t and 1-forms a.
Poly contract(const PolyKVector& t, const std::vector<PolyKForm>& as);

}  // namespace diraclab::fields
