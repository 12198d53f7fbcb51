#include "diraclab/tensor.hpp"

#include <sstream>

#include "diraclab/errors.hpp"

namespace diraclab {

std::string format_point(const std::vector<double>& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ")";
  return os.str();
}

}  // namespace diraclab

namespace diraclab::fields {

Chart Chart::standard(std::size_t n) {
  Chart c;
  c.dim = n;
  for (std::size_t i = 0; i < n; ++i) c.names.push_back("x" + std::to_string(i + 1));
  return c;
}

Chart Chart::named(std::vector<std::string> names) {
  Chart c;
  c.dim = names.size();
  c.names = std::move(names);
  return c;
}

const char* kind_name(TensorKind k) { return k == TensorKind::Vector ? "vector" : "form"; }

int sort_indices(Indices& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

template <class T>
T PointValues<T>::get(Indices idx) const {
  int s = sort_indices(idx);
  if (s == 0) return T(0);
  auto it = values.find(idx);
  if (it == values.end()) return T(0);
  return s > 0 ? it->second : T(-it->second);
}

template struct PointValues<double>;
template struct PointValues<Rational>;

template <TensorKind K>
Multi<K> Multi<K>::scalar(const Poly& f) {
  Multi m(f.nvars(), 0);
  if (!f.is_zero()) m.comps_.emplace(Indices{}, f);
  return m;
}

template <TensorKind K>
void Multi<K>::check_index(const Indices& idx) const {
  if (idx.size() != degree_) {
    throw DegreeError("index tuple of length " + std::to_string(idx.size()) +
                      " for a tensor of degree " + std::to_string(degree_));
  }
  for (auto i : idx) {
    if (i >= dim_) throw std::out_of_range("tensor index out of range");
  }
}

template <TensorKind K>
void Multi<K>::set(Indices idx, const Poly& value) {
  check_index(idx);
  if (value.nvars() != dim_) throw ChartMismatch("component lives on a different chart");
  int s = sort_indices(idx);
  if (s == 0) {
    if (!value.is_zero()) throw DegreeError("repeated index with a nonzero value");
    return;
  }
  if (value.is_zero()) {
    comps_.erase(idx);
  } else {
    comps_[idx] = s > 0 ? value : -value;
  }
}

template <TensorKind K>
void Multi<K>::add(Indices idx, const Poly& value) {
  check_index(idx);
  if (value.nvars() != dim_) throw ChartMismatch("component lives on a different chart");
  int s = sort_indices(idx);
  if (s == 0 || value.is_zero()) return;
  auto it = comps_.find(idx);
  if (it == comps_.end()) {
    comps_.emplace(idx, s > 0 ? value : -value);
    return;
  }
  if (s > 0) it->second += value;
  else it->second -= value;
  if (it->second.is_zero()) comps_.erase(it);
}

template <TensorKind K>
Poly Multi<K>::get(Indices idx) const {
  check_index(idx);
  int s = sort_indices(idx);
  if (s == 0) return Poly(dim_);
  auto it = comps_.find(idx);
  if (it == comps_.end()) return Poly(dim_);
  return s > 0 ? it->second : -it->second;
}

template <TensorKind K>
Multi<K>& Multi<K>::operator+=(const Multi& o) {
  if (dim_ != o.dim_) throw ChartMismatch("tensors on charts of different dimension");
  if (degree_ != o.degree_) throw DegreeError("adding tensors of different degree");
  for (const auto& [idx, p] : o.comps_) add(idx, p);
  return *this;
}

template <TensorKind K>
Multi<K>& Multi<K>::operator-=(const Multi& o) {
  if (dim_ != o.dim_) throw ChartMismatch("tensors on charts of different dimension");
  if (degree_ != o.degree_) throw DegreeError("subtracting tensors of different degree");
  for (const auto& [idx, p] : o.comps_) add(idx, -p);
  return *this;
}

template <TensorKind K>
Multi<K>& Multi<K>::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    comps_.clear();
    return *this;
  }
  for (auto& [idx, p] : comps_) p *= c;
  return *this;
}

template <TensorKind K>
Multi<K> Multi<K>::operator-() const {
  Multi r = *this;
  for (auto& [idx, p] : r.comps_) p = -p;
  return r;
}

template <TensorKind K>
Multi<K> Multi<K>::times(const Poly& f) const {
  if (f.nvars() != dim_) throw ChartMismatch("scalar lives on a different chart");
  Multi r(dim_, degree_);
  for (const auto& [idx, p] : comps_) r.add(idx, p * f);
  return r;
}

template <TensorKind K>
PointValues<double> Multi<K>::evaluate(std::span<const double> x) const {
  PointValues<double> v{dim_, degree_, {}};
  for (const auto& [idx, p] : comps_) v.values.emplace(idx, p.eval(x));
  return v;
}

template <TensorKind K>
PointValues<Rational> Multi<K>::evaluate(std::span<const Rational> x) const {
  PointValues<Rational> v{dim_, degree_, {}};
  for (const auto& [idx, p] : comps_) v.values.emplace(idx, p.eval(x));
  return v;
}

template <TensorKind K>
Eigen::MatrixXd Multi<K>::matrix_at(std::span<const double> x) const {
  if (degree_ != 2) throw DegreeError("matrix_at needs a degree-2 tensor");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
  for (const auto& [idx, p] : comps_) {
    double v = p.eval(x);
    m(idx[0], idx[1]) = v;
    m(idx[1], idx[0]) = -v;
  }
  return m;
}

template <TensorKind K>
Eigen::VectorXd Multi<K>::vector_at(std::span<const double> x) const {
  if (degree_ != 1) throw DegreeError("vector_at needs a degree-1 tensor");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim_);
  for (const auto& [idx, p] : comps_) v(idx[0]) = p.eval(x);
  return v;
}

template <TensorKind K>
std::string Multi<K>::str(const Chart& chart) const {
  if (comps_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, p] : comps_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << p.str(chart.names) << ")";
    for (std::size_t k = 0; k < idx.size(); ++k) {
      os << (k ? "^" : " ") << (K == TensorKind::Vector ? "D" : "d") << chart.names.at(idx[k]);
    }
  }
  return os.str();
}

template class Multi<TensorKind::Vector>;
template class Multi<TensorKind::Form>;

PolyKVector coordinate_vector(std::size_t dim, std::size_t i) {
  PolyKVector v(dim, 1);
  v.set({static_cast<std::uint32_t>(i)}, Poly::constant(dim, 1));
  return v;
}

PolyKForm coordinate_differential(std::size_t dim, std::size_t i) {
  PolyKForm a(dim, 1);
  a.set({static_cast<std::uint32_t>(i)}, Poly::constant(dim, 1));
  return a;
}

PolyKVector vector_field(const std::vector<Poly>& components) {
  PolyKVector v(components.size(), 1);
  for (std::uint32_t i = 0; i < components.size(); ++i) v.set({i}, components[i]);
  return v;
}

PolyKForm one_form(const std::vector<Poly>& components) {
  PolyKForm a(components.size(), 1);
  for (std::uint32_t i = 0; i < components.size(); ++i) a.set({i}, components[i]);
  return a;
}

namespace {

template <TensorKind K>
std::vector<Poly> components_impl(const Multi<K>& t) {
  if (t.degree() != 1) throw DegreeError("expected a degree-1 tensor");
  std::vector<Poly> out(t.dim(), Poly(t.dim()));
  for (const auto& [idx, p] : t.components()) out[idx[0]] = p;
  return out;
}

void require_vector_field(const PolyKVector& x) {
  if (x.degree() != 1) throw DegreeError("expected a vector field (degree 1)");
}

// Contract a degree-1 tensor of kind A into the first slot of a tensor of the
// dual kind B: (i_a t)_{J} = sum_j a_j t_{jJ}.
template <TensorKind A, TensorKind B>
Multi<B> contract_first(const Multi<A>& a, const Multi<B>& t) {
  if (a.degree() != 1) throw DegreeError("contraction needs a degree-1 argument");
  if (a.dim() != t.dim()) throw ChartMismatch("contraction across charts of different dimension");
  if (t.degree() == 0) throw DegreeError("cannot contract into a degree-0 tensor");
  Multi<B> r(t.dim(), t.degree() - 1);
  for (const auto& [idx, p] : t.components()) {
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      Poly ai = a.get({idx[pos]});
      if (ai.is_zero()) continue;
      Indices rest;
      for (std::size_t q = 0; q < idx.size(); ++q) {
        if (q != pos) rest.push_back(idx[q]);
      }
      Poly term = ai * p;
      r.add(rest, (pos % 2 == 0) ? term : -term);
    }
  }
  return r;
}

template <TensorKind K>
Multi<K> wedge_impl(const Multi<K>& a, const Multi<K>& b) {
  if (a.dim() != b.dim()) throw ChartMismatch("wedge of tensors on different charts");
  Multi<K> r(a.dim(), a.degree() + b.degree());
  if (r.degree() > r.dim()) return r;
  for (const auto& [ia, pa] : a.components()) {
    for (const auto& [ib, pb] : b.components()) {
      Indices idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      r.add(idx, pa * pb);
    }
  }
  return r;
}

}  // namespace

std::vector<Poly> components_of(const PolyKVector& v) { return components_impl(v); }
std::vector<Poly> components_of(const PolyKForm& a) { return components_impl(a); }

Poly apply(const PolyKVector& x, const Poly& f) {
  require_vector_field(x);
  if (x.dim() != f.nvars()) throw ChartMismatch("vector field and function on different charts");
  Poly r(f.nvars());
  for (const auto& [idx, p] : x.components()) r += p * f.derivative(idx[0]);
  return r;
}

PolyKForm exterior_derivative(const PolyKForm& a) {
  PolyKForm r(a.dim(), a.degree() + 1);
  if (r.degree() > r.dim()) return r;
  for (const auto& [idx, p] : a.components()) {
    for (std::uint32_t j = 0; j < a.dim(); ++j) {
      Poly dp = p.derivative(j);
      if (dp.is_zero()) continue;
      Indices full{j};
      full.insert(full.end(), idx.begin(), idx.end());
      r.add(full, dp);
    }
  }
  return r;
}

PolyKForm differential(const Poly& f) { return exterior_derivative(PolyKForm::scalar(f)); }

PolyKForm interior_product(const PolyKVector& x, const PolyKForm& a) {
  require_vector_field(x);
  return contract_first(x, a);
}

PolyKForm wedge(const PolyKForm& a, const PolyKForm& b) { return wedge_impl(a, b); }
PolyKVector wedge(const PolyKVector& a, const PolyKVector& b) { return wedge_impl(a, b); }

PolyKForm lie_derivative(const PolyKVector& x, const PolyKForm& a) {
  require_vector_field(x);
  if (x.dim() != a.dim()) throw ChartMismatch("Lie derivative across charts");
  if (a.degree() == 0) return interior_product(x, exterior_derivative(a));
  return exterior_derivative(interior_product(x, a)) + interior_product(x, exterior_derivative(a));
}

PolyKVector lie_derivative(const PolyKVector& x, const PolyKVector& t) {
  require_vector_field(x);
  if (x.dim() != t.dim()) throw ChartMismatch("Lie derivative across charts");
  const std::size_t n = x.dim();
  PolyKVector r(n, t.degree());
  std::vector<Poly> xc = components_of(x);
  for (const auto& [idx, p] : t.components()) {
    r.add(idx, apply(x, p));
    // [X, d_i] = -sum_j (d_i X^j) d_j, applied slot by slot.
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      for (std::uint32_t j = 0; j < n; ++j) {
        Poly dx = xc[j].derivative(idx[pos]);
        if (dx.is_zero()) continue;
        Indices moved = idx;
        moved[pos] = j;
        r.add(moved, -(p * dx));
      }
    }
  }
  return r;
}

PolyKVector lie_bracket(const PolyKVector& x, const PolyKVector& y) {
  if (y.degree() != 1) throw DegreeError("lie_bracket expects vector fields");
  return lie_derivative(x, y);
}

Poly contract(const PolyKForm& a, const std::vector<PolyKVector>& vs) {
  if (vs.size() != a.degree()) throw DegreeError("wrong number of arguments for contraction");
  PolyKForm cur = a;
  for (const auto& v : vs) cur = contract_first(v, cur);
  return cur.get({});
}

Poly contract(const PolyKVector& t, const std::vector<PolyKForm>& as) {
  if (as.size() != t.degree()) throw DegreeError("wrong number of arguments for contraction");
  PolyKVector cur = t;
  for (const auto& a : as) cur = contract_first(a, cur);
  return cur.get({});
}

}  // namespace diraclab::fields
