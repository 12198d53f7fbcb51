#include "diraclab/poly.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "diraclab/errors.hpp"

namespace diraclab::fields {

namespace {

std::uint32_t total(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

void check_same(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) {
    throw ChartMismatch("polynomials on charts of dimension " + std::to_string(a.nvars()) +
                        " and " + std::to_string(b.nvars()));
  }
}

}  // namespace

bool GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = total(a);
  const auto db = total(b);
  if (da != db) return da < db;
  // Larger exponent of an earlier variable ranks higher.
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw std::out_of_range("variable index out of range");
  Exponents e(nvars, 0);
  e[i] = 1;
  Poly p(nvars);
  p.add_term(e, Rational(1));
  return p;
}

Poly Poly::monomial(std::size_t nvars, Exponents exps, const Rational& c) {
  if (exps.size() != nvars) throw ChartMismatch("exponent vector has wrong length");
  Poly p(nvars);
  p.add_term(exps, c);
  return p;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total(terms_.rbegin()->first));
}

bool Poly::is_constant() const { return degree() <= 0; }

Rational Poly::constant_term() const { return coefficient(Exponents(nvars_, 0)); }

Rational Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != nvars_) throw ChartMismatch("exponent vector has wrong length");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  check_same(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

Poly Poly::derivative(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("derivative variable out of range");
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    f[var] -= 1;
    r.terms_.emplace_hint(r.terms_.end(), f, c * e[var]);
  }
  return r;
}

Poly Poly::homogeneous_part(int d) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (static_cast<int>(total(e)) == d) r.terms_.emplace_hint(r.terms_.end(), e, c);
  }
  return r;
}

Rational Poly::eval(std::span<const Rational> x) const {
  if (x.size() != nvars_) throw ChartMismatch("evaluation point has wrong dimension");
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= x[i];
    }
    acc += t;
  }
  return acc;
}

double Poly::eval(std::span<const double> x) const {
  if (x.size() != nvars_) throw ChartMismatch("evaluation point has wrong dimension");
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i]) t *= std::pow(x[i], static_cast<int>(e[i]));
    }
    acc += t;
  }
  return acc;
}

Poly Poly::compose(std::span<const Poly> subs) const {
  if (subs.size() != nvars_) throw ChartMismatch("substitution has wrong number of entries");
  const std::size_t target = subs.empty() ? 0 : subs[0].nvars();
  for (const auto& s : subs) {
    if (s.nvars() != target) throw ChartMismatch("substitutes live on different charts");
  }
  // powers[i][k] = subs[i]^k, filled on demand.
  std::vector<std::vector<Poly>> powers(nvars_);
  auto power = [&](std::size_t i, std::uint32_t k) -> const Poly& {
    auto& row = powers[i];
    if (row.empty()) row.push_back(Poly::constant(target, Rational(1)));
    while (row.size() <= k) row.push_back(row.back() * subs[i]);
    return row[k];
  };
  Poly r(target);
  for (const auto& [e, c] : terms_) {
    Poly t = Poly::constant(target, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i]) t = t * power(i, e[i]);
    }
    r += t;
  }
  return r;
}

std::string Poly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = c;
    if (!first) os << (sgn(a) < 0 ? " - " : " + ");
    else if (sgn(a) < 0) os << "-";
    first = false;
    a = abs(a);
    bool unit = (a == 1);
    bool any = false;
    if (!unit) os << a.get_str();
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      if (!unit || any) os << "*";
      os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
      if (e[i] > 1) os << "^" << e[i];
      any = true;
    }
    if (unit && !any) os << "1";
  }
  return os.str();
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }

Poly operator*(const Poly& a, const Poly& b) {
  check_same(a, b);
  Poly r(a.nvars());
  Exponents e(a.nvars());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly operator*(Poly a, const Rational& c) { return a *= c; }
Poly operator*(const Rational& c, Poly a) { return a *= c; }

CompiledPoly::CompiledPoly(const Poly& p) : nvars_(p.nvars()) {
  for (const auto& [e, c] : p.terms()) {
    coeffs_.push_back(c.get_d());
    exps_.insert(exps_.end(), e.begin(), e.end());
  }
}

double CompiledPoly::operator()(const double* x) const {
  double acc = 0.0;
  const std::uint32_t* e = exps_.data();
  for (double c : coeffs_) {
    double t = c;
    for (std::size_t i = 0; i < nvars_; ++i, ++e) {
      for (std::uint32_t k = 0; k < *e; ++k) t *= x[i];
    }
    acc += t;
  }
  return acc;
}

}  // namespace diraclab::fields
