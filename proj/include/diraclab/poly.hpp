#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "diraclab/rational.hpp"

namespace diraclab::fields {

using Exponents = std::vector<std::uint32_t>;

// Graded lexicographic order: total degree first, then lexicographic with
// the first variable most significant.
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Polynomial with rational coefficients in a fixed number of variables.
// Zero coefficients are never stored, so equality is structural.
class Poly {
 public:
  using Terms = std::map<Exponents, Rational, GradedLex>;

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t i);
  static Poly monomial(std::size_t nvars, Exponents exps, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponents& e) const;

  void add_term(const Exponents& e, const Rational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;

  Poly derivative(std::size_t var) const;
  Poly homogeneous_part(int d) const;

  Rational eval(std::span<const Rational> x) const;
  double eval(std::span<const double> x) const;

  // Substitute subs[i] for variable i. All substitutes share one chart.
  Poly compose(std::span<const Poly> subs) const;

  std::string str(const std::vector<std::string>& names = {}) const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_;
  Terms terms_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Poly a, const Rational& c);
Poly operator*(const Rational& c, Poly a);

// Flattened form of a polynomial for fast repeated double evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const Poly& p);
  double operator()(const double* x) const;
  bool is_zero() const { return coeffs_.empty(); }

 private:
  std::size_t nvars_ = 0;
  std::vector<double> coeffs_;
  std::vector<std::uint32_t> exps_;
};

}  // namespace diraclab::fields
