#pragma once

#include <gmpxx.h>

#include <string>

namespace diraclab {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

// Exact conversion of a finite double (binary expansion, no rounding).
inline Rational from_double(double x) { return Rational(x); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace diraclab
