#include <functional>

#include "diraclab/errors.hpp"
#include "diraclab/maningroup.hpp"

namespace diraclab::maningroup {

namespace {

// Square matrix with Gaussian-rational entries, row-major.
struct GaussMatrix {
  std::size_t size = 0;
  std::vector<Rational> re, im;

  explicit GaussMatrix(std::size_t m) : size(m), re(m * m), im(m * m) {}

  void set(std::size_t i, std::size_t j, long real, long imag = 0) {
    re[i * size + j] = real;
    im[i * size + j] = imag;
  }

  GaussMatrix operator*(const GaussMatrix& o) const {
    GaussMatrix r(size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t k = 0; k < size; ++k)
        for (std::size_t j = 0; j < size; ++j) {
          const std::size_t a = i * size + k, b = k * size + j, c = i * size + j;
          r.re[c] += re[a] * o.re[b] - im[a] * o.im[b];
          r.im[c] += re[a] * o.im[b] + im[a] * o.re[b];
        }
    return r;
  }

  GaussMatrix operator-(const GaussMatrix& o) const {
    GaussMatrix r(size);
    for (std::size_t i = 0; i < re.size(); ++i) {
      r.re[i] = re[i] - o.re[i];
      r.im[i] = im[i] - o.im[i];
    }
    return r;
  }

  GroupChart::Element to_complex() const {
    GroupChart::Element m(size, size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) m(i, j) = {to_double(re[i * size + j]), to_double(im[i * size + j])};
    return m;
  }
};

using MatrixMetric = std::function<Rational(const GaussMatrix&, const GaussMatrix&)>;

// Structure constants and metric of the real span of a matrix basis.
MetrizedLieAlgebra from_matrix_basis(const std::vector<GaussMatrix>& basis, const MatrixMetric& metric) {
  const std::size_t n = basis.size();
  const std::size_t entries = basis.front().re.size();
  QMatrix stacked(2 * entries, n);
  auto column = [entries](const GaussMatrix& m) {
    std::vector<Rational> v(2 * entries);
    for (std::size_t i = 0; i < entries; ++i) {
      v[i] = m.re[i];
      v[entries + i] = m.im[i];
    }
    return v;
  };
  for (std::size_t a = 0; a < n; ++a) {
    const auto v = column(basis[a]);
    for (std::size_t i = 0; i < v.size(); ++i) stacked(i, a) = v[i];
  }
  StructureConstants c(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto coeffs = numerics::solve(stacked, column(basis[a] * basis[b] - basis[b] * basis[a]));
      if (!coeffs) throw std::logic_error("matrix basis is not closed under commutators");
      for (std::size_t k = 0; k < n; ++k) c.set_antisymmetric(a, b, k, (*coeffs)[k]);
    }
  QMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = metric(basis[i], basis[j]);
  return MetrizedLieAlgebra(std::move(c), std::move(b));
}

QMatrix columns(std::size_t dim, const std::vector<std::vector<std::pair<std::size_t, long>>>& cols) {
  QMatrix m(dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, v] : cols[j]) m(i, j) = v;
  return m;
}

Rational block_trace(const GaussMatrix& x, const GaussMatrix& y, std::size_t from, std::size_t to, bool imaginary) {
  const GaussMatrix p = x * y;
  Rational s = 0;
  for (std::size_t i = from; i < to; ++i) s += imaginary ? p.im[i * p.size + i] : p.re[i * p.size + i];
  return s;
}

// sl(2,C) as a real algebra: su(2) = (u1, u2, u3), then a + n = (a1, n1, n2).
std::vector<GaussMatrix> iwasawa_basis() {
  std::vector<GaussMatrix> b(6, GaussMatrix(2));
  b[0].set(0, 0, 0, 1), b[0].set(1, 1, 0, -1);
  b[1].set(0, 1, 1), b[1].set(1, 0, -1);
  b[2].set(0, 1, 0, 1), b[2].set(1, 0, 0, 1);
  b[3].set(0, 0, 1), b[3].set(1, 1, -1);
  b[4].set(0, 1, 1);
  b[5].set(0, 1, 0, 1);
  return b;
}

// sl(2,R) + sl(2,R) as 4 x 4 block-diagonal matrices: (H,0), (E,0), (F,0), (0,H), (0,E), (0,F).
std::vector<GaussMatrix> standard_basis() {
  std::vector<GaussMatrix> b(6, GaussMatrix(4));
  for (std::size_t block = 0; block < 2; ++block) {
    const std::size_t o = 2 * block;
    b[3 * block].set(o, o, 1), b[3 * block].set(o + 1, o + 1, -1);
    b[3 * block + 1].set(o, o + 1, 1);
    b[3 * block + 2].set(o + 1, o, 1);
  }
  return b;
}

// sl(2,R) + R as 3 x 3 block-diagonal matrices: H, E, F, then the R factor.
std::vector<GaussMatrix> borel_basis() {
  std::vector<GaussMatrix> b(4, GaussMatrix(3));
  b[0].set(0, 0, 1), b[0].set(1, 1, -1);
  b[1].set(0, 1, 1);
  b[2].set(1, 0, 1);
  b[3].set(2, 2, 1);
  return b;
}

std::vector<GroupChart::Element> to_complex(const std::vector<GaussMatrix>& basis) {
  std::vector<GroupChart::Element> r;
  for (const auto& m : basis) r.push_back(m.to_complex());
  return r;
}

}  // namespace

ManinTriple semidirect_so3() {
  // e_0..e_2 span so(3), e_3..e_5 the dual basis of so(3)*.
  StructureConstants c(6);
  const std::size_t cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& [i, j, k] : cyc) {
    c.set_antisymmetric(i, j, k, 1);
    c.set_antisymmetric(i, 3 + j, 3 + k, 1);
    c.set_antisymmetric(j, 3 + i, 3 + k, -1);
  }
  QMatrix b(6, 6);
  for (std::size_t i = 0; i < 3; ++i) b(i, 3 + i) = b(3 + i, i) = 1;
  MetrizedLieAlgebra d(std::move(c), std::move(b));
  return ManinTriple(std::move(d), columns(6, {{{0, 1}}, {{1, 1}}, {{2, 1}}}),
                     columns(6, {{{3, 1}}, {{4, 1}}, {{5, 1}}}));
}

ManinTriple iwasawa_su2() {
  auto d = from_matrix_basis(iwasawa_basis(), [](const GaussMatrix& x, const GaussMatrix& y) -> Rational {
    return block_trace(x, y, 0, 2, true);
  });
  return ManinTriple(std::move(d), columns(6, {{{0, 1}}, {{1, 1}}, {{2, 1}}}),
                     columns(6, {{{3, 1}}, {{4, 1}}, {{5, 1}}}));
}

ManinTriple standard_sl2() {
  auto d = from_matrix_basis(standard_basis(), [](const GaussMatrix& x, const GaussMatrix& y) -> Rational {
    return block_trace(x, y, 0, 2, false) - block_trace(x, y, 2, 4, false);
  });
  // Diagonal copy of sl(2,R); u spanned by (H,-H), (E,0), (0,F).
  return ManinTriple(std::move(d), columns(6, {{{0, 1}, {3, 1}}, {{1, 1}, {4, 1}}, {{2, 1}, {5, 1}}}),
                     columns(6, {{{0, 1}, {3, -1}}, {{1, 1}}, {{5, 1}}}));
}

ManinTriple borel_sl2() {
  auto d = from_matrix_basis(borel_basis(), [](const GaussMatrix& x, const GaussMatrix& y) -> Rational {
    return block_trace(x, y, 0, 2, false) - 2 * block_trace(x, y, 2, 3, false);
  });
  // b_+ = span((H, 1), (E, 0)), b_- = span((H, -1), (F, 0)).
  return ManinTriple(std::move(d), columns(4, {{{0, 1}, {3, 1}}, {{1, 1}}}),
                     columns(4, {{{0, 1}, {3, -1}}, {{2, 1}}}));
}

ManinTriple drinfeld_double(const ManinTriple& t) {
  const auto& d = t.algebra();
  const std::size_t n = d.dim();
  StructureConstants c(2 * n);
  QMatrix b(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        c.at(i, j, k) = d.constants().at(i, j, k);
        c.at(n + i, n + j, n + k) = d.constants().at(i, j, k);
      }
      b(i, j) = d.metric()(i, j);
      b(n + i, n + j) = -d.metric()(i, j);
    }
  }
  QMatrix diagonal(2 * n, n), sum(2 * n, n);
  for (std::size_t a = 0; a < n; ++a) diagonal(a, a) = diagonal(n + a, a) = 1;
  const std::size_t half = t.half_dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < half; ++j) {
      sum(i, j) = t.g_basis()(i, j);
      sum(n + i, half + j) = t.h_basis()(i, j);
    }
  return ManinTriple(MetrizedLieAlgebra(std::move(c), std::move(b)), std::move(diagonal), std::move(sum));
}

GroupChart builtin_chart(const std::string& name, const ManinTriple& t) {
  if (name == "semidirect-so3" || name == "double-semidirect-so3") return GroupChart::adjoint(t);
  if (name == "iwasawa-su2") return GroupChart::representation(t, to_complex(iwasawa_basis()), name);
  if (name == "standard-sl2") return GroupChart::representation(t, to_complex(standard_basis()), name);
  if (name == "borel-sl2") return GroupChart::representation(t, to_complex(borel_basis()), name);
  throw PreconditionError("unknown built-in chart '" + name + "'");
}

BuiltinTriple builtin_triple(const std::string& name) {
  ManinTriple t = [&] {
    if (name == "semidirect-so3") return semidirect_so3();
    if (name == "iwasawa-su2") return iwasawa_su2();
    if (name == "standard-sl2") return standard_sl2();
    if (name == "borel-sl2") return borel_sl2();
    if (name == "double-semidirect-so3") return drinfeld_double(semidirect_so3());
    throw PreconditionError("unknown built-in triple '" + name + "'");
  }();
  GroupChart chart = builtin_chart(name, t);
  return BuiltinTriple{name, std::move(t), std::move(chart)};
}

std::vector<BuiltinTriple> builtin_triples() {
  std::vector<BuiltinTriple> r;
  for (const char* name : {"semidirect-so3", "iwasawa-su2", "standard-sl2", "borel-sl2", "double-semidirect-so3"}) {
    r.push_back(builtin_triple(name));
  }
  return r;
}

}  // namespace diraclab::maningroup
