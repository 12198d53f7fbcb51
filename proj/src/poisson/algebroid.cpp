#include "diraclab/algebroid.hpp"

#include "diraclab/errors.hpp"

namespace diraclab::poisson {

using fields::Exponents;

namespace {

// Re-express a base polynomial on the base x fiber chart.
Poly lift(const Poly& p, std::size_t total) {
  Poly r(total);
  for (const auto& [e, c] : p.terms()) {
    Exponents f = e;
    f.resize(total, 0);
    r.add_term(f, c);
  }
  return r;
}

// Apply a base vector field (given by components) to a base polynomial.
Poly apply_base(const std::vector<Poly>& v, const Poly& f) {
  Poly r(f.nvars());
  for (std::size_t a = 0; a < v.size(); ++a) {
    if (!v[a].is_zero()) r += v[a] * f.derivative(a);
  }
  return r;
}

std::string pair_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

LieAlgebroidData::LieAlgebroidData(std::size_t base_dim, std::size_t rank)
    : m_(base_dim), n_(rank), anchor_(rank, std::vector<Poly>(base_dim, Poly(base_dim))),
      c_(rank * rank * rank, Poly(base_dim)) {}

void LieAlgebroidData::set_anchor(std::size_t i, std::vector<Poly> components) {
  if (i >= n_) throw std::out_of_range("anchor index out of range");
  if (components.size() != m_) throw ChartMismatch("anchor has the wrong number of components");
  for (const auto& p : components)
    if (p.nvars() != m_) throw ChartMismatch("anchor component is not on the base chart");
  anchor_[i] = std::move(components);
}

void LieAlgebroidData::set_c(std::size_t i, std::size_t j, std::size_t k, const Poly& v) {
  if (i >= n_ || j >= n_ || k >= n_) throw std::out_of_range("structure function index out of range");
  if (v.nvars() != m_) throw ChartMismatch("structure function is not on the base chart");
  if (i == j) {
    if (!v.is_zero()) throw PreconditionError("c_ii^k must vanish");
    return;
  }
  c_[(i * n_ + j) * n_ + k] = v;
  c_[(j * n_ + i) * n_ + k] = -v;
}

PoissonBivector algebroid_to_linear_poisson(const LieAlgebroidData& a) {
  const std::size_t m = a.base_dim(), n = a.rank(), total = m + n;
  PolyKVector pi(total, 2);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      Poly p(total);
      for (std::size_t k = 0; k < n; ++k) {
        if (!a.c(i, j, k).is_zero()) p += lift(a.c(i, j, k), total) * Poly::variable(total, m + k);
      }
      pi.set({static_cast<std::uint32_t>(m + i), static_cast<std::uint32_t>(m + j)}, p);
    }
    // d_{y_i} ^ a_i contributes pi(dy_i, dx_a) = a_i^a.
    for (std::uint32_t b = 0; b < m; ++b) {
      pi.add({static_cast<std::uint32_t>(m + i), b}, lift(a.anchor(i)[b], total));
    }
  }
  return pi;
}

LieAlgebroidData linear_poisson_to_algebroid(const PoissonBivector& pi, std::size_t base_dim, std::size_t rank) {
  const std::size_t m = base_dim, n = rank, total = m + n;
  if (pi.dim() != total) throw ChartMismatch("bivector chart does not match the splitting");
  std::vector<std::string> bad;
  LieAlgebroidData a(m, n);
  std::vector<std::vector<Poly>> anchors(n, std::vector<Poly>(m, Poly(m)));
  for (const auto& [idx, p] : pi.tensor().components()) {
    const bool first_fiber = idx[0] >= m, second_fiber = idx[1] >= m;
    const std::uint32_t forced = static_cast<std::uint32_t>(first_fiber) + static_cast<std::uint32_t>(second_fiber) - 1;
    if (!first_fiber && !second_fiber) {
      bad.push_back(pair_name(idx[0], idx[1]) + " must vanish");
      continue;
    }
    bool ok = true;
    for (const auto& [e, c] : p.terms()) {
      std::uint32_t fdeg = 0;
      for (std::size_t k = m; k < total; ++k) fdeg += e[k];
      if (fdeg != forced) ok = false;
    }
    if (!ok) {
      bad.push_back(pair_name(idx[0], idx[1]) + " must have fiber degree " + std::to_string(forced));
      continue;
    }
    if (!first_fiber) {
      // Stored (x_b, y_i) = -a_i^b.
      Poly base(m);
      for (const auto& [e, c] : p.terms()) base.add_term(Exponents(e.begin(), e.begin() + m), -c);
      anchors[idx[1] - m][idx[0]] = base;
    } else {
      std::vector<Poly> coeffs(n, Poly(m));
      for (const auto& [e, c] : p.terms()) {
        std::size_t k = m;
        while (e[k] == 0) ++k;
        coeffs[k - m].add_term(Exponents(e.begin(), e.begin() + m), c);
      }
      for (std::size_t k = 0; k < n; ++k) a.set_c(idx[0] - m, idx[1] - m, k, coeffs[k]);
    }
  }
  if (!bad.empty()) {
    std::string msg = "bivector is not fiberwise linear:";
    for (const auto& b : bad) msg += " " + b + ";";
    throw DegreeError(msg);
  }
  for (std::size_t i = 0; i < n; ++i) a.set_anchor(i, anchors[i]);
  return a;
}

std::vector<std::string> algebroid_axiom_violations(const LieAlgebroidData& a) {
  const std::size_t m = a.base_dim(), n = a.rank();
  std::vector<std::string> out;
  // Coefficient of e_q in [e_i, [e_j, e_k]].
  auto nested = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t q) {
    Poly s = apply_base(a.anchor(i), a.c(j, k, q));
    for (std::size_t l = 0; l < n; ++l) {
      if (!a.c(j, k, l).is_zero() && !a.c(i, l, q).is_zero()) s += a.c(j, k, l) * a.c(i, l, q);
    }
    return s;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t q = 0; q < n; ++q) {
          Poly s = nested(i, j, k, q) + nested(j, k, i, q) + nested(k, i, j, q);
          if (!s.is_zero()) {
            out.push_back("Jacobi fails for frame triple (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                          "," + std::to_string(k + 1) + ")");
            break;
          }
        }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t b = 0; b < m; ++b) {
        Poly lhs = apply_base(a.anchor(i), a.anchor(j)[b]) - apply_base(a.anchor(j), a.anchor(i)[b]);
        for (std::size_t k = 0; k < n; ++k) {
          if (!a.c(i, j, k).is_zero()) lhs -= a.c(i, j, k) * a.anchor(k)[b];
        }
        if (!lhs.is_zero()) {
          out.push_back("anchor does not preserve the bracket of " + pair_name(i, j));
          break;
        }
      }
  return out;
}

}  // namespace diraclab::poisson
