#pragma once

#include <string>
#include <vector>

#include "diraclab/poisson.hpp"

namespace diraclab::poisson {

// Local data of a Lie algebroid E -> M over a chart of M with a frame
// e_1..e_n of E: anchors a_i = a(e_i) and structure functions
// [e_i, e_j] = sum_k c_ij^k e_k, all polynomial on the base.
class LieAlgebroidData {
 public:
  LieAlgebroidData(std::size_t base_dim, std::size_t rank);

  std::size_t base_dim() const { return m_; }
  std::size_t rank() const { return n_; }

  // Anchor a_i as base_dim components.
  const std::vector<Poly>& anchor(std::size_t i) const { return anchor_[i]; }
  void set_anchor(std::size_t i, std::vector<Poly> components);

  const Poly& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
  // Sets c_ij^k and c_ji^k = -c_ij^k.
  void set_c(std::size_t i, std::size_t j, std::size_t k, const Poly& v);

  friend bool operator==(const LieAlgebroidData& a, const LieAlgebroidData& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.anchor_ == b.anchor_ && a.c_ == b.c_;
  }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<Poly>> anchor_;
  std::vector<Poly> c_;
};

// Linear Poisson structure on the base x fiber chart (base coordinates first).
PoissonBivector algebroid_to_linear_poisson(const LieAlgebroidData& a);
// Inverse direction for the splitting base_dim | rank; throws DegreeError
// naming every component whose fiber degree is wrong.
LieAlgebroidData linear_poisson_to_algebroid(const PoissonBivector& pi, std::size_t base_dim,
                                             std::size_t rank);

// Jacobi identity on frame sections (with anchor terms) and compatibility
// of the anchor with brackets. Empty result means the axioms hold.
std::vector<std::string> algebroid_axiom_violations(const LieAlgebroidData& a);

}  // namespace diraclab::poisson
