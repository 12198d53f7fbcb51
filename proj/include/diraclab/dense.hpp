#pragma once

#include <vector>

#include <Eigen/Dense>

namespace diraclab::numerics {

// Relative singular-value cutoff used for every numeric rank decision.
inline constexpr double kRankThreshold = 1e-10;

std::size_t numeric_rank(const Eigen::MatrixXd& m, double rel = kRankThreshold);
// Orthonormal basis of the column space (n x rank).
Eigen::MatrixXd column_space(const Eigen::MatrixXd& m, double rel = kRankThreshold);
// Orthonormal basis of the null space (cols x nullity).
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rel = kRankThreshold);
// Largest distance of a unit vector of span(a) from span(b), both given by
// orthonormal columns; symmetric when the dimensions agree.
double subspace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
double max_abs(const Eigen::MatrixXd& m);

std::vector<double> to_std(const Eigen::VectorXd& v);
Eigen::VectorXd to_eigen(const std::vector<double>& v);

// Standard symplectic matrix [[0, I], [-I, 0]] of size 2n.
Eigen::MatrixXd canonical_symplectic(std::size_t n);

}  // namespace diraclab::numerics
