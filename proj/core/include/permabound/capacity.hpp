#pragma once

#include <span>
#include <vector>

#include "permabound/matrix.hpp"

namespace permabound {

inline constexpr double kDefaultCapacityTol = 1e-10;
inline constexpr int kDefaultCapacityMaxIter = 500;

struct CapacityResult {
  double value = 0.0;              // ln Cap
  std::vector<double> minimizer;   // x with prod x = 1
  double gradient_norm = 0.0;      // projected gradient in log coordinates
  int iterations = 0;
  bool converged = false;
};

/// ln Cap(Prod_P), Prod_P(x) = prod_i sum_j P(i,j) x_j, by damped Newton in
/// log coordinates on the hyperplane sum y = 0. Throws Unbounded when supp(P)
/// has no perfect matching (the infimum is 0).
CapacityResult capacity_product(const Matrix& p, double tol = kDefaultCapacityTol,
                                int max_iter = kDefaultCapacityMaxIter);

/// q_(j)(x) = sum_i P(i,j) prod_{k != i} sum_{l != j} P(k,l) x_l, evaluated at the
/// n - 1 coordinates x_l, l != j, in increasing l.
double qj_value(const Matrix& p, int j, std::span<const double> x);

/// ln Cap(q_(j)) over the n - 1 variables x_l, l != j, by BFGS in log
/// coordinates. Throws Unbounded as capacity_product.
CapacityResult capacity_qj(const Matrix& p, int j, double tol = kDefaultCapacityTol,
                           int max_iter = 20 * kDefaultCapacityMaxIter);

}  // namespace permabound
