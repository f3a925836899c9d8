#pragma once

#include <optional>
#include <vector>

#include "permabound/matrix.hpp"

namespace permabound {

inline constexpr double kDefaultCwTol = 1e-8;
inline constexpr int kDefaultCwMaxIter = 20000;

struct CwTracePoint {
  int iteration = 0;
  double value = 0.0;
  double gap = 0.0;
};

struct CWResult {
  Matrix q_star;
  double value = 0.0;
  double duality_gap = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<CwTracePoint> trace;  // value of the best iterate so far, per iteration
};

/// Maximizes CW(P, .) over doubly stochastic matrices supported on supp(P).
///
/// Works on the entries of P lying on some perfect matching, one connected
/// block at a time, starting from the Sinkhorn scaling of the block indicator
/// (or from `start`). Steps are Newton steps on the face when they ascend;
/// otherwise the better of a Frank-Wolfe step toward the assignment-problem
/// vertex and a step back toward the Sinkhorn point is taken. A block
/// whose iterate collapses onto a permutation is replaced by that permutation
/// when it scores higher; CW is not differentiable there, so such a block keeps
/// its last gap and reports converged = false.
///
/// Throws ZeroPermanent if supp(P) has no perfect matching.
CWResult maximize_cw(const Matrix& p, double tol = kDefaultCwTol, int max_iter = kDefaultCwMaxIter,
                     const std::optional<Matrix>& start = std::nullopt);

}  // namespace permabound
