#pragma once

#include <span>
#include <vector>

#include "permabound/matrix.hpp"

namespace permabound {

/// Minimum-cost perfect matching restricted to cells allowed by `allowed`.
///
/// cost is row-major n x n. Among optimal permutations the lexicographically
/// smallest one is returned (perm[i] is the column of row i). Throws
/// Infeasible when no permutation fits inside `allowed`.
std::vector<int> assignment_solve(std::span<const double> cost, const SupportPattern& allowed);

}  // namespace permabound
