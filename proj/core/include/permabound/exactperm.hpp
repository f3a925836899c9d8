#pragma once

#include <vector>

#include "permabound/log_value.hpp"
#include "permabound/matrix.hpp"

namespace permabound {

inline constexpr int kRyserMaxN = 30;
inline constexpr int kBruteMaxN = 9;
inline constexpr int kSubpermDpMaxN = 22;
inline constexpr int kSubpermBruteMaxN = 7;

/// values[m] = sum of permanents of all m x m submatrices, m = 0..n.
struct SubpermVector {
  int n = 0;
  std::vector<double> values;
};

/// Ryser's inclusion-exclusion formula with Gray-code column updates.
///
/// Rows are normalized to unit sum first and the scale is restored in the log
/// domain. Row sums and the alternating sum run in extended precision; the
/// alternating sum is Kahan-compensated. The subset space is split into a fixed
/// number of chunks reduced in index order, so the value does not depend on
/// `threads`. Throws TooLarge for n > 30.
LogValue permanent_ryser(const Matrix& m, int threads = 1);

/// Sum over all n! permutations. Independent oracle for permanent_ryser.
/// Throws TooLarge for n > 9.
double permanent_brute(const Matrix& m);

/// Row-by-row dynamic program over used-column subsets; each row is skipped or
/// assigned an unused column. Throws TooLarge for n > 22.
SubpermVector subperm_vector(const Matrix& m);
double subperm_sum_dp(const Matrix& m, int m_size);

/// Explicit enumeration of (S, T) subset pairs. Throws TooLarge for n > 7.
double subperm_brute(const Matrix& m, int m_size);

/// per_m(A) = per(K) / (a^m b^{2(n-m)} ((n-m)!)^2) with K = k_embed(A, m, a, b).
/// Throws TooLarge when 2n - m > 22.
double perm_via_k_identity(const Matrix& a, int m_size, double a_scale, double b_scale);

/// per(aJ_n + bI_n) = n! a^n sum_{i<=n} (b/a)^i / i!, evaluated in the log domain.
LogValue permanent_aJbI(int n, double a, double b);

/// per(K_n) = n!/n^n * 2^{-n/2}. Throws OddN.
LogValue log_perm_kn(int n);

}  // namespace permabound
