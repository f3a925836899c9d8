#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace permabound {

// Entries within [-kNegativeClampTol, 0) are clamped to zero on ingestion;
// anything more negative is rejected.
inline constexpr double kNegativeClampTol = 1e-9;
inline constexpr double kDefaultStochasticTol = 1e-9;
inline constexpr int kDefaultSinkhornMaxIter = 10000;

/// Dense, row-major n x n matrix of nonnegative reals.
///
/// Constructors and from_rows() validate nonnegativity; the mutable accessor
/// does not, so code that writes entries directly owns that invariant.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n, double fill = 0.0);

  static Matrix from_rows(const std::vector<std::vector<double>>& rows,
                          double negative_tol = kNegativeClampTol);
  static Matrix identity(int n);
  static Matrix constant(int n, double value);

  int n() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  double operator()(int i, int j) const noexcept { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  double& operator()(int i, int j) noexcept { return data_[static_cast<std::size_t>(i) * n_ + j]; }

  std::span<const double> row(int i) const noexcept {
    return {data_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }
  std::span<const double> data() const noexcept { return data_; }

  double row_sum(int i) const noexcept;
  double col_sum(int j) const noexcept;
  double entry_sum() const noexcept;
  double max_entry() const noexcept;

  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  int n_ = 0;
  std::vector<double> data_;
};

/// Positive diagonal factors with scaled(i, j) = row_factors[i] * M(i, j) * col_factors[j].
struct StochScale {
  std::vector<double> row_factors;
  std::vector<double> col_factors;

  /// Sum of log row factors plus sum of log column factors.
  double log_product() const noexcept;
};

/// Positivity mask of a matrix together with its maximum bipartite matching.
struct SupportPattern {
  int n = 0;
  std::vector<std::uint8_t> mask;  // row-major, 1 where the entry is > 0
  int max_matching = 0;
  std::vector<int> row_match;  // column matched to each row, -1 if unmatched

  bool allowed(int i, int j) const noexcept { return mask[static_cast<std::size_t>(i) * n + j] != 0; }
  bool has_perfect_matching() const noexcept { return max_matching == n; }
};

struct SinkhornResult {
  Matrix scaled;
  StochScale scale;
  int iterations = 0;
};

bool is_doubly_stochastic(const Matrix& m, double tol = kDefaultStochasticTol);

/// Matching computed by repeated augmenting-path search on the positivity mask.
SupportPattern support_pattern(const Matrix& m);
SupportPattern support_pattern_from_mask(int n, std::vector<std::uint8_t> mask);

/// Restricts a pattern to the entries that lie on at least one perfect
/// matching. Requires has_perfect_matching(); otherwise throws NoPerfectMatching.
SupportPattern total_support(const SupportPattern& pattern);

/// Alternating row/column normalization. Throws NoPerfectMatching when the
/// support has no perfect matching and NotConverged when max_iter is exhausted
/// (support without total support converges too slowly to ever reach tol).
SinkhornResult sinkhorn_scale(const Matrix& m, double tol = kDefaultStochasticTol,
                              int max_iter = kDefaultSinkhornMaxIter);

/// Reconstructs the unscaled matrix from a scaled one and its factors.
Matrix unscale(const Matrix& scaled, const StochScale& scale);

/// Diag(row) * m * Diag(col).
Matrix diag_scale(const Matrix& m, std::span<const double> row, std::span<const double> col);

// Named families.

/// Diagonal 1/2, off-diagonal 1/(2(n-1)).
Matrix family_example1(int n);
/// Direct sum of `blocks` copies of (1/2)J_2.
Matrix family_example2(int blocks);
/// [[aA, bJ], [bJ^T, 0]] of dimension 2n - m. Throws BadDimensions if m is
/// outside [0, n]. Doubly stochastic when A has line sums r, a = (m/n)/r and b = 1/n.
Matrix k_embed(const Matrix& a, int m, double a_scale, double b_scale);
/// k_embed(I_n, n/2, 1/2, 1/n). Throws OddN for odd n.
Matrix k_counterexample(int n);

/// Indicator of the positive entries of m.
Matrix support_indicator(const Matrix& m);
Matrix support_indicator(const SupportPattern& pattern);

}  // namespace permabound
