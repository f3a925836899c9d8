#include "permabound/exactperm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "permabound/error.hpp"
#include "permabound/parallel.hpp"

namespace permabound {

namespace {

struct KahanSum {
  long double sum = 0.0L;
  long double carry = 0.0L;

  void add(long double x) {
    const long double y = x - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void require_size(const Matrix& m, int max_n, const char* what) {
  if (m.n() > max_n) {
    throw Error(ErrorCode::kTooLarge, std::string(what) + " supports n <= " + std::to_string(max_n) + ", got n = " +
                                          std::to_string(m.n()));
  }
}

void require_subset_size(int n, int m_size) {
  if (m_size < 0 || m_size > n) {
    throw Error(ErrorCode::kDomainError, "submatrix size must lie in [0, n], got " + std::to_string(m_size));
  }
}

// Alternating Ryser sum over Gray-code indices [begin, end).
long double ryser_chunk(const std::vector<long double>& a, int n, std::uint64_t begin, std::uint64_t end) {
  std::vector<long double> row_sums(n, 0.0L);
  std::uint64_t gray = begin ^ (begin >> 1);
  for (int j = 0; j < n; ++j) {
    if (!(gray >> j & 1U)) continue;
    for (int i = 0; i < n; ++i) row_sums[i] += a[static_cast<std::size_t>(i) * n + j];
  }

  KahanSum acc;
  auto add_term = [&](std::uint64_t subset) {
    long double prod = 1.0L;
    for (int i = 0; i < n && prod != 0.0L; ++i) prod *= row_sums[i];
    acc.add((std::popcount(subset) & 1) ? -prod : prod);
  };

  add_term(gray);
  for (std::uint64_t k = begin + 1; k < end; ++k) {
    const int col = std::countr_zero(k);
    gray ^= std::uint64_t{1} << col;
    if (gray >> col & 1U) {
      for (int i = 0; i < n; ++i) row_sums[i] += a[static_cast<std::size_t>(i) * n + col];
    } else {
      for (int i = 0; i < n; ++i) row_sums[i] -= a[static_cast<std::size_t>(i) * n + col];
    }
    add_term(gray);
  }
  return acc.sum;
}

}  // namespace

LogValue permanent_ryser(const Matrix& m, int threads) {
  require_size(m, kRyserMaxN, "permanent_ryser");
  const int n = m.n();
  if (!support_pattern(m).has_perfect_matching()) return LogValue::zero();

  // Normalize rows; per(M) = prod(row sums) * per(normalized).
  double log_scale = 0.0;
  std::vector<long double> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double s = m.row_sum(i);
    log_scale += std::log(s);
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = static_cast<long double>(m(i, j)) / s;
  }

  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t chunks = std::min<std::uint64_t>(total, 256);
  const std::uint64_t chunk_len = total / chunks;
  std::vector<long double> partial(chunks, 0.0L);
  parallel_for(chunks, n >= 18 ? threads : 1, [&](std::size_t c) {
    partial[c] = ryser_chunk(a, n, c * chunk_len, (c + 1) * chunk_len);
  });

  KahanSum acc;
  for (long double p : partial) acc.add(p);
  const long double per = (n % 2 == 0) ? acc.sum : -acc.sum;
  if (!(per > 0.0L)) return LogValue::zero();
  return LogValue::from_log(static_cast<double>(std::log(per)) + log_scale);
}

double permanent_brute(const Matrix& m) {
  require_size(m, kBruteMaxN, "permanent_brute");
  const int n = m.n();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  KahanSum acc;
  do {
    long double prod = 1.0L;
    for (int i = 0; i < n; ++i) prod *= m(i, perm[i]);
    acc.add(prod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(acc.sum);
}

SubpermVector subperm_vector(const Matrix& m) {
  require_size(m, kSubpermDpMaxN, "subperm_vector");
  const int n = m.n();
  const std::size_t states = std::size_t{1} << n;
  std::vector<double> dp(states, 0.0);
  dp[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const auto row = m.row(i);
    // Descending order: dp[mask ^ bit] < mask is still the previous row's value.
    for (std::size_t mask = states - 1; mask > 0; --mask) {
      double add = 0.0;
      for (std::size_t rest = mask; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        if (row[j] != 0.0) add += dp[mask ^ (std::size_t{1} << j)] * row[j];
      }
      dp[mask] += add;
    }
  }
  SubpermVector out;
  out.n = n;
  out.values.assign(n + 1, 0.0);
  for (std::size_t mask = 0; mask < states; ++mask) out.values[std::popcount(mask)] += dp[mask];
  return out;
}

double subperm_sum_dp(const Matrix& m, int m_size) {
  require_subset_size(m.n(), m_size);
  return subperm_vector(m).values[m_size];
}

double subperm_brute(const Matrix& m, int m_size) {
  require_size(m, kSubpermBruteMaxN, "subperm_brute");
  const int n = m.n();
  require_subset_size(n, m_size);
  if (m_size == 0) return 1.0;

  std::vector<std::uint32_t> subsets;
  for (std::uint32_t s = 0; s < (1U << n); ++s)
    if (std::popcount(s) == m_size) subsets.push_back(s);

  std::vector<int> rows, cols;
  double total = 0.0;
  for (std::uint32_t rs : subsets) {
    rows.clear();
    for (int i = 0; i < n; ++i)
      if (rs >> i & 1U) rows.push_back(i);
    for (std::uint32_t cs : subsets) {
      cols.clear();
      for (int j = 0; j < n; ++j)
        if (cs >> j & 1U) cols.push_back(j);
      Matrix sub(m_size);
      for (int a = 0; a < m_size; ++a)
        for (int b = 0; b < m_size; ++b) sub(a, b) = m(rows[a], cols[b]);
      total += permanent_brute(sub);
    }
  }
  return total;
}

double perm_via_k_identity(const Matrix& a, int m_size, double a_scale, double b_scale) {
  const int n = a.n();
  require_subset_size(n, m_size);
  if (2 * n - m_size > kSubpermDpMaxN) {
    throw Error(ErrorCode::kTooLarge, "bordered matrix dimension 2n - m exceeds " + std::to_string(kSubpermDpMaxN));
  }
  const LogValue per_k = permanent_ryser(k_embed(a, m_size, a_scale, b_scale));
  if (per_k.is_zero) return 0.0;
  const int border = n - m_size;
  const double log_norm =
      m_size * std::log(a_scale) + 2.0 * border * std::log(b_scale) + 2.0 * std::lgamma(border + 1.0);
  return std::exp(per_k.log_magnitude - log_norm);
}

LogValue permanent_aJbI(int n, double a, double b) {
  if (n < 1 || !(a > 0.0) || !(b >= 0.0)) {
    throw Error(ErrorCode::kDomainError, "permanent_aJbI needs n >= 1, a > 0, b >= 0");
  }
  const double base = std::lgamma(n + 1.0) + n * std::log(a);
  if (b == 0.0) return LogValue::from_log(base);

  const double log_ratio = std::log(b / a);
  std::vector<double> terms(n + 1);
  for (int i = 0; i <= n; ++i) terms[i] = i * log_ratio - std::lgamma(i + 1.0);
  const double top = *std::max_element(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += std::exp(t - top);
  return LogValue::from_log(base + top + std::log(s));
}

LogValue log_perm_kn(int n) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorCode::kOddN, "K_n needs an even n >= 2, got " + std::to_string(n));
  return LogValue::from_log(std::lgamma(n + 1.0) - n * std::log(static_cast<double>(n)) - 0.5 * n * std::log(2.0));
}

}  // namespace permabound
