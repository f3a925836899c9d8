#pragma once

// Reference implementations used only by tests. They share no code with the
// library: brute-force enumeration in long double and direct formulas.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "permabound/matrix.hpp"

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline Rows rows_of(const permabound::Matrix& m) {
  Rows r(m.n(), std::vector<double>(m.n()));
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) r[i][j] = m(i, j);
  return r;
}

inline long double permanent(const Rows& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1.0L;
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  long double total = 0.0L;
  do {
    long double prod = 1.0L;
    for (int i = 0; i < n && prod != 0.0L; ++i) prod *= a[i][sigma[i]];
    total += prod;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

inline long double permanent(const permabound::Matrix& m) { return permanent(rows_of(m)); }

inline long double subperm(const permabound::Matrix& m, int size) {
  const int n = m.n();
  long double total = 0.0L;
  for (std::uint32_t rows = 0; rows < (1u << n); ++rows) {
    if (std::popcount(rows) != size) continue;
    for (std::uint32_t cols = 0; cols < (1u << n); ++cols) {
      if (std::popcount(cols) != size) continue;
      Rows sub;
      for (int i = 0; i < n; ++i) {
        if (!(rows >> i & 1u)) continue;
        sub.emplace_back();
        for (int j = 0; j < n; ++j)
          if (cols >> j & 1u) sub.back().push_back(m(i, j));
      }
      total += permanent(sub);
    }
  }
  return total;
}

// Size of a maximum matching by trying every permutation of every subset (tiny n only).
inline int has_perfect_matching(const permabound::Matrix& m) {
  Rows mask = rows_of(m);
  for (auto& row : mask)
    for (double& v : row) v = v > 0.0 ? 1.0 : 0.0;
  return permanent(mask) > 0.0L;
}

inline double x_log_x(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

inline double log_F(const permabound::Matrix& p) {
  double s = 0.0;
  for (int i = 0; i < p.n(); ++i)
    for (int j = 0; j < p.n(); ++j) s += x_log_x(1.0 - p(i, j));
  return s;
}

// CW(P,Q) = sum (1-Q) ln(1-Q) - sum Q ln(Q / P).
inline double cw(const permabound::Matrix& p, const permabound::Matrix& q) {
  double s = 0.0;
  for (int i = 0; i < p.n(); ++i)
    for (int j = 0; j < p.n(); ++j) {
      const double x = q(i, j);
      if (x > 0.0 && p(i, j) == 0.0) return -INFINITY;
      s += x_log_x(1.0 - x) - (x > 0.0 ? x * std::log(x / p(i, j)) : 0.0);
    }
  return s;
}

inline double rel_err(long double a, long double b) {
  const long double scale = std::max({std::fabs(a), std::fabs(b), 1e-300L});
  return static_cast<double>(std::fabs(a - b) / scale);
}

inline permabound::Matrix random_matrix(std::mt19937_64& gen, int n, double zero_prob = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  permabound::Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = u(gen) < zero_prob ? 0.0 : u(gen);
  return m;
}

// Doubly stochastic by a convex combination of random permutations: no
// scaling code involved.
inline permabound::Matrix random_birkhoff(std::mt19937_64& gen, int n, int terms) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(terms);
  double total = 0.0;
  for (double& x : w) total += (x = u(gen));
  permabound::Matrix m(n);
  std::vector<int> sigma(n);
  for (int t = 0; t < terms; ++t) {
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), gen);
    for (int i = 0; i < n; ++i) m(i, sigma[i]) += w[t] / total;
  }
  return m;
}

inline double lchoose(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

}  // namespace oracle
