#include "permabound/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "permabound/error.hpp"

namespace permabound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest augmenting path Hungarian method (1-based internally). On return
// u, v are optimal duals: cost(i,j) - u[i] - v[j] >= 0, with equality on the
// returned matching.
std::vector<int> hungarian(std::span<const double> cost, const SupportPattern& allowed, std::vector<double>& u,
                           std::vector<double>& v) {
  const int n = allowed.n;
  u.assign(n + 1, 0.0);
  v.assign(n + 1, 0.0);
  std::vector<int> col_owner(n + 1, 0), way(n + 1, 0);
  std::vector<double> minv(n + 1);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    col_owner[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = col_owner[j0];
      double delta = kInf;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        if (allowed.allowed(i0 - 1, j - 1)) {
          const double cur = cost[static_cast<std::size_t>(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 < 0) throw Error(ErrorCode::kInfeasible, "no permutation fits inside the allowed cells");
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[col_owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (col_owner[j0] != 0);
    do {
      const int j1 = way[j0];
      col_owner[j0] = col_owner[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> perm(n);
  for (int j = 1; j <= n; ++j) perm[col_owner[j] - 1] = j - 1;
  return perm;
}

// Lexicographically smallest perfect matching of `tight`, given one perfect
// matching `perm` of it. Rows are fixed in order; a candidate column is
// accepted when the current owner of that column can be re-matched by an
// alternating path through unfixed rows.
std::vector<int> lex_smallest_matching(const SupportPattern& tight, std::vector<int> perm) {
  const int n = tight.n;
  std::vector<int> owner(n);
  for (int i = 0; i < n; ++i) owner[perm[i]] = i;
  std::vector<char> fixed(n, 0);
  std::vector<int> parent_row(n), queue;
  std::vector<char> seen_col(n);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < perm[i]; ++j) {
      if (!tight.allowed(i, j)) continue;
      // Row r = owner[j] must move; search for a path that ends at column perm[i]
      // which row i frees.
      const int r = owner[j];
      if (fixed[r]) continue;
      std::fill(seen_col.begin(), seen_col.end(), 0);
      seen_col[j] = 1;
      queue.assign(1, r);
      int found = -1;
      std::vector<int> via_col(n, -1);  // column through which each row was reached
      via_col[r] = j;
      for (std::size_t q = 0; q < queue.size() && found < 0; ++q) {
        const int row = queue[q];
        for (int c = 0; c < n; ++c) {
          if (seen_col[c] || !tight.allowed(row, c)) continue;
          seen_col[c] = 1;
          parent_row[c] = row;
          if (c == perm[i]) {
            found = c;
            break;
          }
          const int next = owner[c];
          if (fixed[next] || next == i) continue;
          via_col[next] = c;
          queue.push_back(next);
        }
      }
      if (found < 0) continue;
      // Shift along the path: parent_row[c] takes c, then that row's old column
      // goes back toward j.
      int c = found;
      while (true) {
        const int row = parent_row[c];
        const int prev = via_col[row];
        perm[row] = c;
        owner[c] = row;
        if (row == r) break;
        c = prev;
      }
      perm[i] = j;
      owner[j] = i;
      break;
    }
    fixed[i] = 1;
  }
  return perm;
}

}  // namespace

std::vector<int> assignment_solve(std::span<const double> cost, const SupportPattern& allowed) {
  const int n = allowed.n;
  if (cost.size() != static_cast<std::size_t>(n) * n) {
    throw Error(ErrorCode::kBadDimensions, "cost must have n*n entries");
  }
  if (!allowed.has_perfect_matching()) {
    throw Error(ErrorCode::kInfeasible, "no permutation fits inside the allowed cells");
  }
  std::vector<double> u, v;
  std::vector<int> perm = hungarian(cost, allowed, u, v);

  double scale = 1.0;
  for (std::size_t k = 0; k < cost.size(); ++k)
    if (allowed.mask[k]) scale = std::max(scale, std::abs(cost[k]));
  const double eps = 1e-11 * scale * n;
  std::vector<std::uint8_t> tight(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!allowed.allowed(i, j)) continue;
      const double reduced = cost[static_cast<std::size_t>(i) * n + j] - u[i + 1] - v[j + 1];
      tight[static_cast<std::size_t>(i) * n + j] = reduced <= eps ? 1 : 0;
    }
  for (int i = 0; i < n; ++i) tight[static_cast<std::size_t>(i) * n + perm[i]] = 1;
  SupportPattern tight_pattern;
  tight_pattern.n = n;
  tight_pattern.mask = std::move(tight);
  tight_pattern.max_matching = n;
  return lex_smallest_matching(tight_pattern, std::move(perm));
}

}  // namespace permabound
