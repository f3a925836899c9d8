#include "permabound/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "permabound/error.hpp"

namespace permabound {

namespace {

void require_dimension(int n) {
  if (n < 1) throw Error(ErrorCode::kBadDimensions, "matrix dimension must be >= 1, got " + std::to_string(n));
}

// Kuhn's augmenting path search from row i.
bool augment(const SupportPattern& p, int i, std::vector<int>& col_match, std::vector<std::uint8_t>& seen) {
  for (int j = 0; j < p.n; ++j) {
    if (!p.allowed(i, j) || seen[j]) continue;
    seen[j] = 1;
    if (col_match[j] < 0 || augment(p, col_match[j], col_match, seen)) {
      col_match[j] = i;
      return true;
    }
  }
  return false;
}

}  // namespace

Matrix::Matrix(int n, double fill) : n_(n) {
  require_dimension(n);
  if (!(fill >= 0.0)) throw Error(ErrorCode::kInvalidMatrix, "fill value must be nonnegative");
  data_.assign(static_cast<std::size_t>(n) * n, fill);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows, double negative_tol) {
  const int n = static_cast<int>(rows.size());
  require_dimension(n);
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw Error(ErrorCode::kInvalidMatrix, "row " + std::to_string(i) + " has " +
                                                 std::to_string(rows[i].size()) + " entries, expected " +
                                                 std::to_string(n));
    }
    for (int j = 0; j < n; ++j) {
      double v = rows[i][j];
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kInvalidMatrix, "non-finite entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (v < 0.0) {
        if (v < -negative_tol) {
          throw Error(ErrorCode::kInvalidMatrix,
                      "negative entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
        v = 0.0;
      }
      m(i, j) = v;
    }
  }
  return m;
}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::constant(int n, double value) { return Matrix(n, value); }

double Matrix::row_sum(int i) const noexcept {
  double s = 0.0;
  for (double v : row(i)) s += v;
  return s;
}

double Matrix::col_sum(int j) const noexcept {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += (*this)(i, j);
  return s;
}

double Matrix::entry_sum() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v;
  return s;
}

double Matrix::max_entry() const noexcept {
  return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

Matrix Matrix::transposed() const {
  Matrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double StochScale::log_product() const noexcept {
  double s = 0.0;
  for (double a : row_factors) s += std::log(a);
  for (double b : col_factors) s += std::log(b);
  return s;
}

bool is_doubly_stochastic(const Matrix& m, double tol) {
  const int n = m.n();
  for (double v : m.data()) {
    if (v < 0.0 || v > 1.0 + tol) return false;
  }
  for (int i = 0; i < n; ++i) {
    if (std::abs(m.row_sum(i) - 1.0) > tol || std::abs(m.col_sum(i) - 1.0) > tol) return false;
  }
  return true;
}

SupportPattern support_pattern_from_mask(int n, std::vector<std::uint8_t> mask) {
  SupportPattern p;
  p.n = n;
  p.mask = std::move(mask);
  std::vector<int> col_match(n, -1);
  std::vector<std::uint8_t> seen(n);
  int matched = 0;
  for (int i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    if (augment(p, i, col_match, seen)) ++matched;
  }
  p.max_matching = matched;
  p.row_match.assign(n, -1);
  for (int j = 0; j < n; ++j)
    if (col_match[j] >= 0) p.row_match[col_match[j]] = j;
  return p;
}

SupportPattern support_pattern(const Matrix& m) {
  const int n = m.n();
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n) * n);
  for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = m.data()[k] > 0.0 ? 1 : 0;
  return support_pattern_from_mask(n, std::move(mask));
}

SupportPattern total_support(const SupportPattern& pattern) {
  if (!pattern.has_perfect_matching()) {
    throw Error(ErrorCode::kNoPerfectMatching, "support has no perfect matching");
  }
  const int n = pattern.n;
  const std::vector<int>& match = pattern.row_match;

  // Digraph on columns: match[i] -> j for every allowed (i, j), j != match[i].
  // An unmatched edge lies on a perfect matching iff both ends share an SCC.
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (pattern.allowed(i, j) && j != match[i]) adj[match[i]].push_back(j);

  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<std::uint8_t> on_stack(n, 0);
  int counter = 0, components = 0;
  std::function<void(int)> strongconnect = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp[w] = components;
      } while (w != v);
      ++components;
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) strongconnect(v);

  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (pattern.allowed(i, j) && (j == match[i] || comp[j] == comp[match[i]])) mask[static_cast<std::size_t>(i) * n + j] = 1;

  SupportPattern result;
  result.n = n;
  result.mask = std::move(mask);
  result.max_matching = n;
  result.row_match = match;
  return result;
}

SinkhornResult sinkhorn_scale(const Matrix& m, double tol, int max_iter) {
  if (!(tol > 0.0) || max_iter <= 0) throw Error(ErrorCode::kDomainError, "sinkhorn needs tol > 0 and max_iter > 0");
  const int n = m.n();
  if (!support_pattern(m).has_perfect_matching()) {
    throw Error(ErrorCode::kNoPerfectMatching, "support admits no perfect matching; no doubly stochastic scaling exists");
  }

  std::vector<double> r(n, 1.0), c(n, 1.0);
  for (int iter = 1; iter <= max_iter; ++iter) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += m(i, j) * c[j];
      r[i] = 1.0 / s;
    }
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r[i] * m(i, j);
      c[j] = 1.0 / s;
    }
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += r[i] * m(i, j) * c[j];
      err = std::max(err, std::abs(s - 1.0));
    }
    if (err <= tol) {
      SinkhornResult out;
      out.scaled = diag_scale(m, r, c);
      if (!is_doubly_stochastic(out.scaled, tol)) continue;
      out.scale = StochScale{std::move(r), std::move(c)};
      out.iterations = iter;
      return out;
    }
  }
  throw Error(ErrorCode::kNotConverged,
              "sinkhorn did not reach tol within " + std::to_string(max_iter) +
                  " iterations (support lacks total support?)");
}

Matrix unscale(const Matrix& scaled, const StochScale& scale) {
  const int n = scaled.n();
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = scaled(i, j) / (scale.row_factors[i] * scale.col_factors[j]);
  return m;
}

Matrix diag_scale(const Matrix& m, std::span<const double> row, std::span<const double> col) {
  const int n = m.n();
  if (static_cast<int>(row.size()) != n || static_cast<int>(col.size()) != n) {
    throw Error(ErrorCode::kBadDimensions, "scaling vectors must have length n");
  }
  Matrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = row[i] * m(i, j) * col[j];
  return out;
}

Matrix family_example1(int n) {
  if (n < 2) throw Error(ErrorCode::kDomainError, "example1 family needs n >= 2");
  Matrix p(n, 1.0 / (2.0 * (n - 1)));
  for (int i = 0; i < n; ++i) p(i, i) = 0.5;
  return p;
}

Matrix family_example2(int blocks) {
  if (blocks < 1) throw Error(ErrorCode::kDomainError, "example2 family needs blocks >= 1");
  Matrix p(2 * blocks);
  for (int b = 0; b < blocks; ++b)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) p(2 * b + i, 2 * b + j) = 0.5;
  return p;
}

Matrix k_embed(const Matrix& a, int m, double a_scale, double b_scale) {
  const int n = a.n();
  if (m < 0 || m > n) {
    throw Error(ErrorCode::kBadDimensions, "k_embed needs 0 <= m <= n (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
  }
  if (!(a_scale > 0.0) || !(b_scale > 0.0)) throw Error(ErrorCode::kDomainError, "k_embed scales must be positive");
  const int border = n - m;
  Matrix k(n + border);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k(i, j) = a_scale * a(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < border; ++j) {
      k(i, n + j) = b_scale;
      k(n + j, i) = b_scale;
    }
  return k;
}

Matrix k_counterexample(int n) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorCode::kOddN, "K_n needs an even n >= 2, got " + std::to_string(n));
  return k_embed(Matrix::identity(n), n / 2, 0.5, 1.0 / n);
}

Matrix support_indicator(const Matrix& m) {
  Matrix s(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) s(i, j) = m(i, j) > 0.0 ? 1.0 : 0.0;
  return s;
}

Matrix support_indicator(const SupportPattern& pattern) {
  Matrix s(pattern.n);
  for (int i = 0; i < pattern.n; ++i)
    for (int j = 0; j < pattern.n; ++j) s(i, j) = pattern.allowed(i, j) ? 1.0 : 0.0;
  return s;
}

}  // namespace permabound
