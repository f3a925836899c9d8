#include "permabound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "permabound/error.hpp"

namespace permabound {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double clamp_unit(double v, double tol) {
  if (v > 1.0 + tol || v < -tol) {
    throw Error(ErrorCode::kEntryOutOfRange, "entry " + std::to_string(v) + " lies outside [0, 1]");
  }
  return std::clamp(v, 0.0, 1.0);
}

void require_unit_entries(const Matrix& a, double tol) {
  for (double v : a.data()) clamp_unit(v, tol);
}

double log_sum_exp(std::span<const double> xs) {
  double top = kNegInf;
  for (double x : xs) top = std::max(top, x);
  if (top == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - top);
  return top + std::log(s);
}

// ln prod_{k != i} (1 - A(k, j)) for every (i, j), row-major; -inf where the
// product vanishes.
std::vector<double> log_exclusive_column_products(const Matrix& a) {
  const int n = a.n();
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    int ones = 0;
    double log_sum = 0.0;
    for (int k = 0; k < n; ++k) {
      const double v = a(k, j);
      if (v >= 1.0) {
        ++ones;
      } else {
        log_sum += std::log1p(-v);
      }
    }
    for (int i = 0; i < n; ++i) {
      const double v = a(i, j);
      double value;
      if (v >= 1.0) {
        value = ones > 1 ? kNegInf : log_sum;
      } else {
        value = ones > 0 ? kNegInf : log_sum - std::log1p(-v);
      }
      out[static_cast<std::size_t>(i) * n + j] = value;
    }
  }
  return out;
}

void require_curve_args(int r, double t) {
  if (r < 1 || !(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::kDomainError, "curves need r >= 1 and t in [0, 1]");
  }
}

void require_rnm(int r, int n, int m) {
  if (r < 1 || n < 1 || m < 1 || m > n) {
    throw Error(ErrorCode::kDomainError, "need r >= 1 and 1 <= m <= n (r=" + std::to_string(r) + ", n=" +
                                             std::to_string(n) + ", m=" + std::to_string(m) + ")");
  }
}

void require_k_args(int r, int n, int m) {
  if (r < 1 || n < 1 || m < 0 || m > n) {
    throw Error(ErrorCode::kDomainError, "need r >= 1, n >= 1 and 0 <= m <= n");
  }
}

}  // namespace

double xlogx(double x) noexcept { return x > 0.0 ? x * std::log(x) : 0.0; }

double log_F(const Matrix& p, double tol) {
  double s = 0.0;
  for (double v : p.data()) s += xlogx(1.0 - clamp_unit(v, tol));
  return s;
}

double cw_value(const Matrix& p, const Matrix& q) {
  const int n = p.n();
  if (q.n() != n) throw Error(ErrorCode::kBadDimensions, "P and Q must have the same dimension");
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double qij = std::clamp(q(i, j), 0.0, 1.0);
      s += xlogx(1.0 - qij);
      if (qij > 0.0) {
        if (p(i, j) <= 0.0) return kNegInf;
        s -= qij * (std::log(qij) - std::log(p(i, j)));
      }
    }
  }
  return s;
}

CwGradient cw_gradient(const Matrix& p, const Matrix& q) {
  const int n = p.n();
  if (q.n() != n) throw Error(ErrorCode::kBadDimensions, "P and Q must have the same dimension");
  CwGradient g;
  g.n = n;
  g.values.assign(static_cast<std::size_t>(n) * n, 0.0);
  g.usable.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (p(i, j) <= 0.0) continue;
      const double qij = q(i, j);
      if (!(qij > 0.0 && qij < 1.0)) {
        throw Error(ErrorCode::kBoundaryPoint, "Q(" + std::to_string(i) + "," + std::to_string(j) +
                                                   ") is on the boundary; the gradient is unbounded there");
      }
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      g.values[k] = -2.0 - std::log1p(-qij) - std::log(qij) + std::log(p(i, j));
      g.usable[k] = 1;
    }
  }
  return g;
}

double log_vdw(int n) {
  if (n < 1) throw Error(ErrorCode::kDomainError, "vdw needs n >= 1");
  return std::lgamma(n + 1.0) - n * std::log(static_cast<double>(n));
}

double log_G(double x) {
  if (!(x >= 1.0)) throw Error(ErrorCode::kDomainError, "G(x) needs x >= 1");
  return log_G(x, 1.0);
}

double log_G(double x, double t) {
  if (!(x > 0.0) || !(t >= 0.0) || t > x) throw Error(ErrorCode::kDomainError, "G(x, t) needs x >= t >= 0, x > 0");
  const double d = x - t;
  return d > 0.0 ? d * std::log(d / x) : 0.0;
}

double log_schrijver_bound(int k, int n) {
  if (k < 1 || n < 1) throw Error(ErrorCode::kDomainError, "Schrijver bound needs k, n >= 1");
  return n * log_G(k);
}

Matrix schrijver_tilde(const Matrix& a, double tol) {
  Matrix out(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) {
      const double v = clamp_unit(a(i, j), tol);
      out(i, j) = v * (1.0 - v);
    }
  return out;
}

double log_cpr(const Matrix& p, int j) {
  if (j < 0 || j >= p.n()) throw Error(ErrorCode::kDomainError, "column index out of range");
  double s = 0.0;
  for (int i = 0; i < p.n(); ++i) s += xlogx(1.0 - clamp_unit(p(i, j), kDefaultStochasticTol));
  return s;
}

double log_cpr_product(const Matrix& p) {
  double s = 0.0;
  for (int j = 0; j < p.n(); ++j) s += log_cpr(p, j);
  return s;
}

double log_gurvits_bound(const Matrix& p) {
  double s = 0.0;
  for (int j = 0; j < p.n(); ++j) {
    int nonzeros = 0;
    for (int i = 0; i < p.n(); ++i) nonzeros += p(i, j) > 0.0 ? 1 : 0;
    if (nonzeros == 0) return kNegInf;
    s += log_G(std::min(j + 1, nonzeros));
  }
  return s;
}

double log_bregman_upper(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.n(); ++i) {
    int ones = 0;
    for (double v : a.row(i)) {
      if (v == 1.0) {
        ++ones;
      } else if (v != 0.0) {
        throw Error(ErrorCode::kNotBoolean, "Bregman's bound needs a 0/1 matrix");
      }
    }
    if (ones == 0) return kNegInf;
    s += std::lgamma(ones + 1.0) / ones;
  }
  return s;
}

double log_holder_upper(const Matrix& a, HolderVariant variant) {
  double s = 0.0;
  for (int i = 0; i < a.n(); ++i) {
    const double d = a(i, i);
    double off = 0.0;
    for (int j = 0; j < a.n(); ++j) {
      if (j == i) continue;
      off += variant == HolderVariant::kSumSquared ? a(i, j) : a(i, j) * a(i, j);
    }
    const double row_term = variant == HolderVariant::kSumSquared ? d * d + off * off : d * d + off;
    if (row_term <= 0.0) return kNegInf;
    s += 0.5 * std::log(row_term);
  }
  return s;
}

double log_lms(const Matrix& a) {
  require_unit_entries(a, kDefaultStochasticTol);
  const int n = a.n();
  const std::vector<double> excl = log_exclusive_column_products(a);
  std::vector<double> terms(n);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = a(i, j);
      terms[j] = v > 0.0 ? std::log(v) + excl[static_cast<std::size_t>(i) * n + j] : kNegInf;
    }
    s += log_sum_exp(terms);
  }
  return s;
}

double log_sd(const Matrix& a) {
  require_unit_entries(a, kDefaultStochasticTol);
  const int n = a.n();
  const std::vector<double> excl = log_exclusive_column_products(a);
  std::vector<double> terms(n);
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double v = a(i, j);
      terms[i] = v > 0.0 ? std::log(v) + excl[static_cast<std::size_t>(i) * n + j] : kNegInf;
    }
    s += log_sum_exp(terms);
  }
  return s;
}

double log_lms_k(int r, int n, int m) {
  require_k_args(r, n, m);
  const double t = static_cast<double>(m) / n;
  const double a = t / r;
  const double keep = 1.0 - 1.0 / n;
  const int border = n - m;
  const double top = t * std::pow(1.0 - a, r - 1) * std::pow(keep, border) + (1.0 - t) * std::pow(keep, n - 1);
  double s = n * std::log(top);
  if (border > 0) s += border * (std::log(std::pow(keep, border - 1)) + r * std::log1p(-a));
  return s;
}

double log_sd_k(int r, int n, int m) {
  require_k_args(r, n, m);
  const double t = static_cast<double>(m) / n;
  const double a = t / r;
  const double keep = 1.0 - 1.0 / n;
  const int border = n - m;
  double left = t * std::pow(1.0 - a, r - 1) * std::pow(keep, border);
  if (border > 0) left += (1.0 - t) * std::pow(1.0 - a, r) * std::pow(keep, border - 1);
  double s = n * std::log(left);
  if (border > 0) s += border * (n - 1) * std::log(keep);
  return s;
}

double log_lms_kn(int n) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorCode::kOddN, "K_n needs an even n >= 2");
  return log_lms_k(1, n, n / 2);
}

double log_sd_kn(int n) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorCode::kOddN, "K_n needs an even n >= 2");
  return log_sd_k(1, n, n / 2);
}

double log_sf(int r, int n, int m) {
  require_rnm(r, n, m);
  const double t = static_cast<double>(m) / n;
  const double alpha = t / r;
  const int border = n - m;
  const double numerator = r * n * xlogx(1.0 - alpha) + 2.0 * border * log_G(n);
  const double denominator =
      m * std::log(alpha) - 2.0 * border * std::log(static_cast<double>(n)) + 2.0 * std::lgamma(border + 1.0);
  return numerator - denominator;
}

double log_d(int r, int n, int m) {
  require_rnm(r, n, m);
  const double t = static_cast<double>(m) / n;
  const double log_binom = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
  return 2.0 * log_binom + r * n * xlogx(1.0 - t / r) + m * std::log(t * r);
}

double log_d_over_sf(int n, int m) {
  if (n < 1 || m < 1 || m > n) throw Error(ErrorCode::kDomainError, "need 1 <= m <= n");
  double s = 0.0;
  for (int i = m + 1; i <= n; ++i) s += log_G(i);
  return 2.0 * (s - (n - m) * log_G(n));
}

double g_curve(int r, double t) {
  require_curve_args(r, t);
  return t * std::log(static_cast<double>(r)) - xlogx(t) - 2.0 * xlogx(1.0 - t) + r * xlogx(1.0 - t / r);
}

double m_curve(int r, double t) {
  require_curve_args(r, t);
  return r * xlogx(1.0 - t / r) - 2.0 * (1.0 - t);
}

double s_curve(int r, double t) {
  require_curve_args(r, t);
  const double keep = 1.0 - t / r;
  const double inner = t * std::pow(keep, r - 1) * std::exp(-(1.0 - t)) + (1.0 - t) * std::exp(-1.0);
  const double tail = (1.0 - t) > 0.0 ? r * (1.0 - t) * std::log(keep) : 0.0;
  return std::log(inner) - (1.0 - t) * (1.0 - t) + tail;
}

double l_curve(int r, double t) {
  require_curve_args(r, t);
  const double head = r > 1 ? (r - 1) * std::log1p(-t / r) : 0.0;
  return head - 2.0 * (1.0 - t);
}

double odd_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kDomainError, "odd entropy needs p in [0, 1]");
  return xlogx(p) - xlogx(1.0 - p);
}

double od_value(std::span<const double> q, std::span<const double> p) {
  if (q.size() != p.size()) throw Error(ErrorCode::kBadDimensions, "q and p must have the same length");
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(q[i] >= 0.0 && q[i] <= 1.0) || !(p[i] > 0.0)) {
      throw Error(ErrorCode::kDomainError, "OD needs q in [0, 1] and p > 0");
    }
    s += xlogx(1.0 - q[i]);
    if (q[i] > 0.0) s -= q[i] * std::log(q[i] / p[i]);
  }
  return s;
}

double bethe_divergence(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kBadDimensions, "x and y must have the same length");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0 && y[i] >= 0.0 && y[i] <= 1.0)) {
      throw Error(ErrorCode::kDomainError, "Bethe divergence needs entries in [0, 1]");
    }
    if (x[i] > 0.0) s += x[i] * std::log(x[i] / y[i]);
    if (x[i] < 1.0) s -= (1.0 - x[i]) * std::log((1.0 - x[i]) / (1.0 - y[i]));
  }
  return s;
}

double od_uniform_max(int n, double c) {
  if (n < 2 || !(c > 0.0)) throw Error(ErrorCode::kDomainError, "need n >= 2 and c > 0");
  return (n - 1) * std::log1p(-1.0 / n) + std::log(static_cast<double>(n)) + std::log(c);
}

double log_subperm_lower_ds(const Matrix& p, int m) {
  const int n = p.n();
  if (m < 1 || m > n) throw Error(ErrorCode::kDomainError, "need 1 <= m <= n");
  if (!is_doubly_stochastic(p, 1e-6)) throw Error(ErrorCode::kDomainError, "P must be doubly stochastic");
  const double t = static_cast<double>(m) / n;
  double entry_term = 0.0;
  for (double v : p.data()) entry_term += xlogx(1.0 - t * std::clamp(v, 0.0, 1.0));
  const int border = n - m;
  const double numerator = entry_term + 2.0 * border * log_G(n);
  const double denominator =
      m * std::log(t) - 2.0 * border * std::log(static_cast<double>(n)) + 2.0 * std::lgamma(border + 1.0);
  return numerator - denominator;
}

}  // namespace permabound
