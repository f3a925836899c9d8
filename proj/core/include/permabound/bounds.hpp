#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "permabound/matrix.hpp"

namespace permabound {

// Closed-form bounds and functionals. Everything is returned as a natural log
// unless the name says otherwise. Boundary conventions used throughout:
//   0 * ln 0 = 0, (1 - 1) * ln(1 - 1) = 0, 0 * ln(0 / x) = 0.

/// x * ln x with the 0 * ln 0 = 0 convention.
double xlogx(double x) noexcept;

/// sum (1 - P(i,j)) ln(1 - P(i,j)). Entries in (1, 1 + tol] are treated as 1;
/// larger entries throw EntryOutOfRange.
double log_F(const Matrix& p, double tol = kDefaultStochasticTol);

/// Bethe functional: sum (1-Q) ln(1-Q) - sum Q ln(Q/P). Returns -inf when Q
/// puts mass outside supp(P). Q entries are clamped to [0, 1].
double cw_value(const Matrix& p, const Matrix& q);

struct CwGradient {
  int n = 0;
  std::vector<double> values;        // row-major partial derivatives
  std::vector<std::uint8_t> usable;  // 0 off supp(P), where the derivative is undefined

  double operator()(int i, int j) const noexcept { return values[static_cast<std::size_t>(i) * n + j]; }
};

/// Entrywise -2 - ln(1 - Q) - ln Q + ln P on supp(P). Throws BoundaryPoint if
/// some Q(i,j) on supp(P) is 0 or 1.
CwGradient cw_gradient(const Matrix& p, const Matrix& q);

/// ln(n!/n^n).
double log_vdw(int n);
/// ln G(x), G(x) = ((x-1)/x)^(x-1), x >= 1; G(1) = 1.
double log_G(double x);
/// ln G(x, t), G(x, t) = ((x-t)/x)^(x-t), x >= t >= 0.
double log_G(double x, double t);

/// (k-1) n ln((k-1)/k).
double log_schrijver_bound(int k, int n);

/// Entrywise A(1 - A). Throws EntryOutOfRange outside [0, 1 + tol].
Matrix schrijver_tilde(const Matrix& a, double tol = kDefaultStochasticTol);

/// ln prod_i (1 - P(i,j))^(1 - P(i,j)) for column j.
double log_cpr(const Matrix& p, int j);
/// sum_j ln CPR_j(P).
double log_cpr_product(const Matrix& p);
/// sum_j ln G(min(j, C_j)), columns taken in the given order j = 1..n and C_j
/// the number of nonzeros in column j.
double log_gurvits_bound(const Matrix& p);

/// sum_i ln (r_i!)^(1/r_i) for a 0/1 matrix. Throws NotBoolean otherwise.
double log_bregman_upper(const Matrix& a);

enum class HolderVariant {
  kSumSquared,    // (A(i,i)^2 + (sum_{j!=i} A(i,j))^2)^(1/2)
  kSumOfSquares,  // (A(i,i)^2 + sum_{j!=i} A(i,j)^2)^(1/2)
};
/// Row-wise Holder-type upper bound on per(A).
double log_holder_upper(const Matrix& a, HolderVariant variant = HolderVariant::kSumSquared);

/// prod_i sum_j A(i,j) prod_{k!=i} (1 - A(k,j)).
double log_lms(const Matrix& a);
/// prod_j sum_i A(i,j) prod_{k!=i} (1 - A(k,j)).
double log_sd(const Matrix& a);

/// Closed form of LMS(K) for K = k_embed(A, m, m/(n r), 1/n), A in RB(r, n).
double log_lms_k(int r, int n, int m);
/// Closed form of SD(K) for the same K.
double log_sd_k(int r, int n, int m);
/// log_lms_k(1, n, n/2), i.e. LMS of K_n. Throws OddN.
double log_lms_kn(int n);
/// log_sd_k(1, n, n/2). Throws OddN.
double log_sd_kn(int n);

/// Lower bound on per_m over RI(r, n).
double log_sf(int r, int n, int m);
/// Lower-matching quantity C(n,m)^2 ((r-t)/r)^(n(r-t)) (rt)^(nt).
double log_d(int r, int n, int m);
/// ln(D/SF) via 2 ln(G(m+1)...G(n) / G(n)^(n-m)); independent of r.
double log_d_over_sf(int n, int m);

// Limit curves in t = m/n.
double g_curve(int r, double t);
double m_curve(int r, double t);
double s_curve(int r, double t);
double l_curve(int r, double t);

/// p ln p - (1-p) ln(1-p).
double odd_entropy(double p);
/// sum (1 - q_i) ln(1 - q_i) - q_i ln(q_i / p_i).
double od_value(std::span<const double> q, std::span<const double> p);
/// sum x_i ln(x_i/y_i) - (1 - x_i) ln((1 - x_i)/(1 - y_i)).
double bethe_divergence(std::span<const double> x, std::span<const double> y);
/// max over the simplex of OD(q, c * e): (n-1) ln(1 - 1/n) + ln n + ln c.
double od_uniform_max(int n, double c);

/// Lower bound on ln per_m(P) for doubly stochastic P, 1 <= m <= n.
double log_subperm_lower_ds(const Matrix& p, int m);

}  // namespace permabound
