#include "permabound/capacity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "permabound/error.hpp"

namespace permabound {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_matching(const Matrix& p) {
  if (!support_pattern(p).has_perfect_matching()) {
    throw Error(ErrorCode::kUnbounded, "supp(P) has no perfect matching; the capacity is 0");
  }
}

Eigen::VectorXd project(const Eigen::VectorXd& g) { return g.array() - g.mean(); }

// h(y) = sum_i ln sum_j P(i,j) e^{y_j}; fills the gradient and Hessian.
double product_objective(const Matrix& p, const Eigen::VectorXd& y, Eigen::VectorXd* grad, Eigen::MatrixXd* hess) {
  const int n = p.n();
  const double shift = y.maxCoeff();
  double h = 0.0;
  if (grad) grad->setZero(n);
  if (hess) hess->setZero(n, n);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      w[j] = p(i, j) * std::exp(y[j] - shift);
      s += w[j];
    }
    h += std::log(s) + shift;
    w /= s;
    if (grad) *grad += w;
    if (hess) {
      hess->diagonal() += w;
      hess->noalias() -= w * w.transpose();
    }
  }
  return h;
}

// ln q_(j)(e^z) over the n - 1 free coordinates z, with its gradient.
struct QjObjective {
  const Matrix& p;
  int j;
  std::vector<int> cols;  // l != j

  double operator()(const Eigen::VectorXd& z, Eigen::VectorXd* grad) const {
    const int n = p.n();
    const int m = static_cast<int>(cols.size());
    const double shift = m > 0 ? z.maxCoeff() : 0.0;
    std::vector<double> log_r(n);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, m);
    int dead = 0;
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int a = 0; a < m; ++a) {
        w(k, a) = p(k, cols[a]) * std::exp(z[a] - shift);
        s += w(k, a);
      }
      if (s > 0.0) {
        w.row(k) /= s;
        log_r[k] = std::log(s) + shift;
        total += log_r[k];
      } else {
        log_r[k] = kNegInf;
        ++dead;
      }
    }
    std::vector<double> terms(n, kNegInf);
    double top = kNegInf;
    for (int i = 0; i < n; ++i) {
      if (!(p(i, j) > 0.0)) continue;
      const bool self_dead = log_r[i] == kNegInf;
      if (dead > (self_dead ? 1 : 0)) continue;
      terms[i] = std::log(p(i, j)) + (self_dead ? total : total - log_r[i]);
      top = std::max(top, terms[i]);
    }
    if (top == kNegInf) {
      if (grad) grad->setZero(m);
      return kNegInf;
    }
    double s = 0.0;
    for (double t : terms) s += t == kNegInf ? 0.0 : std::exp(t - top);
    if (grad) {
      Eigen::VectorXd pi(n);
      for (int i = 0; i < n; ++i) pi[i] = terms[i] == kNegInf ? 0.0 : std::exp(terms[i] - top) / s;
      *grad = w.transpose() * (Eigen::VectorXd::Ones(n) - pi);
    }
    return top + std::log(s);
  }
};

std::vector<double> exp_coords(const Eigen::VectorXd& y) {
  std::vector<double> x(y.size());
  for (Eigen::Index k = 0; k < y.size(); ++k) x[k] = std::exp(y[k]);
  return x;
}

}  // namespace

CapacityResult capacity_product(const Matrix& p, double tol, int max_iter) {
  require_matching(p);
  const int n = p.n();
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd g(n), trial_g(n);
  Eigen::MatrixXd h(n, n);
  const Eigen::MatrixXd ones_n = Eigen::MatrixXd::Constant(n, n, 1.0 / n);

  CapacityResult result;
  // On sum y = 0, h(y) is ln Prod_P(e^y) and the constrained gradient is g - mean(g).
  double value = product_objective(p, y, &g, &h);
  int it = 0;
  for (; it < max_iter; ++it) {
    const Eigen::VectorXd pg = project(g);
    result.gradient_norm = pg.norm();
    if (result.gradient_norm <= tol) {
      result.converged = true;
      break;
    }
    // h is flat along the all-ones direction; the rank-one term fixes that
    // without changing the step on the hyperplane.
    Eigen::MatrixXd reg = h + ones_n;
    reg.diagonal().array() += 1e-12;
    Eigen::VectorXd step = -reg.ldlt().solve(pg);
    step = project(step);
    double slope = pg.dot(step);
    if (!(slope < 0.0)) {
      step = -pg;
      slope = -pg.squaredNorm();
    }
    double t = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      const Eigen::VectorXd trial = y + t * step;
      const double trial_value = product_objective(p, trial, nullptr, nullptr);
      if (trial_value <= value + 1e-4 * t * slope) {
        y = trial;
        value = product_objective(p, y, &g, &h);
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      result.gradient_norm = project(g).norm();
      break;
    }
  }
  result.value = value;
  result.minimizer = exp_coords(y);
  result.iterations = it;
  return result;
}

double qj_value(const Matrix& p, int j, std::span<const double> x) {
  const int n = p.n();
  if (j < 0 || j >= n) throw Error(ErrorCode::kDomainError, "column index out of range");
  if (x.size() != static_cast<std::size_t>(n - 1)) {
    throw Error(ErrorCode::kBadDimensions, "q_(j) takes n - 1 arguments");
  }
  std::vector<double> r(n, 0.0);
  for (int k = 0; k < n; ++k) {
    int a = 0;
    for (int l = 0; l < n; ++l) {
      if (l == j) continue;
      r[k] += p(k, l) * x[a++];
    }
  }
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    if (p(i, j) == 0.0) continue;
    double prod = p(i, j);
    for (int k = 0; k < n; ++k)
      if (k != i) prod *= r[k];
    s += prod;
  }
  return s;
}

CapacityResult capacity_qj(const Matrix& p, int j, double tol, int max_iter) {
  const int n = p.n();
  if (j < 0 || j >= n) throw Error(ErrorCode::kDomainError, "column index out of range");
  require_matching(p);
  QjObjective f{p, j, {}};
  for (int l = 0; l < n; ++l)
    if (l != j) f.cols.push_back(l);
  const int m = n - 1;

  CapacityResult result;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(m);
  if (m == 0) {
    result.value = f(z, nullptr);
    result.converged = true;
    return result;
  }
  Eigen::VectorXd g(m), g_new(m);
  double value = f(z, &g);
  if (value == kNegInf) throw Error(ErrorCode::kUnbounded, "q_(j) vanishes identically");
  Eigen::MatrixXd inv_h = Eigen::MatrixXd::Identity(m, m) - Eigen::MatrixXd::Constant(m, m, 1.0 / m);
  int it = 0;
  for (; it < max_iter; ++it) {
    const Eigen::VectorXd pg = project(g);
    result.gradient_norm = pg.norm();
    if (result.gradient_norm <= tol) {
      result.converged = true;
      break;
    }
    Eigen::VectorXd step = project(-(inv_h * pg));
    double slope = pg.dot(step);
    if (!(slope < 0.0)) {
      inv_h = Eigen::MatrixXd::Identity(m, m) - Eigen::MatrixXd::Constant(m, m, 1.0 / m);
      step = -pg;
      slope = -pg.squaredNorm();
    }
    double t = 1.0;
    bool moved = false;
    Eigen::VectorXd z_new;
    double v_new = value;
    for (int ls = 0; ls < 60; ++ls) {
      z_new = z + t * step;
      v_new = f(z_new, &g_new);
      if (v_new <= value + 1e-4 * t * slope) {
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
    const Eigen::VectorXd s = z_new - z;
    const Eigen::VectorXd yv = project(g_new) - pg;
    const double sy = s.dot(yv);
    if (sy > 1e-300) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
      inv_h = (id - rho * s * yv.transpose()) * inv_h * (id - rho * yv * s.transpose()) + rho * s * s.transpose();
    }
    z = z_new;
    g = g_new;
    value = v_new;
  }
  result.value = value;
  result.minimizer = exp_coords(z);
  result.iterations = it;
  return result;
}

}  // namespace permabound
