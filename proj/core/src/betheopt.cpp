#include "permabound/betheopt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "permabound/assignment.hpp"
#include "permabound/bounds.hpp"
#include "permabound/error.hpp"

namespace permabound {

namespace {

constexpr double kStepCap = 1.0 - 1e-12;
constexpr double kStartBlend = 1e-9;
constexpr std::size_t kNewtonMaxCells = 2500;

// A point of the face in free-cell coordinates. The complement 1 - x is kept
// separately because entries get within 1e-12 of 1, where recomputing it
// would lose most of its digits.
struct Point {
  std::vector<double> x;
  std::vector<double> c;

  void assign_step(const Point& from, double t, const std::vector<double>& dx, const std::vector<double>& dc) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] = from.x[k] + t * dx[k];
      c[k] = from.c[k] + t * dc[k];
    }
  }
};

// CW(P, .) on the free cells of the face; forced cells sit at 1.
struct FaceObjective {
  int n = 0;
  std::vector<int> cells;     // row-major index of each free cell
  std::vector<double> log_p;  // ln P on free cells
  double forced_value = 0.0;  // sum of ln P over forced cells

  double value(const Point& q) const {
    double s = forced_value;
    for (std::size_t k = 0; k < cells.size(); ++k) s += xlogx(q.c[k]) - xlogx(q.x[k]) + q.x[k] * log_p[k];
    return s;
  }

  double grad(double x, double c, std::size_t k) const { return -2.0 - std::log(c) - std::log(x) + log_p[k]; }
};

// Root of phi'(gamma) on [0, cap] for phi concave along the segment.
double line_search(const FaceObjective& f, const Point& q, const std::vector<double>& dx,
                   const std::vector<double>& dc) {
  auto derivs = [&](double g, double& d1, double& d2) {
    d1 = 0.0;
    d2 = 0.0;
    for (std::size_t k = 0; k < f.cells.size(); ++k) {
      if (dx[k] == 0.0) continue;
      const double x = q.x[k] + g * dx[k];
      const double c = q.c[k] + g * dc[k];
      d1 += dx[k] * f.grad(x, c, k);
      d2 += dx[k] * dx[k] * (1.0 / c - 1.0 / x);
    }
  };
  double d1, d2;
  derivs(kStepCap, d1, d2);
  if (d1 >= 0.0) return kStepCap;
  double lo = 0.0, hi = kStepCap, g = 0.5 * kStepCap;
  derivs(0.0, d1, d2);
  if (d2 < 0.0) g = std::clamp(-d1 / d2, 0.0, kStepCap);
  for (int it = 0; it < 60; ++it) {
    derivs(g, d1, d2);
    if (d1 > 0.0) {
      lo = g;
    } else {
      hi = g;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, hi) || d1 == 0.0) break;
    double next = d2 < 0.0 ? g - d1 / d2 : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - g) <= 1e-16) break;
    g = next;
  }
  return g;
}

// Orthonormal basis of the free-cell directions that keep every line sum fixed.
Eigen::MatrixXd tangent_basis(const FaceObjective& f) {
  const int n = f.n;
  const Eigen::Index m = static_cast<Eigen::Index>(f.cells.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    a(f.cells[k] / n, k) = 1.0;
    a(n + f.cells[k] % n, k) = 1.0;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (lu.rank() == m) return Eigen::MatrixXd(m, 0);
  const Eigen::MatrixXd kernel = lu.kernel();
  return Eigen::HouseholderQR<Eigen::MatrixXd>(kernel).householderQ() * Eigen::MatrixXd::Identity(m, kernel.cols());
}

// Newton step of the objective restricted to the tangent space. Returns false
// unless the reduced Hessian is negative definite and the step ascends.
bool newton_direction(const FaceObjective& f, const Eigen::MatrixXd& basis, const Point& q, std::vector<double>& dx) {
  const Eigen::Index m = static_cast<Eigen::Index>(f.cells.size());
  Eigen::VectorXd g(m), h(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    g[k] = f.grad(q.x[k], q.c[k], k);
    h[k] = 1.0 / q.x[k] - 1.0 / q.c[k];
  }
  const Eigen::MatrixXd reduced = basis.transpose() * h.asDiagonal() * basis;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(reduced);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return false;
  const Eigen::VectorXd z = ldlt.solve(basis.transpose() * g);
  if (ldlt.info() != Eigen::Success || !z.allFinite()) return false;
  const Eigen::VectorXd step = basis * z;
  if (!(g.dot(step) > 0.0)) return false;
  for (Eigen::Index k = 0; k < m; ++k) dx[k] = step[k];
  return true;
}

// Largest step keeping every free cell strictly inside (0, 1), capped at 1.
double interior_step(const Point& q, const std::vector<double>& dx) {
  double limit = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < dx.size(); ++k) {
    if (dx[k] < 0.0) limit = std::min(limit, q.x[k] / -dx[k]);
    if (dx[k] > 0.0) limit = std::min(limit, q.c[k] / dx[k]);
  }
  return std::min(1.0, 0.99 * limit);
}

// One connected block of the face: p and face are the block submatrices, q0 a
// doubly stochastic start strictly inside the face and center the Sinkhorn
// point of the face indicator.
CWResult solve_block(const Matrix& p, const SupportPattern& face, const std::vector<double>& q0,
                     const std::vector<double>& center, double tol, int max_iter) {
  const int n = p.n();
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  FaceObjective f;
  f.n = n;
  Point q, mid;
  std::vector<double> full(nn, 0.0);
  std::vector<int> row_count(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) row_count[i] += face.allowed(i, j) ? 1 : 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!face.allowed(i, j)) continue;
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      if (row_count[i] == 1) {
        full[k] = 1.0;
        f.forced_value += std::log(p(i, j));
      } else {
        f.cells.push_back(static_cast<int>(k));
        f.log_p.push_back(std::log(p(i, j)));
        q.x.push_back(q0[k]);
        q.c.push_back(1.0 - q0[k]);
        mid.x.push_back(center[k]);
        mid.c.push_back(1.0 - center[k]);
      }
    }
  const std::size_t m = f.cells.size();

  CWResult result;
  double current = f.value(q);
  Point best = q;
  double best_value = current;
  double best_gap = std::numeric_limits<double>::infinity();
  double running_max = current;

  const bool use_newton = m > 0 && m <= kNewtonMaxCells;
  const Eigen::MatrixXd basis = use_newton ? tangent_basis(f) : Eigen::MatrixXd();

  std::vector<double> cost(nn, 0.0), dx(m), dc(m), cx(m), cc(m);
  std::vector<int> cell_of(nn, -1);
  for (std::size_t k = 0; k < m; ++k) cell_of[f.cells[k]] = static_cast<int>(k);
  Point trial = q, center_trial = q;
  // Value of the permutation vertex the point has collapsed onto, or nullopt.
  // Near the boundary CW is not differentiable and the gap stops shrinking.
  auto snapped_vertex = [&](const Point& at, Point& out) -> std::optional<double> {
    std::vector<int> ones(n, 0);
    double v = f.forced_value;
    out = at;
    for (std::size_t k = 0; k < m; ++k) {
      if (at.c[k] < 1e-6) {
        ++ones[f.cells[k] / n];
        v += f.log_p[k];
        out.x[k] = 1.0;
        out.c[k] = 0.0;
      } else {
        out.x[k] = 0.0;
        out.c[k] = 1.0;
      }
    }
    for (int i = 0; i < n; ++i)
      if (row_count[i] > 1 && ones[i] != 1) return std::nullopt;
    return v;
  };
  Point vertex_point;
  bool snapped = false;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    std::fill(cost.begin(), cost.end(), 0.0);
    double inner = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double g = f.grad(q.x[k], q.c[k], k);
      cost[f.cells[k]] = -g;
      inner += g * q.x[k];
    }
    const std::vector<int> perm = assignment_solve(cost, face);
    double vertex = 0.0;
    for (int i = 0; i < n; ++i) vertex -= cost[static_cast<std::size_t>(i) * n + perm[i]];
    const double gap = std::max(0.0, vertex - inner);

    // Values closer than `noise` are indistinguishable in double precision;
    // among those the smaller gap wins.
    const double noise = 1e-13 * (1.0 + std::abs(current));
    if (current > best_value + noise || (current >= best_value - noise && gap < best_gap)) {
      best_value = current;
      best = q;
      best_gap = gap;
    }
    running_max = std::max(running_max, current);
    result.trace.push_back({iter, running_max, gap});
    if (gap <= tol) {
      best_value = current;
      best = q;
      best_gap = gap;
      result.converged = true;
      break;
    }

    if (iter % 50 == 49) {
      if (const auto v = snapped_vertex(q, vertex_point); v && *v > current + noise) {
        current = *v;
        q = vertex_point;
        snapped = true;
        break;
      }
    }

    if (use_newton && basis.cols() > 0 && newton_direction(f, basis, q, dx)) {
      for (std::size_t k = 0; k < m; ++k) dc[k] = -dx[k];
      bool improved = false;
      for (double t = interior_step(q, dx); t > 1e-12; t *= 0.5) {
        trial.assign_step(q, t, dx, dc);
        const double v = f.value(trial);
        // Near the optimum a full Newton step may change the value by less
        // than rounding; take it anyway so the gap keeps shrinking.
        if (v > current || (t == 1.0 && v >= current - noise)) {
          improved = true;
          current = v;
          break;
        }
      }
      if (improved) {
        std::swap(q, trial);
        continue;
      }
    }

    // Frank-Wolfe step toward the permutation vertex.
    for (std::size_t k = 0; k < m; ++k) {
      dx[k] = -q.x[k];
      dc[k] = q.x[k];
    }
    for (int i = 0; i < n; ++i) {
      const int k = cell_of[static_cast<std::size_t>(i) * n + perm[i]];
      if (k < 0) continue;
      dx[k] = q.c[k];
      dc[k] = -q.c[k];
    }
    const auto search = [&](const std::vector<double>& sx, const std::vector<double>& sc, Point& out) {
      double gamma = line_search(f, q, sx, sc);
      for (int shrink = 0; shrink < 60 && gamma > 0.0; ++shrink) {
        out.assign_step(q, gamma, sx, sc);
        const double v = f.value(out);
        if (v >= current) return std::optional<double>(v);
        gamma *= 0.5;
      }
      return std::optional<double>();
    };
    // Near a vertex the Frank-Wolfe steps shrink to nothing; the segment back
    // toward the center of the face is the way out.
    for (std::size_t k = 0; k < m; ++k) {
      cx[k] = mid.x[k] - q.x[k];
      cc[k] = mid.c[k] - q.c[k];
    }
    const std::optional<double> fw_value = search(dx, dc, trial);
    const std::optional<double> center_value = search(cx, cc, center_trial);
    if (center_value && (!fw_value || *center_value > *fw_value)) {
      std::swap(q, center_trial);
      current = *center_value;
    } else if (fw_value) {
      std::swap(q, trial);
      current = *fw_value;
    } else {
      break;  // no representable ascent left
    }
  }
  if (!snapped) {
    if (const auto v = snapped_vertex(q, vertex_point); v && *v > current) {
      current = *v;
      q = vertex_point;
    }
  }
  if (current > best_value + 1e-13 * (1.0 + std::abs(current))) {
    best_value = current;
    best = q;
  }

  for (std::size_t k = 0; k < m; ++k) full[f.cells[k]] = best.x[k];
  result.q_star = Matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) result.q_star(i, j) = full[static_cast<std::size_t>(i) * n + j];
  result.value = best_value;
  result.duality_gap = best_gap;
  result.iterations = iter;
  return result;
}

}  // namespace

CWResult maximize_cw(const Matrix& p, double tol, int max_iter, const std::optional<Matrix>& start) {
  const int n = p.n();
  const SupportPattern support = support_pattern(p);
  if (!support.has_perfect_matching()) {
    throw Error(ErrorCode::kZeroPermanent, "supp(P) has no perfect matching, so per(P) = 0");
  }
  // Doubly stochastic matrices inside supp(P) live on the entries that lie on
  // some perfect matching.
  const SupportPattern face = total_support(support);
  const std::size_t nn = static_cast<std::size_t>(n) * n;

  const Matrix interior = sinkhorn_scale(support_indicator(face), 1e-13, 1'000'000).scaled;
  std::vector<double> q0(interior.data().begin(), interior.data().end());
  if (start) {
    if (start->n() != n) throw Error(ErrorCode::kBadDimensions, "start point has the wrong dimension");
    if (!is_doubly_stochastic(*start, 1e-8)) {
      throw Error(ErrorCode::kDomainError, "start point must be doubly stochastic");
    }
    bool on_boundary = false;
    for (int i = 0; i < n; ++i) {
      int cells = 0;
      for (int j = 0; j < n; ++j) cells += face.allowed(i, j) ? 1 : 0;
      for (int j = 0; j < n; ++j) {
        const double x = (*start)(i, j);
        if (x > 0.0 && !face.allowed(i, j)) {
          throw Error(ErrorCode::kDomainError, "start point must be supported on supp(P)");
        }
        if (face.allowed(i, j) && cells > 1 && !(x > 0.0 && x < 1.0)) on_boundary = true;
      }
    }
    // The gradient is unbounded on the boundary; nudge such starts into the interior.
    const double blend = on_boundary ? kStartBlend : 0.0;
    for (std::size_t k = 0; k < nn; ++k) q0[k] = (1.0 - blend) * start->data()[k] + blend * interior.data()[k];
  }

  // CW splits over the connected blocks of the face; each block is solved on
  // its own so a block collapsing onto a vertex cannot stall the others.
  std::vector<int> root(2 * n);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int a) {
    while (root[a] != a) a = root[a] = root[root[a]];
    return a;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (face.allowed(i, j)) root[find(i)] = find(n + j);

  CWResult result;
  result.q_star = Matrix(n);
  result.converged = true;
  std::vector<CWResult> parts;
  for (int b = 0; b < n; ++b) {
    std::vector<int> rows, cols;
    for (int i = 0; i < n; ++i)
      if (find(i) == find(b)) rows.push_back(i);
    if (rows.front() != b) continue;  // each block is handled at its first row
    for (int j = 0; j < n; ++j)
      if (find(n + j) == find(b)) cols.push_back(j);
    const int k = static_cast<int>(rows.size());
    Matrix sub(k);
    std::vector<double> sub_q0(static_cast<std::size_t>(k) * k);
    std::vector<double> sub_center(static_cast<std::size_t>(k) * k);
    for (int a = 0; a < k; ++a)
      for (int c = 0; c < k; ++c) {
        const std::size_t at = static_cast<std::size_t>(rows[a]) * n + cols[c];
        if (face.mask[at]) sub(a, c) = p.data()[at];
        sub_q0[static_cast<std::size_t>(a) * k + c] = face.mask[at] ? q0[at] : 0.0;
        sub_center[static_cast<std::size_t>(a) * k + c] = face.mask[at] ? interior.data()[at] : 0.0;
      }
    CWResult part = solve_block(sub, support_pattern(sub), sub_q0, sub_center, tol, max_iter);
    for (int a = 0; a < k; ++a)
      for (int c = 0; c < k; ++c) result.q_star(rows[a], cols[c]) = part.q_star(a, c);
    result.value += part.value;
    result.duality_gap += part.duality_gap;
    result.iterations = std::max(result.iterations, part.iterations);
    result.converged = result.converged && part.converged;
    parts.push_back(std::move(part));
  }
  // Blocks that finished early keep contributing their last trace entry.
  for (int it = 0; it <= result.iterations; ++it) {
    CwTracePoint point{it, 0.0, 0.0};
    bool any = false;
    for (const CWResult& part : parts) {
      if (part.trace.empty()) continue;
      const CwTracePoint& last = part.trace[std::min<std::size_t>(it, part.trace.size() - 1)];
      point.value += last.value;
      point.gap += last.gap;
      any = true;
    }
    if (!any) break;
    result.trace.push_back(point);
  }
  return result;
}

}  // namespace permabound
