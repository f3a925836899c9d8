#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "permabound/assignment.hpp"
#include "permabound/betheopt.hpp"
#include "permabound/bounds.hpp"
#include "permabound/capacity.hpp"
#include "permabound/exactperm.hpp"
#include "permabound/randmodels.hpp"
#include "test_util.hpp"

using namespace permabound;

namespace {

SupportPattern full(int n) { return support_pattern(Matrix::constant(n, 1.0)); }

// Diagonal weight alpha >= 1/2 on top of a random doubly stochastic remainder.
Matrix dominant(std::mt19937_64& gen, int n) {
  std::uniform_real_distribution<double> u(0.5, 0.95);
  const double alpha = u(gen);
  const Matrix r = oracle::random_birkhoff(gen, n, 3);
  Matrix p(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = (1 - alpha) * r(i, j) + (i == j ? alpha : 0.0);
  return p;
}

void check_result_invariants(const Matrix& p, const CWResult& res, double tol) {
  CHECK(is_doubly_stochastic(res.q_star, 1e-8));
  for (int i = 0; i < p.n(); ++i)
    for (int j = 0; j < p.n(); ++j)
      if (p(i, j) == 0.0) CHECK(res.q_star(i, j) == 0.0);
  CHECK(std::isfinite(res.value));
  CHECK(res.value == doctest::Approx(cw_value(p, res.q_star)).epsilon(1e-12));
  if (res.converged) CHECK(res.duality_gap <= tol);
  for (std::size_t k = 1; k < res.trace.size(); ++k) CHECK(res.trace[k].value >= res.trace[k - 1].value - 1e-12);
}

}  // namespace

TEST_CASE("assignment_solve") {
  const int n = 4;
  std::vector<double> zero(n * n, 0.0);
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  CHECK(assignment_solve(zero, full(n)) == id);
  std::vector<double> reward(n * n, 0.0);
  for (int i = 0; i < n; ++i) reward[i * n + i] = -1.0;
  CHECK(assignment_solve(reward, full(n)) == id);

  // Ties among several optima resolve to the lexicographically smallest.
  std::vector<double> tie{0, 0, 1, 0, 0, 1, 1, 1, 0};
  CHECK(assignment_solve(tie, full(3)) == std::vector<int>{0, 1, 2});
  std::vector<double> tie2{1, 0, 0, 0, 1, 0, 0, 0, 1};
  CHECK(assignment_solve(tie2, full(3)) == std::vector<int>{1, 2, 0});

  CHECK_ERROR_CODE(assignment_solve(zero, support_pattern(Matrix::from_rows({{1, 1, 1, 1}, {0, 0, 0, 1}, {0, 0, 0, 1}, {1, 1, 1, 1}}))),
                   ErrorCode::kInfeasible);
}

TEST_CASE("assignment_solve matches exhaustive search") {
  std::mt19937_64 gen(30);
  std::uniform_int_distribution<int> small(0, 3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5;
    std::vector<double> cost(n * n);
    // Integer costs make ties frequent, so tie-breaking is exercised.
    for (double& c : cost) c = trial % 2 ? small(gen) : u(gen);
    const Matrix mask = oracle::random_matrix(gen, n, trial % 3 == 0 ? 0.3 : 0.0);
    const SupportPattern allowed = support_pattern(mask);
    std::vector<int> sigma(n), best;
    std::iota(sigma.begin(), sigma.end(), 0);
    double best_cost = INFINITY;
    do {
      double c = 0;
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        ok = ok && allowed.allowed(i, sigma[i]);
        c += cost[i * n + sigma[i]];
      }
      if (ok && c < best_cost - 1e-12) best_cost = c, best = sigma;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    if (best.empty()) {
      CHECK_ERROR_CODE(assignment_solve(cost, allowed), ErrorCode::kInfeasible);
      continue;
    }
    CHECK(assignment_solve(cost, allowed) == best);
  }
}

TEST_CASE("maximize_cw examples") {
  const CWResult id = maximize_cw(Matrix::identity(5));
  CHECK(id.value == doctest::Approx(0.0));
  CHECK(id.q_star == Matrix::identity(5));

  const CWResult half = maximize_cw(Matrix::constant(2, 0.5));
  CHECK(half.value == doctest::Approx(-2 * std::log(2.0)));

  for (int blocks = 1; blocks <= 6; ++blocks) {
    const Matrix p = family_example2(blocks);
    CHECK(maximize_cw(p).value == doctest::Approx(-2.0 * blocks * std::log(2.0)).epsilon(1e-9));
  }

  for (int n = 2; n <= 10; n += 2) {
    const Matrix k = k_counterexample(n);
    CHECK(maximize_cw(k).value == doctest::Approx(log_F(k)).epsilon(1e-7));
  }

  CHECK_ERROR_CODE(maximize_cw(Matrix::from_rows({{1, 1}, {0, 0}})), ErrorCode::kZeroPermanent);
}

TEST_CASE("maximize_cw on diagonally dominant matrices") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    const Matrix p = dominant(gen, n);
    double diag = 0;
    for (int i = 0; i < n; ++i) diag += std::log(p(i, i));
    const CWResult res = maximize_cw(p);
    CHECK(res.value == doctest::Approx(diag).epsilon(1e-6));
    check_result_invariants(p, res, kDefaultCwTol);
  }
}

TEST_CASE("maximize_cw sits between F and the permanent") {
  Rng rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 6;
    const Matrix p = random_doubly_stochastic(n, rng, trial % 2 ? CorpusKind::kSparse : CorpusKind::kDense);
    const CWResult res = maximize_cw(p);
    check_result_invariants(p, res, kDefaultCwTol);
    CHECK(res.value >= log_F(p) - 1e-12);
    CHECK(res.value <= permanent_ryser(p).log() + 1e-7);
  }
}

TEST_CASE("maximize_cw on non-stochastic and partly supported inputs") {
  std::mt19937_64 gen(33);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 6;
    const Matrix p = oracle::random_matrix(gen, n, 0.35);
    if (!oracle::has_perfect_matching(p)) {
      CHECK_ERROR_CODE(maximize_cw(p), ErrorCode::kZeroPermanent);
      continue;
    }
    const CWResult res = maximize_cw(p);
    check_result_invariants(p, res, kDefaultCwTol);
    CHECK(res.value <= std::log(static_cast<double>(oracle::permanent(p))) + 1e-7);
  }
}

TEST_CASE("maximize_cw value does not depend on the start") {
  std::mt19937_64 gen(34);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 4;
    const Matrix p = oracle::random_matrix(gen, n);
    const Matrix start = oracle::random_birkhoff(gen, n, 2);
    const CWResult a = maximize_cw(p);
    const CWResult b = maximize_cw(p, kDefaultCwTol, kDefaultCwMaxIter, start);
    CHECK(a.value == doctest::Approx(b.value).epsilon(10 * kDefaultCwTol));
    CHECK(b.value >= cw_value(p, start) - 1e-12);
  }
}

TEST_CASE("capacity_product") {
  Rng rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix p = random_doubly_stochastic(2 + trial % 6, rng);
    const CapacityResult c = capacity_product(p);
    CHECK(c.value == doctest::Approx(0.0).epsilon(1e-9));
    for (double x : c.minimizer) CHECK(x == doctest::Approx(1.0).epsilon(1e-5));
  }
  Matrix d(3);
  d(0, 0) = 2.0, d(1, 1) = 0.5, d(2, 2) = 7.0;
  CHECK(capacity_product(d).value == doctest::Approx(std::log(7.0)));
  const CapacityResult j2 = capacity_product(Matrix::constant(2, 1.0));
  CHECK(j2.value == doctest::Approx(std::log(4.0)));
  double log_sum = 0;
  for (double x : j2.minimizer) log_sum += std::log(x);
  CHECK(std::fabs(log_sum) < 1e-10);

  // Sinkhorn-scaled positive matrices have capacity 1.
  std::mt19937_64 gen(36);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix s = sinkhorn_scale(oracle::random_matrix(gen, 5), 1e-13).scaled;
    CHECK(std::fabs(capacity_product(s).value) < 1e-6);
  }
  CHECK_ERROR_CODE(capacity_product(Matrix::from_rows({{1, 1}, {0, 0}})), ErrorCode::kUnbounded);
}

TEST_CASE("capacity_qj") {
  for (int j = 0; j < 4; ++j) CHECK(capacity_qj(Matrix::identity(4), j).value == doctest::Approx(0.0).epsilon(1e-9));
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const Matrix p = random_doubly_stochastic(n, rng);
    const std::vector<double> ones(n - 1, 1.0);
    for (int j = 0; j < n; ++j) {
      double direct = 0;
      for (int i = 0; i < n; ++i) {
        double prod = p(i, j);
        for (int k = 0; k < n; ++k)
          if (k != i) prod *= 1 - p(k, j);
        direct += prod;
      }
      CHECK(qj_value(p, j, ones) == doctest::Approx(direct).epsilon(1e-12));
      CHECK(capacity_qj(p, j).value >= log_cpr(p, j) - 1e-7);
    }
  }
}
