#include <cmath>
#include <random>

#include "oracles.hpp"
#include "permabound/exactperm.hpp"
#include "test_util.hpp"

using namespace permabound;

TEST_CASE("permanent_ryser small cases") {
  CHECK(permanent_ryser(Matrix::identity(4)).log() == doctest::Approx(0.0));
  CHECK(permanent_ryser(Matrix::constant(3, 1.0 / 3.0)).value() == doctest::Approx(2.0 / 9.0));
  std::mt19937_64 gen(10);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = oracle::random_matrix(gen, 2);
    CHECK(permanent_ryser(m).value() == doctest::Approx(m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0)).epsilon(1e-14));
  }
  CHECK(permanent_ryser(Matrix::from_rows({{1, 1}, {0, 0}})).is_zero);
  CHECK(permanent_ryser(Matrix(1, 3.0)).value() == doctest::Approx(3.0));
}

TEST_CASE("permanent_brute small cases") {
  CHECK(permanent_brute(Matrix::identity(3)) == 1.0);
  CHECK(permanent_brute(Matrix::constant(2, 0.5)) == doctest::Approx(0.5));
}

TEST_CASE("size limits") {
  CHECK_ERROR_CODE(permanent_ryser(Matrix(kRyserMaxN + 1, 1.0)), ErrorCode::kTooLarge);
  CHECK_ERROR_CODE(permanent_brute(Matrix(kBruteMaxN + 1, 1.0)), ErrorCode::kTooLarge);
  CHECK_ERROR_CODE(subperm_sum_dp(Matrix(kSubpermDpMaxN + 1, 1.0), 1), ErrorCode::kTooLarge);
  CHECK_ERROR_CODE(subperm_brute(Matrix(kSubpermBruteMaxN + 1, 1.0), 1), ErrorCode::kTooLarge);
}

TEST_CASE("ryser and brute agree with the enumeration oracle") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 7;
    const Matrix m = oracle::random_matrix(gen, n, trial % 3 == 0 ? 0.5 : 0.0);
    const long double ref = oracle::permanent(m);
    const LogValue ry = permanent_ryser(m);
    if (ref == 0.0L) {
      CHECK(ry.is_zero);
      CHECK(permanent_brute(m) == 0.0);
      continue;
    }
    CHECK(oracle::rel_err(ry.value(), ref) < 1e-10);
    CHECK(oracle::rel_err(permanent_brute(m), ref) < 1e-12);
  }
}

TEST_CASE("ryser is deterministic across thread counts") {
  std::mt19937_64 gen(12);
  for (int n : {8, 13, 17}) {
    const Matrix m = oracle::random_matrix(gen, n);
    const double a = permanent_ryser(m, 1).log();
    CHECK(permanent_ryser(m, 3).log() == a);
    CHECK(permanent_ryser(m, 8).log() == a);
  }
}

TEST_CASE("ryser in log domain survives tiny entries") {
  // 25x25 scaled by 1e-20 would underflow a linear-domain permanent.
  const Matrix m = Matrix::constant(25, 1e-20);
  const double expected = std::lgamma(26.0) + 25 * std::log(1e-20);
  CHECK(permanent_ryser(m, 4).log() == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("subperm examples") {
  std::mt19937_64 gen(13);
  const Matrix any = oracle::random_matrix(gen, 4);
  CHECK(subperm_sum_dp(any, 0) == 1.0);
  CHECK(subperm_sum_dp(Matrix::identity(3), 2) == doctest::Approx(3.0));
  CHECK(subperm_sum_dp(Matrix::constant(3, 1.0), 2) == doctest::Approx(18.0));
  CHECK(subperm_brute(Matrix::identity(2), 1) == doctest::Approx(2.0));
  CHECK(subperm_brute(Matrix::constant(2, 1.0), 1) == doctest::Approx(4.0));
  CHECK(perm_via_k_identity(Matrix::identity(3), 2, 1.0, 1.0) == doctest::Approx(3.0));
  CHECK(perm_via_k_identity(Matrix::constant(2, 1.0), 1, 0.5, 0.5) == doctest::Approx(4.0));
}

TEST_CASE("subperm_sum_dp, subperm_brute and the K identity agree") {
  std::mt19937_64 gen(14);
  std::uniform_real_distribution<double> scale(0.2, 2.0);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + trial % 7;
    const Matrix m = oracle::random_matrix(gen, n, trial % 4 == 0 ? 0.4 : 0.0);
    for (int k = 0; k <= n; ++k) {
      const long double ref = oracle::subperm(m, k);
      const double dp = subperm_sum_dp(m, k);
      CHECK(oracle::rel_err(dp, ref) < 1e-10);
      CHECK(oracle::rel_err(subperm_brute(m, k), ref) < 1e-10);
      if (k >= 1) CHECK(oracle::rel_err(perm_via_k_identity(m, k, scale(gen), scale(gen)), ref) < 1e-8);
    }
  }
}

TEST_CASE("subperm_vector invariants") {
  std::mt19937_64 gen(15);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 9;
    const Matrix m = oracle::random_matrix(gen, n, 0.2);
    const SubpermVector v = subperm_vector(m);
    REQUIRE(v.values.size() == static_cast<std::size_t>(n + 1));
    CHECK(v.values[0] == 1.0);
    CHECK(oracle::rel_err(v.values[1], m.entry_sum()) < 1e-12);
    const LogValue per = permanent_ryser(m);
    if (per.is_zero) {
      CHECK(v.values[n] == doctest::Approx(0.0));
    } else {
      CHECK(oracle::rel_err(v.values[n], per.value()) < 1e-10);
    }
  }
}

TEST_CASE("permanent is linear in each row") {
  std::mt19937_64 gen(16);
  std::uniform_real_distribution<double> c(0.1, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 8;
    Matrix m = oracle::random_matrix(gen, n);
    const double before = permanent_ryser(m).log();
    const int row = trial % n;
    const double factor = c(gen);
    for (int j = 0; j < n; ++j) m(row, j) *= factor;
    CHECK(permanent_ryser(m).log() == doctest::Approx(before + std::log(factor)).epsilon(1e-12));
  }
}

TEST_CASE("permanent_aJbI closed form") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.01, 2.0);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const double a = u(gen), b = trial == 0 ? 0.0 : u(gen);
      Matrix lit = Matrix::constant(n, a);
      for (int i = 0; i < n; ++i) lit(i, i) += b;
      CHECK(oracle::rel_err(permanent_aJbI(n, a, b).value(), oracle::permanent(lit)) < 1e-10);
    }
  }
  CHECK(permanent_aJbI(7, 0.3, 0.0).log() == doctest::Approx(std::lgamma(8.0) + 7 * std::log(0.3)));
  CHECK(permanent_aJbI(5, 1e-12, 1.0).log() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::isfinite(permanent_aJbI(2000, 1.0 / 3998.0, 0.5).log()));
}

TEST_CASE("log_perm_kn closed form") {
  CHECK(log_perm_kn(2).log() == doctest::Approx(std::log(0.25)));
  CHECK(log_perm_kn(4).log() == doctest::Approx(std::log(3.0 / 128.0)));
  for (int n = 2; n <= 12; n += 2) {
    CHECK(log_perm_kn(n).log() == doctest::Approx(permanent_ryser(k_counterexample(n)).log()).epsilon(1e-10));
  }
  CHECK_ERROR_CODE(log_perm_kn(5), ErrorCode::kOddN);
}
