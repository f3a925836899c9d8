#include "permabound/randmodels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "permabound/error.hpp"
#include "permabound/exactperm.hpp"
#include "permabound/parallel.hpp"

namespace permabound {

namespace {

void require_rn(int r, int n) {
  if (r < 1 || n < 1) throw Error(ErrorCode::kDomainError, "need r >= 1 and n >= 1");
}

void require_samples(std::int64_t samples) {
  if (samples < 1) throw Error(ErrorCode::kDomainError, "need at least one sample");
}

template <typename Fn>
std::vector<double> run_samples(std::int64_t samples, std::uint64_t seed, int threads, Fn&& fn) {
  std::vector<double> values(static_cast<std::size_t>(samples));
  parallel_for(values.size(), threads, [&](std::size_t k) {
    Rng rng = Rng::substream(seed, k);
    values[k] = fn(rng);
  });
  return values;
}

McEstimate finish(std::vector<double> values, std::uint64_t seed, std::vector<double>* per_sample) {
  McEstimate e = summarize_samples(values, seed);
  if (per_sample) *per_sample = std::move(values);
  return e;
}

void enumerate_rows(int r, int n, int row, std::vector<int>& col_left, std::vector<int>& entries,
                    std::vector<Matrix>& out, std::size_t cap);

void enumerate_cells(int r, int n, int row, int col, int row_left, std::vector<int>& col_left,
                     std::vector<int>& entries, std::vector<Matrix>& out, std::size_t cap) {
  if (col == n) {
    if (row_left == 0) enumerate_rows(r, n, row + 1, col_left, entries, out, cap);
    return;
  }
  // Capacity of the columns after this one bounds how little this cell can take.
  int rest = 0;
  for (int c = col + 1; c < n; ++c) rest += col_left[c];
  const int hi = std::min(row_left, col_left[col]);
  const int lo = std::max(0, row_left - rest);
  for (int v = hi; v >= lo; --v) {
    entries[static_cast<std::size_t>(row) * n + col] = v;
    col_left[col] -= v;
    enumerate_cells(r, n, row, col + 1, row_left - v, col_left, entries, out, cap);
    col_left[col] += v;
  }
  entries[static_cast<std::size_t>(row) * n + col] = 0;
}

void enumerate_rows(int r, int n, int row, std::vector<int>& col_left, std::vector<int>& entries,
                    std::vector<Matrix>& out, std::size_t cap) {
  if (row == n) {
    if (out.size() >= cap) {
      throw Error(ErrorCode::kCapExceeded, "RI(" + std::to_string(r) + "," + std::to_string(n) + ") has more than " +
                                               std::to_string(cap) + " matrices");
    }
    Matrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = entries[static_cast<std::size_t>(i) * n + j];
    out.push_back(std::move(m));
    return;
  }
  enumerate_cells(r, n, row, 0, r, col_left, entries, out, cap);
}

}  // namespace

std::string_view to_string(Model m) { return m == Model::kBM ? "bm" : "hw"; }

Model parse_model(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "bm") return Model::kBM;
  if (lower == "hw") return Model::kHW;
  throw Error(ErrorCode::kDomainError, "unknown model '" + std::string(name) + "' (expected bm or hw)");
}

Matrix sample_bm(int r, int n, Rng& rng) {
  require_rn(r, n);
  std::vector<int> pi(static_cast<std::size_t>(r) * n);
  std::iota(pi.begin(), pi.end(), 0);
  rng.shuffle(std::span<int>(pi));
  Matrix m(n);
  for (std::size_t a = 0; a < pi.size(); ++a) m(static_cast<int>(a % n), pi[a] % n) += 1.0;
  return m;
}

Matrix sample_hw(int r, int n, Rng& rng) {
  require_rn(r, n);
  Matrix m(n);
  std::vector<int> sigma(n);
  for (int s = 0; s < r; ++s) {
    std::iota(sigma.begin(), sigma.end(), 0);
    rng.shuffle(std::span<int>(sigma));
    for (int i = 0; i < n; ++i) m(i, sigma[i]) += 1.0;
  }
  return m;
}

Matrix sample_model(Model model, int r, int n, Rng& rng) {
  return model == Model::kBM ? sample_bm(r, n, rng) : sample_hw(r, n, rng);
}

Matrix sample_cbm(int r, int n, Rng& rng, long max_rejects) {
  require_rn(r, n);
  for (long rejects = 0;; ++rejects) {
    Matrix m = sample_bm(r, n, rng);
    if (is_boolean(m)) return m;
    if (rejects + 1 >= max_rejects) {
      throw Error(ErrorCode::kRejectionBudgetExceeded,
                  "no boolean BM(" + std::to_string(r) + "," + std::to_string(n) + ") sample after " +
                      std::to_string(max_rejects) + " draws");
    }
  }
}

bool is_boolean(const Matrix& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](double v) { return v == 0.0 || v == 1.0; });
}

bool in_ri(const Matrix& m, int r) {
  for (double v : m.data())
    if (v < 0.0 || v != std::floor(v)) return false;
  for (int i = 0; i < m.n(); ++i)
    if (m.row_sum(i) != r || m.col_sum(i) != r) return false;
  return true;
}

McEstimate summarize_samples(const std::vector<double>& values, std::uint64_t seed, bool log_domain) {
  McEstimate e;
  e.samples = static_cast<std::int64_t>(values.size());
  e.seed = seed;
  e.log_domain = log_domain;
  if (values.empty()) return e;
  long double sum = 0.0L;
  for (double v : values) sum += v;
  const long double mean = sum / values.size();
  long double ss = 0.0L;
  for (double v : values) ss += (v - mean) * (v - mean);
  e.mean = static_cast<double>(mean);
  if (values.size() > 1) {
    const long double var = ss / (values.size() - 1);
    e.std_error = static_cast<double>(std::sqrt(var / values.size()));
  }
  return e;
}

McEstimate estimate_expected_perm(Model model, int r, int n, std::int64_t samples, std::uint64_t seed, int threads,
                                  std::vector<double>* per_sample) {
  require_rn(r, n);
  require_samples(samples);
  if (n > kExactPermanentSampleMaxN) {
    throw Error(ErrorCode::kTooLarge, "expected permanent needs n <= " + std::to_string(kExactPermanentSampleMaxN));
  }
  return finish(run_samples(samples, seed, threads,
                            [&](Rng& rng) { return permanent_ryser(sample_model(model, r, n, rng)).value(); }),
                seed, per_sample);
}

McEstimate estimate_prob_boolean(Model model, int r, int n, std::int64_t samples, std::uint64_t seed, int threads,
                                 std::vector<double>* per_sample) {
  require_rn(r, n);
  require_samples(samples);
  return finish(run_samples(samples, seed, threads,
                            [&](Rng& rng) { return is_boolean(sample_model(model, r, n, rng)) ? 1.0 : 0.0; }),
                seed, per_sample);
}

McEstimate estimate_emd(Model model, int r, int n, int m, std::int64_t samples, std::uint64_t seed, int threads,
                        std::vector<double>* per_sample) {
  require_rn(r, n);
  require_samples(samples);
  if (n > kEmdSampleMaxN) {
    throw Error(ErrorCode::kTooLarge, "EMD estimation needs n <= " + std::to_string(kEmdSampleMaxN));
  }
  if (m < 0 || m > n) throw Error(ErrorCode::kDomainError, "need 0 <= m <= n");
  return finish(run_samples(samples, seed, threads,
                            [&](Rng& rng) { return subperm_sum_dp(sample_model(model, r, n, rng), m); }),
                seed, per_sample);
}

std::vector<Matrix> enumerate_ri(int r, int n, std::size_t cap) {
  require_rn(r, n);
  std::vector<Matrix> out;
  std::vector<int> col_left(n, r), entries(static_cast<std::size_t>(n) * n, 0);
  enumerate_rows(r, n, 0, col_left, entries, out, cap);
  return out;
}

Matrix random_doubly_stochastic(int n, Rng& rng, CorpusKind kind) {
  if (n < 1) throw Error(ErrorCode::kBadDimensions, "need n >= 1");
  Matrix m(n);
  if (kind == CorpusKind::kDense) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.uniform_open0();
  } else {
    std::vector<int> sigma(n);
    for (int s = 0; s < n / 2 + 1; ++s) {
      std::iota(sigma.begin(), sigma.end(), 0);
      rng.shuffle(std::span<int>(sigma));
      const double w = rng.uniform_open0();
      for (int i = 0; i < n; ++i) m(i, sigma[i]) += w;
    }
  }
  return sinkhorn_scale(m, 1e-13, 1'000'000).scaled;
}

}  // namespace permabound
