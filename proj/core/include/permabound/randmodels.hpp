#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "permabound/matrix.hpp"
#include "permabound/rng.hpp"

namespace permabound {

inline constexpr int kExactPermanentSampleMaxN = 22;
inline constexpr int kEmdSampleMaxN = 20;

enum class Model { kBM, kHW };

std::string_view to_string(Model m);
/// "bm" or "hw" (case-insensitive). Throws DomainError otherwise.
Model parse_model(std::string_view name);

struct McEstimate {
  std::int64_t samples = 0;
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  bool log_domain = false;
  std::uint64_t seed = 0;
};

/// Pairing model: a uniform permutation of rn points, its rn x rn permutation
/// matrix cut into r^2 blocks of size n and the blocks summed.
Matrix sample_bm(int r, int n, Rng& rng);
/// Sum of r independent uniform n x n permutation matrices.
Matrix sample_hw(int r, int n, Rng& rng);
Matrix sample_model(Model model, int r, int n, Rng& rng);
/// BM(r, n) conditioned on being 0/1, by rejection. Throws
/// RejectionBudgetExceeded after max_rejects rejected draws.
Matrix sample_cbm(int r, int n, Rng& rng, long max_rejects = 1'000'000);

bool is_boolean(const Matrix& m);
/// True when m is a nonnegative integer matrix with all line sums r.
bool in_ri(const Matrix& m, int r);

// Estimators draw sample k from Rng::substream(seed, k), so results do not
// depend on `threads`. When `per_sample` is non-null it receives every value.

/// Mean of per(sample). Throws TooLarge for n > 22.
McEstimate estimate_expected_perm(Model model, int r, int n, std::int64_t samples, std::uint64_t seed,
                                  int threads = 1, std::vector<double>* per_sample = nullptr);
/// Fraction of samples that are 0/1 matrices.
McEstimate estimate_prob_boolean(Model model, int r, int n, std::int64_t samples, std::uint64_t seed,
                                 int threads = 1, std::vector<double>* per_sample = nullptr);
/// Mean of per_m(sample). Throws TooLarge for n > 20.
McEstimate estimate_emd(Model model, int r, int n, int m, std::int64_t samples, std::uint64_t seed,
                        int threads = 1, std::vector<double>* per_sample = nullptr);

McEstimate summarize_samples(const std::vector<double>& values, std::uint64_t seed, bool log_domain = false);

/// Every nonnegative integer matrix with line sums r, in lexicographic order of
/// the row-major entries (largest first). Throws CapExceeded past `cap` matrices.
std::vector<Matrix> enumerate_ri(int r, int n, std::size_t cap = 1'000'000);

enum class CorpusKind { kDense, kSparse };

/// Doubly stochastic test matrix: uniform (0,1] entries (dense) or a positively
/// weighted sum of n/2 + 1 random permutation matrices (sparse), Sinkhorn
/// scaled to 1e-13.
Matrix random_doubly_stochastic(int n, Rng& rng, CorpusKind kind = CorpusKind::kDense);

}  // namespace permabound
