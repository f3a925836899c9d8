#include "permabound/cli/corpus.hpp"

#include "permabound/randmodels.hpp"

namespace permabound::cli {

namespace {

// Corpora draw from disjoint stream families so the same index never shares
// random numbers across corpora.
constexpr std::uint64_t kRandomFamily = 0;
constexpr std::uint64_t kDominantFamily = 1ULL << 40;
constexpr std::uint64_t kRegularFamily = 2ULL << 40;

int draw_size(Rng& rng, int n_min, int n_max) {
  return n_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max - n_min + 1)));
}

}  // namespace

int corpus_size(std::uint64_t seed, std::uint64_t index, int n_min, int n_max) {
  Rng rng = Rng::substream(seed, kRandomFamily + index);
  return draw_size(rng, n_min, n_max);
}

Matrix corpus_random(std::uint64_t seed, std::uint64_t index, int n_min, int n_max) {
  Rng rng = Rng::substream(seed, kRandomFamily + index);
  const int n = draw_size(rng, n_min, n_max);
  return random_doubly_stochastic(n, rng, index % 3 == 2 ? CorpusKind::kSparse : CorpusKind::kDense);
}

Matrix corpus_dominant(std::uint64_t seed, std::uint64_t index, int n_min, int n_max) {
  Rng rng = Rng::substream(seed, kDominantFamily + index);
  const int n = draw_size(rng, n_min, n_max);
  const Matrix base = random_doubly_stochastic(n, rng, index % 3 == 2 ? CorpusKind::kSparse : CorpusKind::kDense);
  const double alpha = 0.5 + 0.5 * rng.uniform01();
  Matrix p(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = (1.0 - alpha) * base(i, j) + (i == j ? alpha : 0.0);
  return p;
}

Matrix corpus_regular(std::uint64_t seed, std::uint64_t index, int n_min, int n_max, int r) {
  Rng rng = Rng::substream(seed, kRegularFamily + index);
  const int n = draw_size(rng, n_min, n_max);
  Matrix a = sample_cbm(r, n, rng);
  Matrix p(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = a(i, j) / r;
  return p;
}

}  // namespace permabound::cli
