#pragma once

#include <cstdint>

#include "permabound/matrix.hpp"

namespace permabound::cli {

// Matrix `index` of each corpus depends only on (seed, index).

// Sinkhorn-scaled random matrices; every third one is a sparse weighted sum of
// permutations, the rest are dense.
Matrix corpus_random(std::uint64_t seed, std::uint64_t index, int n_min, int n_max);

// Doubly stochastic with diagonal at least 1/2, hence diagonally dominant.
Matrix corpus_dominant(std::uint64_t seed, std::uint64_t index, int n_min, int n_max);

// r^-1 times a uniformly drawn simple r-regular bipartite graph (n >= r).
Matrix corpus_regular(std::uint64_t seed, std::uint64_t index, int n_min, int n_max, int r);

int corpus_size(std::uint64_t seed, std::uint64_t index, int n_min, int n_max);

}  // namespace permabound::cli
