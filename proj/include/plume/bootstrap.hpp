#pragma once

#include <cstdint>
#include <vector>

namespace plume {

struct BootstrapIndices {
    std::vector<int> indices;      // length n, values in [0, n)
    std::vector<int> block_starts; // positions in `indices` where a block begins
};

// Chronological block bootstrap: contiguous blocks of `block_length` frames
// with uniformly drawn start positions, concatenated to length n and
// truncated. Deterministic given `seed`.
BootstrapIndices block_bootstrap_indices(int n, int block_length, std::uint64_t seed);

// round(sqrt(n)), the customary block length.
int default_block_length(int n);

}  // namespace plume
