#include "plume/bootstrap.hpp"

#include <cmath>
#include <random>
#include <string>

#include "plume/errors.hpp"

namespace plume {

int default_block_length(int n) {
    return static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
}

BootstrapIndices block_bootstrap_indices(int n, int block_length, std::uint64_t seed) {
    if (n < 1) throw DataError("bootstrap needs at least one frame");
    if (block_length < 1 || block_length > n) {
        throw DataError("block_length must be in [1, " + std::to_string(n) + "], got " +
                        std::to_string(block_length));
    }
    std::mt19937_64 rng(seed);
    const std::uint64_t starts = static_cast<std::uint64_t>(n - block_length) + 1;

    BootstrapIndices out;
    out.indices.reserve(n);
    while (static_cast<int>(out.indices.size()) < n) {
        out.block_starts.push_back(static_cast<int>(out.indices.size()));
        const int s = static_cast<int>(rng() % starts);
        for (int q = 0; q < block_length && static_cast<int>(out.indices.size()) < n; ++q) {
            out.indices.push_back(s + q);
        }
    }
    return out;
}

}  // namespace plume
