#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace plume {

// 8-bit grayscale frame as read from disk, row-major.
struct RawFrame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(int j, int i) const {
        return pixels[static_cast<std::size_t>(j) * width + i];
    }
};

// Parses a binary PGM ("P5", maxval 255). Header tokens may be separated by
// whitespace and '#' comment lines. Throws DataError naming the byte offset
// on malformed magic, unsupported maxval, or truncated payload.
RawFrame parse_pgm(std::span<const std::uint8_t> bytes);

RawFrame load_pgm(const std::filesystem::path& path);

// Lexicographically sorted *.pgm files in a directory.
std::vector<std::filesystem::path> list_pgm_files(const std::filesystem::path& dir);

}  // namespace plume
