#include "plume/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <string>

#include "plume/errors.hpp"

namespace plume {

namespace {

[[noreturn]] void fail(std::size_t offset, const std::string& what) {
    throw DataError("pgm parse error at byte " + std::to_string(offset) + ": " + what);
}

// Skips whitespace and '#' comments; returns the offset of the next token byte.
std::size_t skip_separators(std::span<const std::uint8_t> b, std::size_t pos) {
    while (pos < b.size()) {
        if (std::isspace(b[pos])) {
            ++pos;
        } else if (b[pos] == '#') {
            while (pos < b.size() && b[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    return pos;
}

long parse_int(std::span<const std::uint8_t> b, std::size_t& pos, const char* name) {
    pos = skip_separators(b, pos);
    if (pos >= b.size()) fail(b.size(), std::string("missing ") + name);
    if (!std::isdigit(b[pos])) fail(pos, std::string("expected digit for ") + name);
    long value = 0;
    while (pos < b.size() && std::isdigit(b[pos])) {
        value = value * 10 + (b[pos] - '0');
        if (value > 1'000'000'000L) fail(pos, std::string(name) + " out of range");
        ++pos;
    }
    return value;
}

}  // namespace

RawFrame parse_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        fail(0, "bad magic, expected \"P5\"");
    }
    std::size_t pos = 2;
    const long width = parse_int(bytes, pos, "width");
    const long height = parse_int(bytes, pos, "height");
    const std::size_t maxval_at = skip_separators(bytes, pos);
    const long maxval = parse_int(bytes, pos, "maxval");
    if (width <= 0 || height <= 0) fail(pos, "non-positive dimensions");
    if (maxval != 255) fail(maxval_at, "unsupported maxval " + std::to_string(maxval) +
                                           ", only 8-bit (255) frames are handled");
    // exactly one whitespace byte separates the header from the payload
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) fail(pos, "missing payload separator");
    ++pos;

    const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() - pos < need) {
        fail(bytes.size(), "truncated payload, expected " + std::to_string(need) +
                               " pixel bytes, got " + std::to_string(bytes.size() - pos));
    }
    RawFrame frame;
    frame.width = static_cast<int>(width);
    frame.height = static_cast<int>(height);
    frame.pixels.assign(bytes.begin() + pos, bytes.begin() + pos + need);
    return frame;
}

RawFrame load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return parse_pgm(bytes);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

std::vector<std::filesystem::path> list_pgm_files(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw DataError("not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace plume
