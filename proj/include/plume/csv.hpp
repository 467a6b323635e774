#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace plume {

// Formats a double with enough digits to be stable across runs ("%.12g",
// plain decimal point, never locale-dependent).
std::string fmt_double(double x);

// FNV-1a 64-bit, used to fingerprint configurations in output headers.
std::uint64_t fnv1a64(std::string_view s);

std::string hash_hex(std::uint64_t h);

// Comma-delimited writer: '#'-prefixed metadata lines, one header row, then
// data rows. Content is buffered and written atomically (temp file + rename).
class CsvWriter {
public:
    void comment(std::string_view line);
    void header(std::span<const std::string> columns);
    void header(std::initializer_list<std::string_view> columns);

    CsvWriter& cell(std::string_view s);
    CsvWriter& cell(double x);
    CsvWriter& cell(int x) { return cell(static_cast<long long>(x)); }
    CsvWriter& cell(long long x);
    void end_row();

    void row(std::span<const double> values);

    std::string str() const { return buf_.str(); }
    void write(const std::filesystem::path& path) const;

private:
    std::ostringstream buf_;
    bool row_open_ = false;
};

// Writes `content` to `path` via a temporary file in the same directory.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace plume
