#include "plume/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "plume/errors.hpp"

namespace plume {

std::string fmt_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void CsvWriter::comment(std::string_view line) {
    buf_ << "# " << line << "\n";
}

void CsvWriter::header(std::span<const std::string> columns) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) buf_ << ',';
        buf_ << columns[c];
    }
    buf_ << '\n';
}

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
    bool first = true;
    for (auto c : columns) {
        if (!first) buf_ << ',';
        buf_ << c;
        first = false;
    }
    buf_ << '\n';
}

CsvWriter& CsvWriter::cell(std::string_view s) {
    if (row_open_) buf_ << ',';
    buf_ << s;
    row_open_ = true;
    return *this;
}

CsvWriter& CsvWriter::cell(double x) { return cell(std::string_view(fmt_double(x))); }

CsvWriter& CsvWriter::cell(long long x) { return cell(std::string_view(std::to_string(x))); }

void CsvWriter::end_row() {
    buf_ << '\n';
    row_open_ = false;
}

void CsvWriter::row(std::span<const double> values) {
    for (double v : values) cell(v);
    end_row();
}

void CsvWriter::write(const std::filesystem::path& path) const {
    write_file_atomic(path, buf_.str());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw DataError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace plume
