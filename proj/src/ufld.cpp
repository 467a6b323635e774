#include "plume/ufld.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

#include "plume/csv.hpp"
#include "plume/errors.hpp"

namespace plume {

namespace {

constexpr char kMagic[5] = {'U', 'F', 'L', 'D', '1'};
constexpr std::uint8_t kVersion = 0x01;
constexpr std::size_t kHeaderBytes = 5 + 1 + 3 * 4 + 3 * 8;
// generous sanity cap on the tensor size (payload would be 64 GiB)
constexpr std::uint64_t kMaxPoints = 1ull << 34;

template <typename T>
void put(std::string& out, T value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out.append(buf, sizeof(T));
}

template <typename T>
T get(const std::vector<char>& in, std::size_t& pos) {
    T value;
    std::memcpy(&value, in.data() + pos, sizeof(T));
    pos += sizeof(T);
    return value;
}

}  // namespace

void write_ufld(const std::filesystem::path& path, const FieldSeries& field) {
    const Grid& g = field.grid();
    g.validate();
    std::string out;
    out.reserve(kHeaderBytes + field.data().size() * sizeof(float));
    out.append(kMagic, sizeof(kMagic));
    out.push_back(static_cast<char>(kVersion));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.ny));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.nx));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.nt));
    put<double>(out, g.dx);
    put<double>(out, g.dy);
    put<double>(out, g.dt);
    for (double u : field.data()) put<float>(out, static_cast<float>(u));
    write_file_atomic(path, out);
}

FieldSeries read_ufld(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());

    if (bytes.size() < kHeaderBytes) throw DataError(path.string() + ": truncated header");
    if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
        throw DataError(path.string() + ": bad magic, not a UFLD file");
    }
    if (static_cast<std::uint8_t>(bytes[5]) != kVersion) {
        throw DataError(path.string() + ": unsupported UFLD version");
    }
    std::size_t pos = 6;
    const auto ny = get<std::uint32_t>(bytes, pos);
    const auto nx = get<std::uint32_t>(bytes, pos);
    const auto nt = get<std::uint32_t>(bytes, pos);
    Grid g;
    g.ny = static_cast<int>(ny);
    g.nx = static_cast<int>(nx);
    g.nt = static_cast<int>(nt);
    g.dx = get<double>(bytes, pos);
    g.dy = get<double>(bytes, pos);
    g.dt = get<double>(bytes, pos);
    const std::uint64_t points = static_cast<std::uint64_t>(ny) * nx * nt;
    if (ny > std::numeric_limits<int>::max() || nx > std::numeric_limits<int>::max() ||
        nt > std::numeric_limits<int>::max() || points > kMaxPoints) {
        throw DataError(path.string() + ": dimension overflow in header");
    }
    g.validate();
    if (bytes.size() - pos < points * sizeof(float)) {
        throw DataError(path.string() + ": truncated payload, header declares " +
                        std::to_string(points) + " values");
    }

    FieldSeries field(g);
    auto data = field.data();
    bool in_unit_range = true;
    for (std::uint64_t q = 0; q < points; ++q) {
        float v;
        std::memcpy(&v, bytes.data() + pos + q * sizeof(float), sizeof(float));
        data[q] = v;
        in_unit_range = in_unit_range && v >= 0.0f && v <= 1.0f;
    }
    field.set_normalized(in_unit_range);
    return field;
}

}  // namespace plume
