#pragma once

#include <filesystem>

#include "plume/field.hpp"

namespace plume {

// UFLD binary container for processed field tensors, little-endian:
//   magic "UFLD1" (5 bytes), version byte 0x01,
//   u32 n_y, n_x, n_t, f64 dx, dy, dt,
//   f32 payload of n_y*n_x*n_t values, frame-major (k outer), row-major
//   within a frame (j, then i).
void write_ufld(const std::filesystem::path& path, const FieldSeries& field);

FieldSeries read_ufld(const std::filesystem::path& path);

}  // namespace plume
