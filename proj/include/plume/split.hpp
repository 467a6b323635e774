#pragma once

#include <array>

#include "plume/field.hpp"

namespace plume {

struct SplitWindows {
    FrameWindow train;
    FrameWindow validation;
    FrameWindow test;
};

// Contiguous chronological train/validation/test windows covering [0, nt).
// Boundaries are round(f_tr*nt) and round((f_tr+f_val)*nt); every window must
// hold at least 2 frames.
SplitWindows split_chronological(int nt, std::array<double, 3> fractions = {0.60, 0.20, 0.20});

}  // namespace plume
