#include "plume/split.hpp"

#include <cmath>
#include <string>

#include "plume/errors.hpp"

namespace plume {

SplitWindows split_chronological(int nt, std::array<double, 3> fractions) {
    for (double f : fractions) {
        if (!(f > 0.0)) throw DataError("split fractions must be positive");
    }
    const double sum = fractions[0] + fractions[1] + fractions[2];
    if (std::abs(sum - 1.0) > 1e-9) throw DataError("split fractions must sum to 1");

    const int train_end = static_cast<int>(std::lround(fractions[0] * nt));
    const int val_end = static_cast<int>(std::lround((fractions[0] + fractions[1]) * nt));
    SplitWindows w{{0, train_end}, {train_end, val_end}, {val_end, nt}};
    const char* names[3] = {"train", "validation", "test"};
    const FrameWindow* wins[3] = {&w.train, &w.validation, &w.test};
    for (int q = 0; q < 3; ++q) {
        if (wins[q]->size() < 2) {
            throw DataError(std::string(names[q]) + " window has fewer than 2 frames (n_t = " +
                            std::to_string(nt) + ")");
        }
    }
    return w;
}

}  // namespace plume
