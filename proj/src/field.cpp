#include "plume/field.hpp"

#include <cmath>
#include <string>

namespace plume {

void Grid::validate() const {
    if (nx < 4 || ny < 4) {
        throw DataError("grid too small: nx,ny must be >= 4, got " + std::to_string(nx) + "x" +
                        std::to_string(ny));
    }
    if (nt < 2) {
        throw DataError("grid needs at least 2 frames, got " + std::to_string(nt));
    }
    if (!(dx > 0.0) || !(dy > 0.0) || !(dt > 0.0)) {
        throw DataError("grid spacings must be positive");
    }
}

void FieldSeries::validate() const {
    grid_.validate();
    for (std::size_t q = 0; q < data_.size(); ++q) {
        const double u = data_[q];
        if (!std::isfinite(u)) {
            throw DataError("field contains non-finite value at flat index " + std::to_string(q));
        }
        if (normalized_ && (u < 0.0 || u > 1.0)) {
            throw DataError("field flagged normalized but value " + std::to_string(u) +
                            " is outside [0,1]");
        }
    }
}

}  // namespace plume
