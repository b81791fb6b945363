#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace wnc {

/// Uniform grid t_0 = 0 < ... < t_M = T.
struct TimeGrid {
    double horizon = 1.0;       // T
    std::size_t segments = 64;  // M

    TimeGrid() = default;
    TimeGrid(double T, std::size_t M) : horizon(T), segments(M) {
        if (!(T > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be positive");
        if (M < 2) throw std::invalid_argument("TimeGrid: need at least 2 segments");
    }

    double dt() const { return horizon / double(segments); }
    std::size_t points() const { return segments + 1; }
    double time(std::size_t i) const { return horizon * double(i) / double(segments); }

    /// Nearest grid index for a time in [0, T]; throws if t is off-grid by
    /// more than a relative sliver.
    std::size_t index(double t) const {
        double x = t / dt();
        auto i = (std::size_t)std::llround(x);
        if (i > segments || std::abs(x - double(i)) > 1e-9 * double(segments))
            throw std::invalid_argument("TimeGrid::index: t is not a grid point");
        return i;
    }

    bool operator==(const TimeGrid& o) const {
        return horizon == o.horizon && segments == o.segments;
    }
};

}  // namespace wnc
