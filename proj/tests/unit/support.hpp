#pragma once

#include <cmath>
#include <vector>

#include "hdl/group.hpp"
#include "hdl/rng.hpp"

namespace hdl::test {

// Points with coordinates normal(0, scale), reproducible from the seed.
inline std::vector<GroupPoint> random_points(int n, std::size_t count, std::uint64_t seed, double scale = 1.0) {
    const NormalStream s(RngSpec{seed, 99});
    const auto width = 2 * static_cast<std::size_t>(n) + 1;
    std::vector<double> c(width + 1);
    std::vector<GroupPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        s.fill(i * (width + 1) / 2, c);
        for (auto& v : c) v *= scale;
        out.push_back(GroupPoint::from_coords(std::span<const double>(c.data(), width)));
    }
    return out;
}

inline double max_abs_diff(const GroupPoint& a, const GroupPoint& b) {
    double m = std::abs(a.vertical - b.vertical);
    for (std::size_t i = 0; i < a.horizontal.size(); ++i) m = std::max(m, std::abs(a.horizontal[i] - b.horizontal[i]));
    return m;
}

}  // namespace hdl::test
