#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace hdl {

/// Identifies one reproducible random stream. Every Gaussian variate is a pure function of
/// (seed, stream, counter), so splitting work across threads never changes results.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    /// Stream for the i-th independent sample drawn under this spec.
    [[nodiscard]] RngSpec substream(std::uint64_t i) const noexcept;

    friend bool operator==(const RngSpec&, const RngSpec&) = default;
};

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., Random123).
[[nodiscard]] PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept;

/// SplitMix64 finalizer, used to decorrelate stream ids.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Counter-based standard normals. Block b of a stream yields two variates by Box-Muller
/// from one Philox call.
class NormalStream {
public:
    explicit NormalStream(RngSpec spec) noexcept;

    /// Fill `out` (even or odd length) with the normals of blocks starting at `first_block`.
    void fill(std::uint64_t first_block, std::span<double> out) const noexcept;
    [[nodiscard]] std::array<double, 2> block(std::uint64_t b) const noexcept;
    /// Two uniform variates in (0, 1) per block, from a counter range disjoint from the normals.
    [[nodiscard]] std::array<double, 2> uniforms(std::uint64_t b) const noexcept;

    [[nodiscard]] const RngSpec& spec() const noexcept { return spec_; }

private:
    RngSpec spec_;
    PhiloxKey key_;
};

}  // namespace hdl
