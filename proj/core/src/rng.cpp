#include "hdl/rng.hpp"

#include <cmath>
#include <numbers>

namespace hdl {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

// Bit 63 of the high counter word separates normal blocks from uniform blocks.
constexpr std::uint32_t kUniformTag = 0x80000000u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

PhiloxCounter counter_for(const RngSpec& spec, std::uint64_t block, std::uint32_t tag) noexcept {
    return {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32) ^ tag,
            static_cast<std::uint32_t>(spec.stream), static_cast<std::uint32_t>(spec.stream >> 32)};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

RngSpec RngSpec::substream(std::uint64_t i) const noexcept {
    return {seed, splitmix64(stream ^ splitmix64(i + 0x632BE59BD9B4E019ull))};
}

NormalStream::NormalStream(RngSpec spec) noexcept
    : spec_(spec),
      key_{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32)} {}

std::array<double, 2> NormalStream::block(std::uint64_t b) const noexcept {
    const auto r = philox4x32_10(counter_for(spec_, b, 0u), key_);
    const double u1 = to_open_unit(r[0], r[1]);
    const double u2 = to_open_unit(r[2], r[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

std::array<double, 2> NormalStream::uniforms(std::uint64_t b) const noexcept {
    const auto r = philox4x32_10(counter_for(spec_, b, kUniformTag), key_);
    return {to_open_unit(r[0], r[1]), to_open_unit(r[2], r[3])};
}

void NormalStream::fill(std::uint64_t first_block, std::span<double> out) const noexcept {
    std::size_t i = 0;
    for (std::uint64_t b = first_block; i < out.size(); ++b) {
        const auto pair = block(b);
        out[i++] = pair[0];
        if (i < out.size()) out[i++] = pair[1];
    }
}

}  // namespace hdl
