#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "gts/frft.hpp"
#include "gts/model.hpp"

namespace gts {

// splitmix64 (Vigna): state += 0x9E3779B97F4A7C15, then the
// 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB xor-shift-multiply finalizer.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// xoshiro256** 1.0. The four state words are consecutive splitmix64 outputs
// of the seed.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) noexcept;
    std::uint64_t next() noexcept;
    // ((next() >> 11) + 0.5) * 2^-53, strictly inside (0, 1).
    double uniform() noexcept;

private:
    std::array<std::uint64_t, 4> s_{};
};

// Draws are produced in chunks of this many; chunk c uses a generator seeded
// with chunk_seed(seed, c).
inline constexpr std::size_t kSampleChunk = 65536;
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) noexcept;

struct SampleConfig {
    std::size_t n = 1;
    std::uint64_t seed = 0;
    std::optional<GridSpec> grid;  // default: covering_grid(p)
};

// Inverse-CDF sampling on the repaired CDF field.
std::vector<double> sample_gts(const GtsParams& p, const SampleConfig& cfg);

// Inverse of a CDF field at u in (0, 1): bracket by bisection over the nodes,
// then solve the local cubic for u inside that cell.
double inverse_cdf(const Field& cdf, double u);

}  // namespace gts
