#include "gts/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gts/errors.hpp"

namespace gts {
namespace {

std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) noexcept {
    for (auto& w : s_) w = splitmix64(seed);
}

std::uint64_t Xoshiro256::next() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256::uniform() noexcept {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) noexcept {
    std::uint64_t s = seed ^ (chunk * 0xD1B54A32D192ED03ULL);
    return splitmix64(s);
}

double inverse_cdf(const Field& cdf, double u) {
    const auto& F = cdf.values;
    const GridSpec& g = cdf.grid;
    const std::size_t n = F.size();
    if (!(u > 0.0 && u < 1.0)) throw DomainError("inverse_cdf: u must lie in (0, 1)");
    // Interpolation needs two nodes of margin on each side.
    std::size_t lo = 2;
    std::size_t hi = n - 3;
    if (u <= F[lo]) return g.x(lo);
    if (u >= F[hi]) return g.x(hi);
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        (F[mid] <= u ? lo : hi) = mid;
    }
    // F[lo] <= u < F[hi]; refine on the cubic through the surrounding nodes.
    double a = g.x(lo);
    double b = g.x(hi);
    while (b - a > 1e-12 * g.dx) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;  // far from the origin the ulp exceeds the tolerance
        (make_stencil(g, mid).apply(F) <= u ? a : b) = mid;
    }
    const double x = 0.5 * (a + b);
    return x;
}

std::vector<double> sample_gts(const GtsParams& p, const SampleConfig& cfg) {
    p.validate();
    if (cfg.n < 1) throw InputError("sample_gts: n must be >= 1");
    const GridSpec g = cfg.grid ? *cfg.grid : covering_grid(p);
    const Field F = cdf_field(p, g);
    if (F.values.front() > 1e-6 || F.values.back() < 1.0 - 1e-6) {
        std::ostringstream os;
        os << "sample_gts: grid [" << g.x_min() << ", " << g.x_max() << "] misses probability mass (F = "
           << F.values.front() << " .. " << F.values.back() << ")";
        throw GridError(os.str());
    }
    std::vector<double> out(cfg.n);
    for (std::size_t c0 = 0; c0 < cfg.n; c0 += kSampleChunk) {
        Xoshiro256 rng(chunk_seed(cfg.seed, c0 / kSampleChunk));
        const std::size_t c1 = std::min(cfg.n, c0 + kSampleChunk);
        for (std::size_t i = c0; i < c1; ++i) out[i] = inverse_cdf(F, rng.uniform());
    }
    return out;
}

}  // namespace gts
