#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "common.hpp"
#include "gts/errors.hpp"
#include "gts/sampler.hpp"

using namespace gts;
using testdata::kSpy;

TEST_CASE("splitmix64 reference sequence") {
    std::uint64_t s = 1234567;
    CHECK(splitmix64(s) == 6457827717110365317ULL);
    CHECK(splitmix64(s) == 3203168211198807973ULL);
    CHECK(splitmix64(s) == 9817491932198370423ULL);
}

TEST_CASE("xoshiro256** seeded from splitmix64") {
    // values from a straight transcription of the reference C code
    Xoshiro256 g(42);
    CHECK(g.next() == 1546998764402558742ULL);
    CHECK(g.next() == 6990951692964543102ULL);
    CHECK(g.next() == 12544586762248559009ULL);
    CHECK(g.next() == 17057574109182124193ULL);
    Xoshiro256 h(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = h.uniform();
        CHECK((u > 0.0 && u < 1.0));
    }
    CHECK(chunk_seed(5, 0) != chunk_seed(5, 1));
    CHECK(chunk_seed(5, 1) != chunk_seed(6, 1));
}

TEST_CASE("draws are reproducible and prefix-stable") {
    const auto a = sample_gts(kSpy, SampleConfig{1000, 99, std::nullopt});
    const auto b = sample_gts(kSpy, SampleConfig{1000, 99, std::nullopt});
    CHECK(a == b);
    const auto c = sample_gts(kSpy, SampleConfig{kSampleChunk + 500, 99, std::nullopt});
    CHECK(std::equal(a.begin(), a.end(), c.begin()));
    const auto d = sample_gts(kSpy, SampleConfig{1000, 100, std::nullopt});
    CHECK(a != d);
}

TEST_CASE("sample mean agrees with the first cumulant") {
    const std::size_t n = 100000;
    const auto y = sample_gts(kSpy, SampleConfig{n, 2024, std::nullopt});
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    CHECK(std::abs(mean - cumulant(kSpy, 1)) < 4.0 * std::sqrt(cumulant(kSpy, 2) / static_cast<double>(n)));
    double var = 0.0;
    for (double v : y) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    CHECK(var == doctest::Approx(cumulant(kSpy, 2)).epsilon(0.05));
}

TEST_CASE("inverse cdf") {
    const GtsParams sym{0.0, 0.3, 0.3, 0.8, 0.8, 1.2, 1.2};
    const auto g = covering_grid(sym);
    const auto F = cdf_field(sym, g);
    CHECK(std::abs(inverse_cdf(F, 0.5)) < g.dx);
    const auto G = cdf_field(kSpy, covering_grid(kSpy));
    for (double x : {-3.0, -0.7, 0.0, 0.25, 2.1}) {
        CHECK(inverse_cdf(G, interpolate(G, x)) == doctest::Approx(x).epsilon(1e-8));
    }
    CHECK_THROWS_AS(inverse_cdf(G, 0.0), DomainError);
    CHECK_THROWS_AS(inverse_cdf(G, 1.0), DomainError);
}

TEST_CASE("a grid that misses mass is refused") {
    GridSpec narrow{8192, 0.0, 1e-4, 0.05};
    CHECK_THROWS_AS(sample_gts(kSpy, SampleConfig{10, 1, narrow}), GridError);
    CHECK_THROWS_AS(sample_gts(kSpy, SampleConfig{0, 1, std::nullopt}), InputError);
}
