#include <doctest.h>

#include <cmath>
#include <limits>

#include "common.hpp"
#include "gts/errors.hpp"
#include "gts/model.hpp"
#include "oracle_values.hpp"

using namespace gts;
using testdata::kBtc;
using testdata::kSp500;
using testdata::kSpy;

namespace {

double cabs_diff(Complex a, Complex b) { return std::abs(a - b); }

GtsParams symmetric() { return {0.0, 0.4, 0.4, 0.7, 0.7, 1.3, 1.3}; }

}  // namespace

TEST_CASE("parameter domain") {
    CHECK(kSp500.is_valid());
    auto p = kSpy;
    p.lambda_plus = -1.0;
    CHECK_FALSE(p.is_valid());
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = kSpy;
    p.beta_minus = 1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = kSpy;
    p.alpha_plus = -0.1;
    CHECK_THROWS_AS(p.validate(), DomainError);
    // negative integer beta is a finite-activity tail, not a pole
    p = kSpy;
    p.beta_plus = -1.0;
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("array round trip and names") {
    const auto a = kBtc.to_array();
    CHECK(GtsParams::from_array(a) == kBtc);
    CHECK(a[param::lambda_minus] == kBtc.lambda_minus);
    CHECK(param_names()[param::beta_plus] == "beta_plus");
}

TEST_CASE("levy density") {
    const GtsParams unit{0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0};
    CHECK(levy_density(unit, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    auto p = kSp500;
    p.alpha_plus = 0.0;
    CHECK(levy_density(p, 0.7) == 0.0);
    CHECK(levy_density(kSp500, 0.5) == doctest::Approx(oracle::kLevySp500Half).epsilon(1e-13));
    CHECK_THROWS_AS(levy_density(kSp500, 0.0), DomainError);
}

TEST_CASE("total levy mass") {
    CHECK(std::isinf(total_levy_mass({0.0, 0.5, 0.5, 1.0, 1.0, 1.0, 1.0})));
    CHECK(total_levy_mass({0.0, -1.0, -1.0, 1.0, 1.0, 1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-13));
    auto p = kBtc;
    p.alpha_minus = 0.0;
    CHECK(total_levy_mass(p) == doctest::Approx(oracle::kBtcRightMass).epsilon(1e-12));
    CHECK(tail_activity(-0.2) == Activity::finite);
    CHECK(tail_activity(0.2) == Activity::infinite);
}

TEST_CASE("characteristic exponent") {
    CHECK(std::abs(characteristic_exponent(kSp500, 0.0)) == 0.0);
    const GtsParams drift{2.0, 0.5, 0.5, 0.0, 0.0, 1.0, 1.0};
    const auto d = characteristic_exponent(drift, 3.0);
    CHECK(d.real() == doctest::Approx(0.0));
    CHECK(d.imag() == doctest::Approx(6.0));
    CHECK(std::abs(characteristic_function(drift, 3.0)) == doctest::Approx(1.0));
    const auto v = characteristic_exponent(kSp500, 1.0);
    CHECK(cabs_diff(v, {oracle::kPsiSp500Re, oracle::kPsiSp500Im}) < 1e-13);
    const auto phi = characteristic_function(kSp500, 1.0);
    CHECK(cabs_diff(phi, std::exp(Complex{oracle::kPsiSp500Re, oracle::kPsiSp500Im})) < 1e-13);
    CHECK(characteristic_function(kSp500, 0.0) == Complex{1.0, 0.0});
    for (double xi : {0.3, 2.0, 17.0, 250.0}) {
        CHECK(std::abs(characteristic_function(kBtc, xi)) <= 1.0);
        CHECK(cabs_diff(characteristic_exponent(kSpy, -xi), std::conj(characteristic_exponent(kSpy, xi))) < 1e-12);
    }
}

TEST_CASE("gradient matches derivatives") {
    const auto g2 = grad_psi(kSpy, 2.0);
    CHECK(cabs_diff(g2[param::mu], {0.0, 2.0}) == 0.0);
    const auto g0 = grad_psi(kSpy, 0.0);
    for (const auto& c : g0) CHECK(std::abs(c) == 0.0);

    const auto g = grad_psi(kSpy, 1.0);
    const Complex ref{oracle::kDPsiDBetaPlusSpyRe, oracle::kDPsiDBetaPlusSpyIm};
    CHECK(cabs_diff(g[param::beta_plus], ref) / std::abs(ref) < 1e-12);

    // central differences, every coordinate, both a finite- and an infinite-activity side
    for (const auto& p : {kSpy, kBtc, kSp500}) {
        for (double xi : {0.7, -2.5}) {
            const auto gg = grad_psi(p, xi);
            for (std::size_t i = 0; i < kNumParams; ++i) {
                const double h = 1e-6;
                auto a = p;
                auto b = p;
                a[i] += h;
                b[i] -= h;
                const Complex fd = (characteristic_exponent(a, xi) - characteristic_exponent(b, xi)) / (2 * h);
                CAPTURE(i);
                CHECK(cabs_diff(gg[i], fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST_CASE("hessian matches differences of the gradient") {
    for (const auto& p : {kSpy, kBtc}) {
        const double xi = 1.3;
        const auto h = hess_psi(p, xi);
        for (std::size_t j = 0; j < kNumParams; ++j) {
            CHECK(std::abs(h[param::mu][j]) == 0.0);
            CHECK(std::abs(h[j][param::mu]) == 0.0);
        }
        CHECK(std::abs(h[param::alpha_plus][param::alpha_plus]) == 0.0);
        for (std::size_t i = 0; i < kNumParams; ++i) {
            const double step = 1e-6;
            auto a = p;
            auto b = p;
            a[i] += step;
            b[i] -= step;
            const auto ga = grad_psi(a, xi);
            const auto gb = grad_psi(b, xi);
            for (std::size_t j = 0; j < kNumParams; ++j) {
                CAPTURE(i);
                CAPTURE(j);
                CHECK(h[i][j] == h[j][i]);
                const Complex fd = (ga[j] - gb[j]) / (2 * step);
                CHECK(cabs_diff(h[i][j], fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST_CASE("evaluator agrees with the free functions") {
    PsiEvaluator ev(kBtc);
    const auto jet = ev(0.9, 2);
    CHECK(cabs_diff(jet.value, characteristic_exponent(kBtc, 0.9)) < 1e-14);
    const auto g = grad_psi(kBtc, 0.9);
    for (std::size_t i = 0; i < kNumParams; ++i) CHECK(cabs_diff(jet.grad[i], g[i]) < 1e-13);
}

TEST_CASE("beta near zero is continuous") {
    auto p = kSpy;
    p.beta_plus = 0.9e-7;
    auto q = kSpy;
    q.beta_plus = 1.1e-7;
    const double xi = 1.7;
    CHECK(cabs_diff(characteristic_exponent(p, xi), characteristic_exponent(q, xi)) < 1e-7);
    const auto gp = grad_psi(p, xi);
    const auto gq = grad_psi(q, xi);
    for (std::size_t i = 0; i < kNumParams; ++i) CHECK(cabs_diff(gp[i], gq[i]) < 1e-6);
    CHECK(is_bilateral_gamma_limit(5e-8));
    CHECK_FALSE(is_bilateral_gamma_limit(5e-7));
}

TEST_CASE("variance gamma and bilateral gamma limits") {
    CHECK(std::abs(vg_exponent(0.0, 1.0, 1.0, 1.0, 0.0)) == 0.0);
    CHECK(vg_exponent(0.0, 1.0, 1.0, 1.0, 1.0).real() == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
    const GtsParams p{0.1, 1e-9, 1e-9, 0.8, 0.8, 1.4, 0.9};
    for (double xi : {0.5, 3.0, 40.0}) {
        CHECK(cabs_diff(vg_exponent(0.1, 0.8, 1.4, 0.9, xi), characteristic_exponent(p, xi)) < 1e-6);
        CHECK(cabs_diff(bilateral_gamma_exponent(0.1, 0.8, 0.8, 1.4, 0.9, xi), characteristic_exponent(p, xi)) < 1e-6);
    }
}

TEST_CASE("cumulants and moment statistics") {
    CHECK(std::abs(cumulant(kSp500, 1) - 0.0414355) < 1e-6);
    CHECK(std::abs(cumulant(kSp500, 2) - 0.9586858) < 1e-6);
    const auto s = moment_stats(kSp500);
    CHECK(std::abs(s.skewness + 0.5843860) < 1e-6);
    CHECK(std::abs(s.kurtosis - 7.2851465) < 1e-6);
    const auto t = moment_stats(kSpy);
    CHECK(std::abs(t.mean - 0.0489189) < 1e-6);
    CHECK(std::abs(t.variance - 0.9568384) < 1e-6);
    CHECK(std::abs(t.skewness + 0.6322466) < 1e-6);
    CHECK(std::abs(t.kurtosis - 7.6521787) < 1e-6);
    CHECK(std::abs(cumulant(symmetric(), 3)) < 1e-15);
    CHECK(moment_stats(symmetric()).skewness == 0.0);
    CHECK_THROWS_AS(cumulant(kSpy, 0), DomainError);
}

TEST_CASE("cumulants are derivatives of the exponent at zero") {
    // kappa_2 = -Psi''(0): second difference of Re Psi
    const double h = 1e-3;
    const double d2 = (characteristic_exponent(kSpy, h).real() * 2) / (h * h);
    CHECK(-d2 == doctest::Approx(cumulant(kSpy, 2)).epsilon(1e-5));
}

TEST_CASE("time scaling") {
    CHECK(scale_time(kSpy, 1.0) == kSpy);
    const auto two = scale_time(kSpy, 2.0);
    CHECK(two.mu == 2 * kSpy.mu);
    CHECK(two.alpha_plus == 2 * kSpy.alpha_plus);
    CHECK(two.alpha_minus == 2 * kSpy.alpha_minus);
    CHECK(two.beta_plus == kSpy.beta_plus);
    CHECK(two.lambda_minus == kSpy.lambda_minus);
    for (int k = 1; k <= 4; ++k) {
        CHECK(cumulant(scale_time(kBtc, 3.5), k) == doctest::Approx(3.5 * cumulant(kBtc, k)).epsilon(1e-12));
    }
}

TEST_CASE("unit rescaling multiplies cumulant k by c^k") {
    const double c = 10.0;
    const auto r = rescale_units(kBtc, c);
    for (int k = 1; k <= 4; ++k) {
        CHECK(cumulant(r, k) == doctest::Approx(std::pow(c, k) * cumulant(kBtc, k)).epsilon(1e-12));
    }
    const double xi = 0.37;
    CHECK(cabs_diff(characteristic_exponent(r, xi), characteristic_exponent(kBtc, c * xi)) < 1e-12);
}

TEST_CASE("gbm helpers") {
    const GbmParams g{0.5, 2.0};
    CHECK(gbm_cdf(g, 0.5) == doctest::Approx(0.5));
    CHECK(gbm_density(g, 0.5) == doctest::Approx(1.0 / (2.0 * std::sqrt(2 * 3.141592653589793))));
    CHECK_THROWS_AS((GbmParams{0.0, 0.0}.validate()), DomainError);
}
