#include "gts/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "gts/errors.hpp"

namespace gts::specfun {
namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 7, nine coefficients.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

// Largest x with Gamma(x) < DBL_MAX.
constexpr double kGammaMaxArg = 171.6243769563027;

void check_pole(double x, const char* fn) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(fn) + ": non-finite argument");
    }
    if (x <= 0.0 && x == std::floor(x)) {
        throw PoleError(std::string(fn) + ": pole at non-positive integer " + std::to_string(x));
    }
}

// Gamma for x >= 0.5.
double lanczos_gamma(double x) {
    x -= 1.0;
    double a = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        a += kLanczos[i] / (x + static_cast<double>(i));
    }
    const double t = x + kLanczosG + 0.5;
    // t^(x+1/2) e^{-t} split in two halves to postpone overflow near x = 171.
    const double half = std::pow(t, 0.5 * (x + 0.5));
    return std::sqrt(2.0 * kPi) * half * (std::exp(-t) * half) * a;
}

double tan_pi(double x) {
    double r = x - std::round(x);  // r in [-1/2, 1/2], tan has period 1
    return std::tan(kPi * r);
}

}  // namespace

double sin_pi(double x) {
    double r = std::fmod(x, 2.0);  // exact
    if (r > 1.0) r -= 2.0;
    if (r < -1.0) r += 2.0;
    // r in [-1, 1]; fold onto [-1/2, 1/2] using sin(pi r) = sin(pi (1 - r)).
    if (r > 0.5) r = 1.0 - r;
    if (r < -0.5) r = -1.0 - r;
    return std::sin(kPi * r);
}

double gamma_real(double x) {
    check_pole(x, "gamma_real");
    if (x > kGammaMaxArg) {
        throw OverflowError("gamma_real: overflow for x = " + std::to_string(x));
    }
    if (x < 0.5) {
        const double s = sin_pi(x);
        if (1.0 - x > kGammaMaxArg) {
            return 0.0 * s;  // underflows; keeps the sign of sin(pi x)
        }
        return kPi / (s * lanczos_gamma(1.0 - x));
    }
    return lanczos_gamma(x);
}

double digamma(double x) {
    check_pole(x, "digamma");
    double result = 0.0;
    if (x < 0.0) {
        // psi(x) = psi(1 - x) - pi cot(pi x)
        result -= kPi / tan_pi(x);
        x = 1.0 - x;
    }
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli-number asymptotic tail, B2 .. B14.
    const double tail =
        inv2 * (1.0 / 12 -
                inv2 * (1.0 / 120 -
                        inv2 * (1.0 / 252 -
                                inv2 * (1.0 / 240 -
                                        inv2 * (1.0 / 132 -
                                                inv2 * (691.0 / 32760 - inv2 * (1.0 / 12)))))));
    return result + std::log(x) - 0.5 * inv - tail;
}

double trigamma(double x) {
    check_pole(x, "trigamma");
    double result = 0.0;
    double sign = 1.0;
    if (x < 0.0) {
        // psi1(x) = pi^2 / sin^2(pi x) - psi1(1 - x)
        const double s = sin_pi(x);
        result = kPi * kPi / (s * s);
        sign = -1.0;
        x = 1.0 - x;
    }
    double shifted = 0.0;
    while (x < 10.0) {
        shifted += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv + 0.5 * inv2 +
        inv * inv2 *
            (1.0 / 6 -
             inv2 * (1.0 / 30 -
                     inv2 * (1.0 / 42 -
                             inv2 * (1.0 / 30 -
                                     inv2 * (5.0 / 66 -
                                             inv2 * (691.0 / 2730 - inv2 * (7.0 / 6)))))));
    return result + sign * (shifted + series);
}

Complex complex_pow(Complex z, double beta) {
    if (!(z.real() > 0.0)) {
        throw DomainError("complex_pow: principal branch requires re(z) > 0");
    }
    return std::exp(beta * std::log(z));
}

}  // namespace gts::specfun
