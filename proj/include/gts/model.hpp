#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "gts/specfun.hpp"

namespace gts {

inline constexpr std::size_t kNumParams = 7;

// Below this |beta| a tail is treated as sitting on its bilateral-gamma limit.
inline constexpr double kBetaZeroThreshold = 1e-7;

// Canonical parameter indexing, shared by gradients, Hessians and traces.
namespace param {
inline constexpr std::size_t mu = 0;
inline constexpr std::size_t beta_plus = 1;
inline constexpr std::size_t beta_minus = 2;
inline constexpr std::size_t alpha_plus = 3;
inline constexpr std::size_t alpha_minus = 4;
inline constexpr std::size_t lambda_plus = 5;
inline constexpr std::size_t lambda_minus = 6;
}  // namespace param

using ParamArray = std::array<double, kNumParams>;

// Generalized tempered stable law GTS(mu, beta+, beta-, alpha+, alpha-, lambda+, lambda-).
//
// beta < 1 on both sides (negative beta gives a compound-Poisson tail),
// alpha >= 0 and lambda > 0.
struct GtsParams {
    double mu = 0.0;
    double beta_plus = 0.5;
    double beta_minus = 0.5;
    double alpha_plus = 0.5;
    double alpha_minus = 0.5;
    double lambda_plus = 1.0;
    double lambda_minus = 1.0;

    ParamArray to_array() const noexcept;
    static GtsParams from_array(const ParamArray& v) noexcept;

    bool is_valid() const noexcept;
    // Throws DomainError naming the offending field.
    void validate() const;

    double& operator[](std::size_t i);
    double operator[](std::size_t i) const;

    bool operator==(const GtsParams&) const = default;
};

const std::array<std::string_view, kNumParams>& param_names();

struct GbmParams {
    double mu = 0.0;
    double sigma = 1.0;
    void validate() const;
};

double gbm_density(const GbmParams& g, double x);
double gbm_cdf(const GbmParams& g, double x);

enum class Activity { finite, infinite };

// Lévy mass of one tail is finite exactly when its beta is negative.
Activity tail_activity(double beta) noexcept;
bool is_bilateral_gamma_limit(double beta) noexcept;

double levy_density(const GtsParams& p, double x);

// Total Lévy mass; +infinity when either active tail has beta >= 0.
// A tail with zero intensity carries no mass regardless of its beta.
double total_levy_mass(const GtsParams& p);

using PsiGradient = std::array<Complex, kNumParams>;
using PsiHessian = std::array<std::array<Complex, kNumParams>, kNumParams>;

// Psi(xi) = log E exp(i xi Y) together with its parameter derivatives.
struct PsiJet {
    Complex value;
    PsiGradient grad{};
    PsiHessian hess{};
};

Complex characteristic_exponent(const GtsParams& p, double xi);
Complex characteristic_function(const GtsParams& p, double xi);
PsiGradient grad_psi(const GtsParams& p, double xi);
PsiHessian hess_psi(const GtsParams& p, double xi);

// Evaluates Psi and, depending on `order` (0, 1 or 2), its gradient and
// Hessian in one pass. Gamma-function factors are shared between the terms.
class PsiEvaluator {
public:
    explicit PsiEvaluator(const GtsParams& p);
    PsiJet operator()(double xi, int order) const;
    const GtsParams& params() const noexcept { return p_; }

private:
    struct TailConstants {
        double beta;
        double lambda;
        double log_lambda;
        double gamma_1mb;     // Gamma(1 - beta)
        double digamma_1mb;   // psi(1 - beta)
        double trigamma_1mb;  // psi_1(1 - beta)
        double lambda_pow;    // lambda^beta
    };
    static TailConstants make_tail(double beta, double lambda);

    GtsParams p_;
    TailConstants plus_;
    TailConstants minus_;
};

// Cumulant kappa_k, k >= 1.
double cumulant(const GtsParams& p, int k);

struct MomentStats {
    double mean;
    double variance;
    double skewness;
    double kurtosis;  // full kurtosis, 3 + kappa4 / kappa2^2
};

MomentStats moment_stats(const GtsParams& p);

// Law of Y_t for the Lévy process generated by p.
GtsParams scale_time(const GtsParams& p, double t);

// Law of c * Y, for changing return units (e.g. percent to 10%-units).
GtsParams rescale_units(const GtsParams& p, double c);

// Variance-gamma exponent: the beta -> 0 limit with alpha+ = alpha- = alpha.
Complex vg_exponent(double mu, double alpha, double lambda_plus, double lambda_minus, double xi);

// Bilateral-gamma exponent: the beta -> 0 limit on both tails.
Complex bilateral_gamma_exponent(double mu, double alpha_plus, double alpha_minus,
                                 double lambda_plus, double lambda_minus, double xi);

}  // namespace gts
