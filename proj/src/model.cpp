#include "gts/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gts/errors.hpp"

namespace gts {
namespace {

constexpr Complex kI{0.0, 1.0};

// E(w) = (e^w - 1)/w and its first two derivatives.
struct ExpRatio {
    Complex e0, e1, e2;
};

ExpRatio exp_ratio(Complex w) {
    if (std::abs(w) < 1.0) {
        // E(w) = sum_k w^k / (k+1)!
        Complex e0 = 0.0, e1 = 0.0, e2 = 0.0;
        Complex wk = 1.0;    // w^k
        Complex wk1 = 0.0;   // w^(k-1)
        Complex wk2 = 0.0;   // w^(k-2)
        double inv_fact = 1.0;  // 1/(k+1)!
        for (int k = 0; k <= 28; ++k) {
            inv_fact /= static_cast<double>(k + 1);
            e0 += wk * inv_fact;
            if (k >= 1) e1 += static_cast<double>(k) * wk1 * inv_fact;
            if (k >= 2) e2 += static_cast<double>(k * (k - 1)) * wk2 * inv_fact;
            wk2 = wk1;
            wk1 = wk;
            wk *= w;
        }
        return {e0, e1, e2};
    }
    const Complex ew = std::exp(w);
    const Complex w2 = w * w;
    return {(ew - 1.0) / w, (ew * (w - 1.0) + 1.0) / w2, (ew * (w2 - 2.0 * w + 2.0) - 2.0) / (w2 * w)};
}

// One tempered tail B(beta, lambda; z) = Gamma(-beta) (z^beta - lambda^beta)
// with z = lambda -/+ i xi, plus its derivatives in (beta, lambda).
//
// Written as -Gamma(1-beta) lambda^beta Delta E(beta Delta), Delta = Log(z/lambda),
// which is regular at beta = 0 where it equals -Log(1 -/+ i xi/lambda).
struct TailJet {
    Complex b, b_beta, b_lambda, b_bb, b_bl, b_ll;
};

void check_params(const GtsParams& p) { p.validate(); }

}  // namespace

// ---------------------------------------------------------------------------
// GtsParams

ParamArray GtsParams::to_array() const noexcept {
    return {mu, beta_plus, beta_minus, alpha_plus, alpha_minus, lambda_plus, lambda_minus};
}

GtsParams GtsParams::from_array(const ParamArray& v) noexcept {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
}

double& GtsParams::operator[](std::size_t i) {
    switch (i) {
        case param::mu: return mu;
        case param::beta_plus: return beta_plus;
        case param::beta_minus: return beta_minus;
        case param::alpha_plus: return alpha_plus;
        case param::alpha_minus: return alpha_minus;
        case param::lambda_plus: return lambda_plus;
        case param::lambda_minus: return lambda_minus;
        default: throw std::out_of_range("GtsParams index");
    }
}

double GtsParams::operator[](std::size_t i) const { return const_cast<GtsParams&>(*this)[i]; }

bool GtsParams::is_valid() const noexcept {
    for (double v : to_array()) {
        if (!std::isfinite(v)) return false;
    }
    return beta_plus < 1.0 && beta_minus < 1.0 && alpha_plus >= 0.0 && alpha_minus >= 0.0 &&
           lambda_plus > 0.0 && lambda_minus > 0.0;
}

void GtsParams::validate() const {
    const auto v = to_array();
    for (std::size_t i = 0; i < kNumParams; ++i) {
        if (!std::isfinite(v[i])) {
            throw DomainError("GtsParams: " + std::string(param_names()[i]) + " is not finite");
        }
    }
    if (!(beta_plus < 1.0)) throw DomainError("GtsParams: beta_plus must be < 1");
    if (!(beta_minus < 1.0)) throw DomainError("GtsParams: beta_minus must be < 1");
    if (!(alpha_plus >= 0.0)) throw DomainError("GtsParams: alpha_plus must be >= 0");
    if (!(alpha_minus >= 0.0)) throw DomainError("GtsParams: alpha_minus must be >= 0");
    if (!(lambda_plus > 0.0)) throw DomainError("GtsParams: lambda_plus must be > 0");
    if (!(lambda_minus > 0.0)) throw DomainError("GtsParams: lambda_minus must be > 0");
}

const std::array<std::string_view, kNumParams>& param_names() {
    static const std::array<std::string_view, kNumParams> names = {
        "mu", "beta_plus", "beta_minus", "alpha_plus", "alpha_minus", "lambda_plus", "lambda_minus"};
    return names;
}

void GbmParams::validate() const {
    if (!std::isfinite(mu)) throw DomainError("GbmParams: mu is not finite");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("GbmParams: sigma must be > 0");
}

double gbm_density(const GbmParams& g, double x) {
    const double z = (x - g.mu) / g.sigma;
    return std::exp(-0.5 * z * z) / (g.sigma * std::sqrt(2.0 * std::numbers::pi));
}

double gbm_cdf(const GbmParams& g, double x) {
    return 0.5 * std::erfc(-(x - g.mu) / (g.sigma * std::numbers::sqrt2));
}

// ---------------------------------------------------------------------------
// Lévy measure

Activity tail_activity(double beta) noexcept { return beta < 0.0 ? Activity::finite : Activity::infinite; }

bool is_bilateral_gamma_limit(double beta) noexcept { return std::abs(beta) < kBetaZeroThreshold; }

double levy_density(const GtsParams& p, double x) {
    check_params(p);
    if (x == 0.0 || !std::isfinite(x)) {
        throw DomainError("levy_density: x must be finite and non-zero");
    }
    if (x > 0.0) {
        if (p.alpha_plus == 0.0) return 0.0;
        return p.alpha_plus * std::exp(-p.lambda_plus * x) / std::pow(x, 1.0 + p.beta_plus);
    }
    const double ax = -x;
    if (p.alpha_minus == 0.0) return 0.0;
    return p.alpha_minus * std::exp(-p.lambda_minus * ax) / std::pow(ax, 1.0 + p.beta_minus);
}

double total_levy_mass(const GtsParams& p) {
    check_params(p);
    auto tail_mass = [](double alpha, double beta, double lambda) {
        if (alpha == 0.0) return 0.0;
        if (tail_activity(beta) == Activity::infinite) return std::numeric_limits<double>::infinity();
        return alpha * std::pow(lambda, beta) * specfun::gamma_real(-beta);
    };
    return tail_mass(p.alpha_plus, p.beta_plus, p.lambda_plus) +
           tail_mass(p.alpha_minus, p.beta_minus, p.lambda_minus);
}

// ---------------------------------------------------------------------------
// Characteristic exponent

PsiEvaluator::TailConstants PsiEvaluator::make_tail(double beta, double lambda) {
    const double s = 1.0 - beta;  // > 0 on the parameter domain
    return {beta,
            lambda,
            std::log(lambda),
            specfun::gamma_real(s),
            specfun::digamma(s),
            specfun::trigamma(s),
            std::pow(lambda, beta)};
}

PsiEvaluator::PsiEvaluator(const GtsParams& p) : p_(p) {
    check_params(p);
    plus_ = make_tail(p.beta_plus, p.lambda_plus);
    minus_ = make_tail(p.beta_minus, p.lambda_minus);
}

namespace {

// u = -xi/lambda for the positive tail, +xi/lambda for the negative one.
template <typename Tail>
TailJet tail_jet(const Tail& t, double u, int order) {
    // Delta = Log(1 + i u), computed without cancellation for small u.
    const Complex delta{0.5 * std::log1p(u * u), std::atan(u)};
    const Complex w = t.beta * delta;
    const ExpRatio e = exp_ratio(w);
    const Complex d0 = delta * e.e0;

    TailJet j{};
    const double g = t.gamma_1mb;
    const double lb = t.lambda_pow;
    j.b = -g * lb * d0;
    if (order < 1) return j;

    const double psi = t.digamma_1mb;
    const double l = t.log_lambda;
    const Complex d1 = delta * delta * e.e1;
    const Complex log_z{l + delta.real(), delta.imag()};
    const double lb1 = lb / t.lambda;            // lambda^(beta-1)
    const Complex zb1 = lb1 * std::exp((t.beta - 1.0) * delta);  // z^(beta-1)

    j.b_beta = -g * lb * ((l - psi) * d0 + d1);
    j.b_lambda = -g * (zb1 - lb1);
    if (order < 2) return j;

    const double psi1 = t.trigamma_1mb;
    const Complex d2 = delta * delta * delta * e.e2;
    j.b_bb = -g * lb *
             ((psi * psi + psi1) * d0 - 2.0 * psi * (l * d0 + d1) + l * l * d0 + 2.0 * l * d1 + d2);
    j.b_bl = g * psi * (zb1 - lb1) - g * (zb1 * log_z - lb1 * l);
    const double lb2 = lb1 / t.lambda;
    const Complex zb2 = zb1 / Complex{t.lambda, u * t.lambda};  // z^(beta-2), z = lambda (1 + i u)
    j.b_ll = -g * (t.beta - 1.0) * (zb2 - lb2);
    return j;
}

}  // namespace

PsiJet PsiEvaluator::operator()(double xi, int order) const {
    const TailJet jp = tail_jet(plus_, -xi / p_.lambda_plus, order);
    const TailJet jm = tail_jet(minus_, xi / p_.lambda_minus, order);

    PsiJet out;
    out.value = kI * (p_.mu * xi) + p_.alpha_plus * jp.b + p_.alpha_minus * jm.b;
    if (order < 1) return out;

    using namespace param;
    auto& g = out.grad;
    g[mu] = kI * xi;
    g[beta_plus] = p_.alpha_plus * jp.b_beta;
    g[beta_minus] = p_.alpha_minus * jm.b_beta;
    g[alpha_plus] = jp.b;
    g[alpha_minus] = jm.b;
    g[lambda_plus] = p_.alpha_plus * jp.b_lambda;
    g[lambda_minus] = p_.alpha_minus * jm.b_lambda;
    if (order < 2) return out;

    auto& h = out.hess;
    auto set = [&h](std::size_t a, std::size_t b, Complex v) {
        h[a][b] = v;
        h[b][a] = v;
    };
    set(beta_plus, beta_plus, p_.alpha_plus * jp.b_bb);
    set(beta_plus, alpha_plus, jp.b_beta);
    set(beta_plus, lambda_plus, p_.alpha_plus * jp.b_bl);
    set(alpha_plus, lambda_plus, jp.b_lambda);
    set(lambda_plus, lambda_plus, p_.alpha_plus * jp.b_ll);
    set(beta_minus, beta_minus, p_.alpha_minus * jm.b_bb);
    set(beta_minus, alpha_minus, jm.b_beta);
    set(beta_minus, lambda_minus, p_.alpha_minus * jm.b_bl);
    set(alpha_minus, lambda_minus, jm.b_lambda);
    set(lambda_minus, lambda_minus, p_.alpha_minus * jm.b_ll);
    return out;
}

Complex characteristic_exponent(const GtsParams& p, double xi) { return PsiEvaluator(p)(xi, 0).value; }

Complex characteristic_function(const GtsParams& p, double xi) {
    return std::exp(characteristic_exponent(p, xi));
}

PsiGradient grad_psi(const GtsParams& p, double xi) { return PsiEvaluator(p)(xi, 1).grad; }

PsiHessian hess_psi(const GtsParams& p, double xi) { return PsiEvaluator(p)(xi, 2).hess; }

// ---------------------------------------------------------------------------
// Cumulants and moments

double cumulant(const GtsParams& p, int k) {
    check_params(p);
    if (k < 1) throw DomainError("cumulant: order must be >= 1");
    const double kd = static_cast<double>(k);
    auto tail = [kd](double alpha, double beta, double lambda) {
        if (alpha == 0.0) return 0.0;
        return alpha * specfun::gamma_real(kd - beta) / std::pow(lambda, kd - beta);
    };
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    double kappa = tail(p.alpha_plus, p.beta_plus, p.lambda_plus) +
                   sign * tail(p.alpha_minus, p.beta_minus, p.lambda_minus);
    if (k == 1) kappa += p.mu;
    return kappa;
}

MomentStats moment_stats(const GtsParams& p) {
    const double k1 = cumulant(p, 1);
    const double k2 = cumulant(p, 2);
    if (!(k2 > 0.0)) throw NumericalError("moment_stats: degenerate law, kappa2 <= 0");
    const double k3 = cumulant(p, 3);
    const double k4 = cumulant(p, 4);
    return {k1, k2, k3 / std::pow(k2, 1.5), 3.0 + k4 / (k2 * k2)};
}

GtsParams scale_time(const GtsParams& p, double t) {
    check_params(p);
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("scale_time: t must be > 0");
    GtsParams q = p;
    q.mu *= t;
    q.alpha_plus *= t;
    q.alpha_minus *= t;
    return q;
}

GtsParams rescale_units(const GtsParams& p, double c) {
    check_params(p);
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("rescale_units: factor must be > 0");
    // Lévy density of cY: alpha c^beta e^{-(lambda/c) x} / x^{1+beta}
    GtsParams q = p;
    q.mu *= c;
    q.alpha_plus *= std::pow(c, p.beta_plus);
    q.alpha_minus *= std::pow(c, p.beta_minus);
    q.lambda_plus /= c;
    q.lambda_minus /= c;
    return q;
}

Complex vg_exponent(double mu, double alpha, double lambda_plus, double lambda_minus, double xi) {
    if (!(alpha > 0.0) || !(lambda_plus > 0.0) || !(lambda_minus > 0.0)) {
        throw DomainError("vg_exponent: alpha and lambdas must be > 0");
    }
    const double prod = lambda_plus * lambda_minus;
    const Complex arg = 1.0 - ((lambda_minus - lambda_plus) / prod) * kI * xi + xi * xi / prod;
    return kI * (mu * xi) - alpha * std::log(arg);
}

Complex bilateral_gamma_exponent(double mu, double alpha_plus, double alpha_minus,
                                 double lambda_plus, double lambda_minus, double xi) {
    if (!(lambda_plus > 0.0) || !(lambda_minus > 0.0) || alpha_plus < 0.0 || alpha_minus < 0.0) {
        throw DomainError("bilateral_gamma_exponent: invalid parameters");
    }
    return kI * (mu * xi) - alpha_plus * std::log(Complex{1.0, -xi / lambda_plus}) -
           alpha_minus * std::log(Complex{1.0, xi / lambda_minus});
}

}  // namespace gts
