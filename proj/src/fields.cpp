#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "gts/errors.hpp"
#include "gts/frft.hpp"

namespace gts {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t next_pow2(std::size_t v) {
    std::size_t n = 1;
    while (n < v) n <<= 1;
    return n;
}

// Distance from the centre beyond which a tail of the density is negligible
// (< ~1e-13) for the purpose of periodic images.
double alias_reach(double sd, double lambda) { return 8.0 * sd + 32.0 / lambda; }

// Sums sum_j w_j c_j exp(-i x_k xi_j) (d_xi / 2 pi) for Hermitian sequences c.
// The j = 0 node gets weight 0 so the remaining nodes are symmetric about
// xi = 0; each result is then real and two inputs can share one transform.
class Inverter {
public:
    explicit Inverter(const GridSpec& g) : g_(g), plan_(g.n, g.fraction()), pre_(g.n), post_(g.n) {
        const double x0 = g.x_min();
        const double scale = g.d_xi / kTwoPi;
        for (std::size_t j = 0; j < g.n; ++j) {
            double w = 1.0;
            if (j == 0) w = 0.0;
            else if (j == 1 || j == g.n - 1) w = 0.5;
            pre_[j] = std::polar(w * scale, -x0 * g.xi(j));
        }
        // exp(-i k dx xi_0) with xi_0 = -(n/2) d_xi, i.e. exp(i pi a n k).
        const double an = g.fraction() * static_cast<double>(g.n);
        for (std::size_t k = 0; k < g.n; ++k) {
            const double t = std::fmod(an * static_cast<double>(k), 2.0);
            post_[k] = std::polar(1.0, std::numbers::pi * t);
        }
    }

    // out2 may be null when c2 is.
    void run(const std::vector<Complex>& c1, const std::vector<Complex>* c2, std::vector<double>& out1,
             std::vector<double>* out2) {
        const std::size_t n = g_.n;
        buf_.resize(n);
        if (c2) {
            for (std::size_t j = 0; j < n; ++j) buf_[j] = pre_[j] * (c1[j] + Complex{0.0, 1.0} * (*c2)[j]);
        } else {
            for (std::size_t j = 0; j < n; ++j) buf_[j] = pre_[j] * c1[j];
        }
        plan_.apply(buf_, buf_);
        out1.resize(n);
        if (out2) out2->resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const Complex z = post_[k] * buf_[k];
            out1[k] = z.real();
            if (out2) (*out2)[k] = z.imag();
        }
    }

private:
    GridSpec g_;
    FrftPlan plan_;
    std::vector<Complex> pre_;
    std::vector<Complex> post_;
    std::vector<Complex> buf_;
};

// Phi on the grid, evaluated on xi >= 0 and mirrored by conjugation.
std::vector<Complex> phi_samples(const GtsParams& p, const GridSpec& g) {
    const PsiEvaluator psi(p);
    const std::size_t h = g.n / 2;
    std::vector<Complex> phi(g.n, Complex{0.0, 0.0});
    phi[h] = 1.0;
    for (std::size_t m = 1; m < h; ++m) {
        const Complex v = std::exp(psi(g.xi(h + m), 0).value);
        phi[h + m] = v;
        phi[h - m] = std::conj(v);
    }
    return phi;
}

std::size_t packed_index(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return i * kNumParams - i * (i - 1) / 2 + (j - i);
}

}  // namespace

void check_tail_decay(const GtsParams& p, const GridSpec& g) {
    // Largest frequency carrying non-zero weight.
    const double xi = g.xi(g.n - 1);
    const double mod = std::abs(characteristic_function(p, xi));
    if (!(mod < kTailTolerance)) {
        std::ostringstream os;
        os << "characteristic function not decayed at xi_max = " << xi << " (|Phi| = " << mod << ")";
        throw GridError(os.str());
    }
}

GridSpec make_grid(const GtsParams& p, double x_lo, double x_hi, std::size_t n_min, std::size_t n_max) {
    p.validate();
    if (!(x_hi > x_lo) || !std::isfinite(x_lo) || !std::isfinite(x_hi)) {
        throw InputError("make_grid: need finite x_lo < x_hi");
    }
    const double c = cumulant(p, 1);
    const double sd = std::sqrt(cumulant(p, 2));
    if (!std::isfinite(c) || !(sd > 0.0)) throw NumericalError("make_grid: degenerate law");

    auto decayed = [&](double xi) { return std::abs(characteristic_function(p, xi)) < kTailTolerance; };
    double xi_max = 1.0 / sd;
    while (!(decayed(xi_max) && decayed(1.5 * xi_max) && decayed(2.0 * xi_max))) {
        xi_max *= 2.0;
        if (xi_max > 1e12) throw GridError("make_grid: characteristic function does not decay");
    }

    const double period = std::max({c - x_lo + alias_reach(sd, p.lambda_plus),
                                    x_hi - c + alias_reach(sd, p.lambda_minus), 1.05 * (x_hi - x_lo)});
    const double d_xi_max = kTwoPi / period;
    const auto need = static_cast<std::size_t>(std::ceil(2.0 * xi_max / d_xi_max)) + 2;
    const std::size_t n = next_pow2(std::max({n_min, need, std::size_t{64}}));
    if (n > std::min(n_max, kMaxGridSize)) {
        throw GridError("make_grid: required grid size " + std::to_string(n) + " exceeds the limit");
    }

    GridSpec g;
    g.n = n;
    // The outermost weighted node, (n/2 - 1) d_xi, lands on xi_max.
    g.d_xi = 2.0 * xi_max / static_cast<double>(n - 2);
    g.x_center = 0.5 * (x_lo + x_hi);
    g.dx = (x_hi - x_lo) / static_cast<double>(n - 8);
    return g;
}

GridSpec grid_for_data(const GtsParams& p, std::span<const double> data, std::size_t n_min,
                       std::size_t n_max) {
    if (data.empty()) throw InputError("grid_for_data: empty sample");
    const auto [lo_it, hi_it] = std::minmax_element(data.begin(), data.end());
    double lo = *lo_it;
    double hi = *hi_it;
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw InputError("grid_for_data: non-finite sample");
    double range = hi - lo;
    if (range <= 0.0) range = std::max(1.0, std::abs(lo));
    return make_grid(p, lo - 0.25 * range, hi + 0.25 * range, n_min, n_max);
}

GridSpec covering_grid(const GtsParams& p, std::size_t n_min) {
    p.validate();
    const double c = cumulant(p, 1);
    const double sd = std::sqrt(cumulant(p, 2));
    return make_grid(p, c - 6.0 * sd - 22.0 / p.lambda_minus, c + 6.0 * sd + 22.0 / p.lambda_plus, n_min);
}

double Field::integral() const {
    if (values.empty()) return 0.0;
    double s = 0.5 * (values.front() + values.back());
    for (std::size_t k = 1; k + 1 < values.size(); ++k) s += values[k];
    return s * grid.dx;
}

Field density_field(const GtsParams& p, const GridSpec& g) {
    p.validate();
    g.validate();
    check_tail_decay(p, g);
    const auto phi = phi_samples(p, g);
    Field f{g, FieldKind::density, {}};
    Inverter inv(g);
    inv.run(phi, nullptr, f.values, nullptr);
    return f;
}

Field cdf_field_unrepaired(const GtsParams& p, const GridSpec& g) {
    p.validate();
    g.validate();
    check_tail_decay(p, g);
    auto c = phi_samples(p, g);
    const std::size_t h = g.n / 2;
    for (std::size_t j = 0; j < g.n; ++j) {
        c[j] = (j == h) ? Complex{0.0, 0.0} : c[j] / Complex{0.0, g.xi(j)};
    }
    Field f{g, FieldKind::cdf, {}};
    Inverter inv(g);
    inv.run(c, nullptr, f.values, nullptr);
    // Dropping the xi = 0 node leaves out d_xi times the limit of
    // (Phi(xi) e^{-i x xi} - 1) / (i xi), which is kappa1 - x.
    const double k1 = cumulant(p, 1);
    const double s = g.d_xi / kTwoPi;
    for (std::size_t k = 0; k < g.n; ++k) f.values[k] = 0.5 - f.values[k] - s * (k1 - g.x(k));
    return f;
}

void repair_monotone(Field& f) {
    double run = 0.0;
    for (double& v : f.values) {
        run = std::max(run, v);
        v = std::clamp(run, 0.0, 1.0);
    }
}

Field cdf_field(const GtsParams& p, const GridSpec& g) {
    Field f = cdf_field_unrepaired(p, g);
    repair_monotone(f);
    return f;
}

const Field& DerivativeFields::second(std::size_t i, std::size_t j) const {
    return second_packed.at(packed_index(i, j));
}

DerivativeFields derivative_fields(const GtsParams& p, const GridSpec& g) {
    p.validate();
    g.validate();
    check_tail_decay(p, g);

    constexpr std::size_t kPairs = kNumParams * (kNumParams + 1) / 2;
    constexpr std::size_t kCount = 1 + kNumParams + kPairs;
    const std::size_t n = g.n;
    const std::size_t h = n / 2;
    std::vector<std::vector<Complex>> in(kCount, std::vector<Complex>(n, Complex{0.0, 0.0}));
    in[0][h] = 1.0;  // at xi = 0 every derivative of Psi vanishes

    const PsiEvaluator psi(p);
    for (std::size_t m = 1; m < h; ++m) {
        const PsiJet jet = psi(g.xi(h + m), 2);
        const Complex phi = std::exp(jet.value);
        auto put = [&](std::size_t f, Complex v) {
            in[f][h + m] = v;
            in[f][h - m] = std::conj(v);
        };
        put(0, phi);
        for (std::size_t a = 0; a < kNumParams; ++a) put(1 + a, jet.grad[a] * phi);
        for (std::size_t a = 0; a < kNumParams; ++a) {
            for (std::size_t b = a; b < kNumParams; ++b) {
                put(1 + kNumParams + packed_index(a, b), (jet.hess[a][b] + jet.grad[a] * jet.grad[b]) * phi);
            }
        }
    }

    std::vector<std::vector<double>> out(kCount);
    Inverter inv(g);
    for (std::size_t f = 0; f < kCount; f += 2) {
        if (f + 1 < kCount) inv.run(in[f], &in[f + 1], out[f], &out[f + 1]);
        else inv.run(in[f], nullptr, out[f], nullptr);
    }

    DerivativeFields d;
    d.density = Field{g, FieldKind::density, std::move(out[0])};
    for (std::size_t a = 0; a < kNumParams; ++a) {
        d.first[a] = Field{g, FieldKind::derivative, std::move(out[1 + a])};
    }
    d.second_packed.reserve(kPairs);
    for (std::size_t q = 0; q < kPairs; ++q) {
        d.second_packed.push_back(Field{g, FieldKind::derivative, std::move(out[1 + kNumParams + q])});
    }
    return d;
}

Stencil make_stencil(const GridSpec& g, double x) {
    const double lo = g.x_min() + 2.0 * g.dx;
    const double hi = g.x_max() - 2.0 * g.dx;
    const double slack = 1e-9 * g.dx;
    if (!(x >= lo - slack && x <= hi + slack)) {
        std::ostringstream os;
        os << "x = " << x << " outside the interpolation range [" << lo << ", " << hi << "]";
        throw GridError(os.str());
    }
    const double u = (x - g.x_min()) / g.dx;
    auto k = static_cast<std::ptrdiff_t>(std::floor(u));
    k = std::clamp<std::ptrdiff_t>(k, 1, static_cast<std::ptrdiff_t>(g.n) - 3);
    const double t = u - static_cast<double>(k);
    Stencil s;
    s.first = static_cast<std::size_t>(k - 1);
    s.w[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
    s.w[1] = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    s.w[2] = -(t + 1.0) * t * (t - 2.0) / 2.0;
    s.w[3] = (t + 1.0) * t * (t - 1.0) / 6.0;
    return s;
}

double interpolate(const Field& f, double x) {
    const double v = make_stencil(f.grid, x).apply(f.values);
    switch (f.kind) {
        case FieldKind::density:
            return (v < 0.0 && v > -1e-10) ? 0.0 : v;
        case FieldKind::cdf:
            return std::clamp(v, 0.0, 1.0);
        case FieldKind::derivative:
            break;
    }
    return v;
}

void write_csv(const Field& f, std::ostream& out) {
    const auto old = out.precision(std::numeric_limits<double>::max_digits10);
    out << "x,value\n";
    for (std::size_t k = 0; k < f.values.size(); ++k) out << f.grid.x(k) << ',' << f.values[k] << '\n';
    out.precision(old);
}

}  // namespace gts
