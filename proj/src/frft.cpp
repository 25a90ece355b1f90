#include "gts/frft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "gts/errors.hpp"

namespace gts {
namespace {

// The FFTW planner is not re-entrant; execution of an existing plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer alloc_buffer(std::size_t n) {
    auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (p == nullptr) throw std::bad_alloc();
    return FftwBuffer(p);
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// exp(i pi a j^2), with a j^2 reduced modulo 2 before scaling by pi.
Complex chirp(double a, std::size_t j) {
    const double jj = static_cast<double>(j) * static_cast<double>(j);
    const double t = std::fmod(a * jj, 2.0);
    return std::polar(1.0, std::numbers::pi * t);
}

}  // namespace

struct FrftPlan::Impl {
    std::size_t n;
    double a;
    std::vector<Complex> chirp_down;  // exp(-i pi a j^2)
    std::vector<Complex> kernel_hat;  // FFT of exp(+i pi a m^2), m = -(n-1) .. n-1, wrapped
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    ~Impl() {
        std::lock_guard lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
    }
};

FrftPlan::FrftPlan(std::size_t n, double a) : impl_(std::make_unique<Impl>()) {
    if (!is_power_of_two(n)) {
        throw InputError("frft: size " + std::to_string(n) + " is not a power of two");
    }
    if (!std::isfinite(a)) throw DomainError("frft: fraction must be finite");
    impl_->n = n;
    impl_->a = a;
    const std::size_t m = 2 * n;

    auto buf = alloc_buffer(m);
    {
        std::lock_guard lock(planner_mutex());
        impl_->forward = fftw_plan_dft_1d(static_cast<int>(m), buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE);
        impl_->backward = fftw_plan_dft_1d(static_cast<int>(m), buf.get(), buf.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!impl_->forward || !impl_->backward) throw NumericalError("frft: FFTW planning failed");

    impl_->chirp_down.resize(n);
    for (std::size_t j = 0; j < n; ++j) impl_->chirp_down[j] = std::conj(chirp(a, j));

    auto* kb = reinterpret_cast<Complex*>(buf.get());
    for (std::size_t j = 0; j < m; ++j) kb[j] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const Complex c = chirp(a, j);
        kb[j] = c;
        if (j > 0) kb[m - j] = c;
    }
    fftw_execute_dft(impl_->forward, buf.get(), buf.get());
    impl_->kernel_hat.assign(kb, kb + m);
}

FrftPlan::~FrftPlan() = default;
FrftPlan::FrftPlan(FrftPlan&&) noexcept = default;
FrftPlan& FrftPlan::operator=(FrftPlan&&) noexcept = default;

std::size_t FrftPlan::size() const noexcept { return impl_->n; }
double FrftPlan::fraction() const noexcept { return impl_->a; }

void FrftPlan::apply(std::span<const Complex> in, std::span<Complex> out) const {
    const std::size_t n = impl_->n;
    const std::size_t m = 2 * n;
    if (in.size() != n || out.size() != n) throw InputError("frft: input size does not match plan");

    auto buf = alloc_buffer(m);
    auto* b = reinterpret_cast<Complex*>(buf.get());
    for (std::size_t j = 0; j < n; ++j) b[j] = in[j] * impl_->chirp_down[j];
    for (std::size_t j = n; j < m; ++j) b[j] = 0.0;
    fftw_execute_dft(impl_->forward, buf.get(), buf.get());
    for (std::size_t j = 0; j < m; ++j) b[j] *= impl_->kernel_hat[j];
    fftw_execute_dft(impl_->backward, buf.get(), buf.get());
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) out[k] = scale * b[k] * impl_->chirp_down[k];
}

std::vector<Complex> frft(std::span<const Complex> x, double a) {
    FrftPlan plan(x.size(), a);
    std::vector<Complex> out(x.size());
    plan.apply(x, out);
    return out;
}

// ---------------------------------------------------------------------------
// GridSpec

double GridSpec::x(std::size_t k) const noexcept {
    return x_center + (static_cast<double>(k) - 0.5 * static_cast<double>(n)) * dx;
}

double GridSpec::xi(std::size_t j) const noexcept {
    return (static_cast<double>(j) - 0.5 * static_cast<double>(n)) * d_xi;
}

double GridSpec::fraction() const noexcept { return dx * d_xi / (2.0 * std::numbers::pi); }

void GridSpec::validate() const {
    if (!is_power_of_two(n) || n < 64) throw InputError("GridSpec: n must be a power of two >= 64");
    if (!(dx > 0.0) || !std::isfinite(dx)) throw InputError("GridSpec: dx must be > 0");
    if (!(d_xi > 0.0) || !std::isfinite(d_xi)) throw InputError("GridSpec: d_xi must be > 0");
    if (!std::isfinite(x_center)) throw InputError("GridSpec: x_center must be finite");
}

}  // namespace gts
