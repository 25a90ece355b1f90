#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "gts/model.hpp"

namespace gts {

// Fractional Fourier transform G_k = sum_j x_j exp(-2 pi i a j k), k = 0..n-1,
// evaluated through the chirp-z identity jk = (j^2 + k^2 - (k-j)^2)/2 with
// three length-2n FFTs. The kernel spectrum is computed once per plan, so a
// plan applied to many inputs costs two FFTs per transform.
class FrftPlan {
public:
    FrftPlan(std::size_t n, double a);
    ~FrftPlan();
    FrftPlan(FrftPlan&&) noexcept;
    FrftPlan& operator=(FrftPlan&&) noexcept;
    FrftPlan(const FrftPlan&) = delete;
    FrftPlan& operator=(const FrftPlan&) = delete;

    std::size_t size() const noexcept;
    double fraction() const noexcept;

    // in and out must both have size(); they may alias.
    void apply(std::span<const Complex> in, std::span<Complex> out) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::vector<Complex> frft(std::span<const Complex> x, double a);

// Paired grids for Fourier inversion: x_k = x_center + (k - n/2) dx and
// xi_j = (j - n/2) d_xi, j, k = 0..n-1.
struct GridSpec {
    std::size_t n = 8192;
    double x_center = 0.0;
    double dx = 1e-3;
    double d_xi = 0.05;

    double x(std::size_t k) const noexcept;
    double xi(std::size_t j) const noexcept;
    double x_min() const noexcept { return x(0); }
    double x_max() const noexcept { return x(n - 1); }
    double xi_max() const noexcept { return 0.5 * static_cast<double>(n) * d_xi; }
    // FRFT fraction a = dx d_xi / (2 pi).
    double fraction() const noexcept;
    void validate() const;
};

inline constexpr double kTailTolerance = 1e-12;
inline constexpr std::size_t kDefaultGridSize = 8192;
inline constexpr std::size_t kMaxGridSize = std::size_t{1} << 22;

// Checks |Phi(xi_max)| < kTailTolerance; throws GridError otherwise.
void check_tail_decay(const GtsParams& p, const GridSpec& g);

// Builds a grid whose x-nodes span [x_lo, x_hi]. The frequency cut-off is
// doubled until |Phi| < kTailTolerance, d_xi is small enough that periodic
// images of the density fall beyond its numerical support, and n is the
// smallest power of two >= n_min satisfying both.
// Throws GridError when more than n_max points would be needed.
GridSpec make_grid(const GtsParams& p, double x_lo, double x_hi, std::size_t n_min = kDefaultGridSize,
                   std::size_t n_max = kMaxGridSize);

// Grid for a data sample: its range widened by 25% on each side.
GridSpec grid_for_data(const GtsParams& p, std::span<const double> data,
                       std::size_t n_min = kDefaultGridSize, std::size_t n_max = kMaxGridSize);

// Grid covering all but ~1e-9 of the probability mass on each side.
GridSpec covering_grid(const GtsParams& p, std::size_t n_min = kDefaultGridSize);

enum class FieldKind { density, cdf, derivative };

struct Field {
    GridSpec grid;
    FieldKind kind = FieldKind::density;
    std::vector<double> values;

    // Trapezoid integral over the grid.
    double integral() const;
};

Field density_field(const GtsParams& p, const GridSpec& g);

// CDF by Fourier inversion of Phi(xi) / (i xi), principal value at xi = 0.
// Returned values are clamped to [0, 1] and made non-decreasing.
Field cdf_field(const GtsParams& p, const GridSpec& g);

// The raw inversion before monotonicity repair.
Field cdf_field_unrepaired(const GtsParams& p, const GridSpec& g);

// Makes a CDF field non-decreasing and clamps it to [0, 1].
void repair_monotone(Field& f);

// Density together with its first and second parameter derivatives. The
// 1 + 7 + 28 fields share a single set of characteristic-exponent samples.
struct DerivativeFields {
    Field density;
    std::array<Field, kNumParams> first;
    // Upper triangle, packed; use second(i, j).
    std::vector<Field> second_packed;

    const Field& second(std::size_t i, std::size_t j) const;
};

DerivativeFields derivative_fields(const GtsParams& p, const GridSpec& g);

// 4-point Lagrange weights for evaluating any field on grid g at x.
struct Stencil {
    std::size_t first = 0;  // index of the leftmost node
    std::array<double, 4> w{};
    double apply(const std::vector<double>& values) const noexcept {
        return w[0] * values[first] + w[1] * values[first + 1] + w[2] * values[first + 2] +
               w[3] * values[first + 3];
    }
};

// Throws GridError unless x lies in [x_min + 2 dx, x_max - 2 dx].
Stencil make_stencil(const GridSpec& g, double x);

// Local cubic interpolation. Density ringing below 1e-10 is clipped to 0 and
// CDF values are clamped to [0, 1].
double interpolate(const Field& f, double x);

// "x,value" rows.
void write_csv(const Field& f, std::ostream& out);

}  // namespace gts
