#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "gts/frft.hpp"

namespace gts {

// Step CDF F_m of a sample, known either through the sorted observations or
// through bins: n_j observations fall in (x_{j-1}, x_j], `below` of them lie
// left of the first bin and the rest of the m lie above the last edge.
class EmpiricalDistribution {
public:
    static EmpiricalDistribution from_samples(std::vector<double> samples);
    // m defaults to below + sum(counts).
    static EmpiricalDistribution from_bins(std::vector<double> edges, std::vector<std::size_t> counts,
                                           std::size_t below = 0, std::size_t m = 0);

    std::size_t m() const noexcept { return m_; }
    // Right-continuous: share of the sample <= x. Between edges of a binned
    // distribution the value at the previous edge is returned.
    double cdf(double x) const;

    // Abscissae where F_m jumps (or bin edges), ascending, with F_m there.
    const std::vector<double>& points() const noexcept { return points_; }
    const std::vector<double>& cdf_at_points() const noexcept { return cdf_; }
    // F_m just left of points()[0].
    double cdf_before_first() const noexcept { return before_; }

private:
    std::size_t m_ = 0;
    std::vector<double> points_;
    std::vector<double> cdf_;
    double before_ = 0.0;
};

// One row per bin edge: x_j, n_j, F_n(x_j) and a model CDF value F(x_j).
struct BinnedTable {
    std::vector<double> x;
    std::vector<std::size_t> n;
    std::vector<double> f_n;
    std::vector<double> f;
    std::size_t m = 0;      // inferred from the F_n column
    std::size_t below = 0;  // observations left of the first edge

    EmpiricalDistribution empirical() const;
};

// CSV with header x_j,n_j,F_n[,F]; extra columns are ignored.
BinnedTable load_binned_table(const std::filesystem::path& path);

enum class KsComponent {
    previous,  // |F(x_j) - F_m(x_{j-1})|
    current,   // |F(x_j) - F_m(x_j)|
};

struct KsReport {
    double d = 0.0;
    std::size_t m = 0;
    double p_value = 1.0;
    double sup_at = 0.0;
    KsComponent component = KsComponent::current;
    double sup_previous = 0.0;
    double sup_current = 0.0;
};

// d = max(sup_j |F(x_j) - F_m(x_j)|, sup_j |F(x_j) - F_m(x_{j-1})|) over the
// points of e. p_value is left at 1; see ks_test.
KsReport ks_statistic(const std::function<double(double)>& F, const EmpiricalDistribution& e);
// Model CDF given directly at e.points().
KsReport ks_statistic(std::span<const double> f_at_points, const EmpiricalDistribution& e);
// Model CDF from a CDF field; throws GridError if a point lies off the grid.
KsReport ks_statistic(const Field& cdf, const EmpiricalDistribution& e);

// P(D_m <= d) for a continuous null. Throws DomainError for m > 100000.
double ks_exact_cdf(double d, std::size_t m);
double ks_pvalue(double d, std::size_t m);

// P(D+_m >= d), the one-sided tail, from the Birnbaum-Tingey sum.
double ks_one_sided_tail(double d, std::size_t m);

// Fills p_value from d and m.
KsReport ks_test(const KsReport& r);

struct KsNullSummary {
    double mean = 0.0;
    double sd = 0.0;
    double critical_d = 0.0;
};

KsNullSummary ks_null_summary(std::size_t m, double alpha);

}  // namespace gts
