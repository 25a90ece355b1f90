#include "gts/gof.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "gts/errors.hpp"
#include "csv_util.hpp"

namespace gts {

EmpiricalDistribution EmpiricalDistribution::from_samples(std::vector<double> samples) {
    if (samples.empty()) throw InputError("empirical distribution: empty sample");
    for (double x : samples) {
        if (!std::isfinite(x)) throw InputError("empirical distribution: non-finite observation");
    }
    std::sort(samples.begin(), samples.end());
    EmpiricalDistribution e;
    e.m_ = samples.size();
    const auto m = static_cast<double>(e.m_);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i + 1 < samples.size() && samples[i + 1] == samples[i]) continue;
        e.points_.push_back(samples[i]);
        e.cdf_.push_back(static_cast<double>(i + 1) / m);
    }
    return e;
}

EmpiricalDistribution EmpiricalDistribution::from_bins(std::vector<double> edges, std::vector<std::size_t> counts,
                                                       std::size_t below, std::size_t m) {
    if (edges.empty() || edges.size() != counts.size()) {
        throw InputError("empirical distribution: need one count per edge");
    }
    for (std::size_t j = 0; j < edges.size(); ++j) {
        if (!std::isfinite(edges[j]) || (j > 0 && !(edges[j] > edges[j - 1]))) {
            throw InputError("empirical distribution: edges must be finite and strictly increasing");
        }
    }
    std::size_t total = below;
    for (auto c : counts) total += c;
    if (m == 0) m = total;
    if (m < total) throw InputError("empirical distribution: counts exceed m");
    if (m == 0) throw InputError("empirical distribution: empty sample");

    EmpiricalDistribution e;
    e.m_ = m;
    e.points_ = std::move(edges);
    const auto md = static_cast<double>(m);
    e.before_ = static_cast<double>(below) / md;
    std::size_t run = below;
    e.cdf_.reserve(counts.size());
    for (auto c : counts) {
        run += c;
        e.cdf_.push_back(static_cast<double>(run) / md);
    }
    return e;
}

double EmpiricalDistribution::cdf(double x) const {
    const auto it = std::upper_bound(points_.begin(), points_.end(), x);
    if (it == points_.begin()) return before_;
    return cdf_[static_cast<std::size_t>(it - points_.begin()) - 1];
}

EmpiricalDistribution BinnedTable::empirical() const {
    return EmpiricalDistribution::from_bins(x, n, below, m);
}

BinnedTable load_binned_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    const auto table = detail::read_csv(in, path.string());
    const auto cx = table.column("x_j");
    const auto cn = table.column("n_j");
    const auto cf = table.column("F_n");
    const auto cF = table.find_column("F");

    BinnedTable t;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        t.x.push_back(table.number(r, cx));
        const double nj = table.number(r, cn);
        if (nj < 0 || nj != std::floor(nj)) table.fail(r, "n_j must be a non-negative integer");
        t.n.push_back(static_cast<std::size_t>(nj));
        t.f_n.push_back(table.number(r, cf));
        if (cF) t.f.push_back(table.number(r, *cF));
    }
    if (t.x.size() < 2) throw InputError(path.string() + ": need at least two rows");

    // m from the growth of F_n over the table; the first row's F_n then gives
    // how many observations sit left of the first bin.
    std::size_t inner = 0;
    for (std::size_t j = 1; j < t.n.size(); ++j) inner += t.n[j];
    const double rise = t.f_n.back() - t.f_n.front();
    if (!(rise > 0.0) || inner == 0) throw InputError(path.string() + ": F_n column does not increase");
    t.m = static_cast<std::size_t>(std::llround(static_cast<double>(inner) / rise));
    const auto up_to_first = std::llround(t.f_n.front() * static_cast<double>(t.m));
    if (up_to_first < static_cast<long long>(t.n.front())) {
        throw InputError(path.string() + ": first-row F_n is smaller than its count");
    }
    t.below = static_cast<std::size_t>(up_to_first) - t.n.front();
    std::size_t total = t.below;
    for (auto c : t.n) total += c;
    if (total > t.m) throw InputError(path.string() + ": counts exceed the inferred sample size");
    return t;
}

KsReport ks_statistic(std::span<const double> f, const EmpiricalDistribution& e) {
    const auto& x = e.points();
    const auto& fm = e.cdf_at_points();
    if (f.size() != x.size()) throw InputError("ks_statistic: one model value per point is required");
    KsReport r;
    r.m = e.m();
    double at_prev = x.front();
    double at_cur = x.front();
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!std::isfinite(f[j])) throw NumericalError("ks_statistic: non-finite model CDF");
        const double prev = j == 0 ? e.cdf_before_first() : fm[j - 1];
        const double a = std::abs(f[j] - prev);
        const double b = std::abs(f[j] - fm[j]);
        if (a > r.sup_previous) {
            r.sup_previous = a;
            at_prev = x[j];
        }
        if (b > r.sup_current) {
            r.sup_current = b;
            at_cur = x[j];
        }
    }
    if (r.sup_previous > r.sup_current) {
        r.d = r.sup_previous;
        r.sup_at = at_prev;
        r.component = KsComponent::previous;
    } else {
        r.d = r.sup_current;
        r.sup_at = at_cur;
        r.component = KsComponent::current;
    }
    return r;
}

KsReport ks_statistic(const std::function<double(double)>& F, const EmpiricalDistribution& e) {
    std::vector<double> f;
    f.reserve(e.points().size());
    for (double x : e.points()) f.push_back(F(x));
    return ks_statistic(f, e);
}

KsReport ks_statistic(const Field& cdf, const EmpiricalDistribution& e) {
    if (cdf.kind != FieldKind::cdf) throw InputError("ks_statistic: field is not a CDF");
    return ks_statistic([&](double x) { return interpolate(cdf, x); }, e);
}

KsReport ks_test(const KsReport& r) {
    KsReport out = r;
    out.p_value = ks_pvalue(r.d, r.m);
    return out;
}

}  // namespace gts
