#include "gts/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "csv_util.hpp"
#include "gts/errors.hpp"

namespace gts {
namespace {

int parse_int(std::string_view s, std::string_view whole) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw InputError("invalid date '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace

Date parse_date(std::string_view s) {
    const std::string t = detail::trim(s);
    std::string_view v = t;
    if (auto cut = v.find_first_of("T "); cut != std::string_view::npos) v = v.substr(0, cut);
    if (v.size() != 10 || v[4] != '-' || v[7] != '-') throw InputError("invalid date '" + t + "', expected YYYY-MM-DD");
    const Date d{std::chrono::year{parse_int(v.substr(0, 4), t)},
                 std::chrono::month{static_cast<unsigned>(parse_int(v.substr(5, 2), t))},
                 std::chrono::day{static_cast<unsigned>(parse_int(v.substr(8, 2), t))}};
    if (!d.ok()) throw InputError("invalid date '" + t + "'");
    return d;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                  static_cast<unsigned>(d.day()));
    return buf;
}

PriceSeries load_prices(const std::filesystem::path& path, std::string_view date_column,
                        std::string_view price_column) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    const auto t = detail::read_csv(in, path.string());
    const auto cd = t.column(date_column);
    const auto cp = t.column(price_column);

    struct Row {
        Date date;
        double price;
        std::size_t row;
    };
    std::vector<Row> rows;
    rows.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        Date d;
        try {
            d = parse_date(t.cell(r, cd));
        } catch (const InputError& e) {
            t.fail(r, e.what());
        }
        const double p = t.number(r, cp);
        if (!std::isfinite(p) || p <= 0.0) t.fail(r, "price must be positive, got '" + t.cell(r, cp) + "'");
        rows.push_back({d, p, r});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    PriceSeries s;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].date == rows[i - 1].date) {
            t.fail(rows[i].row, "duplicate date " + format_date(rows[i].date));
        }
        s.dates.push_back(rows[i].date);
        s.prices.push_back(rows[i].price);
    }
    return s;
}

ReturnSeries log_returns(const PriceSeries& s) {
    if (s.size() < 2) throw InputError("log_returns: need at least two prices");
    ReturnSeries r;
    r.values.reserve(s.size() - 1);
    for (std::size_t j = 1; j < s.size(); ++j) {
        r.values.push_back(100.0 * std::log(s.prices[j] / s.prices[j - 1]));
        if (!s.dates.empty()) r.dates.push_back(s.dates[j]);
    }
    return r;
}

ReturnSeries load_returns(const std::filesystem::path& path, std::string_view column) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    const auto t = detail::read_csv(in, path.string());
    std::size_t c = 0;
    if (!column.empty()) {
        c = t.column(column);
    } else if (auto rc = t.find_column("return")) {
        c = *rc;
    } else if (t.header.size() != 1) {
        throw InputError(path.string() + ": several columns; name the one holding returns");
    }
    ReturnSeries r;
    r.values.reserve(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double v = t.number(i, c);
        if (!std::isfinite(v)) t.fail(i, "return is not finite");
        r.values.push_back(v);
    }
    if (r.values.empty()) throw InputError(path.string() + ": no data rows");
    return r;
}

OutlierPolicy OutlierPolicy::parse(std::string_view spec) {
    const std::string s = detail::trim(spec);
    if (s.empty() || s == "none") return {};
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw InputError("outlier policy '" + s + "': expected none, abs:<c> or sigma:<k>");
    const std::string kind = s.substr(0, colon);
    const auto v = detail::parse_double(s.substr(colon + 1));
    if (!v || !(*v > 0.0) || !std::isfinite(*v)) {
        throw InputError("outlier policy '" + s + "': threshold must be a positive number");
    }
    if (kind == "abs") return {Kind::abs_threshold, *v};
    if (kind == "sigma") return {Kind::sigma_multiple, *v};
    throw InputError("outlier policy '" + s + "': unknown kind '" + kind + "'");
}

OutlierResult remove_outliers(const ReturnSeries& r, const OutlierPolicy& policy) {
    OutlierResult out;
    if (policy.kind == OutlierPolicy::Kind::none) {
        out.kept = r;
        return out;
    }
    if (!(policy.value > 0.0)) throw InputError("remove_outliers: threshold must be positive");
    double center = 0.0;
    double limit = policy.value;
    if (policy.kind == OutlierPolicy::Kind::sigma_multiple) {
        if (r.values.size() < 2) throw InputError("remove_outliers: need at least two values");
        const auto st = summary_stats(r.values);
        center = st.mean;
        limit = policy.value * std::sqrt(st.variance);
    }
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        if (std::abs(r.values[i] - center) > limit) {
            out.removed.push_back(i);
            continue;
        }
        out.kept.values.push_back(r.values[i]);
        if (!r.dates.empty()) out.kept.dates.push_back(r.dates[i]);
    }
    if (out.kept.values.empty()) throw InputError("remove_outliers: every observation was removed");
    return out;
}

SummaryStats summary_stats(const std::vector<double>& values) {
    if (values.size() < 2) throw InputError("summary_stats: need at least two values");
    const auto m = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / m;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double x : values) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= m;
    m3 /= m;
    m4 /= m;
    if (!(m2 > 0.0)) throw InputError("summary_stats: variance is zero");
    return SummaryStats{values.size(), mean, m2, m3 / std::pow(m2, 1.5), m4 / (m2 * m2)};
}

}  // namespace gts
