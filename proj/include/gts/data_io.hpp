#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gts {

using Date = std::chrono::year_month_day;

// YYYY-MM-DD, optionally followed by a time part ("T..." or " ...").
Date parse_date(std::string_view s);
std::string format_date(const Date& d);

struct PriceSeries {
    std::vector<Date> dates;  // strictly increasing
    std::vector<double> prices;

    std::size_t size() const noexcept { return prices.size(); }
};

// Rows are sorted by date; duplicate dates and non-positive prices are
// rejected with the offending row number.
PriceSeries load_prices(const std::filesystem::path& path, std::string_view date_column = "Date",
                        std::string_view price_column = "Adj Close");

struct ReturnSeries {
    std::vector<double> values;  // percent
    std::vector<Date> dates;     // date of the later price; empty if unknown
};

// 100 ln(S_j / S_{j-1}).
ReturnSeries log_returns(const PriceSeries& s);

// One numeric column. With an empty name the file must have exactly one
// column, or a column named "return".
ReturnSeries load_returns(const std::filesystem::path& path, std::string_view column = {});

struct OutlierPolicy {
    enum class Kind { none, abs_threshold, sigma_multiple };
    Kind kind = Kind::none;
    double value = 0.0;

    // "none", "abs:<c>" or "sigma:<k>".
    static OutlierPolicy parse(std::string_view spec);
};

struct OutlierResult {
    ReturnSeries kept;
    std::vector<std::size_t> removed;  // indices into the input
};

// abs_threshold drops |y| > c; sigma_multiple drops |y - mean| > k sd with
// mean and sd (denominator m) taken once from the full series.
OutlierResult remove_outliers(const ReturnSeries& r, const OutlierPolicy& policy);

struct SummaryStats {
    std::size_t m = 0;
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;  // m4 / m2^2
};

// Central moments with denominator m.
SummaryStats summary_stats(const std::vector<double>& values);

}  // namespace gts
