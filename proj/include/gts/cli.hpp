#pragma once

// Commands behind the gtsfit executable. Each returns the JSON document the
// executable prints; files are written as a side effect. Errors surface as
// gts::Error subclasses and map onto exit codes through exit_code().

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "gts/data_io.hpp"
#include "gts/errors.hpp"
#include "gts/mle.hpp"
#include "gts/model.hpp"

namespace gts::cli {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { ok = 0, input_error = 2, not_converged = 3, numerical_error = 4 };
int exit_code(ErrorKind kind) noexcept;

// Parameters file. unit_scale is the number of data units (percent) per
// model unit: a law fitted to returns divided by 10 carries unit_scale 10.
struct ModelSpec {
    enum class Kind { gts, gbm };
    Kind kind = Kind::gts;
    GtsParams gts;
    GbmParams gbm;
    double unit_scale = 1.0;

    // GTS law of the returns in data units.
    GtsParams gts_in_data_units() const;
};

Json to_json(const ModelSpec& m);
ModelSpec model_from_json(const Json& j);
ModelSpec load_model(const fs::path& path);
Json summary_to_json(const SummaryStats& s);

// "mu,beta+,beta-,alpha+,alpha-,lambda+,lambda-" or a parameters file.
GtsParams parse_init(const std::string& spec);

// Output directory for files not given explicitly: $GTSFIT_OUTPUT_DIR, else ".".
fs::path output_dir();
void write_json(const fs::path& path, const Json& j);

struct DataSource {
    fs::path path;
    // Prices mode reads date and price columns and converts to log-returns;
    // otherwise the file holds returns in one column.
    bool prices = false;
    std::string date_column = "Date";
    std::string price_column = "Adj Close";
    std::string return_column;  // empty: auto
    std::string outliers = "none";
};

struct LoadedReturns {
    std::vector<double> values;
    std::size_t removed = 0;
};
LoadedReturns load_data(const DataSource& src);

Json cmd_summarize(const DataSource& src);

struct FitCommand {
    DataSource data;
    std::string model = "gts";
    std::string init;  // empty: default start
    double tol = 1e-9;
    int max_iter = 100;
    std::string step = "raw";  // raw | safeguarded
    // Returns are divided by this before fitting; the result carries it.
    double unit_scale = 1.0;
    std::optional<fs::path> trace;
    std::optional<fs::path> out;
};

struct FitOutcome {
    Json doc;
    int exit = ExitCode::ok;
};
FitOutcome cmd_fit(const FitCommand& c);

struct GofCommand {
    std::optional<DataSource> data;   // raw returns
    std::optional<fs::path> binned;   // binned table with x_j, n_j, F_n, F columns
    std::optional<fs::path> params;   // model file
    bool table_cdf = false;           // use the table's F column as the model CDF
    std::size_t m_override = 0;
};
Json cmd_gof(const GofCommand& c);

struct PlotCommand {
    DataSource data;
    fs::path params;
    std::optional<fs::path> gbm_params;  // default: fitted to the data
    std::size_t bins = 50;
    std::optional<fs::path> csv_out;
    std::optional<fs::path> svg_out;
};
Json cmd_plot(const PlotCommand& c);

struct SimulateCommand {
    fs::path params;
    std::size_t n = 1000;
    std::uint64_t seed = 1;
    std::optional<fs::path> out;
};
Json cmd_simulate(const SimulateCommand& c);

struct RecenterCommand {
    fs::path params;
    double target_mean = 0.0;  // data units
    std::optional<fs::path> out;
};
Json cmd_recenter(const RecenterCommand& c);
// The parameter change itself: mu shifted so the mean in data units is target.
ModelSpec recenter(const ModelSpec& m, double target_mean);

Json cmd_moments(const fs::path& params);

struct ReportCommand {
    DataSource data;
    std::string step = "raw";
    double unit_scale = 1.0;
    std::optional<fs::path> out;
};
// Summary statistics, GBM and GTS fits, cumulant moments and KS tests in one
// document.
FitOutcome cmd_report(const ReportCommand& c);

}  // namespace gts::cli
