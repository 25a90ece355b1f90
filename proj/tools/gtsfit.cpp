// gtsfit: fit generalized tempered stable laws to daily returns and test the fit.
//
//   gtsfit summarize prices.csv --prices
//   gtsfit fit returns.csv --trace trace.csv --out params.json
//   gtsfit gof --binned table.csv --params params.json
//   gtsfit plot returns.csv --params params.json --bins 50
//   gtsfit simulate --params params.json --n 3000 --seed 42
//   gtsfit recenter --params params.json --target 0.18
//   gtsfit moments --params params.json
//   gtsfit report returns.csv
//
// Exit codes: 0 ok, 2 bad input, 3 no convergence, 4 numerical failure.
// Files without an explicit path go to $GTSFIT_OUTPUT_DIR (default ".").

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "gts/cli.hpp"

namespace {

using gts::cli::Json;

// --config file.json: top-level keys set global flags, an object under a
// subcommand name sets that subcommand's flags.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        throw CLI::ConfigError("writing configuration files is not supported");
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
        Json j;
        try {
            j = Json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw CLI::ConfigError(std::string("config: ") + e.what());
        }
        if (!j.is_object()) throw CLI::ConfigError("config: expected a JSON object");
        std::vector<CLI::ConfigItem> items;
        collect(j, {}, items);
        return items;
    }

private:
    static std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

    static void collect(const Json& obj, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, v] : obj.items()) {
            if (v.is_object()) {
                auto p = parents;
                p.push_back(key);
                collect(v, p, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (v.is_array()) {
                for (const auto& e : v) item.inputs.push_back(scalar(e));
            } else if (v.is_boolean()) {
                item.inputs.push_back(v.get<bool>() ? "true" : "false");
            } else {
                item.inputs.push_back(scalar(v));
            }
            items.push_back(std::move(item));
        }
    }
};

void add_data_options(CLI::App* sub, gts::cli::DataSource& d) {
    sub->add_option("input", d.path, "CSV of returns (or prices with --prices)")->required();
    sub->add_flag("--prices", d.prices, "Input holds dated prices; convert to percent log-returns");
    sub->add_option("--date-column", d.date_column, "Date column in price mode")->capture_default_str();
    sub->add_option("--price-column", d.price_column, "Price column in price mode")->capture_default_str();
    sub->add_option("--column", d.return_column, "Return column (default: 'return' or the only column)");
    sub->add_option("--outlier", d.outliers, "none, abs:<c> or sigma:<k>")->capture_default_str();
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    namespace cli = gts::cli;
    CLI::App app{"Generalized tempered stable fitting and Kolmogorov-Smirnov testing"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file with default flag values");

    cli::DataSource summarize_src;
    auto* summarize = app.add_subcommand("summarize", "Sample size, mean, variance, skewness and kurtosis");
    add_data_options(summarize, summarize_src);

    cli::FitCommand fit_cmd;
    std::string trace_path;
    std::string fit_out;
    auto* fit = app.add_subcommand("fit", "Maximum likelihood fit");
    add_data_options(fit, fit_cmd.data);
    fit->add_option("--model", fit_cmd.model, "gts or gbm")->capture_default_str();
    fit->add_option("--init", fit_cmd.init, "Start: 7 comma-separated values or a parameters file");
    fit->add_option("--tol", fit_cmd.tol, "Stop when the score norm is below this")->capture_default_str();
    fit->add_option("--max-iter", fit_cmd.max_iter, "Newton iteration limit")->capture_default_str();
    fit->add_option("--step", fit_cmd.step, "raw or safeguarded")->capture_default_str();
    fit->add_option("--unit-scale", fit_cmd.unit_scale, "Divide returns by this before fitting")->capture_default_str();
    fit->add_option("--trace", trace_path, "Write the iteration trace CSV here");
    fit->add_option("--out", fit_out, "Parameters JSON (default fit.json)");

    cli::GofCommand gof_cmd;
    cli::DataSource gof_src;
    std::string gof_binned;
    std::string gof_params;
    auto* gof = app.add_subcommand("gof", "Kolmogorov-Smirnov statistic and exact p-value");
    gof->add_option("input", gof_src.path, "CSV of returns");
    gof->add_option("--column", gof_src.return_column, "Return column");
    gof->add_option("--outlier", gof_src.outliers, "none, abs:<c> or sigma:<k>");
    gof->add_option("--binned", gof_binned, "Binned table with columns x_j,n_j,F_n[,F]");
    gof->add_option("--params", gof_params, "Parameters JSON");
    gof->add_flag("--table-cdf", gof_cmd.table_cdf, "Use the table's F column as the model CDF");
    gof->add_option("--m", gof_cmd.m_override, "Sample size used for the p-value");

    cli::PlotCommand plot_cmd;
    std::string plot_gbm;
    std::string plot_csv;
    std::string plot_svg;
    auto* plot = app.add_subcommand("plot", "Histogram against GTS and GBM densities (CSV and SVG)");
    add_data_options(plot, plot_cmd.data);
    plot->add_option("--params", plot_cmd.params, "GTS parameters JSON")->required();
    plot->add_option("--gbm-params", plot_gbm, "GBM parameters JSON (default: fitted to the data)");
    plot->add_option("--bins", plot_cmd.bins, "Number of histogram bins")->capture_default_str();
    plot->add_option("--csv", plot_csv, "CSV output (default plot.csv)");
    plot->add_option("--svg", plot_svg, "SVG output (default plot.svg)");

    cli::SimulateCommand sim_cmd;
    std::string sim_out;
    auto* simulate = app.add_subcommand("simulate", "Draw returns from a GTS law");
    simulate->add_option("--params", sim_cmd.params, "GTS parameters JSON")->required();
    simulate->add_option("--n", sim_cmd.n, "Number of draws")->capture_default_str();
    simulate->add_option("--seed", sim_cmd.seed, "Generator seed")->capture_default_str();
    simulate->add_option("--out", sim_out, "Samples CSV (default samples.csv)");

    cli::RecenterCommand rec_cmd;
    std::string rec_out;
    auto* recenter = app.add_subcommand("recenter", "Shift mu so the mean equals a target");
    recenter->add_option("--params", rec_cmd.params, "GTS parameters JSON")->required();
    recenter->add_option("--target", rec_cmd.target_mean, "Target mean in data units")->required();
    recenter->add_option("--out", rec_out, "Parameters JSON (default recentered.json)");

    std::string moments_params;
    auto* moments = app.add_subcommand("moments", "Mean, variance, skewness and kurtosis of a fitted law");
    moments->add_option("--params", moments_params, "Parameters JSON")->required();

    cli::ReportCommand report_cmd;
    std::string report_out;
    auto* report = app.add_subcommand("report", "Summary, GBM and GTS fits, moments and KS tests");
    add_data_options(report, report_cmd.data);
    report->add_option("--step", report_cmd.step, "raw or safeguarded")->capture_default_str();
    report->add_option("--unit-scale", report_cmd.unit_scale, "Divide returns by this before fitting")
        ->capture_default_str();
    report->add_option("--out", report_out, "Report JSON (default report.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::ExitCode::input_error;
    }

    auto opt_path = [](const std::string& s) -> std::optional<cli::fs::path> {
        if (s.empty()) return std::nullopt;
        return cli::fs::path(s);
    };

    try {
        if (*summarize) {
            print(cli::cmd_summarize(summarize_src));
        } else if (*fit) {
            fit_cmd.trace = opt_path(trace_path);
            fit_cmd.out = opt_path(fit_out);
            const auto r = cli::cmd_fit(fit_cmd);
            print(r.doc);
            if (r.exit != 0) std::cerr << "gtsfit: fit did not converge\n";
            return r.exit;
        } else if (*gof) {
            if (!gof_src.path.empty()) gof_cmd.data = gof_src;
            gof_cmd.binned = opt_path(gof_binned);
            gof_cmd.params = opt_path(gof_params);
            print(cli::cmd_gof(gof_cmd));
        } else if (*plot) {
            plot_cmd.gbm_params = opt_path(plot_gbm);
            plot_cmd.csv_out = opt_path(plot_csv);
            plot_cmd.svg_out = opt_path(plot_svg);
            print(cli::cmd_plot(plot_cmd));
        } else if (*simulate) {
            sim_cmd.out = opt_path(sim_out);
            print(cli::cmd_simulate(sim_cmd));
        } else if (*recenter) {
            rec_cmd.out = opt_path(rec_out);
            print(cli::cmd_recenter(rec_cmd));
        } else if (*moments) {
            print(cli::cmd_moments(moments_params));
        } else if (*report) {
            report_cmd.out = opt_path(report_out);
            const auto r = cli::cmd_report(report_cmd);
            print(r.doc);
            if (r.exit != 0) std::cerr << "gtsfit: fit did not converge\n";
            return r.exit;
        }
    } catch (const gts::Error& e) {
        std::cerr << "gtsfit: " << e.what() << '\n';
        return cli::exit_code(e.kind());
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "gtsfit: " << e.what() << '\n';
        return cli::ExitCode::input_error;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "gtsfit: " << e.what() << '\n';
        return cli::ExitCode::input_error;
    } catch (const std::exception& e) {
        std::cerr << "gtsfit: internal error: " << e.what() << '\n';
        return cli::ExitCode::numerical_error;
    }
    return 0;
}
