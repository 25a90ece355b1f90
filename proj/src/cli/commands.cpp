#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "gts/cli.hpp"
#include "gts/frft.hpp"
#include "gts/gof.hpp"
#include "gts/sampler.hpp"
#include "svg.hpp"

namespace gts::cli {
namespace {

StepPolicy parse_step(const std::string& s) {
    if (s == "raw") return StepPolicy::raw_newton;
    if (s == "safeguarded") return StepPolicy::safeguarded;
    throw InputError("--step must be raw or safeguarded, got '" + s + "'");
}

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out.precision(std::numeric_limits<double>::max_digits10);
    return out;
}

const char* to_string(KsComponent c) { return c == KsComponent::previous ? "previous" : "current"; }

Json ks_to_json(const KsReport& r) {
    Json j;
    j["m"] = r.m;
    j["d"] = r.d;
    j["p_value"] = r.p_value;
    j["sup_at"] = r.sup_at;
    j["component"] = to_string(r.component);
    j["sup_previous"] = r.sup_previous;
    j["sup_current"] = r.sup_current;
    return j;
}

double gbm_log_likelihood(const GbmParams& g, std::span<const double> data) {
    double s = 0.0;
    for (double x : data) s += std::log(gbm_density(g, x));
    return s;
}

// KS test of a model against a raw sample in data units.
KsReport ks_against(const ModelSpec& model, std::vector<double> data) {
    const auto e = EmpiricalDistribution::from_samples(std::move(data));
    if (model.kind == ModelSpec::Kind::gbm) {
        const auto g = model.gbm;
        return ks_test(ks_statistic([&](double x) { return gbm_cdf(g, x); }, e));
    }
    const auto p = model.gts_in_data_units();
    return ks_test(ks_statistic(cdf_field(p, grid_for_data(p, e.points())), e));
}

Json moments_json(const MomentStats& s) {
    Json j;
    j["mean"] = s.mean;
    j["variance"] = s.variance;
    j["skewness"] = s.skewness;
    j["kurtosis"] = s.kurtosis;
    return j;
}

Json fit_section(const FitResult& r, std::size_t m, StepPolicy step) {
    Json f;
    f["status"] = to_string(r.status);
    f["converged"] = r.converged();
    f["message"] = r.message;
    f["step_policy"] = to_string(step);
    f["m"] = m;
    f["iterations"] = r.trace.rows.empty() ? 0 : r.trace.rows.back().iteration;
    f["log_ml"] = r.log_ml;
    f["grad_norm"] = r.score.norm();
    f["max_eigenvalue"] = r.trace.rows.empty() ? 0.0 : r.trace.rows.back().max_eigenvalue;
    try {
        const Matrix7 cov = parameter_covariance(r.hessian);
        Json se;
        for (std::size_t i = 0; i < kNumParams; ++i) {
            se[std::string(param_names()[i])] = std::sqrt(cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
        }
        f["std_errors"] = se;
    } catch (const NumericalError&) {
        f["std_errors"] = nullptr;
    }
    return f;
}

struct GtsFitRun {
    FitResult result;
    ModelSpec model;
    Json doc;
};

GtsFitRun run_gts_fit(const std::vector<double>& data, const FitOptions& opts, double unit_scale,
                      const std::optional<fs::path>& trace) {
    if (!(unit_scale > 0.0) || !std::isfinite(unit_scale)) throw InputError("--unit-scale must be positive");
    std::vector<double> scaled = data;
    if (unit_scale != 1.0) {
        for (double& x : scaled) x /= unit_scale;
    }
    GtsFitRun run;
    run.result = fit(scaled, opts);
    if (trace) {
        auto out = open_out(*trace);
        run.result.trace.write_csv(out);
    }
    run.model.kind = ModelSpec::Kind::gts;
    run.model.gts = run.result.params;
    run.model.unit_scale = unit_scale;
    run.doc = to_json(run.model);
    run.doc["fit"] = fit_section(run.result, data.size(), opts.step_policy);
    return run;
}

int fit_exit(const FitResult& r) {
    if (r.converged()) return ExitCode::ok;
    return r.status == FitStatus::numerical_failure ? ExitCode::numerical_error : ExitCode::not_converged;
}

}  // namespace

LoadedReturns load_data(const DataSource& src) {
    const auto policy = OutlierPolicy::parse(src.outliers);
    ReturnSeries r = src.prices ? log_returns(load_prices(src.path, src.date_column, src.price_column))
                                : load_returns(src.path, src.return_column);
    auto filtered = remove_outliers(r, policy);
    return {std::move(filtered.kept.values), filtered.removed.size()};
}

Json cmd_summarize(const DataSource& src) {
    const auto data = load_data(src);
    Json j = summary_to_json(summary_stats(data.values));
    j["outliers_removed"] = data.removed;
    return j;
}

FitOutcome cmd_fit(const FitCommand& c) {
    if (c.model != "gts" && c.model != "gbm") throw InputError("--model must be gts or gbm, got '" + c.model + "'");
    FitOptions opts;
    if (!c.init.empty()) opts.init = parse_init(c.init);
    opts.tol_grad = c.tol;
    opts.max_iter = c.max_iter;
    opts.step_policy = parse_step(c.step);
    opts.validate();
    const auto data = load_data(c.data);

    FitOutcome out;
    if (c.model == "gbm") {
        ModelSpec m;
        m.kind = ModelSpec::Kind::gbm;
        m.gbm = fit_gbm(data.values);
        out.doc = to_json(m);
        out.doc["fit"] = {{"m", data.values.size()}, {"log_ml", gbm_log_likelihood(m.gbm, data.values)}};
    } else {
        auto run = run_gts_fit(data.values, opts, c.unit_scale, c.trace);
        out.doc = std::move(run.doc);
        out.exit = fit_exit(run.result);
    }
    write_json(c.out.value_or(output_dir() / "fit.json"), out.doc);
    return out;
}

Json cmd_gof(const GofCommand& c) {
    if (c.binned.has_value() == c.data.has_value()) throw InputError("gof: give either a returns file or --binned");
    if (c.table_cdf && !c.binned) throw InputError("--table-cdf needs --binned");
    if (!c.table_cdf && !c.params) throw InputError("gof: --params is required");
    std::optional<ModelSpec> model;
    if (c.params) model = load_model(*c.params);

    Json j;
    j["schema_version"] = kSchemaVersion;
    KsReport r;
    if (c.binned) {
        const auto table = load_binned_table(*c.binned);
        const auto e = table.empirical();
        if (c.table_cdf) {
            if (table.f.empty()) throw InputError(c.binned->string() + ": no F column");
            r = ks_statistic(table.f, e);
            j["model_cdf"] = "table";
        } else if (model->kind == ModelSpec::Kind::gbm) {
            const auto g = model->gbm;
            r = ks_statistic([&](double x) { return gbm_cdf(g, x); }, e);
            j["model_cdf"] = "gbm";
        } else {
            const auto p = model->gts_in_data_units();
            r = ks_statistic(cdf_field(p, grid_for_data(p, table.x)), e);
            j["model_cdf"] = "gts";
        }
        j["mode"] = "binned";
    } else {
        auto data = load_data(*c.data);
        r = ks_against(*model, std::move(data.values));
        j["mode"] = "sample";
        j["model_cdf"] = model->kind == ModelSpec::Kind::gbm ? "gbm" : "gts";
    }
    if (c.m_override > 0) r.m = c.m_override;
    r = ks_test(r);
    j.update(ks_to_json(r));
    return j;
}

Json cmd_plot(const PlotCommand& c) {
    if (c.bins < 2) throw InputError("--bins must be at least 2");
    const auto model = load_model(c.params);
    const auto p = model.gts_in_data_units();
    const auto data = load_data(c.data).values;
    GbmParams g = c.gbm_params ? [&] {
        const auto gm = load_model(*c.gbm_params);
        if (gm.kind != ModelSpec::Kind::gbm) throw InputError("--gbm-params: file does not hold a GBM model");
        return gm.gbm;
    }()
                               : fit_gbm(data);

    const auto [lo_it, hi_it] = std::minmax_element(data.begin(), data.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) throw InputError("plot: data has no spread");
    const double width = (hi - lo) / static_cast<double>(c.bins);
    std::vector<std::size_t> counts(c.bins, 0);
    for (double x : data) {
        auto b = static_cast<std::size_t>((x - lo) / width);
        counts[std::min(b, c.bins - 1)] += 1;
    }
    const auto dens = density_field(p, grid_for_data(p, data));
    const double m = static_cast<double>(data.size());
    std::vector<DensityRow> rows(c.bins);
    for (std::size_t i = 0; i < c.bins; ++i) {
        auto& r = rows[i];
        r.center = lo + (static_cast<double>(i) + 0.5) * width;
        r.empirical = static_cast<double>(counts[i]) / (m * width);
        r.gts = interpolate(dens, r.center);
        r.gbm = gbm_density(g, r.center);
    }

    const auto csv_path = c.csv_out.value_or(output_dir() / "plot.csv");
    const auto svg_path = c.svg_out.value_or(output_dir() / "plot.svg");
    {
        auto out = open_out(csv_path);
        out << "bin_center,empirical_density,gts_density,gbm_density\n";
        for (const auto& r : rows) out << r.center << ',' << r.empirical << ',' << r.gts << ',' << r.gbm << '\n';
    }
    {
        auto out = open_out(svg_path);
        write_density_svg(out, rows, width, "Daily return: histogram, GTS and GBM densities");
    }

    auto trapezoid = [&](auto get) {
        double s = 0.0;
        for (std::size_t i = 1; i < rows.size(); ++i) s += 0.5 * (get(rows[i]) + get(rows[i - 1])) * width;
        return s;
    };
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["bins"] = c.bins;
    j["bin_width"] = width;
    j["csv"] = csv_path.string();
    j["svg"] = svg_path.string();
    j["integral"] = {{"empirical", trapezoid([](const DensityRow& r) { return r.empirical; })},
                     {"gts", trapezoid([](const DensityRow& r) { return r.gts; })},
                     {"gbm", trapezoid([](const DensityRow& r) { return r.gbm; })}};
    return j;
}

Json cmd_simulate(const SimulateCommand& c) {
    if (c.n == 0) throw InputError("--n must be positive");
    const auto model = load_model(c.params);
    if (model.kind != ModelSpec::Kind::gts) throw InputError("simulate: needs GTS parameters");
    auto draws = sample_gts(model.gts, SampleConfig{c.n, c.seed, std::nullopt});
    for (double& x : draws) x *= model.unit_scale;

    const auto path = c.out.value_or(output_dir() / "samples.csv");
    auto out = open_out(path);
    out << "return\n";
    for (double x : draws) out << x << '\n';

    Json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = c.n;
    j["seed"] = c.seed;
    j["output"] = path.string();
    return j;
}

ModelSpec recenter(const ModelSpec& m, double target_mean) {
    if (m.kind != ModelSpec::Kind::gts) throw InputError("recenter: needs GTS parameters");
    if (!std::isfinite(target_mean)) throw InputError("recenter: target mean must be finite");
    ModelSpec r = m;
    r.gts.mu += target_mean / m.unit_scale - cumulant(m.gts, 1);
    return r;
}

Json cmd_recenter(const RecenterCommand& c) {
    const auto r = recenter(load_model(c.params), c.target_mean);
    const Json j = to_json(r);
    write_json(c.out.value_or(output_dir() / "recentered.json"), j);
    return j;
}

Json cmd_moments(const fs::path& params) {
    const auto model = load_model(params);
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["model"] = model.kind == ModelSpec::Kind::gbm ? "gbm" : "gts";
    if (model.kind == ModelSpec::Kind::gbm) {
        j.update(moments_json({model.gbm.mu, model.gbm.sigma * model.gbm.sigma, 0.0, 3.0}));
        return j;
    }
    const auto p = model.gts_in_data_units();
    j.update(moments_json(moment_stats(p)));
    Json k = Json::array();
    for (int i = 1; i <= 4; ++i) k.push_back(cumulant(p, i));
    j["cumulants"] = k;
    return j;
}

FitOutcome cmd_report(const ReportCommand& c) {
    FitOptions opts;
    opts.step_policy = parse_step(c.step);
    const auto data = load_data(c.data);

    FitOutcome out;
    Json& j = out.doc;
    j["schema_version"] = kSchemaVersion;
    j["summary"] = summary_to_json(summary_stats(data.values));
    j["summary"]["outliers_removed"] = data.removed;

    ModelSpec gbm;
    gbm.kind = ModelSpec::Kind::gbm;
    gbm.gbm = fit_gbm(data.values);
    j["gbm"] = to_json(gbm);
    j["gbm"]["log_ml"] = gbm_log_likelihood(gbm.gbm, data.values);

    auto run = run_gts_fit(data.values, opts, c.unit_scale, std::nullopt);
    j["gts"] = run.doc;
    if (run.result.converged()) {
        j["gts_moments"] = moments_json(moment_stats(run.model.gts_in_data_units()));
        j["ks"] = {{"gts", ks_to_json(ks_against(run.model, data.values))},
                   {"gbm", ks_to_json(ks_against(gbm, data.values))}};
    } else {
        out.exit = fit_exit(run.result);
        j["ks"] = {{"gbm", ks_to_json(ks_against(gbm, data.values))}};
    }
    write_json(c.out.value_or(output_dir() / "report.json"), j);
    return out;
}

}  // namespace gts::cli
