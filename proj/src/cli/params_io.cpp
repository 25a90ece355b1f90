#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gts/cli.hpp"

namespace gts::cli {
namespace {

double number_field(const Json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("parameters: missing field '") + key + "'");
    if (!it->is_number()) throw InputError(std::string("parameters: field '") + key + "' is not a number");
    const double v = it->get<double>();
    if (!std::isfinite(v)) throw InputError(std::string("parameters: field '") + key + "' is not finite");
    return v;
}

}  // namespace

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::input: return ExitCode::input_error;
        case ErrorKind::convergence: return ExitCode::not_converged;
        case ErrorKind::numerical: return ExitCode::numerical_error;
    }
    return ExitCode::numerical_error;
}

GtsParams ModelSpec::gts_in_data_units() const {
    if (kind != Kind::gts) throw InputError("parameters describe a GBM model, a GTS model is needed here");
    return unit_scale == 1.0 ? gts : rescale_units(gts, unit_scale);
}

Json to_json(const ModelSpec& m) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    if (m.kind == ModelSpec::Kind::gbm) {
        j["model"] = "gbm";
        j["mu"] = m.gbm.mu;
        j["sigma"] = m.gbm.sigma;
        return j;
    }
    j["model"] = "gts";
    const auto v = m.gts.to_array();
    for (std::size_t i = 0; i < kNumParams; ++i) j[std::string(param_names()[i])] = v[i];
    if (m.unit_scale != 1.0) j["unit_scale"] = m.unit_scale;
    return j;
}

ModelSpec model_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("parameters: expected a JSON object");
    if (auto it = j.find("schema_version"); it != j.end()) {
        if (!it->is_number_integer() || it->get<int>() != kSchemaVersion) {
            throw InputError("parameters: unsupported schema_version " + it->dump());
        }
    }
    ModelSpec m;
    const auto mt = j.find("model");
    if (mt == j.end() || !mt->is_string()) throw InputError("parameters: missing string field 'model'");
    const auto model = mt->get<std::string>();
    if (model == "gbm") {
        m.kind = ModelSpec::Kind::gbm;
        m.gbm.mu = number_field(j, "mu");
        m.gbm.sigma = number_field(j, "sigma");
        m.gbm.validate();
        return m;
    }
    if (model != "gts") throw InputError("parameters: model must be \"gts\" or \"gbm\", got \"" + model + "\"");
    ParamArray v{};
    for (std::size_t i = 0; i < kNumParams; ++i) v[i] = number_field(j, std::string(param_names()[i]).c_str());
    m.gts = GtsParams::from_array(v);
    m.gts.validate();
    if (j.contains("unit_scale")) {
        m.unit_scale = number_field(j, "unit_scale");
        if (!(m.unit_scale > 0.0)) throw InputError("parameters: unit_scale must be positive");
    }
    return m;
}

ModelSpec load_model(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
    try {
        return model_from_json(j);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::input) throw;
        throw InputError(path.string() + ": " + e.what());
    }
}

Json summary_to_json(const SummaryStats& s) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["m"] = s.m;
    j["mean"] = s.mean;
    j["variance"] = s.variance;
    j["skewness"] = s.skewness;
    j["kurtosis"] = s.kurtosis;
    return j;
}

GtsParams parse_init(const std::string& spec) {
    if (spec.find(',') != std::string::npos) {
        std::stringstream ss(spec);
        std::string item;
        std::vector<double> v;
        while (std::getline(ss, item, ',')) {
            char* end = nullptr;
            const double x = std::strtod(item.c_str(), &end);
            if (end == item.c_str() || *end != '\0' || !std::isfinite(x)) {
                throw InputError("--init: cannot parse '" + item + "' as a number");
            }
            v.push_back(x);
        }
        if (v.size() != kNumParams) throw InputError("--init: expected 7 comma-separated values");
        ParamArray a{};
        std::copy(v.begin(), v.end(), a.begin());
        const auto p = GtsParams::from_array(a);
        p.validate();
        return p;
    }
    const auto m = load_model(spec);
    if (m.kind != ModelSpec::Kind::gts) throw InputError("--init: file holds a GBM model");
    return m.gts;
}

fs::path output_dir() {
    if (const char* d = std::getenv("GTSFIT_OUTPUT_DIR"); d != nullptr && *d != '\0') return d;
    return ".";
}

void write_json(const fs::path& path, const Json& j) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace gts::cli
