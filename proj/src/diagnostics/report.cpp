#include "parobs/diagnostics/report.hpp"

#include "parobs/core/serialize.hpp"

#include <algorithm>
#include <cstdio>

namespace parobs {

namespace {

template <class T>
nlohmann::json opt(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json fit_json(const std::optional<ExponentFit>& f) {
    if (!f) return nullptr;
    return {{"exponent", f->exponent},
            {"r_min", f->r_min},
            {"r_max", f->r_max},
            {"residual", f->residual},
            {"points", f->points}};
}

nlohmann::json series_json(const std::vector<SeriesPoint>& s) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& p : s) a.push_back({p.r, p.value});
    return a;
}

}  // namespace

ExponentFit exponent_fit(const LineFit& fit, const std::vector<double>& radii) {
    ExponentFit e;
    e.exponent = fit.slope;
    e.residual = fit.residual;
    e.points = fit.points;
    if (!radii.empty()) {
        e.r_min = *std::min_element(radii.begin(), radii.end());
        e.r_max = *std::max_element(radii.begin(), radii.end());
    }
    return e;
}

const std::vector<std::string>& report_keys() {
    static const std::vector<std::string> keys = {
        "problem",     "utt_min",   "utt_bound",      "pass_margin", "modulus_table", "holder_fit",
        "gradient_fit", "phi_series", "lambda_hat",   "density_series", "c_hat",      "l_hat",
        "growth_fit",  "omega_hat", "rotation_hat",   "blowup_error", "notes"};
    return keys;
}

nlohmann::json report_to_json(const RegularityReport& r) {
    nlohmann::json j;
    j["problem"] = r.problem;
    j["utt_min"] = opt(r.utt_min);
    j["utt_bound"] = opt(r.utt_bound);
    j["pass_margin"] = opt(r.pass_margin);
    j["modulus_table"] = series_json(r.modulus_table);
    j["holder_fit"] = fit_json(r.holder_fit);
    j["gradient_fit"] = fit_json(r.gradient_fit);
    j["phi_series"] = series_json(r.phi_series);
    j["lambda_hat"] = opt(r.lambda_hat);
    j["density_series"] = series_json(r.density_series);
    j["c_hat"] = opt(r.c_hat);
    j["l_hat"] = opt(r.l_hat);
    j["growth_fit"] = fit_json(r.growth_fit);
    j["omega_hat"] = opt(r.omega_hat);
    j["rotation_hat"] = opt(r.rotation_hat);
    j["blowup_error"] = opt(r.blowup_error);
    j["notes"] = r.notes;
    return j;
}

std::string series_to_csv(const std::vector<SeriesPoint>& series, const char* value_name) {
    std::string out = std::string("r,") + value_name + "\n";
    char buf[96];
    for (const auto& p : series) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.r, p.value);
        out += buf;
    }
    return out;
}

void write_report(const std::filesystem::path& dir, const RegularityReport& report) {
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "report.json", report_to_json(report).dump(2) + "\n");
    write_file_atomic(dir / "modulus.csv", series_to_csv(report.modulus_table, "oscillation"));
    write_file_atomic(dir / "density.csv", series_to_csv(report.density_series, "density"));
    write_file_atomic(dir / "phi.csv", series_to_csv(report.phi_series, "phi"));
}

}  // namespace parobs
