#pragma once

#include "parobs/diagnostics/fit.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace parobs {

struct SeriesPoint {
    double r = 0.0;
    double value = 0.0;
};

struct ExponentFit {
    double exponent = 0.0;
    double r_min = 0.0;
    double r_max = 0.0;
    double residual = 0.0;
    int points = 0;
};

ExponentFit exponent_fit(const LineFit& fit, const std::vector<double>& radii);

/// Every quantity a diagnose run can produce. Absent entries serialize as null
/// so the key set is fixed.
struct RegularityReport {
    std::string problem;
    std::optional<double> utt_min, utt_bound, pass_margin;
    std::vector<SeriesPoint> modulus_table;
    std::optional<ExponentFit> holder_fit;
    std::optional<ExponentFit> gradient_fit;
    std::vector<SeriesPoint> phi_series;
    std::optional<double> lambda_hat;
    std::vector<SeriesPoint> density_series;
    std::optional<double> c_hat;
    std::optional<double> l_hat;
    std::optional<ExponentFit> growth_fit;
    std::optional<double> omega_hat, rotation_hat, blowup_error;
    std::vector<std::string> notes;
};

/// Keys always present in report JSON.
const std::vector<std::string>& report_keys();

nlohmann::json report_to_json(const RegularityReport& report);
/// Writes report.json plus modulus.csv, density.csv and phi.csv (r,value) into `dir`.
void write_report(const std::filesystem::path& dir, const RegularityReport& report);
std::string series_to_csv(const std::vector<SeriesPoint>& series, const char* value_name);

}  // namespace parobs
