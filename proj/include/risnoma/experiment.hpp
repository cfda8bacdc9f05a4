#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "risnoma/analytic_ber.hpp"
#include "risnoma/monte_carlo.hpp"

namespace risnoma {

enum class ExperimentKind { Analytic, Simulate, SweepN, SweepAlpha, Allocate, Baseline };

std::string_view to_string(ExperimentKind kind);

/// A validated experiment request with every default filled in.
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::Simulate;
    SimConfig sim;
    SubstitutionMode mode = SubstitutionMode::ConsistentSnr;
    std::filesystem::path output_path = "out";
    std::size_t quad_order = kDefaultQuadratureOrder;
    std::vector<std::size_t> n_values = {8, 16, 32, 64};  // sweep-n
    std::vector<double> alpha_values = {0.1, 0.2, 0.3, 0.4};  // sweep-alpha
    std::vector<double> target_bers = {1e-3, 1e-4};  // gains report
    double probe_snr_db = -10.0;  // allocate
};

/// Parses the JSON configuration document. Throws ConfigError with the
/// offending key and its legal range.
ExperimentSpec parse_config(std::string_view text);

/// Re-checks cross-field constraints after command-line overrides.
void validate_spec(const ExperimentSpec& spec);

/// One CSV row: a simulated point, an analytic pair, or both.
struct CurveRow {
    double snr_db = 0.0;
    std::optional<BerPoint> simulated;
    std::optional<AnalyticBer> analytic;
    std::vector<std::string> flags;
};

inline constexpr std::string_view kCsvHeader =
    "snr_db,nu_ber,nu_ci95,fu_ber,fu_ci95,nu_ber_analytic,fu_ber_analytic,trials,flags";

/// Header plus one LF-terminated line per row; reals use 17 significant digits.
std::string format_csv(const std::vector<CurveRow>& rows);

/// Writes `format_csv(rows)` to `path`. Throws IoError.
void write_csv(const std::filesystem::path& path, const std::vector<CurveRow>& rows);

struct ExperimentResult {
    std::vector<std::filesystem::path> csv_files;
    bool all_points_completed = true;
};

/// Runs the experiment, writing CSVs under spec.output_path and a summary
/// to `report` (pass nullptr for quiet operation).
ExperimentResult run_experiment(const ExperimentSpec& spec, std::ostream* report);

}  // namespace risnoma
