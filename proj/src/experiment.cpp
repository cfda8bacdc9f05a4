#include "risnoma/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "risnoma/errors.hpp"

namespace risnoma {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "kind",        "n_total",    "n_nu",       "n_fu",         "alpha",       "es",
    "snr_grid_db", "nu_var_db",  "fu_var_db",  "seed",         "min_errors",  "max_trials",
    "workers",     "mode",       "quad_order", "output_path",  "n_values",    "alpha_values",
    "target_bers", "probe_snr_db"};

ExperimentKind parse_kind(const std::string& text) {
    if (text == "analytic") return ExperimentKind::Analytic;
    if (text == "simulate") return ExperimentKind::Simulate;
    if (text == "sweep-n") return ExperimentKind::SweepN;
    if (text == "sweep-alpha") return ExperimentKind::SweepAlpha;
    if (text == "allocate") return ExperimentKind::Allocate;
    if (text == "baseline") return ExperimentKind::Baseline;
    throw ConfigError("kind: unknown value '" + text +
                      "', expected one of analytic, simulate, sweep-n, sweep-alpha, allocate, baseline");
}

double as_real(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path + ": must be finite");
    return v;
}

std::uint64_t as_count(const json& j, const std::string& path, std::uint64_t min_value) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
        throw ConfigError(path + ": expected a nonnegative integer");
    }
    const std::uint64_t v = j.get<std::uint64_t>();
    if (v < min_value) {
        throw ConfigError(path + ": " + std::to_string(v) + " out of range, must be >= " + std::to_string(min_value));
    }
    return v;
}

double as_alpha(const json& j, const std::string& path) {
    const double a = as_real(j, path);
    if (!(a > 0.0 && a < 0.5)) {
        std::ostringstream os;
        os << path << ": " << a << " out of range (0, 0.5)";
        throw ConfigError(os.str());
    }
    return a;
}

std::vector<double> as_real_list(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError(path + ": expected a non-empty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_real(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

void reject_for_kind(const json& doc, const std::string& key, std::string_view kind, const std::string& why) {
    if (doc.contains(key)) {
        throw ConfigError(key + ": not allowed for kind '" + std::string(kind) + "' (" + why + ")");
    }
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string alpha_tag(double alpha) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", alpha);
    return buf;
}

// Rows pairing each grid point with optional simulated and analytic values.
std::vector<CurveRow> build_rows(const SimConfig& cfg, const BerCurve* simulated, bool with_analytic,
                                 SubstitutionMode mode, const QuadratureRule& quad) {
    std::vector<CurveRow> rows;
    for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
        CurveRow row;
        row.snr_db = cfg.snr_grid_db[i];
        if (simulated != nullptr) {
            row.simulated = simulated->points[i];
            if (row.simulated->low_confidence) row.flags.emplace_back("low_confidence");
        }
        if (with_analytic) {
            Diagnostics diag;
            row.analytic = analytic_point(cfg, row.snr_db, mode, quad, &diag);
            if (!diag.empty()) row.flags.emplace_back("analytic_diagnostic");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<CurveRow> build_conventional_rows(const SimConfig& cfg, const BerCurve& simulated, bool with_analytic) {
    std::vector<CurveRow> rows;
    for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
        CurveRow row;
        row.snr_db = cfg.snr_grid_db[i];
        row.simulated = simulated.points[i];
        if (row.simulated->low_confidence) row.flags.emplace_back("low_confidence");
        if (with_analytic) row.analytic = analytic_conventional(cfg, row.snr_db);
        rows.push_back(std::move(row));
    }
    return rows;
}

// Curve view of the rows, preferring simulated values.
BerCurve rows_as_curve(const std::string& label, const std::vector<CurveRow>& rows) {
    BerCurve curve{label, {}};
    for (const CurveRow& row : rows) {
        if (row.simulated) {
            curve.points.push_back(*row.simulated);
        } else if (row.analytic) {
            BerPoint p;
            p.snr_db = row.snr_db;
            p.nu_ber = row.analytic->nu;
            p.fu_ber = row.analytic->fu;
            curve.points.push_back(p);
        }
    }
    return curve;
}

std::string maybe_snr(const BerCurve& curve, double target, User user) {
    try {
        std::ostringstream os;
        os << std::fixed << std::setprecision(2) << snr_at_ber(curve, target, user);
        return os.str();
    } catch (const RangeError&) {
        return "n/a";
    }
}

std::string maybe_gain(const BerCurve& a, const BerCurve& b, double target, User user) {
    try {
        std::ostringstream os;
        os << std::fixed << std::setprecision(2) << gain_at_ber(a, b, target, user);
        return os.str();
    } catch (const RangeError&) {
        return "n/a";
    }
}

struct Emitted {
    std::string label;
    std::vector<CurveRow> rows;
};

}  // namespace

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Analytic: return "analytic";
        case ExperimentKind::Simulate: return "simulate";
        case ExperimentKind::SweepN: return "sweep-n";
        case ExperimentKind::SweepAlpha: return "sweep-alpha";
        case ExperimentKind::Allocate: return "allocate";
        case ExperimentKind::Baseline: return "baseline";
    }
    return "unknown";
}

ExperimentSpec parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    for (const auto& [key, value] : doc.items()) {
        if (!kKnownKeys.contains(key)) throw ConfigError(key + ": unknown key");
    }

    ExperimentSpec spec;
    if (doc.contains("kind")) {
        if (!doc["kind"].is_string()) throw ConfigError("kind: expected a string");
        spec.kind = parse_kind(doc["kind"].get<std::string>());
    }
    const std::string_view kind = to_string(spec.kind);

    switch (spec.kind) {
        case ExperimentKind::Allocate:
            reject_for_kind(doc, "n_nu", kind, "the split is what allocate computes");
            reject_for_kind(doc, "n_fu", kind, "the split is what allocate computes");
            break;
        case ExperimentKind::SweepN:
            reject_for_kind(doc, "n_total", kind, "use n_values");
            reject_for_kind(doc, "n_nu", kind, "sweep-n uses equal splits");
            reject_for_kind(doc, "n_fu", kind, "sweep-n uses equal splits");
            break;
        case ExperimentKind::SweepAlpha:
            reject_for_kind(doc, "alpha", kind, "use alpha_values");
            break;
        case ExperimentKind::Analytic:
            reject_for_kind(doc, "min_errors", kind, "no simulation is run");
            reject_for_kind(doc, "max_trials", kind, "no simulation is run");
            reject_for_kind(doc, "workers", kind, "no simulation is run");
            break;
        default:
            break;
    }
    if (spec.kind != ExperimentKind::SweepN) reject_for_kind(doc, "n_values", kind, "only sweep-n reads it");
    if (spec.kind != ExperimentKind::SweepAlpha) reject_for_kind(doc, "alpha_values", kind, "only sweep-alpha reads it");
    if (spec.kind != ExperimentKind::Allocate) reject_for_kind(doc, "probe_snr_db", kind, "only allocate reads it");

    SimConfig& sim = spec.sim;
    if (doc.contains("alpha")) sim.alpha = as_alpha(doc["alpha"], "alpha");
    if (doc.contains("es")) {
        sim.es = as_real(doc["es"], "es");
        if (!(sim.es > 0.0)) throw ConfigError("es: must be > 0");
    }
    if (doc.contains("snr_grid_db")) {
        sim.snr_grid_db = as_real_list(doc["snr_grid_db"], "snr_grid_db");
        for (std::size_t i = 1; i < sim.snr_grid_db.size(); ++i) {
            if (!(sim.snr_grid_db[i] > sim.snr_grid_db[i - 1])) {
                throw ConfigError("snr_grid_db[" + std::to_string(i) + "]: grid must be strictly increasing");
            }
        }
    }
    if (doc.contains("nu_var_db")) sim.nu_var_db = as_real(doc["nu_var_db"], "nu_var_db");
    if (doc.contains("fu_var_db")) sim.fu_var_db = as_real(doc["fu_var_db"], "fu_var_db");
    if (doc.contains("seed")) sim.seed = as_count(doc["seed"], "seed", 0);
    if (doc.contains("min_errors")) sim.min_errors = as_count(doc["min_errors"], "min_errors", 50);
    if (doc.contains("max_trials")) sim.max_trials = as_count(doc["max_trials"], "max_trials", 10'000);
    if (doc.contains("workers")) sim.workers = static_cast<unsigned>(as_count(doc["workers"], "workers", 1));

    // Element counts: missing values are derived from the others, with an
    // equal split (extra element to the far user) as the default.
    const bool has_total = doc.contains("n_total");
    const bool has_nu = doc.contains("n_nu");
    const bool has_fu = doc.contains("n_fu");
    if (has_total) sim.n_total = as_count(doc["n_total"], "n_total", 2);
    if (has_nu) sim.n_nu = as_count(doc["n_nu"], "n_nu", 1);
    if (has_fu) sim.n_fu = as_count(doc["n_fu"], "n_fu", 1);
    if (!has_total && has_nu && has_fu) {
        sim.n_total = sim.n_nu + sim.n_fu;
    } else if (has_nu && !has_fu) {
        if (sim.n_nu >= sim.n_total) throw ConfigError("n_nu: must be < n_total (" + std::to_string(sim.n_total) + ")");
        sim.n_fu = sim.n_total - sim.n_nu;
    } else if (has_fu && !has_nu) {
        if (sim.n_fu >= sim.n_total) throw ConfigError("n_fu: must be < n_total (" + std::to_string(sim.n_total) + ")");
        sim.n_nu = sim.n_total - sim.n_fu;
    } else if (!has_nu && !has_fu) {
        sim.n_nu = sim.n_total / 2;
        sim.n_fu = sim.n_total - sim.n_nu;
    }
    if (sim.n_nu + sim.n_fu != sim.n_total) {
        throw ConfigError("n_nu + n_fu: " + std::to_string(sim.n_nu) + " + " + std::to_string(sim.n_fu) +
                          " must equal n_total = " + std::to_string(sim.n_total));
    }

    if (doc.contains("mode")) {
        if (!doc["mode"].is_string()) throw ConfigError("mode: expected \"literal\" or \"consistent\"");
        spec.mode = parse_substitution_mode(doc["mode"].get<std::string>());
    }
    if (doc.contains("quad_order")) spec.quad_order = as_count(doc["quad_order"], "quad_order", 2);
    if (doc.contains("output_path")) {
        if (!doc["output_path"].is_string()) throw ConfigError("output_path: expected a string");
        spec.output_path = doc["output_path"].get<std::string>();
    }
    if (doc.contains("n_values")) {
        const json& list = doc["n_values"];
        if (!list.is_array() || list.empty()) throw ConfigError("n_values: expected a non-empty array of integers");
        spec.n_values.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            spec.n_values.push_back(as_count(list[i], "n_values[" + std::to_string(i) + "]", 2));
        }
    }
    if (doc.contains("alpha_values")) {
        const json& list = doc["alpha_values"];
        if (!list.is_array() || list.empty()) throw ConfigError("alpha_values: expected a non-empty array");
        spec.alpha_values.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            spec.alpha_values.push_back(as_alpha(list[i], "alpha_values[" + std::to_string(i) + "]"));
        }
    }
    if (doc.contains("target_bers")) {
        spec.target_bers = as_real_list(doc["target_bers"], "target_bers");
        for (std::size_t i = 0; i < spec.target_bers.size(); ++i) {
            const double t = spec.target_bers[i];
            if (!(t > 0.0 && t < 0.5)) {
                throw ConfigError("target_bers[" + std::to_string(i) + "]: out of range (0, 0.5)");
            }
        }
    }
    if (doc.contains("probe_snr_db")) spec.probe_snr_db = as_real(doc["probe_snr_db"], "probe_snr_db");

    validate_spec(spec);
    return spec;
}

void validate_spec(const ExperimentSpec& spec) {
    spec.sim.validate();
    if (spec.quad_order < 2) throw ConfigError("quad_order: must be >= 2");
}

std::string format_csv(const std::vector<CurveRow>& rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const CurveRow& row : rows) {
        std::vector<std::string> cells;
        cells.push_back(format_real(row.snr_db));
        if (row.simulated) {
            cells.push_back(format_real(row.simulated->nu_ber));
            cells.push_back(format_real(row.simulated->ci95_nu));
            cells.push_back(format_real(row.simulated->fu_ber));
            cells.push_back(format_real(row.simulated->ci95_fu));
        } else {
            cells.insert(cells.end(), 4, "");
        }
        if (row.analytic) {
            cells.push_back(format_real(row.analytic->nu));
            cells.push_back(format_real(row.analytic->fu));
        } else {
            cells.insert(cells.end(), 2, "");
        }
        cells.push_back(row.simulated ? std::to_string(row.simulated->trials) : "");
        cells.push_back(join(row.flags, ';'));
        out += join(cells, ',');
        out += '\n';
    }
    return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<CurveRow>& rows) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    const std::string text = format_csv(rows);
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    file.close();
    if (!file) throw IoError("failed writing " + path.string());
}

ExperimentResult run_experiment(const ExperimentSpec& spec, std::ostream* report) {
    validate_spec(spec);
    std::error_code ec;
    std::filesystem::create_directories(spec.output_path, ec);
    if (ec) throw IoError("cannot create output directory " + spec.output_path.string() + ": " + ec.message());

    const QuadratureRule quad = gauss_legendre_half_pi(spec.quad_order);
    std::vector<Emitted> emitted;
    std::vector<std::string> gain_lines;
    ExperimentResult result;

    auto simulate_with_analytic = [&](const SimConfig& cfg, std::string label) {
        const BerCurve sim = run_sweep(cfg);
        emitted.push_back({std::move(label), build_rows(cfg, &sim, true, spec.mode, quad)});
    };

    switch (spec.kind) {
        case ExperimentKind::Analytic:
            emitted.push_back({"analytic", build_rows(spec.sim, nullptr, true, spec.mode, quad)});
            break;
        case ExperimentKind::Simulate: {
            const BerCurve sim = run_sweep(spec.sim);
            emitted.push_back({"simulate", build_rows(spec.sim, &sim, false, spec.mode, quad)});
            break;
        }
        case ExperimentKind::SweepN: {
            for (std::size_t n : spec.n_values) {
                SimConfig cfg = spec.sim;
                cfg.n_total = n;
                cfg.n_nu = n / 2;
                cfg.n_fu = n - n / 2;
                simulate_with_analytic(cfg, "sweep_n_N" + std::to_string(n));
            }
            for (std::size_t i = 0; i + 1 < emitted.size(); ++i) {
                const BerCurve a = rows_as_curve(emitted[i].label, emitted[i].rows);
                const BerCurve b = rows_as_curve(emitted[i + 1].label, emitted[i + 1].rows);
                for (double t : spec.target_bers) {
                    std::ostringstream os;
                    os << "gain N=" << spec.n_values[i] << " -> N=" << spec.n_values[i + 1] << " at BER " << t
                       << ": nu " << maybe_gain(b, a, t, User::Near) << " dB, fu " << maybe_gain(b, a, t, User::Far)
                       << " dB";
                    gain_lines.push_back(os.str());
                }
            }
            break;
        }
        case ExperimentKind::SweepAlpha:
            for (double alpha : spec.alpha_values) {
                SimConfig cfg = spec.sim;
                cfg.alpha = alpha;
                simulate_with_analytic(cfg, "sweep_alpha_" + alpha_tag(alpha));
            }
            break;
        case ExperimentKind::Allocate: {
            const auto [n_nu, n_fu] = equalize_allocation(spec.sim, spec.probe_snr_db, spec.mode, quad);
            SimConfig equal = spec.sim;
            equal.n_nu = spec.sim.n_total / 2;
            equal.n_fu = spec.sim.n_total - equal.n_nu;
            SimConfig best = spec.sim;
            best.n_nu = n_nu;
            best.n_fu = n_fu;
            const AnalyticBer at_equal = analytic_point(equal, spec.probe_snr_db, spec.mode, quad);
            const AnalyticBer at_best = analytic_point(best, spec.probe_snr_db, spec.mode, quad);
            std::ostringstream os;
            os << "allocation at " << spec.probe_snr_db << " dB: n_nu=" << n_nu << " n_fu=" << n_fu
               << " |log10 gap| " << std::abs(std::log10(at_best.nu) - std::log10(at_best.fu)) << " (equal split "
               << equal.n_nu << "/" << equal.n_fu << ": " << std::abs(std::log10(at_equal.nu) - std::log10(at_equal.fu))
               << ")";
            gain_lines.push_back(os.str());
            simulate_with_analytic(equal, "allocate_equal");
            simulate_with_analytic(best, "allocate_best");
            break;
        }
        case ExperimentKind::Baseline: {
            const BerCurve rayleigh = run_conventional_baseline(spec.sim, true);
            const BerCurve awgn = run_conventional_baseline(spec.sim, false);
            simulate_with_analytic(spec.sim, "baseline_ris");
            emitted.push_back({"baseline_rayleigh", build_conventional_rows(spec.sim, rayleigh, false)});
            emitted.push_back({"baseline_awgn", build_conventional_rows(spec.sim, awgn, true)});
            const BerCurve ris = rows_as_curve("baseline_ris", emitted[0].rows);
            for (double t : spec.target_bers) {
                std::ostringstream os;
                os << "RIS gain at BER " << t << ": vs rayleigh nu " << maybe_gain(ris, rayleigh, t, User::Near)
                   << " dB, fu " << maybe_gain(ris, rayleigh, t, User::Far) << " dB; vs awgn nu "
                   << maybe_gain(ris, awgn, t, User::Near) << " dB, fu " << maybe_gain(ris, awgn, t, User::Far)
                   << " dB";
                gain_lines.push_back(os.str());
            }
            break;
        }
    }

    for (const Emitted& e : emitted) {
        const std::filesystem::path path = spec.output_path / (e.label + ".csv");
        write_csv(path, e.rows);
        result.csv_files.push_back(path);
    }

    if (report != nullptr) {
        std::ostream& out = *report;
        out << "experiment: " << to_string(spec.kind) << " (mode " << to_string(spec.mode) << ", seed "
            << spec.sim.seed << ")\n";
        for (const Emitted& e : emitted) {
            const BerCurve curve = rows_as_curve(e.label, e.rows);
            std::size_t flagged = 0;
            for (const CurveRow& row : e.rows) flagged += row.flags.empty() ? 0 : 1;
            out << "  " << std::left << std::setw(22) << e.label << std::right;
            for (double t : spec.target_bers) {
                out << "  SNR@" << t << " nu " << maybe_snr(curve, t, User::Near) << " fu "
                    << maybe_snr(curve, t, User::Far);
            }
            if (flagged) out << "  (" << flagged << " flagged rows)";
            out << '\n';
        }
        for (const std::string& line : gain_lines) out << "  " << line << '\n';
        for (const auto& path : result.csv_files) out << "  wrote " << path.string() << '\n';
    }
    return result;
}

}  // namespace risnoma
