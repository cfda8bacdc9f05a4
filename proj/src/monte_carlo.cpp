#include "risnoma/monte_carlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <thread>

#include "risnoma/errors.hpp"
#include "risnoma/noma_phy.hpp"

namespace risnoma {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct ChunkCounts {
    std::uint64_t trials = 0;
    std::uint64_t nu_errors = 0;
    std::uint64_t fu_errors = 0;
};

void validate_common(const SimConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 0.5)) {
        throw ConfigError("alpha: must lie in (0, 0.5), got " + std::to_string(cfg.alpha));
    }
    if (!(cfg.es > 0.0) || !std::isfinite(cfg.es)) throw ConfigError("es: must be positive and finite");
    if (cfg.snr_grid_db.empty()) throw ConfigError("snr_grid_db: must not be empty");
    for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
        if (!std::isfinite(cfg.snr_grid_db[i])) throw ConfigError("snr_grid_db: values must be finite");
        if (i > 0 && !(cfg.snr_grid_db[i] > cfg.snr_grid_db[i - 1])) {
            throw ConfigError("snr_grid_db: must be strictly increasing");
        }
    }
    if (!std::isfinite(cfg.nu_var_db) || !std::isfinite(cfg.fu_var_db)) {
        throw ConfigError("nu_var_db/fu_var_db: must be finite");
    }
    if (cfg.min_errors < kLowConfidenceErrors) throw ConfigError("min_errors: must be >= 50");
    if (cfg.max_trials < 10'000) throw ConfigError("max_trials: must be >= 10000");
    if (cfg.workers < 1) throw ConfigError("workers: must be >= 1");
}

// One simulation chunk. Fresh fading and bits every symbol.
ChunkCounts simulate_chunk(const SimConfig& cfg, double snr_db, std::uint64_t chunk, std::uint64_t trials,
                           ChannelKind kind) {
    RandomStream rng = chunk_stream(cfg.seed, snr_db, chunk, kind);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const PowerSplit split(cfg.alpha, cfg.es);
    const double sigma = cfg.noiseless ? 0.0 : std::sqrt(noise_density(cfg.es, snr_db) / 2.0);
    const SegmentScales nu_scales = SegmentScales::from_variance_db(cfg.nu_var_db);
    const SegmentScales fu_scales = SegmentScales::from_variance_db(cfg.fu_var_db);
    // Single-tap Rayleigh channel with the user's mean power.
    const double nu_tap_scale = std::sqrt(0.5 * std::pow(10.0, cfg.nu_var_db / 10.0));
    const double fu_tap_scale = std::sqrt(0.5 * std::pow(10.0, cfg.fu_var_db / 10.0));

    CascadeLink nu_link;
    CascadeLink fu_link;
    if (kind == ChannelKind::Ris && cfg.explicit_phases) {
        nu_link = draw_link(cfg.n_nu, nu_scales, rng);
        fu_link = draw_link(cfg.n_fu, fu_scales, rng);
    }

    const std::size_t n_nu = cfg.n_nu;
    const std::size_t n_fu = cfg.n_fu;
    auto link_size = [&](const CascadeLink& link) { return &link == &nu_link ? n_nu : n_fu; };
    auto draw_gain = [&](CascadeLink& link, const SegmentScales& scales, double tap_scale) -> std::complex<double> {
        switch (kind) {
            case ChannelKind::Ris:
                if (!cfg.explicit_phases) return {draw_aligned_gain(link_size(link), scales, rng), 0.0};
                redraw_link(link, scales, rng);
                align_phases_in_place(link);
                return cascade_gain(link);
            case ChannelKind::SingleTapRayleigh: {
                // Coherent receiver: the tap phase is known and removed.
                return {draw_tap(tap_scale, rng).amplitude, 0.0};
            }
            case ChannelKind::Awgn:
                return {1.0, 0.0};
        }
        return {1.0, 0.0};
    };
    auto noise = [&]() -> std::complex<double> {
        if (sigma == 0.0) return {0.0, 0.0};
        const double re = gauss(rng);
        const double im = gauss(rng);
        return {sigma * re, sigma * im};
    };

    ChunkCounts counts;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t word = rng();
        UserBits bits;
        bits.nu.b0 = static_cast<Bit>(word & 1U);
        bits.nu.b1 = static_cast<Bit>((word >> 1) & 1U);
        bits.fu = static_cast<Bit>((word >> 2) & 1U);
        const std::complex<double> x = superpose(bits, split);

        const std::complex<double> g_nu = draw_gain(nu_link, nu_scales, nu_tap_scale);
        const std::complex<double> r_nu = g_nu * x + noise();
        const NuDecision nu = detect_nu_sic(r_nu, g_nu.real(), split);
        counts.nu_errors += (nu.nu.b0 != bits.nu.b0) + (nu.nu.b1 != bits.nu.b1);

        const std::complex<double> g_fu = draw_gain(fu_link, fu_scales, fu_tap_scale);
        const std::complex<double> r_fu = g_fu * x + noise();
        counts.fu_errors += detect_fu(r_fu, g_fu.real(), split) != bits.fu;
    }
    counts.trials = trials;
    return counts;
}

BerPoint finish_point(double snr_db, const ChunkCounts& total, bool stopped_at_max) {
    BerPoint p;
    p.snr_db = snr_db;
    p.trials = total.trials;
    p.nu_bit_errors = total.nu_errors;
    p.fu_bit_errors = total.fu_errors;
    const double nu_bits = 2.0 * static_cast<double>(total.trials);
    const double fu_bits = static_cast<double>(total.trials);
    p.nu_ber = static_cast<double>(total.nu_errors) / nu_bits;
    p.fu_ber = static_cast<double>(total.fu_errors) / fu_bits;
    p.ci95_nu = ci95_half_width(p.nu_ber, nu_bits);
    p.ci95_fu = ci95_half_width(p.fu_ber, fu_bits);
    p.low_confidence = stopped_at_max && (total.nu_errors < kLowConfidenceErrors || total.fu_errors < kLowConfidenceErrors);
    return p;
}

BerPoint run_point_unchecked(const SimConfig& cfg, double snr_db, ChannelKind kind) {
    const std::uint64_t n_chunks = (cfg.max_trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
    ChunkCounts total;
    std::uint64_t next_chunk = 0;
    std::vector<ChunkCounts> batch;

    auto trials_in = [&](std::uint64_t chunk) {
        return std::min(kTrialsPerChunk, cfg.max_trials - chunk * kTrialsPerChunk);
    };
    auto done = [&] {
        return (total.nu_errors >= cfg.min_errors && total.fu_errors >= cfg.min_errors) ||
               total.trials >= cfg.max_trials;
    };

    while (!done()) {
        // Speculatively evaluate the next `workers` chunks, then merge them
        // in chunk order so the stopping point is independent of concurrency.
        const std::uint64_t width = std::min<std::uint64_t>(cfg.workers, n_chunks - next_chunk);
        batch.assign(width, ChunkCounts{});
        if (width == 1) {
            batch[0] = simulate_chunk(cfg, snr_db, next_chunk, trials_in(next_chunk), kind);
        } else {
            std::vector<std::jthread> threads;
            threads.reserve(width);
            for (std::uint64_t w = 0; w < width; ++w) {
                threads.emplace_back([&, w] {
                    const std::uint64_t chunk = next_chunk + w;
                    batch[w] = simulate_chunk(cfg, snr_db, chunk, trials_in(chunk), kind);
                });
            }
        }
        for (const ChunkCounts& c : batch) {
            total.trials += c.trials;
            total.nu_errors += c.nu_errors;
            total.fu_errors += c.fu_errors;
            ++next_chunk;
            if (done()) break;
        }
    }
    const bool hit_max = total.trials >= cfg.max_trials &&
                         !(total.nu_errors >= cfg.min_errors && total.fu_errors >= cfg.min_errors);
    return finish_point(snr_db, total, hit_max);
}

std::string curve_label(const SimConfig& cfg) {
    std::ostringstream os;
    os << "ris N=" << cfg.n_total << " (nu " << cfg.n_nu << ", fu " << cfg.n_fu << ") alpha=" << cfg.alpha;
    return os.str();
}

}  // namespace

std::vector<double> SimConfig::default_snr_grid() {
    std::vector<double> grid;
    for (int db = -40; db <= 10; db += 2) grid.push_back(static_cast<double>(db));
    return grid;
}

void SimConfig::validate() const {
    validate_common(*this);
    if (n_nu < 1 || n_fu < 1) throw ConfigError("n_nu/n_fu: every user needs at least one element");
    if (n_nu + n_fu != n_total) {
        throw ConfigError("n_nu + n_fu must equal n_total (" + std::to_string(n_nu) + " + " + std::to_string(n_fu) +
                          " != " + std::to_string(n_total) + ")");
    }
}

double ci95_half_width(double ber, double bits) {
    if (!(bits > 0.0)) return 0.0;
    return 1.96 * std::sqrt(ber * (1.0 - ber) / bits);
}

double noise_density(double es, double snr_db) { return es / std::pow(10.0, snr_db / 10.0); }

RandomStream chunk_stream(std::uint64_t seed, double snr_db, std::uint64_t chunk, ChannelKind kind) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(snr_db));
    h = splitmix64(h ^ chunk);
    h = splitmix64(h ^ static_cast<std::uint64_t>(kind));
    std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    return RandomStream(seq);
}

BerPoint run_point(const SimConfig& cfg, double snr_db, ChannelKind kind) {
    if (kind == ChannelKind::Ris) {
        cfg.validate();
    } else {
        validate_common(cfg);
    }
    if (!std::isfinite(snr_db)) throw ConfigError("snr_db: must be finite");
    return run_point_unchecked(cfg, snr_db, kind);
}

BerCurve run_sweep(const SimConfig& cfg) {
    cfg.validate();
    BerCurve curve{curve_label(cfg), {}};
    for (double snr : cfg.snr_grid_db) curve.points.push_back(run_point_unchecked(cfg, snr, ChannelKind::Ris));
    return curve;
}

BerCurve run_conventional_baseline(const SimConfig& cfg, bool fading) {
    validate_common(cfg);
    const ChannelKind kind = fading ? ChannelKind::SingleTapRayleigh : ChannelKind::Awgn;
    BerCurve curve{fading ? "conventional rayleigh" : "conventional awgn", {}};
    for (double snr : cfg.snr_grid_db) curve.points.push_back(run_point_unchecked(cfg, snr, kind));
    return curve;
}

double snr_at_ber(const BerCurve& curve, double target_ber, User user) {
    if (!(target_ber > 0.0 && target_ber < 1.0)) throw DomainError("target BER must lie in (0, 1)");
    const auto& pts = curve.points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double hi = pts[i].ber(user);
        const double lo = pts[i + 1].ber(user);
        if (hi == target_ber) return pts[i].snr_db;
        if (hi > target_ber && lo <= target_ber) {
            if (lo == target_ber) return pts[i + 1].snr_db;
            if (lo <= 0.0) break;  // zero-error point: no log-domain bracket
            const double t = (std::log10(target_ber) - std::log10(hi)) / (std::log10(lo) - std::log10(hi));
            return pts[i].snr_db + t * (pts[i + 1].snr_db - pts[i].snr_db);
        }
    }
    if (!pts.empty() && pts.back().ber(user) == target_ber) return pts.back().snr_db;
    throw RangeError("curve '" + curve.label + "' does not bracket BER " + std::to_string(target_ber));
}

double gain_at_ber(const BerCurve& curve_a, const BerCurve& curve_b, double target_ber, User user) {
    const double snr_a = snr_at_ber(curve_a, target_ber, user);
    const double snr_b = snr_at_ber(curve_b, target_ber, user);
    return snr_b - snr_a;
}

AnalyticBer analytic_point(const SimConfig& cfg, double snr_db, SubstitutionMode mode, const QuadratureRule& quad,
                           Diagnostics* diagnostics) {
    return analytic_point(cfg, cfg.n_nu, cfg.n_fu, snr_db, mode, quad, diagnostics);
}

AnalyticBer analytic_point(const SimConfig& cfg, std::size_t n_nu, std::size_t n_fu, double snr_db,
                           SubstitutionMode mode, const QuadratureRule& quad, Diagnostics* diagnostics) {
    const PowerSplit split(cfg.alpha, cfg.es);
    const double n0 = noise_density(cfg.es, snr_db);
    const double nu_power = SegmentScales::from_variance_db(cfg.nu_var_db).power_gain();
    const double fu_power = SegmentScales::from_variance_db(cfg.fu_var_db).power_gain();
    return {pe_nu_ris(n_nu, split.eps1(), split.eps2(), n0, mode, quad, nu_power, diagnostics),
            pe_fu_ris(n_fu, split.eps1(), split.eps2(), n0, mode, quad, fu_power, diagnostics)};
}

AnalyticBer analytic_conventional(const SimConfig& cfg, double snr_db) {
    const PowerSplit split(cfg.alpha, cfg.es);
    const double n0 = noise_density(cfg.es, snr_db);
    return {pe_nu_conventional(split.eps1(), split.eps2(), n0), pe_fu_conventional(split.eps1(), split.eps2(), n0)};
}

std::pair<std::size_t, std::size_t> equalize_allocation(const SimConfig& cfg, double snr_db, SubstitutionMode mode,
                                                        const QuadratureRule& quad) {
    if (cfg.n_total < 2) throw ConfigError("n_total: allocation needs at least 2 elements");
    if (!std::isfinite(snr_db)) throw ConfigError("snr_db: must be finite");
    validate_common(cfg);

    std::pair<std::size_t, std::size_t> best{0, 0};
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t n_fu = 1; n_fu < cfg.n_total; ++n_fu) {
        const std::size_t n_nu = cfg.n_total - n_fu;
        const AnalyticBer ber = analytic_point(cfg, n_nu, n_fu, snr_db, mode, quad);
        if (!(ber.nu > 0.0) && !(ber.fu > 0.0)) {
            throw PrecisionError("equalize_allocation: both BERs underflow to zero at " + std::to_string(snr_db) +
                                 " dB; probe a lower SNR");
        }
        // One-sided underflow leaves an infinite gap; that split cannot win.
        if (!(ber.nu > 0.0) || !(ber.fu > 0.0)) continue;
        const double gap = std::abs(std::log10(ber.nu) - std::log10(ber.fu));
        if (gap <= best_gap) {
            best_gap = gap;
            best = {n_nu, n_fu};
        }
    }
    if (best.first == 0) {
        throw PrecisionError("equalize_allocation: every split underflows for some user at " +
                             std::to_string(snr_db) + " dB; probe a lower SNR");
    }
    return best;
}

}  // namespace risnoma
