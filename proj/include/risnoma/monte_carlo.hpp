#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "risnoma/analytic_ber.hpp"
#include "risnoma/channel_model.hpp"

namespace risnoma {

/// Full description of one simulated experiment.
struct SimConfig {
    std::size_t n_total = 16;
    std::size_t n_nu = 8;
    std::size_t n_fu = 8;
    double alpha = 0.4;
    double es = 1.0;
    std::vector<double> snr_grid_db = default_snr_grid();
    double nu_var_db = 0.0;
    double fu_var_db = -3.0;
    std::uint64_t seed = 42;
    std::uint64_t min_errors = 200;
    std::uint64_t max_trials = 10'000'000;
    unsigned workers = 1;
    // Diagnostic switch: transmit without additive noise.
    bool noiseless = false;
    // Draw tap phases and configure the RIS explicitly instead of sampling
    // the aligned gain directly. Same statistics, several times slower.
    bool explicit_phases = false;

    /// -40 dB to 10 dB in 2 dB steps.
    static std::vector<double> default_snr_grid();

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

enum class User { Near, Far };

/// Error counts and derived statistics at one Es/N0.
struct BerPoint {
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t nu_bit_errors = 0;
    std::uint64_t fu_bit_errors = 0;
    double nu_ber = 0.0;
    double fu_ber = 0.0;
    double ci95_nu = 0.0;
    double ci95_fu = 0.0;
    // Stopped at max_trials with fewer than 50 errors for some user.
    bool low_confidence = false;

    double ber(User user) const { return user == User::Near ? nu_ber : fu_ber; }
};

struct BerCurve {
    std::string label;
    std::vector<BerPoint> points;
};

/// Link model used by the simulator.
enum class ChannelKind {
    Ris,               // phase-aligned RIS cascade per user
    SingleTapRayleigh, // conventional NOMA: one Rayleigh tap per user, no RIS
    Awgn,              // conventional NOMA without fading
};

inline constexpr std::uint64_t kTrialsPerChunk = 8192;
inline constexpr std::uint64_t kLowConfidenceErrors = 50;

/// Normal-approximation 95% half width for `errors` out of `bits`.
double ci95_half_width(double ber, double bits);

/// Noise density for a given Es and Es/N0 in dB.
double noise_density(double es, double snr_db);

/// Random stream for chunk `chunk` of the point at `snr_db`.
RandomStream chunk_stream(std::uint64_t seed, double snr_db, std::uint64_t chunk, ChannelKind kind);

BerPoint run_point(const SimConfig& cfg, double snr_db, ChannelKind kind = ChannelKind::Ris);

BerCurve run_sweep(const SimConfig& cfg);

/// Same transceiver over a single-tap Rayleigh link per user (or plain
/// AWGN when `fading` is false); element counts are ignored.
BerCurve run_conventional_baseline(const SimConfig& cfg, bool fading = true);

/// SNR_b - SNR_a at `target_ber`, each located by linear interpolation of
/// log10(BER) against SNR in dB. Throws RangeError naming the curve that
/// does not bracket the target.
double gain_at_ber(const BerCurve& curve_a, const BerCurve& curve_b, double target_ber, User user);

/// SNR in dB at which `curve` first falls through `target_ber`.
double snr_at_ber(const BerCurve& curve, double target_ber, User user);

struct AnalyticBer {
    double nu = 0.0;
    double fu = 0.0;
};

/// Analytic RIS-NOMA BER for the configuration's split and variances.
AnalyticBer analytic_point(const SimConfig& cfg, double snr_db, SubstitutionMode mode,
                           const QuadratureRule& quad = default_quadrature(), Diagnostics* diagnostics = nullptr);

/// Same, with explicit element counts.
AnalyticBer analytic_point(const SimConfig& cfg, std::size_t n_nu, std::size_t n_fu, double snr_db,
                           SubstitutionMode mode, const QuadratureRule& quad = default_quadrature(),
                           Diagnostics* diagnostics = nullptr);

/// Conventional AWGN NOMA closed forms at the configuration's split.
AnalyticBer analytic_conventional(const SimConfig& cfg, double snr_db);

/// Split (n_nu, n_fu) minimising |log10 BER_nu - log10 BER_fu| under the
/// analytic model; ties go to the larger n_fu.
std::pair<std::size_t, std::size_t> equalize_allocation(const SimConfig& cfg, double snr_db,
                                                        SubstitutionMode mode = SubstitutionMode::ConsistentSnr,
                                                        const QuadratureRule& quad = default_quadrature());

}  // namespace risnoma
