#include "risnoma/analytic_ber.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "risnoma/errors.hpp"

namespace risnoma {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPiSq = kPi * kPi;

// N (16 - pi^2) / 8 and N^2 pi^2 / 16: the CLT variance and squared-mean
// terms (times two) of A for unit-power segments.
double variance_coeff(double n) { return n * (16.0 - kPiSq) / 8.0; }
double mean_sq_coeff(double n) { return n * n * kPiSq / 16.0; }

// Craig integrand: the MGF evaluated at s = -1 / sin^2(xi).
double craig_integrand(double n, double snr, double xi) {
    const double sin_sq = std::sin(xi) * std::sin(xi);
    const double den = 1.0 + variance_coeff(n) * snr / sin_sq;
    return std::sqrt(1.0 / den) * stable_exp_ratio(-mean_sq_coeff(n) * snr / sin_sq, den);
}

// pe_mpsk without the positivity precondition; snr == 0 gives 1/2.
double averaged_q(std::size_t n, double snr, const QuadratureRule& quad) {
    const double nd = static_cast<double>(n);
    const double sum = quad.integrate([&](double xi) { return craig_integrand(nd, snr, xi); });
    return sum / kPi;
}

double clamp_probability(double p, double upper, const char* what, Diagnostics* diagnostics) {
    const double clamped = std::clamp(p, 0.0, upper);
    if (diagnostics != nullptr && std::abs(clamped - p) > 1e-9) {
        std::ostringstream msg;
        msg << what << ": clamped " << p << " to " << clamped;
        diagnostics->note(msg.str());
    }
    return clamped;
}

void check_ris_args(std::size_t n, double eps1, double eps2, double n0, double channel_power) {
    if (n < 1) throw DomainError("RIS BER: element count must be >= 1");
    if (eps1 < 0.0 || eps2 < 0.0) throw DomainError("RIS BER: energies must be nonnegative");
    if (!(n0 > 0.0)) throw DomainError("RIS BER: n0 must be positive");
    if (!(channel_power > 0.0)) throw DomainError("RIS BER: channel power must be positive");
}

// Per-term argument for the Es/N0 slot given a signed decision amplitude
// d (so that the AWGN term reads Q(d / sqrt(N0/2)) = Q(sqrt(2 d^2 / N0))).
double term_snr(double amplitude, double n0, SubstitutionMode mode, const char* label, Diagnostics* diagnostics) {
    if (amplitude < 0.0 && diagnostics != nullptr) {
        diagnostics->note(std::string(label) + ": negative decision amplitude, using its magnitude");
    }
    if (mode == SubstitutionMode::Literal) return std::abs(amplitude) / std::sqrt(n0);
    return amplitude * amplitude / n0;
}

}  // namespace

std::string_view to_string(SubstitutionMode mode) {
    return mode == SubstitutionMode::Literal ? "literal" : "consistent";
}

SubstitutionMode parse_substitution_mode(std::string_view text) {
    if (text == "literal") return SubstitutionMode::Literal;
    if (text == "consistent" || text == "consistent_snr") return SubstitutionMode::ConsistentSnr;
    throw ConfigError("mode: expected 'literal' or 'consistent', got '" + std::string(text) + "'");
}

double mgf_ris_snr(const MgfParams& p) {
    if (p.n_elements < 1) throw DomainError("mgf_ris_snr: n_elements must be >= 1");
    const double n = static_cast<double>(p.n_elements);
    const double den = 1.0 - p.s * variance_coeff(n) * p.es_over_n0;
    if (!(den > 0.0)) throw DomainError("mgf_ris_snr: argument s is at or beyond the pole");
    return std::sqrt(1.0 / den) * stable_exp_ratio(p.s * mean_sq_coeff(n) * p.es_over_n0, den);
}

double pe_mpsk(std::size_t n_elements, double es_over_n0, const QuadratureRule& quad) {
    if (n_elements < 1) throw DomainError("pe_mpsk: n_elements must be >= 1");
    if (!(es_over_n0 > 0.0)) throw DomainError("pe_mpsk: Es/N0 must be positive");
    return std::clamp(averaged_q(n_elements, es_over_n0, quad), 0.0, 0.5);
}

double pe_upper_bound(std::size_t n_elements, double es_over_n0) {
    if (n_elements < 1) throw DomainError("pe_upper_bound: n_elements must be >= 1");
    if (!(es_over_n0 > 0.0)) throw DomainError("pe_upper_bound: Es/N0 must be positive");
    return 0.5 * craig_integrand(static_cast<double>(n_elements), es_over_n0, kPi / 2.0);
}

double pe_fu_conventional(double eps1, double eps2, double n0) {
    if (eps1 < 0.0 || eps2 < 0.0) throw DomainError("pe_fu_conventional: energies must be nonnegative");
    if (!(n0 > 0.0)) throw DomainError("pe_fu_conventional: n0 must be positive");
    const double sigma = std::sqrt(n0 / 2.0);
    const double a = std::sqrt(eps2);
    const double c = std::sqrt(eps1 / 2.0);
    return 0.5 * (gaussian_q((a + c) / sigma) + gaussian_q((a - c) / sigma));
}

double pe_nu_conventional(double eps1, double eps2, double n0) {
    if (eps1 < 0.0 || eps2 < 0.0) throw DomainError("pe_nu_conventional: energies must be nonnegative");
    if (!(n0 > 0.0)) throw DomainError("pe_nu_conventional: n0 must be positive");
    const double own = gaussian_q(std::sqrt(eps1 / n0));
    const double sum = std::sqrt(2.0 * eps2) + std::sqrt(eps1);
    const double diff = std::sqrt(2.0 * eps2) - std::sqrt(eps1);
    const double q_sum = gaussian_q(std::sqrt(sum * sum / n0));
    const double q_diff = gaussian_q(std::sqrt(diff * diff / n0));
    return 0.25 * (own * (4.0 - q_sum - q_diff) - q_sum);
}

double pe_fu_ris(std::size_t n_fu, double eps1, double eps2, double n0, SubstitutionMode mode,
                 const QuadratureRule& quad, double channel_power, Diagnostics* diagnostics) {
    check_ris_args(n_fu, eps1, eps2, n0, channel_power);
    const double a = std::sqrt(eps2);
    const double c = std::sqrt(eps1 / 2.0);
    const double snr_sum = channel_power * term_snr(a + c, n0, mode, "pe_fu_ris", diagnostics);
    const double snr_diff = channel_power * term_snr(a - c, n0, mode, "pe_fu_ris", diagnostics);
    const double p = 0.5 * (averaged_q(n_fu, snr_sum, quad) + averaged_q(n_fu, snr_diff, quad));
    return clamp_probability(p, 1.0, "pe_fu_ris", diagnostics);
}

double pe_nu_ris(std::size_t n_nu, double eps1, double eps2, double n0, SubstitutionMode mode,
                 const QuadratureRule& quad, double channel_power, Diagnostics* diagnostics) {
    check_ris_args(n_nu, eps1, eps2, n0, channel_power);
    const double sum = std::sqrt(2.0 * eps2) + std::sqrt(eps1);
    const double diff = std::sqrt(2.0 * eps2) - std::sqrt(eps1);

    double snr_own = 0.0;
    double snr_sum = 0.0;
    double snr_diff = 0.0;
    if (mode == SubstitutionMode::Literal) {
        // The own-signal term carries eps1 itself, not its square root.
        snr_own = eps1 / std::sqrt(n0);
        snr_sum = term_snr(sum, n0, mode, "pe_nu_ris", diagnostics);
        snr_diff = term_snr(diff, n0, mode, "pe_nu_ris", diagnostics);
    } else {
        // The AWGN terms read Q(sqrt(x / N0)) = Q(sqrt(2 gamma)) with gamma = x / (2 N0).
        snr_own = eps1 / (2.0 * n0);
        snr_sum = term_snr(sum, n0, mode, "pe_nu_ris", diagnostics) / 2.0;
        snr_diff = term_snr(diff, n0, mode, "pe_nu_ris", diagnostics) / 2.0;
    }
    const double p_own = averaged_q(n_nu, channel_power * snr_own, quad);
    const double p_sum = averaged_q(n_nu, channel_power * snr_sum, quad);
    const double p_diff = averaged_q(n_nu, channel_power * snr_diff, quad);
    const double p = 0.25 * (p_own * (4.0 - p_sum - p_diff) - p_sum);
    return clamp_probability(p, 1.0, "pe_nu_ris", diagnostics);
}

}  // namespace risnoma
