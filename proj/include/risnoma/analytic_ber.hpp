#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "risnoma/special_functions.hpp"

namespace risnoma {

/// Argument set of the RIS SNR moment generating function.
struct MgfParams {
    std::size_t n_elements = 1;
    double es_over_n0 = 1.0;
    double s = 0.0;
};

/// How a NOMA decision distance enters the RIS-averaged error integral.
///
/// Literal feeds the amplitude surrogate (e.g. (sqrt(eps2)+sqrt(eps1/2))/sqrt(N0))
/// straight into the Es/N0 slot. ConsistentSnr feeds the per-term SNR gamma
/// defined by writing the conventional AWGN term as Q(sqrt(2 gamma)).
enum class SubstitutionMode { Literal, ConsistentSnr };

std::string_view to_string(SubstitutionMode mode);
/// Accepts "literal" and "consistent" (also "consistent_snr").
SubstitutionMode parse_substitution_mode(std::string_view text);

/// Collects non-fatal numerical notes (clamping, sign guards).
class Diagnostics {
public:
    void note(std::string message) { messages_.push_back(std::move(message)); }
    const std::vector<std::string>& messages() const { return messages_; }
    bool empty() const { return messages_.empty(); }

private:
    std::vector<std::string> messages_;
};

/// Non-central chi-square MGF of the aligned-RIS instantaneous SNR.
/// Throws DomainError if the pole 1 - s N (16 - pi^2) Es/N0 / 8 <= 0.
double mgf_ris_snr(const MgfParams& p);

/// Average of Q(sqrt(2 gamma)) over the CLT cascade model, gamma = A^2 Es/N0,
/// evaluated through the Craig-form integral over (0, pi/2).
double pe_mpsk(std::size_t n_elements, double es_over_n0, const QuadratureRule& quad = default_quadrature());

/// The Craig integrand at xi = pi/2, halved; bounds pe_mpsk from above.
double pe_upper_bound(std::size_t n_elements, double es_over_n0);

/// Conventional AWGN NOMA far-user BER (BPSK under QPSK interference).
double pe_fu_conventional(double eps1, double eps2, double n0);

/// Conventional AWGN NOMA near-user BER after SIC, in its published closed form.
double pe_nu_conventional(double eps1, double eps2, double n0);

/// RIS-assisted far-user BER. `channel_power` scales the mean cascade
/// power of this user's link relative to unit-power segments.
double pe_fu_ris(std::size_t n_fu, double eps1, double eps2, double n0, SubstitutionMode mode,
                 const QuadratureRule& quad = default_quadrature(), double channel_power = 1.0,
                 Diagnostics* diagnostics = nullptr);

/// RIS-assisted near-user BER: the conventional SIC expression with each Q
/// term replaced by its RIS average.
double pe_nu_ris(std::size_t n_nu, double eps1, double eps2, double n0, SubstitutionMode mode,
                 const QuadratureRule& quad = default_quadrature(), double channel_power = 1.0,
                 Diagnostics* diagnostics = nullptr);

}  // namespace risnoma
