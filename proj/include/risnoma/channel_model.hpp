#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

namespace risnoma {

using RandomStream = std::mt19937_64;

/// One complex channel coefficient in polar form. The amplitude is
/// Rayleigh with scale s (E[amplitude^2] = 2 s^2), the phase uniform.
struct RayleighTap {
    double amplitude = 0.0;
    double phase = 0.0;
};

/// BS->RIS taps, RIS->user taps and the RIS phase settings for the
/// elements allocated to one user. All three vectors share one length.
struct CascadeLink {
    std::vector<RayleighTap> bs_to_ris;
    std::vector<RayleighTap> ris_to_user;
    std::vector<double> ris_phases;

    std::size_t size() const { return bs_to_ris.size(); }
    bool consistent() const {
        return ris_to_user.size() == bs_to_ris.size() && ris_phases.size() == bs_to_ris.size();
    }
};

/// Gaussian (large-N) description of the aligned cascade amplitude A.
struct CltStats {
    double mean_a = 0.0;
    double var_a = 0.0;
};

/// Per-segment Rayleigh scales for one user. A channel "variance" of v dB
/// is applied to the RIS->user segment as sigma_g^2 = 10^(v/10) / 2; the
/// shared BS->RIS segment keeps sigma_h^2 = 1/2.
struct SegmentScales {
    double sigma_h = 0.0;
    double sigma_g = 0.0;

    static SegmentScales from_variance_db(double user_variance_db);
    /// Mean power of one cascade product relative to the unit-power case.
    double power_gain() const;
};

RayleighTap draw_tap(double scale, RandomStream& rng);

/// Fresh link of n elements; phases start at zero (unconfigured RIS).
CascadeLink draw_link(std::size_t n, const SegmentScales& scales, RandomStream& rng);

/// Redraws every tap of an existing link without reallocating.
void redraw_link(CascadeLink& link, const SegmentScales& scales, RandomStream& rng);

/// Sets phi_i = theta_i + psi_i (mod 2 pi).
CascadeLink align_phases(CascadeLink link);
void align_phases_in_place(CascadeLink& link);

/// Sum over elements of alpha_i beta_i exp(j (phi_i - theta_i - psi_i)).
std::complex<double> cascade_gain(const CascadeLink& link);

/// CLT moments of A = sum alpha_i beta_i for scales sigma_h, sigma_g.
CltStats clt_stats(std::size_t n_user, double sigma_h, double sigma_g);

/// Sum of alpha_i beta_i for n fresh elements: the cascade gain after
/// phase alignment, sampled without drawing the phases it would cancel.
double draw_aligned_gain(std::size_t n, const SegmentScales& scales, RandomStream& rng);

/// |cascade_gain|^2 * Es/N0.
double instantaneous_snr(const CascadeLink& link, double es_over_n0);

}  // namespace risnoma
