#include "risnoma/channel_model.hpp"

#include <cmath>
#include <numbers>

#include "risnoma/errors.hpp"

namespace risnoma {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_consistent(const CascadeLink& link) {
    if (!link.consistent()) throw DomainError("cascade link vectors differ in length");
}

}  // namespace

SegmentScales SegmentScales::from_variance_db(double user_variance_db) {
    return {std::sqrt(0.5), std::sqrt(0.5 * std::pow(10.0, user_variance_db / 10.0))};
}

double SegmentScales::power_gain() const {
    const double product = sigma_h * sigma_g;
    return product * product * 4.0;
}

RayleighTap draw_tap(double scale, RandomStream& rng) {
    if (!(scale > 0.0)) throw DomainError("draw_tap: scale must be positive");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    const double v = unit(rng);
    return {scale * std::sqrt(-2.0 * std::log1p(-u)), kTwoPi * v};
}

CascadeLink draw_link(std::size_t n, const SegmentScales& scales, RandomStream& rng) {
    CascadeLink link;
    link.bs_to_ris.resize(n);
    link.ris_to_user.resize(n);
    link.ris_phases.assign(n, 0.0);
    redraw_link(link, scales, rng);
    return link;
}

void redraw_link(CascadeLink& link, const SegmentScales& scales, RandomStream& rng) {
    check_consistent(link);
    for (std::size_t i = 0; i < link.size(); ++i) {
        link.bs_to_ris[i] = draw_tap(scales.sigma_h, rng);
        link.ris_to_user[i] = draw_tap(scales.sigma_g, rng);
        link.ris_phases[i] = 0.0;
    }
}

CascadeLink align_phases(CascadeLink link) {
    align_phases_in_place(link);
    return link;
}

void align_phases_in_place(CascadeLink& link) {
    check_consistent(link);
    for (std::size_t i = 0; i < link.size(); ++i) {
        link.ris_phases[i] = std::fmod(link.bs_to_ris[i].phase + link.ris_to_user[i].phase, kTwoPi);
    }
}

std::complex<double> cascade_gain(const CascadeLink& link) {
    check_consistent(link);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t i = 0; i < link.size(); ++i) {
        const RayleighTap& h = link.bs_to_ris[i];
        const RayleighTap& g = link.ris_to_user[i];
        sum += std::polar(h.amplitude * g.amplitude, link.ris_phases[i] - h.phase - g.phase);
    }
    return sum;
}

double draw_aligned_gain(std::size_t n, const SegmentScales& scales, RandomStream& rng) {
    // alpha beta = 2 sigma_h sigma_g sqrt(ln(u) ln(v)) for u, v uniform on (0, 1].
    constexpr double kUlp = 0x1.0p-53;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>((rng() >> 11) + 1) * kUlp;
        const double v = static_cast<double>((rng() >> 11) + 1) * kUlp;
        sum += std::sqrt(std::log(u) * std::log(v));
    }
    return 2.0 * scales.sigma_h * scales.sigma_g * sum;
}

CltStats clt_stats(std::size_t n_user, double sigma_h, double sigma_g) {
    if (n_user < 1) throw DomainError("clt_stats: n_user must be >= 1");
    if (!(sigma_h > 0.0) || !(sigma_g > 0.0)) throw DomainError("clt_stats: scales must be positive");
    constexpr double pi = std::numbers::pi;
    const double n = static_cast<double>(n_user);
    const double product = sigma_h * sigma_g;
    return {n * product * pi / 2.0, 4.0 * n * product * product * (1.0 - pi * pi / 16.0)};
}

double instantaneous_snr(const CascadeLink& link, double es_over_n0) {
    if (!(es_over_n0 > 0.0)) throw DomainError("instantaneous_snr: Es/N0 must be positive");
    return std::norm(cascade_gain(link)) * es_over_n0;
}

}  // namespace risnoma
