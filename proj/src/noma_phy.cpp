#include "risnoma/noma_phy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "risnoma/errors.hpp"

namespace risnoma {

PowerSplit::PowerSplit(double alpha, double es) : alpha_(alpha), es_(es) {
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw DomainError("power split: alpha must lie in (0, 0.5), got " + std::to_string(alpha));
    }
    if (!(es > 0.0) || !std::isfinite(es)) throw DomainError("power split: es must be positive");
    eps1_ = alpha * es;
    eps2_ = es - eps1_;
}

std::complex<double> map_qpsk(NuBits bits) {
    constexpr double r = std::numbers::sqrt2 / 2.0;
    return {bits.b0 ? -r : r, bits.b1 ? -r : r};
}

double map_bpsk(Bit bit) { return bit ? -1.0 : 1.0; }

std::complex<double> superpose(const UserBits& bits, const PowerSplit& split) {
    return std::sqrt(split.eps1()) * map_qpsk(bits.nu) + std::sqrt(split.eps2()) * map_bpsk(bits.fu);
}

Bit detect_fu(std::complex<double> received, double effective_gain, const PowerSplit& /*split*/) {
    if (effective_gain < 0.0) throw DomainError("detect_fu: effective gain must be nonnegative");
    return received.real() >= 0.0 ? 0 : 1;
}

NuBits cancel_and_detect_qpsk(std::complex<double> received, double effective_gain, const PowerSplit& split,
                              Bit fu_estimate) {
    const std::complex<double> residual =
        received - effective_gain * std::sqrt(split.eps2()) * map_bpsk(fu_estimate);
    return {static_cast<Bit>(residual.real() >= 0.0 ? 0 : 1), static_cast<Bit>(residual.imag() >= 0.0 ? 0 : 1)};
}

NuDecision detect_nu_sic(std::complex<double> received, double effective_gain, const PowerSplit& split) {
    if (!(effective_gain > 0.0)) {
        throw DetectionError("detect_nu_sic: effective gain must be positive for cancellation");
    }
    const Bit fu = received.real() >= 0.0 ? 0 : 1;
    return {cancel_and_detect_qpsk(received, effective_gain, split, fu), fu};
}

}  // namespace risnoma
