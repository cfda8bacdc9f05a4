#pragma once

#include <complex>
#include <cstdint>

namespace risnoma {

using Bit = std::uint8_t;

/// NOMA power allocation: eps1 = alpha * es goes to the near user, the
/// remainder to the far user. alpha is restricted to (0, 0.5).
class PowerSplit {
public:
    PowerSplit(double alpha, double es = 1.0);

    double alpha() const { return alpha_; }
    double es() const { return es_; }
    double eps1() const { return eps1_; }
    double eps2() const { return eps2_; }

private:
    double alpha_;
    double es_;
    double eps1_;
    double eps2_;
};

/// Two Gray-coded QPSK bits for the near user: b0 rides the in-phase
/// axis, b1 the quadrature axis.
struct NuBits {
    Bit b0 = 0;
    Bit b1 = 0;
    friend bool operator==(const NuBits&, const NuBits&) = default;
};

struct UserBits {
    NuBits nu;
    Bit fu = 0;
};

struct NuDecision {
    NuBits nu;
    Bit fu_estimate = 0;
};

/// (0,0) -> (1+j)/sqrt2, bit 1 flips the sign of its axis.
std::complex<double> map_qpsk(NuBits bits);

/// 0 -> +1, 1 -> -1.
double map_bpsk(Bit bit);

/// sqrt(eps1) * qpsk(nu) + sqrt(eps2) * bpsk(fu).
std::complex<double> superpose(const UserBits& bits, const PowerSplit& split);

/// Far-user sign detector on the real axis; near-user power is treated as
/// noise. `effective_gain` must be nonnegative and does not change the
/// decision.
Bit detect_fu(std::complex<double> received, double effective_gain, const PowerSplit& split);

/// Hard-decision SIC: slice the far-user bit, subtract its reconstructed
/// contribution, slice the QPSK residual by quadrant. Throws DetectionError
/// when effective_gain is zero.
NuDecision detect_nu_sic(std::complex<double> received, double effective_gain, const PowerSplit& split);

/// Second SIC stage alone, cancelling with a caller-supplied far-user bit.
NuBits cancel_and_detect_qpsk(std::complex<double> received, double effective_gain, const PowerSplit& split,
                              Bit fu_estimate);

}  // namespace risnoma
