#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "risnoma/special_functions.hpp"

namespace risnoma::testing {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
};

inline Moments sample_moments(std::span<const double> xs) {
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double m2 = 0.0;
    double m3 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    return {mean, m2, m3 / std::pow(m2, 1.5)};
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Exact near-user bit error rate of the SIC receiver over AWGN: the far
// user's BPSK is sliced on the in-phase rail and subtracted before the
// near user's QPSK bits are sliced.
inline double exact_sic_nu_awgn(double eps1, double eps2, double n0) {
    const double a = std::sqrt(eps2);
    const double c = std::sqrt(eps1 / 2.0);
    const double sigma = std::sqrt(n0 / 2.0);
    // P(lo < r < hi) with r ~ N(mu, sigma^2); infinities allowed.
    auto window = [&](double mu, double lo, double hi) {
        const double upper = std::isinf(hi) ? 0.0 : gaussian_q((hi - mu) / sigma);
        const double lower = std::isinf(lo) ? 1.0 : gaussian_q((lo - mu) / sigma);
        return lower - upper;
    };
    const double inf = INFINITY;
    // Far-user symbol +1 by symmetry; near-user in-phase symbol +c or -c.
    const double err_plus = window(a + c, 0.0, a) + window(a + c, -inf, -a);
    const double err_minus = window(a - c, a, inf) + window(a - c, -a, 0.0);
    const double in_phase = 0.5 * (err_plus + err_minus);
    const double quadrature = gaussian_q(c / sigma);
    return 0.5 * (in_phase + quadrature);
}

}  // namespace risnoma::testing
