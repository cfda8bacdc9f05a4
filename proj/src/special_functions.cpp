#include "risnoma/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "risnoma/errors.hpp"

namespace risnoma {

namespace {

// Coefficients from W. J. Cody, "Rational Chebyshev approximations for the
// error function", Math. Comp. 23 (1969), as distributed in SPECFUN/CALERF.
constexpr std::array<double, 5> kA = {3.1611237438705656, 113.864154151050156, 377.485237685302021,
                                      3209.37758913846947, 0.185777706184603153};
constexpr std::array<double, 4> kB = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                                      2844.23683343917062};
constexpr std::array<double, 9> kC = {0.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                                      298.635138197400131,  881.95222124176909,  1712.04761263407058,
                                      2051.07837782607147,  1230.33935479799725, 2.15311535474403846e-8};
constexpr std::array<double, 8> kD = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                                      1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                                      3439.36767414372164, 1230.33935480374942};
constexpr std::array<double, 6> kP = {0.305326634961232344, 0.360344899949804439, 0.125781726111229246,
                                      0.0160837851487422766, 6.58749161529837803e-4, 0.0163153871373020978};
constexpr std::array<double, 5> kQ = {2.56852019228982242, 1.87295284992346047, 0.527905102951428412,
                                      0.0605183413124413191, 0.00233520497626869185};

constexpr double kInvSqrtPi = 0.56418958354775628695;

// exp(-y*y) with the square split so the large exponent is computed exactly.
double exp_neg_square(double y) {
    const double head = std::trunc(y * 16.0) / 16.0;
    const double del = (y - head) * (y + head);
    return std::exp(-head * head) * std::exp(-del);
}

double erfc_nonnegative(double y) {
    if (y <= 0.46875) {
        const double ysq = y > 1.11e-16 ? y * y : 0.0;
        double num = kA[4] * ysq;
        double den = ysq;
        for (int i = 0; i < 3; ++i) {
            num = (num + kA[i]) * ysq;
            den = (den + kB[i]) * ysq;
        }
        return 1.0 - y * (num + kA[3]) / (den + kB[3]);
    }
    if (y <= 4.0) {
        double num = kC[8] * y;
        double den = y;
        for (int i = 0; i < 7; ++i) {
            num = (num + kC[i]) * y;
            den = (den + kD[i]) * y;
        }
        return exp_neg_square(y) * (num + kC[7]) / (den + kD[7]);
    }
    if (y >= 27.3) return 0.0;  // below the smallest subnormal
    const double ysq = 1.0 / (y * y);
    double num = kP[5] * ysq;
    double den = ysq;
    for (int i = 0; i < 4; ++i) {
        num = (num + kP[i]) * ysq;
        den = (den + kQ[i]) * ysq;
    }
    const double tail = (kInvSqrtPi - ysq * (num + kP[4]) / (den + kQ[4])) / y;
    // Multiply by the tail factor before the second exponential so that
    // results reaching the subnormal range lose as little as possible.
    const double head = std::trunc(y * 16.0) / 16.0;
    const double del = (y - head) * (y + head);
    return (std::exp(-head * head) * tail) * std::exp(-del);
}

}  // namespace

double erfc_cody(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return 2.0 - erfc_nonnegative(-x);
    return erfc_nonnegative(x);
}

double gaussian_q(double x) {
    if (!std::isfinite(x)) throw DomainError("gaussian_q: argument must be finite");
    return 0.5 * erfc_cody(x * std::numbers::sqrt2 / 2.0);
}

QuadratureRule gauss_legendre_half_pi(std::size_t order) {
    if (order < 2) {
        throw DomainError("gauss_legendre_half_pi: order must be >= 2, got " + std::to_string(order));
    }
    const std::size_t n = order;
    std::vector<double> x(n), w(n);
    // Roots are symmetric; find the upper half by Newton iteration on P_n.
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                const double jj = static_cast<double>(j);
                p0 = ((2.0 * jj - 1.0) * z * p1 - (jj - 1.0) * p2) / jj;
            }
            dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
            const double step = p0 / dp;
            z -= step;
            if (std::abs(step) < 1e-16) break;
        }
        const double wk = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wk;
        w[n - 1 - i] = wk;
    }

    constexpr double half_width = std::numbers::pi / 4.0;
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        rule.nodes[k] = half_width * (x[k] + 1.0);
        rule.weights[k] = half_width * w[k];
    }
    return rule;
}

const QuadratureRule& default_quadrature() {
    static const QuadratureRule rule = gauss_legendre_half_pi(kDefaultQuadratureOrder);
    return rule;
}

double stable_exp_ratio(double numer, double denom) {
    if (!(denom > 0.0)) throw DomainError("stable_exp_ratio: denominator must be positive");
    const double ratio = numer / denom;
    if (ratio < -745.0) return 0.0;
    return std::exp(ratio);
}

}  // namespace risnoma
