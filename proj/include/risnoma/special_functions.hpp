#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace risnoma {

/// Gauss-Legendre rule on the open interval (0, pi/2).
struct QuadratureRule {
    std::vector<double> nodes;    // strictly increasing
    std::vector<double> weights;  // positive, sum to pi/2

    std::size_t order() const { return nodes.size(); }

    /// Sum of w_k * f(x_k).
    template <typename F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k) acc += weights[k] * f(nodes[k]);
        return acc;
    }
};

inline constexpr std::size_t kDefaultQuadratureOrder = 64;

/// Complementary error function, Cody's rational Chebyshev approximations.
/// Unlike the reference routine there is no large-argument cutoff: results
/// decay through the subnormal range to zero.
double erfc_cody(double x);

/// Upper tail of the standard normal law, P[Z > x]. Throws DomainError for
/// non-finite x.
double gaussian_q(double x);

/// Nodes and weights for order >= 2, mapped affinely from [-1, 1].
QuadratureRule gauss_legendre_half_pi(std::size_t order);

/// Shared default-order rule (built once).
const QuadratureRule& default_quadrature();

/// exp(numer / denom), returning exactly 0 once the ratio drops below -745.
double stable_exp_ratio(double numer, double denom);

}  // namespace risnoma
