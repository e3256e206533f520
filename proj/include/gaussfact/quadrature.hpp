#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace gaussfact {

struct QuadratureNode {
    double x = 0.0;
    double w = 0.0;
};

/**
 * Gauss-Legendre rule mapped to [0, 1]: weights sum to 1, exact for
 * polynomials up to degree 2n-1. Nodes come from Newton iteration seeded
 * with the Chebyshev estimate of the Legendre roots.
 */
inline std::vector<QuadratureNode> gauss_legendre_unit(int n)
{
    if (n < 1)
        throw std::domain_error("gauss_legendre_unit: need at least one node");
    std::vector<QuadratureNode> nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence for P_n(x) and P_{n-1}(x).
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map from [-1, 1] to [0, 1]; Jacobian halves the weight.
        nodes[static_cast<std::size_t>(i)] = {0.5 * (x + 1.0), 0.5 * w};
    }
    return nodes;
}

} // namespace gaussfact
