#pragma once

#include "bloch/types.hpp"

namespace bloch {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [a, b] (Golub-Welsch on the Jacobi matrix).
QuadRule gauss_legendre(int n, double a, double b);

/// Uniform trapezoid rule on [0, 2*pi) for periodic integrands (n equal weights).
QuadRule periodic_trapezoid(int n);

}  // namespace bloch
