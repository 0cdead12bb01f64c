#pragma once

// Standard-normal numerics: CDF, quantile, the folded-normal exceedance
// probability, and the two-sided threshold root-finder used by the RDT test.
//
// Accuracy contracts (enforced by the unit suite against independent oracles):
//   phi            absolute error <= 1e-12
//   phi_inv        |phi(phi_inv(p)) - p| <= 1e-12
//   rdt_threshold  defining-equation residual <= 1e-10
//
// All functions are pure and safe to call concurrently.

#include "mpdet/probability.hpp"

namespace mpdet {

/// Standard normal CDF. Throws std::domain_error on non-finite input.
Probability phi(double x);

/// Standard normal quantile for p in (0, 1); inverse of phi.
/// Rational initial estimate refined by Halley steps against phi, with a
/// guaranteed-convergent bisection fallback if refinement ever stalls.
double phi_inv(double p);

/// P(|N(a,1)| > b) = 2 - phi(b - a) - phi(b + a) for a, b >= 0.
/// Throws std::domain_error on negative input.
Probability q_half(double a, double b);

/// Inputs of the two-sided threshold equation 2 - phi(x-a) - phi(x+a) = gamma.
/// Requires 0 < gamma < 1 and a >= 0.
struct ThresholdQuery {
    double gamma;
    double a;

    ThresholdQuery(double gamma_, double a_);
};

/// Unique root lambda >= 0 of 2 - phi(lambda - a) - phi(lambda + a) = gamma.
/// The left-hand side is strictly decreasing in lambda, so bisection on
/// [0, a + phi_inv(1 - gamma/4) + 10] converges unconditionally.
double rdt_threshold(const ThresholdQuery& query);
double rdt_threshold(double gamma, double a);

/// 2 - phi(lambda - a) - phi(lambda + a) - gamma, the equation residual.
double rdt_threshold_residual(double gamma, double a, double lambda);

}  // namespace mpdet
