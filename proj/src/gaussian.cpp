#include "mpdet/gaussian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mpdet {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490392848;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684759;

// Rational approximation for the normal quantile (Acklam). Relative error
// below 1.2e-9 over the whole open unit interval; used only as the seed for
// the Halley refinement in phi_inv.
double quantile_estimate(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

double phi_raw(double x) {
    // Complement-aware composition keeps full relative accuracy in the small
    // tail and sub-ulp absolute accuracy near 1.
    if (x >= 0.0) return 1.0 - 0.5 * std::erfc(x * kInvSqrt2);
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double phi_inv_bisect(double p) {
    double lo = -40.0, hi = 40.0;
    while (hi - lo > 1e-15 * std::max(1.0, std::min(std::fabs(lo), std::fabs(hi)))) {
        const double mid = 0.5 * (lo + hi);
        if (phi_raw(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (mid == lo || mid == hi) break;  // bracket narrowed to adjacent doubles
    }
    return 0.5 * (lo + hi);
}

}  // namespace

Probability phi(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("phi: non-finite input");
    }
    return Probability(phi_raw(x));
}

double phi_inv(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("phi_inv: p must lie in (0,1), got " + std::to_string(p));
    }
    double x = quantile_estimate(p);
    for (int iter = 0; iter < 4; ++iter) {
        const double err = phi_raw(x) - p;
        if (err == 0.0) {
            return x;
        }
        const double density = std::exp(-0.5 * x * x) * kInvSqrt2Pi;
        if (density <= 0.0) {
            return x;  // beyond |x|~38.6 the residual is below any tolerance anyway
        }
        const double newton = err / density;
        const double next = x - newton / (1.0 + 0.5 * x * newton);
        if (next == x) {
            return x;
        }
        x = next;
    }
    // Converged iterates oscillate by at most one ulp here; anything larger
    // means the refinement stalled and the bisection guarantee takes over.
    if (std::fabs(phi_raw(x) - p) <= 1e-13) {
        return x;
    }
    return phi_inv_bisect(p);
}

Probability q_half(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0)) {
        throw std::domain_error("q_half: arguments must be nonnegative");
    }
    // P(|N(a,1)| > b); both phi terms are <= 1 so the expression stays in [0,1].
    return Probability(2.0 - phi_raw(b - a) - phi_raw(b + a));
}

ThresholdQuery::ThresholdQuery(double gamma_, double a_) : gamma(gamma_), a(a_) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw std::domain_error("ThresholdQuery: gamma must lie in (0,1)");
    }
    if (!(a >= 0.0) || !std::isfinite(a)) {
        throw std::domain_error("ThresholdQuery: a must be finite and nonnegative");
    }
}

double rdt_threshold(const ThresholdQuery& query) {
    const double gamma = query.gamma;
    const double a = query.a;

    // g(x) = 2 - phi(x-a) - phi(x+a) - gamma decreases strictly from 1 - gamma
    // at x = 0 toward -gamma, so the root is bracketed by construction.
    const auto g = [&](double x) { return 2.0 - phi_raw(x - a) - phi_raw(x + a) - gamma; };

    double lo = 0.0;
    double hi = a + phi_inv(1.0 - gamma / 4.0) + 10.0;
    if (g(hi) > 0.0) {
        throw std::logic_error("rdt_threshold: bracket endpoint failed (internal error)");
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (mid == lo || mid == hi) break;
    }
    return 0.5 * (lo + hi);
}

double rdt_threshold(double gamma, double a) { return rdt_threshold(ThresholdQuery(gamma, a)); }

double rdt_threshold_residual(double gamma, double a, double lambda) {
    return 2.0 - phi_raw(lambda - a) - phi_raw(lambda + a) - gamma;
}

}  // namespace mpdet
