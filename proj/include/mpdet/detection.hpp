#pragma once

// The two test families and their performance formulas.
//
// NP:  decide 1 iff  sum(y) >  sqrt(n) * phi_inv(1 - gamma)
// RDT: decide 1 iff |sum(y)| > sqrt(n) * lambda_gamma(tau * sqrt(n))
//
// The RDT comparison is deliberately the rejection form (detect on large
// |sum|); it is the direction under which the size stays below gamma for all
// interference with |mean| <= tau and the power tends to 1. Ties decide 0.

#include <cstddef>
#include <optional>
#include <span>

#include "mpdet/probability.hpp"

namespace mpdet {

enum class TestKind { np, rdt };

/// One parameterized detector. Immutable after construction; the comparison
/// threshold is resolved lazily and cached per (gamma, tau*sqrt(n)), so a spec
/// reused across millions of trials pays for one root-find.
class TestSpec {
  public:
    static TestSpec np(std::size_t n, double gamma);
    static TestSpec rdt(std::size_t n, double gamma, double tau);

    TestKind kind() const { return kind_; }
    std::size_t n() const { return n_; }
    double gamma() const { return gamma_; }

    /// RDT only; calling on an NP spec throws std::logic_error.
    double tau() const;

    /// Comparison threshold for the sum statistic: sqrt(n)*phi_inv(1-gamma)
    /// for NP, sqrt(n)*lambda_gamma(tau*sqrt(n)) for RDT. Honors the
    /// diagnostic override when one is set.
    double threshold() const;

    /// Diagnostic hook: replaces the comparison threshold (e.g. -inf forces
    /// every decision to 1). Returns a modified copy.
    TestSpec with_threshold_override(double threshold) const;
    std::optional<double> threshold_override() const { return threshold_override_; }

  private:
    TestSpec(TestKind kind, std::size_t n, double gamma, double tau);

    TestKind kind_;
    std::size_t n_;
    double gamma_;
    double tau_;
    std::optional<double> threshold_override_;
};

/// sum(y) > threshold. Requires spec.kind()==np and y.size()==spec.n().
bool np_decide(const TestSpec& spec, std::span<const double> y);

/// |sum(y)| > threshold. Requires spec.kind()==rdt and y.size()==spec.n().
bool rdt_decide(const TestSpec& spec, std::span<const double> y);

/// Dispatches on spec.kind().
bool decide(const TestSpec& spec, std::span<const double> y);

/// Exact detection probability of the NP test under zero interference:
/// 1 - phi(phi_inv(1-gamma) - sqrt(n)).
Probability np_power_exact(double gamma, std::size_t n);

/// Detection-probability lower bound of the RDT test:
/// q_half((1-q)*sqrt(n), lambda_gamma(tau*sqrt(n))), valid for 0 <= q <= tau < 1/2.
Probability rdt_power_lower_bound(double gamma, double tau, double q, std::size_t n);

enum class SelectivityKind { singleton_zero, closed_interval };

/// The set of interference bounds q under which a test keeps its level:
/// {0} for NP, [0, upper] for RDT.
struct SelectivityDescriptor {
    SelectivityKind kind;
    double upper = 0.0;  // closed_interval only

    bool operator==(const SelectivityDescriptor& other) const {
        if (kind != other.kind) return false;
        return kind == SelectivityKind::singleton_zero || upper == other.upper;
    }
};

SelectivityDescriptor selectivity_of(const TestSpec& spec);

struct InvarianceReport {
    bool sign_invariant;  // decide(y) == decide(-y)
    bool integrator;      // decide(y) == decide(mean(y) repeated n times)
};

/// Evaluates the sign-invariance and integrator properties on a concrete
/// input. RDT satisfies both on every input; NP need not.
InvarianceReport check_invariance_and_integration(const TestSpec& spec, std::span<const double> y);

}  // namespace mpdet
