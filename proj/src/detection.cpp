#include "mpdet/detection.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mpdet/gaussian.hpp"

namespace mpdet {

namespace {

// Shared threshold cache. A plain mutex around the map gives at-most-once
// computation per key; entries are immutable once inserted.
double rdt_threshold_cached(double gamma, double a) {
    static std::mutex mutex;
    static std::map<std::pair<double, double>, double> cache;

    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_pair(gamma, a);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, rdt_threshold(gamma, a)).first;
    }
    return it->second;
}

double sum_of(std::span<const double> y) { return std::accumulate(y.begin(), y.end(), 0.0); }

void require_dimension(const TestSpec& spec, std::span<const double> y) {
    if (y.size() != spec.n()) {
        throw std::invalid_argument("decide: observation length must equal spec.n");
    }
}

}  // namespace

TestSpec::TestSpec(TestKind kind, std::size_t n, double gamma, double tau)
    : kind_(kind), n_(n), gamma_(gamma), tau_(tau) {
    if (n < 1) {
        throw std::invalid_argument("TestSpec: n must be >= 1");
    }
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("TestSpec: gamma must lie in (0,1)");
    }
    if (kind == TestKind::rdt && !(tau >= 0.0 && tau < 0.5)) {
        throw std::invalid_argument("TestSpec: tau must lie in [0, 1/2)");
    }
}

TestSpec TestSpec::np(std::size_t n, double gamma) { return TestSpec(TestKind::np, n, gamma, 0.0); }

TestSpec TestSpec::rdt(std::size_t n, double gamma, double tau) {
    return TestSpec(TestKind::rdt, n, gamma, tau);
}

double TestSpec::tau() const {
    if (kind_ != TestKind::rdt) {
        throw std::logic_error("TestSpec: tau is only defined for RDT specs");
    }
    return tau_;
}

double TestSpec::threshold() const {
    if (threshold_override_) {
        return *threshold_override_;
    }
    const double root_n = std::sqrt(static_cast<double>(n_));
    if (kind_ == TestKind::np) {
        return root_n * phi_inv(1.0 - gamma_);
    }
    return root_n * rdt_threshold_cached(gamma_, tau_ * root_n);
}

TestSpec TestSpec::with_threshold_override(double threshold) const {
    TestSpec copy = *this;
    copy.threshold_override_ = threshold;
    return copy;
}

bool np_decide(const TestSpec& spec, std::span<const double> y) {
    if (spec.kind() != TestKind::np) {
        throw std::invalid_argument("np_decide: spec is not an NP test");
    }
    require_dimension(spec, y);
    return sum_of(y) > spec.threshold();
}

bool rdt_decide(const TestSpec& spec, std::span<const double> y) {
    if (spec.kind() != TestKind::rdt) {
        throw std::invalid_argument("rdt_decide: spec is not an RDT test");
    }
    require_dimension(spec, y);
    return std::fabs(sum_of(y)) > spec.threshold();
}

bool decide(const TestSpec& spec, std::span<const double> y) {
    return spec.kind() == TestKind::np ? np_decide(spec, y) : rdt_decide(spec, y);
}

Probability np_power_exact(double gamma, std::size_t n) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw std::domain_error("np_power_exact: gamma must lie in (0,1)");
    }
    if (n < 1) {
        throw std::domain_error("np_power_exact: n must be >= 1");
    }
    return Probability(1.0 - phi(phi_inv(1.0 - gamma) - std::sqrt(static_cast<double>(n))));
}

Probability rdt_power_lower_bound(double gamma, double tau, double q, std::size_t n) {
    if (!(tau >= 0.0 && tau < 0.5)) {
        throw std::domain_error("rdt_power_lower_bound: tau must lie in [0, 1/2)");
    }
    if (!(q >= 0.0 && q <= tau)) {
        throw std::domain_error("rdt_power_lower_bound: q must lie in [0, tau]");
    }
    if (n < 1) {
        throw std::domain_error("rdt_power_lower_bound: n must be >= 1");
    }
    const double root_n = std::sqrt(static_cast<double>(n));
    return q_half((1.0 - q) * root_n, rdt_threshold_cached(gamma, tau * root_n));
}

SelectivityDescriptor selectivity_of(const TestSpec& spec) {
    if (spec.kind() == TestKind::np) {
        return {SelectivityKind::singleton_zero, 0.0};
    }
    return {SelectivityKind::closed_interval, spec.tau()};
}

InvarianceReport check_invariance_and_integration(const TestSpec& spec,
                                                  std::span<const double> y) {
    require_dimension(spec, y);
    const bool original = decide(spec, y);

    std::vector<double> negated(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) negated[i] = -y[i];

    const double mean = sum_of(y) / static_cast<double>(y.size());
    std::vector<double> averaged(y.size(), mean);

    return {original == decide(spec, negated), original == decide(spec, averaged)};
}

}  // namespace mpdet
