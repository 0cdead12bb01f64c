#include "mpdet/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mpdet/monte_carlo.hpp"
#include "mpdet/observation.hpp"

namespace mpdet {

namespace {

void validate_config(const AbstractionConfig& config) {
    if (!(config.gamma > 0.0 && config.gamma < 1.0)) {
        throw std::invalid_argument("landscape: gamma must lie in (0,1)");
    }
    if (!(config.tau > 0.0 && config.tau < 0.5)) {
        throw std::invalid_argument(
            "landscape: tau must lie in (0, 1/2); tau = 0 makes the NP and RDT selectivities "
            "extensionally equal and the families are no longer structurally distinct");
    }
    if (config.n_grid.empty()) {
        throw std::invalid_argument("landscape: n_grid must be nonempty");
    }
    for (const auto n : config.n_grid) {
        if (n < 1) throw std::invalid_argument("landscape: n_grid entries must be >= 1");
    }
    if (config.q_grid.empty()) {
        throw std::invalid_argument("landscape: q_grid must be nonempty");
    }
    bool has_applicable_q = false;
    for (const auto q : config.q_grid) {
        if (!(q >= 0.0 && q < 0.5)) {
            throw std::invalid_argument("landscape: q_grid entries must lie in [0, 1/2)");
        }
        if (q <= config.tau) has_applicable_q = true;
    }
    if (!has_applicable_q) {
        throw std::invalid_argument("landscape: q_grid must intersect [0, tau]");
    }
}

// Wilson center and half-width: keeps stored mc powers strictly inside (0,1)
// even when every trial succeeds.
std::pair<double, double> mc_power(const TestSpec& test, double q, const AbstractionConfig& config) {
    const ObservationSpec model(true, q, test.n(), InterferenceKind::worst_case_size(),
                                config.seed);
    const MCEstimate estimate =
        estimate_pdet(test, model, config.trials, 3.0, config.threads);
    const double lo = estimate.ci_low;
    const double hi = estimate.ci_high;
    return {0.5 * (lo + hi), 0.5 * (hi - lo)};
}

void validate_element(const LandscapeElement& element) {
    for (const auto& [q, power] : element.power_profile) {
        if (element.role == LandscapeRole::oracle) {
            if (power != 1.0) {
                throw std::logic_error("landscape: oracle power must be 1 at every grid point");
            }
        } else if (!(power > 0.0 && power < 1.0)) {
            throw std::logic_error("landscape: non-oracle power fell outside (0,1) at " +
                                   element.label);
        }
    }
}

}  // namespace

bool power_dominates(const LandscapeElement& f, const LandscapeElement& g) {
    if (f.power_profile.size() != g.power_profile.size()) {
        throw std::invalid_argument("power_dominates: profiles cover different q grids");
    }
    auto it_g = g.power_profile.begin();
    for (const auto& [q, power_f] : f.power_profile) {
        if (it_g->first != q) {
            throw std::invalid_argument("power_dominates: profiles cover different q grids");
        }
        const double hw_f = f.power_halfwidth.count(q) ? f.power_halfwidth.at(q) : 0.0;
        const double hw_g = g.power_halfwidth.count(q) ? g.power_halfwidth.at(q) : 0.0;
        if (!(power_f + hw_f <= it_g->second - hw_g)) {
            return false;
        }
        ++it_g;
    }
    return true;
}

LandscapeAbstraction build_landscape_abstraction(const AbstractionConfig& config) {
    validate_config(config);

    std::vector<double> rdt_qs;
    for (const auto q : config.q_grid) {
        if (q <= config.tau) rdt_qs.push_back(q);
    }
    std::sort(rdt_qs.begin(), rdt_qs.end());
    rdt_qs.erase(std::unique(rdt_qs.begin(), rdt_qs.end()), rdt_qs.end());

    const bool analytic = config.mode == AbstractionMode::analytic;

    std::vector<LandscapeElement> elements;
    std::vector<std::size_t> np_set, rdt_set;

    for (const auto n : config.n_grid) {
        LandscapeElement element;
        element.label = "NP(" + std::to_string(n) + ")";
        element.role = LandscapeRole::np;
        element.n = n;
        element.selectivity = SelectivityDescriptor{SelectivityKind::singleton_zero, 0.0};
        if (analytic) {
            element.power_profile[0.0] = np_power_exact(config.gamma, n);
            element.power_halfwidth[0.0] = 0.0;
        } else {
            const auto [center, half] = mc_power(TestSpec::np(n, config.gamma), 0.0, config);
            element.power_profile[0.0] = center;
            element.power_halfwidth[0.0] = half;
        }
        np_set.push_back(elements.size());
        elements.push_back(std::move(element));
    }

    for (const auto n : config.n_grid) {
        LandscapeElement element;
        element.label = "RDT(" + std::to_string(n) + ")";
        element.role = LandscapeRole::rdt;
        element.n = n;
        element.selectivity = SelectivityDescriptor{SelectivityKind::closed_interval, config.tau};
        for (const auto q : rdt_qs) {
            if (analytic) {
                element.power_profile[q] = rdt_power_lower_bound(config.gamma, config.tau, q, n);
                element.power_halfwidth[q] = 0.0;
            } else {
                const auto [center, half] =
                    mc_power(TestSpec::rdt(n, config.gamma, config.tau), q, config);
                element.power_profile[q] = center;
                element.power_halfwidth[q] = half;
            }
        }
        rdt_set.push_back(elements.size());
        elements.push_back(std::move(element));
    }

    LandscapeElement oracle;
    oracle.label = "oracle";
    oracle.role = LandscapeRole::oracle;
    oracle.power_profile[0.0] = 1.0;
    for (const auto q : rdt_qs) oracle.power_profile[q] = 1.0;
    const std::size_t oracle_index = elements.size();
    elements.push_back(std::move(oracle));

    for (const auto& element : elements) validate_element(element);

    // Order relation. Distinct non-oracle elements compare only when they
    // have the same selectivity and the same sample count, and then by
    // pointwise power dominance; the oracle sits strictly above everything.
    // Tests of different sample counts stay incomparable: the preorder
    // relates same-dimension tests only, which is what keeps the oracle the
    // unique shared upper bound of each family.
    const std::size_t count = elements.size();
    std::vector<std::vector<bool>> relation(count, std::vector<bool>(count, false));
    std::vector<std::string> labels;
    labels.reserve(count);
    for (const auto& element : elements) labels.push_back(element.label);

    for (std::size_t i = 0; i < count; ++i) {
        relation[i][i] = true;
        relation[i][oracle_index] = true;
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (i == oracle_index) continue;
        for (std::size_t j = 0; j < count; ++j) {
            if (j == oracle_index || i == j) continue;
            const auto& f = elements[i];
            const auto& g = elements[j];
            if (f.selectivity == g.selectivity && f.n == g.n && power_dominates(f, g)) {
                relation[i][j] = true;
            }
        }
    }

    return LandscapeAbstraction{FinitePreorder(std::move(labels), std::move(relation)),
                                std::move(elements), std::move(np_set), std::move(rdt_set),
                                oracle_index, config.mode};
}

nlohmann::json verdict_json(const LandscapeAbstraction& abstraction, const MPVerdict& verdict,
                            const AbstractionConfig& config) {
    const auto& preorder = abstraction.preorder;

    nlohmann::json matrix = nlohmann::json::array();
    for (std::size_t i = 0; i < preorder.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < preorder.size(); ++j) {
            row.push_back(preorder.leq(i, j));
        }
        matrix.push_back(std::move(row));
    }

    nlohmann::json same_upper = nlohmann::json::array();
    for (const auto u : verdict.witness_same_upper) same_upper.push_back(preorder.label(u));

    nlohmann::json witnesses = {
        {"same_upper_bounds", same_upper},
        {"a_without_upper_in_b",
         verdict.witness_a ? nlohmann::json(preorder.label(*verdict.witness_a)) : nullptr},
        {"b_without_upper_in_a",
         verdict.witness_b ? nlohmann::json(preorder.label(*verdict.witness_b)) : nullptr},
    };

    nlohmann::json notes = nlohmann::json::array();
    notes.push_back(
        "finite witness: dominance evaluated on the configured (n, q) grids, not over all "
        "interference sequences");
    notes.push_back("rdt decision rule: reject when |sum(y)| > sqrt(n) * lambda");
    if (abstraction.mode == AbstractionMode::mc) {
        notes.push_back(
            "mc mode: powers are Wilson interval centers under worst-case interference; "
            "dominance requires the intervals to separate");
    }

    nlohmann::json result = {
        {"holds", verdict.holds},
        {"mode", abstraction.mode == AbstractionMode::analytic ? "analytic" : "mc"},
        {"gamma", config.gamma},
        {"tau", config.tau},
        {"n_grid", config.n_grid},
        {"q_grid", config.q_grid},
        {"elements", preorder.labels()},
        {"witnesses", witnesses},
        {"relation_matrix", matrix},
        {"lemma_condition", verdict.lemma_condition},
        {"failure_reason",
         verdict.failure_reason ? nlohmann::json(*verdict.failure_reason) : nullptr},
        {"notes", notes},
    };
    if (abstraction.mode == AbstractionMode::mc) {
        result["mc_trials"] = config.trials;
        result["mc_seed"] = config.seed;
    }
    return result;
}

}  // namespace mpdet
