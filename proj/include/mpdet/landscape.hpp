#pragma once

// Builds a finite preorder abstraction of the NP and RDT test landscapes:
// one element per (family, n) plus a single oracle element at the top, with
// the order relating equal-selectivity tests of the same sample count by
// pointwise power dominance and placing every element below the oracle.
//
// All oracle landscapes are order-isomorphic, so they collapse to one
// element. The verdict produced from this structure is a finite witness for
// the Multiplicity Principle, evaluated on the configured (n, q) grids; it
// does not by itself prove the quantification over all interference
// sequences.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpdet/detection.hpp"
#include "mpdet/preorder.hpp"

namespace mpdet {

enum class LandscapeRole { np, rdt, oracle };

/// One abstracted landscape: which test produced it, its selectivity, and its
/// detection-probability profile over the applicable q-grid points (q = 0 for
/// NP, q_grid intersected with [0, tau] for RDT; every point for the oracle).
struct LandscapeElement {
    std::string label;
    LandscapeRole role;
    std::size_t n = 0;  // 0 for the oracle
    std::optional<SelectivityDescriptor> selectivity;
    std::map<double, double> power_profile;
    std::map<double, double> power_halfwidth;  // CI half-widths; zero in analytic mode
};

enum class AbstractionMode { analytic, mc };

struct AbstractionConfig {
    double gamma = 0.05;
    double tau = 0.25;  // must lie in (0, 1/2): tau = 0 collapses the two selectivities
    std::vector<std::size_t> n_grid;
    std::vector<double> q_grid;
    AbstractionMode mode = AbstractionMode::analytic;
    std::uint64_t trials = 100000;  // mc mode only
    std::uint64_t seed = 1;         // mc mode only
    unsigned threads = 1;           // mc mode only
};

struct LandscapeAbstraction {
    FinitePreorder preorder;
    std::vector<LandscapeElement> elements;   // index-aligned with the preorder
    std::vector<std::size_t> np_set;          // the A side of the MP check
    std::vector<std::size_t> rdt_set;         // the B side
    std::size_t oracle_index;
    AbstractionMode mode;
};

/// True when f's power profile lies at or below g's at every grid point,
/// beyond the confidence half-widths when those are nonzero. The two
/// profiles must cover the same q points.
bool power_dominates(const LandscapeElement& f, const LandscapeElement& g);

LandscapeAbstraction build_landscape_abstraction(const AbstractionConfig& config);

/// Serializes a verdict over an abstraction:
/// {holds, mode, gamma, tau, n_grid, q_grid, witnesses, relation_matrix, ...}.
nlohmann::json verdict_json(const LandscapeAbstraction& abstraction, const MPVerdict& verdict,
                            const AbstractionConfig& config);

}  // namespace mpdet
