#pragma once

// Monte Carlo estimation of false-alarm and detection probabilities, with
// Wilson confidence intervals and sweep tables over n.
//
// Trials are independent and keyed by (seed, trial index), so the harness may
// split them across worker threads; aggregation is an integer success count,
// which keeps results bit-identical for any thread count.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mpdet/detection.hpp"
#include "mpdet/observation.hpp"
#include "mpdet/probability.hpp"

namespace mpdet {

/// A binomial proportion estimate with its Wilson score interval.
struct MCEstimate {
    Probability p_hat;
    std::uint64_t trials;
    Probability ci_low;
    Probability ci_high;
    std::uint64_t seed;
    double z;  // critical value the interval was computed at
};

/// Wilson score interval for `successes` out of `trials` at critical value z.
/// The returned interval always contains successes/trials.
std::pair<Probability, Probability> wilson_ci(std::uint64_t successes, std::uint64_t trials,
                                              double z);

/// Empirical false-alarm probability: fraction of decide()==1 over trials of
/// the model with the signal forced absent. model.n must equal test.n().
MCEstimate estimate_pfa(const TestSpec& test, ObservationSpec model, std::uint64_t trials,
                        double z = 3.0, unsigned threads = 1);

/// Empirical detection probability: same with the signal forced present.
MCEstimate estimate_pdet(const TestSpec& test, ObservationSpec model, std::uint64_t trials,
                         double z = 3.0, unsigned threads = 1);

struct SweepConfig {
    TestKind kind = TestKind::np;
    double gamma = 0.05;
    double tau = 0.0;  // RDT only
    double q = 0.0;
    InterferenceKind interference = InterferenceKind::zero();
    std::vector<std::size_t> n_list;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    double z = 3.0;
    unsigned threads = 1;
};

/// One sweep row: empirical size and power at a given n, next to the analytic
/// reference (exact NP power, or the RDT power lower bound).
struct SweepRow {
    std::size_t n;
    std::uint64_t trials;
    MCEstimate pfa;
    MCEstimate pdet;
    Probability reference;
};

/// Runs estimate_pfa and estimate_pdet for every n in config.n_list.
std::vector<SweepRow> sweep(const SweepConfig& config);

/// CSV with header n,trials,pfa,pfa_lo,pfa_hi,pdet,pdet_lo,pdet_hi,reference.
/// Probabilities print with 6 decimal places.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// JSON array of records with the same keys as the CSV columns.
nlohmann::json sweep_json(const std::vector<SweepRow>& rows);

}  // namespace mpdet
