#include "mpdet/monte_carlo.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace mpdet {

namespace {

std::uint64_t count_successes(const TestSpec& test, const ObservationSpec& model,
                              std::uint64_t first_trial, std::uint64_t last_trial) {
    std::vector<double> buffer(model.n);
    std::uint64_t successes = 0;
    for (std::uint64_t t = first_trial; t < last_trial; ++t) {
        generate_into(model, t, buffer);
        successes += decide(test, buffer) ? 1 : 0;
    }
    return successes;
}

MCEstimate run_estimate(const TestSpec& test, ObservationSpec model, bool epsilon,
                        std::uint64_t trials, double z, unsigned threads) {
    if (model.n != test.n()) {
        throw std::invalid_argument("estimate: model.n must equal test.n");
    }
    if (trials < 1) {
        throw std::invalid_argument("estimate: trials must be >= 1");
    }
    model.epsilon = epsilon;
    test.threshold();  // resolve once before fanning out

    std::uint64_t successes = 0;
    if (threads <= 1) {
        successes = count_successes(test, model, 0, trials);
    } else {
        const std::uint64_t workers = std::min<std::uint64_t>(threads, trials);
        std::vector<std::uint64_t> partial(workers, 0);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) {
            const std::uint64_t first = trials * w / workers;
            const std::uint64_t last = trials * (w + 1) / workers;
            pool.emplace_back([&, w, first, last] {
                partial[w] = count_successes(test, model, first, last);
            });
        }
        for (auto& worker : pool) worker.join();
        for (const auto count : partial) successes += count;
    }

    const auto [lo, hi] = wilson_ci(successes, trials, z);
    return MCEstimate{Probability(static_cast<double>(successes) / static_cast<double>(trials)),
                      trials, lo, hi, model.seed, z};
}

double round6(double value) { return std::round(value * 1e6) / 1e6; }

}  // namespace

std::pair<Probability, Probability> wilson_ci(std::uint64_t successes, std::uint64_t trials,
                                              double z) {
    if (trials < 1) {
        throw std::invalid_argument("wilson_ci: trials must be >= 1");
    }
    if (successes > trials) {
        throw std::invalid_argument("wilson_ci: successes must not exceed trials");
    }
    if (!(z > 0.0)) {
        throw std::invalid_argument("wilson_ci: z must be positive");
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {Probability::clamped(center - half), Probability::clamped(center + half)};
}

MCEstimate estimate_pfa(const TestSpec& test, ObservationSpec model, std::uint64_t trials,
                        double z, unsigned threads) {
    return run_estimate(test, model, false, trials, z, threads);
}

MCEstimate estimate_pdet(const TestSpec& test, ObservationSpec model, std::uint64_t trials,
                         double z, unsigned threads) {
    return run_estimate(test, model, true, trials, z, threads);
}

std::vector<SweepRow> sweep(const SweepConfig& config) {
    std::vector<SweepRow> rows;
    rows.reserve(config.n_list.size());
    for (const std::size_t n : config.n_list) {
        const TestSpec test = config.kind == TestKind::np
                                  ? TestSpec::np(n, config.gamma)
                                  : TestSpec::rdt(n, config.gamma, config.tau);
        const ObservationSpec model(false, config.q, n, config.interference, config.seed);
        const Probability reference =
            config.kind == TestKind::np
                ? np_power_exact(config.gamma, n)
                : rdt_power_lower_bound(config.gamma, config.tau, config.q, n);
        rows.push_back(SweepRow{n, config.trials,
                                estimate_pfa(test, model, config.trials, config.z, config.threads),
                                estimate_pdet(test, model, config.trials, config.z, config.threads),
                                reference});
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "n,trials,pfa,pfa_lo,pfa_hi,pdet,pdet_lo,pdet_hi,reference\n";
    char line[256];
    for (const auto& row : rows) {
        std::snprintf(line, sizeof line, "%zu,%llu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", row.n,
                      static_cast<unsigned long long>(row.trials), row.pfa.p_hat.value(),
                      row.pfa.ci_low.value(), row.pfa.ci_high.value(), row.pdet.p_hat.value(),
                      row.pdet.ci_low.value(), row.pdet.ci_high.value(), row.reference.value());
        out += line;
    }
    return out;
}

nlohmann::json sweep_json(const std::vector<SweepRow>& rows) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& row : rows) {
        records.push_back({{"n", row.n},
                           {"trials", row.trials},
                           {"pfa", round6(row.pfa.p_hat)},
                           {"pfa_lo", round6(row.pfa.ci_low)},
                           {"pfa_hi", round6(row.pfa.ci_high)},
                           {"pdet", round6(row.pdet.p_hat)},
                           {"pdet_lo", round6(row.pdet.ci_low)},
                           {"pdet_hi", round6(row.pdet.ci_high)},
                           {"reference", round6(row.reference)}});
    }
    return records;
}

}  // namespace mpdet
