// Command-line front end: threshold tables, power curves, Monte Carlo sweeps,
// the selectivity demonstration, and the multiplicity-principle report.
//
// Exit codes: 0 success / verdict holds, 1 verdict fails, 2 usage error,
// 3 I/O error. Output is deterministic given the flags, seed included.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpdet/detection.hpp"
#include "mpdet/gaussian.hpp"
#include "mpdet/landscape.hpp"
#include "mpdet/monte_carlo.hpp"
#include "mpdet/observation.hpp"
#include "mpdet/preorder.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdictFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

const char* kRdtRuleNote = "rdt decision rule: reject when |sum(y)| > sqrt(n) * lambda";

int write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return kExitOk;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open " << path << " for writing\n";
        return kExitIo;
    }
    out << content;
    if (!out.good()) {
        std::cerr << "error: failed writing " << path << "\n";
        return kExitIo;
    }
    return kExitOk;
}

std::string format6(double p) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6f", p);
    return buffer;
}

std::string format10g(double x) {
    char buffer[48];
    std::snprintf(buffer, sizeof buffer, "%.10g", x);
    return buffer;
}

int cmd_threshold(double gamma, double tau, std::size_t n, const std::string& out) {
    const double a = tau * std::sqrt(static_cast<double>(n));
    const double lambda = mpdet::rdt_threshold(gamma, a);
    const double residual = mpdet::rdt_threshold_residual(gamma, a, lambda);
    char buffer[64];
    std::string text;
    text += "gamma " + format10g(gamma) + "\n";
    text += "a " + format10g(a) + "\n";
    text += "lambda " + format10g(lambda) + "\n";
    std::snprintf(buffer, sizeof buffer, "residual %.3e\n", residual);
    text += buffer;
    return write_output(out, text);
}

int cmd_np_power(double gamma, const std::vector<std::size_t>& n_list, const std::string& format,
                 const std::string& out) {
    if (format == "json") {
        nlohmann::json records = nlohmann::json::array();
        for (const auto n : n_list) {
            const double power = mpdet::np_power_exact(gamma, n);
            records.push_back({{"n", n}, {"power", std::round(power * 1e6) / 1e6}});
        }
        return write_output(out, records.dump(2) + "\n");
    }
    std::string text = "n,power\n";
    for (const auto n : n_list) {
        text += std::to_string(n) + "," + format6(mpdet::np_power_exact(gamma, n)) + "\n";
    }
    return write_output(out, text);
}

int cmd_sweep(const mpdet::SweepConfig& config, const std::string& format,
              const std::string& out) {
    const auto rows = mpdet::sweep(config);
    if (format == "json") {
        return write_output(out, mpdet::sweep_json(rows).dump(2) + "\n");
    }
    return write_output(out, mpdet::sweep_csv(rows));
}

int cmd_selectivity_demo(double gamma, double q, std::size_t n, std::uint64_t trials,
                         std::uint64_t seed, unsigned threads, double rdt_tau,
                         const std::string& out) {
    const mpdet::ObservationSpec model(false, q, n, mpdet::InterferenceKind::worst_case_size(),
                                       seed);
    const auto np = mpdet::estimate_pfa(mpdet::TestSpec::np(n, gamma), model, trials, 3.0, threads);
    const auto rdt = mpdet::estimate_pfa(mpdet::TestSpec::rdt(n, gamma, rdt_tau), model, trials,
                                         3.0, threads);

    const auto sigma = [&](double p) {
        return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    };
    const bool np_violated = np.p_hat - 3.0 * sigma(np.p_hat) > gamma;
    const bool rdt_within = rdt.p_hat <= gamma + 3.0 * sigma(rdt.p_hat);

    std::string text;
    text += "selectivity demo  gamma=" + format6(gamma) + " q=" + format6(q) +
            " n=" + std::to_string(n) + " trials=" + std::to_string(trials) +
            " seed=" + std::to_string(seed) + "\n";
    text += "interference: worst (constant +q)\n";
    text += std::string(kRdtRuleNote) + "\n";
    text += "np  pfa=" + format6(np.p_hat) + " ci3s=[" + format6(np.ci_low) + "," +
            format6(np.ci_high) + "] level=" + format6(gamma) + "  " +
            (np_violated ? "NP size guarantee violated for q>0" : "within level") + "\n";
    text += "rdt tau=" + format6(rdt_tau) + " pfa=" + format6(rdt.p_hat) + " ci3s=[" +
            format6(rdt.ci_low) + "," + format6(rdt.ci_high) + "] level=" + format6(gamma) +
            "  " + (rdt_within ? "within level" : "level exceeded") + "\n";
    return write_output(out, text);
}

int cmd_mp_check(const mpdet::AbstractionConfig& config, const std::string& out) {
    if (config.tau == 0.0) {
        // Degenerate case: NP selectivity {0} and RDT selectivity [0,0] coincide
        // extensionally, so the structural-difference premise is void.
        nlohmann::json verdict = {
            {"holds", false},
            {"mode", config.mode == mpdet::AbstractionMode::analytic ? "analytic" : "mc"},
            {"gamma", config.gamma},
            {"tau", 0.0},
            {"n_grid", config.n_grid},
            {"q_grid", config.q_grid},
            {"elements", nullptr},
            {"witnesses", nullptr},
            {"relation_matrix", nullptr},
            {"lemma_condition", false},
            {"failure_reason",
             "tau = 0: NP selectivity {0} and RDT selectivity [0,0] coincide extensionally; "
             "the two families are not structurally distinct"},
            {"notes", nlohmann::json::array({kRdtRuleNote})},
        };
        const int io = write_output(out, verdict.dump(2) + "\n");
        return io != kExitOk ? io : kExitVerdictFailed;
    }

    const auto abstraction = mpdet::build_landscape_abstraction(config);
    const auto verdict =
        mpdet::check_mp(abstraction.preorder, abstraction.np_set, abstraction.rdt_set);
    const int io =
        write_output(out, mpdet::verdict_json(abstraction, verdict, config).dump(2) + "\n");
    if (io != kExitOk) return io;
    return verdict.holds ? kExitOk : kExitVerdictFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"detection-test toolkit: NP and RDT tests, Monte Carlo verification, "
                 "multiplicity-principle check"};
    app.require_subcommand(1);

    // threshold
    auto* threshold = app.add_subcommand("threshold", "RDT threshold lambda_gamma(tau*sqrt(n))");
    double th_gamma = 0.05, th_tau = 0.0;
    std::size_t th_n = 1;
    std::string th_out;
    threshold->add_option("--gamma", th_gamma, "level in (0,1)")->required();
    threshold->add_option("--tau", th_tau, "RDT tolerance in [0, 1/2)");
    threshold->add_option("--n", th_n, "sample count");
    threshold->add_option("--out", th_out, "output path (default: stdout)");

    // np-power
    auto* np_power = app.add_subcommand("np-power", "exact NP detection probability over n");
    double pw_gamma = 0.05;
    std::vector<std::size_t> pw_n_list;
    std::string pw_format = "csv", pw_out;
    np_power->add_option("--gamma", pw_gamma, "level in (0,1)")->required();
    np_power->add_option("--n-list", pw_n_list, "sample counts")
        ->required()
        ->delimiter(',');
    np_power->add_option("--format", pw_format)->check(CLI::IsMember({"csv", "json"}));
    np_power->add_option("--out", pw_out, "output path (default: stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo size/power sweep over n");
    std::string sw_test, sw_interference = "zero", sw_format = "csv", sw_out;
    mpdet::SweepConfig sw_config;
    bool sw_tau_given = false;
    sweep->add_option("--test", sw_test, "test family")
        ->required()
        ->check(CLI::IsMember({"np", "rdt"}));
    sweep->add_option("--gamma", sw_config.gamma, "level in (0,1)")->required();
    sweep->add_option("--tau", sw_config.tau, "RDT tolerance in [0, 1/2)")
        ->each([&](const std::string&) { sw_tau_given = true; });
    sweep->add_option("--q", sw_config.q, "interference bound in [0, 1/2)");
    sweep->add_option("--interference", sw_interference,
                      "zero | const:<c> | alt:<a> | unif | worst | sin:<a>:<p>");
    sweep->add_option("--n-list", sw_config.n_list, "sample counts")->required()->delimiter(',');
    sweep->add_option("--trials", sw_config.trials, "Monte Carlo trials per estimate");
    sweep->add_option("--seed", sw_config.seed, "RNG seed");
    sweep->add_option("--threads", sw_config.threads, "worker threads (does not affect results)");
    sweep->add_option("--format", sw_format)->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", sw_out, "output path (default: stdout)");

    // selectivity-demo
    auto* demo = app.add_subcommand(
        "selectivity-demo", "NP size violation under worst-case interference, next to RDT");
    double demo_gamma = 0.05, demo_q = 0.0, demo_tau = -1.0;
    std::size_t demo_n = 64;
    std::uint64_t demo_trials = 100000, demo_seed = 1;
    unsigned demo_threads = 1;
    std::string demo_out;
    demo->add_option("--gamma", demo_gamma, "level in (0,1)")->required();
    demo->add_option("--q", demo_q, "interference bound, must be in (0, 1/2)")->required();
    demo->add_option("--n", demo_n, "sample count");
    demo->add_option("--trials", demo_trials, "Monte Carlo trials per estimate");
    demo->add_option("--seed", demo_seed, "RNG seed");
    demo->add_option("--threads", demo_threads, "worker threads (does not affect results)");
    demo->add_option("--rdt-tau", demo_tau, "tau of the RDT comparison row (default: q)");
    demo->add_option("--out", demo_out, "output path (default: stdout)");

    // mp-check
    auto* mp = app.add_subcommand("mp-check", "multiplicity-principle verdict on the landscape "
                                              "abstraction");
    mpdet::AbstractionConfig mp_config;
    std::string mp_mode = "analytic", mp_out;
    mp->add_option("--gamma", mp_config.gamma, "level in (0,1)")->required();
    mp->add_option("--tau", mp_config.tau, "RDT tolerance, in (0, 1/2) for a meaningful check")
        ->required();
    mp->add_option("--n-grid", mp_config.n_grid, "sample counts")->required()->delimiter(',');
    mp->add_option("--q-grid", mp_config.q_grid, "interference bounds in [0, 1/2)")
        ->required()
        ->delimiter(',');
    mp->add_option("--mode", mp_mode)->check(CLI::IsMember({"analytic", "mc"}));
    mp->add_option("--trials", mp_config.trials, "Monte Carlo trials per power point (mc mode)");
    mp->add_option("--seed", mp_config.seed, "RNG seed (mc mode)");
    mp->add_option("--threads", mp_config.threads, "worker threads (does not affect results)");
    mp->add_option("--out", mp_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (threshold->parsed()) {
            return cmd_threshold(th_gamma, th_tau, th_n, th_out);
        }
        if (np_power->parsed()) {
            return cmd_np_power(pw_gamma, pw_n_list, pw_format, pw_out);
        }
        if (sweep->parsed()) {
            if (sw_test == "np") {
                if (sw_tau_given) {
                    std::cerr << "error: --tau applies to RDT sweeps only\n";
                    return kExitUsage;
                }
                sw_config.kind = mpdet::TestKind::np;
            } else {
                if (!sw_tau_given) {
                    std::cerr << "error: RDT sweeps require --tau\n";
                    return kExitUsage;
                }
                sw_config.kind = mpdet::TestKind::rdt;
            }
            sw_config.interference = mpdet::parse_interference(sw_interference);
            return cmd_sweep(sw_config, sw_format, sw_out);
        }
        if (demo->parsed()) {
            if (!(demo_q > 0.0 && demo_q < 0.5)) {
                std::cerr << "error: the demo requires q in (0, 1/2); NP keeps its level at q=0\n";
                return kExitUsage;
            }
            const double tau = demo_tau < 0.0 ? demo_q : demo_tau;
            return cmd_selectivity_demo(demo_gamma, demo_q, demo_n, demo_trials, demo_seed,
                                        demo_threads, tau, demo_out);
        }
        if (mp->parsed()) {
            mp_config.mode = mp_mode == "analytic" ? mpdet::AbstractionMode::analytic
                                                   : mpdet::AbstractionMode::mc;
            return cmd_mp_check(mp_config, mp_out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
