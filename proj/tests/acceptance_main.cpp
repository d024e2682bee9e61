// Acceptance gate: end-to-end checks with pinned tolerances, one verdict line
// each. Exits with the number of failed criteria. Arguments:
//   argv[1]  path to the command line binary (for the reproducibility check)
//   argv[2]  scratch directory for generated artifacts
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "aircomp/config.hpp"
#include "aircomp/evaluation.hpp"
#include "aircomp/oracles.hpp"

namespace {

using aircomp::AggregateReport;
using aircomp::ExperimentConfig;
using aircomp::Metric;
using aircomp::OracleOutcome;
using aircomp::Policy;

int g_failures = 0;
std::chrono::steady_clock::time_point g_started;

void begin_criterion() { g_started = std::chrono::steady_clock::now(); }

void record(int number, bool pass, const std::string& detail) {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      g_started)
            .count();
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": "
              << detail << " (" << elapsed << "s)\n";
    if (!pass) {
        ++g_failures;
    }
}

std::string describe(const OracleOutcome& outcome) {
    std::ostringstream text;
    text << outcome.name << " on " << outcome.instances
         << " instances, max deviation " << outcome.max_deviation
         << " vs tolerance " << outcome.tolerance;
    return text.str();
}

double reduction_percent(double baseline, double value) {
    return 100.0 * (baseline - value) / baseline;
}

bool within(double value, double lo, double hi) {
    return value >= lo && value <= hi;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) {
        return "<unreadable:" + path.string() + ">";
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Compares every *.csv in two directories by name and content.
bool csv_dirs_identical(const std::filesystem::path& lhs,
                        const std::filesystem::path& rhs, std::string* why) {
    std::vector<std::filesystem::path> names;
    for (const auto& entry : std::filesystem::directory_iterator(lhs)) {
        if (entry.path().extension() == ".csv") {
            names.push_back(entry.path().filename());
        }
    }
    if (names.empty()) {
        *why = "no csv files in " + lhs.string();
        return false;
    }
    for (const auto& name : names) {
        if (read_file(lhs / name) != read_file(rhs / name)) {
            *why = "mismatch in " + name.string();
            return false;
        }
    }
    return true;
}

int run_cli(const std::string& binary, const std::string& args) {
    const std::string command = "\"" + binary + "\" " + args + " > /dev/null";
    return std::system(command.c_str());
}

ExperimentConfig scenario_config(std::size_t threads) {
    ExperimentConfig config;  // canonical defaults: 50 nodes, 2000 trials
    config.harness.threads = threads;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <cli-binary> <scratch-dir>\n";
        return 64;
    }
    const std::string cli = argv[1];
    const std::filesystem::path scratch = argv[2];
    std::filesystem::create_directories(scratch);

    const std::size_t threads = 8;

    // 1. Single-hop solver against a dense one-dimensional grid search.
    begin_criterion();
    {
        const OracleOutcome outcome = aircomp::run_baseline_oracle(1000, 101);
        record(1, outcome.pass, describe(outcome));
    }

    // 2. Two-slot split solver equals the sum of its two independent
    //    single-hop parts, and a from-scratch re-evaluation, to 1e-12.
    begin_criterion();
    {
        const OracleOutcome outcome =
            aircomp::run_decomposition_oracle(10'000, 202);
        record(2, outcome.pass, describe(outcome));
    }

    // 3. The closed-form power split beats 1000 random same-power splits on
    //    every instance, with equality only at the returned split.
    begin_criterion();
    {
        const OracleOutcome outcome = aircomp::run_split_oracle(1000, 303);
        record(3, outcome.pass, describe(outcome));
    }

    // 4. Descent accepts strictly improving steps only and never ends above
    //    its starting point (paired with the simultaneous solver).
    begin_criterion();
    {
        const OracleOutcome outcome = aircomp::run_descent_oracle(10'000, 404);
        record(4, outcome.pass, describe(outcome));
    }

    // Criteria 5-7 share one canonical 2000-trial experiment.
    begin_criterion();
    const AggregateReport canon =
        aircomp::run_monte_carlo(scenario_config(threads));
    const auto stat = [&](Policy policy, Metric metric) {
        return canon.summary(policy, metric);
    };

    // 5. Error reductions versus the single-hop policy land in the expected
    //    bands (median- or mean-based).
    {
        const auto& base = stat(Policy::Baseline, Metric::MseTotal);
        const auto& coh = stat(Policy::CohRelay, Metric::MseTotal);
        const auto& coh_plus = stat(Policy::CohRelayPlus, Metric::MseTotal);
        const double coh_med = reduction_percent(base.median, coh.median);
        const double coh_mean = reduction_percent(base.mean, coh.mean);
        const double plus_med = reduction_percent(base.median, coh_plus.median);
        const double plus_mean = reduction_percent(base.mean, coh_plus.mean);
        const bool coh_ok =
            within(coh_med, 20.0, 50.0) || within(coh_mean, 20.0, 50.0);
        const bool plus_ok =
            within(plus_med, 10.0, 40.0) || within(plus_mean, 10.0, 40.0);
        std::ostringstream detail;
        detail << "mse reduction vs single hop: coherent median "
               << coh_med << "% / mean " << coh_mean
               << "% (want 20..50), refined coherent median " << plus_med
               << "% / mean " << plus_mean << "% (want 10..40)";
        record(5, coh_ok && plus_ok, detail.str());
    }

    // 6. Node power: the refined policy saves 20-55%, the unrefined coherent
    //    policy costs at most 25% extra and saves at most 5%.
    begin_criterion();
    {
        const auto& base = stat(Policy::Baseline, Metric::MeanNodePower);
        const auto& coh = stat(Policy::CohRelay, Metric::MeanNodePower);
        const auto& coh_plus = stat(Policy::CohRelayPlus, Metric::MeanNodePower);
        const double coh_med = reduction_percent(base.median, coh.median);
        const double coh_mean = reduction_percent(base.mean, coh.mean);
        const double plus_med = reduction_percent(base.median, coh_plus.median);
        const double plus_mean = reduction_percent(base.mean, coh_plus.mean);
        const bool coh_ok =
            within(coh_med, -25.0, 5.0) || within(coh_mean, -25.0, 5.0);
        const bool plus_ok =
            within(plus_med, 20.0, 55.0) || within(plus_mean, 20.0, 55.0);
        std::ostringstream detail;
        detail << "node power reduction vs single hop: coherent median "
               << coh_med << "% / mean " << coh_mean
               << "% (want -25..5), refined coherent median " << plus_med
               << "% / mean " << plus_mean << "% (want 20..55)";
        record(6, coh_ok && plus_ok, detail.str());
    }

    // 7. Coherent splitting reduces the median relay burden to at most 60%
    //    of the simultaneous policy's.
    begin_criterion();
    {
        const double sim = stat(Policy::SimRelay, Metric::RelayPower).median;
        const double coh = stat(Policy::CohRelay, Metric::RelayPower).median;
        std::ostringstream detail;
        detail << "median relay power coherent " << coh << " vs simultaneous "
               << sim << " (want <= 0.6x)";
        record(7, coh <= 0.6 * sim, detail.str());
    }

    // 8. Relay-fraction sweep with shared channel realizations.
    begin_criterion();
    {
        const std::vector<double> fractions{0.1, 0.2, 0.3, 0.4, 0.5};
        const auto sweep = aircomp::sweep_relay_fraction(
            scenario_config(threads), fractions);
        bool pass = true;
        std::ostringstream detail;
        detail << "mean relay power refined coherent vs refined simultaneous:";
        for (std::size_t i = 0; i < fractions.size(); ++i) {
            const auto& rep = sweep.reports[i];
            const double coh_relay =
                rep.summary(Policy::CohRelayPlus, Metric::RelayPower).mean;
            const double sim_relay =
                rep.summary(Policy::SimRelayPlus, Metric::RelayPower).mean;
            const double coh_overall =
                rep.summary(Policy::CohRelayPlus, Metric::OverallPower).mean;
            const double base_overall =
                rep.summary(Policy::Baseline, Metric::OverallPower).mean;
            detail << " f=" << fractions[i] << ": " << coh_relay << "/"
                   << sim_relay;
            pass = pass && (coh_relay < sim_relay);
            if (fractions[i] <= 0.3) {
                pass = pass && (coh_relay < 10.0);
            }
            pass = pass && (coh_overall < base_overall);
        }
        detail << "; refined coherent stays under one node budget up to f=0.3"
                  " and under the single-hop overall power everywhere";
        record(8, pass, detail.str());
    }

    // 9. Noise-floor sweep: relaxing the floor from 2x down to 1x must not
    //    increase the refined coherent policy's error, and must not decrease
    //    its node power.
    begin_criterion();
    {
        const std::vector<double> floors{2.0, 1.5, 1.0, 0.75, 0.5};
        const auto sweep =
            aircomp::sweep_gamma(scenario_config(threads), floors);
        bool pass = true;
        std::ostringstream detail;
        detail << "refined coherent across floors (mse/node power):";
        std::vector<double> mse;
        std::vector<double> node_power;
        for (std::size_t i = 0; i < floors.size(); ++i) {
            mse.push_back(sweep.reports[i]
                              .summary(Policy::CohRelayPlus, Metric::MseTotal)
                              .mean);
            node_power.push_back(
                sweep.reports[i]
                    .summary(Policy::CohRelayPlus, Metric::MeanNodePower)
                    .mean);
            detail << " g=" << floors[i] << ": " << mse.back() << "/"
                   << node_power.back();
        }
        for (std::size_t i = 1; i < 3; ++i) {  // 2.0 -> 1.5 -> 1.0
            pass = pass && (mse[i] <= mse[i - 1] + 1e-12);
            pass = pass && (node_power[i] >= node_power[i - 1] - 1e-12);
        }
        record(9, pass, detail.str());
    }

    // 10. The command line tool writes byte-identical CSVs regardless of
    //     thread count and across reruns, for both runs and sweeps.
    begin_criterion();
    {
        const auto dir = [&](const char* leaf) {
            return (scratch / leaf).string();
        };
        bool pass = true;
        std::string why;
        pass = pass && run_cli(cli, "run --trials 120 --seed 33 --threads 1 --out \"" +
                                        dir("r1") + "\"") == 0;
        pass = pass && run_cli(cli, "run --trials 120 --seed 33 --threads 4 --out \"" +
                                        dir("r2") + "\"") == 0;
        pass = pass && run_cli(cli, "run --trials 120 --seed 33 --threads 4 --out \"" +
                                        dir("r3") + "\"") == 0;
        pass = pass &&
               run_cli(cli, "sweep --axis gamma --values 1.0,0.75 --trials 60 "
                            "--seed 33 --threads 1 --out \"" +
                                dir("s1") + "\"") == 0;
        pass = pass &&
               run_cli(cli, "sweep --axis gamma --values 1.0,0.75 --trials 60 "
                            "--seed 33 --threads 4 --out \"" +
                                dir("s2") + "\"") == 0;
        if (!pass) {
            why = "command line invocation failed";
        } else {
            pass = csv_dirs_identical(dir("r1"), dir("r2"), &why) &&
                   csv_dirs_identical(dir("r1"), dir("r3"), &why) &&
                   csv_dirs_identical(dir("s1"), dir("s2"), &why);
        }
        record(10, pass,
               pass ? "csv artifacts byte-identical across thread counts and reruns"
                    : why);
    }

    if (g_failures == 0) {
        std::cout << "all criteria passed\n";
    } else {
        std::cout << g_failures << " criteria failed\n";
    }
    return g_failures;
}
