#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "aircomp/channel.hpp"
#include "aircomp/config.hpp"
#include "aircomp/evaluation.hpp"
#include "aircomp/oracles.hpp"
#include "aircomp/report.hpp"
#include "aircomp/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;    // bad flags or config
constexpr int kExitRuntime = 3;  // solver/IO failure mid-run
constexpr int kExitOracle = 4;   // a brute-force cross-check found a deviation

struct Overrides {
    std::string config_path;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::string out_dir;
    std::size_t threads = 0;
    const CLI::Option* seed_opt = nullptr;
    const CLI::Option* trials_opt = nullptr;
    const CLI::Option* out_opt = nullptr;
    const CLI::Option* threads_opt = nullptr;
};

void add_common_options(CLI::App& cmd, Overrides& o) {
    cmd.add_option("--config", o.config_path,
                   "Experiment config file (omit for built-in defaults)");
    o.seed_opt = cmd.add_option("--seed", o.seed, "Master seed override");
    o.trials_opt = cmd.add_option("--trials", o.trials, "Trial count override");
    o.out_opt = cmd.add_option("--out", o.out_dir, "Output directory override");
    o.threads_opt =
        cmd.add_option("--threads", o.threads, "Worker thread count override");
}

aircomp::ExperimentConfig load_config(const Overrides& o) {
    aircomp::ExperimentConfig config;
    if (!o.config_path.empty()) {
        config = aircomp::parse_config_file(o.config_path);
    }
    if (o.seed_opt->count() > 0) {
        config.harness.master_seed = o.seed;
    }
    if (o.trials_opt->count() > 0) {
        config.harness.trials = o.trials;
    }
    if (o.out_opt->count() > 0) {
        config.output.dir = o.out_dir;
    }
    if (o.threads_opt->count() > 0) {
        config.harness.threads = o.threads;
    }
    aircomp::validate_config(config);
    return config;
}

void print_policy_table(const aircomp::AggregateReport& report) {
    std::cout << "policy          median_mse      mean_mse        "
                 "median_node_pw  median_relay_pw\n";
    for (aircomp::Policy policy : aircomp::kAllPolicies) {
        const auto& mse = report.summary(policy, aircomp::Metric::MseTotal);
        const auto& npw = report.summary(policy, aircomp::Metric::MeanNodePower);
        const auto& rpw = report.summary(policy, aircomp::Metric::RelayPower);
        std::cout << aircomp::policy_name(policy);
        for (std::size_t pad = aircomp::policy_name(policy).size(); pad < 16; ++pad) {
            std::cout << ' ';
        }
        for (double v : {mse.median, mse.mean, npw.median, rpw.median}) {
            std::string cell = aircomp::format_sig12(v);
            cell.resize(15, ' ');
            std::cout << cell << ' ';
        }
        std::cout << '\n';
    }
}

void dump_first_trial_gains(const aircomp::ExperimentConfig& config) {
    const auto& s = config.scenario;
    const aircomp::Topology topology = aircomp::generate_topology(
        aircomp::substream_seed(config.harness.master_seed, 0,
                                aircomp::Stream::Topology),
        s.nodes, s.area_width, s.area_height, s.sink, s.relay);
    aircomp::Rng fading(aircomp::substream_seed(config.harness.master_seed, 0,
                                                aircomp::Stream::Fading));
    const aircomp::LinkGains gains = aircomp::sample_link_gains(
        topology, aircomp::channel_params(s, config.power), fading);
    std::filesystem::create_directories(config.output.dir);
    const std::string path =
        (std::filesystem::path(config.output.dir) /
         (aircomp::report_stem(config) + "_link_gains_trial0.csv"))
            .string();
    aircomp::write_link_gains_csv(path, gains);
    std::cout << "wrote " << path << '\n';
}

int command_run(const Overrides& o, bool dump_gains) {
    const aircomp::ExperimentConfig config = load_config(o);
    const aircomp::AggregateReport report = aircomp::run_monte_carlo(config);

    std::cout << "run " << config.output.experiment_id
              << " seed=" << config.harness.master_seed
              << " trials=" << report.trial_count
              << " nodes=" << config.scenario.nodes
              << " relay_fraction=" << aircomp::format_exact(config.policy.relay_fraction)
              << " gamma=" << aircomp::format_exact(config.policy.gamma)
              << " theta=" << aircomp::format_exact(config.policy.theta) << '\n';
    print_policy_table(report);

    if (config.output.csv) {
        for (const std::string& path : aircomp::write_run_csvs(report)) {
            std::cout << "wrote " << path << '\n';
        }
    }
    if (config.output.json) {
        std::cout << "wrote " << aircomp::write_run_summary(report) << '\n';
    }
    if (dump_gains) {
        dump_first_trial_gains(config);
    }
    return kExitOk;
}

int command_sweep(const Overrides& o, const std::string& axis,
                  const std::vector<double>& values) {
    const aircomp::ExperimentConfig config = load_config(o);
    const aircomp::SweepReport sweep =
        (axis == "gamma") ? aircomp::sweep_gamma(config, values)
                          : aircomp::sweep_relay_fraction(config, values);

    std::cout << "sweep " << axis << " over " << values.size() << " points, "
              << config.harness.trials << " trials each\n";
    for (std::size_t v = 0; v < sweep.values.size(); ++v) {
        std::cout << "--- " << axis << " = "
                  << aircomp::format_exact(sweep.values[v]) << '\n';
        print_policy_table(sweep.reports[v]);
    }
    if (config.output.csv) {
        for (const std::string& path : aircomp::write_sweep_csvs(config, sweep)) {
            std::cout << "wrote " << path << '\n';
        }
    }
    if (config.output.json) {
        std::cout << "wrote " << aircomp::write_sweep_summary(config, sweep) << '\n';
    }
    return kExitOk;
}

int command_oracle(const std::string& check, std::size_t instances,
                   std::uint64_t seed) {
    aircomp::OracleOutcome outcome;
    if (check == "baseline") {
        outcome = aircomp::run_baseline_oracle(instances, seed);
    } else if (check == "simrelay") {
        outcome = aircomp::run_sim_relay_oracle(instances, seed);
    } else if (check == "split") {
        outcome = aircomp::run_split_oracle(instances, seed);
    } else if (check == "oneiter") {
        outcome = aircomp::run_one_iter_oracle(instances, seed);
    } else if (check == "descent") {
        outcome = aircomp::run_descent_oracle(instances, seed);
    } else {
        outcome = aircomp::run_decomposition_oracle(instances, seed);
    }
    std::cout << "oracle " << outcome.name << ": instances=" << outcome.instances
              << " max_deviation=" << aircomp::format_sig12(outcome.max_deviation)
              << " tolerance=" << aircomp::format_sig12(outcome.tolerance)
              << " worst_instance=" << outcome.worst_instance << " -> "
              << (outcome.pass ? "PASS" : "FAIL") << '\n';
    return outcome.pass ? kExitOk : kExitOracle;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Over-the-air computation simulator with amplify-and-forward "
                 "relay policies"};
    app.require_subcommand(1);

    Overrides run_overrides;
    bool dump_gains = false;
    CLI::App* run_cmd = app.add_subcommand(
        "run", "Monte Carlo run: per-metric CDF CSVs plus a JSON summary");
    add_common_options(*run_cmd, run_overrides);
    run_cmd->add_flag("--dump-gains", dump_gains,
                      "Also write trial 0's link gains to CSV");

    Overrides sweep_overrides;
    std::string axis;
    std::vector<double> values;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Rerun the Monte Carlo experiment over a parameter grid");
    add_common_options(*sweep_cmd, sweep_overrides);
    sweep_cmd->add_option("--axis", axis, "Swept parameter")
        ->required()
        ->check(CLI::IsMember({"gamma", "relay_fraction"}));
    sweep_cmd->add_option("--values", values, "Comma-separated sweep values")
        ->required()
        ->delimiter(',');

    std::string check;
    std::size_t instances = 0;
    std::uint64_t oracle_seed = 20240817;
    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle", "Brute-force cross-checks of the solvers on random instances");
    oracle_cmd->add_option("--check", check, "Which cross-check to run")
        ->required()
        ->check(CLI::IsMember({"baseline", "simrelay", "split", "oneiter",
                               "descent", "decomposition"}));
    oracle_cmd->add_option("--instances", instances, "Number of random instances")
        ->required()
        ->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--seed", oracle_seed, "Instance generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(run_cmd)) {
            return command_run(run_overrides, dump_gains);
        }
        if (app.got_subcommand(sweep_cmd)) {
            return command_sweep(sweep_overrides, axis, values);
        }
        return command_oracle(check, instances, oracle_seed);
    } catch (const aircomp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
