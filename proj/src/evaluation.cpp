#include "aircomp/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "aircomp/baseline.hpp"
#include "aircomp/rng.hpp"

namespace aircomp {

namespace {

PolicyMetrics metrics_from_relay(const RelaySolution& solution,
                                 const LinkGains& gains, const Grouping& grouping) {
    PolicyMetrics m;
    m.mse_total = solution.total_mse();
    m.mse_signal = solution.mse_signal;
    m.mse_noise = solution.mse_noise;
    m.mean_node_power = mean_node_power(solution);
    m.relay_power = relay_tx_power(solution, gains, grouping);
    m.overall_power = static_cast<double>(gains.node_count()) * m.mean_node_power +
                      m.relay_power;
    return m;
}

PolicyMetrics metrics_from_baseline(const BaselineSolution& solution,
                                    std::size_t node_count) {
    PolicyMetrics m;
    m.mse_total = solution.total_mse();
    m.mse_signal = solution.mse_signal;
    m.mse_noise = solution.mse_noise;
    double power = 0.0;
    for (double b : solution.b) {
        power += b * b;
    }
    m.mean_node_power = power / static_cast<double>(node_count);
    m.relay_power = 0.0;
    m.overall_power = power;
    return m;
}

}  // namespace

std::string_view metric_name(Metric metric) {
    switch (metric) {
        case Metric::MseTotal:
            return "mse_total";
        case Metric::MseSignal:
            return "mse_signal";
        case Metric::MseNoise:
            return "mse_noise";
        case Metric::MeanNodePower:
            return "mean_node_power";
        case Metric::RelayPower:
            return "relay_power";
        case Metric::OverallPower:
            return "overall_power";
    }
    throw std::invalid_argument("unknown metric");
}

double PolicyMetrics::get(Metric metric) const {
    switch (metric) {
        case Metric::MseTotal:
            return mse_total;
        case Metric::MseSignal:
            return mse_signal;
        case Metric::MseNoise:
            return mse_noise;
        case Metric::MeanNodePower:
            return mean_node_power;
        case Metric::RelayPower:
            return relay_power;
        case Metric::OverallPower:
            return overall_power;
    }
    throw std::invalid_argument("unknown metric");
}

TrialMetrics run_trial(const ExperimentConfig& config,
                       std::uint64_t topology_seed, std::uint64_t fading_seed,
                       std::size_t trial_index) {
    try {
        const ScenarioConfig& s = config.scenario;
        const Topology topology = generate_topology(
            topology_seed, s.nodes, s.area_width, s.area_height, s.sink, s.relay);
        Rng fading_rng(fading_seed);
        const LinkGains gains = sample_link_gains(
            topology, channel_params(s, config.power), fading_rng);
        const Grouping grouping = group_nodes(gains, config.policy.relay_fraction);

        const double p_max = config.power.p_max;
        const double sigma2 = config.power.sigma2;
        const PolicyConfig& pol = config.policy;

        const BaselineSolution base = solve_baseline(gains.h_kd, p_max, sigma2);
        const RelaySolution sim = solve_sim_relay(gains, grouping, p_max, sigma2);
        const RelaySolution coh =
            solve_coh_relay(gains, grouping, p_max, sigma2, pol.delta_scale);
        const RelaySolution simp =
            solve_refined(Policy::SimRelayPlus, gains, grouping, p_max, sigma2,
                          pol.gamma, pol.theta, base.a, pol.a_d2_grid_size);
        const RelaySolution cohp =
            solve_refined(Policy::CohRelayPlus, gains, grouping, p_max, sigma2,
                          pol.gamma, pol.theta, base.a, pol.a_d2_grid_size);

        TrialMetrics trial;
        trial.trial_index = trial_index;
        trial.per_policy[static_cast<std::size_t>(Policy::Baseline)] =
            metrics_from_baseline(base, s.nodes);
        trial.per_policy[static_cast<std::size_t>(Policy::SimRelay)] =
            metrics_from_relay(sim, gains, grouping);
        trial.per_policy[static_cast<std::size_t>(Policy::CohRelay)] =
            metrics_from_relay(coh, gains, grouping);
        trial.per_policy[static_cast<std::size_t>(Policy::SimRelayPlus)] =
            metrics_from_relay(simp, gains, grouping);
        trial.per_policy[static_cast<std::size_t>(Policy::CohRelayPlus)] =
            metrics_from_relay(cohp, gains, grouping);
        return trial;
    } catch (const std::exception& e) {
        throw std::runtime_error("trial " + std::to_string(trial_index) + ": " +
                                 e.what());
    }
}

TrialMetrics run_trial(const ExperimentConfig& config, std::size_t trial_index) {
    const std::uint64_t master = config.harness.master_seed;
    return run_trial(config,
                     substream_seed(master, trial_index, Stream::Topology),
                     substream_seed(master, trial_index, Stream::Fading),
                     trial_index);
}

std::vector<TrialMetrics> run_trials(const ExperimentConfig& config,
                                     std::size_t first, std::size_t count) {
    std::vector<TrialMetrics> results(count);
    if (count == 0) {
        return results;
    }
    const std::size_t workers = std::max<std::size_t>(
        1, std::min(config.harness.threads, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            results[i] = run_trial(config, first + i);
        }
        return results;
    }

    // Each trial writes only its own slot, so the result is identical no
    // matter how the indices get distributed over the workers.
    std::mutex failure_mutex;
    std::exception_ptr failure;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                results[i] = run_trial(config, first + i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return results;
}

AggregateReport aggregate_trials(const ExperimentConfig& config,
                                 const std::vector<TrialMetrics>& trials) {
    if (trials.empty()) {
        throw std::invalid_argument("cannot aggregate zero trials");
    }
    AggregateReport report;
    report.config = config;
    report.trial_count = trials.size();
    for (Policy policy : kAllPolicies) {
        for (Metric metric : kAllMetrics) {
            MetricSummary& summary =
                report.stats[static_cast<std::size_t>(policy)]
                            [static_cast<std::size_t>(metric)];
            summary.sorted_samples.reserve(trials.size());
            for (const TrialMetrics& trial : trials) {
                summary.sorted_samples.push_back(trial.of(policy).get(metric));
            }
            std::sort(summary.sorted_samples.begin(), summary.sorted_samples.end());
            summary.mean = mean_of(summary.sorted_samples);
            summary.median = median_of_sorted(summary.sorted_samples);
        }
    }
    return report;
}

AggregateReport run_monte_carlo(const ExperimentConfig& config) {
    validate_config(config);
    return aggregate_trials(config, run_trials(config, 0, config.harness.trials));
}

SweepReport sweep_gamma(const ExperimentConfig& config,
                        const std::vector<double>& gammas) {
    if (gammas.empty()) {
        throw ConfigError("gamma sweep needs at least one value");
    }
    SweepReport sweep;
    sweep.axis = "gamma";
    sweep.values = gammas;
    sweep.reports.reserve(gammas.size());
    for (double gamma : gammas) {
        if (gamma <= 0.0) {
            throw ConfigError("gamma sweep values must be positive");
        }
        // Same master seed for every point: common random realizations make
        // the curves directly comparable.
        ExperimentConfig point = config;
        point.policy.gamma = gamma;
        sweep.reports.push_back(run_monte_carlo(point));
    }
    return sweep;
}

SweepReport sweep_relay_fraction(const ExperimentConfig& config,
                                 const std::vector<double>& fractions) {
    if (fractions.empty()) {
        throw ConfigError("relay_fraction sweep needs at least one value");
    }
    SweepReport sweep;
    sweep.axis = "relay_fraction";
    sweep.values = fractions;
    sweep.reports.reserve(fractions.size());
    for (double fraction : fractions) {
        if (!(fraction >= 0.0 && fraction <= 1.0)) {
            throw ConfigError("relay_fraction sweep values must be in [0, 1]");
        }
        ExperimentConfig point = config;
        point.policy.relay_fraction = fraction;
        sweep.reports.push_back(run_monte_carlo(point));
    }
    return sweep;
}

std::vector<CdfPoint> empirical_cdf(const std::vector<double>& samples) {
    if (samples.empty()) {
        throw std::invalid_argument("empirical CDF needs at least one sample");
    }
    std::vector<double> sorted = samples;
    std::stable_sort(sorted.begin(), sorted.end());
    std::vector<CdfPoint> cdf;
    cdf.reserve(sorted.size());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        cdf.push_back(CdfPoint{sorted[i], static_cast<double>(i + 1) / n});
    }
    return cdf;
}

double mean_of(const std::vector<double>& samples) {
    if (samples.empty()) {
        throw std::invalid_argument("mean needs at least one sample");
    }
    double sum = 0.0;
    for (double v : samples) {
        sum += v;
    }
    return sum / static_cast<double>(samples.size());
}

double median_of_sorted(const std::vector<double>& sorted_samples) {
    if (sorted_samples.empty()) {
        throw std::invalid_argument("median needs at least one sample");
    }
    const std::size_t n = sorted_samples.size();
    if (n % 2 == 1) {
        return sorted_samples[n / 2];
    }
    return 0.5 * (sorted_samples[n / 2 - 1] + sorted_samples[n / 2]);
}

}  // namespace aircomp
