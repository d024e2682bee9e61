#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "aircomp/config.hpp"
#include "aircomp/relay.hpp"

namespace aircomp {

inline constexpr std::size_t kPolicyCount = 5;

inline constexpr std::array<Policy, kPolicyCount> kAllPolicies = {
    Policy::Baseline,     Policy::SimRelay,     Policy::CohRelay,
    Policy::SimRelayPlus, Policy::CohRelayPlus,
};

enum class Metric {
    MseTotal = 0,
    MseSignal,
    MseNoise,
    MeanNodePower,
    RelayPower,
    OverallPower,
};

inline constexpr std::size_t kMetricCount = 6;

inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::MseTotal,      Metric::MseSignal,  Metric::MseNoise,
    Metric::MeanNodePower, Metric::RelayPower, Metric::OverallPower,
};

std::string_view metric_name(Metric metric);

/// One policy's scalar outcomes on a single channel realization.
/// overall_power = nodes * mean_node_power + relay_power: total radiated
/// signal power in the network for one functional computation.
struct PolicyMetrics {
    double mse_total = 0.0;
    double mse_signal = 0.0;
    double mse_noise = 0.0;
    double mean_node_power = 0.0;
    double relay_power = 0.0;
    double overall_power = 0.0;

    double get(Metric metric) const;
};

/// All five policies evaluated on the same draw of topology and fading.
struct TrialMetrics {
    std::size_t trial_index = 0;
    std::array<PolicyMetrics, kPolicyCount> per_policy{};

    const PolicyMetrics& of(Policy policy) const {
        return per_policy[static_cast<std::size_t>(policy)];
    }
};

/// Runs all five policies on one explicit realization: topology_seed draws
/// node positions, fading_seed draws link fading, and both are consumed by
/// fresh single-use generators.
TrialMetrics run_trial(const ExperimentConfig& config,
                       std::uint64_t topology_seed, std::uint64_t fading_seed,
                       std::size_t trial_index = 0);

/// Convenience: derives the two seeds from
/// (config.harness.master_seed, trial_index) substreams. Deterministic: the
/// same (config, trial_index) pair always yields identical metrics,
/// regardless of which thread or process evaluates it.
TrialMetrics run_trial(const ExperimentConfig& config, std::size_t trial_index);

/// Evaluates trials [first, first + count) with config.harness.threads
/// workers. Results land in a pre-sized vector slot per trial, so the output
/// order (and every byte downstream) is independent of scheduling.
std::vector<TrialMetrics> run_trials(const ExperimentConfig& config,
                                     std::size_t first, std::size_t count);

/// Distribution summary of one metric for one policy across trials.
struct MetricSummary {
    std::vector<double> sorted_samples;
    double mean = 0.0;
    double median = 0.0;
};

/// Per-policy, per-metric summaries over a trial batch plus the config that
/// produced it.
struct AggregateReport {
    ExperimentConfig config;
    std::size_t trial_count = 0;
    std::array<std::array<MetricSummary, kMetricCount>, kPolicyCount> stats{};

    const MetricSummary& summary(Policy policy, Metric metric) const {
        return stats[static_cast<std::size_t>(policy)]
                    [static_cast<std::size_t>(metric)];
    }
};

AggregateReport aggregate_trials(const ExperimentConfig& config,
                                 const std::vector<TrialMetrics>& trials);

/// run_trials + aggregate_trials over config.harness.trials realizations.
AggregateReport run_monte_carlo(const ExperimentConfig& config);

/// One Monte Carlo run per value of a swept parameter. All runs share the
/// master seed, so they see common random realizations and differ only in
/// the swept value.
struct SweepReport {
    std::string axis;
    std::vector<double> values;
    std::vector<AggregateReport> reports;
};

SweepReport sweep_gamma(const ExperimentConfig& config,
                        const std::vector<double>& gammas);

SweepReport sweep_relay_fraction(const ExperimentConfig& config,
                                 const std::vector<double>& fractions);

/// A point of the empirical CDF: F(value) = cumulative_probability, with
/// cumulative_probability = rank / N for rank = 1..N.
struct CdfPoint {
    double value = 0.0;
    double cumulative_probability = 0.0;
};

/// Sorts a copy of the samples ascending and assigns probability (i+1)/N to
/// the i-th order statistic. Rejects an empty sample set.
std::vector<CdfPoint> empirical_cdf(const std::vector<double>& samples);

double mean_of(const std::vector<double>& samples);

/// Median of a sorted ascending sample vector: middle element for odd N,
/// average of the two middle elements for even N.
double median_of_sorted(const std::vector<double>& sorted_samples);

}  // namespace aircomp
