#pragma once

#include <string>
#include <vector>

#include "aircomp/channel.hpp"
#include "aircomp/evaluation.hpp"

namespace aircomp {

/// Locale-independent decimal rendering with 12 significant digits
/// (printf %g style, trailing zeros trimmed, via std::to_chars). Used for
/// every numeric CSV field so artifacts are byte-stable across platforms and
/// reruns.
std::string format_sig12(double value);

/// Locale-independent shortest exact rendering (round-trips to the same
/// double). Used where parse(serialize(x)) must reproduce x bit-for-bit,
/// e.g. config serialization.
std::string format_exact(double value);

/// File-name stem shared by all artifacts of one experiment:
/// "<experiment_id>_seed<master_seed>".
std::string report_stem(const ExperimentConfig& config);

/// Writes one CSV per metric under config.output.dir, named
/// "<stem>_cdf_<metric>.csv" with header "policy,trial_index,value". Rows are
/// grouped by policy in declaration order; within a policy the values are the
/// sorted CDF samples, so row i of a policy block is the i-th order statistic
/// (plotting position (i+1)/N). Returns the paths written.
std::vector<std::string> write_run_csvs(const AggregateReport& report);

/// Writes one CSV per metric named "<stem>_sweep_<axis>_<metric>.csv" with
/// header "policy,<axis>,value" where value is the across-trials mean at that
/// axis point. Long format: one row per (policy, axis value).
std::vector<std::string> write_sweep_csvs(const ExperimentConfig& config,
                                          const SweepReport& sweep);

/// Writes "<stem>_summary.json": config echo, per-policy medians and means of
/// every metric, and headline percentages versus the baseline policy
/// (median/mean MSE reduction, node-power reduction, relay power). Returns
/// the path written.
std::string write_run_summary(const AggregateReport& report);

/// Writes "<stem>_sweep_<axis>_summary.json" with per-axis-point per-policy
/// medians and means. Returns the path written.
std::string write_sweep_summary(const ExperimentConfig& config,
                                const SweepReport& sweep);

/// Dumps one realization's link gains for external cross-checks:
/// a "# h_rd=<value>" metadata line, then "node_index,h_kd,h_kr" rows.
void write_link_gains_csv(const std::string& path, const LinkGains& gains);

}  // namespace aircomp
