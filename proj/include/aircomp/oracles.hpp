#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aircomp/channel.hpp"
#include "aircomp/relay.hpp"

namespace aircomp {

/// Result of one brute-force cross-check batch. max_deviation is the worst
/// violation observed (solver minus bound, so <= tolerance passes);
/// worst_instance identifies the offending draw for reproduction.
struct OracleOutcome {
    std::string name;
    std::size_t instances = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::size_t worst_instance = 0;
    bool pass = false;
};

/// Exhaustive reference for the single-hop solver: sweeps a over
/// (0, 10 / (h_min * sqrt(p_max))] on a uniform grid, sets
/// b_k = min(1 / (a * h_k), sqrt(p_max)), and returns the smallest total MSE
/// found. Independent of the closed-form candidate scan by construction.
double baseline_grid_search_mse(std::span<const double> h, double p_max,
                                double sigma2, std::size_t grid_points);

/// Exhaustive reference for the two-slot split solver: joint grid over
/// (a_r1_eff, a_d2), channel inversion within each group at each grid point.
/// coarse_points per axis, then two 10x zoom refinement passes around the
/// incumbent (valid because the objective is coordinatewise piecewise-smooth
/// and the global optimum sits in a basin wider than the coarse cell).
double sim_relay_grid_search_mse(const LinkGains& gains, const Grouping& grouping,
                                 double p_max, double sigma2,
                                 std::size_t coarse_points);

/// Straight re-evaluation of a relay solution's MSE from its factors alone:
/// per-node combined coefficient minus one, squared, plus
/// sigma2 * (a_r1_eff^2 + a_d2^2). Shares no code with the solvers' own
/// bookkeeping.
double relay_mse_from_factors(const RelaySolution& solution,
                              const LinkGains& gains, const Grouping& grouping,
                              double sigma2);

/// Reference copy of the per-node relay-group allocation loop, written
/// directly from its defining cases (rescale-to-one vs full power) without
/// reusing coherent_split or one_iter internals.
RelayGroupAllocation one_iter_reference(const LinkGains& gains,
                                        const Grouping& grouping,
                                        double a_r1_eff, double a_d2,
                                        double p_max, double sigma2);

/// solve_baseline vs baseline_grid_search_mse on random instances
/// (K <= 5, h in [0.05, 5], sigma2 cycling {0, 0.5, 1}).
/// Deviation: solver MSE - oracle MSE. Tolerance 1e-6.
OracleOutcome run_baseline_oracle(std::size_t instances, std::uint64_t seed);

/// solve_sim_relay vs sim_relay_grid_search_mse on random small instances.
/// Deviation: |solver MSE - oracle MSE|. Tolerance 1e-5.
OracleOutcome run_sim_relay_oracle(std::size_t instances, std::uint64_t seed);

/// coherent_split maximality: per instance, 1000 random same-power splits
/// must not beat the returned one, and must fall strictly below it whenever
/// their direction differs measurably. Deviation: random gamma - split gamma.
/// Tolerance 1e-12.
OracleOutcome run_split_oracle(std::size_t instances, std::uint64_t seed);

/// one_iter vs one_iter_reference on random instances. Deviation: largest
/// absolute difference across b1/b2/e/mse_rd. Tolerance 1e-12.
OracleOutcome run_one_iter_oracle(std::size_t instances, std::uint64_t seed);

/// Paired solve on shared random gains: accepted relay-side errors strictly
/// decrease and CohRelay total MSE <= SimRelay total MSE + 1e-9.
/// Deviation: CohRelay MSE - SimRelay MSE.
OracleOutcome run_descent_oracle(std::size_t instances, std::uint64_t seed);

/// SimRelay total MSE vs the sum of its two one-hop parts recomputed from the
/// returned factors. Deviation: absolute gap. Tolerance 1e-12.
OracleOutcome run_decomposition_oracle(std::size_t instances,
                                       std::uint64_t seed);

/// Synthetic random instance shared by the oracle runners: K in [k_min,
/// k_max], gains in [0.05, 5], h_rd in [0.5, 5], random relay fraction.
struct RandomInstance {
    LinkGains gains;
    Grouping grouping;
    double p_max = 10.0;
    double sigma2 = 1.0;
};

RandomInstance random_instance(std::uint64_t seed, std::size_t index,
                               std::size_t k_min, std::size_t k_max);

}  // namespace aircomp
