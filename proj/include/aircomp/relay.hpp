#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "aircomp/channel.hpp"

namespace aircomp {

enum class Policy {
    Baseline = 0,
    SimRelay,
    CohRelay,
    SimRelayPlus,
    CohRelayPlus,
};

std::string_view policy_name(Policy policy);

/// Partition of node indices: relay_users transmit via the relay in slot 1,
/// direct_users transmit straight to the sink in slot 2. Both lists are kept
/// in ascending index order.
struct Grouping {
    std::vector<std::size_t> relay_users;
    std::vector<std::size_t> direct_users;
};

/// Selects round(relay_fraction * K) relay users: the nodes with the smallest
/// h_kd^2 - h_kr^2 (far from the sink relative to the relay). Ties break by
/// ascending node index; rounding is half-up.
Grouping group_nodes(const LinkGains& gains, double relay_fraction);

/// Two-slot relay solution. b1/b2 are full-length per-node Tx-scalings with
/// zeros outside the transmitting group and slot. a_r1_eff is the effective
/// relay-chain Rx-scaling (the product that multiplies relay-path signals at
/// the sink); b_r2 is the relay's own Tx-scaling under the convention that
/// the relay's receive scaling is 1.
struct RelaySolution {
    Policy policy = Policy::SimRelay;
    double a_r1_eff = 0.0;
    double a_d2 = 0.0;
    std::vector<double> b1;
    std::vector<double> b2;
    double b_r2 = 0.0;
    double mse_signal = 0.0;
    double mse_noise = 0.0;

    double total_mse() const { return mse_signal + mse_noise; }
};

/// Relay Tx-scaling recovered from the effective chain product:
/// b_r2 = a_r1_eff / (a_d2 * h_rd). Zero when nothing is forwarded.
double relay_tx_scaling(double a_r1_eff, double a_d2, double h_rd);

/// SimRelay: relay users transmit only in slot 1, the direct link is ignored
/// for them. The problem splits into two independent single-hop solves, one
/// over h_kr on the relay users and one over h_kd on the direct users.
RelaySolution solve_sim_relay(const LinkGains& gains, const Grouping& grouping,
                              double p_max, double sigma2);

/// Cauchy-Schwarz-optimal division of one node's power budget p between its
/// relay-path and direct-path transmissions. gamma is the resulting combined
/// coefficient at the sink, the maximum attainable at this power.
struct PowerSplit {
    double b1 = 0.0;
    double b2 = 0.0;
    double gamma = 0.0;
};

PowerSplit coherent_split(double a_r1_eff, double a_d2, double h_kr, double h_kd,
                          double power);

/// Per-node allocation for the relay group at fixed scalings (a_r1_eff, a_d2):
/// a node whose full-power combined coefficient reaches 1 is rescaled to hit 1
/// exactly with less power; otherwise it spends the full budget and keeps the
/// magnitude error e = 1 - gamma(p_max). Vectors are indexed in
/// grouping.relay_users order. mse_rd = sum e^2 + sigma2 * a_r1_eff^2.
struct RelayGroupAllocation {
    std::vector<double> b1;
    std::vector<double> b2;
    std::vector<double> e;
    double mse_rd = 0.0;
};

RelayGroupAllocation one_iter(const LinkGains& gains, const Grouping& grouping,
                              double a_r1_eff, double a_d2, double p_max,
                              double sigma2);

/// CohRelay: starts from the SimRelay scalings and walks a_r1_eff downward in
/// steps of delta_scale * a_r1_init while the relay-side error improves,
/// re-splitting every relay user's power coherently at each step. a_d2 stays
/// fixed at the direct-side optimum. When accepted_mse_rd is non-null the
/// accepted relay-side error sequence is appended to it (strictly decreasing).
RelaySolution solve_coh_relay(const LinkGains& gains, const Grouping& grouping,
                              double p_max, double sigma2,
                              double delta_scale = 0.01,
                              std::vector<double>* accepted_mse_rd = nullptr);

/// Refined policies. The noise floor constraint pins
///   a_r1_eff^2 + a_d2^2 = gamma_floor * baseline_a^2
/// and the solver scans a_d2 candidates on that circle, scoring each by
///   theta * MSE + (1 - theta) * mean node power.
/// CohRelayPlus allocates relay users coherently via one_iter; SimRelayPlus
/// gives them plain slot-1 channel inversion. baseline_a is the Rx-scaling of
/// the all-direct single-hop solve on the same gains.
RelaySolution solve_refined(Policy which, const LinkGains& gains,
                            const Grouping& grouping, double p_max, double sigma2,
                            double gamma_floor, double theta, double baseline_a,
                            std::size_t grid_size = 200);

/// Transmission power the relay spends forwarding the amplified superposition:
/// b_r2^2 * sum_{k in N_r} (h_kr * b1_k)^2. Excludes the forwarded noise,
/// which relay_noise_power reports separately.
double relay_tx_power(const RelaySolution& solution, const LinkGains& gains,
                      const Grouping& grouping);

/// Diagnostic: relay power spent on amplified receive noise, b_r2^2 * sigma2.
double relay_noise_power(const RelaySolution& solution, double sigma2);

/// Mean per-node transmission power (1/K) * sum_k (b1_k^2 + b2_k^2).
double mean_node_power(const RelaySolution& solution);

}  // namespace aircomp
