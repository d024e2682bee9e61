#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace aircomp {

/// Single-hop power-control solution. b is in the caller's node order;
/// critical_index is the number of nodes (in ascending-gain order) that
/// transmit at maximum power, every other node inverts its channel exactly.
struct BaselineSolution {
    double a = 0.0;                  // Rx-scaling factor
    std::vector<double> b;           // per-node Tx-scaling factors
    std::size_t critical_index = 0;  // i*: nodes at max power
    double mse_signal = 0.0;
    double mse_noise = 0.0;

    double total_mse() const { return mse_signal + mse_noise; }
};

/// Closed-form minimizer of
///   sum_k (a*h_k*sqrt(p_max) - 1)^2 + sigma2*a^2
/// over a for a fixed set of max-power nodes h_active:
///   a* = sqrt(p_max)*sum(h) / (p_max*sum(h^2) + sigma2),
/// clamped below by a_min (the caller's channel-inversion feasibility bound).
/// An empty h_active yields a_min. Rejects sets containing only zeros.
double optimal_rx_scaling(std::span<const double> h_active, double p_max,
                          double sigma2, double a_min = 0.0);

/// Optimal single-hop solve. Scans the K+1 candidate counts of max-power
/// nodes in ascending-gain order; each candidate's Rx-scaling is the
/// closed-form minimizer clamped to the interval where that candidate's
/// structure is consistent (weaker nodes capped, stronger nodes inverting
/// within the power limit). Rejects empty input or nonpositive gains.
BaselineSolution solve_baseline(std::span<const double> h, double p_max,
                                double sigma2);

/// Evaluates the computation error of an arbitrary (a, b) pair:
///   signal part  sum_k (a*h_k*b_k - 1)^2,
///   noise part   sigma2*a^2.
std::pair<double, double> baseline_mse(double a, std::span<const double> b,
                                       std::span<const double> h, double sigma2);

}  // namespace aircomp
