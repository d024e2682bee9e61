#include "aircomp/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace aircomp {

namespace {

void validate_powers(double p_max, double sigma2) {
    if (p_max <= 0.0) {
        throw std::invalid_argument("p_max must be positive");
    }
    if (sigma2 < 0.0) {
        throw std::invalid_argument("sigma2 must be nonnegative");
    }
}

}  // namespace

double optimal_rx_scaling(std::span<const double> h_active, double p_max,
                          double sigma2, double a_min) {
    validate_powers(p_max, sigma2);
    if (a_min < 0.0) {
        throw std::invalid_argument("a_min must be nonnegative");
    }
    if (h_active.empty()) {
        return a_min;
    }
    double sum_h = 0.0;
    double sum_h2 = 0.0;
    for (double h : h_active) {
        if (h < 0.0) {
            throw std::invalid_argument("channel gains must be nonnegative");
        }
        sum_h += h;
        sum_h2 += h * h;
    }
    if (sum_h == 0.0) {
        throw std::invalid_argument("active set must contain a nonzero gain");
    }
    const double unconstrained =
        std::sqrt(p_max) * sum_h / (p_max * sum_h2 + sigma2);
    return std::max(unconstrained, a_min);
}

BaselineSolution solve_baseline(std::span<const double> h, double p_max,
                                double sigma2) {
    validate_powers(p_max, sigma2);
    if (h.empty()) {
        throw std::invalid_argument("solve_baseline needs at least one node");
    }
    for (double hk : h) {
        if (hk <= 0.0) {
            throw std::invalid_argument("channel gains must be positive");
        }
    }

    const std::size_t k = h.size();
    const double sqrt_p = std::sqrt(p_max);

    // Ascending-gain view; ties keep the caller's order for determinism.
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return h[i] < h[j]; });
    std::vector<double> hs(k);
    for (std::size_t i = 0; i < k; ++i) {
        hs[i] = h[order[i]];
    }

    // Candidate i: the i weakest nodes transmit at max power, the rest invert
    // their channel. That structure is consistent exactly when a lies in
    // [lower, upper]: above the inversion-feasibility bound of the weakest
    // inverting node, and below the point where a capped node would rather
    // invert (keeping every capped node's arrival magnitude at most 1).
    double best_total = std::numeric_limits<double>::infinity();
    double best_a = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i <= k; ++i) {
        const double lower = (i < k) ? 1.0 / (hs[i] * sqrt_p) : 0.0;
        const double upper = (i > 0) ? 1.0 / (hs[i - 1] * sqrt_p)
                                     : std::numeric_limits<double>::infinity();
        if (lower > upper) {
            continue;  // equal gains collapse the interval; skip inconsistent i
        }
        double a = optimal_rx_scaling({hs.data(), i}, p_max, sigma2, lower);
        a = std::min(a, upper);

        double signal = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            const double miss = a * hs[j] * sqrt_p - 1.0;
            signal += miss * miss;
        }
        const double total = signal + sigma2 * a * a;
        if (total < best_total) {
            best_total = total;
            best_a = a;
            best_i = i;
        }
    }

    BaselineSolution solution;
    solution.a = best_a;
    solution.critical_index = best_i;
    solution.b.assign(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        const double b = (j < best_i) ? sqrt_p : 1.0 / (best_a * hs[j]);
        solution.b[order[j]] = b;
    }
    const auto [mse_signal, mse_noise] = baseline_mse(best_a, solution.b, h, sigma2);
    solution.mse_signal = mse_signal;
    solution.mse_noise = mse_noise;
    return solution;
}

std::pair<double, double> baseline_mse(double a, std::span<const double> b,
                                       std::span<const double> h, double sigma2) {
    if (b.size() != h.size()) {
        throw std::invalid_argument("b and h must have equal length");
    }
    double signal = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double miss = a * h[i] * b[i] - 1.0;
        signal += miss * miss;
    }
    return {signal, sigma2 * a * a};
}

}  // namespace aircomp
