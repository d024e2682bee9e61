#include "aircomp/relay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "aircomp/baseline.hpp"

namespace aircomp {

namespace {

void validate_grouping(const LinkGains& gains, const Grouping& grouping) {
    const std::size_t k = gains.node_count();
    if (gains.h_kr.size() != k) {
        throw std::invalid_argument("link gain vectors must have equal length");
    }
    if (grouping.relay_users.size() + grouping.direct_users.size() != k) {
        throw std::invalid_argument("grouping must cover every node exactly once");
    }
    auto check_sorted = [k](const std::vector<std::size_t>& users) {
        for (std::size_t i = 0; i < users.size(); ++i) {
            if (users[i] >= k || (i > 0 && users[i] <= users[i - 1])) {
                throw std::invalid_argument(
                    "group index lists must be ascending and in range");
            }
        }
    };
    check_sorted(grouping.relay_users);
    check_sorted(grouping.direct_users);
    // Ascending disjoint lists covering k indices must merge into 0..k-1.
    std::size_t ri = 0;
    std::size_t di = 0;
    for (std::size_t expect = 0; expect < k; ++expect) {
        if (ri < grouping.relay_users.size() && grouping.relay_users[ri] == expect) {
            ++ri;
        } else if (di < grouping.direct_users.size() &&
                   grouping.direct_users[di] == expect) {
            ++di;
        } else {
            throw std::invalid_argument("grouping must partition the node set");
        }
    }
}

std::vector<double> gather(const std::vector<double>& values,
                           const std::vector<std::size_t>& indices) {
    std::vector<double> out;
    out.reserve(indices.size());
    for (std::size_t idx : indices) {
        out.push_back(values[idx]);
    }
    return out;
}

void scatter(std::vector<double>& target, const std::vector<std::size_t>& indices,
             const std::vector<double>& values) {
    for (std::size_t i = 0; i < indices.size(); ++i) {
        target[indices[i]] = values[i];
    }
}

double sum_squared(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) {
        sum += v * v;
    }
    return sum;
}

}  // namespace

std::string_view policy_name(Policy policy) {
    switch (policy) {
        case Policy::Baseline:
            return "Baseline";
        case Policy::SimRelay:
            return "SimRelay";
        case Policy::CohRelay:
            return "CohRelay";
        case Policy::SimRelayPlus:
            return "SimRelayPlus";
        case Policy::CohRelayPlus:
            return "CohRelayPlus";
    }
    throw std::invalid_argument("unknown policy");
}

Grouping group_nodes(const LinkGains& gains, double relay_fraction) {
    if (!(relay_fraction >= 0.0 && relay_fraction <= 1.0)) {
        throw std::invalid_argument("relay_fraction must be in [0, 1]");
    }
    const std::size_t k = gains.node_count();
    if (gains.h_kr.size() != k) {
        throw std::invalid_argument("link gain vectors must have equal length");
    }
    const auto n_relay = static_cast<std::size_t>(
        std::floor(relay_fraction * static_cast<double>(k) + 0.5));

    // Nodes whose direct link is weakest relative to their relay link go
    // through the relay; stable sort keeps ties in ascending index order.
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const double di = gains.h_kd[i] * gains.h_kd[i] - gains.h_kr[i] * gains.h_kr[i];
        const double dj = gains.h_kd[j] * gains.h_kd[j] - gains.h_kr[j] * gains.h_kr[j];
        return di < dj;
    });

    Grouping grouping;
    grouping.relay_users.assign(order.begin(), order.begin() + n_relay);
    grouping.direct_users.assign(order.begin() + n_relay, order.end());
    std::sort(grouping.relay_users.begin(), grouping.relay_users.end());
    std::sort(grouping.direct_users.begin(), grouping.direct_users.end());
    return grouping;
}

double relay_tx_scaling(double a_r1_eff, double a_d2, double h_rd) {
    if (a_r1_eff == 0.0) {
        return 0.0;
    }
    if (a_d2 <= 0.0 || h_rd <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return a_r1_eff / (a_d2 * h_rd);
}

RelaySolution solve_sim_relay(const LinkGains& gains, const Grouping& grouping,
                              double p_max, double sigma2) {
    validate_grouping(gains, grouping);
    const std::size_t k = gains.node_count();

    RelaySolution solution;
    solution.policy = Policy::SimRelay;
    solution.b1.assign(k, 0.0);
    solution.b2.assign(k, 0.0);

    double signal = 0.0;
    if (!grouping.relay_users.empty()) {
        const auto sol_r = solve_baseline(gather(gains.h_kr, grouping.relay_users),
                                          p_max, sigma2);
        solution.a_r1_eff = sol_r.a;
        scatter(solution.b1, grouping.relay_users, sol_r.b);
        signal += sol_r.mse_signal;
    }
    if (!grouping.direct_users.empty()) {
        const auto sol_d = solve_baseline(gather(gains.h_kd, grouping.direct_users),
                                          p_max, sigma2);
        solution.a_d2 = sol_d.a;
        scatter(solution.b2, grouping.direct_users, sol_d.b);
        signal += sol_d.mse_signal;
    }
    solution.mse_signal = signal;
    solution.mse_noise = sigma2 * (solution.a_r1_eff * solution.a_r1_eff +
                                   solution.a_d2 * solution.a_d2);
    solution.b_r2 = relay_tx_scaling(solution.a_r1_eff, solution.a_d2, gains.h_rd);
    return solution;
}

PowerSplit coherent_split(double a_r1_eff, double a_d2, double h_kr, double h_kd,
                          double power) {
    if (power <= 0.0) {
        throw std::invalid_argument("power budget must be positive");
    }
    const double c1 = a_r1_eff * h_kr;
    const double c2 = a_d2 * h_kd;
    const double s = c1 * c1 + c2 * c2;
    if (s <= 0.0) {
        throw std::invalid_argument("coherent split needs a usable path");
    }
    const double rho = std::sqrt(power) / std::sqrt(s);
    return PowerSplit{rho * c1, rho * c2, std::sqrt(power * s)};
}

RelayGroupAllocation one_iter(const LinkGains& gains, const Grouping& grouping,
                              double a_r1_eff, double a_d2, double p_max,
                              double sigma2) {
    if (a_r1_eff < 0.0 || a_d2 < 0.0) {
        throw std::invalid_argument("scaling factors must be nonnegative");
    }
    if (p_max <= 0.0) {
        throw std::invalid_argument("p_max must be positive");
    }
    const std::size_t n = grouping.relay_users.size();
    RelayGroupAllocation alloc;
    alloc.b1.assign(n, 0.0);
    alloc.b2.assign(n, 0.0);
    alloc.e.assign(n, 0.0);

    double error_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = grouping.relay_users[i];
        const double c1 = a_r1_eff * gains.h_kr[k];
        const double c2 = a_d2 * gains.h_kd[k];
        const double s = c1 * c1 + c2 * c2;
        if (s <= 0.0) {
            // No usable path at these scalings: stay silent, full miss.
            alloc.e[i] = 1.0;
            error_sum += 1.0;
            continue;
        }
        const double gamma_max = std::sqrt(p_max * s);
        if (gamma_max >= 1.0) {
            // Exact alignment costs power 1/s <= p_max; spend only that.
            const auto split = coherent_split(a_r1_eff, a_d2, gains.h_kr[k],
                                              gains.h_kd[k], 1.0 / s);
            alloc.b1[i] = split.b1;
            alloc.b2[i] = split.b2;
            alloc.e[i] = 0.0;
        } else {
            const auto split = coherent_split(a_r1_eff, a_d2, gains.h_kr[k],
                                              gains.h_kd[k], p_max);
            alloc.b1[i] = split.b1;
            alloc.b2[i] = split.b2;
            alloc.e[i] = 1.0 - gamma_max;
            error_sum += alloc.e[i] * alloc.e[i];
        }
    }
    alloc.mse_rd = error_sum + sigma2 * a_r1_eff * a_r1_eff;
    return alloc;
}

RelaySolution solve_coh_relay(const LinkGains& gains, const Grouping& grouping,
                              double p_max, double sigma2, double delta_scale,
                              std::vector<double>* accepted_mse_rd) {
    validate_grouping(gains, grouping);
    if (delta_scale <= 0.0) {
        throw std::invalid_argument("delta_scale must be positive");
    }
    if (grouping.relay_users.empty()) {
        RelaySolution solution = solve_sim_relay(gains, grouping, p_max, sigma2);
        solution.policy = Policy::CohRelay;
        return solution;
    }
    const std::size_t k = gains.node_count();

    RelaySolution solution;
    solution.policy = Policy::CohRelay;
    solution.b1.assign(k, 0.0);
    solution.b2.assign(k, 0.0);

    double direct_signal = 0.0;
    if (!grouping.direct_users.empty()) {
        const auto sol_d = solve_baseline(gather(gains.h_kd, grouping.direct_users),
                                          p_max, sigma2);
        solution.a_d2 = sol_d.a;
        scatter(solution.b2, grouping.direct_users, sol_d.b);
        direct_signal = sol_d.mse_signal;
    }

    // Start from the split-problem optimum of the relay side, then walk
    // a_r1_eff downward while the relay-side error keeps improving: a smaller
    // a_r1_eff trades signal alignment against forwarded-noise power.
    const double a_init =
        solve_baseline(gather(gains.h_kr, grouping.relay_users), p_max, sigma2).a;
    double a_cur = a_init;
    RelayGroupAllocation best =
        one_iter(gains, grouping, a_cur, solution.a_d2, p_max, sigma2);
    if (accepted_mse_rd != nullptr) {
        accepted_mse_rd->push_back(best.mse_rd);
    }
    const double delta = delta_scale * a_init;
    while (a_cur > delta) {
        const double candidate_a = a_cur - delta;
        RelayGroupAllocation candidate =
            one_iter(gains, grouping, candidate_a, solution.a_d2, p_max, sigma2);
        if (!(candidate.mse_rd < best.mse_rd)) {
            break;
        }
        a_cur = candidate_a;
        best = std::move(candidate);
        if (accepted_mse_rd != nullptr) {
            accepted_mse_rd->push_back(best.mse_rd);
        }
    }

    solution.a_r1_eff = a_cur;
    scatter(solution.b1, grouping.relay_users, best.b1);
    scatter(solution.b2, grouping.relay_users, best.b2);
    solution.mse_signal = direct_signal + sum_squared(best.e);
    solution.mse_noise = sigma2 * (a_cur * a_cur + solution.a_d2 * solution.a_d2);
    solution.b_r2 = relay_tx_scaling(a_cur, solution.a_d2, gains.h_rd);
    return solution;
}

RelaySolution solve_refined(Policy which, const LinkGains& gains,
                            const Grouping& grouping, double p_max, double sigma2,
                            double gamma_floor, double theta, double baseline_a,
                            std::size_t grid_size) {
    validate_grouping(gains, grouping);
    if (which != Policy::SimRelayPlus && which != Policy::CohRelayPlus) {
        throw std::invalid_argument("solve_refined handles the refined policies only");
    }
    if (gamma_floor <= 0.0 || baseline_a <= 0.0) {
        throw std::invalid_argument("noise floor gamma_floor * baseline_a^2 must be positive");
    }
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw std::invalid_argument("theta must be in [0, 1]");
    }
    if (grid_size < 2) {
        throw std::invalid_argument("candidate grid needs at least two points");
    }

    const std::size_t k = gains.node_count();
    const double sqrt_p = std::sqrt(p_max);
    const double floor2 = gamma_floor * baseline_a * baseline_a;
    const double radius = std::sqrt(floor2);

    RelaySolution solution;
    solution.policy = which;
    solution.b1.assign(k, 0.0);
    solution.b2.assign(k, 0.0);

    const auto direct_inversion = [&](double a_d2, std::vector<double>& b2,
                                      double& signal, double& power) {
        for (std::size_t idx : grouping.direct_users) {
            const double b = std::min(1.0 / (a_d2 * gains.h_kd[idx]), sqrt_p);
            b2[idx] = b;
            const double miss = a_d2 * gains.h_kd[idx] * b - 1.0;
            signal += miss * miss;
            power += b * b;
        }
    };

    if (grouping.relay_users.empty()) {
        // With nobody on the relay path the whole noise budget goes to the
        // direct side; a_d2 at the circle's end is the objective's limit point
        // and reproduces the plain single-hop solution when gamma_floor = 1.
        solution.a_d2 = radius;
        double signal = 0.0;
        double power = 0.0;
        direct_inversion(solution.a_d2, solution.b2, signal, power);
        solution.mse_signal = signal;
        solution.mse_noise = sigma2 * floor2;
        solution.b_r2 = 0.0;
        return solution;
    }

    struct Candidate {
        double objective = std::numeric_limits<double>::infinity();
        double a_r1_eff = 0.0;
        double a_d2 = 0.0;
        std::vector<double> b1;
        std::vector<double> b2;
        double mse_signal = 0.0;
        double mse_noise = 0.0;
    };
    Candidate best;

    std::vector<double> b1(k);
    std::vector<double> b2(k);
    for (std::size_t j = 0; j < grid_size; ++j) {
        // a_d2 spans [0.05, 0.995] of the circle radius: the ends avoid a
        // vanishing direct path and an imaginary relay scaling.
        const double t = 0.05 + (0.995 - 0.05) * static_cast<double>(j) /
                                    static_cast<double>(grid_size - 1);
        const double a_d2 = t * radius;
        const double a_r1 = std::sqrt(std::max(floor2 - a_d2 * a_d2, 0.0));

        std::fill(b1.begin(), b1.end(), 0.0);
        std::fill(b2.begin(), b2.end(), 0.0);
        double signal = 0.0;
        double power = 0.0;

        if (which == Policy::CohRelayPlus) {
            const auto alloc = one_iter(gains, grouping, a_r1, a_d2, p_max, sigma2);
            scatter(b1, grouping.relay_users, alloc.b1);
            scatter(b2, grouping.relay_users, alloc.b2);
            for (std::size_t i = 0; i < alloc.e.size(); ++i) {
                signal += alloc.e[i] * alloc.e[i];
                power += alloc.b1[i] * alloc.b1[i] + alloc.b2[i] * alloc.b2[i];
            }
        } else {
            for (std::size_t idx : grouping.relay_users) {
                const double b = std::min(1.0 / (a_r1 * gains.h_kr[idx]), sqrt_p);
                b1[idx] = b;
                const double miss = a_r1 * gains.h_kr[idx] * b - 1.0;
                signal += miss * miss;
                power += b * b;
            }
        }
        direct_inversion(a_d2, b2, signal, power);

        const double noise = sigma2 * (a_r1 * a_r1 + a_d2 * a_d2);
        const double objective = theta * (signal + noise) +
                                 (1.0 - theta) * power / static_cast<double>(k);
        if (objective < best.objective) {
            best.objective = objective;
            best.a_r1_eff = a_r1;
            best.a_d2 = a_d2;
            best.b1 = b1;
            best.b2 = b2;
            best.mse_signal = signal;
            best.mse_noise = noise;
        }
    }

    solution.a_r1_eff = best.a_r1_eff;
    solution.a_d2 = best.a_d2;
    solution.b1 = std::move(best.b1);
    solution.b2 = std::move(best.b2);
    solution.mse_signal = best.mse_signal;
    solution.mse_noise = best.mse_noise;
    solution.b_r2 = relay_tx_scaling(solution.a_r1_eff, solution.a_d2, gains.h_rd);
    return solution;
}

double relay_tx_power(const RelaySolution& solution, const LinkGains& gains,
                      const Grouping& grouping) {
    double forwarded = 0.0;
    for (std::size_t idx : grouping.relay_users) {
        const double arriving = gains.h_kr[idx] * solution.b1[idx];
        forwarded += arriving * arriving;
    }
    if (forwarded == 0.0 || solution.b_r2 == 0.0) {
        return 0.0;
    }
    return solution.b_r2 * solution.b_r2 * forwarded;
}

double relay_noise_power(const RelaySolution& solution, double sigma2) {
    if (sigma2 == 0.0 || solution.b_r2 == 0.0) {
        return 0.0;
    }
    return solution.b_r2 * solution.b_r2 * sigma2;
}

double mean_node_power(const RelaySolution& solution) {
    if (solution.b1.size() != solution.b2.size() || solution.b1.empty()) {
        throw std::invalid_argument("solution power vectors must be nonempty and equal");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < solution.b1.size(); ++i) {
        sum += solution.b1[i] * solution.b1[i] + solution.b2[i] * solution.b2[i];
    }
    return sum / static_cast<double>(solution.b1.size());
}

}  // namespace aircomp
