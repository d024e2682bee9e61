#include "aircomp/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "aircomp/baseline.hpp"
#include "aircomp/rng.hpp"

namespace aircomp {

namespace {

/// Signal misalignment of one single-hop group under plain channel inversion
/// at Rx-scaling x: b = min(1/(x*h), sqrt(p)).
double inversion_signal_error(double x, const std::vector<double>& hs,
                              double p_max) {
    const double sqrt_p = std::sqrt(p_max);
    double total = 0.0;
    for (double h : hs) {
        const double b = std::min(1.0 / (x * h), sqrt_p);
        const double miss = x * h * b - 1.0;
        total += miss * miss;
    }
    return total;
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

std::vector<double> axis_grid(const std::vector<double>& hs, double p_max,
                              std::size_t points) {
    if (hs.empty()) {
        return {0.0};  // no group on this axis: its scaling stays at zero
    }
    const double h_min = *std::min_element(hs.begin(), hs.end());
    const double a_max = 10.0 / (h_min * std::sqrt(p_max));
    std::vector<double> axis;
    axis.reserve(points);
    for (std::size_t g = 1; g <= points; ++g) {
        axis.push_back(a_max * static_cast<double>(g) / static_cast<double>(points));
    }
    return axis;
}

void require_instances(std::size_t instances) {
    if (instances == 0) {
        throw std::invalid_argument("oracle needs at least one instance");
    }
}

std::vector<double> zoomed_axis(double center, double half_width,
                                std::size_t points) {
    std::vector<double> axis;
    axis.reserve(points);
    const double lo = std::max(center - half_width, half_width * 1e-9);
    const double hi = center + half_width;
    for (std::size_t g = 0; g < points; ++g) {
        axis.push_back(lo + (hi - lo) * static_cast<double>(g) /
                                static_cast<double>(points - 1));
    }
    return axis;
}

}  // namespace

double baseline_grid_search_mse(std::span<const double> h, double p_max,
                                double sigma2, std::size_t grid_points) {
    if (h.empty() || grid_points == 0) {
        throw std::invalid_argument("grid search needs nodes and grid points");
    }
    const double h_min = *std::min_element(h.begin(), h.end());
    if (h_min <= 0.0) {
        throw std::invalid_argument("channel gains must be positive");
    }
    const double sqrt_p = std::sqrt(p_max);
    const double a_max = 10.0 / (h_min * sqrt_p);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t g = 1; g <= grid_points; ++g) {
        const double a =
            a_max * static_cast<double>(g) / static_cast<double>(grid_points);
        double mse = sigma2 * a * a;
        for (double hk : h) {
            const double b = std::min(1.0 / (a * hk), sqrt_p);
            const double miss = a * hk * b - 1.0;
            mse += miss * miss;
        }
        best = std::min(best, mse);
    }
    return best;
}

double sim_relay_grid_search_mse(const LinkGains& gains, const Grouping& grouping,
                                 double p_max, double sigma2,
                                 std::size_t coarse_points) {
    if (coarse_points < 2) {
        throw std::invalid_argument("grid search needs at least two points per axis");
    }
    const std::vector<double> hr = gather(gains.h_kr, grouping.relay_users);
    const std::vector<double> hd = gather(gains.h_kd, grouping.direct_users);

    const auto value = [&](double a1, double a2) {
        return inversion_signal_error(a1, hr, p_max) +
               inversion_signal_error(a2, hd, p_max) +
               sigma2 * (a1 * a1 + a2 * a2);
    };
    const auto scan = [&](const std::vector<double>& axis1,
                          const std::vector<double>& axis2) {
        double best = std::numeric_limits<double>::infinity();
        double best1 = axis1.front();
        double best2 = axis2.front();
        for (double a1 : axis1) {
            for (double a2 : axis2) {
                const double v = value(a1, a2);
                if (v < best) {
                    best = v;
                    best1 = a1;
                    best2 = a2;
                }
            }
        }
        return std::tuple{best, best1, best2};
    };

    std::vector<double> axis1 = axis_grid(hr, p_max, coarse_points);
    std::vector<double> axis2 = axis_grid(hd, p_max, coarse_points);
    auto [best, best1, best2] = scan(axis1, axis2);

    // Two zoom passes around the incumbent recover the within-cell optimum;
    // the basin around the global minimum is wide relative to a coarse cell.
    double cell1 = axis1.size() > 1 ? axis1[1] - axis1[0] : 0.0;
    double cell2 = axis2.size() > 1 ? axis2[1] - axis2[0] : 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        const std::size_t zoom_points = 301;
        if (cell1 > 0.0) {
            axis1 = zoomed_axis(best1, 3.0 * cell1, zoom_points);
            cell1 = axis1[1] - axis1[0];
        }
        if (cell2 > 0.0) {
            axis2 = zoomed_axis(best2, 3.0 * cell2, zoom_points);
            cell2 = axis2[1] - axis2[0];
        }
        std::tie(best, best1, best2) = scan(axis1, axis2);
    }
    return best;
}

double relay_mse_from_factors(const RelaySolution& solution,
                              const LinkGains& gains, const Grouping& grouping,
                              double sigma2) {
    (void)grouping;  // every node contributes through the same combined form
    double signal = 0.0;
    for (std::size_t k = 0; k < gains.node_count(); ++k) {
        const double combined = solution.a_r1_eff * gains.h_kr[k] * solution.b1[k] +
                                solution.a_d2 * gains.h_kd[k] * solution.b2[k];
        const double miss = combined - 1.0;
        signal += miss * miss;
    }
    return signal + sigma2 * (solution.a_r1_eff * solution.a_r1_eff +
                              solution.a_d2 * solution.a_d2);
}

RelayGroupAllocation one_iter_reference(const LinkGains& gains,
                                        const Grouping& grouping,
                                        double a_r1_eff, double a_d2,
                                        double p_max, double sigma2) {
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
            alloc.e[i] = 1.0;
            error_sum += 1.0;
            continue;
        }
        const double full_power_gamma = std::sqrt(p_max) * std::sqrt(s);
        double rho = 0.0;
        if (full_power_gamma >= 1.0) {
            rho = 1.0 / s;
            alloc.e[i] = 0.0;
        } else {
            rho = std::sqrt(p_max) / std::sqrt(s);
            alloc.e[i] = 1.0 - full_power_gamma;
            error_sum += alloc.e[i] * alloc.e[i];
        }
        alloc.b1[i] = rho * c1;
        alloc.b2[i] = rho * c2;
    }
    alloc.mse_rd = error_sum + sigma2 * a_r1_eff * a_r1_eff;
    return alloc;
}

RandomInstance random_instance(std::uint64_t seed, std::size_t index,
                               std::size_t k_min, std::size_t k_max) {
    if (k_min < 1 || k_max < k_min) {
        throw std::invalid_argument("instance size bounds must satisfy 1 <= k_min <= k_max");
    }
    Rng rng(substream_seed(seed, index, Stream::Topology));
    const auto span = static_cast<double>(k_max - k_min + 1);
    auto k = k_min + static_cast<std::size_t>(rng.uniform01() * span);
    k = std::min(k, k_max);

    RandomInstance instance;
    instance.gains.h_kd.reserve(k);
    instance.gains.h_kr.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        instance.gains.h_kd.push_back(rng.uniform(0.05, 5.0));
    }
    for (std::size_t i = 0; i < k; ++i) {
        instance.gains.h_kr.push_back(rng.uniform(0.05, 5.0));
    }
    instance.gains.h_rd = rng.uniform(0.5, 5.0);
    instance.grouping = group_nodes(instance.gains, rng.uniform01());
    instance.p_max = 10.0;
    switch (index % 3) {
        case 0:
            instance.sigma2 = 0.0;
            break;
        case 1:
            instance.sigma2 = 0.5;
            break;
        default:
            instance.sigma2 = 1.0;
            break;
    }
    return instance;
}

OracleOutcome run_baseline_oracle(std::size_t instances, std::uint64_t seed) {
    require_instances(instances);
    OracleOutcome outcome{.name = "baseline",
                          .instances = instances,
                          .tolerance = 1e-6};
    outcome.max_deviation = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < instances; ++i) {
        const RandomInstance inst = random_instance(seed, i, 1, 5);
        const auto solution =
            solve_baseline(inst.gains.h_kd, inst.p_max, inst.sigma2);
        const double oracle = baseline_grid_search_mse(inst.gains.h_kd, inst.p_max,
                                                       inst.sigma2, 200'000);
        const double deviation = solution.total_mse() - oracle;
        if (deviation > outcome.max_deviation) {
            outcome.max_deviation = deviation;
            outcome.worst_instance = i;
        }
    }
    outcome.pass = outcome.max_deviation <= outcome.tolerance;
    return outcome;
}

OracleOutcome run_sim_relay_oracle(std::size_t instances, std::uint64_t seed) {
    require_instances(instances);
    OracleOutcome outcome{.name = "simrelay",
                          .instances = instances,
                          .tolerance = 1e-5};
    for (std::size_t i = 0; i < instances; ++i) {
        Rng rng(substream_seed(seed, i, Stream::Fading));
        const std::size_t k = 4 + static_cast<std::size_t>(rng.uniform01() * 5.0) % 5;
        LinkGains gains;
        for (std::size_t j = 0; j < k; ++j) {
            gains.h_kd.push_back(rng.uniform(0.25, 4.0));
        }
        for (std::size_t j = 0; j < k; ++j) {
            gains.h_kr.push_back(rng.uniform(0.25, 4.0));
        }
        gains.h_rd = rng.uniform(0.5, 5.0);
        const std::size_t n_relay = 1 + i % (k - 1);
        const Grouping grouping =
            group_nodes(gains, static_cast<double>(n_relay) / static_cast<double>(k));
        const double sigma2 = (i % 2 == 0) ? 0.5 : 1.0;

        const auto solution = solve_sim_relay(gains, grouping, 10.0, sigma2);
        const double oracle =
            sim_relay_grid_search_mse(gains, grouping, 10.0, sigma2, 1200);
        const double deviation = std::abs(solution.total_mse() - oracle);
        if (deviation > outcome.max_deviation) {
            outcome.max_deviation = deviation;
            outcome.worst_instance = i;
        }
    }
    outcome.pass = outcome.max_deviation <= outcome.tolerance;
    return outcome;
}

OracleOutcome run_split_oracle(std::size_t instances, std::uint64_t seed) {
    require_instances(instances);
    OracleOutcome outcome{.name = "split",
                          .instances = instances,
                          .tolerance = 1e-12};
    outcome.max_deviation = -std::numeric_limits<double>::infinity();
    bool strictness_ok = true;
    for (std::size_t i = 0; i < instances; ++i) {
        Rng rng(substream_seed(seed, i, Stream::Fading));
        const double h_kr = rng.uniform(0.05, 5.0);
        const double h_kd = rng.uniform(0.05, 5.0);
        double a_r1 = (rng.uniform01() < 0.1) ? 0.0 : rng.uniform(0.0, 3.0);
        double a_d2 = (rng.uniform01() < 0.1) ? 0.0 : rng.uniform(0.0, 3.0);
        if (a_r1 * h_kr == 0.0 && a_d2 * h_kd == 0.0) {
            a_d2 = 1.0;
        }
        const double power = rng.uniform(0.1, 10.0);
        const auto split = coherent_split(a_r1, a_d2, h_kr, h_kd, power);

        const double c1 = a_r1 * h_kr;
        const double c2 = a_d2 * h_kd;
        const double best_angle = std::atan2(c2, c1);
        const double sqrt_power = std::sqrt(power);
        for (std::size_t s = 0; s < 1000; ++s) {
            const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double combined =
                c1 * sqrt_power * std::cos(angle) + c2 * sqrt_power * std::sin(angle);
            const double deviation = combined - split.gamma;
            if (deviation > outcome.max_deviation) {
                outcome.max_deviation = deviation;
                outcome.worst_instance = i;
            }
            // Away from the optimal direction the combined coefficient must
            // fall strictly below the Cauchy-Schwarz value.
            double gap = std::abs(angle - best_angle);
            gap = std::min(gap, 2.0 * std::numbers::pi - gap);
            if (gap > 1e-6 && combined >= split.gamma) {
                strictness_ok = false;
                outcome.worst_instance = i;
            }
        }
    }
    outcome.pass = strictness_ok && outcome.max_deviation <= outcome.tolerance;
    return outcome;
}

OracleOutcome run_one_iter_oracle(std::size_t instances, std::uint64_t seed) {
    require_instances(instances);
    OracleOutcome outcome{.name = "oneiter",
                          .instances = instances,
                          .tolerance = 1e-12};
    for (std::size_t i = 0; i < instances; ++i) {
        const RandomInstance inst = random_instance(seed, i, 2, 8);
        Rng rng(substream_seed(seed, i, Stream::Fading));
        const double a_r1 = (rng.uniform01() < 0.1) ? 0.0 : rng.uniform(0.0, 2.0);
        const double a_d2 = rng.uniform(0.01, 2.0);

        const auto lhs = one_iter(inst.gains, inst.grouping, a_r1, a_d2,
                                  inst.p_max, inst.sigma2);
        const auto rhs = one_iter_reference(inst.gains, inst.grouping, a_r1, a_d2,
                                            inst.p_max, inst.sigma2);
        double deviation = std::abs(lhs.mse_rd - rhs.mse_rd);
        for (std::size_t j = 0; j < lhs.b1.size(); ++j) {
            deviation = std::max(deviation, std::abs(lhs.b1[j] - rhs.b1[j]));
            deviation = std::max(deviation, std::abs(lhs.b2[j] - rhs.b2[j]));
            deviation = std::max(deviation, std::abs(lhs.e[j] - rhs.e[j]));
        }
        if (deviation > outcome.max_deviation) {
            outcome.max_deviation = deviation;
            outcome.worst_instance = i;
        }
    }
    outcome.pass = outcome.max_deviation <= outcome.tolerance;
    return outcome;
}

OracleOutcome run_descent_oracle(std::size_t instances, std::uint64_t seed) {
    require_instances(instances);
    OracleOutcome outcome{.name = "descent",
                          .instances = instances,
                          .tolerance = 1e-9};
    outcome.max_deviation = -std::numeric_limits<double>::infinity();
    bool descent_ok = true;
    for (std::size_t i = 0; i < instances; ++i) {
        const RandomInstance inst = random_instance(seed, i, 2, 10);
        const auto sim =
            solve_sim_relay(inst.gains, inst.grouping, inst.p_max, inst.sigma2);
        std::vector<double> accepted;
        const auto coh = solve_coh_relay(inst.gains, inst.grouping, inst.p_max,
                                         inst.sigma2, 0.01, &accepted);
        for (std::size_t j = 1; j < accepted.size(); ++j) {
            if (!(accepted[j] < accepted[j - 1])) {
                descent_ok = false;
                outcome.worst_instance = i;
            }
        }
        const double deviation = coh.total_mse() - sim.total_mse();
        if (deviation > outcome.max_deviation) {
            outcome.max_deviation = deviation;
            outcome.worst_instance = i;
        }
    }
    outcome.pass = descent_ok && outcome.max_deviation <= outcome.tolerance;
    return outcome;
}

OracleOutcome run_decomposition_oracle(std::size_t instances,
                                       std::uint64_t seed) {
    require_instances(instances);
    OracleOutcome outcome{.name = "decomposition",
                          .instances = instances,
                          .tolerance = 1e-12};
    for (std::size_t i = 0; i < instances; ++i) {
        const RandomInstance inst = random_instance(seed, i, 2, 10);
        const auto sim =
            solve_sim_relay(inst.gains, inst.grouping, inst.p_max, inst.sigma2);

        const double from_factors =
            relay_mse_from_factors(sim, inst.gains, inst.grouping, inst.sigma2);
        double two_hop_sum = 0.0;
        if (!inst.grouping.relay_users.empty()) {
            two_hop_sum += solve_baseline(gather(inst.gains.h_kr,
                                                 inst.grouping.relay_users),
                                          inst.p_max, inst.sigma2)
                               .total_mse();
        }
        if (!inst.grouping.direct_users.empty()) {
            two_hop_sum += solve_baseline(gather(inst.gains.h_kd,
                                                 inst.grouping.direct_users),
                                          inst.p_max, inst.sigma2)
                               .total_mse();
        }
        const double deviation =
            std::max(std::abs(sim.total_mse() - from_factors),
                     std::abs(sim.total_mse() - two_hop_sum));
        if (deviation > outcome.max_deviation) {
            outcome.max_deviation = deviation;
            outcome.worst_instance = i;
        }
    }
    outcome.pass = outcome.max_deviation <= outcome.tolerance;
    return outcome;
}

}  // namespace aircomp
