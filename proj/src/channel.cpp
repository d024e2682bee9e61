#include "aircomp/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aircomp {

namespace {

constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

double wavelength_m(const ChannelParams& params) {
    return kSpeedOfLight / params.frequency_hz;
}

void validate_params(const ChannelParams& params) {
    if (params.frequency_hz <= 0.0) {
        throw std::invalid_argument("frequency_hz must be positive");
    }
    if (params.tx_antenna_height_m <= 0.0 || params.rx_antenna_height_m <= 0.0) {
        throw std::invalid_argument("antenna heights must be positive");
    }
}

bool inside_area(const Point& p, double width, double height) {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
}

}  // namespace

double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void validate_topology(const Topology& topology) {
    if (topology.area_width <= 0.0 || topology.area_height <= 0.0) {
        throw std::invalid_argument("deployment area dimensions must be positive");
    }
    if (topology.node_positions.empty()) {
        throw std::invalid_argument("topology must contain at least one node");
    }
    if (topology.sink_position == topology.relay_position) {
        throw std::invalid_argument("sink and relay must not coincide");
    }
    const double w = topology.area_width;
    const double h = topology.area_height;
    if (!inside_area(topology.sink_position, w, h)) {
        throw std::invalid_argument("sink position outside deployment area");
    }
    if (!inside_area(topology.relay_position, w, h)) {
        throw std::invalid_argument("relay position outside deployment area");
    }
    for (std::size_t k = 0; k < topology.node_positions.size(); ++k) {
        if (!inside_area(topology.node_positions[k], w, h)) {
            throw std::invalid_argument("node " + std::to_string(k) +
                                        " outside deployment area");
        }
    }
}

Topology generate_topology(std::uint64_t seed, std::size_t k, double area_width,
                           double area_height, Point sink, Point relay) {
    if (k == 0) {
        throw std::invalid_argument("topology needs at least one node");
    }
    if (area_width <= 0.0 || area_height <= 0.0) {
        throw std::invalid_argument("deployment area dimensions must be positive");
    }
    Topology topology;
    topology.area_width = area_width;
    topology.area_height = area_height;
    topology.sink_position = sink;
    topology.relay_position = relay;
    topology.node_positions.reserve(k);
    Rng rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
        const double x = rng.uniform(0.0, area_width);
        const double y = rng.uniform(0.0, area_height);
        topology.node_positions.push_back(Point{x, y});
    }
    validate_topology(topology);
    return topology;
}

double crossover_distance_m(const ChannelParams& params) {
    validate_params(params);
    return 4.0 * std::numbers::pi * params.tx_antenna_height_m *
           params.rx_antenna_height_m / wavelength_m(params);
}

double path_loss_linear(double distance_m, const ChannelParams& params) {
    validate_params(params);
    if (distance_m <= 0.0) {
        throw std::invalid_argument("path loss needs a positive distance");
    }
    if (distance_m <= crossover_distance_m(params)) {
        const double ratio =
            wavelength_m(params) / (4.0 * std::numbers::pi * distance_m);
        return ratio * ratio;
    }
    const double hh = params.tx_antenna_height_m * params.rx_antenna_height_m;
    const double d2 = distance_m * distance_m;
    return (hh * hh) / (d2 * d2);
}

LinkGains sample_link_gains(const Topology& topology, const ChannelParams& params,
                            Rng& rng) {
    validate_topology(topology);
    const double rx_gain = std::pow(10.0, params.rx_gain_db / 10.0);
    const std::size_t k = topology.node_count();

    auto deterministic_amplitude = [&](const Point& from, const Point& to) {
        return std::sqrt(rx_gain * path_loss_linear(distance(from, to), params));
    };

    LinkGains gains;
    gains.h_kd.reserve(k);
    gains.h_kr.reserve(k);
    for (const Point& node : topology.node_positions) {
        gains.h_kd.push_back(deterministic_amplitude(node, topology.sink_position) *
                             rng.rayleigh_unit());
    }
    for (const Point& node : topology.node_positions) {
        gains.h_kr.push_back(deterministic_amplitude(node, topology.relay_position) *
                             rng.rayleigh_unit());
    }
    gains.h_rd =
        deterministic_amplitude(topology.relay_position, topology.sink_position);
    if (params.fading_on_relay_sink_link) {
        gains.h_rd *= rng.rayleigh_unit();
    }
    return gains;
}

}  // namespace aircomp
