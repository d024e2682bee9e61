#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aircomp/rng.hpp"

namespace aircomp {

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

double distance(const Point& a, const Point& b);

/// Node deployment: K sensor nodes, one sink, one relay, all inside a
/// rectangular area anchored at the origin.
struct Topology {
    double area_width = 0.0;
    double area_height = 0.0;
    std::vector<Point> node_positions;
    Point sink_position;
    Point relay_position;

    std::size_t node_count() const { return node_positions.size(); }
};

/// Throws std::invalid_argument when any position is outside the area, the
/// node set is empty, or sink and relay coincide.
void validate_topology(const Topology& topology);

/// Radio parameters shared by every receive link. The receiver amplification
/// rx_gain_db is folded into the effective amplitude gains so that solver-side
/// noise power can stay normalized.
struct ChannelParams {
    double frequency_hz = 2.4e9;
    double tx_antenna_height_m = 1.5;
    double rx_antenna_height_m = 1.5;
    double rx_gain_db = 90.0;
    double noise_power = 1.0;
    bool fading_on_relay_sink_link = false;

    bool operator==(const ChannelParams&) const = default;
};

/// Effective amplitude gains for one fading realization. Phases are assumed
/// pre-compensated, so every entry is a nonnegative real magnitude.
struct LinkGains {
    std::vector<double> h_kd;  // node -> sink
    std::vector<double> h_kr;  // node -> relay
    double h_rd = 0.0;         // relay -> sink

    std::size_t node_count() const { return h_kd.size(); }
};

/// Draws k node positions i.i.d. uniform over the area. Deterministic for a
/// fixed seed; draw order is node 0..k-1, x before y.
Topology generate_topology(std::uint64_t seed, std::size_t k, double area_width,
                           double area_height, Point sink, Point relay);

/// Distance where the free-space and two-ray power laws cross,
/// d_c = 4*pi*h_t*h_r / lambda. The two laws give the same gain there.
double crossover_distance_m(const ChannelParams& params);

/// Hybrid free-space/two-ray power gain:
///   (lambda / (4*pi*d))^2          for d <= d_c,
///   (h_t*h_r)^2 / d^4              for d >  d_c.
/// Pure function of (distance, params); throws for distance <= 0.
double path_loss_linear(double distance_m, const ChannelParams& params);

/// One slow-fading realization for every link. Amplitudes are
///   h = sqrt(G_rx * PL(d)) * |g|
/// with G_rx = 10^(rx_gain_db/10) and |g| a unit-power Rayleigh magnitude.
/// The relay->sink link uses |g| = 1 unless fading_on_relay_sink_link is set.
/// Draw order: h_kd for all nodes, then h_kr, then the relay->sink draw.
LinkGains sample_link_gains(const Topology& topology, const ChannelParams& params,
                            Rng& rng);

}  // namespace aircomp
