#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "aircomp/channel.hpp"
#include "aircomp/rng.hpp"

using aircomp::ChannelParams;
using aircomp::LinkGains;
using aircomp::Point;
using aircomp::Rng;
using aircomp::Stream;
using aircomp::Topology;
using aircomp::crossover_distance_m;
using aircomp::distance;
using aircomp::generate_topology;
using aircomp::mix64;
using aircomp::path_loss_linear;
using aircomp::sample_link_gains;
using aircomp::substream_seed;
using aircomp::validate_topology;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSpeedOfLight = 299'792'458.0;
}  // namespace

TEST_CASE("bit mixer separates nearby inputs") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        seen.insert(mix64(i));
    }
    CHECK(seen.size() == 1000);
    CHECK(mix64(1) != 2);
}

TEST_CASE("substream seeds are distinct across trials and streams") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        seen.insert(substream_seed(5, trial, Stream::Topology));
        seen.insert(substream_seed(5, trial, Stream::Fading));
    }
    CHECK(seen.size() == 400);
    CHECK(substream_seed(5, 0, Stream::Fading) !=
          substream_seed(6, 0, Stream::Fading));
}

TEST_CASE("uniform draws stay in the half open unit interval") {
    Rng rng(99);
    for (int i = 0; i < 10'000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("rayleigh magnitudes have unit mean square") {
    Rng rng(7);
    double sum_sq = 0.0;
    constexpr int kDraws = 200'000;
    for (int i = 0; i < kDraws; ++i) {
        const double r = rng.rayleigh_unit();
        CHECK(r >= 0.0);
        sum_sq += r * r;
    }
    CHECK(sum_sq / kDraws == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("same seed reproduces the same draws") {
    Rng a(123);
    Rng b(123);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.uniform01() == b.uniform01());
    }
}

TEST_CASE("topology generation is deterministic and in bounds") {
    const Point sink{100.0, 100.0};
    const Point relay{300.0, 100.0};
    const Topology t1 = generate_topology(42, 50, 400.0, 200.0, sink, relay);
    const Topology t2 = generate_topology(42, 50, 400.0, 200.0, sink, relay);
    const Topology t3 = generate_topology(43, 50, 400.0, 200.0, sink, relay);
    CHECK(t1.node_count() == 50);
    REQUIRE(t1.node_positions.size() == t2.node_positions.size());
    bool all_equal_to_t3 = true;
    for (std::size_t i = 0; i < t1.node_positions.size(); ++i) {
        CHECK(t1.node_positions[i] == t2.node_positions[i]);
        CHECK(t1.node_positions[i].x >= 0.0);
        CHECK(t1.node_positions[i].x <= 400.0);
        CHECK(t1.node_positions[i].y >= 0.0);
        CHECK(t1.node_positions[i].y <= 200.0);
        all_equal_to_t3 =
            all_equal_to_t3 && (t1.node_positions[i] == t3.node_positions[i]);
    }
    CHECK_FALSE(all_equal_to_t3);
    CHECK(t1.sink_position == sink);
    CHECK(t1.relay_position == relay);
}

TEST_CASE("topology validation rejects bad layouts") {
    Topology t = generate_topology(1, 3, 400.0, 200.0, Point{100.0, 100.0},
                                   Point{300.0, 100.0});
    validate_topology(t);

    Topology outside = t;
    outside.node_positions[1] = Point{500.0, 50.0};
    CHECK_THROWS_AS(validate_topology(outside), std::invalid_argument);

    Topology overlap = t;
    overlap.relay_position = overlap.sink_position;
    CHECK_THROWS_AS(validate_topology(overlap), std::invalid_argument);

    Topology empty = t;
    empty.node_positions.clear();
    CHECK_THROWS_AS(validate_topology(empty), std::invalid_argument);

    CHECK_THROWS_AS(
        (void)generate_topology(1, 0, 400.0, 200.0, Point{100.0, 100.0},
                                Point{300.0, 100.0}),
        std::invalid_argument);
}

TEST_CASE("crossover distance for the default radio") {
    const ChannelParams params;
    const double lambda = kSpeedOfLight / params.frequency_hz;
    const double expected = 4.0 * kPi * 1.5 * 1.5 / lambda;
    CHECK(crossover_distance_m(params) == doctest::Approx(expected));
    CHECK(expected == doctest::Approx(226.0).epsilon(0.01));
}

TEST_CASE("path loss follows the two segment power law") {
    const ChannelParams params;
    const double lambda = kSpeedOfLight / params.frequency_hz;

    // One wavelength out: free space (1/(4 pi))^2.
    CHECK(path_loss_linear(lambda, params) ==
          doctest::Approx(1.0 / (16.0 * kPi * kPi)).epsilon(1e-12));

    // The two laws agree at the crossover point (continuity).
    const double d_c = crossover_distance_m(params);
    const double just_below = path_loss_linear(d_c * (1.0 - 1e-9), params);
    const double just_above = path_loss_linear(d_c * (1.0 + 1e-9), params);
    CHECK(just_below == doctest::Approx(just_above).epsilon(1e-6));

    // Beyond the crossover the gain decays with the fourth power.
    const double far = path_loss_linear(2.0 * d_c, params);
    const double farther = path_loss_linear(4.0 * d_c, params);
    CHECK(far / farther == doctest::Approx(16.0).epsilon(1e-9));

    CHECK_THROWS_AS((void)path_loss_linear(0.0, params), std::invalid_argument);
    CHECK_THROWS_AS((void)path_loss_linear(-5.0, params), std::invalid_argument);
}

TEST_CASE("relay sink gain is deterministic without fading") {
    const Point sink{100.0, 100.0};
    const Point relay{300.0, 100.0};
    const Topology topo = generate_topology(11, 5, 400.0, 200.0, sink, relay);
    ChannelParams params;
    Rng rng(substream_seed(3, 0, Stream::Fading));
    const LinkGains gains = sample_link_gains(topo, params, rng);

    const double d = distance(sink, relay);
    CHECK(d == doctest::Approx(200.0));
    const double g_rx = std::pow(10.0, params.rx_gain_db / 10.0);
    const double expected = std::sqrt(g_rx * path_loss_linear(d, params));
    CHECK(gains.h_rd == doctest::Approx(expected).epsilon(1e-12));

    // With fading enabled on that link the amplitude changes.
    params.fading_on_relay_sink_link = true;
    Rng rng2(substream_seed(3, 0, Stream::Fading));
    const LinkGains faded = sample_link_gains(topo, params, rng2);
    CHECK(faded.h_rd != gains.h_rd);
    // ... but the node links consumed the same draws and stay identical.
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(faded.h_kd[k] == gains.h_kd[k]);
        CHECK(faded.h_kr[k] == gains.h_kr[k]);
    }
}

TEST_CASE("link gains scale with the receive amplifier") {
    const Topology topo = generate_topology(21, 4, 400.0, 200.0,
                                            Point{100.0, 100.0},
                                            Point{300.0, 100.0});
    ChannelParams params;
    Rng rng_a(substream_seed(8, 0, Stream::Fading));
    const LinkGains base = sample_link_gains(topo, params, rng_a);

    params.rx_gain_db = 96.0;  // +6 dB -> amplitude factor ~1.9953
    Rng rng_b(substream_seed(8, 0, Stream::Fading));
    const LinkGains boosted = sample_link_gains(topo, params, rng_b);
    const double factor = std::pow(10.0, 6.0 / 20.0);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(boosted.h_kd[k] == doctest::Approx(base.h_kd[k] * factor));
        CHECK(boosted.h_kr[k] == doctest::Approx(base.h_kr[k] * factor));
    }
}

TEST_CASE("node link fading is random across trials") {
    const Topology topo = generate_topology(31, 30, 400.0, 200.0,
                                            Point{100.0, 100.0},
                                            Point{300.0, 100.0});
    const ChannelParams params;
    Rng rng_a(substream_seed(9, 0, Stream::Fading));
    Rng rng_b(substream_seed(9, 1, Stream::Fading));
    const LinkGains first = sample_link_gains(topo, params, rng_a);
    const LinkGains second = sample_link_gains(topo, params, rng_b);
    std::size_t equal_count = 0;
    for (std::size_t k = 0; k < 30; ++k) {
        equal_count += (first.h_kd[k] == second.h_kd[k]) ? 1 : 0;
    }
    CHECK(equal_count == 0);
}
