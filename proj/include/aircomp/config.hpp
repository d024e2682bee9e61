#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aircomp/channel.hpp"

namespace aircomp {

/// Thrown on malformed config text or out-of-range values. The message names
/// the offending key or line so the CLI can surface it verbatim.
class ConfigError : public std::runtime_error {
   public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// [scenario] -- deployment geometry and channel model knobs.
struct ScenarioConfig {
    double area_width = 400.0;
    double area_height = 200.0;
    std::size_t nodes = 50;
    Point sink{100.0, 100.0};
    Point relay{300.0, 100.0};
    double frequency_hz = 2.4e9;
    double tx_antenna_height_m = 1.5;
    double rx_antenna_height_m = 1.5;
    double rx_gain_db = 90.0;
    bool fading_on_relay_sink_link = false;

    bool operator==(const ScenarioConfig&) const = default;
};

/// [power] -- per-node budget and receiver noise power (both normalized).
struct PowerConfig {
    double p_max = 10.0;
    double sigma2 = 1.0;

    bool operator==(const PowerConfig&) const = default;
};

/// [policy] -- relay grouping and refined-policy parameters.
struct PolicyConfig {
    double relay_fraction = 0.3;
    double gamma = 1.0;
    double theta = 0.5;
    double delta_scale = 0.01;
    std::size_t a_d2_grid_size = 200;

    bool operator==(const PolicyConfig&) const = default;
};

/// [harness] -- Monte Carlo size, seeding, and parallelism.
struct HarnessConfig {
    std::size_t trials = 2000;
    std::uint64_t master_seed = 1;
    std::size_t threads = 1;

    bool operator==(const HarnessConfig&) const = default;
};

/// [output] -- where report files go and which formats are emitted.
struct OutputConfig {
    std::string dir = "out";
    std::string experiment_id = "paper";
    bool csv = true;
    bool json = true;

    bool operator==(const OutputConfig&) const = default;
};

struct ExperimentConfig {
    ScenarioConfig scenario;
    PowerConfig power;
    PolicyConfig policy;
    HarnessConfig harness;
    OutputConfig output;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Parses INI-style text: [section] headers, key = value lines, '#' or ';'
/// comments, blank lines ignored. Unknown sections or keys, duplicate keys,
/// and malformed values are errors. Missing keys keep their defaults.
ExperimentConfig parse_config(const std::string& text);

/// Reads and parses a config file; the filename is included in error messages.
ExperimentConfig parse_config_file(const std::string& path);

/// Serializes every key explicitly, grouped by section, such that
/// parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// Range-checks a parsed (or programmatically built) config; throws
/// ConfigError naming the first bad field.
void validate_config(const ExperimentConfig& config);

/// Channel parameters implied by the scenario and power sections.
ChannelParams channel_params(const ScenarioConfig& scenario,
                             const PowerConfig& power);

}  // namespace aircomp
