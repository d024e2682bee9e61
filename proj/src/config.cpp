#include "aircomp/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

#include "aircomp/report.hpp"

namespace aircomp {

namespace {

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

[[noreturn]] void fail_line(std::size_t line, const std::string& message) {
    throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

template <typename T>
T parse_number(std::string_view value, std::string_view key, std::size_t line) {
    T out{};
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto result = std::from_chars(begin, end, out);
    if (result.ec != std::errc{} || result.ptr != end) {
        fail_line(line, "value '" + std::string(value) + "' for key '" +
                            std::string(key) + "' is not a valid number");
    }
    return out;
}

bool parse_bool(std::string_view value, std::string_view key, std::size_t line) {
    if (value == "true") {
        return true;
    }
    if (value == "false") {
        return false;
    }
    fail_line(line, "value '" + std::string(value) + "' for key '" +
                        std::string(key) + "' must be true or false");
}

void require(bool condition, const std::string& message) {
    if (!condition) {
        throw ConfigError(message);
    }
}

void require_finite(double value, const std::string& field) {
    require(std::isfinite(value), field + " must be a finite number");
}

bool safe_identifier(const std::string& text) {
    if (text.empty()) {
        return false;
    }
    for (char c : text) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_' || c == '-';
        if (!ok) {
            return false;
        }
    }
    return true;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    std::string section;
    std::set<std::string> seen;

    std::istringstream stream(text);
    std::string raw_line;
    std::size_t line_no = 0;
    while (std::getline(stream, raw_line)) {
        ++line_no;
        const std::string_view line = trim(raw_line);
        if (line.empty() || line.front() == '#' || line.front() == ';') {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                fail_line(line_no, "malformed section header");
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section != "scenario" && section != "power" && section != "policy" &&
                section != "harness" && section != "output") {
                fail_line(line_no, "unknown section '" + section + "'");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail_line(line_no, "expected 'key = value'");
        }
        if (section.empty()) {
            fail_line(line_no, "key before any [section] header");
        }
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) {
            fail_line(line_no, "empty key");
        }
        if (!seen.insert(section + "." + key).second) {
            fail_line(line_no, "duplicate key '" + key + "' in [" + section + "]");
        }

        const auto num = [&](double& field) {
            field = parse_number<double>(value, key, line_no);
        };
        const auto cnt = [&](std::size_t& field) {
            field = parse_number<std::size_t>(value, key, line_no);
        };

        bool known = true;
        if (section == "scenario") {
            ScenarioConfig& s = config.scenario;
            if (key == "area_width") num(s.area_width);
            else if (key == "area_height") num(s.area_height);
            else if (key == "nodes") cnt(s.nodes);
            else if (key == "sink_x") num(s.sink.x);
            else if (key == "sink_y") num(s.sink.y);
            else if (key == "relay_x") num(s.relay.x);
            else if (key == "relay_y") num(s.relay.y);
            else if (key == "frequency_hz") num(s.frequency_hz);
            else if (key == "tx_antenna_height_m") num(s.tx_antenna_height_m);
            else if (key == "rx_antenna_height_m") num(s.rx_antenna_height_m);
            else if (key == "rx_gain_db") num(s.rx_gain_db);
            else if (key == "fading_on_relay_sink_link")
                s.fading_on_relay_sink_link = parse_bool(value, key, line_no);
            else known = false;
        } else if (section == "power") {
            PowerConfig& p = config.power;
            if (key == "p_max") num(p.p_max);
            else if (key == "sigma2") num(p.sigma2);
            else known = false;
        } else if (section == "policy") {
            PolicyConfig& p = config.policy;
            if (key == "relay_fraction") num(p.relay_fraction);
            else if (key == "gamma") num(p.gamma);
            else if (key == "theta") num(p.theta);
            else if (key == "delta_scale") num(p.delta_scale);
            else if (key == "a_d2_grid_size") cnt(p.a_d2_grid_size);
            else known = false;
        } else if (section == "harness") {
            HarnessConfig& h = config.harness;
            if (key == "trials") cnt(h.trials);
            else if (key == "master_seed")
                h.master_seed = parse_number<std::uint64_t>(value, key, line_no);
            else if (key == "threads") cnt(h.threads);
            else known = false;
        } else if (section == "output") {
            OutputConfig& o = config.output;
            if (key == "dir") o.dir = std::string(value);
            else if (key == "experiment_id") o.experiment_id = std::string(value);
            else if (key == "csv") o.csv = parse_bool(value, key, line_no);
            else if (key == "json") o.json = parse_bool(value, key, line_no);
            else known = false;
        }
        if (!known) {
            fail_line(line_no, "unknown key '" + key + "' in [" + section + "]");
        }
    }

    validate_config(config);
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    try {
        return parse_config(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void validate_config(const ExperimentConfig& config) {
    const ScenarioConfig& s = config.scenario;
    require_finite(s.area_width, "area_width");
    require_finite(s.area_height, "area_height");
    require(s.area_width > 0.0, "area_width must be positive");
    require(s.area_height > 0.0, "area_height must be positive");
    require(s.nodes >= 1, "nodes must be at least 1");
    for (const auto& [p, name] : {std::pair{s.sink, "sink"}, {s.relay, "relay"}}) {
        require_finite(p.x, std::string(name) + "_x");
        require_finite(p.y, std::string(name) + "_y");
        require(p.x >= 0.0 && p.x <= s.area_width && p.y >= 0.0 && p.y <= s.area_height,
                std::string(name) + " position must lie inside the area");
    }
    require(!(s.sink == s.relay), "sink and relay positions must differ");
    require_finite(s.frequency_hz, "frequency_hz");
    require(s.frequency_hz > 0.0, "frequency_hz must be positive");
    require_finite(s.tx_antenna_height_m, "tx_antenna_height_m");
    require(s.tx_antenna_height_m > 0.0, "tx_antenna_height_m must be positive");
    require_finite(s.rx_antenna_height_m, "rx_antenna_height_m");
    require(s.rx_antenna_height_m > 0.0, "rx_antenna_height_m must be positive");
    require_finite(s.rx_gain_db, "rx_gain_db");

    const PowerConfig& pw = config.power;
    require_finite(pw.p_max, "p_max");
    require(pw.p_max > 0.0, "p_max must be positive");
    require_finite(pw.sigma2, "sigma2");
    require(pw.sigma2 >= 0.0, "sigma2 must be nonnegative");

    const PolicyConfig& pl = config.policy;
    require_finite(pl.relay_fraction, "relay_fraction");
    require(pl.relay_fraction >= 0.0 && pl.relay_fraction <= 1.0,
            "relay_fraction must be in [0, 1]");
    require_finite(pl.gamma, "gamma");
    require(pl.gamma > 0.0, "gamma must be positive");
    require_finite(pl.theta, "theta");
    require(pl.theta >= 0.0 && pl.theta <= 1.0, "theta must be in [0, 1]");
    require_finite(pl.delta_scale, "delta_scale");
    require(pl.delta_scale > 0.0, "delta_scale must be positive");
    require(pl.a_d2_grid_size >= 2, "a_d2_grid_size must be at least 2");

    const HarnessConfig& h = config.harness;
    require(h.trials >= 1, "trials must be at least 1");
    require(h.threads >= 1, "threads must be at least 1");

    const OutputConfig& o = config.output;
    require(!o.dir.empty(), "dir must not be empty");
    require(safe_identifier(o.experiment_id),
            "experiment_id must be a nonempty [A-Za-z0-9_-] identifier");
}

std::string serialize_config(const ExperimentConfig& config) {
    const ScenarioConfig& s = config.scenario;
    const PowerConfig& pw = config.power;
    const PolicyConfig& pl = config.policy;
    const HarnessConfig& h = config.harness;
    const OutputConfig& o = config.output;

    std::ostringstream out;
    const auto bool_text = [](bool v) { return v ? "true" : "false"; };
    out << "[scenario]\n"
        << "area_width = " << format_exact(s.area_width) << "\n"
        << "area_height = " << format_exact(s.area_height) << "\n"
        << "nodes = " << s.nodes << "\n"
        << "sink_x = " << format_exact(s.sink.x) << "\n"
        << "sink_y = " << format_exact(s.sink.y) << "\n"
        << "relay_x = " << format_exact(s.relay.x) << "\n"
        << "relay_y = " << format_exact(s.relay.y) << "\n"
        << "frequency_hz = " << format_exact(s.frequency_hz) << "\n"
        << "tx_antenna_height_m = " << format_exact(s.tx_antenna_height_m) << "\n"
        << "rx_antenna_height_m = " << format_exact(s.rx_antenna_height_m) << "\n"
        << "rx_gain_db = " << format_exact(s.rx_gain_db) << "\n"
        << "fading_on_relay_sink_link = " << bool_text(s.fading_on_relay_sink_link)
        << "\n\n";
    out << "[power]\n"
        << "p_max = " << format_exact(pw.p_max) << "\n"
        << "sigma2 = " << format_exact(pw.sigma2) << "\n\n";
    out << "[policy]\n"
        << "relay_fraction = " << format_exact(pl.relay_fraction) << "\n"
        << "gamma = " << format_exact(pl.gamma) << "\n"
        << "theta = " << format_exact(pl.theta) << "\n"
        << "delta_scale = " << format_exact(pl.delta_scale) << "\n"
        << "a_d2_grid_size = " << pl.a_d2_grid_size << "\n\n";
    out << "[harness]\n"
        << "trials = " << h.trials << "\n"
        << "master_seed = " << h.master_seed << "\n"
        << "threads = " << h.threads << "\n\n";
    out << "[output]\n"
        << "dir = " << o.dir << "\n"
        << "experiment_id = " << o.experiment_id << "\n"
        << "csv = " << bool_text(o.csv) << "\n"
        << "json = " << bool_text(o.json) << "\n";
    return out.str();
}

ChannelParams channel_params(const ScenarioConfig& scenario,
                             const PowerConfig& power) {
    ChannelParams params;
    params.frequency_hz = scenario.frequency_hz;
    params.tx_antenna_height_m = scenario.tx_antenna_height_m;
    params.rx_antenna_height_m = scenario.rx_antenna_height_m;
    params.rx_gain_db = scenario.rx_gain_db;
    params.noise_power = power.sigma2;
    params.fading_on_relay_sink_link = scenario.fading_on_relay_sink_link;
    return params;
}

}  // namespace aircomp
