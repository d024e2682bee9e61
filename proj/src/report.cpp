#include "aircomp/report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace aircomp {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string to_chars_string(double value, bool sig12) {
    char buffer[64];
    const auto result =
        sig12 ? std::to_chars(buffer, buffer + sizeof(buffer), value,
                              std::chars_format::general, 12)
              : std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (result.ec != std::errc{}) {
        throw std::runtime_error("failed to format a number");
    }
    return std::string(buffer, result.ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file << content;
    if (!file) {
        throw std::runtime_error("failed to write " + path);
    }
}

std::string output_path(const ExperimentConfig& config, const std::string& name) {
    std::filesystem::create_directories(config.output.dir);
    return (std::filesystem::path(config.output.dir) / name).string();
}

ordered_json config_json(const ExperimentConfig& config) {
    const ScenarioConfig& s = config.scenario;
    ordered_json j;
    j["scenario"] = {{"area_width", s.area_width},
                     {"area_height", s.area_height},
                     {"nodes", s.nodes},
                     {"sink_x", s.sink.x},
                     {"sink_y", s.sink.y},
                     {"relay_x", s.relay.x},
                     {"relay_y", s.relay.y},
                     {"frequency_hz", s.frequency_hz},
                     {"tx_antenna_height_m", s.tx_antenna_height_m},
                     {"rx_antenna_height_m", s.rx_antenna_height_m},
                     {"rx_gain_db", s.rx_gain_db},
                     {"fading_on_relay_sink_link", s.fading_on_relay_sink_link}};
    j["power"] = {{"p_max", config.power.p_max}, {"sigma2", config.power.sigma2}};
    j["policy"] = {{"relay_fraction", config.policy.relay_fraction},
                   {"gamma", config.policy.gamma},
                   {"theta", config.policy.theta},
                   {"delta_scale", config.policy.delta_scale},
                   {"a_d2_grid_size", config.policy.a_d2_grid_size}};
    j["harness"] = {{"trials", config.harness.trials},
                    {"master_seed", config.harness.master_seed},
                    {"threads", config.harness.threads}};
    j["output"] = {{"dir", config.output.dir},
                   {"experiment_id", config.output.experiment_id},
                   {"csv", config.output.csv},
                   {"json", config.output.json}};
    return j;
}

ordered_json policy_stats_json(const AggregateReport& report, Policy policy) {
    ordered_json j;
    for (Metric metric : kAllMetrics) {
        const MetricSummary& summary = report.summary(policy, metric);
        j[std::string(metric_name(metric))] = {{"mean", summary.mean},
                                               {"median", summary.median}};
    }
    return j;
}

/// Percent improvement of `policy` over the baseline statistic; null when the
/// baseline statistic is zero.
ordered_json reduction_percent(double baseline_value, double policy_value) {
    if (baseline_value == 0.0) {
        return nullptr;
    }
    return 100.0 * (baseline_value - policy_value) / baseline_value;
}

}  // namespace

std::string format_sig12(double value) { return to_chars_string(value, true); }

std::string format_exact(double value) { return to_chars_string(value, false); }

std::string report_stem(const ExperimentConfig& config) {
    return config.output.experiment_id + "_seed" +
           std::to_string(config.harness.master_seed);
}

std::vector<std::string> write_run_csvs(const AggregateReport& report) {
    const std::string stem = report_stem(report.config);
    std::vector<std::string> paths;
    for (Metric metric : kAllMetrics) {
        std::string content = "policy,trial_index,value\n";
        for (Policy policy : kAllPolicies) {
            const MetricSummary& summary = report.summary(policy, metric);
            for (std::size_t i = 0; i < summary.sorted_samples.size(); ++i) {
                content += policy_name(policy);
                content += ',';
                content += std::to_string(i);
                content += ',';
                content += format_sig12(summary.sorted_samples[i]);
                content += '\n';
            }
        }
        const std::string path = output_path(
            report.config,
            stem + "_cdf_" + std::string(metric_name(metric)) + ".csv");
        write_text_file(path, content);
        paths.push_back(path);
    }
    return paths;
}

std::vector<std::string> write_sweep_csvs(const ExperimentConfig& config,
                                          const SweepReport& sweep) {
    const std::string stem = report_stem(config);
    std::vector<std::string> paths;
    for (Metric metric : kAllMetrics) {
        std::string content = "policy," + sweep.axis + ",value\n";
        for (Policy policy : kAllPolicies) {
            for (std::size_t v = 0; v < sweep.values.size(); ++v) {
                content += policy_name(policy);
                content += ',';
                content += format_exact(sweep.values[v]);
                content += ',';
                content += format_sig12(
                    sweep.reports[v].summary(policy, metric).mean);
                content += '\n';
            }
        }
        const std::string path = output_path(
            config, stem + "_sweep_" + sweep.axis + "_" +
                        std::string(metric_name(metric)) + ".csv");
        write_text_file(path, content);
        paths.push_back(path);
    }
    return paths;
}

std::string write_run_summary(const AggregateReport& report) {
    ordered_json j;
    j["experiment_id"] = report.config.output.experiment_id;
    j["master_seed"] = report.config.harness.master_seed;
    j["trials"] = report.trial_count;
    j["config"] = config_json(report.config);

    ordered_json policies;
    for (Policy policy : kAllPolicies) {
        policies[std::string(policy_name(policy))] =
            policy_stats_json(report, policy);
    }
    j["policies"] = policies;

    const MetricSummary& base_mse = report.summary(Policy::Baseline, Metric::MseTotal);
    const MetricSummary& base_power =
        report.summary(Policy::Baseline, Metric::MeanNodePower);
    ordered_json comparison;
    for (Policy policy : {Policy::SimRelay, Policy::CohRelay, Policy::SimRelayPlus,
                          Policy::CohRelayPlus}) {
        const MetricSummary& mse = report.summary(policy, Metric::MseTotal);
        const MetricSummary& power = report.summary(policy, Metric::MeanNodePower);
        const MetricSummary& relay = report.summary(policy, Metric::RelayPower);
        comparison[std::string(policy_name(policy))] = {
            {"mse_reduction_percent",
             {{"median", reduction_percent(base_mse.median, mse.median)},
              {"mean", reduction_percent(base_mse.mean, mse.mean)}}},
            {"node_power_reduction_percent",
             {{"median", reduction_percent(base_power.median, power.median)},
              {"mean", reduction_percent(base_power.mean, power.mean)}}},
            {"relay_power", {{"median", relay.median}, {"mean", relay.mean}}}};
    }
    j["comparison_vs_baseline"] = comparison;

    const std::string path =
        output_path(report.config, report_stem(report.config) + "_summary.json");
    write_text_file(path, j.dump(2) + "\n");
    return path;
}

std::string write_sweep_summary(const ExperimentConfig& config,
                                const SweepReport& sweep) {
    ordered_json j;
    j["experiment_id"] = config.output.experiment_id;
    j["master_seed"] = config.harness.master_seed;
    j["axis"] = sweep.axis;
    j["values"] = sweep.values;
    ordered_json points = ordered_json::array();
    for (std::size_t v = 0; v < sweep.values.size(); ++v) {
        ordered_json point;
        point[sweep.axis] = sweep.values[v];
        point["trials"] = sweep.reports[v].trial_count;
        ordered_json policies;
        for (Policy policy : kAllPolicies) {
            policies[std::string(policy_name(policy))] =
                policy_stats_json(sweep.reports[v], policy);
        }
        point["policies"] = policies;
        points.push_back(point);
    }
    j["points"] = points;

    const std::string path = output_path(
        config, report_stem(config) + "_sweep_" + sweep.axis + "_summary.json");
    write_text_file(path, j.dump(2) + "\n");
    return path;
}

void write_link_gains_csv(const std::string& path, const LinkGains& gains) {
    std::string content = "# h_rd=" + format_sig12(gains.h_rd) + "\n";
    content += "node_index,h_kd,h_kr\n";
    for (std::size_t k = 0; k < gains.node_count(); ++k) {
        content += std::to_string(k);
        content += ',';
        content += format_sig12(gains.h_kd[k]);
        content += ',';
        content += format_sig12(gains.h_kr[k]);
        content += '\n';
    }
    write_text_file(path, content);
}

}  // namespace aircomp
