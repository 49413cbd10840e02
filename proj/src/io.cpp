#include "loam/io.hpp"

#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "loam/errors.hpp"

namespace loam {

namespace {

using nlohmann::json;

std::string quoted(std::string_view s) { return json(std::string(s)).dump(); }

std::string number_list(std::span<const double> values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += format_double(values[i]);
    }
    return out + "]";
}

std::string design_document(const Constellation& constellation, Regime regime, const std::string& ray_phase,
                            const std::string& spacing, std::span<const double> magnitudes) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"scheme\": " << quoted(to_string(constellation.scheme)) << ",\n";
    out << "  \"order\": " << constellation.order << ",\n";
    out << "  \"regime\": " << quoted(to_string(regime)) << ",\n";
    out << "  \"ray_phase\": " << ray_phase << ",\n";
    out << "  \"spacing\": " << spacing << ",\n";
    out << "  \"points\": [";
    for (std::size_t i = 0; i < constellation.points.size(); ++i) {
        const auto& x = constellation.points[i];
        out << (i == 0 ? "\n" : ",\n") << "    [" << format_double(x.real()) << ", " << format_double(x.imag())
            << "]";
    }
    out << "\n  ],\n";
    out << "  \"magnitudes\": " << number_list(magnitudes) << "\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Config parsing helpers; every failure names the JSON pointer it came from.
// ---------------------------------------------------------------------------

void reject_unknown_keys(const json& object, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : object.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError(path + "/" + key, "unknown key");
        }
    }
}

const json& require(const json& object, const std::string& path, const char* key) {
    if (!object.contains(key)) {
        throw ConfigError(path + "/" + key, "missing required key");
    }
    return object.at(key);
}

double as_number(const json& value, const std::string& path) {
    if (!value.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    return value.get<double>();
}

std::uint64_t as_unsigned(const json& value, const std::string& path) {
    if (value.is_number_unsigned()) {
        return value.get<std::uint64_t>();
    }
    if (value.is_number_integer()) {
        throw ConfigError(path, "must be >= 0");
    }
    throw ConfigError(path, "expected a non-negative integer");
}

ComplexValue as_complex(const json& value, const std::string& path) {
    if (!value.is_array() || value.size() != 2) {
        throw ConfigError(path, "expected [re, im]");
    }
    return {as_number(value[0], path + "/0"), as_number(value[1], path + "/1")};
}

ChannelMode parse_channel_mode(const json& node) {
    const std::string path = "/channel_mode";
    if (!node.is_object()) {
        throw ConfigError(path, "expected an object");
    }
    const json& kind = require(node, path, "kind");
    if (kind == "fixed_channel") {
        reject_unknown_keys(node, path, {"kind", "h"});
        return FixedChannel{as_complex(require(node, path, "h"), path + "/h")};
    }
    if (kind == "rayleigh_per_trial") {
        reject_unknown_keys(node, path, {"kind"});
        return RayleighPerTrial{};
    }
    throw ConfigError(path + "/kind", "expected fixed_channel or rayleigh_per_trial");
}

ReferenceMode parse_reference_mode(const json& node) {
    const std::string path = "/reference_mode";
    if (!node.is_object()) {
        throw ConfigError(path, "expected an object");
    }
    const json& kind = require(node, path, "kind");
    if (kind == "zero") {
        reject_unknown_keys(node, path, {"kind"});
        return ZeroReference{};
    }
    if (kind == "fixed_value") {
        reject_unknown_keys(node, path, {"kind", "b"});
        return FixedReference{as_complex(require(node, path, "b"), path + "/b")};
    }
    if (kind == "threshold_ratio") {
        reject_unknown_keys(node, path, {"kind", "ratio"});
        return ThresholdRatio{as_number(require(node, path, "ratio"), path + "/ratio")};
    }
    throw ConfigError(path + "/kind", "expected zero, fixed_value or threshold_ratio");
}

} // namespace

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string design_to_json(const DesignOutcome& design) {
    return design_document(design.constellation, design.regime, format_double(design.ray_phase),
                           format_double(design.spacing), design.magnitudes);
}

std::string baseline_to_json(const Constellation& constellation, const ChannelState& state) {
    std::vector<double> magnitudes;
    magnitudes.reserve(constellation.points.size());
    for (const auto& x : constellation.points) {
        magnitudes.push_back(transformed_magnitude(x, state.h(), state.b()));
    }
    std::string ray_phase = "null";
    std::string spacing = "null";
    if (constellation.scheme == Scheme::Pam) {
        ray_phase = format_double(0.0);
        spacing = format_double(spacing_strong(state.power(), constellation.order));
    }
    return design_document(constellation, classify_regime(state), ray_phase, spacing, magnitudes);
}

void write_ser_csv(std::ostream& out, std::span<const SerPoint> points) {
    out << kSerCsvHeader << '\n';
    for (const auto& p : points) {
        out << to_string(p.scheme) << ',' << p.order << ',' << format_double(p.snr_db) << ',' << p.trials << ','
            << p.errors << ',' << format_double(p.ser) << ',' << format_double(p.ci95_halfwidth) << '\n';
    }
}

std::string ser_to_json(std::span<const SerPoint> points) {
    std::string out = "[";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        out += i == 0 ? "\n" : ",\n";
        out += "  {\"scheme\": " + quoted(to_string(p.scheme)) + ", \"order\": " + std::to_string(p.order) +
               ", \"snr_db\": " + format_double(p.snr_db) + ", \"trials\": " + std::to_string(p.trials) +
               ", \"errors\": " + std::to_string(p.errors) + ", \"ser\": " + format_double(p.ser) +
               ", \"ci95\": " + format_double(p.ci95_halfwidth) + "}";
    }
    return out + "\n]\n";
}

SweepConfig parse_sweep_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("", "expected a JSON object");
    }
    reject_unknown_keys(root, "", {"schemes", "order", "snr_grid_db", "trials_per_point", "seed", "channel_mode",
                                   "reference_mode", "power"});

    SweepConfig config;

    const json& schemes = require(root, "", "schemes");
    if (!schemes.is_array()) {
        throw ConfigError("/schemes", "expected an array of scheme labels");
    }
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        const std::string path = "/schemes/" + std::to_string(i);
        if (!schemes[i].is_string()) {
            throw ConfigError(path, "expected a string");
        }
        try {
            config.schemes.push_back(parse_scheme(schemes[i].get<std::string>()));
        } catch (const InvalidArgument& e) {
            throw ConfigError(path, e.what());
        }
    }

    const json& order = require(root, "", "order");
    if (!order.is_number_integer()) {
        throw ConfigError("/order", "expected an integer");
    }
    config.order = order.get<int>();

    const json& grid = require(root, "", "snr_grid_db");
    if (!grid.is_array()) {
        throw ConfigError("/snr_grid_db", "expected an array of numbers");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        config.snr_grid_db.push_back(as_number(grid[i], "/snr_grid_db/" + std::to_string(i)));
    }

    config.trials_per_point = as_unsigned(require(root, "", "trials_per_point"), "/trials_per_point");
    config.seed = as_unsigned(require(root, "", "seed"), "/seed");

    if (root.contains("channel_mode")) {
        config.channel_mode = parse_channel_mode(root.at("channel_mode"));
    }
    if (root.contains("reference_mode")) {
        config.reference_mode = parse_reference_mode(root.at("reference_mode"));
    }
    if (root.contains("power")) {
        config.power = as_number(root.at("power"), "/power");
    }

    validate(config);
    return config;
}

} // namespace loam
