#include "wristml/perf_model.hpp"

#include "wristml/error.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>

namespace wristml::perf {
namespace {

std::string shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string where(const YAML::Node& n) {
    return n.Mark().is_null() ? std::string() : " (line " + std::to_string(n.Mark().line + 1) + ")";
}

template <typename T>
T get(const YAML::Node& parent, const char* key, const std::string& context) {
    const YAML::Node n = parent[key];
    if (!n)
        throw ConfigError(context + ": missing '" + key + "'" + where(parent));
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(context + ": '" + key + "' has an invalid value" + where(n));
    }
}

template <typename T>
T get_or(const YAML::Node& parent, const char* key, T fallback, const std::string& context) {
    return parent[key] ? get<T>(parent, key, context) : fallback;
}

}  // namespace

ProfileDocument builtin_profile_document() {
    ProfileDocument doc;
    doc.table = builtin_calibration();
    doc.energy_resolution_uj = 0.1;
    return doc;
}

ProfileDocument load_profile_document(std::string_view yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("profile document: ") + e.what());
    }
    if (!root.IsMap())
        throw ConfigError("profile document must be a mapping");

    ProfileDocument doc;
    if (const auto w = root["network_weights"]) {
        doc.table.weights_a = get<std::size_t>(w, "a", "network_weights");
        doc.table.weights_b = get<std::size_t>(w, "b", "network_weights");
    }
    doc.power_tolerance = get_or<double>(root, "power_tolerance", kPowerConsistencyTolerance, "profile document");
    doc.energy_resolution_uj = get_or<double>(root, "energy_resolution_uJ", 0.0, "profile document");

    const auto platforms = root["platforms"];
    if (!platforms || !platforms.IsSequence() || platforms.size() == 0)
        throw ConfigError("profile document needs a non-empty 'platforms' list");
    for (const auto& p : platforms) {
        PlatformCalibration c;
        c.name = get<std::string>(p, "name", "platform");
        const std::string ctx = "platform '" + c.name + "'";
        c.clock_hz = get<double>(p, "clock_hz", ctx);
        const auto cycles = p["cycles"];
        const auto energy = p["energy_uJ"];
        if (!cycles || !energy)
            throw ConfigError(ctx + ": needs 'cycles' and 'energy_uJ'" + where(p));
        c.network_a = {get<std::uint64_t>(cycles, "a", ctx + " cycles"), get<double>(energy, "a", ctx + " energy_uJ")};
        c.network_b = {get<std::uint64_t>(cycles, "b", ctx + " cycles"), get<double>(energy, "b", ctx + " energy_uJ")};
        for (const auto& existing : doc.table.platforms)
            if (existing.name == c.name)
                throw ConfigError("duplicate platform '" + c.name + "'");
        doc.table.platforms.push_back(c);
    }

    if (const auto d = root["detection"]) {
        auto& m = doc.detection;
        const std::string ctx = "detection";
        m.ecg_power_w = get_or<double>(d, "ecg_power_uW", m.ecg_power_w * 1e6, ctx) * 1e-6;
        m.gsr_power_w = get_or<double>(d, "gsr_power_uW", m.gsr_power_w * 1e6, ctx) * 1e-6;
        m.acquisition_s = get_or<double>(d, "acquisition_s", m.acquisition_s, ctx);
        m.acquisition_energy_j = get_or<double>(d, "acquisition_energy_uJ", m.acquisition_energy_j * 1e6, ctx) * 1e-6;
        m.feature_time_s = get_or<double>(d, "feature_time_us", m.feature_time_s * 1e6, ctx) * 1e-6;
        m.feature_power_w = get_or<double>(d, "feature_power_mW", m.feature_power_w * 1e3, ctx) * 1e-3;
        m.feature_energy_j = get_or<double>(d, "feature_energy_uJ", m.feature_energy_j * 1e6, ctx) * 1e-6;
    }
    return doc;
}

std::string save_profile_document(const ProfileDocument& doc) {
    std::string out;
    out += "# Platform profiles: two calibration measurements per execution target.\n";
    out += "network_weights:\n  a: " + std::to_string(doc.table.weights_a) + "\n  b: " + std::to_string(doc.table.weights_b) + "\n";
    out += "power_tolerance: " + shortest(doc.power_tolerance) + "\n";
    out += "energy_resolution_uJ: " + shortest(doc.energy_resolution_uj) + "\n";
    out += "platforms:\n";
    for (const auto& p : doc.table.platforms) {
        out += "  - name: " + p.name + "\n";
        out += "    clock_hz: " + shortest(p.clock_hz) + "\n";
        out += "    cycles: {a: " + std::to_string(p.network_a.cycles) + ", b: " + std::to_string(p.network_b.cycles) + "}\n";
        out += "    energy_uJ: {a: " + shortest(p.network_a.energy_uj) + ", b: " + shortest(p.network_b.energy_uj) + "}\n";
    }
    const auto& m = doc.detection;
    out += "detection:\n";
    out += "  ecg_power_uW: " + shortest(m.ecg_power_w * 1e6) + "\n";
    out += "  gsr_power_uW: " + shortest(m.gsr_power_w * 1e6) + "\n";
    out += "  acquisition_s: " + shortest(m.acquisition_s) + "\n";
    out += "  acquisition_energy_uJ: " + shortest(m.acquisition_energy_j * 1e6) + "\n";
    out += "  feature_time_us: " + shortest(m.feature_time_s * 1e6) + "\n";
    out += "  feature_power_mW: " + shortest(m.feature_power_w * 1e3) + "\n";
    out += "  feature_energy_uJ: " + shortest(m.feature_energy_j * 1e6) + "\n";
    return out;
}

}  // namespace wristml::perf
