#include "wristml/harvest.hpp"

#include "wristml/error.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>

namespace wristml::harvest {
namespace {

std::string where(const YAML::Node& n) {
    return n.Mark().is_null() ? std::string() : " (line " + std::to_string(n.Mark().line + 1) + ")";
}

double number(const YAML::Node& n, const std::string& what) {
    try {
        return n.as<double>();
    } catch (const YAML::Exception&) {
        throw ConfigError(what + " is not a number" + where(n));
    }
}

// "solar/indoor_700lx" or "teg/room22_skin32_still"
ActiveSource parse_source(const YAML::Node& n, const SourceCatalog& catalog) {
    const auto text = n.as<std::string>();
    const auto slash = text.find('/');
    if (slash == std::string::npos)
        throw ConfigError("source '" + text + "' must look like <solar|teg>/<condition>" + where(n));
    const auto kind_name = text.substr(0, slash);
    ActiveSource a;
    if (kind_name == "solar")
        a.kind = SourceKind::solar;
    else if (kind_name == "teg")
        a.kind = SourceKind::teg;
    else
        throw ConfigError("unknown source kind '" + kind_name + "'" + where(n));
    a.condition = text.substr(slash + 1);
    catalog.source(a.kind).power(a.condition);
    return a;
}

std::string shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

HarvestScenario load_scenario(std::string_view yaml_text, const SourceCatalog& catalog) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("scenario document: ") + e.what());
    }
    if (!root.IsMap())
        throw ConfigError("scenario document must be a mapping");
    HarvestScenario s;
    s.name = root["name"] ? root["name"].as<std::string>() : "custom";
    const auto segments = root["segments"];
    if (!segments || !segments.IsSequence())
        throw ConfigError("scenario document needs a 'segments' list");
    for (const auto& seg : segments) {
        Segment out;
        int given = 0;
        if (seg["seconds"]) {
            out.duration_s = number(seg["seconds"], "seconds");
            ++given;
        }
        if (seg["minutes"]) {
            out.duration_s = 60.0 * number(seg["minutes"], "minutes");
            ++given;
        }
        if (seg["hours"]) {
            out.duration_s = 3600.0 * number(seg["hours"], "hours");
            ++given;
        }
        if (given != 1)
            throw ConfigError("each segment needs exactly one of seconds / minutes / hours" + where(seg));
        if (const auto sources = seg["sources"]) {
            if (!sources.IsSequence())
                throw ConfigError("'sources' must be a list" + where(sources));
            for (const auto& src : sources)
                out.active.push_back(parse_source(src, catalog));
        }
        s.schedule.push_back(std::move(out));
    }
    validate(s, catalog);
    return s;
}

std::string save_scenario(const HarvestScenario& scenario) {
    std::string out = "name: " + scenario.name + "\nsegments:\n";
    for (const auto& seg : scenario.schedule) {
        out += "  - seconds: " + shortest(seg.duration_s) + "\n    sources: [";
        for (std::size_t i = 0; i < seg.active.size(); ++i) {
            if (i)
                out += ", ";
            out += std::string(source_name(seg.active[i].kind)) + "/" + seg.active[i].condition;
        }
        out += "]\n";
    }
    return out;
}

}  // namespace wristml::harvest
