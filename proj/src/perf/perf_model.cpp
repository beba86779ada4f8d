#include "wristml/perf_model.hpp"

#include "wristml/error.hpp"

#include <algorithm>
#include <cmath>

namespace wristml::perf {

std::string_view network_label(NetworkId id) { return id == NetworkId::a ? "A" : "B"; }

const PlatformCalibration& CalibrationTable::platform(std::string_view name) const {
    for (const auto& p : platforms)
        if (p.name == name)
            return p;
    std::string known;
    for (const auto& p : platforms)
        known += (known.empty() ? "" : ", ") + p.name;
    throw ConfigError("unknown platform '" + std::string(name) + "' (available: " + known + ")");
}

const CalibrationPoint& CalibrationTable::point(std::string_view name, NetworkId id) const {
    const auto& p = platform(name);
    return id == NetworkId::a ? p.network_a : p.network_b;
}

std::vector<std::string> CalibrationTable::platform_names() const {
    std::vector<std::string> names;
    for (const auto& p : platforms)
        names.push_back(p.name);
    return names;
}

CalibrationTable builtin_calibration() {
    CalibrationTable t;
    t.weights_a = 3003;
    t.weights_b = 81032;
    t.platforms = {
        {"cortex_m4", 64e6, {30210, 5.1}, {902763, 153.8}},
        {"ibex", 100e6, {40661, 1.3}, {955588, 31.5}},
        {"ri5cy_single", 100e6, {22772, 2.9}, {519354, 65.6}},
        {"ri5cy_multi8", 100e6, {6126, 1.2}, {108316, 21.6}},
    };
    return t;
}

double fixed_vs_float_speedup() {
    return static_cast<double>(kFloatCyclesNetworkA) / static_cast<double>(kFixedCyclesNetworkA);
}

std::uint64_t CycleModel::predict(std::size_t weights) const {
    const double c = std::round(alpha * static_cast<double>(weights) + delta);
    return c <= 0.0 ? 0 : static_cast<std::uint64_t>(c);
}

std::map<std::string, CycleModel, std::less<>> fit_cycle_model(const CalibrationTable& table) {
    if (table.weights_a == table.weights_b)
        throw CalibrationError("calibration networks must have distinct weight counts");
    const double wa = static_cast<double>(table.weights_a);
    const double wb = static_cast<double>(table.weights_b);
    std::map<std::string, CycleModel, std::less<>> fits;
    for (const auto& p : table.platforms) {
        const double ca = static_cast<double>(p.network_a.cycles);
        const double cb = static_cast<double>(p.network_b.cycles);
        CycleModel m;
        m.alpha = (cb - ca) / (wb - wa);
        m.delta = ca - m.alpha * wa;
        fits.emplace(p.name, m);
    }
    return fits;
}

std::map<std::string, PowerEstimate, std::less<>> derive_power(const CalibrationTable& table, double tolerance,
                                                                double energy_resolution_uj) {
    std::map<std::string, PowerEstimate, std::less<>> out;
    for (const auto& p : table.platforms) {
        if (!(p.clock_hz > 0.0) || p.network_a.cycles == 0 || p.network_b.cycles == 0 || !(p.network_a.energy_uj > 0.0) ||
            !(p.network_b.energy_uj > 0.0))
            throw CalibrationError("platform '" + p.name + "' needs a positive clock, cycles and energies");
        PowerEstimate e;
        const double ta = static_cast<double>(p.network_a.cycles) / p.clock_hz;
        const double tb = static_cast<double>(p.network_b.cycles) / p.clock_hz;
        e.from_a_w = p.network_a.energy_uj * 1e-6 / ta;
        e.from_b_w = p.network_b.energy_uj * 1e-6 / tb;
        e.mean_w = 0.5 * (e.from_a_w + e.from_b_w);
        const double gap = std::fabs(e.from_a_w - e.from_b_w);
        e.disagreement = gap / e.mean_w;
        const double half = 0.5 * energy_resolution_uj * 1e-6;
        const double slack = half / ta + half / tb;
        e.unexplained_disagreement = std::max(0.0, gap - slack) / e.mean_w;
        if (e.unexplained_disagreement > tolerance)
            throw CalibrationError("platform '" + p.name + "': power from network A (" + std::to_string(e.from_a_w * 1e3) +
                                   " mW) and network B (" + std::to_string(e.from_b_w * 1e3) + " mW) disagree by " +
                                   std::to_string(e.disagreement * 100.0) + "%");
        out.emplace(p.name, e);
    }
    return out;
}

double PlatformProfile::power_at(std::size_t weights) const {
    const double w = static_cast<double>(weights);
    const double wa = static_cast<double>(weights_a);
    const double wb = static_cast<double>(weights_b);
    const double t = std::clamp((w - wa) / (wb - wa), 0.0, 1.0);
    return power.from_a_w + t * (power.from_b_w - power.from_a_w);
}

PerfModel::PerfModel(CalibrationTable table, DetectionEnergyModel detection, double power_tolerance,
                     double energy_resolution_uj)
    : table_(std::move(table)), detection_(detection) {
    const auto cycles = fit_cycle_model(table_);
    const auto power = derive_power(table_, power_tolerance, energy_resolution_uj);
    for (const auto& p : table_.platforms) {
        PlatformProfile prof;
        prof.name = p.name;
        prof.clock_hz = p.clock_hz;
        prof.cycles = cycles.find(p.name)->second;
        prof.power = power.find(p.name)->second;
        prof.active_power_w = prof.power.mean_w;
        prof.weights_a = table_.weights_a;
        prof.weights_b = table_.weights_b;
        profiles_.push_back(prof);
    }
}

PerfModel PerfModel::builtin() { return builtin_profile_document().model(); }

const PlatformProfile& PerfModel::profile(std::string_view name) const {
    for (const auto& p : profiles_)
        if (p.name == name)
            return p;
    table_.platform(name);  // throws with the list of known platforms
    throw ConfigError("unknown platform '" + std::string(name) + "'");
}

Prediction PerfModel::predict(std::size_t weights, std::string_view platform) const {
    const PlatformProfile& p = profile(platform);
    Prediction r;
    r.cycles = p.cycles.predict(weights);
    r.seconds = static_cast<double>(r.cycles) / p.clock_hz;
    r.joules = r.seconds * p.power_at(weights);
    return r;
}

Prediction PerfModel::predict(const NetworkModel& net, std::string_view platform) const {
    return predict(net.weight_count(), platform);
}

Prediction PerfModel::predict(NetworkId id, std::string_view platform) const {
    return predict(id == NetworkId::a ? table_.weights_a : table_.weights_b, platform);
}

double PerfModel::speedup(std::string_view baseline, std::string_view target, NetworkId id) const {
    return static_cast<double>(predict(id, baseline).cycles) / static_cast<double>(predict(id, target).cycles);
}

DetectionEnergy PerfModel::detection_energy(std::string_view platform) const {
    DetectionEnergy e;
    e.acquisition_j = detection_.acquisition_energy_j;
    e.feature_j = detection_.feature_energy_j;
    e.classify_j = predict(NetworkId::a, platform).joules;
    e.total_j = e.acquisition_j + e.feature_j + e.classify_j;
    return e;
}

}  // namespace wristml::perf
