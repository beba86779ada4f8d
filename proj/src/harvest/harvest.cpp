#include "wristml/harvest.hpp"

#include "wristml/error.hpp"

#include <algorithm>
#include <cmath>

namespace wristml::harvest {
namespace {

constexpr double kDayTolerance_s = 1e-6;

// Neumaier compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

void require_full_day(const HarvestScenario& scenario) {
    const double d = scenario.duration_s();
    if (std::fabs(d - kSecondsPerDay) > kDayTolerance_s)
        throw ConfigError("scenario '" + scenario.name + "' covers " + std::to_string(d / 3600.0) +
                          " h; a daily schedule must cover exactly 24 h");
}

}  // namespace

std::string_view source_name(SourceKind kind) { return kind == SourceKind::solar ? "solar" : "teg"; }

double SourceModel::power(std::string_view label) const {
    for (const auto& c : conditions)
        if (c.label == label)
            return c.power_w;
    std::string known;
    for (const auto& c : conditions)
        known += (known.empty() ? "" : ", ") + c.label;
    throw ConfigError("unknown " + std::string(source_name(kind)) + " condition '" + std::string(label) +
                      "' (available: " + known + ")");
}

SourceModel builtin_solar() {
    return {SourceKind::solar, {{std::string(kSolarOutdoor), 24.711e-3}, {std::string(kSolarIndoor), 0.9e-3}}};
}

SourceModel builtin_teg() {
    return {SourceKind::teg,
            {{std::string(kTegWorstCase), 24.0e-6},
             {"room15_skin30_still", 55.5e-6},
             {"room15_skin30_wind42kmh", 155.4e-6}}};
}

double HarvestScenario::duration_s() const {
    double d = 0.0;
    for (const auto& s : schedule)
        d += s.duration_s;
    return d;
}

void validate(const HarvestScenario& scenario, const SourceCatalog& catalog) {
    if (scenario.schedule.empty())
        throw ConfigError("scenario '" + scenario.name + "' has no segments");
    for (std::size_t i = 0; i < scenario.schedule.size(); ++i) {
        const auto& seg = scenario.schedule[i];
        if (!(seg.duration_s > 0.0) || !std::isfinite(seg.duration_s))
            throw ConfigError("scenario '" + scenario.name + "' segment " + std::to_string(i) + " has a non-positive duration");
        for (const auto& a : seg.active)
            catalog.source(a.kind).power(a.condition);
    }
}

double segment_power(const Segment& segment, const SourceCatalog& catalog) {
    double p = 0.0;
    for (const auto& a : segment.active)
        p += catalog.source(a.kind).power(a.condition);
    return p;
}

double daily_intake(const HarvestScenario& scenario, const SourceCatalog& catalog) {
    validate(scenario, catalog);
    require_full_day(scenario);
    double e = 0.0;
    for (const auto& seg : scenario.schedule)
        e += seg.duration_s * segment_power(seg, catalog);
    return e;
}

HarvestScenario indoor_day(double teg_hours) {
    if (!(teg_hours >= 6.0 && teg_hours <= 24.0))
        throw ConfigError("teg hours must be in [6, 24]");
    const ActiveSource solar{SourceKind::solar, std::string(kSolarIndoor)};
    const ActiveSource teg{SourceKind::teg, std::string(kTegWorstCase)};
    HarvestScenario s;
    s.name = "indoor-day";
    s.schedule.push_back({6.0 * 3600.0, {solar, teg}});
    if (teg_hours > 6.0)
        s.schedule.push_back({(teg_hours - 6.0) * 3600.0, {teg}});
    if (teg_hours < 24.0)
        s.schedule.push_back({(24.0 - teg_hours) * 3600.0, {}});
    return s;
}

HarvestScenario outdoor_sun_1h() {
    HarvestScenario s;
    s.name = "outdoor-sun-1h";
    s.schedule.push_back({3600.0, {{SourceKind::solar, std::string(kSolarOutdoor)}}});
    s.schedule.push_back({23.0 * 3600.0, {}});
    return s;
}

std::vector<std::string> builtin_scenario_names() { return {"indoor-day", "outdoor-sun-1h"}; }

HarvestScenario builtin_scenario(std::string_view name) {
    if (name == "indoor-day")
        return indoor_day();
    if (name == "outdoor-sun-1h")
        return outdoor_sun_1h();
    std::string known;
    for (const auto& n : builtin_scenario_names())
        known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown scenario '" + std::string(name) + "' (available: " + known + ")");
}

SustainabilityReport sustainable_rate(double daily_intake_j, double detection_energy_j) {
    if (!(detection_energy_j > 0.0))
        throw ConfigError("detection energy must be positive");
    SustainabilityReport r;
    r.daily_intake_j = daily_intake_j;
    r.detection_energy_j = detection_energy_j;
    r.max_detections_per_day = daily_intake_j > 0.0 ? static_cast<std::uint64_t>(std::floor(daily_intake_j / detection_energy_j)) : 0;
    r.max_detections_per_minute = static_cast<double>(r.max_detections_per_day) / 1440.0;
    return r;
}

SustainabilityReport sustainable_rate(const HarvestScenario& scenario, double detection_energy_j,
                                      const SourceCatalog& catalog) {
    return sustainable_rate(daily_intake(scenario, catalog), detection_energy_j);
}

BatteryState BatteryState::from_mah(double mah, double nominal_volts, double state_of_charge) {
    if (!(mah > 0.0) || !(nominal_volts > 0.0) || !(state_of_charge >= 0.0 && state_of_charge <= 1.0))
        throw ConfigError("battery needs positive capacity and voltage and a state of charge in [0, 1]");
    BatteryState b;
    b.capacity_j = mah * 3.6 * nominal_volts;
    b.charge_j = b.capacity_j * state_of_charge;
    return b;
}

BatteryState BatteryState::lipo_120mah(double state_of_charge) { return from_mah(120.0, 3.7, state_of_charge); }

SocResult simulate_soc(const HarvestScenario& scenario, BatteryState battery, const SocOptions& options,
                       const SourceCatalog& catalog) {
    validate(scenario, catalog);
    require_full_day(scenario);
    if (options.days == 0)
        throw ConfigError("simulation needs at least one day");
    if (!(options.detections_per_minute >= 0.0) || !(options.detection_energy_j >= 0.0))
        throw ConfigError("detection rate and energy must be non-negative");
    if (!(options.step_s > 0.0))
        throw ConfigError("step must be positive");
    if (!(battery.capacity_j > 0.0) || battery.charge_j < 0.0 || battery.charge_j > battery.capacity_j)
        throw ConfigError("battery charge must lie in [0, capacity]");

    const double load_w = options.detections_per_minute * options.detection_energy_j / 60.0;
    std::vector<double> seg_power;
    for (const auto& seg : scenario.schedule)
        seg_power.push_back(segment_power(seg, catalog));

    SocResult r;
    r.initial_charge_j = battery.charge_j;
    r.min_charge_j = r.max_charge_j = battery.charge_j;
    if (options.record_timeline) {
        const auto steps = static_cast<std::size_t>(std::ceil(kSecondsPerDay / options.step_s)) * options.days;
        r.t_s.reserve(steps + scenario.schedule.size() * options.days);
        r.charge_j.reserve(r.t_s.capacity());
    }

    CompensatedSum intake, load, overflow, shortfall;
    double charge = battery.charge_j;
    double t = 0.0;
    for (std::size_t day = 0; day < options.days; ++day) {
        const double day_start = static_cast<double>(day) * kSecondsPerDay;
        double seg_start = 0.0;
        for (std::size_t s = 0; s < scenario.schedule.size(); ++s) {
            const double seg_len = scenario.schedule[s].duration_s;
            // whole steps from the segment start; the last step may be short
            const auto n_steps = static_cast<std::size_t>(std::ceil(seg_len / options.step_s - 1e-9));
            for (std::size_t k = 0; k < n_steps; ++k) {
                const double dt = std::min(options.step_s, seg_len - static_cast<double>(k) * options.step_s);
                const double in = seg_power[s] * dt;
                const double out = load_w * dt;
                intake.add(in);
                load.add(out);
                const double target = charge + (in - out);
                double next = target;
                if (target > battery.capacity_j) {
                    next = battery.capacity_j;
                } else if (target < 0.0) {
                    next = 0.0;
                    if (out > 0.0) {
                        r.brownout = true;
                        if (!r.first_brownout_s)
                            r.first_brownout_s = day_start + seg_start + static_cast<double>(k) * options.step_s + dt;
                    }
                }
                // Whatever the clamp removed (or added back) is booked exactly:
                // (in - out) - (next - charge) is the clamp loss of this step.
                const double clamp = (in - out) - (next - charge);
                if (clamp > 0.0)
                    overflow.add(clamp);
                else if (clamp < 0.0)
                    shortfall.add(-clamp);
                charge = next;
                r.min_charge_j = std::min(r.min_charge_j, charge);
                r.max_charge_j = std::max(r.max_charge_j, charge);
                if (options.record_timeline) {
                    t = day_start + seg_start + static_cast<double>(k) * options.step_s + dt;
                    r.t_s.push_back(t);
                    r.charge_j.push_back(charge);
                }
            }
            seg_start += seg_len;
        }
        r.end_of_day_charge_j.push_back(charge);
    }

    r.final_charge_j = charge;
    r.total_intake_j = intake.value();
    r.total_load_j = load.value();
    r.overflow_j = overflow.value();
    r.shortfall_j = shortfall.value();
    return r;
}

}  // namespace wristml::harvest
