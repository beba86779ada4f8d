#pragma once

// Dual-source (solar + thermoelectric) energy budget: daily intake, the
// self-sustainable detection rate, and a battery state-of-charge timeline.
//
// Source powers are measured intake into the battery, so converter losses
// and the device's quiescent draw are already accounted for.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wristml::harvest {

enum class SourceKind { solar, teg };

std::string_view source_name(SourceKind kind);

struct SourceCondition {
    std::string label;
    double power_w = 0.0;
};

struct SourceModel {
    SourceKind kind = SourceKind::solar;
    std::vector<SourceCondition> conditions;

    // Throws ConfigError for unknown labels.
    double power(std::string_view label) const;
};

// Solar: outdoor 30 klx 24.711 mW, indoor 700 lx 0.9 mW.
SourceModel builtin_solar();
// Wrist TEG: 24.0 uW (22 C room, 32 C skin, still air), 55.5 uW (15 C / 30 C,
// still air), 155.4 uW (15 C / 30 C, 42 km/h wind).
SourceModel builtin_teg();

inline constexpr std::string_view kSolarIndoor = "indoor_700lx";
inline constexpr std::string_view kSolarOutdoor = "outdoor_30klx";
inline constexpr std::string_view kTegWorstCase = "room22_skin32_still";

struct SourceCatalog {
    SourceModel solar = builtin_solar();
    SourceModel teg = builtin_teg();

    const SourceModel& source(SourceKind kind) const { return kind == SourceKind::solar ? solar : teg; }
};

struct ActiveSource {
    SourceKind kind = SourceKind::solar;
    std::string condition;
};

struct Segment {
    double duration_s = 0.0;
    std::vector<ActiveSource> active;
};

struct HarvestScenario {
    std::string name;
    std::vector<Segment> schedule;

    double duration_s() const;
};

inline constexpr double kSecondsPerDay = 86400.0;

// Throws ConfigError on non-positive durations or unknown conditions.
void validate(const HarvestScenario& scenario, const SourceCatalog& catalog);

double segment_power(const Segment& segment, const SourceCatalog& catalog);

// Joules harvested over the schedule, which must cover exactly 24 h
// (ConfigError otherwise).
double daily_intake(const HarvestScenario& scenario, const SourceCatalog& catalog = {});

// 6 h of indoor light plus the worst-case TEG condition for teg_hours
// (24 h by default; 23 h is the other reading of the daily figure).
HarvestScenario indoor_day(double teg_hours = 24.0);
// One hour of direct sun, nothing else.
HarvestScenario outdoor_sun_1h();

std::vector<std::string> builtin_scenario_names();
// Throws ConfigError listing the available names.
HarvestScenario builtin_scenario(std::string_view name);

// Human-readable schedule document (YAML). Throws ConfigError.
HarvestScenario load_scenario(std::string_view yaml_text, const SourceCatalog& catalog = {});
std::string save_scenario(const HarvestScenario& scenario);

struct SustainabilityReport {
    double daily_intake_j = 0.0;
    double detection_energy_j = 0.0;
    std::uint64_t max_detections_per_day = 0;  // floor(intake / detection energy)
    double max_detections_per_minute = 0.0;    // per_day / 1440
};

// Throws ConfigError when detection_energy_j <= 0.
SustainabilityReport sustainable_rate(double daily_intake_j, double detection_energy_j);
SustainabilityReport sustainable_rate(const HarvestScenario& scenario, double detection_energy_j,
                                      const SourceCatalog& catalog = {});

struct BatteryState {
    double capacity_j = 0.0;
    double charge_j = 0.0;

    // 120 mAh at 3.7 V nominal = 1598.4 J.
    static BatteryState lipo_120mah(double state_of_charge = 1.0);
    static BatteryState from_mah(double mah, double nominal_volts, double state_of_charge);
};

struct SocOptions {
    std::size_t days = 1;
    double detections_per_minute = 0.0;
    double detection_energy_j = 0.0;
    double step_s = 1.0;
    bool record_timeline = true;
};

struct SocResult {
    std::vector<double> t_s;       // end of each step
    std::vector<double> charge_j;  // charge at t_s
    std::vector<double> end_of_day_charge_j;

    double initial_charge_j = 0.0;
    double final_charge_j = 0.0;
    double min_charge_j = 0.0;
    double max_charge_j = 0.0;

    double total_intake_j = 0.0;
    double total_load_j = 0.0;   // energy demanded by the detection load
    double overflow_j = 0.0;     // harvest discarded at full charge
    double shortfall_j = 0.0;    // load not served at zero charge
    double clamp_losses_j() const { return overflow_j - shortfall_j; }

    bool brownout = false;
    std::optional<double> first_brownout_s;
};

// Repeats the 24 h schedule for options.days days. The detection load is
// drawn as an average power (rate * energy / 60 s). Each step:
// charge' = clamp(charge + (intake - load) * dt, 0, capacity).
SocResult simulate_soc(const HarvestScenario& scenario, BatteryState battery, const SocOptions& options,
                       const SourceCatalog& catalog = {});

}  // namespace wristml::harvest
