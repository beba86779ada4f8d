#pragma once

// Calibrated cycle / time / energy model of the embedded execution targets.
//
// Each platform is characterised by two measured classifications (a small
// and a large MLP). Cycles are interpolated linearly in the weight count,
// and energy follows from the runtime and a per-platform active power that
// is derived from the same measurements.

#include "wristml/network.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wristml::perf {

struct CalibrationPoint {
    std::uint64_t cycles = 0;
    double energy_uj = 0.0;
};

struct PlatformCalibration {
    std::string name;
    double clock_hz = 0.0;
    CalibrationPoint network_a;
    CalibrationPoint network_b;
};

enum class NetworkId { a, b };

std::string_view network_label(NetworkId id);

struct CalibrationTable {
    std::size_t weights_a = 3003;
    std::size_t weights_b = 81032;
    std::vector<PlatformCalibration> platforms;

    // Throws ConfigError for unknown names.
    const PlatformCalibration& platform(std::string_view name) const;
    const CalibrationPoint& point(std::string_view name, NetworkId id) const;
    std::vector<std::string> platform_names() const;
};

// Measured cycles and energies of the four reference targets: Cortex-M4F
// at 64 MHz, and the IBEX fabric controller, one RI5CY core and the
// 8-core RI5CY cluster at 100 MHz.
CalibrationTable builtin_calibration();

// Float vs fixed-point cycle counts of the small network on the FPU target.
inline constexpr std::uint64_t kFloatCyclesNetworkA = 38478;
inline constexpr std::uint64_t kFixedCyclesNetworkA = 30210;
double fixed_vs_float_speedup();

struct CycleModel {
    double alpha = 0.0;  // cycles per weight
    double delta = 0.0;  // fixed overhead, may be negative

    // max(0, round(alpha * weights + delta))
    std::uint64_t predict(std::size_t weights) const;
};

// Two-point line through both calibration points of every platform.
// Throws CalibrationError when the two networks have equal weight counts.
std::map<std::string, CycleModel, std::less<>> fit_cycle_model(const CalibrationTable& table);

struct PowerEstimate {
    double from_a_w = 0.0;
    double from_b_w = 0.0;
    double mean_w = 0.0;
    // |from_a - from_b| / mean
    double disagreement = 0.0;
    // Disagreement left after allowing each energy value its print
    // resolution; equals `disagreement` when the resolution is zero.
    double unexplained_disagreement = 0.0;
};

inline constexpr double kPowerConsistencyTolerance = 0.03;

// P = E / (cycles / clock) for each network. Throws CalibrationError when a
// platform's unexplained_disagreement exceeds tolerance.
std::map<std::string, PowerEstimate, std::less<>> derive_power(const CalibrationTable& table,
                                                                double tolerance = kPowerConsistencyTolerance,
                                                                double energy_resolution_uj = 0.0);

struct PlatformProfile {
    std::string name;
    double clock_hz = 0.0;
    double active_power_w = 0.0;  // mean of the two calibration-derived powers
    CycleModel cycles;
    PowerEstimate power;
    std::size_t weights_a = 0;
    std::size_t weights_b = 0;

    // Power used for energy predictions: linear in the weight count between
    // the two calibration powers, held constant outside that bracket. This
    // makes predictions exact at both calibration points.
    double power_at(std::size_t weights) const;
};

struct Prediction {
    std::uint64_t cycles = 0;
    double seconds = 0.0;
    double joules = 0.0;
};

struct DetectionEnergyModel {
    double ecg_power_w = 171e-6;
    double gsr_power_w = 30e-6;
    double acquisition_s = 3.0;
    // Stated acquisition cost. Slightly below (ecg + gsr) * duration = 603 uJ.
    double acquisition_energy_j = 600e-6;
    double feature_time_s = 50e-6;
    double feature_power_w = 20e-3;
    double feature_energy_j = 1e-6;
};

struct DetectionEnergy {
    double acquisition_j = 0.0;
    double feature_j = 0.0;
    double classify_j = 0.0;
    double total_j = 0.0;
};

class PerfModel {
public:
    // Fits every platform of the table. The table's print resolution
    // (energy_resolution_uj) is forwarded to derive_power.
    explicit PerfModel(CalibrationTable table, DetectionEnergyModel detection = {},
                       double power_tolerance = kPowerConsistencyTolerance, double energy_resolution_uj = 0.0);

    // The reference targets. Energies are printed to 0.1 uJ in the source
    // measurements, which is the resolution used for the consistency check.
    static PerfModel builtin();

    const CalibrationTable& calibration() const noexcept { return table_; }
    const DetectionEnergyModel& detection_model() const noexcept { return detection_; }
    const std::vector<PlatformProfile>& profiles() const noexcept { return profiles_; }

    // Throws ConfigError for unknown names.
    const PlatformProfile& profile(std::string_view name) const;

    Prediction predict(std::size_t weights, std::string_view platform) const;
    Prediction predict(const NetworkModel& net, std::string_view platform) const;
    Prediction predict(NetworkId id, std::string_view platform) const;

    // Cycle ratio baseline / target for one of the calibration networks.
    double speedup(std::string_view baseline, std::string_view target, NetworkId id) const;

    // Acquisition + feature extraction + one classification of the small network.
    DetectionEnergy detection_energy(std::string_view platform) const;

private:
    CalibrationTable table_;
    DetectionEnergyModel detection_;
    std::vector<PlatformProfile> profiles_;
};

// Human-readable profile document (YAML); schema in docs/platforms.yaml.
// Throws ConfigError on schema violations.
struct ProfileDocument {
    CalibrationTable table;
    DetectionEnergyModel detection;
    double power_tolerance = kPowerConsistencyTolerance;
    double energy_resolution_uj = 0.0;

    PerfModel model() const { return PerfModel(table, detection, power_tolerance, energy_resolution_uj); }
};

ProfileDocument load_profile_document(std::string_view yaml_text);
std::string save_profile_document(const ProfileDocument& doc);
ProfileDocument builtin_profile_document();

}  // namespace wristml::perf
