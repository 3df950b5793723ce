#pragma once

#include <cstdint>
#include <string>

namespace heatgen {

// Engine configuration, loadable from a flat "key = value" text file.
// Blank lines and lines starting with '#' are ignored. Unknown keys are an
// error so typos never pass silently.
struct EngineConfig {
    // Thermal parameter estimation.
    double c_spec = 0.05;          // kWh/(K*m2), thermal capacity per floor area
    double safety_factor = 1.2;    // heating system dimensioning margin
    double gain_active_kw = 0.10;  // internal gains per dwelling while active
    double gain_inactive_kw = 0.02;

    // Area estimation from footprint x floors.
    double usable_fraction = 0.8;

    // Reference day window [start, end) used for conductance calibration.
    int day_window_start = 7;
    int day_window_end = 23;

    // Nominal setpoints and the spread of the per-building samples.
    double t_set_day_c = 21.0;
    double t_set_night_c = 16.0;
    double setpoint_stddev_c = 2.0;
    double t_set_day_min_c = 17.0;
    double t_set_day_max_c = 26.0;
    double t_set_night_min_c = 10.0;

    // Solar gains (off by default; requires a ghi column in the weather file).
    bool solar_enabled = false;
    double solar_g_factor = 0.6;
    double solar_aperture_fraction = 0.0;  // aperture m2 per m2 residential area

    // Building class derivation thresholds.
    int class_ab_min_dwellings = 13;  // strictly more than 12 dwellings
    int class_ab_min_floors = 5;
    int class_th_dwellings = 2;       // this many dwellings is always TH
    int class_th_max_floors = 2;
    int class_th_max_dwellings = 4;

    // Fallback archetype weighting: "uniform" or "dataset".
    std::string fallback_weighting = "uniform";

    // One occupancy chain per building (default) or one per dwelling with the
    // building considered active when any dwelling is.
    bool per_dwelling_occupancy = false;

    // Simulation run control.
    std::uint64_t global_seed = 0;
    bool global_seed_set = false;
    double max_failure_fraction = 0.10;

    // Validation statistics.
    double heating_season_temp_c = 15.0;
    double peak_prominence_fraction = 0.05;

    static EngineConfig from_file(const std::string& path);

    // Applies one key/value pair; throws InputError on unknown key or bad value.
    void apply(const std::string& key, const std::string& value, std::size_t line_no);

    // Validates cross-field constraints; throws InputError on violation.
    void validate() const;

    // Canonical "key = value" snapshot (sorted keys), used in run manifests.
    std::string snapshot() const;
};

}  // namespace heatgen
