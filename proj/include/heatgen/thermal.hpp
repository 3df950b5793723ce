#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "heatgen/calendar.hpp"
#include "heatgen/config.hpp"
#include "heatgen/ingest.hpp"
#include "heatgen/occupancy.hpp"
#include "heatgen/rng.hpp"

namespace heatgen {

// Lumped thermal parameters of one building.
struct ThermalParams {
    std::string building_id;
    double conductance_kw_k = 0.0;  // G, transmission + ventilation
    double capacity_kwh_k = 0.0;    // k, effective thermal mass
    double q_max_kw = 0.0;          // heating system limit
    double t_set_day_c = 21.0;      // sampled daytime setpoint
    double t_set_night_c = 16.0;    // sampled nighttime setpoint
    double gain_active_kw = 0.10;   // internal gains per dwelling
    double gain_inactive_kw = 0.02;
    int n_dwellings = 1;
    double solar_aperture_m2 = 0.0;  // effective collecting area, 0 = no solar
};

struct SimConfig {
    double dt_hours = 1.0;
    std::size_t horizon = 8760;
    int day_window_start = 7;   // [start, end) counts as daytime
    int day_window_end = 23;
    bool solar_enabled = false;
    double solar_g_factor = 0.6;
    bool keep_indoor_temp = false;
};

struct HeatDemandSeries {
    std::string building_id;
    std::vector<double> heat_kw;   // clipped heating power per hour
    std::vector<double> t_in_c;    // retained only when requested
};

// Nominal deterministic setpoint schedule used for conductance calibration:
// 21 degC inside the day window, 16 degC otherwise. Not the sampled values.
std::vector<double> reference_setpoint_schedule(const SimConfig& cfg, const Calendar& calendar);

// G = AHD / sum over hours with T_set > T_out of (T_set - T_out).
// Units: kWh/a over K*h gives kW/K.
double estimate_conductance(double annual_demand_kwh, const WeatherSeries& weather,
                            std::span<const double> reference_schedule);

// k = c_spec * residential area.
double estimate_capacity(double residential_area_m2, double c_spec);

// Design temperature: 1st percentile of hourly outdoor temperature
// (nearest-rank on the sorted series).
double design_temperature(const WeatherSeries& weather);

// q_max = safety * G * (t_set_day - T_design).
double max_heating_power(double conductance_kw_k, const WeatherSeries& weather,
                         double t_set_day_c, double safety_factor);

// Draws (day, night) setpoints from the building's stream: day ~ N(21, 2)
// clamped to [17, 26], night ~ N(16, 2) clamped to [10, day - 1].
std::pair<double, double> sample_setpoints(Rng& rng, const EngineConfig& cfg);

// One model hour, factored out so property tests can drive the exact
// arithmetic the simulation uses.
inline double losses_kw(double conductance, double t_in, double t_out) {
    return conductance * (t_in - t_out);
}

inline double demand_kw(double losses, double capacity, double t_set, double t_in, double dt) {
    return losses + capacity * (t_set - t_in) / dt;
}

inline double clip_heating(double demand, double q_max) {
    if (demand < 0.0) {
        return 0.0;
    }
    return std::min(demand, q_max);
}

inline double next_indoor_temp(double t_in_prev, double heating_prev, double gains_prev,
                               double solar_prev, double losses_prev, double capacity,
                               double dt) {
    return t_in_prev + dt * (heating_prev + gains_prev + solar_prev - losses_prev) / capacity;
}

// Quasi-static hourly simulation. Initial values: heating(0) = 0 and
// T_in(0) = T_set(0); afterwards each hour updates the indoor temperature
// from the previous hour's flows, then computes losses, demand and the
// clipped heating power.
HeatDemandSeries simulate_building(const ThermalParams& params, const WeatherSeries& weather,
                                   const OccupancyProfile& occupancy, const SimConfig& cfg);

}  // namespace heatgen
