#include "heatgen/thermal.hpp"

#include <cmath>

#include "heatgen/csv.hpp"
#include "heatgen/errors.hpp"

namespace heatgen {

std::vector<double> reference_setpoint_schedule(const SimConfig& cfg, const Calendar& calendar) {
    std::vector<double> schedule(calendar.size());
    for (std::size_t t = 0; t < calendar.size(); ++t) {
        const int h = calendar.hour_of_day(t);
        schedule[t] = (h >= cfg.day_window_start && h < cfg.day_window_end) ? 21.0 : 16.0;
    }
    return schedule;
}

double estimate_conductance(double annual_demand_kwh, const WeatherSeries& weather,
                            std::span<const double> reference_schedule) {
    if (!(annual_demand_kwh > 0.0)) {
        throw InputError("estimate_conductance: annual demand must be > 0");
    }
    if (reference_schedule.size() != weather.size()) {
        throw InputError("estimate_conductance: schedule/weather length mismatch");
    }
    double degree_hours = 0.0;
    for (std::size_t t = 0; t < weather.size(); ++t) {
        const double diff = reference_schedule[t] - weather.temp_c[t];
        if (diff > 0.0) {
            degree_hours += diff;
        }
    }
    if (!(degree_hours > 0.0)) {
        throw InputError(
            "estimate_conductance: outdoor temperature never below the setpoint schedule");
    }
    return annual_demand_kwh / degree_hours;
}

double estimate_capacity(double residential_area_m2, double c_spec) {
    if (!(c_spec > 0.0)) {
        throw InputError("estimate_capacity: c_spec must be > 0");
    }
    if (!(residential_area_m2 > 0.0)) {
        throw InputError("estimate_capacity: residential area must be > 0");
    }
    return c_spec * residential_area_m2;
}

double design_temperature(const WeatherSeries& weather) {
    if (weather.size() == 0) {
        throw InputError("design_temperature: empty weather series");
    }
    std::vector<double> sorted(weather.temp_c);
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    std::size_t rank = static_cast<std::size_t>(std::ceil(0.01 * n));
    if (rank == 0) {
        rank = 1;
    }
    return sorted[rank - 1];
}

double max_heating_power(double conductance_kw_k, const WeatherSeries& weather,
                         double t_set_day_c, double safety_factor) {
    if (!(conductance_kw_k > 0.0)) {
        throw InputError("max_heating_power: conductance must be > 0");
    }
    const double t_design = design_temperature(weather);
    if (t_set_day_c <= t_design) {
        throw InputError("max_heating_power: design temperature " + format_double(t_design) +
                         " degC is not below the daytime setpoint " + format_double(t_set_day_c));
    }
    return safety_factor * conductance_kw_k * (t_set_day_c - t_design);
}

std::pair<double, double> sample_setpoints(Rng& rng, const EngineConfig& cfg) {
    double day = rng.normal(cfg.t_set_day_c, cfg.setpoint_stddev_c);
    double night = rng.normal(cfg.t_set_night_c, cfg.setpoint_stddev_c);
    day = std::clamp(day, cfg.t_set_day_min_c, cfg.t_set_day_max_c);
    night = std::clamp(night, cfg.t_set_night_min_c, day - 1.0);
    return {day, night};
}

HeatDemandSeries simulate_building(const ThermalParams& params, const WeatherSeries& weather,
                                   const OccupancyProfile& occupancy, const SimConfig& cfg) {
    const std::size_t horizon = cfg.horizon;
    if (horizon == 0) {
        throw InputError("simulate_building: zero horizon");
    }
    if (weather.size() < horizon || occupancy.size() < horizon) {
        throw InputError("simulate_building: building " + params.building_id +
                         ": weather or occupancy shorter than the horizon");
    }
    if (!(params.capacity_kwh_k > 0.0) || !(params.conductance_kw_k > 0.0) ||
        !(params.q_max_kw > 0.0)) {
        throw InputError("simulate_building: building " + params.building_id +
                         ": invalid thermal parameters");
    }
    const bool use_solar = cfg.solar_enabled && params.solar_aperture_m2 > 0.0;
    if (use_solar && !weather.has_ghi()) {
        throw InputError("simulate_building: solar model enabled but the weather series has no "
                         "ghi column");
    }
    const bool per_dwelling = !occupancy.active_dwellings.empty();
    const double dt = cfg.dt_hours;
    const double g = params.conductance_kw_k;
    const double k = params.capacity_kwh_k;
    const double n_dwellings = static_cast<double>(params.n_dwellings);
    const double solar_factor = use_solar ? params.solar_aperture_m2 * cfg.solar_g_factor / 1000.0
                                          : 0.0;  // GHI W/m2 -> kW

    HeatDemandSeries series;
    series.building_id = params.building_id;
    series.heat_kw.resize(horizon);
    if (cfg.keep_indoor_temp) {
        series.t_in_c.resize(horizon);
    }

    const auto gains_at = [&](std::size_t t) {
        if (per_dwelling) {
            const double active = static_cast<double>(occupancy.active_dwellings[t]);
            return params.gain_active_kw * active +
                   params.gain_inactive_kw * (n_dwellings - active);
        }
        return n_dwellings *
               (occupancy.active[t] ? params.gain_active_kw : params.gain_inactive_kw);
    };
    const auto setpoint_at = [&](std::size_t t) {
        return occupancy.active[t] ? params.t_set_day_c : params.t_set_night_c;
    };

    double t_in = setpoint_at(0);
    double heating = 0.0;  // forced initial value
    double losses = losses_kw(g, t_in, weather.temp_c[0]);
    double gains = gains_at(0);
    double solar = use_solar ? solar_factor * weather.ghi_wm2[0] : 0.0;
    series.heat_kw[0] = heating;
    if (cfg.keep_indoor_temp) {
        series.t_in_c[0] = t_in;
    }

    for (std::size_t t = 1; t < horizon; ++t) {
        t_in = next_indoor_temp(t_in, heating, gains, solar, losses, k, dt);
        if (!std::isfinite(t_in)) {
            throw InputError("simulate_building: building " + params.building_id +
                             ": non-finite indoor temperature at hour " + std::to_string(t));
        }
        losses = losses_kw(g, t_in, weather.temp_c[t]);
        const double demand = demand_kw(losses, k, setpoint_at(t), t_in, dt);
        heating = clip_heating(demand, params.q_max_kw);
        gains = gains_at(t);
        solar = use_solar ? solar_factor * weather.ghi_wm2[t] : 0.0;
        series.heat_kw[t] = heating;
        if (cfg.keep_indoor_temp) {
            series.t_in_c[t] = t_in;
        }
    }
    return series;
}

}  // namespace heatgen
