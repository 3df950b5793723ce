#include "heatgen/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "heatgen/errors.hpp"
#include "heatgen/parallel.hpp"
#include "heatgen/scenario.hpp"

namespace heatgen {

std::uint64_t building_seed(std::uint64_t run_seed, std::string_view building_id) {
    return combine_seeds(run_seed, fnv1a64(building_id));
}

std::uint64_t occupancy_seed(std::uint64_t run_seed, std::string_view building_id) {
    return combine_seeds(building_seed(run_seed, building_id), kSeedTagOccupancy);
}

std::uint64_t setpoint_seed(std::uint64_t global_seed, std::string_view building_id) {
    return combine_seeds(building_seed(global_seed, building_id), kSeedTagSetpoints);
}

std::uint64_t repetition_seed(std::uint64_t global_seed, int repetition) {
    return combine_seeds(global_seed,
                         combine_seeds(kSeedTagRepetition, static_cast<std::uint64_t>(repetition)));
}

double BuildingStock::total_residential_area() const {
    double total = 0.0;
    for (const auto& b : buildings) {
        total += b.record.residential_area_m2.value_or(0.0);
    }
    return total;
}

ThermalParams calibrate_params(const BuildingRecord& record, double annual_kwh,
                               const WeatherSeries& weather,
                               std::span<const double> reference_schedule,
                               const EngineConfig& cfg, std::uint64_t global_seed) {
    ThermalParams params;
    params.building_id = record.id;
    params.conductance_kw_k = estimate_conductance(annual_kwh, weather, reference_schedule);
    params.capacity_kwh_k = estimate_capacity(*record.residential_area_m2, cfg.c_spec);

    Rng rng(setpoint_seed(global_seed, record.id));
    const auto [day, night] = sample_setpoints(rng, cfg);
    params.t_set_day_c = day;
    params.t_set_night_c = night;
    params.q_max_kw =
        max_heating_power(params.conductance_kw_k, weather, day, cfg.safety_factor);
    params.gain_active_kw = cfg.gain_active_kw;
    params.gain_inactive_kw = cfg.gain_inactive_kw;
    params.n_dwellings = record.n_dwellings;
    params.solar_aperture_m2 =
        cfg.solar_enabled ? cfg.solar_aperture_fraction * *record.residential_area_m2 : 0.0;
    return params;
}

BuildingStock prepare_stock(std::vector<BuildingRecord> buildings, ArchetypeTable& table,
                            TransitionMatrixSet matrices, WeatherSeries weather,
                            const EngineConfig& cfg, std::size_t horizon,
                            DiagnosticLog& diagnostics, StockCounts& counts) {
    if (weather.size() < horizon) {
        throw InputError("weather series has " + std::to_string(weather.size()) +
                         " hours but the simulation horizon is " + std::to_string(horizon));
    }

    BuildingStock stock;
    stock.cfg = cfg;
    stock.matrices = std::move(matrices);
    stock.weather = std::move(weather);
    stock.calendar = Calendar::from_start(stock.weather.start, horizon);
    stock.sim.dt_hours = 1.0;
    stock.sim.horizon = horizon;
    stock.sim.day_window_start = cfg.day_window_start;
    stock.sim.day_window_end = cfg.day_window_end;
    stock.sim.solar_enabled = cfg.solar_enabled;
    stock.sim.solar_g_factor = cfg.solar_g_factor;

    std::sort(buildings.begin(), buildings.end(),
              [](const BuildingRecord& a, const BuildingRecord& b) { return a.id < b.id; });
    apply_dataset_weights(buildings, table, cfg);

    // Calibration uses the full weather year and the nominal reference
    // schedule, independent of the sampled occupancy.
    const Calendar weather_calendar = stock.weather.make_calendar();
    const std::vector<double> reference =
        reference_setpoint_schedule(stock.sim, weather_calendar);

    for (auto& record : buildings) {
        if (record.usage != Usage::residential) {
            diagnostics.add(Severity::info, record.id, "skipped: non-residential");
            continue;
        }
        ++counts.residential;
        try {
            const Classified classified = classify(record, table, cfg);
            StockBuilding sb;
            sb.energy = annual_demand(record, classified);
            sb.params = calibrate_params(record, sb.energy.annual_kwh, stock.weather, reference,
                                         cfg, cfg.global_seed);
            sb.record = std::move(record);
            stock.buildings.push_back(std::move(sb));
        } catch (const InputError& e) {
            ++counts.failed;
            diagnostics.add(Severity::error, record.id,
                            std::string("excluded from simulation: ") + e.what());
        }
    }
    return stock;
}

OccupancyProfile stock_occupancy(const BuildingStock& stock, const StockBuilding& building,
                                 std::uint64_t run_seed) {
    const std::uint64_t seed = occupancy_seed(run_seed, building.record.id);
    if (stock.cfg.per_dwelling_occupancy) {
        OccupancyProfile profile = generate_profile_per_dwelling(
            stock.matrices, stock.calendar, seed, building.record.n_dwellings);
        profile.building_id = building.record.id;
        return profile;
    }
    OccupancyProfile profile =
        generate_profile(stock.matrices, stock.calendar, seed,
                         default_initial_active(stock.calendar.hour_of_day(0)));
    profile.building_id = building.record.id;
    return profile;
}

void simulate_stock(const BuildingStock& stock, const SimulateOptions& options,
                    const std::function<void(std::size_t, const HeatDemandSeries&)>& sink,
                    std::vector<std::int64_t>* aggregate_micro_kw) {
    const std::size_t horizon = stock.sim.horizon;
    if (aggregate_micro_kw) {
        aggregate_micro_kw->assign(horizon, 0);
    }
    const auto simulate_one = [&](std::size_t index) {
        const StockBuilding& building = stock.buildings[index];
        const ThermalParams* params = &building.params;
        if (options.params_of) {
            if (const ThermalParams* override_params = options.params_of(index)) {
                params = override_params;
            }
        }
        const OccupancyProfile occ = stock_occupancy(stock, building, options.run_seed);
        return simulate_building(*params, stock.weather, occ, stock.sim);
    };
    const auto consume = [&](std::size_t index, HeatDemandSeries&& series) {
        if (aggregate_micro_kw) {
            auto& acc = *aggregate_micro_kw;
            for (std::size_t t = 0; t < horizon; ++t) {
                acc[t] += quantize_kw(series.heat_kw[t]);
            }
        }
        if (sink) {
            sink(index, series);
        }
    };
    ordered_parallel<HeatDemandSeries>(stock.buildings.size(), options.jobs,
                                       static_cast<std::size_t>(options.jobs) * 4, simulate_one,
                                       consume);
}

}  // namespace heatgen
