#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "heatgen/archetype.hpp"
#include "heatgen/calendar.hpp"
#include "heatgen/config.hpp"
#include "heatgen/diagnostics.hpp"
#include "heatgen/ingest.hpp"
#include "heatgen/occupancy.hpp"
#include "heatgen/thermal.hpp"

namespace heatgen {

// Seed derivation shared by every entry point. All randomness flows from one
// global seed; per-building streams are keyed by a stable hash of the id so
// results do not depend on dataset order.
std::uint64_t building_seed(std::uint64_t run_seed, std::string_view building_id);
std::uint64_t occupancy_seed(std::uint64_t run_seed, std::string_view building_id);
std::uint64_t setpoint_seed(std::uint64_t global_seed, std::string_view building_id);
std::uint64_t repetition_seed(std::uint64_t global_seed, int repetition);

struct StockBuilding {
    BuildingRecord record;
    BuildingEnergy energy;
    ThermalParams params;  // calibrated against energy.annual_kwh
};

// A fully classified and calibrated building stock, sorted by building id.
struct BuildingStock {
    std::vector<StockBuilding> buildings;
    WeatherSeries weather;
    Calendar calendar;
    TransitionMatrixSet matrices;
    EngineConfig cfg;
    SimConfig sim;

    std::size_t size() const { return buildings.size(); }
    double total_residential_area() const;
};

struct StockCounts {
    std::size_t residential = 0;
    std::size_t failed = 0;  // classification or calibration failures
};

// classify -> calibrate -> sample setpoints. Buildings whose calibration
// fails are excluded with one diagnostic each; the run carries on.
BuildingStock prepare_stock(std::vector<BuildingRecord> buildings, ArchetypeTable& table,
                            TransitionMatrixSet matrices, WeatherSeries weather,
                            const EngineConfig& cfg, std::size_t horizon,
                            DiagnosticLog& diagnostics, StockCounts& counts);

// Calibrated thermal parameters for one building and annual demand.
ThermalParams calibrate_params(const BuildingRecord& record, double annual_kwh,
                               const WeatherSeries& weather,
                               std::span<const double> reference_schedule,
                               const EngineConfig& cfg, std::uint64_t global_seed);

// Occupancy profile for one stock building under the given run seed.
OccupancyProfile stock_occupancy(const BuildingStock& stock, const StockBuilding& building,
                                 std::uint64_t run_seed);

// Simulates every building of the stock (ascending id order). `sink`, when
// set, receives each result in id order regardless of the job count;
// `aggregate_micro_kw`, when set, accumulates the fixed-point aggregate.
// Per-building params can be overridden (e.g. retrofitted) via `params_of`.
struct SimulateOptions {
    std::uint64_t run_seed = 0;
    unsigned jobs = 1;
    std::function<const ThermalParams*(std::size_t)> params_of;  // optional override
};

void simulate_stock(const BuildingStock& stock, const SimulateOptions& options,
                    const std::function<void(std::size_t, const HeatDemandSeries&)>& sink,
                    std::vector<std::int64_t>* aggregate_micro_kw);

}  // namespace heatgen
