#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heatgen/archetype.hpp"
#include "heatgen/calendar.hpp"
#include "heatgen/ingest.hpp"
#include "heatgen/pipeline.hpp"
#include "heatgen/thermal.hpp"

namespace heatgen {

// Aggregates are accumulated as integer micro-kilowatts. Integer addition is
// associative, so sums are bit-exact, order-independent and additive over
// disjoint partitions, which plain double accumulation cannot guarantee.
inline constexpr std::int64_t kMicroPerKw = 1000000;

std::int64_t quantize_kw(double kw);
double micro_to_kw(std::int64_t micro);

struct AggregateSeries {
    std::vector<std::int64_t> micro_kw;
    std::vector<std::string> member_ids;  // ascending

    std::size_t size() const { return micro_kw.size(); }
    double kw(std::size_t t) const { return micro_to_kw(micro_kw[t]); }
    std::vector<double> to_kw() const;
    double annual_kwh() const;  // hourly series: kW summed over hours
    double peak_kw() const;
    std::size_t peak_hour() const;
};

// Elementwise sum over the series, taken in ascending building-id order.
AggregateSeries aggregate(std::span<const HeatDemandSeries> series);

// Shuffles ids with the seeded stream and takes the smallest prefix whose
// cumulative residential area reaches fraction x total area. Returns the
// selected ids in ascending order.
std::vector<std::string> select_random_by_area(std::span<const BuildingRecord> buildings,
                                               double fraction, std::uint64_t seed);

// Orders buildings by q_spec descending (ties: larger area first, then id
// ascending) and takes the smallest prefix reaching the area target.
// energies[i] must describe buildings[i].
std::vector<std::string> select_worst_by_area(std::span<const BuildingRecord> buildings,
                                              std::span<const BuildingEnergy> energies,
                                              double fraction);

enum class Strategy : std::uint8_t { random = 0, worst_first = 1 };

const char* strategy_name(Strategy strategy);

struct ScenarioResult {
    Strategy strategy = Strategy::random;
    double fraction = 0.0;
    int repetitions = 0;
    std::vector<double> annual_kwh;  // one entry per repetition
    std::vector<double> peak_kw;
    double baseline_annual_kwh = 0.0;
    double baseline_peak_kw = 0.0;

    double mean_annual_kwh() const;
    double std_annual_kwh() const;
    double mean_peak_kw() const;
    double std_peak_kw() const;
};

// Renovation experiment. Per repetition: select buildings (random selection
// reseeded per repetition; worst_first is deterministic), swap their annual
// demand to the retrofit value, recalibrate G and q_max, regenerate occupancy
// with the repetition's seeds and resimulate. The baseline uses the plain run
// seeds, so a zero-fraction scenario differs from the baseline only by
// occupancy noise.
ScenarioResult run_scenario(const BuildingStock& stock, Strategy strategy, double fraction,
                            int repetitions, std::uint64_t global_seed, unsigned jobs);

struct DailyStat {
    std::string date;
    double demand_kwh = 0.0;
    double mean_temp_c = 0.0;
    DayType day_type = DayType::weekday;
};

// 24-hour block sums/means; requires the horizon to be a multiple of 24.
std::vector<DailyStat> stats_daily(const AggregateSeries& agg, const WeatherSeries& weather,
                                   const Calendar& calendar);

// Mean 24-hour profile over the days selected by the filter.
struct DayFilter {
    std::optional<DayType> day_type;
    std::optional<int> month;  // 1..12
};

std::array<double, 24> stats_avg_day(const AggregateSeries& agg, const Calendar& calendar,
                                     const DayFilter& filter);

// Variant with an arbitrary per-day predicate (day index since series start).
std::array<double, 24> stats_avg_day_if(const AggregateSeries& agg,
                                        const std::function<bool(std::size_t)>& keep_day);

// Local maxima of a 24-value profile with topographic prominence of at least
// min_prominence_fraction x (max - min). Returns hours in ascending order.
std::vector<int> find_local_maxima(std::span<const double> profile,
                                   double min_prominence_fraction);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace heatgen
