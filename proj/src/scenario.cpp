#include "heatgen/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "heatgen/errors.hpp"
#include "heatgen/rng.hpp"

namespace heatgen {

std::int64_t quantize_kw(double kw) {
    return std::llround(kw * static_cast<double>(kMicroPerKw));
}

double micro_to_kw(std::int64_t micro) {
    return static_cast<double>(micro) / static_cast<double>(kMicroPerKw);
}

std::vector<double> AggregateSeries::to_kw() const {
    std::vector<double> values(micro_kw.size());
    for (std::size_t t = 0; t < micro_kw.size(); ++t) {
        values[t] = micro_to_kw(micro_kw[t]);
    }
    return values;
}

double AggregateSeries::annual_kwh() const {
    std::int64_t total = 0;
    for (const std::int64_t v : micro_kw) {
        total += v;
    }
    return micro_to_kw(total);
}

double AggregateSeries::peak_kw() const {
    std::int64_t peak = 0;
    for (const std::int64_t v : micro_kw) {
        peak = std::max(peak, v);
    }
    return micro_to_kw(peak);
}

std::size_t AggregateSeries::peak_hour() const {
    std::size_t best = 0;
    for (std::size_t t = 1; t < micro_kw.size(); ++t) {
        if (micro_kw[t] > micro_kw[best]) {
            best = t;
        }
    }
    return best;
}

AggregateSeries aggregate(std::span<const HeatDemandSeries> series) {
    if (series.empty()) {
        throw EmptyResultError("aggregate: no series");
    }
    const std::size_t horizon = series.front().heat_kw.size();
    std::vector<std::size_t> order(series.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return series[a].building_id < series[b].building_id;
    });

    AggregateSeries agg;
    agg.micro_kw.assign(horizon, 0);
    agg.member_ids.reserve(series.size());
    for (const std::size_t index : order) {
        const HeatDemandSeries& s = series[index];
        if (s.heat_kw.size() != horizon) {
            throw InputError("aggregate: series length mismatch for building " + s.building_id);
        }
        agg.member_ids.push_back(s.building_id);
        for (std::size_t t = 0; t < horizon; ++t) {
            agg.micro_kw[t] += quantize_kw(s.heat_kw[t]);
        }
    }
    return agg;
}

namespace {

double area_of(const BuildingRecord& b) {
    return b.residential_area_m2.value_or(0.0);
}

// Smallest prefix of `order` whose cumulative area reaches
// fraction x total area; result sorted ascending.
std::vector<std::string> take_area_prefix(std::span<const BuildingRecord> buildings,
                                          const std::vector<std::size_t>& order,
                                          double fraction) {
    double total = 0.0;
    for (const auto& b : buildings) {
        total += area_of(b);
    }
    const double target = fraction * total;
    std::vector<std::string> selected;
    if (target <= 0.0) {
        return selected;
    }
    double cumulative = 0.0;
    for (const std::size_t index : order) {
        selected.push_back(buildings[index].id);
        cumulative += area_of(buildings[index]);
        if (cumulative >= target) {
            break;
        }
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

}  // namespace

std::vector<std::string> select_random_by_area(std::span<const BuildingRecord> buildings,
                                               double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw InputError("select_random_by_area: fraction must be in [0, 1]");
    }
    std::vector<std::size_t> order(buildings.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return buildings[a].id < buildings[b].id;
    });
    Rng rng(combine_seeds(seed, kSeedTagSelection));
    shuffle(order, rng);
    return take_area_prefix(buildings, order, fraction);
}

std::vector<std::string> select_worst_by_area(std::span<const BuildingRecord> buildings,
                                              std::span<const BuildingEnergy> energies,
                                              double fraction) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw InputError("select_worst_by_area: fraction must be in [0, 1]");
    }
    if (buildings.size() != energies.size()) {
        throw InputError("select_worst_by_area: buildings/energies size mismatch");
    }
    std::vector<std::size_t> order(buildings.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (energies[a].q_spec != energies[b].q_spec) {
            return energies[a].q_spec > energies[b].q_spec;
        }
        if (area_of(buildings[a]) != area_of(buildings[b])) {
            return area_of(buildings[a]) > area_of(buildings[b]);
        }
        return buildings[a].id < buildings[b].id;
    });
    return take_area_prefix(buildings, order, fraction);
}

const char* strategy_name(Strategy strategy) {
    return strategy == Strategy::random ? "random" : "worst_first";
}

namespace {

double mean_of(const std::vector<double>& values) {
    if (values.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

double sample_std_of(const std::vector<double>& values) {
    if (values.size() < 2) {
        return 0.0;
    }
    const double mean = mean_of(values);
    double ss = 0.0;
    for (const double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace

double ScenarioResult::mean_annual_kwh() const { return mean_of(annual_kwh); }
double ScenarioResult::std_annual_kwh() const { return sample_std_of(annual_kwh); }
double ScenarioResult::mean_peak_kw() const { return mean_of(peak_kw); }
double ScenarioResult::std_peak_kw() const { return sample_std_of(peak_kw); }

ScenarioResult run_scenario(const BuildingStock& stock, Strategy strategy, double fraction,
                            int repetitions, std::uint64_t global_seed, unsigned jobs) {
    if (repetitions < 1) {
        throw InputError("run_scenario: repetitions must be >= 1");
    }
    if (stock.buildings.empty()) {
        throw EmptyResultError("run_scenario: empty building stock");
    }

    ScenarioResult result;
    result.strategy = strategy;
    result.fraction = fraction;
    result.repetitions = repetitions;

    // Baseline with the plain run seeds.
    {
        SimulateOptions options;
        options.run_seed = global_seed;
        options.jobs = jobs;
        std::vector<std::int64_t> agg;
        simulate_stock(stock, options, nullptr, &agg);
        AggregateSeries baseline;
        baseline.micro_kw = std::move(agg);
        result.baseline_annual_kwh = baseline.annual_kwh();
        result.baseline_peak_kw = baseline.peak_kw();
    }

    std::vector<BuildingRecord> record_values;
    std::vector<BuildingEnergy> energy_values;
    record_values.reserve(stock.size());
    energy_values.reserve(stock.size());
    for (const auto& b : stock.buildings) {
        record_values.push_back(b.record);
        energy_values.push_back(b.energy);
    }

    const Calendar weather_calendar = stock.weather.make_calendar();
    const std::vector<double> reference =
        reference_setpoint_schedule(stock.sim, weather_calendar);

    // worst_first selection does not depend on the repetition.
    std::vector<std::string> fixed_selection;
    if (strategy == Strategy::worst_first) {
        fixed_selection = select_worst_by_area(record_values, energy_values, fraction);
    }

    for (int rep = 0; rep < repetitions; ++rep) {
        std::vector<std::string> selection;
        if (strategy == Strategy::random) {
            selection = select_random_by_area(
                record_values, fraction,
                combine_seeds(global_seed,
                              combine_seeds(kSeedTagSelection, static_cast<std::uint64_t>(rep))));
        } else {
            selection = fixed_selection;
        }
        std::unordered_set<std::string_view> selected(selection.begin(), selection.end());

        // Retrofit swaps the annual demand and recalibrates G (and with it
        // q_max); capacity and setpoints stay.
        std::vector<std::optional<ThermalParams>> overrides(stock.size());
        for (std::size_t i = 0; i < stock.size(); ++i) {
            const StockBuilding& b = stock.buildings[i];
            if (!selected.contains(b.record.id)) {
                continue;
            }
            ThermalParams params = b.params;
            params.conductance_kw_k = estimate_conductance(b.energy.annual_retrofit_kwh,
                                                           stock.weather, reference);
            params.q_max_kw = max_heating_power(params.conductance_kw_k, stock.weather,
                                                params.t_set_day_c, stock.cfg.safety_factor);
            overrides[i] = params;
        }

        SimulateOptions options;
        options.run_seed = repetition_seed(global_seed, rep);
        options.jobs = jobs;
        options.params_of = [&overrides](std::size_t i) -> const ThermalParams* {
            return overrides[i] ? &*overrides[i] : nullptr;
        };
        std::vector<std::int64_t> agg;
        simulate_stock(stock, options, nullptr, &agg);
        AggregateSeries rep_agg;
        rep_agg.micro_kw = std::move(agg);
        result.annual_kwh.push_back(rep_agg.annual_kwh());
        result.peak_kw.push_back(rep_agg.peak_kw());
    }
    return result;
}

std::vector<DailyStat> stats_daily(const AggregateSeries& agg, const WeatherSeries& weather,
                                   const Calendar& calendar) {
    const std::size_t horizon = agg.size();
    if (horizon == 0 || horizon % 24 != 0) {
        throw InputError("stats_daily: horizon must be a positive multiple of 24 (got " +
                         std::to_string(horizon) + ")");
    }
    if (weather.size() < horizon || calendar.size() < horizon) {
        throw InputError("stats_daily: weather or calendar shorter than the aggregate");
    }
    std::vector<DailyStat> days;
    days.reserve(horizon / 24);
    for (std::size_t d = 0; d < horizon / 24; ++d) {
        DailyStat stat;
        std::int64_t demand_micro = 0;
        double temp_sum = 0.0;
        for (std::size_t h = 0; h < 24; ++h) {
            const std::size_t t = d * 24 + h;
            demand_micro += agg.micro_kw[t];
            temp_sum += weather.temp_c[t];
        }
        stat.demand_kwh = micro_to_kw(demand_micro);  // kW over 1 h steps -> kWh
        stat.mean_temp_c = temp_sum / 24.0;
        stat.date = calendar.date_of_hour(d * 24);
        stat.day_type = calendar.day_type(d * 24);
        days.push_back(std::move(stat));
    }
    return days;
}

std::array<double, 24> stats_avg_day_if(const AggregateSeries& agg,
                                        const std::function<bool(std::size_t)>& keep_day) {
    const std::size_t horizon = agg.size();
    if (horizon == 0 || horizon % 24 != 0) {
        throw InputError("stats_avg_day: horizon must be a positive multiple of 24");
    }
    std::array<double, 24> sums{};
    std::size_t matched = 0;
    for (std::size_t d = 0; d < horizon / 24; ++d) {
        if (!keep_day(d)) {
            continue;
        }
        ++matched;
        for (std::size_t h = 0; h < 24; ++h) {
            sums[h] += micro_to_kw(agg.micro_kw[d * 24 + h]);
        }
    }
    if (matched == 0) {
        throw EmptyResultError("stats_avg_day: no day matches the filter");
    }
    for (auto& v : sums) {
        v /= static_cast<double>(matched);
    }
    return sums;
}

std::array<double, 24> stats_avg_day(const AggregateSeries& agg, const Calendar& calendar,
                                     const DayFilter& filter) {
    if (calendar.size() < agg.size()) {
        throw InputError("stats_avg_day: calendar shorter than the aggregate");
    }
    return stats_avg_day_if(agg, [&](std::size_t d) {
        const std::size_t t = d * 24;
        if (filter.day_type && calendar.day_type(t) != *filter.day_type) {
            return false;
        }
        if (filter.month) {
            const std::string date = calendar.date_of_hour(t);
            const int month = (date[5] - '0') * 10 + (date[6] - '0');
            if (month != *filter.month) {
                return false;
            }
        }
        return true;
    });
}

std::vector<int> find_local_maxima(std::span<const double> profile,
                                   double min_prominence_fraction) {
    const std::size_t n = profile.size();
    std::vector<int> peaks;
    if (n < 3) {
        return peaks;
    }
    double lo = profile[0];
    double hi = profile[0];
    for (const double v : profile) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double threshold = min_prominence_fraction * (hi - lo);

    for (std::size_t h = 0; h < n; ++h) {
        const bool rises_from_left = h == 0 || profile[h] > profile[h - 1];
        const bool falls_to_right = h + 1 == n || profile[h] > profile[h + 1];
        if (!rises_from_left || !falls_to_right) {
            continue;
        }
        // Lowest point on the way to the nearest higher ground on each side
        // (or the edge); prominence is the drop to the higher of the two.
        double left_base = profile[h];
        for (std::size_t i = h; i-- > 0;) {
            if (profile[i] > profile[h]) {
                break;
            }
            left_base = std::min(left_base, profile[i]);
        }
        double right_base = profile[h];
        for (std::size_t i = h + 1; i < n; ++i) {
            if (profile[i] > profile[h]) {
                break;
            }
            right_base = std::min(right_base, profile[i]);
        }
        const double prominence = profile[h] - std::max(left_base, right_base);
        if (prominence >= threshold && prominence > 0.0) {
            peaks.push_back(static_cast<int>(h));
        }
    }
    return peaks;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InputError("pearson_correlation: need two equally sized samples");
    }
    const auto n = static_cast<double>(x.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        throw InputError("pearson_correlation: zero variance sample");
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace heatgen
