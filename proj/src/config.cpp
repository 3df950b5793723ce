#include "heatgen/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "heatgen/csv.hpp"
#include "heatgen/errors.hpp"

namespace heatgen {
namespace {

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) {
        return {};
    }
    std::size_t end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

bool parse_bool(const std::string& value, std::size_t line_no, const std::string& key) {
    if (value == "true" || value == "on" || value == "1") {
        return true;
    }
    if (value == "false" || value == "off" || value == "0") {
        return false;
    }
    throw InputError("config line " + std::to_string(line_no) + ": key " + key +
                     ": expected a boolean, got '" + value + "'");
}

}  // namespace

EngineConfig EngineConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open config file: " + path);
    }
    EngineConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#') {
            continue;
        }
        const std::size_t eq = trimmed.find('=');
        if (eq == std::string::npos) {
            throw InputError("config line " + std::to_string(line_no) +
                             ": expected 'key = value', got '" + trimmed + "'");
        }
        cfg.apply(trim(trimmed.substr(0, eq)), trim(trimmed.substr(eq + 1)), line_no);
    }
    cfg.validate();
    return cfg;
}

void EngineConfig::apply(const std::string& key, const std::string& value, std::size_t line_no) {
    const auto num = [&]() { return parse_double_field(value, line_no, key.c_str()); };
    const auto integer = [&]() { return static_cast<int>(parse_int_field(value, line_no, key.c_str())); };

    if (key == "c_spec") {
        c_spec = num();
    } else if (key == "safety_factor") {
        safety_factor = num();
    } else if (key == "gain_active_kw") {
        gain_active_kw = num();
    } else if (key == "gain_inactive_kw") {
        gain_inactive_kw = num();
    } else if (key == "usable_fraction") {
        usable_fraction = num();
    } else if (key == "day_window") {
        // "7-23" meaning [7, 23)
        const std::size_t dash = value.find('-');
        if (dash == std::string::npos) {
            throw InputError("config line " + std::to_string(line_no) +
                             ": day_window expects 'start-end', got '" + value + "'");
        }
        day_window_start = static_cast<int>(
            parse_int_field(value.substr(0, dash), line_no, "day_window"));
        day_window_end = static_cast<int>(
            parse_int_field(value.substr(dash + 1), line_no, "day_window"));
    } else if (key == "global_seed") {
        std::uint64_t seed = 0;
        const auto result = std::from_chars(value.data(), value.data() + value.size(), seed);
        if (result.ec != std::errc() || result.ptr != value.data() + value.size()) {
            throw InputError("config line " + std::to_string(line_no) +
                             ": global_seed expects an unsigned integer");
        }
        global_seed = seed;
        global_seed_set = true;
    } else if (key == "solar.enabled") {
        solar_enabled = parse_bool(value, line_no, key);
    } else if (key == "solar.g_factor") {
        solar_g_factor = num();
    } else if (key == "solar.aperture_fraction") {
        solar_aperture_fraction = num();
    } else if (key == "t_set_day_c") {
        t_set_day_c = num();
    } else if (key == "t_set_night_c") {
        t_set_night_c = num();
    } else if (key == "setpoint_stddev_c") {
        setpoint_stddev_c = num();
    } else if (key == "class.ab_min_dwellings") {
        class_ab_min_dwellings = integer();
    } else if (key == "class.ab_min_floors") {
        class_ab_min_floors = integer();
    } else if (key == "class.th_dwellings") {
        class_th_dwellings = integer();
    } else if (key == "class.th_max_floors") {
        class_th_max_floors = integer();
    } else if (key == "class.th_max_dwellings") {
        class_th_max_dwellings = integer();
    } else if (key == "fallback_weighting") {
        if (value != "uniform" && value != "dataset") {
            throw InputError("config line " + std::to_string(line_no) +
                             ": fallback_weighting must be 'uniform' or 'dataset'");
        }
        fallback_weighting = value;
    } else if (key == "occupancy.per_dwelling") {
        per_dwelling_occupancy = parse_bool(value, line_no, key);
    } else if (key == "max_failure_fraction") {
        max_failure_fraction = num();
    } else if (key == "heating_season_temp_c") {
        heating_season_temp_c = num();
    } else if (key == "peak_prominence_fraction") {
        peak_prominence_fraction = num();
    } else {
        throw InputError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
}

void EngineConfig::validate() const {
    if (!(c_spec > 0.0)) {
        throw InputError("config: c_spec must be > 0");
    }
    if (!(safety_factor > 0.0)) {
        throw InputError("config: safety_factor must be > 0");
    }
    if (!(usable_fraction > 0.0 && usable_fraction <= 1.0)) {
        throw InputError("config: usable_fraction must be in (0, 1]");
    }
    if (day_window_start < 0 || day_window_start > 23 || day_window_end < 1 ||
        day_window_end > 24 || day_window_start >= day_window_end) {
        throw InputError("config: day_window must satisfy 0 <= start < end <= 24");
    }
    if (!(t_set_night_c < t_set_day_c)) {
        throw InputError("config: t_set_night_c must be below t_set_day_c");
    }
    if (!(setpoint_stddev_c >= 0.0)) {
        throw InputError("config: setpoint_stddev_c must be >= 0");
    }
    if (gain_active_kw < 0.0 || gain_inactive_kw < 0.0) {
        throw InputError("config: internal gains must be >= 0");
    }
    if (!(max_failure_fraction >= 0.0 && max_failure_fraction <= 1.0)) {
        throw InputError("config: max_failure_fraction must be in [0, 1]");
    }
    if (class_ab_min_dwellings < 2 || class_ab_min_floors < 1 || class_th_dwellings < 2 ||
        class_th_max_floors < 1 || class_th_max_dwellings < class_th_dwellings) {
        throw InputError("config: inconsistent building class thresholds");
    }
    if (solar_enabled && !(solar_g_factor > 0.0 && solar_g_factor <= 1.0)) {
        throw InputError("config: solar.g_factor must be in (0, 1] when solar is enabled");
    }
}

std::string EngineConfig::snapshot() const {
    std::ostringstream out;
    out << "c_spec = " << format_double(c_spec) << '\n'
        << "class.ab_min_dwellings = " << class_ab_min_dwellings << '\n'
        << "class.ab_min_floors = " << class_ab_min_floors << '\n'
        << "class.th_dwellings = " << class_th_dwellings << '\n'
        << "class.th_max_dwellings = " << class_th_max_dwellings << '\n'
        << "class.th_max_floors = " << class_th_max_floors << '\n'
        << "day_window = " << day_window_start << '-' << day_window_end << '\n'
        << "fallback_weighting = " << fallback_weighting << '\n'
        << "gain_active_kw = " << format_double(gain_active_kw) << '\n'
        << "gain_inactive_kw = " << format_double(gain_inactive_kw) << '\n'
        << "heating_season_temp_c = " << format_double(heating_season_temp_c) << '\n'
        << "max_failure_fraction = " << format_double(max_failure_fraction) << '\n'
        << "occupancy.per_dwelling = " << (per_dwelling_occupancy ? "true" : "false") << '\n'
        << "peak_prominence_fraction = " << format_double(peak_prominence_fraction) << '\n'
        << "safety_factor = " << format_double(safety_factor) << '\n'
        << "setpoint_stddev_c = " << format_double(setpoint_stddev_c) << '\n'
        << "solar.aperture_fraction = " << format_double(solar_aperture_fraction) << '\n'
        << "solar.enabled = " << (solar_enabled ? "true" : "false") << '\n'
        << "solar.g_factor = " << format_double(solar_g_factor) << '\n'
        << "t_set_day_c = " << format_double(t_set_day_c) << '\n'
        << "t_set_night_c = " << format_double(t_set_night_c) << '\n'
        << "usable_fraction = " << format_double(usable_fraction) << '\n';
    return out.str();
}

}  // namespace heatgen
