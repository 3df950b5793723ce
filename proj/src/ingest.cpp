#include "heatgen/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "heatgen/csv.hpp"
#include "heatgen/errors.hpp"

namespace heatgen {
namespace {

constexpr double kEarthRadiusM = 6371008.8;
constexpr double kDegToRad = 0.017453292519943295;

const char* const kBuildingsHeader =
    "id,lat,lon,footprint_area_m2,n_floors,residential_area_m2,n_dwellings,"
    "construction_year,usage,address";

int current_year_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    return utc.tm_year + 1900;
}

std::optional<double> optional_double(const std::string& field, std::size_t line_no,
                                      const char* column) {
    if (field.empty()) {
        return std::nullopt;
    }
    return parse_double_field(field, line_no, column);
}

std::optional<int> optional_int(const std::string& field, std::size_t line_no,
                                const char* column) {
    if (field.empty()) {
        return std::nullopt;
    }
    return static_cast<int>(parse_int_field(field, line_no, column));
}

// Returns an invariant-violation message, or empty if the record is valid at
// ingest time (residential_area may still be absent here; the estimation pass
// resolves it).
std::string invariant_violation(const BuildingRecord& b, int max_year) {
    if (b.id.empty()) {
        return "missing building id";
    }
    if (!(b.lat >= -90.0 && b.lat <= 90.0) || !(b.lon >= -180.0 && b.lon <= 180.0)) {
        return "lat/lon outside valid range";
    }
    if (b.footprint_area_m2 && !(*b.footprint_area_m2 > 0.0)) {
        return "footprint_area_m2 must be > 0 when present";
    }
    if (b.n_floors && *b.n_floors < 1) {
        return "n_floors must be >= 1 when present";
    }
    if (b.residential_area_m2 && b.usage == Usage::residential &&
        !(*b.residential_area_m2 > 0.0)) {
        return "residential_area_m2 must be > 0 for residential usage";
    }
    if (b.n_dwellings < 1) {
        return "n_dwellings must be >= 1";
    }
    if (b.construction_year &&
        (*b.construction_year < 1500 || *b.construction_year > max_year)) {
        return "construction_year outside [1500, " + std::to_string(max_year) + "]";
    }
    return {};
}

}  // namespace

const char* usage_name(Usage usage) {
    return usage == Usage::residential ? "residential" : "non_residential";
}

IngestResult parse_buildings_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open buildings file: " + path);
    }
    CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields)) {
        throw InputError(path + ": empty file");
    }
    std::string header;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            header.push_back(',');
        }
        header += fields[i];
    }
    if (header != kBuildingsHeader) {
        throw InputError(path + ": unexpected header, expected '" + kBuildingsHeader + "'");
    }

    IngestResult result;
    const int max_year = current_year_utc();
    std::unordered_map<std::string, std::size_t> seen_ids;
    while (reader.next(fields)) {
        const std::size_t line_no = reader.line_no();
        if (fields.size() == 1 && fields[0].empty()) {
            continue;  // trailing blank line
        }
        if (fields.size() != 10) {
            throw InputError(path + ": line " + std::to_string(line_no) + ": expected 10 fields, got " +
                             std::to_string(fields.size()));
        }
        BuildingRecord b;
        b.id = fields[0];
        b.lat = parse_double_field(fields[1], line_no, "lat");
        b.lon = parse_double_field(fields[2], line_no, "lon");
        b.footprint_area_m2 = optional_double(fields[3], line_no, "footprint_area_m2");
        b.n_floors = optional_int(fields[4], line_no, "n_floors");
        b.residential_area_m2 = optional_double(fields[5], line_no, "residential_area_m2");
        b.n_dwellings = static_cast<int>(parse_int_field(fields[6], line_no, "n_dwellings"));
        b.construction_year = optional_int(fields[7], line_no, "construction_year");
        if (fields[8] == "residential") {
            b.usage = Usage::residential;
        } else if (fields[8] == "non_residential") {
            b.usage = Usage::non_residential;
        } else {
            result.diagnostics.add(Severity::error, b.id,
                                   "rejected: unknown usage '" + fields[8] + "'", line_no);
            continue;
        }
        b.address = fields[9];

        const std::string violation = invariant_violation(b, max_year);
        if (!violation.empty()) {
            result.diagnostics.add(Severity::error, b.id, "rejected: " + violation, line_no);
            continue;
        }
        const auto [it, inserted] = seen_ids.emplace(b.id, line_no);
        if (!inserted) {
            result.diagnostics.add(Severity::error, b.id,
                                   "rejected: duplicate id (first seen at line " +
                                       std::to_string(it->second) + ")",
                                   line_no);
            continue;
        }
        result.buildings.push_back(std::move(b));
    }
    return result;
}

double ring_area_m2(const std::vector<double>& lons, const std::vector<double>& lats) {
    std::size_t n = lons.size();
    if (n != lats.size() || n < 3) {
        return 0.0;
    }
    // Drop the duplicated closing vertex if present.
    if (n > 3 && lons[0] == lons[n - 1] && lats[0] == lats[n - 1]) {
        --n;
    }
    double lat0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lat0 += lats[i];
    }
    lat0 /= static_cast<double>(n);
    const double x_scale = kEarthRadiusM * kDegToRad * std::cos(lat0 * kDegToRad);
    const double y_scale = kEarthRadiusM * kDegToRad;

    double twice_area = 0.0;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double xi = x_scale * lons[i];
        const double yi = y_scale * lats[i];
        const double xj = x_scale * lons[j];
        const double yj = y_scale * lats[j];
        twice_area += (xj + xi) * (yj - yi);
    }
    return 0.5 * std::abs(twice_area);
}

namespace {

// Exterior area minus hole areas; also reports the exterior ring centroid.
double polygon_area_m2(const nlohmann::json& rings, double& centroid_lat, double& centroid_lon,
                       std::size_t feature_index) {
    if (!rings.is_array() || rings.empty()) {
        throw InputError("feature " + std::to_string(feature_index) + ": polygon without rings");
    }
    double area = 0.0;
    for (std::size_t r = 0; r < rings.size(); ++r) {
        const auto& ring = rings[r];
        if (!ring.is_array() || ring.size() < 3) {
            throw InputError("feature " + std::to_string(feature_index) +
                             ": ring with fewer than 3 vertices");
        }
        std::vector<double> lons;
        std::vector<double> lats;
        lons.reserve(ring.size());
        lats.reserve(ring.size());
        for (const auto& coord : ring) {
            if (!coord.is_array() || coord.size() < 2 || !coord[0].is_number() ||
                !coord[1].is_number()) {
                throw InputError("feature " + std::to_string(feature_index) +
                                 ": bad coordinate pair");
            }
            lons.push_back(coord[0].get<double>());
            lats.push_back(coord[1].get<double>());
        }
        const double ring_area = ring_area_m2(lons, lats);
        if (r == 0) {
            area += ring_area;
            double lat_sum = 0.0;
            double lon_sum = 0.0;
            std::size_t count = lons.size();
            if (count > 3 && lons[0] == lons[count - 1] && lats[0] == lats[count - 1]) {
                --count;
            }
            for (std::size_t i = 0; i < count; ++i) {
                lat_sum += lats[i];
                lon_sum += lons[i];
            }
            centroid_lat = lat_sum / static_cast<double>(count);
            centroid_lon = lon_sum / static_cast<double>(count);
        } else {
            area -= ring_area;
        }
    }
    return area;
}

}  // namespace

IngestResult parse_buildings_geojson(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open buildings file: " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": malformed GeoJSON: " + e.what());
    }
    if (!doc.is_object() || doc.value("type", std::string{}) != "FeatureCollection" ||
        !doc.contains("features") || !doc["features"].is_array()) {
        throw InputError(path + ": expected a GeoJSON FeatureCollection");
    }

    IngestResult result;
    const int max_year = current_year_utc();
    std::unordered_map<std::string, std::size_t> seen_ids;
    const auto& features = doc["features"];
    for (std::size_t index = 0; index < features.size(); ++index) {
        const auto& feature = features[index];
        if (!feature.is_object() || !feature.contains("geometry")) {
            throw InputError(path + ": feature " + std::to_string(index) + ": missing geometry");
        }
        const auto props = feature.value("properties", nlohmann::json::object());

        BuildingRecord b;
        if (props.contains("id")) {
            const auto& id = props["id"];
            b.id = id.is_string() ? id.get<std::string>() : id.dump();
        } else if (feature.contains("id")) {
            const auto& id = feature["id"];
            b.id = id.is_string() ? id.get<std::string>() : id.dump();
        } else {
            throw InputError(path + ": feature " + std::to_string(index) + ": missing id");
        }

        const auto& geometry = feature["geometry"];
        const std::string geom_type = geometry.value("type", std::string{});
        double centroid_lat = 0.0;
        double centroid_lon = 0.0;
        double area = 0.0;
        if (geom_type == "Polygon") {
            area = polygon_area_m2(geometry["coordinates"], centroid_lat, centroid_lon, index);
        } else if (geom_type == "MultiPolygon") {
            double best_lat = 0.0;
            double best_lon = 0.0;
            bool first = true;
            for (const auto& polygon : geometry["coordinates"]) {
                double lat = 0.0;
                double lon = 0.0;
                area += polygon_area_m2(polygon, lat, lon, index);
                if (first) {
                    best_lat = lat;
                    best_lon = lon;
                    first = false;
                }
            }
            centroid_lat = best_lat;
            centroid_lon = best_lon;
        } else {
            throw InputError(path + ": feature " + std::to_string(index) +
                             ": unsupported geometry type '" + geom_type + "'");
        }
        b.footprint_area_m2 = area;
        b.lat = props.contains("lat") ? props["lat"].get<double>() : centroid_lat;
        b.lon = props.contains("lon") ? props["lon"].get<double>() : centroid_lon;
        if (props.contains("n_floors")) {
            b.n_floors = props["n_floors"].get<int>();
        }
        if (props.contains("residential_area_m2")) {
            b.residential_area_m2 = props["residential_area_m2"].get<double>();
        }
        if (props.contains("n_dwellings")) {
            b.n_dwellings = props["n_dwellings"].get<int>();
        }
        if (props.contains("construction_year")) {
            b.construction_year = props["construction_year"].get<int>();
        }
        if (props.contains("usage")) {
            const std::string usage = props["usage"].get<std::string>();
            if (usage == "residential") {
                b.usage = Usage::residential;
            } else if (usage == "non_residential") {
                b.usage = Usage::non_residential;
            } else {
                result.diagnostics.add(Severity::error, b.id,
                                       "rejected: unknown usage '" + usage + "'", index + 1);
                continue;
            }
        }
        if (props.contains("address")) {
            b.address = props["address"].get<std::string>();
        }

        if (!(area > 0.0)) {
            result.diagnostics.add(Severity::error, b.id, "rejected: degenerate footprint polygon",
                                   index + 1);
            continue;
        }
        const std::string violation = invariant_violation(b, max_year);
        if (!violation.empty()) {
            result.diagnostics.add(Severity::error, b.id, "rejected: " + violation, index + 1);
            continue;
        }
        const auto [it, inserted] = seen_ids.emplace(b.id, index + 1);
        if (!inserted) {
            result.diagnostics.add(Severity::error, b.id, "rejected: duplicate id", index + 1);
            continue;
        }
        result.buildings.push_back(std::move(b));
    }
    return result;
}

void serialize_buildings_csv(const std::vector<BuildingRecord>& buildings, std::ostream& out) {
    std::string buffer;
    buffer.reserve(buildings.size() * 64 + 128);
    buffer += kBuildingsHeader;
    buffer.push_back('\n');
    for (const auto& b : buildings) {
        buffer += csv_escape(b.id);
        buffer.push_back(',');
        append_double(buffer, b.lat);
        buffer.push_back(',');
        append_double(buffer, b.lon);
        buffer.push_back(',');
        if (b.footprint_area_m2) {
            append_double(buffer, *b.footprint_area_m2);
        }
        buffer.push_back(',');
        if (b.n_floors) {
            buffer += std::to_string(*b.n_floors);
        }
        buffer.push_back(',');
        if (b.residential_area_m2) {
            append_double(buffer, *b.residential_area_m2);
        }
        buffer.push_back(',');
        buffer += std::to_string(b.n_dwellings);
        buffer.push_back(',');
        if (b.construction_year) {
            buffer += std::to_string(*b.construction_year);
        }
        buffer.push_back(',');
        buffer += usage_name(b.usage);
        buffer.push_back(',');
        buffer += csv_escape(b.address);
        buffer.push_back('\n');
    }
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
}

void merge_cadaster(std::vector<BuildingRecord>& buildings, const std::string& cadaster_path,
                    DiagnosticLog& diagnostics) {
    std::ifstream in(cadaster_path);
    if (!in) {
        throw InputError("cannot open cadaster file: " + cadaster_path);
    }
    CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields) || fields.size() != 4 || fields[0] != "building_id" ||
        fields[1] != "unit_area_m2" || fields[2] != "unit_usage" ||
        fields[3] != "unit_construction_year") {
        throw InputError(cadaster_path +
                         ": expected header 'building_id,unit_area_m2,unit_usage,"
                         "unit_construction_year'");
    }

    std::unordered_map<std::string, std::size_t> index_by_id;
    index_by_id.reserve(buildings.size());
    for (std::size_t i = 0; i < buildings.size(); ++i) {
        index_by_id.emplace(buildings[i].id, i);
    }

    struct Accumulator {
        double residential_area = 0.0;
        int residential_units = 0;
        int total_units = 0;
        std::map<int, int> year_counts;  // ordered so ties resolve to the oldest
    };
    std::unordered_map<std::size_t, Accumulator> accumulators;

    while (reader.next(fields)) {
        const std::size_t line_no = reader.line_no();
        if (fields.size() == 1 && fields[0].empty()) {
            continue;
        }
        if (fields.size() != 4) {
            throw InputError(cadaster_path + ": line " + std::to_string(line_no) +
                             ": expected 4 fields, got " + std::to_string(fields.size()));
        }
        const auto it = index_by_id.find(fields[0]);
        if (it == index_by_id.end()) {
            diagnostics.add(Severity::warning, fields[0],
                            "cadaster row skipped: unknown building id", line_no);
            continue;
        }
        auto& acc = accumulators[it->second];
        ++acc.total_units;
        // Empty unit_usage counts as residential.
        const bool residential = fields[2].empty() || fields[2] == "residential";
        if (residential) {
            ++acc.residential_units;
            if (!fields[1].empty()) {
                acc.residential_area += parse_double_field(fields[1], line_no, "unit_area_m2");
            }
        }
        if (!fields[3].empty()) {
            const int year =
                static_cast<int>(parse_int_field(fields[3], line_no, "unit_construction_year"));
            ++acc.year_counts[year];
        }
    }

    for (const auto& [index, acc] : accumulators) {
        BuildingRecord& b = buildings[index];
        if (acc.residential_units > 0) {
            b.n_dwellings = acc.residential_units;
            b.residential_area_m2 = acc.residential_area;
            b.usage = Usage::residential;
        } else {
            // Cadaster knows the building but lists no residential units.
            b.usage = Usage::non_residential;
            diagnostics.add(Severity::info, b.id,
                            "cadaster lists no residential units; marked non_residential");
        }
        if (!acc.year_counts.empty()) {
            int best_year = 0;
            int best_count = 0;
            for (const auto& [year, count] : acc.year_counts) {
                if (count > best_count) {  // map iteration is ascending, ties keep the oldest
                    best_count = count;
                    best_year = year;
                }
            }
            b.construction_year = best_year;
        }
    }
}

BuildingRecord estimate_missing_area(BuildingRecord record, const EngineConfig& cfg) {
    if (record.residential_area_m2) {
        return record;
    }
    if (record.footprint_area_m2 && record.n_floors) {
        record.residential_area_m2 =
            *record.footprint_area_m2 * static_cast<double>(*record.n_floors) * cfg.usable_fraction;
        record.area_estimated = true;
    }
    return record;
}

std::vector<BuildingRecord> finalize_buildings(std::vector<BuildingRecord> buildings,
                                               const EngineConfig& cfg,
                                               DiagnosticLog& diagnostics) {
    std::vector<BuildingRecord> kept;
    kept.reserve(buildings.size());
    for (auto& b : buildings) {
        if (b.usage == Usage::non_residential) {
            kept.push_back(std::move(b));
            continue;
        }
        BuildingRecord resolved = estimate_missing_area(std::move(b), cfg);
        if (!resolved.residential_area_m2) {
            diagnostics.add(Severity::error, resolved.id,
                            "excluded: residential_area_m2 missing and not estimable "
                            "(needs footprint_area_m2 and n_floors)");
            continue;
        }
        if (!(*resolved.residential_area_m2 > 0.0)) {
            diagnostics.add(Severity::error, resolved.id,
                            "excluded: residential_area_m2 must be > 0");
            continue;
        }
        if (resolved.area_estimated) {
            diagnostics.add(Severity::info, resolved.id,
                            "residential_area_m2 estimated from footprint x floors x " +
                                format_double(cfg.usable_fraction));
        }
        kept.push_back(std::move(resolved));
    }
    return kept;
}

WeatherSeries parse_weather(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open weather file: " + path);
    }
    CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields)) {
        throw InputError(path + ": empty file");
    }
    bool has_ghi = false;
    if (fields.size() == 3 && fields[0] == "timestamp" && fields[1] == "temp_c" &&
        fields[2] == "ghi_wm2") {
        has_ghi = true;
    } else if (fields.size() == 2 && fields[0] == "timestamp" && fields[1] == "temp_c") {
        has_ghi = false;
    } else {
        throw InputError(path + ": expected header 'timestamp,temp_c[,ghi_wm2]'");
    }

    struct RawRow {
        std::int64_t offset;
        std::optional<double> temp;
        std::optional<double> ghi;
        CivilDateTime stamp;
    };
    std::vector<RawRow> rows;
    CivilDateTime start{};
    std::int64_t start_hours = 0;
    while (reader.next(fields)) {
        const std::size_t line_no = reader.line_no();
        if (fields.size() == 1 && fields[0].empty()) {
            continue;
        }
        if (fields.size() != (has_ghi ? 3u : 2u)) {
            throw InputError(path + ": line " + std::to_string(line_no) + ": wrong field count");
        }
        const CivilDateTime dt = parse_timestamp(fields[0], line_no);
        if (dt.minute != 0 || dt.second != 0) {
            throw InputError(path + ": line " + std::to_string(line_no) +
                             ": timestamps must be on the hour: '" + fields[0] + "'");
        }
        const std::int64_t hours = days_from_civil(dt.year, dt.month, dt.day) * 24 + dt.hour;
        if (rows.empty()) {
            start = dt;
            start_hours = hours;
        }
        const std::int64_t offset = hours - start_hours;
        if (!rows.empty() && offset <= rows.back().offset) {
            throw InputError(path + ": line " + std::to_string(line_no) +
                             ": non-monotone timestamp '" + fields[0] + "'");
        }
        RawRow row;
        row.offset = offset;
        row.stamp = dt;
        row.temp = optional_double(fields[1], line_no, "temp_c");
        if (has_ghi) {
            row.ghi = optional_double(fields[2], line_no, "ghi_wm2");
        }
        rows.push_back(row);
    }
    if (rows.empty()) {
        throw InputError(path + ": no data rows");
    }

    const std::size_t length = static_cast<std::size_t>(rows.back().offset) + 1;
    WeatherSeries series;
    series.start = start;
    series.temp_c.assign(length, std::numeric_limits<double>::quiet_NaN());
    if (has_ghi) {
        series.ghi_wm2.assign(length, std::numeric_limits<double>::quiet_NaN());
    }
    for (const auto& row : rows) {
        const auto t = static_cast<std::size_t>(row.offset);
        if (row.temp) {
            series.temp_c[t] = *row.temp;
        }
        if (has_ghi && row.ghi) {
            series.ghi_wm2[t] = *row.ghi;
        }
    }

    // Fill gaps of up to 3 consecutive missing hours by linear interpolation.
    const auto fill = [&](std::vector<double>& values, const char* column) {
        std::size_t t = 0;
        while (t < values.size()) {
            if (!std::isnan(values[t])) {
                ++t;
                continue;
            }
            const std::size_t gap_start = t;
            while (t < values.size() && std::isnan(values[t])) {
                ++t;
            }
            const std::size_t gap_len = t - gap_start;
            if (gap_start == 0 || t == values.size()) {
                throw InputError(path + ": " + std::string(column) +
                                 " missing at the series boundary");
            }
            if (gap_len > 3) {
                throw InputError(path + ": gap of " + std::to_string(gap_len) + " hours in " +
                                 column + " starting " + std::to_string(gap_start) +
                                 " hours after " + format_timestamp(start) +
                                 " exceeds the 3-hour interpolation limit");
            }
            const double before = values[gap_start - 1];
            const double after = values[t];
            for (std::size_t k = 0; k < gap_len; ++k) {
                const double frac =
                    static_cast<double>(k + 1) / static_cast<double>(gap_len + 1);
                values[gap_start + k] = before + (after - before) * frac;
            }
            series.interpolated_hours += gap_len;
        }
    };
    fill(series.temp_c, "temp_c");
    if (has_ghi) {
        fill(series.ghi_wm2, "ghi_wm2");
    }

    for (std::size_t t = 0; t < series.temp_c.size(); ++t) {
        const double temp = series.temp_c[t];
        if (!(temp >= -60.0 && temp <= 60.0)) {
            throw InputError(path + ": temp_c out of range [-60, 60] at hour " +
                             std::to_string(t) + " (" + format_double(temp) + ")");
        }
        if (has_ghi && series.ghi_wm2[t] < 0.0) {
            throw InputError(path + ": negative ghi_wm2 at hour " + std::to_string(t));
        }
    }
    return series;
}

}  // namespace heatgen
