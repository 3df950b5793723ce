#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "heatgen/calendar.hpp"
#include "heatgen/config.hpp"
#include "heatgen/diagnostics.hpp"

namespace heatgen {

enum class Usage : std::uint8_t { residential = 0, non_residential = 1 };

const char* usage_name(Usage usage);

struct BuildingRecord {
    std::string id;
    double lat = 0.0;   // degrees WGS84
    double lon = 0.0;
    std::optional<double> footprint_area_m2;
    std::optional<int> n_floors;
    std::optional<double> residential_area_m2;  // S_i
    int n_dwellings = 1;
    std::optional<int> construction_year;
    Usage usage = Usage::residential;
    std::string address;  // empty = absent
    bool area_estimated = false;
};

struct IngestResult {
    std::vector<BuildingRecord> buildings;
    DiagnosticLog diagnostics;
};

// Canonical tabular interchange format:
// id,lat,lon,footprint_area_m2,n_floors,residential_area_m2,n_dwellings,construction_year,usage,address
IngestResult parse_buildings_csv(const std::string& path);

// GeoJSON FeatureCollection of Polygon/MultiPolygon features. The footprint
// area comes from the polygon geometry via a local equirectangular projection;
// lat/lon default to the centroid of the exterior ring. Recognized properties:
// id, n_floors, residential_area_m2, n_dwellings, construction_year, usage,
// address.
IngestResult parse_buildings_geojson(const std::string& path);

// Writes the canonical CSV. Parsing a file produced here and serializing the
// result again reproduces it byte-identically.
void serialize_buildings_csv(const std::vector<BuildingRecord>& buildings, std::ostream& out);

// Planar polygon area (m2) for one ring of lon/lat vertex pairs, computed on
// a local equirectangular projection around the ring's mean latitude.
double ring_area_m2(const std::vector<double>& lons, const std::vector<double>& lats);

// Aggregates per-unit cadaster rows (building_id,unit_area_m2,unit_usage,
// unit_construction_year) onto the building list. Buildings with no cadaster
// rows keep their ingest-time values.
void merge_cadaster(std::vector<BuildingRecord>& buildings, const std::string& cadaster_path,
                    DiagnosticLog& diagnostics);

// Fills residential_area_m2 from footprint_area x n_floors x usable_fraction
// when absent; never overwrites a present value.
BuildingRecord estimate_missing_area(BuildingRecord record, const EngineConfig& cfg);

// Applies area estimation and drops records that still violate invariants,
// emitting one diagnostic per exclusion.
std::vector<BuildingRecord> finalize_buildings(std::vector<BuildingRecord> buildings,
                                               const EngineConfig& cfg,
                                               DiagnosticLog& diagnostics);

struct WeatherSeries {
    CivilDateTime start;
    std::vector<double> temp_c;   // T_out(t), hourly
    std::vector<double> ghi_wm2;  // empty when the column is absent
    std::size_t interpolated_hours = 0;

    std::size_t size() const { return temp_c.size(); }
    bool has_ghi() const { return !ghi_wm2.empty(); }
    Calendar make_calendar() const { return Calendar::from_start(start, temp_c.size()); }
};

// weather.csv: timestamp,temp_c[,ghi_wm2] with strictly hourly ascending
// timestamps. Gaps of up to 3 consecutive hours are linearly interpolated and
// counted; longer gaps are an error.
WeatherSeries parse_weather(const std::string& path);

}  // namespace heatgen
