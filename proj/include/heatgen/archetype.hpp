#pragma once

#include <string>
#include <vector>

#include "heatgen/config.hpp"
#include "heatgen/diagnostics.hpp"
#include "heatgen/ingest.hpp"

namespace heatgen {

enum class BuildingClass : std::uint8_t { SFH = 0, TH = 1, MFH = 2, AB = 3 };

const char* building_class_name(BuildingClass cls);
BuildingClass building_class_from_name(const std::string& name, std::size_t line_no);

struct Archetype {
    std::string id;
    BuildingClass building_class = BuildingClass::SFH;
    int year_min = 0;
    int year_max = 0;
    double q_spec = 0.0;           // kWh/(m2*a), original state
    double q_spec_retrofit = 0.0;  // kWh/(m2*a), after retrofit
};

// Derives the building class from dwellings and floors. Precedence:
// SFH (single dwelling), then AB (large), then TH (small/low), else MFH.
BuildingClass derive_building_class(const BuildingRecord& b, const EngineConfig& cfg);

class ArchetypeTable {
public:
    // archetypes.csv:
    // id,building_class,year_min,year_max,q_spec_kwh_m2a,q_spec_retrofit_kwh_m2a
    // Bands within one class must be contiguous and non-overlapping.
    static ArchetypeTable load(const std::string& path);
    static ArchetypeTable from_rows(std::vector<Archetype> rows);

    // Band lookup for a known construction year; years outside the declared
    // range snap to the nearest band.
    const Archetype& match(BuildingClass cls, int year) const;

    // Fallback archetype for buildings without a construction year. By
    // default its q_spec is the arithmetic mean over the class's bands;
    // set_dataset_weights switches to weighting by observed area share.
    const Archetype& fallback(BuildingClass cls) const;
    bool has_class(BuildingClass cls) const;

    // Recomputes fallback archetypes weighting each band by the given weight
    // (typically the residential area of year-known buildings matched to it).
    // Classes whose weights are all zero keep the uniform mean.
    void set_dataset_weights(const std::vector<double>& weights_by_row);

    const std::vector<Archetype>& rows() const { return rows_; }
    std::size_t row_index(const Archetype& row) const { return &row - rows_.data(); }

private:
    void validate_and_index();
    void rebuild_fallbacks(const std::vector<double>* weights);

    std::vector<Archetype> rows_;
    std::vector<std::vector<std::size_t>> by_class_;  // row indices sorted by year_min
    std::vector<Archetype> fallback_;
    std::vector<bool> class_present_;
};

struct BuildingEnergy {
    std::string building_id;
    std::string archetype_id;
    double q_spec = 0.0;
    double q_spec_retrofit = 0.0;
    double annual_kwh = 0.0;           // Q_i = S_i * q_spec
    double annual_retrofit_kwh = 0.0;
    bool fallback_used = false;
    bool area_estimated = false;
};

struct Classified {
    const Archetype* archetype = nullptr;
    bool fallback_used = false;
};

// Classifies one residential building against the table. Throws InputError
// when the table has no archetype for the derived class (TH falls back to
// MFH and vice versa when only one of the two is present).
Classified classify(const BuildingRecord& b, const ArchetypeTable& table,
                    const EngineConfig& cfg);

BuildingEnergy annual_demand(const BuildingRecord& b, const Classified& c);

// Re-weights the table's fallback archetypes by the residential area of
// year-known buildings matched to each band. No-op unless
// cfg.fallback_weighting == "dataset".
void apply_dataset_weights(const std::vector<BuildingRecord>& buildings, ArchetypeTable& table,
                           const EngineConfig& cfg);

// Classifies every residential building; order follows the input. When
// cfg.fallback_weighting == "dataset" the fallback q_spec is re-weighted by
// the area share of year-known buildings before assigning fallbacks.
// Non-residential buildings are skipped with an info diagnostic.
std::vector<BuildingEnergy> classify_all(const std::vector<BuildingRecord>& buildings,
                                         ArchetypeTable& table, const EngineConfig& cfg,
                                         DiagnosticLog& diagnostics);

}  // namespace heatgen
