#include "heatgen/archetype.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "heatgen/csv.hpp"
#include "heatgen/errors.hpp"

namespace heatgen {

const char* building_class_name(BuildingClass cls) {
    switch (cls) {
        case BuildingClass::SFH: return "SFH";
        case BuildingClass::TH: return "TH";
        case BuildingClass::MFH: return "MFH";
        case BuildingClass::AB: return "AB";
    }
    return "?";
}

BuildingClass building_class_from_name(const std::string& name, std::size_t line_no) {
    if (name == "SFH") return BuildingClass::SFH;
    if (name == "TH") return BuildingClass::TH;
    if (name == "MFH") return BuildingClass::MFH;
    if (name == "AB") return BuildingClass::AB;
    throw InputError("line " + std::to_string(line_no) + ": unknown building_class '" + name +
                     "' (expected SFH, TH, MFH or AB)");
}

BuildingClass derive_building_class(const BuildingRecord& b, const EngineConfig& cfg) {
    const int dwellings = b.n_dwellings;
    const bool floors_known = b.n_floors.has_value();
    const int floors = floors_known ? *b.n_floors : 0;

    if (dwellings == 1) {
        return BuildingClass::SFH;
    }
    if (dwellings >= cfg.class_ab_min_dwellings ||
        (floors_known && floors >= cfg.class_ab_min_floors)) {
        return BuildingClass::AB;
    }
    if (dwellings <= cfg.class_th_dwellings ||
        (floors_known && floors <= cfg.class_th_max_floors &&
         dwellings <= cfg.class_th_max_dwellings)) {
        return BuildingClass::TH;
    }
    return BuildingClass::MFH;
}

ArchetypeTable ArchetypeTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open archetype table: " + path);
    }
    CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields) || fields.size() != 6 || fields[0] != "id" ||
        fields[1] != "building_class" || fields[2] != "year_min" || fields[3] != "year_max" ||
        fields[4] != "q_spec_kwh_m2a" || fields[5] != "q_spec_retrofit_kwh_m2a") {
        throw InputError(path +
                         ": expected header 'id,building_class,year_min,year_max,"
                         "q_spec_kwh_m2a,q_spec_retrofit_kwh_m2a'");
    }
    std::vector<Archetype> rows;
    while (reader.next(fields)) {
        const std::size_t line_no = reader.line_no();
        if (fields.size() == 1 && fields[0].empty()) {
            continue;
        }
        if (fields.size() != 6) {
            throw InputError(path + ": line " + std::to_string(line_no) + ": expected 6 fields");
        }
        Archetype a;
        a.id = fields[0];
        a.building_class = building_class_from_name(fields[1], line_no);
        a.year_min = static_cast<int>(parse_int_field(fields[2], line_no, "year_min"));
        a.year_max = static_cast<int>(parse_int_field(fields[3], line_no, "year_max"));
        a.q_spec = parse_double_field(fields[4], line_no, "q_spec_kwh_m2a");
        a.q_spec_retrofit = parse_double_field(fields[5], line_no, "q_spec_retrofit_kwh_m2a");
        rows.push_back(std::move(a));
    }
    return from_rows(std::move(rows));
}

ArchetypeTable ArchetypeTable::from_rows(std::vector<Archetype> rows) {
    ArchetypeTable table;
    table.rows_ = std::move(rows);
    table.validate_and_index();
    return table;
}

void ArchetypeTable::validate_and_index() {
    if (rows_.empty()) {
        throw InputError("archetype table: no rows");
    }
    by_class_.assign(4, {});
    class_present_.assign(4, false);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Archetype& a = rows_[i];
        if (a.id.empty()) {
            throw InputError("archetype table: empty id");
        }
        if (!(a.q_spec > 0.0)) {
            throw InputError("archetype " + a.id + ": q_spec must be > 0");
        }
        if (!(a.q_spec_retrofit > 0.0 && a.q_spec_retrofit <= a.q_spec)) {
            throw InputError("archetype " + a.id +
                             ": q_spec_retrofit must satisfy 0 < retrofit <= q_spec");
        }
        if (a.year_min > a.year_max) {
            throw InputError("archetype " + a.id + ": year_min > year_max");
        }
        by_class_[static_cast<std::size_t>(a.building_class)].push_back(i);
        class_present_[static_cast<std::size_t>(a.building_class)] = true;
    }
    for (std::size_t cls = 0; cls < 4; ++cls) {
        auto& indices = by_class_[cls];
        std::sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
            return rows_[a].year_min < rows_[b].year_min;
        });
        for (std::size_t k = 1; k < indices.size(); ++k) {
            const Archetype& prev = rows_[indices[k - 1]];
            const Archetype& next = rows_[indices[k]];
            if (next.year_min != prev.year_max + 1) {
                throw InputError("archetype table: bands " + prev.id + " and " + next.id +
                                 " must be contiguous and non-overlapping");
            }
        }
    }
    rebuild_fallbacks(nullptr);
}

void ArchetypeTable::rebuild_fallbacks(const std::vector<double>* weights) {
    fallback_.assign(4, {});
    for (std::size_t cls = 0; cls < 4; ++cls) {
        if (!class_present_[cls]) {
            continue;
        }
        const auto& indices = by_class_[cls];
        double weight_sum = 0.0;
        if (weights) {
            for (const std::size_t i : indices) {
                weight_sum += (*weights)[i];
            }
        }
        double q = 0.0;
        double q_retrofit = 0.0;
        if (weights && weight_sum > 0.0) {
            for (const std::size_t i : indices) {
                q += rows_[i].q_spec * (*weights)[i] / weight_sum;
                q_retrofit += rows_[i].q_spec_retrofit * (*weights)[i] / weight_sum;
            }
        } else {
            for (const std::size_t i : indices) {
                q += rows_[i].q_spec;
                q_retrofit += rows_[i].q_spec_retrofit;
            }
            q /= static_cast<double>(indices.size());
            q_retrofit /= static_cast<double>(indices.size());
        }
        Archetype& fb = fallback_[cls];
        fb.id = std::string(building_class_name(static_cast<BuildingClass>(cls))) + "-fallback";
        fb.building_class = static_cast<BuildingClass>(cls);
        fb.year_min = rows_[indices.front()].year_min;
        fb.year_max = rows_[indices.back()].year_max;
        fb.q_spec = q;
        fb.q_spec_retrofit = q_retrofit;
    }
}

void ArchetypeTable::set_dataset_weights(const std::vector<double>& weights_by_row) {
    if (weights_by_row.size() != rows_.size()) {
        throw InputError("archetype table: weight vector size mismatch");
    }
    rebuild_fallbacks(&weights_by_row);
}

bool ArchetypeTable::has_class(BuildingClass cls) const {
    return class_present_[static_cast<std::size_t>(cls)];
}

const Archetype& ArchetypeTable::match(BuildingClass cls, int year) const {
    const auto& indices = by_class_[static_cast<std::size_t>(cls)];
    if (indices.empty()) {
        throw InputError(std::string("no archetype for building class ") +
                         building_class_name(cls));
    }
    // Bands are contiguous; years outside the declared range snap to the
    // nearest (first/last) band.
    if (year <= rows_[indices.front()].year_max) {
        return rows_[indices.front()];
    }
    if (year >= rows_[indices.back()].year_min) {
        return rows_[indices.back()];
    }
    for (const std::size_t i : indices) {
        if (year >= rows_[i].year_min && year <= rows_[i].year_max) {
            return rows_[i];
        }
    }
    return rows_[indices.back()];  // unreachable with contiguous bands
}

const Archetype& ArchetypeTable::fallback(BuildingClass cls) const {
    if (!class_present_[static_cast<std::size_t>(cls)]) {
        throw InputError(std::string("no archetype for building class ") +
                         building_class_name(cls));
    }
    return fallback_[static_cast<std::size_t>(cls)];
}

namespace {

// TH and MFH are interchangeable at coarse table granularity.
BuildingClass resolve_class_for_table(BuildingClass derived, const ArchetypeTable& table) {
    if (table.has_class(derived)) {
        return derived;
    }
    if (derived == BuildingClass::TH && table.has_class(BuildingClass::MFH)) {
        return BuildingClass::MFH;
    }
    if (derived == BuildingClass::MFH && table.has_class(BuildingClass::TH)) {
        return BuildingClass::TH;
    }
    throw InputError(std::string("no archetype for building class ") +
                     building_class_name(derived));
}

}  // namespace

Classified classify(const BuildingRecord& b, const ArchetypeTable& table,
                    const EngineConfig& cfg) {
    if (b.usage != Usage::residential) {
        throw InputError("classify: building " + b.id + " is not residential");
    }
    const BuildingClass cls = resolve_class_for_table(derive_building_class(b, cfg), table);
    Classified result;
    if (b.construction_year) {
        result.archetype = &table.match(cls, *b.construction_year);
        result.fallback_used = false;
    } else {
        result.archetype = &table.fallback(cls);
        result.fallback_used = true;
    }
    return result;
}

BuildingEnergy annual_demand(const BuildingRecord& b, const Classified& c) {
    if (!b.residential_area_m2 || !(*b.residential_area_m2 > 0.0)) {
        throw InputError("annual_demand: building " + b.id + " has no residential area");
    }
    BuildingEnergy e;
    e.building_id = b.id;
    e.archetype_id = c.archetype->id;
    e.q_spec = c.archetype->q_spec;
    e.q_spec_retrofit = c.archetype->q_spec_retrofit;
    e.annual_kwh = *b.residential_area_m2 * c.archetype->q_spec;
    e.annual_retrofit_kwh = *b.residential_area_m2 * c.archetype->q_spec_retrofit;
    e.fallback_used = c.fallback_used;
    e.area_estimated = b.area_estimated;
    return e;
}

void apply_dataset_weights(const std::vector<BuildingRecord>& buildings, ArchetypeTable& table,
                           const EngineConfig& cfg) {
    if (cfg.fallback_weighting != "dataset") {
        return;
    }
    // First pass over year-known buildings accumulates the area matched to
    // each band; fallbacks then use those weights.
    std::vector<double> weights(table.rows().size(), 0.0);
    for (const auto& b : buildings) {
        if (b.usage != Usage::residential || !b.construction_year || !b.residential_area_m2) {
            continue;
        }
        const BuildingClass cls = resolve_class_for_table(derive_building_class(b, cfg), table);
        const Archetype& a = table.match(cls, *b.construction_year);
        weights[table.row_index(a)] += *b.residential_area_m2;
    }
    table.set_dataset_weights(weights);
}

std::vector<BuildingEnergy> classify_all(const std::vector<BuildingRecord>& buildings,
                                         ArchetypeTable& table, const EngineConfig& cfg,
                                         DiagnosticLog& diagnostics) {
    apply_dataset_weights(buildings, table, cfg);

    std::vector<BuildingEnergy> energies;
    energies.reserve(buildings.size());
    for (const auto& b : buildings) {
        if (b.usage != Usage::residential) {
            diagnostics.add(Severity::info, b.id, "skipped: non-residential");
            continue;
        }
        const Classified c = classify(b, table, cfg);
        energies.push_back(annual_demand(b, c));
    }
    return energies;
}

}  // namespace heatgen
