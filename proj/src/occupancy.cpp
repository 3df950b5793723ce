#include "heatgen/occupancy.hpp"

#include <cmath>
#include <fstream>

#include "heatgen/csv.hpp"
#include "heatgen/errors.hpp"

namespace heatgen {
namespace {

constexpr double kRowSumTolerance = 1e-9;

DayType day_type_from_name(const std::string& name, std::size_t line_no) {
    if (name == "weekday") return DayType::weekday;
    if (name == "weekend") return DayType::weekend;
    throw InputError("line " + std::to_string(line_no) + ": day_type must be 'weekday' or 'weekend'");
}

}  // namespace

TransitionMatrixSet TransitionMatrixSet::parse(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open transition matrix file: " + path);
    }
    CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields) || fields.size() != 6 || fields[0] != "day_type" ||
        fields[1] != "hour" || fields[2] != "p_ii" || fields[3] != "p_ia" || fields[4] != "p_ai" ||
        fields[5] != "p_aa") {
        throw InputError(path + ": expected header 'day_type,hour,p_ii,p_ia,p_ai,p_aa'");
    }
    TransitionMatrixSet set;
    bool seen[2][24] = {};
    while (reader.next(fields)) {
        const std::size_t line_no = reader.line_no();
        if (fields.size() == 1 && fields[0].empty()) {
            continue;
        }
        if (fields.size() != 6) {
            throw InputError(path + ": line " + std::to_string(line_no) + ": expected 6 fields");
        }
        const DayType day_type = day_type_from_name(fields[0], line_no);
        const long hour = parse_int_field(fields[1], line_no, "hour");
        if (hour < 0 || hour > 23) {
            throw InputError(path + ": line " + std::to_string(line_no) +
                             ": hour must be in [0, 23]");
        }
        TransitionMatrix m;
        m.p[0][0] = parse_double_field(fields[2], line_no, "p_ii");
        m.p[0][1] = parse_double_field(fields[3], line_no, "p_ia");
        m.p[1][0] = parse_double_field(fields[4], line_no, "p_ai");
        m.p[1][1] = parse_double_field(fields[5], line_no, "p_aa");
        for (int row = 0; row < 2; ++row) {
            for (int col = 0; col < 2; ++col) {
                if (!(m.p[row][col] >= 0.0 && m.p[row][col] <= 1.0)) {
                    throw InputError(path + ": line " + std::to_string(line_no) +
                                     ": probabilities must lie in [0, 1]");
                }
            }
            const double row_sum = m.p[row][0] + m.p[row][1];
            if (std::abs(row_sum - 1.0) > kRowSumTolerance) {
                throw InputError(path + ": line " + std::to_string(line_no) + ": row " +
                                 (row == 0 ? "inactive" : "active") + " sums to " +
                                 format_double(row_sum) + ", expected 1");
            }
        }
        auto& slot = seen[static_cast<std::size_t>(day_type)][hour];
        if (slot) {
            throw InputError(path + ": line " + std::to_string(line_no) + ": duplicate entry for " +
                             fields[0] + " hour " + std::to_string(hour));
        }
        slot = true;
        set.matrices_[static_cast<std::size_t>(day_type)][hour] = m;
    }
    for (int d = 0; d < 2; ++d) {
        for (int h = 0; h < 24; ++h) {
            if (!seen[d][h]) {
                throw InputError(path + ": missing matrix for " +
                                 (d == 0 ? "weekday" : "weekend") + " hour " + std::to_string(h));
            }
        }
    }
    return set;
}

TransitionMatrixSet TransitionMatrixSet::from_matrices(
    const std::array<TransitionMatrix, 24>& weekday,
    const std::array<TransitionMatrix, 24>& weekend) {
    TransitionMatrixSet set;
    for (int h = 0; h < 24; ++h) {
        set.matrices_[0][h] = weekday[h];
        set.matrices_[1][h] = weekend[h];
    }
    set.validate();
    return set;
}

void TransitionMatrixSet::validate() const {
    for (int d = 0; d < 2; ++d) {
        for (int h = 0; h < 24; ++h) {
            const TransitionMatrix& m = matrices_[d][h];
            for (int row = 0; row < 2; ++row) {
                if (m.p[row][0] < 0.0 || m.p[row][0] > 1.0 || m.p[row][1] < 0.0 ||
                    m.p[row][1] > 1.0 ||
                    std::abs(m.p[row][0] + m.p[row][1] - 1.0) > kRowSumTolerance) {
                    throw InputError("transition matrix for " +
                                     std::string(d == 0 ? "weekday" : "weekend") + " hour " +
                                     std::to_string(h) + " is not row-stochastic");
                }
            }
        }
    }
}

TransitionMatrixSet TransitionMatrixSet::calibrate(
    const std::array<double, 24>& weekday_share, const std::array<double, 24>& weekend_share,
    const std::array<double, 24>& weekday_mobility,
    const std::array<double, 24>& weekend_mobility) {
    TransitionMatrixSet set;
    for (int d = 0; d < 2; ++d) {
        const auto& share = d == 0 ? weekday_share : weekend_share;
        const auto& mobility = d == 0 ? weekday_mobility : weekend_mobility;
        for (int h = 0; h < 24; ++h) {
            const double pi = share[h];
            const double pi_next = share[(h + 1) % 24];
            const double m = mobility[h];
            if (!(pi > 0.0 && pi < 1.0) || !(pi_next > 0.0 && pi_next < 1.0)) {
                throw InputError("calibrate_matrices: target share at " +
                                 std::string(d == 0 ? "weekday" : "weekend") + " hour " +
                                 std::to_string(h) + " must lie in (0, 1)");
            }
            if (!(m > 0.0 && m <= 1.0)) {
                throw InputError("calibrate_matrices: mobility at " +
                                 std::string(d == 0 ? "weekday" : "weekend") + " hour " +
                                 std::to_string(h) + " must lie in (0, 1]");
            }
            // pi_next = (1 - m) * pi + m * q  =>  q = (pi_next - (1 - m) * pi) / m
            const double q = (pi_next - (1.0 - m) * pi) / m;
            if (!(q >= 0.0 && q <= 1.0)) {
                throw InputError("calibrate_matrices: infeasible at " +
                                 std::string(d == 0 ? "weekday" : "weekend") + " hour " +
                                 std::to_string(h) + ": required redraw probability " +
                                 format_double(q) + " outside [0, 1]");
            }
            TransitionMatrix& out = set.matrices_[d][h];
            out.p[0][1] = m * q;
            out.p[0][0] = 1.0 - out.p[0][1];
            out.p[1][0] = m * (1.0 - q);
            out.p[1][1] = 1.0 - out.p[1][0];
        }
    }
    return set;
}

void TransitionMatrixSet::write(std::ostream& out) const {
    out << "day_type,hour,p_ii,p_ia,p_ai,p_aa\n";
    for (int d = 0; d < 2; ++d) {
        for (int h = 0; h < 24; ++h) {
            const TransitionMatrix& m = matrices_[d][h];
            out << (d == 0 ? "weekday" : "weekend") << ',' << h << ',' << format_double(m.p[0][0])
                << ',' << format_double(m.p[0][1]) << ',' << format_double(m.p[1][0]) << ','
                << format_double(m.p[1][1]) << '\n';
        }
    }
}

bool default_initial_active(int first_hour_of_day) {
    return first_hour_of_day >= 7 && first_hour_of_day <= 22;
}

OccupancyProfile generate_profile(const TransitionMatrixSet& matrices, const Calendar& calendar,
                                  std::uint64_t seed, bool initial_active) {
    const std::size_t horizon = calendar.size();
    if (horizon == 0) {
        throw InputError("generate_profile: empty calendar");
    }
    OccupancyProfile profile;
    profile.seed = seed;
    profile.active.resize(horizon);
    Rng rng(seed);
    std::uint8_t state = initial_active ? 1 : 0;
    profile.active[0] = state;
    for (std::size_t t = 0; t + 1 < horizon; ++t) {
        const TransitionMatrix& m = matrices.at(calendar.day_type(t), calendar.hour_of_day(t));
        state = rng.uniform01() < m.p[state][1] ? 1 : 0;
        profile.active[t + 1] = state;
    }
    return profile;
}

OccupancyProfile generate_profile_per_dwelling(const TransitionMatrixSet& matrices,
                                               const Calendar& calendar, std::uint64_t seed,
                                               int n_dwellings) {
    if (n_dwellings < 1) {
        throw InputError("generate_profile_per_dwelling: n_dwellings must be >= 1");
    }
    const std::size_t horizon = calendar.size();
    OccupancyProfile profile;
    profile.seed = seed;
    profile.active.assign(horizon, 0);
    profile.active_dwellings.assign(horizon, 0);
    const bool initial = default_initial_active(calendar.hour_of_day(0));
    for (int dwelling = 0; dwelling < n_dwellings; ++dwelling) {
        const OccupancyProfile one = generate_profile(
            matrices, calendar, combine_seeds(seed, static_cast<std::uint64_t>(dwelling)),
            initial);
        for (std::size_t t = 0; t < horizon; ++t) {
            profile.active_dwellings[t] =
                static_cast<std::uint16_t>(profile.active_dwellings[t] + one.active[t]);
        }
    }
    for (std::size_t t = 0; t < horizon; ++t) {
        profile.active[t] = profile.active_dwellings[t] > 0 ? 1 : 0;
    }
    return profile;
}

ActivityAverages average_activity(std::span<const OccupancyProfile> profiles,
                                  const Calendar& calendar) {
    if (profiles.empty()) {
        throw InputError("average_activity: no profiles");
    }
    const std::size_t horizon = calendar.size();
    for (const auto& p : profiles) {
        if (p.size() != horizon) {
            throw InputError("average_activity: profile length mismatch");
        }
    }
    ActivityAverages averages;
    std::array<std::uint64_t, 24> active_counts[2] = {};
    averages.samples[0] = {};
    averages.samples[1] = {};
    for (const auto& p : profiles) {
        for (std::size_t t = 0; t < horizon; ++t) {
            const auto d = static_cast<std::size_t>(calendar.day_type(t));
            const int h = calendar.hour_of_day(t);
            active_counts[d][static_cast<std::size_t>(h)] += p.active[t];
            ++averages.samples[d][static_cast<std::size_t>(h)];
        }
    }
    for (int d = 0; d < 2; ++d) {
        for (int h = 0; h < 24; ++h) {
            const std::uint64_t n = averages.samples[d][h];
            averages.mean[d][h] =
                n > 0 ? static_cast<double>(active_counts[d][h]) / static_cast<double>(n) : 0.0;
        }
    }
    return averages;
}

std::vector<double> propagate_marginals(const TransitionMatrixSet& matrices,
                                        const Calendar& calendar, bool initial_active) {
    const std::size_t horizon = calendar.size();
    std::vector<double> marginals(horizon);
    double p_active = initial_active ? 1.0 : 0.0;
    marginals[0] = p_active;
    for (std::size_t t = 0; t + 1 < horizon; ++t) {
        const TransitionMatrix& m = matrices.at(calendar.day_type(t), calendar.hour_of_day(t));
        p_active = (1.0 - p_active) * m.p[0][1] + p_active * m.p[1][1];
        marginals[t + 1] = p_active;
    }
    return marginals;
}

}  // namespace heatgen
