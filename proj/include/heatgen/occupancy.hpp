#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "heatgen/calendar.hpp"
#include "heatgen/rng.hpp"

namespace heatgen {

// Row-stochastic 2x2 transition matrix; state 0 = inactive, 1 = active.
// p[s][s2] is the probability of state s2 at t+1 given state s at t.
struct TransitionMatrix {
    double p[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
};

// 48 matrices: one per (day type, hour of day). The matrix indexed by hour h
// governs the transition from hour h to hour h+1.
class TransitionMatrixSet {
public:
    // matrices.csv: day_type,hour,p_ii,p_ia,p_ai,p_aa
    static TransitionMatrixSet parse(const std::string& path);
    static TransitionMatrixSet from_matrices(
        const std::array<TransitionMatrix, 24>& weekday,
        const std::array<TransitionMatrix, 24>& weekend);

    // Builds matrices whose marginal activity share follows target_share for
    // the given per-hour mobility: with probability mobility the occupant
    // re-draws its state (active with probability q), otherwise it keeps the
    // current one. q is solved per hour so that iterating the chain from the
    // target marginal at hour h reproduces the target at hour h+1.
    static TransitionMatrixSet calibrate(const std::array<double, 24>& weekday_share,
                                         const std::array<double, 24>& weekend_share,
                                         const std::array<double, 24>& weekday_mobility,
                                         const std::array<double, 24>& weekend_mobility);

    const TransitionMatrix& at(DayType day_type, int hour) const {
        return matrices_[static_cast<std::size_t>(day_type)][static_cast<std::size_t>(hour)];
    }

    void write(std::ostream& out) const;

private:
    void validate() const;

    TransitionMatrix matrices_[2][24];
};

struct OccupancyProfile {
    std::string building_id;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> active;            // A(t), one byte per hour
    std::vector<std::uint16_t> active_dwellings; // per-dwelling mode only

    std::size_t size() const { return active.size(); }
};

// Default initial state: active when the first hour of day lies in [7, 22].
bool default_initial_active(int first_hour_of_day);

// Generates one seeded profile. values[0] = initial_active; values[t+1] is
// sampled from row values[t] of the matrix for (day_type(t), hour(t)).
// Identical inputs give bit-identical profiles.
OccupancyProfile generate_profile(const TransitionMatrixSet& matrices, const Calendar& calendar,
                                  std::uint64_t seed, bool initial_active);

// Per-dwelling variant: one chain per dwelling, building active when any
// dwelling is; the active-dwelling count is retained for gains scaling.
OccupancyProfile generate_profile_per_dwelling(const TransitionMatrixSet& matrices,
                                               const Calendar& calendar, std::uint64_t seed,
                                               int n_dwellings);

// Mean activity per (day type, hour of day) bucket across profiles and weeks.
struct ActivityAverages {
    std::array<double, 24> mean[2];             // [day_type][hour]
    std::array<std::uint64_t, 24> samples[2];
};

ActivityAverages average_activity(std::span<const OccupancyProfile> profiles,
                                  const Calendar& calendar);

// Exact chain marginals: propagates the activity probability through the
// matrix sequence of the calendar, starting from a deterministic initial
// state. Element t is P(A(t) = active).
std::vector<double> propagate_marginals(const TransitionMatrixSet& matrices,
                                        const Calendar& calendar, bool initial_active);

}  // namespace heatgen
