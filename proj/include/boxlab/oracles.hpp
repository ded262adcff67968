#pragma once

#include <cstdint>
#include <optional>

#include "boxlab/grid.hpp"
#include "boxlab/sets.hpp"

namespace boxlab {

// Slow counters coded independently of the main paths, for cross-checking.
// Stored points are indexed one by one; the power sequence is enumerated
// point by point until it falls below 1/m, within a 2^28-step budget.
OccupancyProfile brute_force_occupancy(const CountedSet& set, std::uint64_t m,
                                       std::optional<std::uint64_t> cap);

std::uint64_t brute_force_box_count(const CountedSet& set, std::uint64_t m);
std::uint64_t brute_force_gm(const CountedSet& set, std::uint64_t m);

// Textbook closed forms for {n^-p} union {0}: split the sequence at the point
// where consecutive gaps pass the box width, count the head by points and the
// tail by boxes. Off from the true counts by a small calibrated slack.
std::uint64_t power_box_count_closed(const Rat& p, std::uint64_t m);
std::uint64_t power_gm_closed(const Rat& p, std::uint64_t m);

}  // namespace boxlab
