#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "boxlab/rational.hpp"

namespace boxlab {

// Sentinel for a box holding infinitely many points under an unbounded cap.
inline constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

struct GridScale {
    std::uint64_t m = 1;  // box width 1/m; boxes [k/m,(k+1)/m), last box closed at 1
};

// Sparse per-box counts at one scale. cap == nullopt means uncapped.
struct OccupancyProfile {
    std::uint64_t m = 1;
    std::optional<std::uint64_t> cap;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries;  // (box, count), box ascending

    std::uint64_t box_count() const { return entries.size(); }
};

struct Cell2D {
    std::uint64_t col = 0;
    std::uint64_t row = 0;
    friend auto operator<=>(const Cell2D&, const Cell2D&) = default;
};

// Index of x in the scale-m partition of [0,1]. Exact; throws outside [0,1].
std::uint64_t box_index(const Rat& x, std::uint64_t m);

// Row of a non-negative value y. Mirrors the x convention on [0,1] (top cell
// closed at 1); values above 1 continue half-open upward.
std::uint64_t row_index(const Rat& y, std::uint64_t m);

// Capped occupancy of a sorted, distinct point list.
OccupancyProfile occupancy_of_points(const std::vector<Rat>& sorted_points, std::uint64_t m,
                                     std::optional<std::uint64_t> cap);

// Distinct (column,row) cells spanned by point samples of a graph.
std::uint64_t graph_box_count(const std::vector<std::pair<Rat, Rat>>& samples, std::uint64_t m);

std::set<Cell2D> graph_cells(const std::vector<std::pair<Rat, Rat>>& samples, std::uint64_t m);

}  // namespace boxlab
