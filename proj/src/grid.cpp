#include "boxlab/grid.hpp"

namespace boxlab {

std::uint64_t box_index(const Rat& x, std::uint64_t m) {
    if (m < 1) throw DomainError("scale must be >= 1");
    if (x < 0 || x > 1) throw DomainError("point outside [0,1]");
    BigInt k = floor_mul(x, BigInt(m));
    if (k >= m) k = BigInt(m) - 1;  // x == 1 belongs to the closed last box
    return k.convert_to<std::uint64_t>();
}

std::uint64_t row_index(const Rat& y, std::uint64_t m) {
    if (m < 1) throw DomainError("scale must be >= 1");
    if (y < 0) throw DomainError("negative graph value");
    BigInt j = floor_mul(y, BigInt(m));
    if (y <= 1 && j >= m) j = BigInt(m) - 1;
    return j.convert_to<std::uint64_t>();
}

OccupancyProfile occupancy_of_points(const std::vector<Rat>& sorted_points, std::uint64_t m,
                                     std::optional<std::uint64_t> cap) {
    if (cap && *cap == 0) throw DomainError("cap must be positive");
    OccupancyProfile prof;
    prof.m = m;
    prof.cap = cap;
    std::uint64_t current = 0, count = 0;
    bool open = false;
    for (const Rat& x : sorted_points) {
        std::uint64_t k = box_index(x, m);
        if (open && k == current) {
            ++count;
        } else {
            if (open) prof.entries.emplace_back(current, cap ? std::min(count, *cap) : count);
            current = k;
            count = 1;
            open = true;
        }
    }
    if (open) prof.entries.emplace_back(current, cap ? std::min(count, *cap) : count);
    return prof;
}

std::set<Cell2D> graph_cells(const std::vector<std::pair<Rat, Rat>>& samples, std::uint64_t m) {
    std::set<Cell2D> cells;
    for (const auto& [x, y] : samples) cells.insert({box_index(x, m), row_index(y, m)});
    return cells;
}

std::uint64_t graph_box_count(const std::vector<std::pair<Rat, Rat>>& samples, std::uint64_t m) {
    return graph_cells(samples, m).size();
}

}  // namespace boxlab
