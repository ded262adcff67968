#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "boxlab/piecewise_linear.hpp"
#include "boxlab/sets.hpp"

namespace boxlab {

struct SelectedBox {
    std::uint64_t box = 0;
    std::vector<Rat> points;  // ascending; the cap smallest points of the box
};

// Per occupied box, the min(cap, count) smallest stored points. The power
// sequence is first replaced by its prefix down to 1/m plus cap tail points,
// so box 0 also hands back exactly cap representatives.
std::vector<SelectedBox> select_points(const CountedSet& set, std::uint64_t m,
                                       std::uint64_t cap);

// Heights (j + 1/2)/m, j = 0..count-1: row j exactly, one strip per point.
// Throws CapacityError when count > h*m.
std::vector<Rat> assign_heights(std::uint64_t count, std::uint64_t m, const Rat& h);

struct Witness {
    std::uint64_t m = 0;
    Rat height_cap;                            // h
    std::vector<SelectedBox> selected;
    std::vector<std::pair<Rat, Rat>> samples;  // (x, height), x ascending
    PiecewiseLinear function;
    std::uint64_t bound = 0;     // sum over boxes of selected counts
    std::uint64_t achieved = 0;  // graph boxes hit by the samples at scale m
};

// Polygonal witness below height h whose graph hits at least
// sum_k min(floor(h m), count_k) boxes at scale m.
Witness build_witness(const CountedSet& set, std::uint64_t m, const Rat& h);

struct SumCounts {
    std::uint64_t count_f = 0;
    std::uint64_t count_g = 0;
    std::uint64_t count_sum = 0;
};

// Graph box counts of f, g and f+g on common samples at scale m.
SumCounts shifted_sum_count(const PiecewiseLinear& f, const PiecewiseLinear& g,
                            const std::vector<Rat>& samples, std::uint64_t m);

struct StageRecord {
    unsigned stage = 0;            // 1-based
    std::uint64_t m = 0;           // chosen scale
    Rat height_cap;                // per-stage height budget
    Rat delta;                     // 1/m
    Rat sup_norm;                  // of this stage's bump
    std::uint64_t bound = 0;
    std::uint64_t achieved = 0;
    std::uint64_t count_stack = 0;  // graph boxes of the partial sum on the common samples
    std::uint64_t count_final = 0;  // same for the full sum
    std::uint64_t rows_prev = 0;    // max column rows of the previous partial sum
    double ratio = 0.0;             // log count_stack / log m
    bool norm_ok = false;           // sup_norm < height_cap
    bool carry_ok = false;          // 2 rows_prev count_stack >= bound
    bool final_ok = false;          // 2 count_final >= count_stack
    bool tail_ok = false;           // later sup norms sum below delta
};

struct StackResult {
    std::vector<StageRecord> stages;
    PiecewiseLinear function;   // sum of all stage bumps
    std::vector<Rat> samples;   // union of all selected points
    Rat total_norm;
    bool total_norm_ok = false;  // total_norm <= 1
};

// Stage i gets height budget min over earlier stages of delta_j / 2^(i-j),
// floored by 1/2^i, and picks from the schedule the scale past max(m_{i-1}, i)
// with the best log g / log m. Records carry the soundness checks.
StackResult iterate_witness_stack(const CountedSet& set, unsigned stage_count,
                                  const std::vector<std::uint64_t>& schedule);

}  // namespace boxlab
