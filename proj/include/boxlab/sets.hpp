#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boxlab/grid.hpp"
#include "boxlab/rational.hpp"

namespace boxlab {

enum class SetKind { Explicit, Power, Cantor, Layered };

// Exponent of the sequence {n^-p}. Counting is exact (integer power
// comparisons) when p = u/v with small u, v; otherwise long-double logarithms
// decide boundaries, with the same +-2 adjustment window around the seed.
struct PowerExponent {
    Rat p;
    bool exact = false;     // small-rational fast path available
    std::uint64_t u = 0, v = 1;
    long double approx = 0.0L;

    static PowerExponent from_rat(const Rat& p);
};

struct LayeredParams {
    Rat a;                  // per-level block count exponent, in (0,1]
    Rat c;                  // in-block point count exponent, in [0,1)
    unsigned levels = 1;
    std::uint64_t x1 = 2;   // first gap scale
    unsigned gamma = 4;     // gap growth: x_{n+1} = x_n^gamma
};

struct LayeredBlock {
    unsigned level = 0;
    std::uint64_t index = 0;  // i, 1-based within the level
    Rat inf, sup;
    std::uint64_t size = 0;
};

struct LayeredMetadata {
    LayeredParams params;
    std::vector<BigInt> x;               // x[1..levels+2]; x[0] unused
    std::vector<std::uint64_t> block_counts;  // k_n per level, 1-based
    std::vector<std::uint64_t> block_sizes;   // points per block per level, 1-based
    std::vector<BigInt> special_scales;       // m_n per level, 1-based at [n-1]
    unsigned feasible_scales = 0;        // prefix of special_scales with a successor level
    Rat predicted_dim;                   // a
    Rat predicted_gdim;                  // max{1, 2(a+c)/(1+c)}
    std::vector<LayeredBlock> blocks;
};

struct CantorParams {
    Rat ratio;
    unsigned depth = 0;
};

// A subset of [0,1] seen through capped per-box counts: either a stored point
// list or the analytic rule for {n^-p} union {0}.
struct CountedSet {
    SetKind kind = SetKind::Explicit;
    std::vector<Rat> points;             // sorted, distinct (all kinds but Power)
    std::optional<PowerExponent> power;
    std::optional<CantorParams> cantor;
    std::optional<LayeredMetadata> layered;

    std::uint64_t cardinality() const { return points.size(); }
};

CountedSet explicit_from_points(std::vector<Rat> points);
CountedSet power_sequence(const Rat& p);
// Stored prefix {n^-p : n <= n_max}; needs integer p so points stay rational.
CountedSet power_truncation(const Rat& p, std::uint64_t n_max);
CountedSet cantor_set(const Rat& ratio, unsigned depth);
CountedSet layered_set(const LayeredParams& params);

// Largest scale at which capped counts are faithful to the intended set;
// nullopt means every scale is faithful.
std::optional<BigInt> valid_scale_range(const CountedSet& set);

// Capped counts per occupied box. cap == nullopt leaves counts uncapped (the
// power sequence then reports box 0 as kUnbounded).
OccupancyProfile occupancy(const CountedSet& set, std::uint64_t m,
                           std::optional<std::uint64_t> cap);

std::uint64_t box_count_1d(const CountedSet& set, std::uint64_t m);

// Mini-language: power:p=<r>  cantor:ratio=<r>,depth=<n>
// paper:a=<r>,c=<r>,levels=<n>,x1=<n>,gamma=<n>  file:<path>
CountedSet parse_set_spec(const std::string& spec);
CountedSet load_points_file(const std::string& path);

// Explicit stand-in for the power sequence at scale m: every point with value
// >= 1/m plus `extra` deeper tail points (so box 0 holds `extra` stored points).
CountedSet truncate_power_for_scale(const CountedSet& power, std::uint64_t m,
                                    std::uint64_t extra);

}  // namespace boxlab
