#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boxlab/sets.hpp"

namespace boxlab {

// g at scale m: per-box counts capped at m, summed over occupied boxes.
std::uint64_t gm(const CountedSet& set, std::uint64_t m);

// Same with a caller-chosen cap; nullopt sums true counts (finite sets only).
std::uint64_t gm_capped(const CountedSet& set, std::uint64_t m,
                        std::optional<std::uint64_t> cap);

std::vector<std::uint64_t> geometric_schedule(std::uint64_t base, std::uint64_t lo,
                                              std::uint64_t hi);
std::vector<std::uint64_t> explicit_schedule(std::vector<std::uint64_t> scales);
// geo:<base>:<min>:<max> or list:<m1>,<m2>,...
std::vector<std::uint64_t> parse_schedule(const std::string& spec);

enum class CounterKind { Box, Gm };

struct RatioEntry {
    std::uint64_t m = 0;
    std::uint64_t value = 0;
    double ratio = 0.0;  // log value / log m
};

struct RatioSeries {
    CounterKind counter = CounterKind::Box;
    std::vector<RatioEntry> rows;
};

RatioSeries ratio_series(const CountedSet& set,
                         const std::vector<std::uint64_t>& schedule,
                         CounterKind counter);

struct DimensionEstimate {
    double limsup_proxy = 0.0;  // max ratio over the coarse tail
    double slope = 0.0;         // least-squares log value vs log m
    std::size_t tail_count = 0;
    std::size_t slope_count = 0;
    bool degenerate = false;    // every value <= 1, log-log carries no signal
};

// slope_window = 0 selects the top decade (m >= m_max / 10).
DimensionEstimate estimate_dimension(const RatioSeries& series,
                                     double tail_fraction = 0.5,
                                     std::size_t slope_window = 0);

struct FiniteBounds {
    std::uint64_t m = 0, root = 0;
    std::uint64_t boxes = 0;   // N at scale m
    std::uint64_t g = 0;       // g at scale m
    std::uint64_t g_root = 0;  // g at scale floor(sqrt(m))
    bool lower_ok = false;     // N <= g
    bool upper_ok = false;     // g <= min(m N, m^2)
    bool root_half_ok = false; // 2 g_root >= N
    bool saturation_premise = false;  // every uncapped count >= m
    bool saturation_ok = false;       // premise implies g == m N
};

FiniteBounds finite_bounds_check(const CountedSet& set, std::uint64_t m);

}  // namespace boxlab
