#pragma once

#include <cstdint>
#include <optional>

#include "boxlab/grid.hpp"
#include "boxlab/sets.hpp"

namespace boxlab {

// Analytic counting for A = {n^-p} union {0}. Counts come from the boundary
// function G(k) = #{n >= 1 : n^-p >= k/m}, never from point enumeration, so
// they stay exact up to the 2^40 scale ceiling.

// Largest n with n^-p >= k/m, for 1 <= k <= m. G(m) = 1, G(k) grows as k drops.
std::uint64_t power_boundary_count(const PowerExponent& p, std::uint64_t m,
                                   std::uint64_t k);

OccupancyProfile power_occupancy(const PowerExponent& p, std::uint64_t m,
                                 std::optional<std::uint64_t> cap);

std::uint64_t power_box_count(const PowerExponent& p, std::uint64_t m);

// Sum of min(cap, count) over occupied boxes; box 0 always contributes cap.
std::uint64_t power_gm_capped(const PowerExponent& p, std::uint64_t m,
                              std::uint64_t cap);

// Last n whose point lands outside box 0, i.e. n^-p >= 1/m.
std::uint64_t power_last_outside_box0(const PowerExponent& p, std::uint64_t m);

}  // namespace boxlab
