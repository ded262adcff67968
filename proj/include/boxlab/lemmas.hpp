#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "boxlab/piecewise_linear.hpp"

namespace boxlab {

// Breakpoint grid for randomized trials: x ticks and value numerators both
// live on multiples of 2^-20, so every row decision is exact integer math.
inline constexpr std::uint64_t kLatticeDen = std::uint64_t(1) << 20;

enum class TrialOutcome { Pass, Skip, Fail };

// Sample abscissae t/2^20 for t = 0, stride, 2*stride, ..., 2^20.
std::vector<Rat> lattice_samples(std::uint64_t stride);

// Count claim for a small vertical shift: when 0 < g <= 1/m everywhere
// (allow_zero_shift relaxes to 0 <= g < 1/m), the summed graph on the same
// samples hits at least half the boxes the base graph hits.
TrialOutcome check_bump_half_count(const PiecewiseLinear& f, const PiecewiseLinear& g,
                                   const std::vector<Rat>& samples, std::uint64_t m,
                                   bool allow_zero_shift);

// Overlay claim: with n_f = max rows of f per column, the summed graph hits
// at least the g-graph count divided by 2 n_f. Needs f, g <= 1/2.
TrialOutcome check_overlay_column_quotient(const PiecewiseLinear& f,
                                           const PiecewiseLinear& g,
                                           const std::vector<Rat>& samples,
                                           std::uint64_t m);

// Slope cap claim: |slope| <= k everywhere bounds every column to k+1 rows.
TrialOutcome check_slope_row_cap(const PiecewiseLinear& f, std::uint64_t slope_bound,
                                 std::uint64_t m);

struct SuiteReport {
    std::string suite;
    std::uint64_t trials = 0;
    std::uint64_t passes = 0;
    std::uint64_t skips = 0;
    std::uint64_t failures = 0;
    std::uint64_t seed = 0;
};

// Randomized trials of the three claims (the bump claim in both its strict and
// relaxed form), deterministic per (seed, trials). cross_check re-runs a
// sample of trials through the rational reference path and throws on any
// disagreement with the integer fast path.
std::vector<SuiteReport> run_lemma_suites(std::uint64_t seed, std::uint32_t trials,
                                          bool cross_check = false);

}  // namespace boxlab
