#pragma once

#include <cstdint>

#include "boxlab/lemmas.hpp"
#include "boxlab/rational.hpp"
#include "boxlab/sets.hpp"

namespace boxlab {

// Deterministic companions to the randomized lemma suites; all three reuse
// SuiteReport. `skips` counts trials whose precondition failed before the
// claim could be tested, `failures` counts violated claims.

// Sandwich / root-scale / saturation checks over a stock family of sets and a
// geometric scale schedule. Deterministic; `seed` is echoed into the report.
SuiteReport run_bounds_suite(std::uint64_t seed = 0);

// Compares the analytic power-sequence counters against the brute-force
// enumeration oracle across a scale grid, for capped and uncapped profiles,
// and against the closed-form predictions where those are calibrated.
SuiteReport run_power_crosscheck(const Rat& p);

// Structural checks of the layered example family: block anchors and widths,
// per-level block counts, the cardinality ledger, and the capped-count lower
// bound with dimension-ratio agreement at the distinguished scales.
SuiteReport run_layered_suite(const LayeredParams& params);

}  // namespace boxlab
