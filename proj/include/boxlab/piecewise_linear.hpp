#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "boxlab/grid.hpp"
#include "boxlab/rational.hpp"

namespace boxlab {

// Polygonal function given by breakpoints with strictly increasing x in [0,1]
// and values >= 0. Between breakpoints: linear interpolation; outside the
// breakpoint span: constant extension.
class PiecewiseLinear {
  public:
    PiecewiseLinear() = default;
    explicit PiecewiseLinear(std::vector<std::pair<Rat, Rat>> breakpoints);

    static PiecewiseLinear constant(const Rat& value);

    const std::vector<std::pair<Rat, Rat>>& breakpoints() const { return pts_; }

    Rat eval(const Rat& x) const;

    // Max of |value|; attained at a breakpoint (or the constant extension).
    Rat sup_norm() const;

    friend PiecewiseLinear operator+(const PiecewiseLinear& a, const PiecewiseLinear& b);

  private:
    std::vector<std::pair<Rat, Rat>> pts_;
};

// Exact per-column row counts of the graph over [0,1] at scale m. Column i
// spans [i/m,(i+1)/m); the last column is closed at 1. A supremum or infimum
// attained only at an excluded column endpoint contributes no extra row.
std::vector<std::uint64_t> column_profile(const PiecewiseLinear& f, std::uint64_t m);

}  // namespace boxlab
