#include "boxlab/piecewise_linear.hpp"

#include <algorithm>

namespace boxlab {

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<Rat, Rat>> breakpoints)
    : pts_(std::move(breakpoints)) {
    if (pts_.empty()) throw DomainError("polygonal function needs at least one breakpoint");
    for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (pts_[i].first < 0 || pts_[i].first > 1)
            throw DomainError("breakpoint outside [0,1]");
        if (pts_[i].second < 0) throw DomainError("negative breakpoint value");
        if (i > 0 && !(pts_[i - 1].first < pts_[i].first))
            throw DomainError("breakpoint abscissae must strictly increase");
    }
}

PiecewiseLinear PiecewiseLinear::constant(const Rat& value) {
    return PiecewiseLinear({{Rat(0), value}});
}

Rat PiecewiseLinear::eval(const Rat& x) const {
    if (x <= pts_.front().first) return pts_.front().second;
    if (x >= pts_.back().first) return pts_.back().second;
    // last index with pts_[i].x <= x
    std::size_t lo = 0, hi = pts_.size() - 1;
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (pts_[mid].first <= x)
            lo = mid;
        else
            hi = mid;
    }
    const auto& [x0, y0] = pts_[lo];
    const auto& [x1, y1] = pts_[lo + 1];
    if (x == x0) return y0;
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

Rat PiecewiseLinear::sup_norm() const {
    Rat best = 0;
    for (const auto& [x, y] : pts_) best = std::max(best, y);
    return best;
}

PiecewiseLinear operator+(const PiecewiseLinear& a, const PiecewiseLinear& b) {
    std::vector<Rat> xs;
    xs.reserve(a.pts_.size() + b.pts_.size());
    for (const auto& [x, y] : a.pts_) xs.push_back(x);
    for (const auto& [x, y] : b.pts_) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<std::pair<Rat, Rat>> sum;
    sum.reserve(xs.size());
    for (const Rat& x : xs) sum.emplace_back(x, a.eval(x) + b.eval(x));
    return PiecewiseLinear(std::move(sum));
}

namespace {

struct ColumnRange {
    Rat inf, sup;
    bool inf_attained = true;
    bool sup_attained = true;
};

// Extrema of f over column [left,right), or [left,right] when closed_right.
// Candidate nodes are the column ends and interior breakpoints; on each linear
// piece the extrema sit at nodes. A value achieved only at an excluded right
// endpoint counts as unattained.
ColumnRange column_range(const PiecewiseLinear& f, const Rat& left, const Rat& right,
                         bool closed_right) {
    const auto& bps = f.breakpoints();
    std::vector<std::pair<Rat, bool>> nodes;  // (value, lies inside the column)
    nodes.emplace_back(f.eval(left), true);
    auto it = std::lower_bound(bps.begin(), bps.end(), left,
                               [](const std::pair<Rat, Rat>& bp, const Rat& v) { return bp.first <= v; });
    for (; it != bps.end() && it->first < right; ++it) nodes.emplace_back(it->second, true);
    nodes.emplace_back(f.eval(right), closed_right);

    ColumnRange r;
    r.inf = r.sup = nodes.front().first;
    for (const auto& [v, inside] : nodes) {
        if (v < r.inf) r.inf = v;
        if (v > r.sup) r.sup = v;
    }
    r.inf_attained = false;
    r.sup_attained = false;
    for (const auto& [v, inside] : nodes) {
        if (!inside) continue;
        if (v == r.inf) r.inf_attained = true;
        if (v == r.sup) r.sup_attained = true;
    }
    return r;
}

}  // namespace

std::vector<std::uint64_t> column_profile(const PiecewiseLinear& f, std::uint64_t m) {
    if (m < 1) throw DomainError("scale must be >= 1");
    std::vector<std::uint64_t> counts;
    counts.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        Rat left = Rat(BigInt(i), BigInt(m));
        Rat right = Rat(BigInt(i + 1), BigInt(m));
        bool closed = (i == m - 1);
        ColumnRange r = column_range(f, left, right, closed);

        BigInt bottom;
        if (r.inf_attained) {
            bottom = BigInt(row_index(r.inf, m));
        } else {
            bottom = floor_mul(r.inf, BigInt(m));  // values just above the inf
        }
        BigInt top;
        if (r.sup_attained) {
            top = BigInt(row_index(r.sup, m));
        } else {
            Rat scaled = r.sup * m;
            BigInt fl = rat_floor(scaled);
            top = (Rat(fl) == scaled) ? fl - 1 : fl;  // values just below the sup
        }
        counts.push_back((top - bottom + 1).convert_to<std::uint64_t>());
    }
    return counts;
}

}  // namespace boxlab
