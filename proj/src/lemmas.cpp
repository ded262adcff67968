#include "boxlab/lemmas.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "boxlab/grid.hpp"

namespace boxlab {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using i128 = __int128;

constexpr u64 kScales[] = {8, 64, 512};
constexpr u64 kSlopeBounds[] = {0, 1, 2, 4, 8};
constexpr u64 kSampleStride = 1024;  // 1025 samples per trial

u64 splitmix64(u64 x) {
    x += 0x9E3779B97F4A7C15ULL;
    u64 z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct TrialRng {
    std::mt19937_64 eng;
    TrialRng(u64 seed, u64 suite_tag, u64 trial) {
        eng.seed(splitmix64(seed ^ splitmix64(suite_tag * 0x517CC1B727220A95ULL + trial)));
    }
    u64 next() { return eng(); }
    u64 below(u64 n) { return n == 0 ? 0 : next() % n; }
};

// x ticks and value numerators over 2^20
struct LatticePL {
    std::vector<std::pair<i64, i64>> pts;
};

PiecewiseLinear to_piecewise(const LatticePL& f) {
    std::vector<std::pair<Rat, Rat>> bps;
    bps.reserve(f.pts.size());
    for (const auto& [x, y] : f.pts)
        bps.emplace_back(make_rat(x, static_cast<long long>(kLatticeDen)),
                         make_rat(y, static_cast<long long>(kLatticeDen)));
    return PiecewiseLinear(std::move(bps));
}

LatticePL random_lattice(TrialRng& rng, u64 max_num, unsigned bp_min, unsigned bp_max) {
    unsigned b = bp_min + static_cast<unsigned>(rng.below(bp_max - bp_min + 1));
    std::set<i64> xs;
    while (xs.size() < b) xs.insert(static_cast<i64>(rng.below(kLatticeDen + 1)));
    LatticePL f;
    f.pts.reserve(b);
    for (i64 x : xs) f.pts.emplace_back(x, static_cast<i64>(rng.below(max_num + 1)));
    return f;
}

// Shift polygon with values w * (1/(m 2^10)): always < 1/m, positive unless
// allow_zero. Scales here divide 2^10 so the numerators stay on the lattice.
LatticePL random_shift(TrialRng& rng, u64 m, bool allow_zero, unsigned bp_min,
                       unsigned bp_max) {
    const i64 factor = static_cast<i64>(kSampleStride / m);
    unsigned b = bp_min + static_cast<unsigned>(rng.below(bp_max - bp_min + 1));
    std::set<i64> xs;
    while (xs.size() < b) xs.insert(static_cast<i64>(rng.below(kLatticeDen + 1)));
    LatticePL g;
    g.pts.reserve(b);
    for (i64 x : xs) {
        i64 w = allow_zero ? static_cast<i64>(rng.below(1024))
                           : 1 + static_cast<i64>(rng.below(1023));
        g.pts.emplace_back(x, w * factor);
    }
    return g;
}

LatticePL random_slope_bounded(TrialRng& rng, u64 k, unsigned bp_min, unsigned bp_max) {
    unsigned b = bp_min + static_cast<unsigned>(rng.below(bp_max - bp_min + 1));
    std::set<i64> xs;
    while (xs.size() < b) xs.insert(static_cast<i64>(rng.below(kLatticeDen + 1)));
    LatticePL f;
    f.pts.reserve(b);
    i64 y = static_cast<i64>(rng.below(kLatticeDen + 1));
    i64 prev_x = 0;
    bool first = true;
    for (i64 x : xs) {
        if (!first) {
            i64 span = static_cast<i64>(k) * (x - prev_x);
            i64 step = static_cast<i64>(rng.below(2 * static_cast<u64>(span) + 1)) - span;
            y = std::clamp<i64>(y + step, 0, static_cast<i64>(kLatticeDen));
        }
        f.pts.emplace_back(x, y);
        prev_x = x;
        first = false;
    }
    return f;
}

// value at tick t as an exact fraction num/den
struct Frac {
    i128 num;
    i128 den;  // > 0
};

Frac eval_lat(const LatticePL& f, i64 t) {
    const auto& p = f.pts;
    if (t <= p.front().first) return {p.front().second, static_cast<i128>(kLatticeDen)};
    if (t >= p.back().first) return {p.back().second, static_cast<i128>(kLatticeDen)};
    std::size_t lo = 0, hi = p.size() - 1;
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (p[mid].first <= t)
            lo = mid;
        else
            hi = mid;
    }
    i64 x0 = p[lo].first, y0 = p[lo].second;
    i64 x1 = p[lo + 1].first, y1 = p[lo + 1].second;
    i128 dx = x1 - x0;
    i128 num = static_cast<i128>(y0) * dx + static_cast<i128>(y1 - y0) * (t - x0);
    return {num, dx * static_cast<i128>(kLatticeDen)};
}

Frac add(const Frac& a, const Frac& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}

bool less(const Frac& a, const Frac& b) { return a.num * b.den < b.num * a.den; }
bool equal(const Frac& a, const Frac& b) { return a.num * b.den == b.num * a.den; }

// mirrors row_index: floor(v m), clamped to m-1 only when v <= 1
u64 row_of(const Frac& v, u64 m) {
    i128 j = v.num * static_cast<i128>(m) / v.den;
    if (v.num <= v.den && j >= static_cast<i128>(m)) j = m - 1;
    return static_cast<u64>(j);
}

u64 col_of(i64 t, u64 m) {
    u64 c = static_cast<u64>(t) * m / kLatticeDen;
    return c >= m ? m - 1 : c;
}

u64 count_cells(const std::vector<std::pair<u64, u64>>& cells) {
    std::set<std::pair<u64, u64>> s(cells.begin(), cells.end());
    return s.size();
}

// max rows over columns, lattice mirror of column_profile (m must divide 2^20)
u64 lattice_max_rows(const LatticePL& f, u64 m) {
    const i64 w = static_cast<i64>(kLatticeDen / m);
    const auto& bps = f.pts;
    std::size_t next_bp = 0;
    u64 best = 0;
    for (u64 c = 0; c < m; ++c) {
        i64 left = static_cast<i64>(c) * w;
        i64 right = left + w;
        bool closed = (c == m - 1);

        std::vector<std::pair<Frac, bool>> nodes;  // (value, inside)
        nodes.emplace_back(eval_lat(f, left), true);
        while (next_bp < bps.size() && bps[next_bp].first <= left) ++next_bp;
        for (std::size_t i = next_bp; i < bps.size() && bps[i].first < right; ++i)
            nodes.emplace_back(Frac{bps[i].second, static_cast<i128>(kLatticeDen)}, true);
        nodes.emplace_back(eval_lat(f, right), closed);

        Frac inf = nodes.front().first, sup = nodes.front().first;
        for (const auto& [v, inside] : nodes) {
            if (less(v, inf)) inf = v;
            if (less(sup, v)) sup = v;
        }
        bool inf_att = false, sup_att = false;
        for (const auto& [v, inside] : nodes) {
            if (!inside) continue;
            if (equal(v, inf)) inf_att = true;
            if (equal(v, sup)) sup_att = true;
        }

        i128 bottom;
        if (inf_att) {
            bottom = static_cast<i128>(row_of(inf, m));
        } else {
            bottom = inf.num * static_cast<i128>(m) / inf.den;
        }
        i128 top;
        if (sup_att) {
            top = static_cast<i128>(row_of(sup, m));
        } else {
            i128 scaled_num = sup.num * static_cast<i128>(m);
            i128 fl = scaled_num / sup.den;
            top = (fl * sup.den == scaled_num) ? fl - 1 : fl;
        }
        best = std::max(best, static_cast<u64>(top - bottom + 1));
    }
    return best;
}

struct CellCounts {
    u64 f = 0, g = 0, sum = 0;
};

CellCounts sampled_cells(const LatticePL& f, const LatticePL& g, u64 m) {
    std::vector<std::pair<u64, u64>> cf, cg, cs;
    cf.reserve(kLatticeDen / kSampleStride + 1);
    cg.reserve(cf.capacity());
    cs.reserve(cf.capacity());
    for (i64 t = 0; t <= static_cast<i64>(kLatticeDen); t += kSampleStride) {
        u64 col = col_of(t, m);
        Frac vf = eval_lat(f, t), vg = eval_lat(g, t);
        cf.emplace_back(col, row_of(vf, m));
        cg.emplace_back(col, row_of(vg, m));
        cs.emplace_back(col, row_of(add(vf, vg), m));
    }
    return {count_cells(cf), count_cells(cg), count_cells(cs)};
}

// shift range check on samples: strict needs 0 < g <= 1/m, relaxed 0 <= g < 1/m
bool shift_in_range(const LatticePL& g, u64 m, bool allow_zero) {
    for (i64 t = 0; t <= static_cast<i64>(kLatticeDen); t += kSampleStride) {
        Frac v = eval_lat(g, t);
        i128 scaled = v.num * static_cast<i128>(m);
        if (allow_zero) {
            if (v.num < 0 || scaled >= v.den) return false;
        } else {
            if (v.num <= 0 || scaled > v.den) return false;
        }
    }
    return true;
}

// ---- rational reference path (shared with the public check_* functions) ----

std::vector<std::pair<u64, u64>> rat_cells(const PiecewiseLinear& f,
                                           const std::vector<Rat>& samples, u64 m) {
    std::vector<std::pair<u64, u64>> cells;
    cells.reserve(samples.size());
    for (const Rat& x : samples) cells.emplace_back(box_index(x, m), row_index(f.eval(x), m));
    return cells;
}

u64 max_rows(const PiecewiseLinear& f, u64 m) {
    u64 best = 0;
    for (u64 rows : column_profile(f, m)) best = std::max(best, rows);
    return best;
}

}  // namespace

std::vector<Rat> lattice_samples(std::uint64_t stride) {
    if (stride == 0 || kLatticeDen % stride != 0)
        throw DomainError("stride must divide the lattice");
    std::vector<Rat> xs;
    xs.reserve(kLatticeDen / stride + 1);
    for (u64 t = 0; t <= kLatticeDen; t += stride)
        xs.push_back(make_rat(static_cast<long long>(t), static_cast<long long>(kLatticeDen)));
    return xs;
}

TrialOutcome check_bump_half_count(const PiecewiseLinear& f, const PiecewiseLinear& g,
                                   const std::vector<Rat>& samples, std::uint64_t m,
                                   bool allow_zero_shift) {
    if (m == 0) throw DomainError("scale must be at least 1");
    Rat delta = make_rat(1, static_cast<long long>(m));
    std::vector<std::pair<u64, u64>> cf, cs;
    cf.reserve(samples.size());
    cs.reserve(samples.size());
    for (const Rat& x : samples) {
        Rat vf = f.eval(x), vg = g.eval(x);
        if (allow_zero_shift) {
            if (vg < 0 || vg >= delta) return TrialOutcome::Skip;
        } else {
            if (vg <= 0 || vg > delta) return TrialOutcome::Skip;
        }
        u64 col = box_index(x, m);
        cf.emplace_back(col, row_index(vf, m));
        cs.emplace_back(col, row_index(vf + vg, m));
    }
    u64 nf = count_cells(cf), ns = count_cells(cs);
    return ns >= (nf + 1) / 2 ? TrialOutcome::Pass : TrialOutcome::Fail;
}

TrialOutcome check_overlay_column_quotient(const PiecewiseLinear& f,
                                           const PiecewiseLinear& g,
                                           const std::vector<Rat>& samples,
                                           std::uint64_t m) {
    if (m == 0) throw DomainError("scale must be at least 1");
    Rat half = make_rat(1, 2);
    for (const Rat& x : samples)
        if (f.eval(x) > half || g.eval(x) > half) return TrialOutcome::Skip;
    std::vector<std::pair<u64, u64>> cg, cs;
    cg.reserve(samples.size());
    cs.reserve(samples.size());
    for (const Rat& x : samples) {
        u64 col = box_index(x, m);
        Rat vf = f.eval(x), vg = g.eval(x);
        cg.emplace_back(col, row_index(vg, m));
        cs.emplace_back(col, row_index(vf + vg, m));
    }
    u64 nf_rows = max_rows(f, m);
    u64 ng = count_cells(cg), ns = count_cells(cs);
    return 2 * nf_rows * ns >= ng ? TrialOutcome::Pass : TrialOutcome::Fail;
}

TrialOutcome check_slope_row_cap(const PiecewiseLinear& f, std::uint64_t slope_bound,
                                 std::uint64_t m) {
    if (m == 0) throw DomainError("scale must be at least 1");
    const auto& bps = f.breakpoints();
    for (std::size_t i = 1; i < bps.size(); ++i) {
        Rat dy = bps[i].second - bps[i - 1].second;
        if (dy < 0) dy = -dy;
        if (dy > Rat(slope_bound) * (bps[i].first - bps[i - 1].first))
            return TrialOutcome::Skip;
    }
    return max_rows(f, m) <= slope_bound + 1 ? TrialOutcome::Pass : TrialOutcome::Fail;
}

std::vector<SuiteReport> run_lemma_suites(std::uint64_t seed, std::uint32_t trials,
                                          bool cross_check) {
    std::vector<SuiteReport> reports;
    const std::vector<Rat> rat_xs = cross_check ? lattice_samples(kSampleStride) : std::vector<Rat>{};

    auto run_suite = [&](const std::string& label, u64 tag, auto&& trial_fn) {
        SuiteReport rep;
        rep.suite = label;
        rep.seed = seed;
        rep.trials = trials;
        for (u64 t = 0; t < trials; ++t) {
            TrialRng rng(seed, tag, t);
            TrialOutcome out = trial_fn(rng, t);
            switch (out) {
                case TrialOutcome::Pass: ++rep.passes; break;
                case TrialOutcome::Skip: ++rep.skips; break;
                case TrialOutcome::Fail: ++rep.failures; break;
            }
        }
        reports.push_back(std::move(rep));
    };

    auto bump_trial = [&](bool weak) {
        return [&, weak](TrialRng& rng, u64 t) {
            u64 m = kScales[rng.below(3)];
            LatticePL f = random_lattice(rng, kLatticeDen - 1, 1, 24);
            LatticePL g = random_shift(rng, m, weak, 1, 24);
            if (!shift_in_range(g, m, weak)) return TrialOutcome::Skip;
            CellCounts cc = sampled_cells(f, g, m);
            TrialOutcome out =
                cc.sum >= (cc.f + 1) / 2 ? TrialOutcome::Pass : TrialOutcome::Fail;
            if (cross_check && t % 37 == 0) {
                TrialOutcome ref = check_bump_half_count(to_piecewise(f), to_piecewise(g),
                                                         rat_xs, m, weak);
                if (ref != out) throw std::logic_error("bump fast path disagrees with reference");
            }
            return out;
        };
    };

    run_suite("bump_half_count", 1, bump_trial(false));
    run_suite("bump_half_count_weak", 2, bump_trial(true));

    run_suite("overlay_column_quotient", 3, [&](TrialRng& rng, u64 t) {
        u64 m = kScales[rng.below(3)];
        LatticePL f = random_lattice(rng, kLatticeDen / 2 - 1, 1, 24);
        LatticePL g = random_lattice(rng, kLatticeDen / 2 - 1, 1, 24);
        CellCounts cc = sampled_cells(f, g, m);
        u64 nf = lattice_max_rows(f, m);
        u64 ng = lattice_max_rows(g, m);
        bool fwd = 2 * nf * cc.sum >= cc.g;
        bool bwd = 2 * ng * cc.sum >= cc.f;
        TrialOutcome out = fwd && bwd ? TrialOutcome::Pass : TrialOutcome::Fail;
        if (cross_check && t % 37 == 0) {
            TrialOutcome ref =
                check_overlay_column_quotient(to_piecewise(f), to_piecewise(g), rat_xs, m);
            TrialOutcome fwd_only = fwd ? TrialOutcome::Pass : TrialOutcome::Fail;
            if (ref != fwd_only)
                throw std::logic_error("overlay fast path disagrees with reference");
        }
        return out;
    });

    run_suite("slope_row_cap", 4, [&](TrialRng& rng, u64 t) {
        u64 k = kSlopeBounds[rng.below(5)];
        u64 m = kScales[rng.below(3)];
        LatticePL f = random_slope_bounded(rng, k, 2, 24);
        for (std::size_t i = 1; i < f.pts.size(); ++i) {
            i64 dy = f.pts[i].second - f.pts[i - 1].second;
            if (dy < 0) dy = -dy;
            if (dy > static_cast<i64>(k) * (f.pts[i].first - f.pts[i - 1].first))
                return TrialOutcome::Skip;
        }
        TrialOutcome out = lattice_max_rows(f, m) <= k + 1 ? TrialOutcome::Pass
                                                           : TrialOutcome::Fail;
        if (cross_check && t % 37 == 0) {
            TrialOutcome ref = check_slope_row_cap(to_piecewise(f), k, m);
            if (ref != out) throw std::logic_error("slope fast path disagrees with reference");
        }
        return out;
    });

    return reports;
}

}  // namespace boxlab
