#include "boxlab/power_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "boxlab/rational.hpp"

namespace boxlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kScaleCeiling = u64(1) << 40;
constexpr u64 kCountCeiling = u64(1) << 62;
constexpr u64 kEnumGuard = u64(1) << 27;
constexpr u64 kProfileEntryGuard = u64(1) << 26;

void check_scale(u64 m) {
    if (m == 0) throw DomainError("scale must be at least 1");
    if (m > kScaleCeiling)
        throw ResolutionError("scale " + std::to_string(m) +
                              " exceeds the faithful range for the power sequence (max " +
                              std::to_string(kScaleCeiling) + ")");
}

bool mul_overflow(u128 a, u128 b, u128& out) {
    if (a != 0 && b > ~u128(0) / a) return true;
    out = a * b;
    return false;
}

// n^e, nullopt on overflow
std::optional<u128> pow_u128(u128 n, u64 e) {
    u128 r = 1;
    u128 base = n;
    while (e) {
        if (e & 1) {
            if (mul_overflow(r, base, r)) return std::nullopt;
        }
        e >>= 1;
        if (e && mul_overflow(base, base, base)) return std::nullopt;
    }
    return r;
}

// Decides a^x * b^y <= m^y without rounding. The u128 route covers every
// scale where m^y fits; a left-side overflow then already means "greater".
struct ExactCmp {
    u64 x, y;
    BigInt my_big;
    std::optional<u128> my128;

    ExactCmp(u64 u, u64 v, u64 m) : x(u), y(v) {
        my128 = pow_u128(m, v);
        if (!my128) my_big = ipow(BigInt(m), static_cast<unsigned>(v));
    }

    bool le(u64 a, u64 b) const {
        if (my128) {
            auto ax = pow_u128(a, x);
            if (!ax) return false;
            auto by = pow_u128(b, y);
            if (!by) return false;
            u128 lhs;
            if (mul_overflow(*ax, *by, lhs)) return false;
            return lhs <= *my128;
        }
        return ipow(BigInt(a), static_cast<unsigned>(x)) *
                   ipow(BigInt(b), static_cast<unsigned>(y)) <=
               my_big;
    }
};

// Largest t with pred(t), located from a floating seed. pred(0) must hold and
// pred must be monotone (true then false). The seed only positions the start;
// the answer comes from pred alone.
template <class Pred>
u64 largest_true(long double seed, Pred pred) {
    u64 t = 0;
    if (seed > 8.0L) {
        long double start = seed - std::max(8.0L, seed * 1e-12L);
        if (start >= static_cast<long double>(kCountCeiling))
            throw BudgetError("count exceeds the 2^62 ceiling");
        t = static_cast<u64>(start);
        while (t > 0 && !pred(t)) --t;
    }
    while (pred(t + 1)) {
        ++t;
        if (t >= kCountCeiling) throw BudgetError("count exceeds the 2^62 ceiling");
    }
    return t;
}

struct Ctx {
    const PowerExponent& p;
    u64 m;
    std::optional<ExactCmp> ex;  // predicate n^u * k^v <= m^v when p = u/v
    long double logm;

    Ctx(const PowerExponent& pp, u64 mm) : p(pp), m(mm) {
        logm = logl(static_cast<long double>(mm));
        if (p.exact) ex.emplace(p.u, p.v, mm);
    }

    long double value(u64 n) const {
        return expl(-p.approx * logl(static_cast<long double>(n)));
    }

    // G(k) = #{n >= 1 : n^-p >= k/m}, the largest n with n^u * k^v <= m^v.
    u64 G(u64 k) const {
        if (k > m) return 0;
        long double seed =
            expl((logm - logl(static_cast<long double>(k))) / p.approx);
        if (ex) {
            return largest_true(seed, [&](u64 n) { return ex->le(n, k); });
        }
        long double rhs = logm - logl(static_cast<long double>(k));
        return largest_true(seed, [&](u64 n) {
            return p.approx * logl(static_cast<long double>(n)) <= rhs + 1e-18L;
        });
    }

    // floor(m * n^-p), the unclamped box scale of the n-th point.
    u64 point_scale(u64 n) const {
        long double seed = static_cast<long double>(m) * value(n);
        if (ex) {
            // s <= m * n^-p  iff  n^u * s^v <= m^v
            return largest_true(seed, [&](u64 s) { return ex->le(n, s); });
        }
        long double rhs = logm - p.approx * logl(static_cast<long double>(n));
        return largest_true(seed, [&](u64 s) {
            return logl(static_cast<long double>(s)) <= rhs + 1e-18L;
        });
    }
};

// Last n kept as an individually indexed point: consecutive gaps are strictly
// decreasing, and past this prefix every gap is certified < 1/m, so the tail
// walks down through every box without skipping one.
u64 sparse_limit(const Ctx& c) {
    long double thr = (1.0L - 1e-9L) / static_cast<long double>(c.m);
    u64 n = 0;
    long double cur = 1.0L;  // value(1)
    while (true) {
        long double nxt = c.value(n + 2);
        if (cur - nxt < thr) break;
        cur = nxt;
        ++n;
        if (n > kEnumGuard) throw BudgetError("sparse prefix exceeds the enumeration budget");
    }
    return n;
}

u64 narrow_count(u128 v) {
    if (v >= kCountCeiling) throw BudgetError("count exceeds the 2^62 ceiling");
    return static_cast<u64>(v);
}

struct SplitProfile {
    u64 nh = 0;                  // sparse prefix length
    u64 bd = 0;                  // box of the first tail point
    std::map<u64, u64> sparse;   // box -> count for n <= nh
};

SplitProfile split_points(const Ctx& c) {
    SplitProfile sp;
    sp.nh = sparse_limit(c);
    for (u64 n = 1; n <= sp.nh; ++n) {
        u64 s = c.point_scale(n);
        ++sp.sparse[std::min(s, c.m - 1)];
    }
    sp.bd = std::min(c.point_scale(sp.nh + 1), c.m - 1);
    return sp;
}

// #{n > nh : point lands in box k}, for k >= 1. Tail points below n = G(k+1)
// fall under the box; the max() keeps sparse points out of the dense tally.
u64 dense_count(const Ctx& c, u64 nh, u64 k, u64 g_k, u64 g_next) {
    u64 lo = std::max(g_next, nh);
    return g_k > lo ? g_k - lo : 0;
}

}  // namespace

PowerExponent PowerExponent::from_rat(const Rat& p) {
    if (p <= 0) throw DomainError("power exponent must be positive");
    PowerExponent e;
    e.p = p;
    BigInt num = rat_num(p), den = rat_den(p);
    if (num <= 64 && den <= 64) {
        e.exact = true;
        e.u = num.convert_to<std::uint64_t>();
        e.v = den.convert_to<std::uint64_t>();
    }
    e.approx = num.convert_to<long double>() / den.convert_to<long double>();
    return e;
}

std::uint64_t power_boundary_count(const PowerExponent& p, std::uint64_t m,
                                   std::uint64_t k) {
    check_scale(m);
    if (k == 0) throw DomainError("boundary index must be at least 1");
    return Ctx(p, m).G(k);
}

std::uint64_t power_last_outside_box0(const PowerExponent& p, std::uint64_t m) {
    check_scale(m);
    return Ctx(p, m).G(1);
}

OccupancyProfile power_occupancy(const PowerExponent& p, std::uint64_t m,
                                 std::optional<std::uint64_t> cap) {
    check_scale(m);
    if (cap && *cap == 0) throw DomainError("cap must be positive");
    OccupancyProfile prof;
    prof.m = m;
    prof.cap = cap;
    u64 box0 = cap ? *cap : kUnbounded;  // {0} plus the whole deep tail
    if (m == 1) {
        prof.entries.push_back({0, box0});
        return prof;
    }
    Ctx c(p, m);
    SplitProfile sp = split_points(c);

    if (static_cast<u128>(sp.bd) + 2 + sp.sparse.size() > kProfileEntryGuard)
        throw BudgetError("occupancy profile too large to materialize");

    std::map<u64, u64> counts = sp.sparse;
    counts.erase(0);  // box 0 is unbounded regardless of stored prefix points
    if (sp.bd >= 1) {
        u64 g_next = sp.bd == m - 1 ? 0 : c.G(sp.bd + 1);
        for (u64 k = sp.bd; k >= 1; --k) {
            u64 g_k = c.G(k);
            counts[k] += dense_count(c, sp.nh, k, g_k, g_next);
            g_next = g_k;
        }
    }
    prof.entries.reserve(counts.size() + 1);
    prof.entries.push_back({0, box0});
    for (const auto& [box, cnt] : counts) {
        u64 v = cap ? std::min(*cap, cnt) : cnt;
        prof.entries.push_back({box, v});
    }
    return prof;
}

std::uint64_t power_box_count(const PowerExponent& p, std::uint64_t m) {
    check_scale(m);
    if (m == 1) return 1;
    Ctx c(p, m);
    SplitProfile sp = split_points(c);
    u64 n = sp.bd + 1;  // boxes 0..bd: box 0 always, the rest by tail coverage
    for (const auto& [box, cnt] : sp.sparse)
        if (box > sp.bd) ++n;
    return n;
}

std::uint64_t power_gm_capped(const PowerExponent& p, std::uint64_t m,
                              std::uint64_t cap) {
    check_scale(m);
    if (cap == 0) throw DomainError("cap must be positive");
    if (cap >= kCountCeiling) throw DomainError("cap too large");
    if (m == 1) return cap;
    Ctx c(p, m);
    SplitProfile sp = split_points(c);
    u128 total = 0;
    for (const auto& [box, cnt] : sp.sparse)
        if (box > sp.bd) total += std::min(cap, cnt);

    if (sp.bd == 0) return narrow_count(total + cap);

    // boundary box: stored prefix points can share it with the tail
    u64 g_next = sp.bd == m - 1 ? 0 : c.G(sp.bd + 1);
    u64 g_bd = c.G(sp.bd);
    u64 cnt_bd = dense_count(c, sp.nh, sp.bd, g_bd, g_next);
    if (auto it = sp.sparse.find(sp.bd); it != sp.sparse.end()) cnt_bd += it->second;
    total += std::min(cap, cnt_bd);

    // Walk down; counts per box only grow as k drops (differences of a convex
    // decreasing boundary), so c_k >= cap + 2 certifies c_j >= cap for all
    // j <= k and the rest collapses to cap per box.
    u64 g_hi = g_bd;
    bool bulk = false;
    for (u64 k = sp.bd; k-- > 1;) {
        u64 g_k = c.G(k);
        u64 cnt = dense_count(c, sp.nh, k, g_k, g_hi);
        if (cnt >= cap + 2) {
            total += static_cast<u128>(cap) * (k + 1);  // boxes 1..k plus box 0
            bulk = true;
            break;
        }
        total += std::min(cap, cnt);
        g_hi = g_k;
    }
    if (!bulk) total += cap;  // box 0
    return narrow_count(total);
}

}  // namespace boxlab
