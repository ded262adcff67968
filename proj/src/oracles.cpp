#include "boxlab/oracles.hpp"

#include <cmath>
#include <map>
#include <string>

#include "boxlab/rational.hpp"

namespace boxlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kStepBudget = u64(1) << 28;

// a^e with overflow saturation to "huge"
bool pow_sat(u64 a, u64 e, u128& out) {
    out = 1;
    for (u64 i = 0; i < e; ++i) {
        if (a != 0 && out > ~u128(0) / a) return false;
        out *= a;
    }
    return true;
}

BigInt pow_big(const BigInt& a, u64 e) {
    BigInt r = 1;
    for (u64 i = 0; i < e; ++i) r *= a;
    return r;
}

// floor(x * m) clamped into [0, m-1]; double first, exact rational fixup after
u64 slow_index(const Rat& x, u64 m) {
    BigInt scaled_num = rat_num(x) * m;
    const BigInt& den = rat_den(x);
    double guess = rat_to_double(x) * static_cast<double>(m);
    u64 k = guess <= 0.0 ? 0 : static_cast<u64>(guess);
    if (k >= m) k = m - 1;
    for (u64 cand = k == 0 ? 0 : k - 1; cand <= k + 1 && cand < m; ++cand) {
        if (scaled_num >= BigInt(cand) * den && scaled_num < BigInt(cand + 1) * den)
            return cand;
    }
    if (scaled_num >= BigInt(m) * den) return m - 1;  // x == 1 or beyond the guess
    BigInt exact = scaled_num / den;
    return exact.convert_to<u64>();
}

struct RawExp {
    bool exact;
    u64 u, v;
    long double approx;
};

RawExp reduce(const Rat& p) {
    if (p <= 0) throw DomainError("power exponent must be positive");
    RawExp e;
    BigInt num = rat_num(p), den = rat_den(p);
    e.exact = num <= 64 && den <= 64;
    e.u = e.exact ? num.convert_to<u64>() : 0;
    e.v = e.exact ? den.convert_to<u64>() : 1;
    e.approx = num.convert_to<long double>() / den.convert_to<long double>();
    return e;
}

// largest n with n^e * factor <= rhs
u64 largest_root(const BigInt& rhs, u64 e, const BigInt& factor) {
    if (factor > rhs) return 0;
    BigInt q = rhs / factor;
    long double seed = powl(q.convert_to<long double>(), 1.0L / static_cast<long double>(e));
    if (!(seed < 9.2e18L)) throw BudgetError("count exceeds the 2^62 ceiling");
    u64 n = seed > 8.0L ? static_cast<u64>(seed - 8.0L) : 0;
    while (n > 0 && pow_big(BigInt(n), e) * factor > rhs) --n;
    while (pow_big(BigInt(n + 1), e) * factor <= rhs) ++n;
    return n;
}

OccupancyProfile brute_power(const RawExp& e, u64 m, std::optional<u64> cap) {
    // (box, count) runs; the box of a_n never grows with n, so runs stay distinct
    std::vector<std::pair<u64, u64>> runs;
    auto tally = [&runs](u64 box) {
        if (!runs.empty() && runs.back().first == box)
            ++runs.back().second;
        else
            runs.emplace_back(box, 1);
    };
    u64 steps = 0;
    if (e.exact) {
        u128 mv128;
        bool small = pow_sat(m, e.v, mv128);
        BigInt mv_big = small ? BigInt(0) : pow_big(BigInt(m), e.v);
        // a^ea * b^eb <= m^v, constants hoisted out of the point loop
        auto le = [&](u64 a, u64 ea, u64 b, u64 eb) {
            if (small) {
                u128 pa, pb;
                if (!pow_sat(a, ea, pa) || !pow_sat(b, eb, pb)) return false;
                if (pa != 0 && pb > ~u128(0) / pa) return false;
                return pa * pb <= mv128;
            }
            return pow_big(BigInt(a), ea) * pow_big(BigInt(b), eb) <= mv_big;
        };
        u64 s = m;  // floor(m * n^-p) never grows, walk it downward
        for (u64 n = 1;; ++n) {
            if (++steps > kStepBudget) throw BudgetError("enumeration budget exceeded");
            if (!le(n, e.u, 1, 0)) break;  // n^-p < 1/m, tail reached
            while (s > 0 && !le(s, e.v, n, e.u)) --s;
            tally(std::min(s, m - 1));
        }
    } else {
        long double logm = logl(static_cast<long double>(m));
        for (u64 n = 1;; ++n) {
            if (++steps > kStepBudget) throw BudgetError("enumeration budget exceeded");
            long double logn = logl(static_cast<long double>(n));
            if (e.approx * logn > logm + 1e-18L) break;
            tally(std::min(static_cast<u64>(static_cast<long double>(m) *
                                            expl(-e.approx * logn)),
                           m - 1));
        }
    }
    OccupancyProfile prof;
    prof.m = m;
    prof.cap = cap;
    prof.entries.reserve(runs.size() + 1);
    prof.entries.push_back({0, cap ? *cap : kUnbounded});
    for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
        if (it->first == 0) continue;  // the tail below 1/m plus {0} owns box 0
        prof.entries.push_back({it->first, cap ? std::min(*cap, it->second) : it->second});
    }
    return prof;
}

}  // namespace

OccupancyProfile brute_force_occupancy(const CountedSet& set, std::uint64_t m,
                                       std::optional<std::uint64_t> cap) {
    if (m == 0) throw DomainError("scale must be at least 1");
    if (cap && *cap == 0) throw DomainError("cap must be positive");
    if (set.kind == SetKind::Power) {
        if (m == 1) {
            OccupancyProfile prof;
            prof.m = m;
            prof.cap = cap;
            prof.entries.push_back({0, cap ? *cap : kUnbounded});
            return prof;
        }
        return brute_power(reduce(set.power->p), m, cap);
    }
    std::map<u64, u64> tally;
    u64 steps = 0;
    for (const Rat& x : set.points) {
        if (++steps > kStepBudget) throw BudgetError("enumeration budget exceeded");
        ++tally[slow_index(x, m)];
    }
    OccupancyProfile prof;
    prof.m = m;
    prof.cap = cap;
    prof.entries.reserve(tally.size());
    for (const auto& [box, cnt] : tally)
        prof.entries.push_back({box, cap ? std::min(*cap, cnt) : cnt});
    return prof;
}

std::uint64_t brute_force_box_count(const CountedSet& set, std::uint64_t m) {
    return brute_force_occupancy(set, m, 1).entries.size();
}

std::uint64_t brute_force_gm(const CountedSet& set, std::uint64_t m) {
    u128 total = 0;
    for (const auto& [box, cnt] : brute_force_occupancy(set, m, m).entries)
        total += cnt;
    if (total >= (u128(1) << 62)) throw BudgetError("count exceeds the 2^62 ceiling");
    return static_cast<u64>(total);
}

std::uint64_t power_box_count_closed(const Rat& p, std::uint64_t m) {
    RawExp e = reduce(p);
    if (!e.exact) throw DomainError("closed form needs a small rational exponent");
    // head/tail split where consecutive gaps match the box width 1/m
    BigInt rhs = pow_big(BigInt(e.u) * m, e.v);
    BigInt vv = pow_big(BigInt(e.v), e.v);
    u64 n0 = largest_root(rhs, e.u + e.v, vv);
    if (n0 == 0) n0 = 1;
    // tail boxes: floor(m * n0^-p)
    BigInt mv = pow_big(BigInt(m), e.v);
    BigInt nu = pow_big(BigInt(n0), e.u);
    u64 tail = largest_root(mv, e.v, nu);
    return n0 + tail;
}

std::uint64_t power_gm_closed(const Rat& p, std::uint64_t m) {
    RawExp e = reduce(p);
    if (!e.exact) throw DomainError("closed form needs a small rational exponent");
    // same split against the fine width 1/m^2; tail boxes weigh m each
    BigInt rhs = pow_big(BigInt(e.u) * m * m, e.v);
    BigInt vv = pow_big(BigInt(e.v), e.v);
    u64 n0 = largest_root(rhs, e.u + e.v, vv);
    if (n0 == 0) n0 = 1;
    BigInt mv = pow_big(BigInt(m), e.v);
    BigInt nu = pow_big(BigInt(n0), e.u);
    u64 tail = largest_root(mv, e.v, nu);
    u128 total = static_cast<u128>(n0) + static_cast<u128>(m) * tail;
    if (total >= (u128(1) << 62)) throw BudgetError("count exceeds the 2^62 ceiling");
    return static_cast<u64>(total);
}

}  // namespace boxlab
