#include "boxlab/sets.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "boxlab/power_engine.hpp"

namespace boxlab {

namespace {

using u64 = std::uint64_t;

constexpr u64 kPowerScaleCeiling = u64(1) << 40;
constexpr u64 kPointBudget = u64(1) << 24;

std::vector<Rat> power_prefix(u64 u, u64 n_max) {
    if (n_max == 0) throw DomainError("truncation needs at least one point");
    if (n_max > kPointBudget) throw BudgetError("truncation exceeds the point budget");
    std::vector<Rat> pts;
    pts.reserve(n_max);
    for (u64 n = n_max; n >= 1; --n)
        pts.push_back(make_rat(BigInt(1), ipow(BigInt(n), static_cast<unsigned>(u))));
    return pts;
}

// small positive rational with bounded terms, for exponent parameters
void check_small_rat(const Rat& r, const char* what) {
    if (rat_num(r) > 64 || rat_den(r) > 64)
        throw DomainError(std::string(what) + " must be a rational with numerator and denominator <= 64");
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

u64 parse_u64(const std::string& s, const char* what) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
        }))
        throw SpecError(std::string("malformed integer for ") + what + ": '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw SpecError(std::string("integer out of range for ") + what + ": '" + s + "'");
    }
}

std::map<std::string, std::string> parse_kv(const std::string& body,
                                            const std::string& kind) {
    std::map<std::string, std::string> kv;
    size_t pos = 0;
    while (pos <= body.size()) {
        size_t comma = body.find(',', pos);
        std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        item = trim(item);
        if (!item.empty()) {
            size_t eq = item.find('=');
            if (eq == std::string::npos)
                throw SpecError("expected key=value in set spec for '" + kind + "': '" + item + "'");
            std::string key = trim(item.substr(0, eq));
            std::string val = trim(item.substr(eq + 1));
            if (key.empty() || val.empty())
                throw SpecError("empty key or value in set spec for '" + kind + "'");
            if (!kv.emplace(key, val).second)
                throw SpecError("duplicate parameter '" + key + "' in set spec");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return kv;
}

}  // namespace

CountedSet explicit_from_points(std::vector<Rat> points) {
    for (const Rat& x : points)
        if (x < 0 || x > 1) throw DomainError("points must lie in [0,1]");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    CountedSet set;
    set.kind = SetKind::Explicit;
    set.points = std::move(points);
    return set;
}

CountedSet power_sequence(const Rat& p) {
    CountedSet set;
    set.kind = SetKind::Power;
    set.power = PowerExponent::from_rat(p);
    return set;
}

CountedSet power_truncation(const Rat& p, std::uint64_t n_max) {
    PowerExponent e = PowerExponent::from_rat(p);
    if (e.v != 1 || !e.exact)
        throw DomainError("power truncation needs an integer exponent so stored points stay rational");
    CountedSet set;
    set.kind = SetKind::Explicit;
    set.points = power_prefix(e.u, n_max);
    return set;
}

CountedSet cantor_set(const Rat& ratio, unsigned depth) {
    if (ratio <= 0 || ratio > make_rat(1, 2))
        throw DomainError("contraction ratio must lie in (0, 1/2]");
    if (depth > 24) throw BudgetError("depth exceeds the point budget");
    std::vector<std::pair<Rat, Rat>> ivs{{Rat(0), Rat(1)}};
    for (unsigned d = 0; d < depth; ++d) {
        std::vector<std::pair<Rat, Rat>> next;
        next.reserve(ivs.size() * 2);
        for (const auto& [a, b] : ivs) {
            Rat len = (b - a) * ratio;
            next.emplace_back(a, a + len);
            next.emplace_back(b - len, b);
        }
        ivs = std::move(next);
    }
    std::vector<Rat> pts;
    pts.reserve(ivs.size() * 2);
    for (const auto& [a, b] : ivs) {
        pts.push_back(a);
        pts.push_back(b);
    }
    CountedSet set = explicit_from_points(std::move(pts));
    set.kind = SetKind::Cantor;
    set.cantor = CantorParams{ratio, depth};
    return set;
}

CountedSet layered_set(const LayeredParams& params) {
    if (params.a <= 0 || params.a > 1) throw DomainError("block exponent a must lie in (0,1]");
    if (params.c < 0 || params.c >= 1) throw DomainError("size exponent c must lie in [0,1)");
    check_small_rat(params.a, "a");
    check_small_rat(params.c, "c");
    if (params.levels < 1 || params.levels > 12) throw DomainError("levels must lie in [1,12]");
    if (params.x1 < 2) throw DomainError("x1 must be at least 2");
    if (params.gamma < 2 || params.gamma > 16) throw DomainError("gamma must lie in [2,16]");

    const unsigned L = params.levels;
    LayeredMetadata md;
    md.params = params;
    md.x.assign(L + 3, BigInt(0));
    md.x[1] = BigInt(params.x1);
    for (unsigned n = 2; n <= L + 2; ++n) {
        md.x[n] = ipow(md.x[n - 1], params.gamma);
        if (boost::multiprecision::msb(md.x[n]) > 4'000'000)
            throw BudgetError("gap scales grow past the working precision budget");
    }

    u64 au = rat_num(params.a).convert_to<u64>(), av = rat_den(params.a).convert_to<u64>();
    u64 cu = rat_num(params.c).convert_to<u64>(), cv = rat_den(params.c).convert_to<u64>();

    md.block_counts.assign(L + 1, 0);
    md.block_sizes.assign(L + 1, 0);
    std::vector<Rat> pts{Rat(0)};
    for (unsigned n = 1; n <= L; ++n) {
        BigInt kn = iroot(ipow(md.x[n], static_cast<unsigned>(au)), static_cast<unsigned>(av));
        BigInt bn = iroot(ipow(md.x[n], static_cast<unsigned>(cu)), static_cast<unsigned>(cv));
        if (kn > kPointBudget || bn > kPointBudget)
            throw BudgetError("construction exceeds the point budget");
        u64 k = kn.convert_to<u64>();
        u64 b = bn.convert_to<u64>();
        md.block_counts[n] = k;
        md.block_sizes[n] = b;
        if (pts.size() + static_cast<u64>(k) * b > kPointBudget)
            throw BudgetError("construction exceeds the point budget");
        for (u64 i = 1; i <= k; ++i) {
            LayeredBlock blk;
            blk.level = n;
            blk.index = i;
            blk.size = b;
            Rat anchor = make_rat(BigInt(i), md.x[n]);
            for (u64 j = 1; j <= b; ++j)
                pts.push_back(anchor - make_rat(BigInt(j), md.x[n + 2]));
            blk.sup = anchor - make_rat(BigInt(1), md.x[n + 2]);
            blk.inf = anchor - make_rat(BigInt(b), md.x[n + 2]);
            md.blocks.push_back(std::move(blk));
        }
    }

    md.special_scales.clear();
    for (unsigned n = 1; n <= L; ++n)
        md.special_scales.push_back(iroot(ipow(md.x[n + 1], static_cast<unsigned>(cv + cu)),
                                          static_cast<unsigned>(2 * cv)));
    md.feasible_scales = L - 1;

    md.predicted_dim = params.a;
    Rat gdim = 2 * (params.a + params.c) / (1 + params.c);
    md.predicted_gdim = gdim > 1 ? gdim : Rat(1);

    CountedSet set = explicit_from_points(std::move(pts));
    set.kind = SetKind::Layered;
    set.layered = std::move(md);
    return set;
}

std::optional<BigInt> valid_scale_range(const CountedSet& set) {
    switch (set.kind) {
        case SetKind::Power:
            return BigInt(kPowerScaleCeiling);
        case SetKind::Layered:
            return set.layered->x[set.layered->params.levels + 2];
        default:
            return std::nullopt;
    }
}

OccupancyProfile occupancy(const CountedSet& set, std::uint64_t m,
                           std::optional<std::uint64_t> cap) {
    if (m == 0) throw DomainError("scale must be at least 1");
    if (set.kind == SetKind::Power) return power_occupancy(*set.power, m, cap);
    if (set.kind == SetKind::Layered) {
        const BigInt& max_m = set.layered->x[set.layered->params.levels + 2];
        if (BigInt(m) > max_m)
            throw ResolutionError("scale " + std::to_string(m) +
                                  " exceeds the faithful range for this construction (max " +
                                  max_m.str() + ")");
    }
    return occupancy_of_points(set.points, m, cap);
}

std::uint64_t box_count_1d(const CountedSet& set, std::uint64_t m) {
    if (set.kind == SetKind::Power) {
        if (m == 0) throw DomainError("scale must be at least 1");
        return power_box_count(*set.power, m);
    }
    return occupancy(set, m, 1).entries.size();
}

CountedSet parse_set_spec(const std::string& spec) {
    size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw SpecError("set spec needs the form kind:params, got '" + spec + "'");
    std::string kind = trim(spec.substr(0, colon));
    std::string body = spec.substr(colon + 1);

    if (kind == "file") {
        if (trim(body).empty()) throw SpecError("file: needs a path");
        return load_points_file(trim(body));
    }
    auto kv = parse_kv(body, kind);
    auto take = [&](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto finish = [&]() {
        if (!kv.empty())
            throw SpecError("unknown parameter '" + kv.begin()->first + "' for set kind '" + kind + "'");
    };

    if (kind == "power") {
        auto p = take("p");
        if (!p) throw SpecError("power: needs p=<rational>");
        finish();
        return power_sequence(parse_rational(*p));
    }
    if (kind == "cantor") {
        auto ratio = take("ratio");
        auto depth = take("depth");
        if (!ratio || !depth) throw SpecError("cantor: needs ratio=<rational>,depth=<n>");
        finish();
        u64 d = parse_u64(*depth, "depth");
        if (d > 24) throw BudgetError("depth exceeds the point budget");
        return cantor_set(parse_rational(*ratio), static_cast<unsigned>(d));
    }
    if (kind == "paper") {
        LayeredParams params;
        params.a = make_rat(1, 2);
        params.c = make_rat(1, 3);
        params.levels = 3;
        params.x1 = 2;
        params.gamma = 4;
        if (auto a = take("a")) params.a = parse_rational(*a);
        if (auto c = take("c")) params.c = parse_rational(*c);
        if (auto lv = take("levels")) params.levels = static_cast<unsigned>(parse_u64(*lv, "levels"));
        if (auto x1 = take("x1")) params.x1 = parse_u64(*x1, "x1");
        if (auto g = take("gamma")) params.gamma = static_cast<unsigned>(parse_u64(*g, "gamma"));
        finish();
        return layered_set(params);
    }
    throw SpecError("unknown set kind '" + kind + "'");
}

CountedSet load_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open points file: " + path);
    std::vector<Rat> pts;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        try {
            pts.push_back(parse_rational(line));
        } catch (const SpecError& e) {
            throw SpecError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return explicit_from_points(std::move(pts));
}

CountedSet truncate_power_for_scale(const CountedSet& power, std::uint64_t m,
                                    std::uint64_t extra) {
    if (power.kind != SetKind::Power)
        throw DomainError("truncation applies to the power sequence");
    const PowerExponent& e = *power.power;
    if (e.v != 1 || !e.exact)
        throw DomainError("power truncation needs an integer exponent so stored points stay rational");
    std::uint64_t last = power_last_outside_box0(e, m);
    if (last > kPointBudget || extra > kPointBudget)
        throw BudgetError("truncation exceeds the point budget");
    CountedSet set;
    set.kind = SetKind::Explicit;
    set.points = power_prefix(e.u, last + extra);
    return set;
}

}  // namespace boxlab
