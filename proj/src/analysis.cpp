#include "boxlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "boxlab/power_engine.hpp"
#include "boxlab/rational.hpp"

namespace boxlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 sum_counts(const OccupancyProfile& prof) {
    u128 total = 0;
    for (const auto& [box, cnt] : prof.entries) {
        if (cnt == kUnbounded) throw DomainError("uncapped sum diverges for this set");
        total += cnt;
    }
    if (total >= (u128(1) << 62)) throw BudgetError("count exceeds the 2^62 ceiling");
    return static_cast<u64>(total);
}

}  // namespace

std::uint64_t gm(const CountedSet& set, std::uint64_t m) {
    return gm_capped(set, m, m);
}

std::uint64_t gm_capped(const CountedSet& set, std::uint64_t m,
                        std::optional<std::uint64_t> cap) {
    if (m == 0) throw DomainError("scale must be at least 1");
    if (set.kind == SetKind::Power) {
        if (!cap) throw DomainError("uncapped sum diverges for the power sequence");
        return power_gm_capped(*set.power, m, *cap);
    }
    return sum_counts(occupancy(set, m, cap));
}

std::vector<std::uint64_t> geometric_schedule(std::uint64_t base, std::uint64_t lo,
                                              std::uint64_t hi) {
    if (base < 2) throw SpecError("schedule base must be at least 2");
    if (lo < 2 || lo > hi) throw SpecError("schedule needs 2 <= min <= max");
    std::vector<std::uint64_t> out;
    u128 m = lo;
    while (m <= hi) {
        out.push_back(static_cast<u64>(m));
        m *= base;
    }
    return out;
}

std::vector<std::uint64_t> explicit_schedule(std::vector<std::uint64_t> scales) {
    if (scales.empty()) throw SpecError("schedule must not be empty");
    for (u64 m : scales)
        if (m < 2) throw SpecError("schedule scales must be at least 2");
    std::sort(scales.begin(), scales.end());
    scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
    return scales;
}

std::vector<std::uint64_t> parse_schedule(const std::string& spec) {
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        size_t pos = 0;
        while (true) {
            size_t nxt = s.find(sep, pos);
            parts.push_back(s.substr(pos, nxt == std::string::npos ? std::string::npos : nxt - pos));
            if (nxt == std::string::npos) break;
            pos = nxt + 1;
        }
        return parts;
    };
    auto to_u64 = [](const std::string& s) -> u64 {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw SpecError("malformed scale '" + s + "' in schedule");
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw SpecError("scale out of range in schedule: '" + s + "'");
        }
    };
    if (spec.rfind("geo:", 0) == 0) {
        auto parts = split(spec.substr(4), ':');
        if (parts.size() != 3) throw SpecError("geometric schedule needs geo:<base>:<min>:<max>");
        return geometric_schedule(to_u64(parts[0]), to_u64(parts[1]), to_u64(parts[2]));
    }
    if (spec.rfind("list:", 0) == 0) {
        auto parts = split(spec.substr(5), ',');
        std::vector<u64> scales;
        for (const auto& p : parts) scales.push_back(to_u64(p));
        return explicit_schedule(std::move(scales));
    }
    throw SpecError("unknown schedule form '" + spec + "'");
}

RatioSeries ratio_series(const CountedSet& set,
                         const std::vector<std::uint64_t>& schedule,
                         CounterKind counter) {
    if (schedule.empty()) throw SpecError("schedule must not be empty");
    if (set.kind != SetKind::Power && set.points.empty())
        throw SpecError("the empty set has no scaling ratio");
    RatioSeries series;
    series.counter = counter;
    series.rows.reserve(schedule.size());
    for (u64 m : schedule) {
        if (m < 2) throw SpecError("ratio scales must be at least 2");
        u64 v = counter == CounterKind::Box ? box_count_1d(set, m) : gm(set, m);
        RatioEntry row;
        row.m = m;
        row.value = v;
        row.ratio = std::log(static_cast<double>(v)) / std::log(static_cast<double>(m));
        series.rows.push_back(row);
    }
    return series;
}

DimensionEstimate estimate_dimension(const RatioSeries& series, double tail_fraction,
                                     std::size_t slope_window) {
    const auto& rows = series.rows;
    if (rows.empty()) throw SpecError("cannot estimate from an empty series");
    if (!(tail_fraction > 0.0) || tail_fraction > 1.0)
        throw DomainError("tail fraction must lie in (0,1]");
    if (slope_window > rows.size())
        throw SpecError("slope window larger than the series");

    DimensionEstimate est;
    est.tail_count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(tail_fraction * rows.size())));
    est.limsup_proxy = rows[rows.size() - est.tail_count].ratio;
    for (std::size_t i = rows.size() - est.tail_count; i < rows.size(); ++i)
        est.limsup_proxy = std::max(est.limsup_proxy, rows[i].ratio);

    std::size_t first;
    if (slope_window == 0) {
        double cutoff = static_cast<double>(rows.back().m) / 10.0;
        first = rows.size() - 1;
        while (first > 0 && static_cast<double>(rows[first - 1].m) >= cutoff) --first;
    } else {
        first = rows.size() - slope_window;
    }
    est.slope_count = rows.size() - first;
    if (est.slope_count >= 2) {
        double sx = 0, sy = 0;
        for (std::size_t i = first; i < rows.size(); ++i) {
            sx += std::log(static_cast<double>(rows[i].m));
            sy += std::log(static_cast<double>(rows[i].value));
        }
        double mx = sx / est.slope_count, my = sy / est.slope_count;
        double num = 0, den = 0;
        for (std::size_t i = first; i < rows.size(); ++i) {
            double dx = std::log(static_cast<double>(rows[i].m)) - mx;
            num += dx * (std::log(static_cast<double>(rows[i].value)) - my);
            den += dx * dx;
        }
        est.slope = den > 0 ? num / den : 0.0;
    }
    est.degenerate = std::all_of(rows.begin(), rows.end(),
                                 [](const RatioEntry& r) { return r.value <= 1; });
    return est;
}

FiniteBounds finite_bounds_check(const CountedSet& set, std::uint64_t m) {
    if (m < 4) throw DomainError("bounds check needs m >= 4");
    FiniteBounds fb;
    fb.m = m;
    fb.root = iroot(BigInt(m), 2).convert_to<u64>();
    fb.boxes = box_count_1d(set, m);
    fb.g = gm(set, m);
    fb.g_root = gm(set, fb.root);
    fb.lower_ok = fb.boxes <= fb.g;
    u128 upper = std::min<u128>(static_cast<u128>(m) * fb.boxes,
                                static_cast<u128>(m) * m);
    fb.upper_ok = static_cast<u128>(fb.g) <= upper;
    fb.root_half_ok = 2 * fb.g_root >= fb.boxes;

    fb.saturation_premise = true;
    for (const auto& [box, cnt] : occupancy(set, m, std::nullopt).entries) {
        if (cnt != kUnbounded && cnt < m) {
            fb.saturation_premise = false;
            break;
        }
    }
    u128 full = static_cast<u128>(m) * fb.boxes;
    fb.saturation_ok = !fb.saturation_premise || static_cast<u128>(fb.g) == full;
    return fb;
}

}  // namespace boxlab
