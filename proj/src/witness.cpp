#include "boxlab/witness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "boxlab/analysis.hpp"
#include "boxlab/grid.hpp"

namespace boxlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

}  // namespace

std::vector<SelectedBox> select_points(const CountedSet& set, std::uint64_t m,
                                       std::uint64_t cap) {
    if (m == 0) throw DomainError("scale must be at least 1");
    if (cap == 0) throw DomainError("cap must be positive");
    if (set.kind == SetKind::Power) {
        CountedSet prefix = truncate_power_for_scale(set, m, cap);
        return select_points(prefix, m, cap);
    }
    if (set.points.empty()) throw SpecError("cannot select from the empty set");
    std::vector<SelectedBox> out;
    for (const Rat& x : set.points) {
        u64 box = box_index(x, m);
        if (out.empty() || out.back().box != box) {
            out.push_back({box, {}});
            out.back().points.push_back(x);
        } else if (out.back().points.size() < cap) {
            out.back().points.push_back(x);
        }
    }
    return out;
}

std::vector<Rat> assign_heights(std::uint64_t count, std::uint64_t m, const Rat& h) {
    if (m == 0) throw DomainError("scale must be at least 1");
    if (count == 0) throw DomainError("cannot stack zero points");
    if (Rat(count) > h * Rat(m))
        throw CapacityError("height cap " + rat_to_string(h) + " holds at most " +
                            rat_to_string(rat_floor(h * Rat(m))) + " strips at scale " +
                            std::to_string(m) + ", got " + std::to_string(count));
    std::vector<Rat> heights;
    heights.reserve(count);
    for (u64 j = 0; j < count; ++j)
        heights.push_back(make_rat(BigInt(2 * j + 1), BigInt(2) * m));
    return heights;
}

Witness build_witness(const CountedSet& set, std::uint64_t m, const Rat& h) {
    if (m == 0) throw DomainError("scale must be at least 1");
    if (h <= 0) throw DomainError("height cap must be positive");
    if (h * Rat(m) < 1)
        throw CapacityError("height cap " + rat_to_string(h) +
                            " cannot hold a single strip at scale " + std::to_string(m));
    BigInt cap_big = floor_mul(h, m);
    u64 cap = cap_big > BigInt(std::numeric_limits<u64>::max() / 2)
                  ? std::numeric_limits<u64>::max() / 2
                  : cap_big.convert_to<u64>();
    Witness w;
    w.m = m;
    w.height_cap = h;
    w.selected = select_points(set, m, cap);
    for (auto& sel : w.selected) {
        std::vector<Rat> hs = assign_heights(sel.points.size(), m, h);
        for (size_t i = 0; i < sel.points.size(); ++i)
            w.samples.emplace_back(sel.points[i], hs[i]);
        w.bound += sel.points.size();
    }
    std::sort(w.samples.begin(), w.samples.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    w.function = PiecewiseLinear(w.samples);
    w.achieved = graph_box_count(w.samples, m);
    return w;
}

SumCounts shifted_sum_count(const PiecewiseLinear& f, const PiecewiseLinear& g,
                            const std::vector<Rat>& samples, std::uint64_t m) {
    if (samples.empty()) throw SpecError("need at least one sample");
    std::vector<std::pair<Rat, Rat>> sf, sg, ss;
    sf.reserve(samples.size());
    sg.reserve(samples.size());
    ss.reserve(samples.size());
    for (const Rat& x : samples) {
        Rat vf = f.eval(x), vg = g.eval(x);
        sf.emplace_back(x, vf);
        sg.emplace_back(x, vg);
        ss.emplace_back(x, vf + vg);
    }
    SumCounts out;
    out.count_f = graph_box_count(sf, m);
    out.count_g = graph_box_count(sg, m);
    out.count_sum = graph_box_count(ss, m);
    return out;
}

StackResult iterate_witness_stack(const CountedSet& set, unsigned stage_count,
                                  const std::vector<std::uint64_t>& schedule) {
    if (stage_count == 0) throw DomainError("need at least one stage");
    if (stage_count > 16) throw DomainError("at most 16 stages are supported");
    if (schedule.empty()) throw SpecError("schedule must not be empty");
    if (set.kind != SetKind::Power && set.points.empty())
        throw SpecError("cannot iterate on the empty set");

    StackResult res;
    res.function = PiecewiseLinear::constant(Rat(0));
    std::vector<PiecewiseLinear> partials;  // partial sums, one per stage
    std::vector<Rat> deltas;
    std::vector<Rat> sample_pool;
    u64 prev_m = 0;

    for (unsigned i = 1; i <= stage_count; ++i) {
        Rat p = make_rat(1, 2);
        if (i > 1) {
            p = make_rat(BigInt(1), BigInt(1) << i);
            for (unsigned j = 1; j < i; ++j) {
                Rat cand = deltas[j - 1] / Rat(BigInt(1) << (i - j));
                if (cand < p) p = cand;
            }
        }

        u64 best_m = 0;
        double best_ratio = 0.0;
        for (u64 m : schedule) {
            if (m <= prev_m || m <= i) continue;
            if (p * Rat(m) < 1) continue;
            double r = std::log(static_cast<double>(gm(set, m))) /
                       std::log(static_cast<double>(m));
            if (best_m == 0 || r > best_ratio) {
                best_m = m;
                best_ratio = r;
            }
        }
        if (best_m == 0)
            throw SpecError("schedule exhausted before stage " + std::to_string(i));

        Witness w = build_witness(set, best_m, p);
        StageRecord rec;
        rec.stage = i;
        rec.m = best_m;
        rec.height_cap = p;
        rec.delta = make_rat(BigInt(1), BigInt(best_m));
        rec.sup_norm = w.function.sup_norm();
        rec.bound = w.bound;
        rec.achieved = w.achieved;
        rec.norm_ok = rec.sup_norm < p;

        res.function = res.function + w.function;
        partials.push_back(res.function);
        deltas.push_back(rec.delta);
        for (const auto& [x, y] : w.samples) sample_pool.push_back(x);
        res.stages.push_back(std::move(rec));
        prev_m = best_m;
    }

    std::sort(sample_pool.begin(), sample_pool.end());
    sample_pool.erase(std::unique(sample_pool.begin(), sample_pool.end()),
                      sample_pool.end());
    res.samples = std::move(sample_pool);

    auto count_on_samples = [&](const PiecewiseLinear& f, u64 m) {
        std::vector<std::pair<Rat, Rat>> pts;
        pts.reserve(res.samples.size());
        for (const Rat& x : res.samples) pts.emplace_back(x, f.eval(x));
        return graph_box_count(pts, m);
    };

    res.total_norm = Rat(0);
    for (unsigned i = 0; i < stage_count; ++i) {
        StageRecord& rec = res.stages[i];
        rec.count_stack = count_on_samples(partials[i], rec.m);
        rec.count_final = count_on_samples(res.function, rec.m);
        if (i == 0) {
            rec.rows_prev = 1;
        } else {
            rec.rows_prev = 1;
            for (u64 rows : column_profile(partials[i - 1], rec.m))
                rec.rows_prev = std::max(rec.rows_prev, rows);
        }
        rec.carry_ok =
            static_cast<u128>(2) * rec.rows_prev * rec.count_stack >= rec.bound;
        rec.final_ok = 2 * rec.count_final >= rec.count_stack;
        Rat tail(0);
        for (unsigned j = i + 1; j < stage_count; ++j) tail += res.stages[j].sup_norm;
        rec.tail_ok = tail < rec.delta;
        rec.ratio = std::log(static_cast<double>(rec.count_stack)) /
                    std::log(static_cast<double>(rec.m));
        res.total_norm += rec.sup_norm;
    }
    res.total_norm_ok = res.total_norm <= 1;
    return res;
}

}  // namespace boxlab
