#include "doctest.h"

#include "boxlab/lemmas.hpp"

using namespace boxlab;

namespace {

std::vector<Rat> coarse_samples() { return lattice_samples(kLatticeDen / 64); }

}  // namespace

TEST_CASE("lattice_samples covers the unit interval") {
    auto samples = lattice_samples(1024);
    CHECK(samples.size() == 1025);
    CHECK(samples.front() == Rat(0));
    CHECK(samples.back() == Rat(1));
    CHECK(samples[1] == make_rat(1024, kLatticeDen));
}

TEST_CASE("bump claim passes on half-row and full-row shifts") {
    PiecewiseLinear f({{Rat(0), make_rat(1, 3)},
                       {make_rat(1, 2), make_rat(2, 3)},
                       {Rat(1), make_rat(1, 4)}});
    std::uint64_t m = 8;
    auto samples = coarse_samples();

    PiecewiseLinear half = PiecewiseLinear::constant(make_rat(1, 16));  // delta/2
    CHECK(check_bump_half_count(f, half, samples, m, false) == TrialOutcome::Pass);

    PiecewiseLinear zero = PiecewiseLinear::constant(Rat(0));
    PiecewiseLinear full = PiecewiseLinear::constant(make_rat(1, 8));  // exactly delta
    CHECK(check_bump_half_count(zero, full, samples, m, false) == TrialOutcome::Pass);
    CHECK(check_bump_half_count(zero, zero, samples, m, true) == TrialOutcome::Pass);
}

TEST_CASE("bump claim skips when the shift leaves its window") {
    PiecewiseLinear f = PiecewiseLinear::constant(make_rat(1, 3));
    auto samples = coarse_samples();
    PiecewiseLinear zero = PiecewiseLinear::constant(Rat(0));
    PiecewiseLinear big = PiecewiseLinear::constant(make_rat(1, 4));
    // strict form rejects g = 0 and g > delta
    CHECK(check_bump_half_count(f, zero, samples, 8, false) == TrialOutcome::Skip);
    CHECK(check_bump_half_count(f, big, samples, 8, false) == TrialOutcome::Skip);
    // relaxed form rejects g = delta
    CHECK(check_bump_half_count(f, PiecewiseLinear::constant(make_rat(1, 8)), samples, 8,
                                true) == TrialOutcome::Skip);
}

TEST_CASE("overlay claim with a constant base") {
    auto samples = coarse_samples();
    PiecewiseLinear f = PiecewiseLinear::constant(make_rat(1, 4));
    PiecewiseLinear g({{Rat(0), Rat(0)},
                       {make_rat(1, 4), make_rat(3, 8)},
                       {make_rat(3, 4), make_rat(1, 8)},
                       {Rat(1), make_rat(2, 5)}});
    CHECK(check_overlay_column_quotient(f, g, samples, 16) == TrialOutcome::Pass);

    // both functions must stay at or below 1/2
    PiecewiseLinear tall = PiecewiseLinear::constant(make_rat(3, 4));
    CHECK(check_overlay_column_quotient(tall, g, samples, 16) == TrialOutcome::Skip);
    CHECK(check_overlay_column_quotient(f, tall, samples, 16) == TrialOutcome::Skip);
}

TEST_CASE("slope cap claim") {
    PiecewiseLinear flat = PiecewiseLinear::constant(make_rat(2, 7));
    CHECK(check_slope_row_cap(flat, 0, 8) == TrialOutcome::Pass);

    PiecewiseLinear steep({{Rat(0), Rat(0)}, {Rat(1), Rat(2)}});
    CHECK(check_slope_row_cap(steep, 2, 4) == TrialOutcome::Pass);  // rows max 3 <= 3
    CHECK(check_slope_row_cap(steep, 1, 4) == TrialOutcome::Skip);  // precondition fails

    std::vector<std::pair<Rat, Rat>> zig;
    for (int k = 0; k <= 8; ++k)
        zig.emplace_back(make_rat(k, 8), (k % 2) ? make_rat(1, 2) : Rat(0));
    CHECK(check_slope_row_cap(PiecewiseLinear(zig), 4, 512) == TrialOutcome::Pass);
    CHECK(check_slope_row_cap(PiecewiseLinear(zig), 4, 64) == TrialOutcome::Pass);
}

TEST_CASE("suites are deterministic per seed and clean at stock sizes") {
    auto first = run_lemma_suites(2024, 250, true);   // cross-check throws on any
    auto second = run_lemma_suites(2024, 250, false); // fast-path divergence
    REQUIRE(first.size() == 4);
    REQUIRE(second.size() == 4);
    CHECK(first[0].suite == "bump_half_count");
    CHECK(first[1].suite == "bump_half_count_weak");
    CHECK(first[2].suite == "overlay_column_quotient");
    CHECK(first[3].suite == "slope_row_cap");
    for (size_t i = 0; i < 4; ++i) {
        CHECK(first[i].trials == 250);
        CHECK(first[i].failures == 0);
        CHECK(first[i].skips == 0);
        CHECK(first[i].seed == 2024);
        CHECK(first[i].passes == second[i].passes);
        CHECK(first[i].skips == second[i].skips);
    }

    auto other = run_lemma_suites(2025, 250, false);
    bool same_everything = true;
    for (size_t i = 0; i < 4; ++i)
        same_everything = same_everything && other[i].passes == first[i].passes &&
                          other[i].failures == first[i].failures &&
                          other[i].skips == first[i].skips;
    // different seed, same totals is fine; the claims hold either way
    CHECK(other[0].trials == 250);
}
