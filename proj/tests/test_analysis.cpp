#include "doctest.h"

#include <cmath>

#include "boxlab/analysis.hpp"

using namespace boxlab;

TEST_CASE("gm pinned values for the power sequence") {
    CountedSet a = power_sequence(make_rat(1, 1));
    CHECK(gm(a, 4) == 8);  // 4 + 2 + 1 + 1
    CHECK(gm(a, 3) == 6);  // 3 + 2 + 1
    CHECK(gm_capped(a, 4, 1) == 4);
    CHECK(gm_capped(a, 4, 2) == 6);
    CHECK_THROWS_AS(gm_capped(a, 4, std::nullopt), DomainError);
}

TEST_CASE("gm on finite sets") {
    CHECK(gm(explicit_from_points({}), 7) == 0);
    CHECK(gm(explicit_from_points({make_rat(1, 10)}), 5) == 1);

    CountedSet c = cantor_set(make_rat(1, 3), 6);
    CHECK(gm_capped(c, 9, std::nullopt) == c.cardinality());
    CHECK(gm(c, 2) <= 4);  // two boxes, capped at 2 each
}

TEST_CASE("schedules") {
    CHECK(geometric_schedule(2, 4, 32) == std::vector<std::uint64_t>{4, 8, 16, 32});
    CHECK(geometric_schedule(3, 3, 729) ==
          std::vector<std::uint64_t>{3, 9, 27, 81, 243, 729});
    CHECK(explicit_schedule({10, 10, 3}) == std::vector<std::uint64_t>{3, 10});
    CHECK_THROWS_AS(geometric_schedule(1, 4, 32), SpecError);
    CHECK_THROWS_AS(geometric_schedule(2, 8, 4), SpecError);
    CHECK_THROWS_AS(explicit_schedule({}), SpecError);
    CHECK_THROWS_AS(explicit_schedule({1}), SpecError);

    CHECK(parse_schedule("geo:2:4:32") == std::vector<std::uint64_t>{4, 8, 16, 32});
    CHECK(parse_schedule("list:10,10,3") == std::vector<std::uint64_t>{3, 10});
    CHECK_THROWS_AS(parse_schedule("geo:2:4"), SpecError);
    CHECK_THROWS_AS(parse_schedule("list:abc"), SpecError);
    CHECK_THROWS_AS(parse_schedule("every:4"), SpecError);
}

TEST_CASE("ratio_series basics") {
    CountedSet two = explicit_from_points({Rat(0), Rat(1)});
    RatioSeries s = ratio_series(two, {10}, CounterKind::Box);
    REQUIRE(s.rows.size() == 1);
    CHECK(s.rows[0].value == 2);
    CHECK(s.rows[0].ratio == doctest::Approx(std::log(2.0) / std::log(10.0)));

    CountedSet a = power_sequence(make_rat(1, 1));
    RatioSeries g = ratio_series(a, {4}, CounterKind::Gm);
    CHECK(g.rows[0].value == 8);
    CHECK(g.rows[0].ratio == doctest::Approx(1.5));

    CHECK_THROWS_AS(ratio_series(explicit_from_points({}), {4}, CounterKind::Box),
                    SpecError);
}

TEST_CASE("estimate_dimension constant-ratio series") {
    RatioSeries s;
    s.counter = CounterKind::Box;
    std::uint64_t value = 2;
    for (std::uint64_t m : {4, 16, 64, 256}) {
        RatioEntry row;
        row.m = m;
        row.value = value;  // value = sqrt(m): ratio 0.5 at every scale
        row.ratio = std::log(double(value)) / std::log(double(m));
        s.rows.push_back(row);
        value *= 2;
    }
    DimensionEstimate est = estimate_dimension(s, 0.5, s.rows.size());
    CHECK(est.limsup_proxy == doctest::Approx(0.5));
    CHECK(est.slope == doctest::Approx(0.5));
    CHECK_FALSE(est.degenerate);

    CHECK_THROWS_AS(estimate_dimension(s, 0.0, 0), DomainError);
    CHECK_THROWS_AS(estimate_dimension(s, 0.5, 9), SpecError);
}

TEST_CASE("power-law slopes match the analytic targets") {
    auto schedule = geometric_schedule(2, 16, std::uint64_t(1) << 20);
    CountedSet a = power_sequence(make_rat(1, 1));

    RatioSeries boxes = ratio_series(a, schedule, CounterKind::Box);
    DimensionEstimate eb = estimate_dimension(boxes, 0.5, boxes.rows.size());
    CHECK(eb.slope > 0.45);
    CHECK(eb.slope < 0.55);

    RatioSeries gs = ratio_series(a, schedule, CounterKind::Gm);
    DimensionEstimate eg = estimate_dimension(gs, 0.5, gs.rows.size());
    CHECK(eg.slope > 0.95);
    CHECK(eg.slope < 1.05);
}

TEST_CASE("finite_bounds_check two-point set") {
    FiniteBounds fb = finite_bounds_check(explicit_from_points({Rat(0), make_rat(1, 2)}), 4);
    CHECK(fb.boxes == 2);
    CHECK(fb.g == 2);
    CHECK(fb.root == 2);
    CHECK(fb.lower_ok);
    CHECK(fb.upper_ok);
    CHECK(fb.root_half_ok);
    CHECK_FALSE(fb.saturation_premise);
    CHECK(fb.saturation_ok);  // vacuous without the premise
    CHECK_THROWS_AS(finite_bounds_check(explicit_from_points({Rat(0)}), 3), DomainError);
}

TEST_CASE("finite_bounds_check power sequence at m=16") {
    FiniteBounds fb = finite_bounds_check(power_sequence(make_rat(1, 1)), 16);
    CHECK(fb.boxes == 8);  // indices {0,1,2,3,4,5,8,15}
    CHECK(fb.root == 4);
    CHECK(fb.g_root == 8);
    CHECK(fb.root_half_ok);  // 2*8 >= 8
    CHECK(fb.lower_ok);
    CHECK(fb.upper_ok);
}

TEST_CASE("finite_bounds_check cantor at m=81") {
    FiniteBounds fb = finite_bounds_check(cantor_set(make_rat(1, 3), 8), 81);
    CHECK(fb.lower_ok);
    CHECK(fb.upper_ok);
    CHECK(fb.root_half_ok);
    CHECK(fb.saturation_ok);
}

TEST_CASE("saturation forces the capped sum to its maximum") {
    // eight points in each of boxes 0 and 2 at m=4: premise holds, g = m * N
    std::vector<Rat> pts;
    for (int i = 0; i < 8; ++i) {
        pts.push_back(make_rat(i, 32));
        pts.push_back(make_rat(16 + i, 32));
    }
    FiniteBounds fb = finite_bounds_check(explicit_from_points(pts), 4);
    CHECK(fb.boxes == 2);
    CHECK(fb.saturation_premise);
    CHECK(fb.saturation_ok);
    CHECK(fb.g == 8);
}
