#include "doctest.h"

#include <random>

#include "boxlab/grid.hpp"

using namespace boxlab;

TEST_CASE("box_index endpoints and ownership") {
    CHECK(box_index(Rat(0), 4) == 0);
    CHECK(box_index(Rat(1), 4) == 3);             // top box closed at 1
    CHECK(box_index(make_rat(1, 4), 4) == 1);     // left endpoint owns its box
    CHECK(box_index(make_rat(1, 2), 4) == 2);
    CHECK(box_index(Rat(1), 1) == 0);
}

TEST_CASE("box_index stays exact where doubles round") {
    // 1/3 * 3 is exactly 1; a double evaluation of 0.333... * 3 rounds below it
    CHECK(box_index(make_rat(1, 3), 3) == 1);
    // one ulp-ish below a boundary must stay in the lower box
    BigInt den = BigInt(1) << 62;
    CHECK(box_index(make_rat(den / 4 - 1, den), 4) == 0);
    CHECK(box_index(make_rat(den / 4, den), 4) == 1);
}

TEST_CASE("box_index rejects bad input") {
    CHECK_THROWS_AS(box_index(make_rat(3, 2), 4), DomainError);
    CHECK_THROWS_AS(box_index(make_rat(-1, 8), 4), DomainError);
    CHECK_THROWS_AS(box_index(make_rat(1, 2), 0), DomainError);
}

TEST_CASE("row_index mirrors boxes below one and continues above") {
    CHECK(row_index(Rat(0), 8) == 0);
    CHECK(row_index(Rat(1), 4) == 3);             // clamped like the top box
    CHECK(row_index(make_rat(3, 2), 4) == 6);     // above 1: plain floor, no clamp
    CHECK(row_index(Rat(2), 4) == 8);
    CHECK(row_index(make_rat(1, 4), 4) == 1);
    CHECK_THROWS_AS(row_index(make_rat(-1, 2), 4), DomainError);
}

TEST_CASE("occupancy_of_points basic profile") {
    std::vector<Rat> pts{Rat(0), make_rat(1, 8), make_rat(1, 2)};
    OccupancyProfile prof = occupancy_of_points(pts, 2, std::nullopt);
    REQUIRE(prof.entries.size() == 2);
    CHECK(prof.entries[0] == std::pair<std::uint64_t, std::uint64_t>{0, 2});
    CHECK(prof.entries[1] == std::pair<std::uint64_t, std::uint64_t>{1, 1});
}

TEST_CASE("occupancy_of_points applies the cap") {
    std::vector<Rat> pts{Rat(0), make_rat(1, 8), make_rat(1, 4), make_rat(1, 2),
                         make_rat(9, 16), make_rat(5, 8), Rat(1)};
    OccupancyProfile prof = occupancy_of_points(pts, 4, 2);
    REQUIRE(prof.entries.size() == 4);
    CHECK(prof.entries[0].second == 2);  // three points in box 0, capped
    CHECK(prof.entries[1].second == 1);
    CHECK(prof.entries[2].second == 2);  // 1/2, 9/16, 5/8 all in box 2, capped
    CHECK(prof.entries[3].second == 1);
    CHECK_THROWS_AS(occupancy_of_points(pts, 4, 0), DomainError);
}

TEST_CASE("uncapped occupancy conserves mass") {
    std::mt19937_64 eng(12345);
    for (int round = 0; round < 20; ++round) {
        std::vector<Rat> pts;
        std::uint64_t den = 1u << 16;
        for (int i = 0; i < 200; ++i)
            pts.push_back(make_rat(static_cast<long long>(eng() % (den + 1)),
                                   static_cast<long long>(den)));
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        std::uint64_t m = 2 + eng() % 500;
        OccupancyProfile prof = occupancy_of_points(pts, m, std::nullopt);
        std::uint64_t total = 0, last_box = 0;
        bool first = true;
        for (const auto& [box, cnt] : prof.entries) {
            CHECK(box < m);
            if (!first) CHECK(box > last_box);
            last_box = box;
            first = false;
            total += cnt;
        }
        CHECK(total == pts.size());
    }
}

TEST_CASE("graph cell counting") {
    std::vector<std::pair<Rat, Rat>> origin{{Rat(0), Rat(0)}};
    CHECK(graph_box_count(origin, 2) == 1);

    std::vector<std::pair<Rat, Rat>> diag{{Rat(0), Rat(0)},
                                          {make_rat(1, 2), make_rat(1, 2)},
                                          {Rat(1), Rat(1)}};
    CHECK(graph_box_count(diag, 2) == 2);  // cells (0,0) and (1,1)

    std::vector<std::pair<Rat, Rat>> flat;
    for (int k = 0; k < 8; ++k) flat.emplace_back(make_rat(k, 8), make_rat(3, 10));
    CHECK(graph_box_count(flat, 4) == 4);  // one row, four columns

    auto cells = graph_cells(diag, 2);
    CHECK(cells.count(Cell2D{0, 0}) == 1);
    CHECK(cells.count(Cell2D{1, 1}) == 1);
    CHECK(cells.size() == 2);
}
