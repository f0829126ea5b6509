#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gridpoly/tour.hpp"
#include "support/oracles.hpp"

using namespace gridpoly;

namespace {

GridPolygon rectangle(int w, int h, Cell start = {0, 0}) {
    std::vector<Cell> cells;
    for (int x = 0; x < w; ++x)
        for (int y = 0; y < h; ++y) cells.push_back({x, y});
    return make_polygon(cells, start);
}

GridPolygon corridor(int len) { return rectangle(len, 1); }

}  // namespace

TEST_CASE("hamiltonian: 2x2 square") {
    auto cyc = hamiltonian_cycle(rectangle(2, 2));
    REQUIRE(cyc.has_value());
    CHECK(cyc->size() == 5);
    CHECK(cyc->front() == cyc->back());
}

TEST_CASE("hamiltonian: 3x3 square fails on parity") {
    CHECK(!hamiltonian_cycle(rectangle(3, 3)).has_value());
}

TEST_CASE("hamiltonian: corridor has none") {
    CHECK(!hamiltonian_cycle(corridor(5)).has_value());
}

TEST_CASE("optimal: corridor is out-and-back") {
    OptimalTour t = optimal_tour(corridor(5));
    CHECK(t.length == 8);
    CHECK(t.certificate == TourCertificate::ExactSearch);
    CHECK(t.path.front() == t.path.back());
}

TEST_CASE("optimal: degenerate sizes") {
    GridPolygon one = corridor(1);
    OptimalTour t1 = optimal_tour(one);
    CHECK(t1.length == 0);
    OptimalTour t2 = optimal_tour(corridor(2));
    CHECK(t2.length == 2);
}

TEST_CASE("optimal: equals the unpruned oracle on random small polygons") {
    std::mt19937 rng(123);
    for (int k = 0; k < 150; ++k) {
        GridPolygon p = testing::random_polygon(rng, 11);
        OptimalTour t = optimal_tour(p);
        int expect = testing::oracle_optimal_length(p);
        CHECK(t.length == expect);
        // the returned path is a legal closed covering walk of that length
        REQUIRE(t.path.size() == static_cast<std::size_t>(t.length) + 1);
        CHECK(t.path.front() == p.start());
        CHECK(t.path.back() == p.start());
        CellSet covered;
        for (std::size_t j = 0; j + 1 < t.path.size(); ++j) {
            CHECK(adjacent4(t.path[j], t.path[j + 1]));
            covered.insert(t.path[j]);
        }
        covered.insert(t.path.back());
        CHECK(static_cast<int>(covered.size()) == p.size());
    }
}

TEST_CASE("optimal: length lower bound and parity") {
    std::mt19937 rng(321);
    for (int k = 0; k < 80; ++k) {
        GridPolygon p = testing::random_polygon(rng, 14);
        OptimalTour t = optimal_tour(p);
        CHECK(t.length >= p.size() - (p.size() == 1 ? 1 : 0));
        if (p.size() > 1) {
            CHECK(t.length % 2 == 0);
            CHECK((t.length == p.size()) ==
                  (t.certificate == TourCertificate::Hamiltonian));
        }
    }
}

TEST_CASE("optimal: deterministic golden path") {
    OptimalTour a = optimal_tour(rectangle(3, 2));
    OptimalTour b = optimal_tour(rectangle(3, 2));
    CHECK(a.path == b.path);
    CHECK(a.length == 6);
}

TEST_CASE("min_completion: definition edges") {
    GridPolygon p = rectangle(3, 2);
    OptimalTour t = optimal_tour(p);
    CHECK(min_completion(p, {}) == t.length);
    std::vector<Cell> full(t.path.begin(), t.path.end());
    CHECK(min_completion(p, full) == 0);
}

TEST_CASE("min_completion: one step changes the answer by at most one") {
    std::mt19937 rng(777);
    for (int k = 0; k < 40; ++k) {
        GridPolygon p = testing::random_polygon(rng, 12);
        // random legal prefix
        std::vector<Cell> prefix{p.start()};
        Cell pos = p.start();
        int len = std::uniform_int_distribution<int>(0, 10)(rng);
        for (int j = 0; j < len; ++j) {
            std::vector<Cell> nexts;
            for (Dir d : all_dirs)
                if (p.is_free(step(pos, d))) nexts.push_back(step(pos, d));
            pos = nexts[std::uniform_int_distribution<std::size_t>(0, nexts.size() - 1)(rng)];
            prefix.push_back(pos);
        }
        int before = min_completion(p, prefix);
        std::vector<Cell> nexts;
        for (Dir d : all_dirs)
            if (p.is_free(step(pos, d))) nexts.push_back(step(pos, d));
        if (nexts.empty()) continue;
        prefix.push_back(nexts[0]);
        int after = min_completion(p, prefix);
        CHECK(after >= before - 1);
        CHECK(after <= before + 1);
    }
}

TEST_CASE("min_completion: rejects illegal prefixes") {
    GridPolygon p = rectangle(3, 2);
    CHECK_THROWS_AS(min_completion(p, {{2, 0}, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(min_completion(p, {{0, 0}, {0, 5}}), std::invalid_argument);
}

TEST_CASE("competitive ratio is exact") {
    OptimalTour t;
    t.length = 24;
    CHECK(competitive_ratio(28, t) == Rational(7, 6));
    t.length = 22;
    CHECK(competitive_ratio(26, t) == Rational(13, 11));
    t.length = 4;
    CHECK(competitive_ratio(4, t) == Rational(1));
    CHECK(competitive_ratio(28, t) != Rational(28, 5));
}

TEST_CASE("rational arithmetic") {
    CHECK(Rational(28, 24) == Rational(7, 6));
    CHECK(Rational(26, 22) > Rational(7, 6));
    CHECK((Rational(13, 11) - Rational(1, 1000)).str() == "12989/11000");
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("instance too large without a certificate") {
    // a 29-cell tree: no Hamiltonian cycle, above a reduced threshold
    std::vector<Cell> cells;
    for (int x = 0; x < 15; ++x) cells.push_back({x, 0});
    for (int y = 1; y < 15; ++y) cells.push_back({7, y});
    GridPolygon p = make_polygon(cells, {0, 0});
    CHECK_THROWS_AS(optimal_tour(p, 20), InstanceTooLarge);
    CHECK(optimal_tour(p, 32).length == 2 * (p.size() - 1));
}
