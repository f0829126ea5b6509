#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gridpoly/layers.hpp"
#include "gridpoly/polygon.hpp"
#include "support/oracles.hpp"

using namespace gridpoly;

namespace {

GridPolygon from_text(const std::string& text) {
    ParsedPolygon p = parse_polygon(text);
    REQUIRE(p.polygon.has_value());
    return *p.polygon;
}

GridPolygon rectangle(int w, int h, Cell start = {0, 0}) {
    std::vector<Cell> cells;
    for (int x = 0; x < w; ++x)
        for (int y = 0; y < h; ++y) cells.push_back({x, y});
    return make_polygon(cells, start);
}

}  // namespace

TEST_CASE("parse: smallest corridor") {
    GridPolygon p = from_text("S.\n");
    CHECK(p.size() == 2);
    CHECK(p.start() == Cell{0, 0});
    CHECK(p.is_free({1, 0}));
}

TEST_CASE("parse: syntax errors") {
    CHECK_THROWS_AS(parse_polygon(".x\nS.\n"), ParseError);
    CHECK_THROWS_AS(parse_polygon("..\n..\n"), ParseError);   // no start
    CHECK_THROWS_AS(parse_polygon("SS\n"), ParseError);       // two starts
}

TEST_CASE("parse: ring around a blocked cell is a hole") {
    ParsedPolygon p = parse_polygon("...\n.#.\nS..\n");
    CHECK(!p.polygon.has_value());
    CHECK(p.report.error == ValidationError::Hole);
    CHECK(p.report.witness == Cell{1, 1});
}

TEST_CASE("parse: spaces count as blocked") {
    GridPolygon p = from_text("S.\n .\n");
    CHECK(p.size() == 3);
    CHECK(!p.is_free({0, 0}));
}

TEST_CASE("validate: basic shapes") {
    CellSet square{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(validate_simple(square, {0, 0}).ok());

    CellSet corner_touch{{0, 0}, {1, 1}};
    CHECK(validate_simple(corner_touch, {0, 0}).error == ValidationError::Disconnected);

    // square annulus: eight cells around one blocked cell
    CellSet annulus;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            if (!(x == 1 && y == 1)) annulus.insert({x, y});
    CHECK(validate_simple(annulus, {0, 0}).error == ValidationError::Hole);

    CellSet plus{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}};
    CHECK(validate_simple(plus, {1, 1}).error == ValidationError::StartNotOnBoundary);
    CHECK(validate_simple(plus, {1, 0}).ok());

    CHECK(validate_simple({}, {0, 0}).error == ValidationError::Empty);
    CHECK(validate_simple(square, {5, 5}).error == ValidationError::StartNotFree);
}

TEST_CASE("validate: diagonally attached blocked cell is not a hole") {
    // The notch next to the blocked cell keeps its complement 8-connected.
    GridPolygon p = from_text("..##\n.#..\nS...\n");
    CHECK(p.size() == 9);
    CHECK(!p.is_free({1, 1}));
}

TEST_CASE("validate: property against the flood-fill oracle") {
    std::mt19937 rng(20240811);
    int checked = 0;
    for (int iter = 0; iter < 400; ++iter) {
        // random subsets of a 5x5 box, valid or not
        std::set<std::pair<int, int>> raw;
        int count = std::uniform_int_distribution<int>(1, 20)(rng);
        for (int k = 0; k < count; ++k)
            raw.insert({std::uniform_int_distribution<int>(0, 4)(rng),
                        std::uniform_int_distribution<int>(0, 4)(rng)});
        std::pair<int, int> start = *raw.begin();
        CellSet cells;
        for (auto& [x, y] : raw) cells.insert({x, y});
        bool expect = testing::oracle_is_simple(raw, start);
        bool got = validate_simple(cells, {start.first, start.second}).ok();
        CHECK(got == expect);
        ++checked;
    }
    CHECK(checked == 400);
}

TEST_CASE("render round-trips") {
    std::mt19937 rng(7);
    for (int k = 0; k < 50; ++k) {
        GridPolygon p = testing::random_polygon(rng, 24);
        ParsedPolygon q = parse_polygon(render_ascii(p));
        REQUIRE(q.polygon.has_value());
        CHECK(render_ascii(*q.polygon) == render_ascii(p));
    }
}

TEST_CASE("layers: corridor and squares") {
    GridPolygon corridor = rectangle(5, 1);
    LayerMap lm = compute_layers(corridor);
    for (Cell c : corridor.cells()) CHECK(lm.at(c) == 1);

    GridPolygon four = rectangle(4, 4);
    LayerMap lm4 = compute_layers(four);
    int twos = 0;
    for (Cell c : four.cells()) {
        if (c.x >= 1 && c.x <= 2 && c.y >= 1 && c.y <= 2) {
            CHECK(lm4.at(c) == 2);
            ++twos;
        } else {
            CHECK(lm4.at(c) == 1);
        }
    }
    CHECK(twos == 4);

    // three nested rings, derived by peeling one ring at a time
    GridPolygon six = rectangle(6, 6);
    LayerMap lm6 = compute_layers(six);
    for (Cell c : six.cells()) {
        int ring = std::min(std::min(c.x, 5 - c.x), std::min(c.y, 5 - c.y));
        CHECK(lm6.at(c) == ring + 1);
    }
}

TEST_CASE("layers: layer one iff 8-adjacent to a blocked cell") {
    std::mt19937 rng(99);
    for (int k = 0; k < 60; ++k) {
        GridPolygon p = testing::random_polygon(rng, 30);
        LayerMap lm = compute_layers(p);
        for (Cell c : p.cells()) {
            bool touches = false;
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy)
                    if ((dx || dy) && !p.is_free({c.x + dx, c.y + dy})) touches = true;
            CHECK((lm.at(c) == 1) == touches);
        }
    }
}

TEST_CASE("narrow passage: corridor interior cell") {
    GridPolygon corridor = rectangle(5, 1);
    CHECK(is_narrow_passage_cell(corridor, {2, 0}));
    auto passages = narrow_passages(corridor);
    REQUIRE(passages.size() == 1);
    CHECK(passages[0].cells.size() == 5);
}

TEST_CASE("narrow passage: full 2x3 rectangle degenerates to one passage") {
    GridPolygon p = rectangle(3, 2);
    for (Cell c : p.cells()) CHECK(is_narrow_passage_cell(p, c));
    auto passages = narrow_passages(p);
    REQUIRE(passages.size() == 1);
    CHECK(passages[0].cells.size() == 6);
}

TEST_CASE("narrow passage: thick square has none") {
    GridPolygon p = rectangle(10, 10);
    auto passages = narrow_passages(p);
    CHECK(passages.empty());
    CHECK(!is_narrow_passage_cell(p, {4, 0}));
    CHECK(!is_narrow_passage_cell(p, {0, 0}));  // corner: diagonal interior exposed
    CHECK_THROWS_AS(is_narrow_passage_cell(p, {4, 4}), std::invalid_argument);
}

TEST_CASE("narrow passage: the five-passage fixture") {
    GridPolygon p = from_text(
        "###..#####\n"
        "###.#.####\n"
        "###.....##\n"
        "###.......\n"
        "###.....##\n"
        "......S.##\n"
        "#####.####\n");
    auto passages = narrow_passages(p);
    CHECK(passages.size() == 5);

    // c_e: first layer, but deleting it pulls its south neighbour into the
    // first layer, so it is not part of a passage.
    LayerMap lm = compute_layers(p);
    Cell c_e{5, 4};
    CHECK(lm.at(c_e) == 1);
    CHECK(lm.at({5, 3}) == 2);
    CHECK(!is_narrow_passage_cell(p, c_e));
}

TEST_CASE("mirror: involution and invariants") {
    std::mt19937 rng(41);
    for (int k = 0; k < 60; ++k) {
        GridPolygon p = testing::random_polygon(rng, 28);
        GridPolygon m = mirror_horizontal(p);
        CHECK(m.size() == p.size());
        CHECK(render_ascii(mirror_horizontal(m)) == render_ascii(p));

        std::multiset<int> layers_p, layers_m;
        LayerMap lp = compute_layers(p), lmm = compute_layers(m);
        for (auto& [c, l] : lp.layer_of) layers_p.insert(l);
        for (auto& [c, l] : lmm.layer_of) layers_m.insert(l);
        CHECK(layers_p == layers_m);
        CHECK(narrow_passages(p).size() == narrow_passages(m).size());
    }
}

TEST_CASE("mirror: L tromino flips") {
    GridPolygon l = from_text("S#\n..\n");
    GridPolygon m = mirror_horizontal(l);
    CHECK(render_ascii(m) == "..\nS#\n");  // start tracked through the flip

    GridPolygon square = rectangle(2, 2);
    CHECK(mirror_horizontal(square).size() == 4);
}

TEST_CASE("narrow passages are consistent with the per-cell test") {
    std::mt19937 rng(2024);
    for (int k = 0; k < 40; ++k) {
        GridPolygon p = testing::random_polygon(rng, 26);
        LayerMap lm = compute_layers(p);
        CellSet in_passage;
        auto passages = narrow_passages(p);
        for (auto& np : passages)
            for (Cell c : np.cells) in_passage.insert(c);
        for (Cell c : p.cells()) {
            bool expect = lm.at(c) == 1 && is_narrow_passage_cell(p, c);
            CHECK(expect == (in_passage.count(c) != 0));
        }
    }
}
