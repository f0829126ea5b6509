#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gridpoly/layers.hpp"
#include "gridpoly/strategies.hpp"
#include "gridpoly/tour.hpp"
#include "gridpoly/transcript.hpp"
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

void check_legal(const GridPolygon& p, const Transcript& t) {
    Cell pos = t.start;
    CHECK(p.is_free(pos));
    for (Cell c : t.moves) {
        CHECK(adjacent4(pos, c));
        CHECK(p.is_free(c));
        pos = c;
    }
    if (t.complete) {
        CHECK(pos == t.start);
        CellSet visited(t.moves.begin(), t.moves.end());
        visited.insert(t.start);
        CHECK(static_cast<int>(visited.size()) == p.size());
    }
}

}  // namespace

TEST_CASE("sense: corridors and rooms") {
    GridPolygon corridor = rectangle(2, 1);
    SensorReading r = sense(corridor, {0, 0});
    CHECK(r.at(Dir::East) == CellStatus::Free);
    CHECK(r.at(Dir::North) == CellStatus::Blocked);
    CHECK(r.at(Dir::South) == CellStatus::Blocked);
    CHECK(r.at(Dir::West) == CellStatus::Blocked);

    GridPolygon room = rectangle(3, 3, {1, 0});
    SensorReading c = sense(room, {1, 1});
    for (Dir d : all_dirs) CHECK(c.at(d) == CellStatus::Free);

    CHECK_THROWS_AS(sense(room, {9, 9}), std::invalid_argument);
}

TEST_CASE("sense: the five-passage fixture cell c") {
    GridPolygon p = from_text(
        "###..#####\n"
        "###.#.####\n"
        "###.....##\n"
        "###.......\n"
        "###.....##\n"
        "......S.##\n"
        "#####.####\n");
    SensorReading r = sense(p, {1, 1});
    CHECK(r.at(Dir::East) == CellStatus::Free);
    CHECK(r.at(Dir::West) == CellStatus::Free);
    CHECK(r.at(Dir::North) == CellStatus::Blocked);
    CHECK(r.at(Dir::South) == CellStatus::Blocked);
}

TEST_CASE("lhdfs: tiny polygons") {
    LeftHandDfs s;
    RunResult two = run_strategy(rectangle(2, 1), s);
    CHECK(two.ok());
    CHECK(two.transcript.steps() == 2);
    CHECK(two.transcript.complete);

    RunResult square = run_strategy(rectangle(2, 2), s);
    CHECK(square.ok());
    CHECK(square.transcript.steps() == 4);

    RunResult one = run_strategy(rectangle(1, 1), s);
    CHECK(one.ok());
    CHECK(one.transcript.steps() == 0);
}

TEST_CASE("lhdfs: dfs bound and legality on random polygons") {
    std::mt19937 rng(5150);
    for (int k = 0; k < 200; ++k) {
        GridPolygon p = testing::random_polygon(rng, 40);
        LeftHandDfs s;
        RunResult r = run_strategy(p, s);
        REQUIRE(r.ok());
        check_legal(p, r.transcript);
        CHECK(r.transcript.steps() <= 2 * (p.size() - 1));
    }
}

TEST_CASE("lhdfs: width-one corridors are explored optimally") {
    std::mt19937 rng(6021);
    for (int k = 0; k < 60; ++k) {
        GridPolygon p = testing::random_corridor(rng, 24);
        auto passages = narrow_passages(p);
        REQUIRE(passages.size() == 1);
        REQUIRE(passages[0].cells.size() == static_cast<std::size_t>(p.size()));
        LeftHandDfs s;
        RunResult r = run_strategy(p, s);
        REQUIRE(r.ok());
        CHECK(r.transcript.steps() == 2 * (p.size() - 1));  // tree tours are forced
    }
}

TEST_CASE("lhdfs: the stub passage is walked in six steps") {
    GridPolygon p = from_text(
        "###..#####\n"
        "###.#.####\n"
        "###.....##\n"
        "###.......\n"
        "###.....##\n"
        "......S.##\n"
        "#####.####\n");
    LeftHandDfs s;
    RunResult r = run_strategy(p, s);
    REQUIRE(r.ok());
    auto pos = r.transcript.positions();
    // locate the dead end of the lower-left passage
    auto it = std::find(pos.begin(), pos.end(), Cell{0, 1});
    REQUIRE(it != pos.end());
    std::size_t k = static_cast<std::size_t>(it - pos.begin());
    REQUIRE(k >= 3);
    REQUIRE(k + 3 < pos.size());
    std::vector<Cell> window(pos.begin() + (k - 3), pos.begin() + (k + 4));
    CHECK(window == std::vector<Cell>{{3, 1}, {2, 1}, {1, 1}, {0, 1}, {1, 1}, {2, 1}, {3, 1}});
}

TEST_CASE("engine: illegal strategies are caught") {
    struct WallRunner : Strategy {
        std::string name() const override { return "wall"; }
        void reset() override {}
        StrategyDecision decide(const KnowledgeMap&, Cell, const std::vector<Cell>&) override {
            return StrategyDecision::move(Dir::North);
        }
    };
    GridPolygon corridor = rectangle(3, 1);
    WallRunner w;
    RunResult r = run_strategy(corridor, w);
    CHECK(r.status == RunStatus::IllegalMove);

    struct Quitter : Strategy {
        std::string name() const override { return "quit"; }
        void reset() override {}
        StrategyDecision decide(const KnowledgeMap&, Cell, const std::vector<Cell>&) override {
            return StrategyDecision::halt();
        }
    };
    Quitter q;
    RunResult rq = run_strategy(corridor, q);
    CHECK(rq.status == RunStatus::HaltedIncomplete);

    struct Circler : Strategy {
        std::string name() const override { return "circle"; }
        void reset() override {}
        StrategyDecision decide(const KnowledgeMap&, Cell pos, const std::vector<Cell>&) override {
            return StrategyDecision::move(pos.x == 0 ? Dir::East : Dir::West);
        }
    };
    Circler c;
    RunResult rc = run_strategy(rectangle(2, 1), c, 20);
    CHECK(rc.status == RunStatus::StepLimitExceeded);
}

TEST_CASE("engine: map monotonicity and determinism") {
    std::mt19937 rng(808);
    for (int k = 0; k < 30; ++k) {
        GridPolygon p = testing::random_polygon(rng, 30);
        LeftHandDfs a, b;
        RunResult ra = run_strategy(p, a);
        RunResult rb = run_strategy(p, b);
        CHECK(serialize_transcript(ra.transcript) == serialize_transcript(rb.transcript));
    }
}

TEST_CASE("transcript serialization round-trips") {
    GridPolygon p = rectangle(3, 2);
    LeftHandDfs s;
    RunResult r = run_strategy(p, s);
    std::string text = serialize_transcript(r.transcript);
    Transcript back = parse_transcript(text);
    CHECK(back.moves == r.transcript.moves);
    CHECK(back.revisits == r.transcript.revisits);
    CHECK(back.complete == r.transcript.complete);
    CHECK(serialize_transcript(back) == text);
}

TEST_CASE("tangent rule: U-shaped trigger and separation") {
    // A width-3 dead-end corridor entered along the top: after the top row
    // and the turn, the middle cell of the second column is U-surrounded.
    //   . . . .
    //   s . c .
    //   # # . .
    // Build the visited state by hand.
    KnowledgeMap map;
    auto learn_free = [&](std::initializer_list<Cell> cs) {
        for (Cell c : cs) map.learn(c, CellStatus::Free);
    };
    auto visit = [&](std::initializer_list<Cell> cs) {
        for (Cell c : cs) map.mark_visited(c);
    };
    learn_free({{0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}, {3, 2}});
    map.learn({0, 0}, CellStatus::Blocked);
    map.learn({1, 0}, CellStatus::Blocked);
    map.learn({2, 0}, CellStatus::Free);
    map.learn({3, 0}, CellStatus::Free);
    visit({{0, 1}, {0, 2}, {1, 2}, {2, 2}, {3, 2}, {3, 1}, {2, 1}});
    // Agent at (2,1): c = (1,1), collinear visited pair (2,1),(0,1)... the far
    // neighbour is (0,1), visited; the U over the top row is visited; the
    // supporting line y=1 separates the start (0,2)? No: same side. Use a
    // start below the line instead.
    CHECK(tangent_rule_triggered(map, {2, 1}, {2, 0}).value_or(Cell{9, 9}) == Cell{1, 1});
    // active start above the line, same side as the known region: no fire
    CHECK(!tangent_rule_triggered(map, {2, 1}, {0, 2}).has_value());
}

TEST_CASE("split cell: T junction") {
    // T-shaped polygon: stem below, two arms; standing at the junction after
    // both arms are known splits the unvisited region in two.
    GridPolygon p = from_text(
        "...S...\n"
        "###.###\n"
        "###.###\n");
    TangentRuleDfs s;
    RunResult r = run_strategy(p, s);
    REQUIRE(r.ok());
    check_legal(p, r.transcript);

    KnowledgeMap map;
    for (Cell c : p.cells()) map.learn(c, CellStatus::Free);
    for (Cell c : p.cells())
        for (Dir d : all_dirs)
            if (!p.is_free(step(c, d))) map.learn(step(c, d), CellStatus::Blocked);
    map.mark_visited(p.start());
    map.mark_visited({3, 1});
    auto split = detect_split_cell(map, {3, 1}, p.start());
    REQUIRE(split.has_value());
    CHECK(split->components.size() == 3);  // two arms and the stem tip
}

TEST_CASE("tangent strategy equals plain dfs when neither override fires") {
    // Rectangles seen from a corner: the unvisited region never splits and no
    // cell is ever isolated, so the overrides stay idle.
    for (int w = 2; w <= 12; ++w) {
        for (int h : {1, 2}) {
            if (w * h < 2) continue;
            GridPolygon p = rectangle(w, h);
            LeftHandDfs base;
            TangentRuleDfs tangent;
            RunResult rb = run_strategy(p, base);
            RunResult rt = run_strategy(p, tangent);
            REQUIRE(rb.ok());
            REQUIRE(rt.ok());
            CHECK(tangent.tangent_applications() == 0);
            CHECK(rb.transcript.moves == rt.transcript.moves);
        }
    }
}
