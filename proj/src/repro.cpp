#include "gridpoly/repro.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include "gridpoly/adversary.hpp"
#include "gridpoly/strategies.hpp"

namespace gridpoly {

std::string default_fixture_dir() { return GRIDPOLY_FIXTURE_DIR; }

GridPolygon load_fixture(const std::string& name) {
    std::string path = default_fixture_dir() + "/" + name + ".grid";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing fixture " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    ParsedPolygon parsed = parse_polygon(ss.str());
    if (!parsed.polygon)
        throw std::runtime_error("fixture " + name + " invalid: " + parsed.report.message);
    return *parsed.polygon;
}

namespace {

void add_case(ReproSuiteResult& suite, const std::string& id, const std::string& note,
              const std::string& expected, const std::function<std::string()>& observe) {
    ReproCase c;
    c.case_id = id;
    c.note = note;
    c.expected = expected;
    auto t0 = std::chrono::steady_clock::now();
    try {
        c.observed = observe();
    } catch (const std::exception& e) {
        c.observed = std::string("error: ") + e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    c.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    c.pass = c.observed == c.expected;
    suite.cases.push_back(std::move(c));
}

ReproSuiteResult suite_table1() {
    ReproSuiteResult suite{"table1", {}};
    BlockLibrary lib = load_block_library();
    for (char id : {'b', 'd', 'f', 'h', 'i'}) {
        const Block& b = lib.by_id(id);
        std::string expect =
            std::to_string(b.forced_alg_steps) + "/" + std::to_string(b.opt_steps);
        add_case(suite, std::string("table1/") + id,
                 "forced ratio of the single-block construction",
                 expect, [&lib, id] {
                     const Block& blk = lib.by_id(id);
                     OptimalTour opt = optimal_tour(blk.geometry);
                     DetourReport rep = verify_block_forced_detour(lib, id);
                     return std::to_string(rep.min_total) + "/" + std::to_string(opt.length);
                 });
    }
    return suite;
}

ReproSuiteResult suite_flaw() {
    ReproSuiteResult suite{"flaw", {}};
    struct Case {
        const char* fixture;
        const char* expect;
        const char* note;
    };
    for (Case c : {Case{"flaw_wide", "28/24", "tangent strategy on the wide counterexample"},
                   Case{"flaw_compact", "26/22", "tangent strategy on the compact counterexample"}}) {
        add_case(suite, std::string("flaw/") + c.fixture, c.note, c.expect, [c] {
            GridPolygon p = load_fixture(c.fixture);
            TangentRuleDfs strat;
            RunResult run = run_strategy(p, strat);
            if (!run.ok()) return std::string("run ") + run_status_name(run.status);
            OptimalTour opt = optimal_tour(p);
            return std::to_string(run.transcript.steps()) + "/" + std::to_string(opt.length);
        });
    }
    return suite;
}

ReproSuiteResult suite_limit() {
    ReproSuiteResult suite{"limit", {}};
    add_case(suite, "limit/n1", "chain ratio at n = 1", "7/6",
             [] { return ratio_limit(1).str(); });
    add_case(suite, "limit/n2", "chain ratio at n = 2", "27/23",
             [] { return ratio_limit(2).str(); });
    add_case(suite, "limit/monotone", "ratio increases and stays below 13/11 up to n = 1000",
             "ok", [] {
                 Rational lim(13, 11);
                 for (int n = 1; n < 1000; ++n) {
                     if (!(ratio_limit(n) < ratio_limit(n + 1))) return std::string("not increasing");
                     if (!(ratio_limit(n + 1) < lim)) return std::string("limit crossed");
                 }
                 return std::string("ok");
             });
    add_case(suite, "limit/tail", "13/11 - ratio at n = 1000 is below 1e-4", "ok", [] {
        Rational gap = Rational(13, 11) - ratio_limit(1000);
        return gap < Rational(1, 10000) ? "ok" : gap.str();
    });
    add_case(suite, "limit/scripted", "scripted chain realizes the closed form at blocks_needed(1e-3)",
             "ok", [] {
                 BlockLibrary lib = load_block_library();
                 int n = blocks_needed(Rational(1, 1000), Rational(0));
                 if (!(ratio_limit(n) > Rational(13, 11) - Rational(1, 1000)))
                     return std::string("ratio bound failed at n=" + std::to_string(n));
                 auto strat = make_block_i_trigger_strategy(lib, n);
                 AdversaryRunOutcome out = adversary_run(lib, *strat, n);
                 Rational want(28 + 26LL * (n - 1), 24 + 22LL * (n - 1));
                 if (out.ratio != want)
                     return out.ratio.str() + " != " + want.str() + " at n=" + std::to_string(n);
                 return std::string("ok");
             });
    return suite;
}

ReproSuiteResult suite_merge() {
    ReproSuiteResult suite{"merge", {}};
    struct Case {
        const char* id;
        std::vector<PlacedBlock> blocks;
    };
    std::vector<Case> cases{{"merge/ii", {{'i', false}, {'i', false}}},
                            {"merge/bd", {{'b', false}, {'d', false}}},
                            {"merge/fhb", {{'f', false}, {'h', false}, {'b', false}}},
                            {"merge/idi", {{'i', false}, {'d', true}, {'i', false}}}};
    for (auto& c : cases) {
        int n = static_cast<int>(c.blocks.size());
        std::string ids;
        for (auto& pb : c.blocks) ids += pb.id;
        add_case(suite, c.id, "merged cells and optimum both drop by 2(n-1) for " + ids,
                 "ok", [c, n] {
                     BlockLibrary lib = load_block_library();
                     int sum_cells = 0, sum_opts = 0;
                     for (auto& pb : c.blocks) {
                         sum_cells += lib.by_id(pb.id).geometry.size();
                         sum_opts += lib.by_id(pb.id).opt_steps;
                     }
                     ChainInstance chain = merge_chain(lib, c.blocks);
                     if (chain.cell_count() != sum_cells - 2 * (n - 1))
                         return std::string("cell count ") + std::to_string(chain.cell_count());
                     if (chain.opt_steps != sum_opts - 2 * (n - 1))
                         return std::string("optimum ") + std::to_string(chain.opt_steps);
                     OptimalTour direct = chain.optimum;
                     if (direct.length != chain.merged_polygon.size())
                         return std::string("certificate mismatch");
                     return std::string("ok");
                 });
    }
    return suite;
}

}  // namespace

std::vector<ReproSuiteResult> run_repro(const std::string& suite) {
    std::vector<ReproSuiteResult> out;
    bool all = suite == "all";
    if (all || suite == "table1") out.push_back(suite_table1());
    if (all || suite == "flaw") out.push_back(suite_flaw());
    if (all || suite == "limit") out.push_back(suite_limit());
    if (all || suite == "merge") out.push_back(suite_merge());
    if (out.empty()) throw std::invalid_argument("unknown suite " + suite);
    return out;
}

}  // namespace gridpoly
