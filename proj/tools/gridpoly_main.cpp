// Command-line workbench: validate and render polygons, run online
// strategies, compute exact optima and ratios, drive the block adversary, and
// re-derive the reference numbers as a regression suite.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gridpoly/adversary.hpp"
#include "gridpoly/layers.hpp"
#include "gridpoly/repro.hpp"
#include "gridpoly/strategies.hpp"

using nlohmann::json;
using namespace gridpoly;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string frac = text.substr(dot + 1);
        std::int64_t den = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
        std::int64_t whole = dot == 0 ? 0 : std::stoll(text.substr(0, dot));
        return Rational(whole * den + std::stoll(frac), den);
    }
    return Rational(std::stoll(text));
}

std::unique_ptr<Strategy> make_strategy(const std::string& name) {
    if (name == "lhdfs") return std::make_unique<LeftHandDfs>();
    if (name == "tangent") return std::make_unique<TangentRuleDfs>();
    throw CLI::ValidationError("--strategy", "unknown strategy " + name);
}

std::string render_svg(const GridPolygon& p, const std::vector<Cell>& path) {
    const int cellpx = 20;
    Cell lo = p.min_corner(), hi = p.max_corner();
    int w = (hi.x - lo.x + 1) * cellpx, h = (hi.y - lo.y + 1) * cellpx;
    auto px = [&](Cell c) {
        return std::pair<int, int>{(c.x - lo.x) * cellpx, (hi.y - c.y) * cellpx};
    };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    for (Cell c : p.cells()) {
        auto [x, y] = px(c);
        out << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cellpx << "\" height=\""
            << cellpx << "\" fill=\"" << (c == p.start() ? "#ffe08a" : "#f4f4f4")
            << "\" stroke=\"#444\"/>\n";
    }
    if (!path.empty()) {
        out << "  <polyline fill=\"none\" stroke=\"#1f5fd0\" stroke-width=\"3\" points=\"";
        for (Cell c : path) {
            auto [x, y] = px(c);
            out << (x + cellpx / 2) << "," << (y + cellpx / 2) << " ";
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_path_ascii(const GridPolygon& p, const std::vector<Cell>& path) {
    CellSet on_path(path.begin(), path.end());
    Cell lo = p.min_corner(), hi = p.max_corner();
    std::string out;
    for (std::int32_t y = hi.y; y >= lo.y; --y) {
        for (std::int32_t x = lo.x; x <= hi.x; ++x) {
            Cell c{x, y};
            if (c == p.start())
                out += 'S';
            else if (on_path.count(c))
                out += 'o';
            else
                out += p.is_free(c) ? '.' : '#';
        }
        out += '\n';
    }
    return out;
}

json repro_to_json(const std::vector<ReproSuiteResult>& suites, bool timings) {
    json out;
    out["schema"] = 1;
    json js = json::array();
    for (const auto& s : suites) {
        json suite;
        suite["suite"] = s.suite;
        suite["pass"] = s.all_pass();
        json cs = json::array();
        for (const auto& c : s.cases) {
            json jc;
            jc["case_id"] = c.case_id;
            jc["note"] = c.note;
            jc["expected"] = c.expected;
            jc["observed"] = c.observed;
            jc["pass"] = c.pass;
            if (timings) jc["runtime_ms"] = c.runtime_ms;
            cs.push_back(jc);
        }
        suite["cases"] = cs;
        js.push_back(suite);
    }
    out["suites"] = js;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simple grid polygon exploration workbench"};
    app.require_subcommand(1);

    std::string path, strategy = "lhdfs", render = "none", suite = "all", out_path;
    int blocks = 0;
    std::string epsilon, additive = "0";
    bool timings = false;

    auto* v = app.add_subcommand("validate", "validate an ASCII polygon file");
    v->add_option("path", path)->required();

    auto* e = app.add_subcommand("explore", "run an online strategy");
    e->add_option("path", path)->required();
    e->add_option("--strategy", strategy)->check(CLI::IsMember({"lhdfs", "tangent"}));
    e->add_option("--render", render)->check(CLI::IsMember({"ascii", "svg", "none"}));

    auto* o = app.add_subcommand("optimal", "exact optimal closed exploration tour");
    o->add_option("path", path)->required();

    auto* a = app.add_subcommand("adversary", "run the block-presenting adversary");
    a->add_option("--strategy", strategy)
        ->check(CLI::IsMember({"lhdfs", "tangent", "scripted-i"}));
    a->add_option("--blocks", blocks);
    a->add_option("--epsilon", epsilon);
    a->add_option("--additive", additive);
    a->add_option("--out", out_path, "write the final polygon to this file");

    auto* r = app.add_subcommand("repro", "reference-number regression suites");
    r->add_option("--suite", suite)
        ->check(CLI::IsMember({"table1", "flaw", "limit", "merge", "all"}));
    r->add_flag("--timings", timings, "include per-case runtimes in the report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*v) {
            json rep;
            try {
                ParsedPolygon parsed = parse_polygon(slurp(path));
                rep["valid"] = parsed.report.ok();
                rep["error"] = validation_error_name(parsed.report.error);
                if (parsed.report.witness)
                    rep["witness"] = {parsed.report.witness->x, parsed.report.witness->y};
                if (parsed.polygon) {
                    rep["cells"] = parsed.polygon->size();
                    rep["polygon_id"] = parsed.polygon->content_hash();
                    rep["narrow_passages"] = narrow_passages(*parsed.polygon).size();
                }
                std::cout << rep.dump(2) << "\n";
                return parsed.report.ok() ? 0 : 2;
            } catch (const ParseError& pe) {
                rep["valid"] = false;
                rep["error"] = "syntax";
                rep["message"] = pe.what();
                std::cout << rep.dump(2) << "\n";
                return 2;
            }
        }

        if (*e) {
            ParsedPolygon parsed = parse_polygon(slurp(path));
            if (!parsed.polygon) {
                std::cerr << "invalid polygon: " << parsed.report.message << "\n";
                return 2;
            }
            auto strat = make_strategy(strategy);
            RunResult run = run_strategy(*parsed.polygon, *strat);
            json rep;
            rep["status"] = run_status_name(run.status);
            rep["steps"] = run.transcript.steps();
            rep["revisits"] = run.transcript.revisits;
            rep["complete"] = run.transcript.complete;
            if (run.ok() && parsed.polygon->size() <= default_exact_threshold()) {
                OptimalTour opt = optimal_tour(*parsed.polygon);
                rep["optimal"] = opt.length;
                rep["ratio_vs_optimal"] =
                    competitive_ratio(run.transcript.steps(), opt).str();
            }
            std::cout << rep.dump(2) << "\n";
            std::cerr << serialize_transcript(run.transcript);
            if (render == "ascii")
                std::cerr << render_path_ascii(*parsed.polygon, run.transcript.positions());
            if (render == "svg")
                std::cout << render_svg(*parsed.polygon, run.transcript.positions());
            return run.ok() ? 0 : 3;
        }

        if (*o) {
            ParsedPolygon parsed = parse_polygon(slurp(path));
            if (!parsed.polygon) {
                std::cerr << "invalid polygon: " << parsed.report.message << "\n";
                return 2;
            }
            OptimalTour opt = optimal_tour(*parsed.polygon);
            json rep;
            rep["length"] = opt.length;
            rep["certificate"] =
                opt.certificate == TourCertificate::Hamiltonian ? "HAMILTONIAN" : "EXACT_SEARCH";
            std::cout << rep.dump(2) << "\n";
            Transcript t;
            t.polygon_id = parsed.polygon->content_hash();
            t.strategy = "optimal";
            t.start = opt.path.front();
            t.moves.assign(opt.path.begin() + 1, opt.path.end());
            t.complete = true;
            std::cerr << serialize_transcript(t);
            return 0;
        }

        if (*a) {
            BlockLibrary lib = load_block_library();
            int n = blocks;
            if (!epsilon.empty()) {
                int needed = blocks_needed(parse_rational(epsilon), parse_rational(additive));
                n = std::max(n, needed);
            }
            if (n < 1) throw CLI::ValidationError("--blocks", "need --blocks or --epsilon");
            std::unique_ptr<Strategy> strat = strategy == "scripted-i"
                                                  ? make_block_i_trigger_strategy(lib, n)
                                                  : make_strategy(strategy);
            AdversaryRunOutcome out = adversary_run(lib, *strat, n);
            json rep;
            rep["blocks"] = n;
            rep["steps"] = out.run.transcript.steps();
            rep["optimal"] = out.optimum.length;
            rep["ratio"] = out.ratio.str();
            rep["ratio_approx"] = out.ratio.approx();
            std::string seq;
            for (auto& pb : out.blocks_triggered) {
                seq += pb.id;
                if (pb.mirrored) seq += '\'';
            }
            rep["block_sequence"] = seq;
            rep["polygon_cells"] = out.polygon.size();
            std::cout << rep.dump(2) << "\n";
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                f << render_ascii(out.polygon);
            }
            return 0;
        }

        if (*r) {
            auto suites = run_repro(suite);
            bool pass = true;
            for (const auto& s : suites)
                for (const auto& c : s.cases) {
                    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.case_id << " expected "
                              << c.expected << " observed " << c.observed << "\n";
                    pass = pass && c.pass;
                }
            std::cout << repro_to_json(suites, timings).dump(2) << "\n";
            return pass ? 0 : 4;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}
