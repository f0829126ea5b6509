#include "gridpoly/blocks.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gridpoly {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BlockValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void require(bool cond, const std::string& what) {
    if (!cond) throw BlockValidationError("block library: " + what);
}

// The splice cycle must pass through the vertical edge of a two-cell
// rectangle; rotate/orient a raw cycle so splicing is mechanical.
bool cycle_uses_edge(const std::vector<Cell>& cycle, Cell a, Cell b) {
    for (std::size_t k = 0; k + 1 < cycle.size(); ++k) {
        if ((cycle[k] == a && cycle[k + 1] == b) || (cycle[k] == b && cycle[k + 1] == a))
            return true;
    }
    return false;
}

// Find a Hamiltonian cycle that uses both junction vertical edges by forcing
// the first and last step of the closed path at the entry rectangle and
// checking the exit edge afterwards; the blocks are small enough to retry a
// few orientations.
std::vector<Cell> find_splice_cycle(const GridPolygon& g, std::pair<Cell, Cell> entry,
                                    std::pair<Cell, Cell> exit_rect) {
    auto ham = hamiltonian_cycle(g);
    require(ham.has_value(), "geometry admits no Hamiltonian cycle");
    if (cycle_uses_edge(*ham, entry.first, entry.second) &&
        cycle_uses_edge(*ham, exit_rect.first, exit_rect.second))
        return *ham;
    // Search again on the same polygon with a start placed so the DFS is
    // steered through the junction edges. Exhaustive fallback: enumerate all
    // cycles is unnecessary; the spine blocks all admit a ring-style cycle.
    for (Cell alt : {entry.first, exit_rect.first, exit_rect.second}) {
        GridPolygon g2 = GridPolygon::from_validated(g.cells(), alt);
        auto h2 = hamiltonian_cycle(g2);
        if (h2 && cycle_uses_edge(*h2, entry.first, entry.second) &&
            cycle_uses_edge(*h2, exit_rect.first, exit_rect.second))
            return *h2;
    }
    throw BlockValidationError("no Hamiltonian cycle through both junction edges");
}

std::pair<Cell, Cell> column_rect(const GridPolygon& g, std::int32_t x, const char* which) {
    std::vector<Cell> col;
    for (Cell c : g.cells())
        if (c.x == x) col.push_back(c);
    require(col.size() == 2, std::string(which) + " column must hold exactly two cells");
    std::sort(col.begin(), col.end());
    require(col[0].y + 1 == col[1].y, std::string(which) + " rectangle cells must be stacked");
    return {col[0], col[1]};
}

}  // namespace

const Block& BlockLibrary::by_id(char id) const {
    for (const Block& b : blocks_)
        if (b.id == id) return b;
    throw std::invalid_argument(std::string("unknown block id '") + id + "'");
}

const Block& BlockLibrary::mirrored(char id) const {
    for (const Block& b : mirrored_)
        if (b.id == id) return b;
    throw std::invalid_argument(std::string("unknown block id '") + id + "'");
}

char BlockLibrary::spine_block(int state) const {
    switch (state) {
        case 1: return 'b';
        case 2: return 'd';
        case 3: return 'f';
    }
    throw std::invalid_argument("spine state out of range");
}

std::string default_block_library_dir() { return std::string(GRIDPOLY_DATA_DIR) + "/blocks"; }

BlockLibrary load_block_library(const std::string& dir) { return BlockLibrary::load(dir); }

BlockLibrary BlockLibrary::load(const std::string& dir) {
    nlohmann::json meta = nlohmann::json::parse(read_file(dir + "/library.json"));
    BlockLibrary lib;

    for (const auto& jb : meta.at("blocks")) {
        Block b;
        b.id = jb.at("id").get<std::string>().at(0);
        std::string file = jb.at("file").get<std::string>();
        ParsedPolygon parsed = parse_polygon(read_file(dir + "/" + file));
        require(parsed.polygon.has_value(),
                file + " is not a simple grid polygon: " + parsed.report.message);
        b.geometry = *parsed.polygon;
        b.opt_steps = jb.at("opt_steps").get<int>();
        b.forced_alg_steps = jb.at("forced_alg_steps").get<int>();
        for (const auto& t : jb.at("triggers")) b.triggers.push_back(t.get<std::string>());

        require(b.geometry.min_corner().x == 0 && b.geometry.min_corner().y == 0,
                file + " must be anchored at (0,0)");
        b.entry_rect = column_rect(b.geometry, 0, "entry");
        require(b.entry_rect.first == Cell{0, 0}, "entry rectangle must sit at rows 0,1");
        b.exit_rect = column_rect(b.geometry, b.geometry.max_corner().x, "exit");
        require(b.exit_rect.first.y == 0, "exit rectangle must sit at rows 0,1");
        require(b.geometry.start() == Cell{0, 1}, file + " start must be the upper entry cell");

        OptimalTour opt = optimal_tour(b.geometry);
        require(opt.length == b.opt_steps,
                std::string("block ") + b.id + " standalone optimum " +
                    std::to_string(opt.length) + " != declared " + std::to_string(b.opt_steps));
        require(opt.certificate == TourCertificate::Hamiltonian,
                std::string("block ") + b.id + " optimum must be Hamiltonian");
        b.splice_cycle = find_splice_cycle(b.geometry, b.entry_rect, b.exit_rect);
        lib.blocks_.push_back(std::move(b));
    }
    require(lib.blocks_.size() == 5, "library must hold the five blocks");
    for (std::size_t k = 0; k < 5; ++k)
        require(lib.blocks_[k].id == kBlockIds[k], "blocks must be ordered b, d, f, h, i");

    // Room metadata: doors and the deferred pocket.
    const Block& h = lib.by_id('h');
    const Block& i = lib.by_id('i');
    RoomScheme room;
    const auto& jr = meta.at("room");
    auto cell_of = [](const nlohmann::json& j) {
        return Cell{j.at(0).get<std::int32_t>(), j.at(1).get<std::int32_t>()};
    };
    room.c0 = cell_of(jr.at("c0"));
    room.c1 = cell_of(jr.at("c1"));
    room.c2 = cell_of(jr.at("c2"));
    for (auto& [door, block] : jr.at("door_blocks").items()) {
        Cell d = door == "c0" ? room.c0 : door == "c1" ? room.c1 : room.c2;
        room.door_block[d] = block.get<std::string>().at(0);
    }
    require(room.door_block.size() == 3, "door_blocks must map all three doors");
    bool any_h = false, any_i = false;
    for (auto& [d, id] : room.door_block) {
        require(id == 'h' || id == 'i', "doors commit only blocks h or i");
        (id == 'h' ? any_h : any_i) = true;
    }
    require(any_h && any_i, "both h and i must be reachable from the doors");

    // cells(h) must be cells(i) minus a deferred pocket.
    CellSet hcells(h.geometry.cells().begin(), h.geometry.cells().end());
    CellSet icells(i.geometry.cells().begin(), i.geometry.cells().end());
    for (Cell c : hcells) require(icells.count(c) != 0, "cells(h) must be a subset of cells(i)");
    for (Cell c : icells)
        if (!hcells.count(c)) room.pocket.push_back(c);
    std::sort(room.pocket.begin(), room.pocket.end());
    require(room.pocket.size() == 2, "pocket must hold exactly two cells");
    room.shared_free.assign(h.geometry.cells().begin(), h.geometry.cells().end());
    std::sort(room.shared_free.begin(), room.shared_free.end());
    require(h.exit_rect == i.exit_rect, "h and i must share the exit rectangle");

    // Every free cell 4-adjacent to the pocket must be one of the doors, so
    // the pocket cannot be sensed before a door is visited.
    CellSet doorset{room.c0, room.c1, room.c2};
    for (Cell z : room.pocket) {
        for (Dir d : all_dirs) {
            Cell n = step(z, d);
            if (std::find(room.pocket.begin(), room.pocket.end(), n) != room.pocket.end())
                continue;
            if (hcells.count(n))
                require(doorset.count(n) != 0,
                        "pocket cell " + to_string(z) + " sensible from non-door " + to_string(n));
        }
        require(!hcells.count(z), "pocket cells must be blocked in h");
    }
    for (Cell d : doorset) {
        require(hcells.count(d) != 0, "door " + to_string(d) + " must be shared free");
        require(d.y >= 2, "doors must lie off the spine thoroughfare");
    }

    // Reveal-plan agreement: what the agent can sense while a set of blocks is
    // still reachable must not distinguish them. Spine state j commits on
    // deviation, so its senses must agree across sigma(j..3), h and i.
    auto status_in = [](const Block& b, Cell c) { return b.geometry.is_free(c); };
    for (int j = 1; j <= 3; ++j) {
        std::vector<const Block*> reachable;
        for (int k = j; k <= 3; ++k) reachable.push_back(&lib.by_id(lib.spine_block(k)));
        reachable.push_back(&h);
        reachable.push_back(&i);
        for (Cell probe : {Cell{j, 2}, Cell{j + 1, 1}, Cell{j, 0}}) {
            bool first = status_in(*reachable[0], probe);
            for (const Block* b : reachable)
                require(status_in(*b, probe) == first,
                        "spine state " + std::to_string(j) + " reveal at " + to_string(probe) +
                            " distinguishes reachable blocks");
        }
        require(!h.geometry.is_free({j, 2}), "spine ceiling must be closed at column " +
                                                 std::to_string(j));
    }
    for (const Block& b : lib.blocks_) {
        require(b.geometry.is_free({1, 0}) && b.geometry.is_free({1, 1}),
                "both first-column cells must be free in every block");
    }

    // Mirrored variants flip about the line between rows 0 and 1, so the
    // entry/exit rectangles stay at rows 0,1 and rooms hang below the spine.
    for (const Block& b : lib.blocks_) {
        Block m = b;
        std::vector<Cell> flipped;
        for (Cell c : b.geometry.cells()) flipped.push_back({c.x, 1 - c.y});
        m.geometry = GridPolygon::from_validated(std::move(flipped), Cell{0, 1});
        m.entry_rect = column_rect(m.geometry, 0, "entry");
        m.exit_rect = column_rect(m.geometry, m.geometry.max_corner().x, "exit");
        m.splice_cycle.clear();
        for (Cell c : b.splice_cycle) m.splice_cycle.push_back({c.x, 1 - c.y});
        OptimalTour mopt = optimal_tour(m.geometry);
        require(mopt.length == b.opt_steps, "mirrored block optimum changed");
        lib.mirrored_.push_back(std::move(m));
    }

    lib.room_ = std::move(room);
    return lib;
}

ChainInstance merge_chain(const BlockLibrary& lib, const std::vector<PlacedBlock>& placed) {
    if (placed.empty()) throw std::invalid_argument("merge_chain: empty chain");
    ChainInstance chain;
    chain.blocks = placed;

    CellSet cells;
    std::int32_t xoff = 0;
    int sum_cells = 0, sum_opts = 0;
    std::vector<std::vector<Cell>> cycles;
    for (std::size_t k = 0; k < placed.size(); ++k) {
        const Block& b =
            placed[k].mirrored ? lib.mirrored(placed[k].id) : lib.by_id(placed[k].id);
        sum_cells += b.geometry.size();
        sum_opts += b.opt_steps;
        std::vector<Cell> cyc;
        for (Cell c : b.splice_cycle) cyc.push_back({c.x + xoff, c.y});
        cycles.push_back(std::move(cyc));
        for (Cell c : b.geometry.cells()) {
            Cell g{c.x + xoff, c.y};
            cells.insert(g);
        }
        xoff += b.exit_col();
    }

    chain.merged_polygon = make_polygon(cells, Cell{0, 1});
    const int n = static_cast<int>(placed.size());
    if (chain.merged_polygon.size() != sum_cells - 2 * (n - 1))
        throw IncompatibleJunction("merged cell count does not match the 2(n-1) saving");

    // Splice the per-block cycles at the shared junction edges.
    // Each cycle uses the vertical edge of its entry and exit rectangles; the
    // union of cycles k and k+1 minus their shared edge is again a cycle.
    std::unordered_map<Cell, std::vector<Cell>, CellHash> ring;  // cycle-neighbour multimap
    auto add_edge = [&](Cell a, Cell b) {
        ring[a].push_back(b);
        ring[b].push_back(a);
    };
    auto drop_edge = [&](Cell a, Cell b) {
        auto& va = ring[a];
        va.erase(std::find(va.begin(), va.end(), b));
        auto& vb = ring[b];
        vb.erase(std::find(vb.begin(), vb.end(), a));
    };
    for (auto& cyc : cycles)
        for (std::size_t k = 0; k + 1 < cyc.size(); ++k) add_edge(cyc[k], cyc[k + 1]);
    // junction columns and their vertical edges
    xoff = 0;
    for (std::size_t k = 0; k + 1 < placed.size(); ++k) {
        const Block& b =
            placed[k].mirrored ? lib.mirrored(placed[k].id) : lib.by_id(placed[k].id);
        xoff += b.exit_col();
        // the doubled vertical edge at this junction: remove both copies
        drop_edge({xoff, 0}, {xoff, 1});
        drop_edge({xoff, 0}, {xoff, 1});
    }
    for (auto& [c, nbrs] : ring)
        if (nbrs.size() != 2)
            throw IncompatibleJunction("splice failed: degree != 2 at " + to_string(c));
    std::vector<Cell> tour{Cell{0, 1}};
    Cell prev = tour.back(), cur = ring[tour.back()].front();
    while (cur != tour.front()) {
        tour.push_back(cur);
        auto& nb = ring[cur];
        Cell next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
    }
    tour.push_back(tour.front());
    if (static_cast<int>(tour.size()) != chain.merged_polygon.size() + 1)
        throw IncompatibleJunction("spliced tour does not cover the merged polygon");

    chain.opt_steps = chain.merged_polygon.size();
    if (chain.opt_steps != sum_opts - 2 * (n - 1))
        throw IncompatibleJunction("merged optimum does not match the 2(n-1) saving");
    chain.optimum = {chain.opt_steps, std::move(tour), TourCertificate::Hamiltonian};
    return chain;
}

}  // namespace gridpoly
