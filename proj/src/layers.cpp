#include "gridpoly/layers.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace gridpoly {

namespace {

// Peeling over an arbitrary live subset: anything not in `live` counts as
// boundary, so disconnection is handled implicitly.
std::unordered_map<Cell, int, CellHash> peel(const CellSet& live_in) {
    std::unordered_map<Cell, int, CellHash> layer;
    CellSet live = live_in;
    int level = 1;
    while (!live.empty()) {
        std::vector<Cell> shell;
        for (Cell c : live) {
            bool boundary = false;
            for (int dx = -1; dx <= 1 && !boundary; ++dx)
                for (int dy = -1; dy <= 1; ++dy) {
                    if (dx == 0 && dy == 0) continue;
                    if (!live.count({c.x + dx, c.y + dy})) {
                        boundary = true;
                        break;
                    }
                }
            if (boundary) shell.push_back(c);
        }
        for (Cell c : shell) {
            layer[c] = level;
            live.erase(c);
        }
        ++level;
    }
    return layer;
}

}  // namespace

LayerMap compute_layers(const GridPolygon& p) {
    CellSet live(p.cells().begin(), p.cells().end());
    return {peel(live)};
}

bool is_narrow_passage_cell(const GridPolygon& p, Cell c) {
    if (!p.is_free(c)) throw std::invalid_argument("is_narrow_passage_cell: cell not free");
    LayerMap layers = compute_layers(p);
    if (layers.at(c) != 1)
        throw std::invalid_argument("is_narrow_passage_cell: cell is not on layer 1");

    CellSet rest(p.cells().begin(), p.cells().end());
    rest.erase(c);
    auto after = peel(rest);
    // Layers are defined over the 8-neighbourhood, so the deletion test
    // compares every cell whose layer the deletion could touch. Corner cells
    // of thick regions fail here via their diagonal interior neighbour.
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy) {
            if (dx == 0 && dy == 0) continue;
            Cell n{c.x + dx, c.y + dy};
            if (!p.is_free(n)) continue;
            if (after.at(n) != layers.at(n)) return false;
        }
    return true;
}

std::vector<NarrowPassage> narrow_passages(const GridPolygon& p) {
    LayerMap layers = compute_layers(p);
    CellSet member;
    for (Cell c : p.cells())
        if (layers.at(c) == 1 && is_narrow_passage_cell(p, c)) member.insert(c);

    std::vector<NarrowPassage> out;
    CellSet seen;
    std::vector<Cell> ordered(member.begin(), member.end());
    std::sort(ordered.begin(), ordered.end());
    for (Cell seed : ordered) {
        if (seen.count(seed)) continue;
        NarrowPassage passage;
        std::deque<Cell> queue{seed};
        seen.insert(seed);
        while (!queue.empty()) {
            Cell c = queue.front();
            queue.pop_front();
            passage.cells.push_back(c);
            for (Dir d : all_dirs) {
                Cell n = step(c, d);
                if (member.count(n) && !seen.count(n)) {
                    seen.insert(n);
                    queue.push_back(n);
                }
            }
        }
        std::sort(passage.cells.begin(), passage.cells.end());
        out.push_back(std::move(passage));
    }
    std::sort(out.begin(), out.end(), [](const NarrowPassage& a, const NarrowPassage& b) {
        return a.cells.front() < b.cells.front();
    });
    return out;
}

}  // namespace gridpoly
