#pragma once

#include <unordered_map>
#include <vector>

#include "gridpoly/polygon.hpp"

namespace gridpoly {

// Layer numbers from recursive peeling. Layer 1 cells touch a blocked cell,
// corner contact included; removing a layer and recomputing per component
// yields the next one.
struct LayerMap {
    std::unordered_map<Cell, int, CellHash> layer_of;

    int at(Cell c) const { return layer_of.at(c); }
};

LayerMap compute_layers(const GridPolygon& p);

// Deletion test: true iff removing c and recomputing layers on each resulting
// component leaves every free 4-neighbour's layer number unchanged.
// Precondition: c is free and on layer 1 (throws std::invalid_argument).
bool is_narrow_passage_cell(const GridPolygon& p, Cell c);

struct NarrowPassage {
    std::vector<Cell> cells;  // sorted by (x, y); non-empty, 4-connected
};

// Maximal 4-connected components of narrow-passage cells, ordered by their
// minimal cell.
std::vector<NarrowPassage> narrow_passages(const GridPolygon& p);

}  // namespace gridpoly
