#pragma once

#include <string>
#include <vector>

#include "gridpoly/cell.hpp"

namespace gridpoly {

// The legality-checked record of one exploration run. `moves` holds the
// position after each step; the start cell is implicit in front of them.
struct Transcript {
    std::string polygon_id;
    std::string strategy;
    Cell start{};
    std::vector<Cell> moves;
    int revisits = 0;
    bool complete = false;

    int steps() const { return static_cast<int>(moves.size()); }

    // Positions including the start: size() == steps() + 1.
    std::vector<Cell> positions() const {
        std::vector<Cell> out{start};
        out.insert(out.end(), moves.begin(), moves.end());
        return out;
    }
};

// Line-oriented text form: a header with the polygon hash and strategy name,
// then one "dx dy" line per move.
std::string serialize_transcript(const Transcript& t);
Transcript parse_transcript(const std::string& text);

}  // namespace gridpoly
