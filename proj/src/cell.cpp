#include "gridpoly/cell.hpp"

#include <stdexcept>

namespace gridpoly {

Dir dir_between(Cell from, Cell to) {
    Cell d = to - from;
    if (d.x == 0 && d.y == 1) return Dir::North;
    if (d.x == 1 && d.y == 0) return Dir::East;
    if (d.x == 0 && d.y == -1) return Dir::South;
    if (d.x == -1 && d.y == 0) return Dir::West;
    throw std::invalid_argument("dir_between: cells are not 4-adjacent");
}

bool adjacent4(Cell a, Cell b) {
    int dx = a.x - b.x, dy = a.y - b.y;
    return (dx == 0 && (dy == 1 || dy == -1)) || (dy == 0 && (dx == 1 || dx == -1));
}

const char* dir_name(Dir d) {
    switch (d) {
        case Dir::North: return "N";
        case Dir::East: return "E";
        case Dir::South: return "S";
        case Dir::West: return "W";
    }
    return "?";
}

std::string to_string(Cell c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

}  // namespace gridpoly
