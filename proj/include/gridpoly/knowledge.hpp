#pragma once

#include <array>
#include <stdexcept>

#include "gridpoly/polygon.hpp"

namespace gridpoly {

enum class CellStatus { Free, Blocked };

struct SensorReading {
    std::array<CellStatus, 4> by_dir;  // indexed by Dir

    CellStatus at(Dir d) const { return by_dir[static_cast<std::size_t>(d)]; }
};

struct ConsistencyViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// The agent's accumulated partial map. Statuses are monotone: once a cell is
// known it never changes (a flip throws ConsistencyViolation).
class KnowledgeMap {
  public:
    const CellSet& known_free() const { return free_; }
    const CellSet& known_blocked() const { return blocked_; }
    const CellSet& visited() const { return visited_; }

    bool is_known_free(Cell c) const { return free_.count(c) != 0; }
    bool is_known_blocked(Cell c) const { return blocked_.count(c) != 0; }
    bool is_visited(Cell c) const { return visited_.count(c) != 0; }

    void learn(Cell c, CellStatus s) {
        if (s == CellStatus::Free) {
            if (blocked_.count(c))
                throw ConsistencyViolation("cell status flip at " + to_string(c));
            free_.insert(c);
        } else {
            if (free_.count(c))
                throw ConsistencyViolation("cell status flip at " + to_string(c));
            blocked_.insert(c);
        }
    }

    void mark_visited(Cell c) {
        learn(c, CellStatus::Free);
        visited_.insert(c);
    }

  private:
    CellSet free_, blocked_, visited_;
};

// Read the true statuses of the four direct neighbours of a free cell.
SensorReading sense(const GridPolygon& p, Cell pos);

}  // namespace gridpoly
