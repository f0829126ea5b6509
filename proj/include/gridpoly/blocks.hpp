#pragma once

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gridpoly/polygon.hpp"
#include "gridpoly/tour.hpp"

namespace gridpoly {

struct BlockValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One adversary building block in local coordinates: the entry rectangle is
// the column x = 0 with cells (0,0),(0,1), the exit rectangle the rightmost
// column, again two cells at rows 0 and 1. The start of the standalone
// geometry is the upper entry cell.
struct Block {
    char id = '?';
    GridPolygon geometry;
    std::pair<Cell, Cell> entry_rect{{0, 0}, {0, 1}};
    std::pair<Cell, Cell> exit_rect;
    int opt_steps = 0;
    int forced_alg_steps = 0;
    std::vector<std::string> triggers;
    // A Hamiltonian cycle of the geometry that uses the vertical edge of both
    // the entry and the exit rectangle; chains are certified by splicing
    // these cycles at the shared rectangles.
    std::vector<Cell> splice_cycle;

    int exit_col() const { return exit_rect.first.x; }
    int width() const { return exit_col() + 1; }
};

// Deferred-finalization data for the room shared by blocks (h) and (i):
// the two geometries agree except on the pocket cells; each pocket cell is
// sensible only from one of the three door cells c0, c1, c2, and the first
// door visited selects the block.
struct RoomScheme {
    Cell c0, c1, c2;
    std::unordered_map<Cell, char, CellHash> door_block;
    std::vector<Cell> pocket;       // cells(i) \ cells(h)
    std::vector<Cell> shared_free;  // cells(h) == cells(i) \ pocket

    std::vector<Cell> doors() const { return {c0, c1, c2}; }
    bool is_door(Cell c) const { return c == c0 || c == c1 || c == c2; }
};

class BlockLibrary {
  public:
    static constexpr const char* kBlockIds = "bdfhi";

    const std::vector<Block>& blocks() const { return blocks_; }
    const Block& by_id(char id) const;
    const RoomScheme& room() const { return room_; }

    // Mirrored variant (room hanging below the spine); entry/exit rectangles
    // are invariant under the flip.
    const Block& mirrored(char id) const;

    // The rectangle block committed on a deviation at spine state j = 1..3.
    char spine_block(int state) const;

    static BlockLibrary load(const std::string& dir);

  private:
    std::vector<Block> blocks_;
    std::vector<Block> mirrored_;
    RoomScheme room_;
};

std::string default_block_library_dir();

// Loads geometries and the decision-tree metadata from the data directory and
// validates everything that can be checked statically: entry/exit rectangle
// shape, standalone optima recomputed through optimal_tour, pocket/door
// structure, reveal-plan agreement between blocks that are simultaneously
// reachable, and splice cycles. A transcription error fails loudly here.
BlockLibrary load_block_library(const std::string& dir = default_block_library_dir());

struct PlacedBlock {
    char id;
    bool mirrored = false;
};

struct IncompatibleJunction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A horizontal merge of blocks sharing exit/entry rectangles.
struct ChainInstance {
    std::vector<PlacedBlock> blocks;
    GridPolygon merged_polygon;
    OptimalTour optimum;  // certified, Hamiltonian via spliced cycles
    int opt_steps = 0;

    int cell_count() const { return merged_polygon.size(); }
};

ChainInstance merge_chain(const BlockLibrary& lib, const std::vector<PlacedBlock>& blocks);

}  // namespace gridpoly
