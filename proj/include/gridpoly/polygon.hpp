#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gridpoly/cell.hpp"

namespace gridpoly {

using CellSet = std::unordered_set<Cell, CellHash>;

enum class ValidationError {
    None,
    Empty,
    Disconnected,
    Hole,
    StartNotFree,
    StartNotOnBoundary,
};

struct ValidationReport {
    ValidationError error = ValidationError::None;
    std::optional<Cell> witness;
    std::string message;

    bool ok() const { return error == ValidationError::None; }
};

const char* validation_error_name(ValidationError e);

// A validated simple grid polygon: a 4-connected set of free cells whose
// complement (with the one-ring inflation identified as "outside") is
// 8-connected, plus a start cell that touches the boundary edge-wise.
// Immutable after construction.
class GridPolygon {
  public:
    GridPolygon() = default;  // empty placeholder; real instances come from from_validated
    static GridPolygon from_validated(std::vector<Cell> cells, Cell start);

    const std::vector<Cell>& cells() const { return cells_; }  // sorted by (x, y)
    Cell start() const { return start_; }
    int size() const { return static_cast<int>(cells_.size()); }

    bool is_free(Cell c) const { return index_.count(c) != 0; }
    // Compact id of a free cell in [0, size), in sorted-cell order.
    int id_of(Cell c) const;
    Cell cell_of(int id) const { return cells_[static_cast<std::size_t>(id)]; }
    int start_id() const { return id_of(start_); }

    Cell min_corner() const { return min_; }
    Cell max_corner() const { return max_; }

    // Free 4-neighbour ids of a free cell, in Dir order N,E,S,W.
    const std::vector<std::array<int, 4>>& adjacency() const { return adj_; }

    // FNV-1a over the render, stable across runs; used as polygon_id.
    std::string content_hash() const;

  private:
    std::vector<Cell> cells_;
    Cell start_{};
    Cell min_{}, max_{};
    std::unordered_map<Cell, int, CellHash> index_;
    std::vector<std::array<int, 4>> adj_;  // -1 where blocked
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts iff all GridPolygon invariants hold; on failure the report names
// the first violated invariant and a witness cell.
ValidationReport validate_simple(const CellSet& cells, Cell start);

// Construct a polygon, throwing std::invalid_argument on validation failure.
GridPolygon make_polygon(const CellSet& cells, Cell start);
GridPolygon make_polygon(const std::vector<Cell>& cells, Cell start);

// ASCII format: '.' free, '#' blocked, 'S' start (free). Rows top-to-bottom
// map to decreasing y. Spaces count as blocked. Throws ParseError on syntax
// problems; returns a report (no polygon) when validation fails.
struct ParsedPolygon {
    std::optional<GridPolygon> polygon;
    ValidationReport report;
};
ParsedPolygon parse_polygon(const std::string& text);

// Tight-bounding-box renderer; round-trips with parse_polygon.
std::string render_ascii(const GridPolygon& p);

// Reflect y about the polygon's horizontal midline. Involution up to
// translation; validity is preserved.
GridPolygon mirror_horizontal(const GridPolygon& p);

}  // namespace gridpoly
