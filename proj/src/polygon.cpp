#include "gridpoly/polygon.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace gridpoly {

const char* validation_error_name(ValidationError e) {
    switch (e) {
        case ValidationError::None: return "none";
        case ValidationError::Empty: return "empty";
        case ValidationError::Disconnected: return "disconnected";
        case ValidationError::Hole: return "hole";
        case ValidationError::StartNotFree: return "start_not_free";
        case ValidationError::StartNotOnBoundary: return "start_not_on_boundary";
    }
    return "?";
}

namespace {

std::array<Cell, 8> neighbours8(Cell c) {
    return {Cell{c.x, c.y + 1},     Cell{c.x + 1, c.y + 1}, Cell{c.x + 1, c.y},
            Cell{c.x + 1, c.y - 1}, Cell{c.x, c.y - 1},     Cell{c.x - 1, c.y - 1},
            Cell{c.x - 1, c.y},     Cell{c.x - 1, c.y + 1}};
}

}  // namespace

ValidationReport validate_simple(const CellSet& cells, Cell start) {
    if (cells.empty()) return {ValidationError::Empty, std::nullopt, "no free cells"};
    if (!cells.count(start))
        return {ValidationError::StartNotFree, start, "start cell is not free"};

    // 4-connectivity of the free set.
    CellSet seen;
    std::deque<Cell> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
        Cell c = queue.front();
        queue.pop_front();
        for (Dir d : all_dirs) {
            Cell n = step(c, d);
            if (cells.count(n) && !seen.count(n)) {
                seen.insert(n);
                queue.push_back(n);
            }
        }
    }
    if (seen.size() != cells.size()) {
        for (Cell c : cells)
            if (!seen.count(c))
                return {ValidationError::Disconnected, c, "free set is not 4-connected"};
    }

    // Start must touch a boundary cell edge-wise.
    bool on_boundary = false;
    for (Dir d : all_dirs)
        if (!cells.count(step(start, d))) on_boundary = true;
    if (!on_boundary)
        return {ValidationError::StartNotOnBoundary, start,
                "start has no blocked 4-neighbour"};

    // Hole test: the blocked cells of the bounding box inflated by one ring
    // must all be 8-connected to the ring. A blocked region that only touches
    // the outside diagonally is still outside.
    Cell lo = *cells.begin(), hi = *cells.begin();
    for (Cell c : cells) {
        lo.x = std::min(lo.x, c.x);
        lo.y = std::min(lo.y, c.y);
        hi.x = std::max(hi.x, c.x);
        hi.y = std::max(hi.y, c.y);
    }
    lo.x -= 1;
    lo.y -= 1;
    hi.x += 1;
    hi.y += 1;
    auto in_box = [&](Cell c) {
        return c.x >= lo.x && c.x <= hi.x && c.y >= lo.y && c.y <= hi.y;
    };
    CellSet outside;
    std::deque<Cell> q2;
    Cell corner{lo.x, lo.y};
    outside.insert(corner);
    q2.push_back(corner);
    while (!q2.empty()) {
        Cell c = q2.front();
        q2.pop_front();
        for (Cell n : neighbours8(c)) {
            if (!in_box(n) || cells.count(n) || outside.count(n)) continue;
            outside.insert(n);
            q2.push_back(n);
        }
    }
    for (std::int32_t y = lo.y; y <= hi.y; ++y)
        for (std::int32_t x = lo.x; x <= hi.x; ++x) {
            Cell c{x, y};
            if (!cells.count(c) && !outside.count(c))
                return {ValidationError::Hole, c, "blocked region not connected to outside"};
        }

    return {};
}

GridPolygon GridPolygon::from_validated(std::vector<Cell> cells, Cell start) {
    GridPolygon p;
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    p.cells_ = std::move(cells);
    p.start_ = start;
    p.min_ = p.max_ = p.cells_.front();
    for (Cell c : p.cells_) {
        p.min_.x = std::min(p.min_.x, c.x);
        p.min_.y = std::min(p.min_.y, c.y);
        p.max_.x = std::max(p.max_.x, c.x);
        p.max_.y = std::max(p.max_.y, c.y);
    }
    p.index_.reserve(p.cells_.size() * 2);
    for (int i = 0; i < static_cast<int>(p.cells_.size()); ++i) p.index_[p.cells_[i]] = i;
    p.adj_.resize(p.cells_.size());
    for (int i = 0; i < static_cast<int>(p.cells_.size()); ++i) {
        for (Dir d : all_dirs) {
            auto it = p.index_.find(step(p.cells_[static_cast<std::size_t>(i)], d));
            p.adj_[static_cast<std::size_t>(i)][static_cast<int>(d)] =
                it == p.index_.end() ? -1 : it->second;
        }
    }
    return p;
}

int GridPolygon::id_of(Cell c) const {
    auto it = index_.find(c);
    if (it == index_.end()) throw std::invalid_argument("id_of: cell not free " + to_string(c));
    return it->second;
}

std::string GridPolygon::content_hash() const {
    std::string s = render_ascii(*this);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

GridPolygon make_polygon(const CellSet& cells, Cell start) {
    ValidationReport r = validate_simple(cells, start);
    if (!r.ok())
        throw std::invalid_argument(std::string("invalid polygon: ") + r.message +
                                    (r.witness ? " at " + to_string(*r.witness) : ""));
    return GridPolygon::from_validated(std::vector<Cell>(cells.begin(), cells.end()), start);
}

GridPolygon make_polygon(const std::vector<Cell>& cells, Cell start) {
    return make_polygon(CellSet(cells.begin(), cells.end()), start);
}

ParsedPolygon parse_polygon(const std::string& text) {
    std::vector<std::string> rows;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) rows.push_back(line);
    while (!rows.empty() && rows.back().empty()) rows.pop_back();
    if (rows.empty()) throw ParseError("empty polygon text");

    CellSet cells;
    std::optional<Cell> start;
    const int h = static_cast<int>(rows.size());
    for (int r = 0; r < h; ++r) {
        for (int col = 0; col < static_cast<int>(rows[static_cast<std::size_t>(r)].size()); ++col) {
            char ch = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            Cell c{col, h - 1 - r};
            switch (ch) {
                case '.': cells.insert(c); break;
                case 'S':
                    if (start) throw ParseError("multiple start cells");
                    start = c;
                    cells.insert(c);
                    break;
                case '#':
                case ' ': break;
                default:
                    throw ParseError(std::string("bad character '") + ch + "' in polygon text");
            }
        }
    }
    if (!start) throw ParseError("no start cell");

    ParsedPolygon out;
    out.report = validate_simple(cells, *start);
    if (out.report.ok())
        out.polygon =
            GridPolygon::from_validated(std::vector<Cell>(cells.begin(), cells.end()), *start);
    return out;
}

std::string render_ascii(const GridPolygon& p) {
    Cell lo = p.min_corner(), hi = p.max_corner();
    std::string out;
    for (std::int32_t y = hi.y; y >= lo.y; --y) {
        for (std::int32_t x = lo.x; x <= hi.x; ++x) {
            Cell c{x, y};
            if (c == p.start())
                out += 'S';
            else
                out += p.is_free(c) ? '.' : '#';
        }
        out += '\n';
    }
    return out;
}

GridPolygon mirror_horizontal(const GridPolygon& p) {
    std::int32_t lo = p.min_corner().y, hi = p.max_corner().y;
    std::vector<Cell> cells;
    cells.reserve(p.cells().size());
    for (Cell c : p.cells()) cells.push_back({c.x, lo + hi - c.y});
    Cell start{p.start().x, lo + hi - p.start().y};
    return GridPolygon::from_validated(std::move(cells), start);
}

}  // namespace gridpoly
