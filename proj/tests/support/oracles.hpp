#pragma once

// Test-only oracles, kept independent of the implementation paths they check.

#include <deque>
#include <map>
#include <random>
#include <set>

#include "gridpoly/polygon.hpp"

namespace gridpoly::testing {

// Independent validity oracle: plain flood fills over a padded box, written
// against the definitions rather than the production code.
inline bool oracle_is_simple(const std::set<std::pair<int, int>>& cells,
                             std::pair<int, int> start) {
    if (cells.empty() || !cells.count(start)) return false;
    // 4-connectivity
    std::set<std::pair<int, int>> seen{*cells.begin()};
    std::deque<std::pair<int, int>> q{*cells.begin()};
    const int dx4[] = {0, 0, 1, -1}, dy4[] = {1, -1, 0, 0};
    while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop_front();
        for (int k = 0; k < 4; ++k) {
            std::pair<int, int> n{x + dx4[k], y + dy4[k]};
            if (cells.count(n) && !seen.count(n)) {
                seen.insert(n);
                q.push_back(n);
            }
        }
    }
    if (seen.size() != cells.size()) return false;
    // start on the boundary
    bool boundary = false;
    for (int k = 0; k < 4; ++k)
        if (!cells.count({start.first + dx4[k], start.second + dy4[k]})) boundary = true;
    if (!boundary) return false;
    // hole-freeness: blocked cells of the padded box, 8-connected to the rim
    int xlo = 1 << 30, xhi = -(1 << 30), ylo = 1 << 30, yhi = -(1 << 30);
    for (auto& [x, y] : cells) {
        xlo = std::min(xlo, x);
        xhi = std::max(xhi, x);
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
    }
    xlo -= 1;
    xhi += 1;
    ylo -= 1;
    yhi += 1;
    std::set<std::pair<int, int>> outside{{xlo, ylo}};
    std::deque<std::pair<int, int>> q2{{xlo, ylo}};
    while (!q2.empty()) {
        auto [x, y] = q2.front();
        q2.pop_front();
        for (int ddx = -1; ddx <= 1; ++ddx)
            for (int ddy = -1; ddy <= 1; ++ddy) {
                if (ddx == 0 && ddy == 0) continue;
                std::pair<int, int> n{x + ddx, y + ddy};
                if (n.first < xlo || n.first > xhi || n.second < ylo || n.second > yhi) continue;
                if (cells.count(n) || outside.count(n)) continue;
                outside.insert(n);
                q2.push_back(n);
            }
    }
    for (int x = xlo; x <= xhi; ++x)
        for (int y = ylo; y <= yhi; ++y)
            if (!cells.count({x, y}) && !outside.count({x, y})) return false;
    return true;
}

// Naive breadth-first search over (position, visited set) with no pruning:
// minimal closed covering walk length. Only for tiny instances.
inline int oracle_optimal_length(const GridPolygon& p) {
    const int n = p.size();
    const std::uint64_t full = (1ULL << n) - 1;
    const int start = p.start_id();
    std::map<std::pair<int, std::uint64_t>, int> dist;
    std::deque<std::pair<int, std::uint64_t>> q;
    std::uint64_t m0 = 1ULL << start;
    dist[{start, m0}] = 0;
    q.push_back({start, m0});
    if (m0 == full) return 0;
    while (!q.empty()) {
        auto [pos, mask] = q.front();
        q.pop_front();
        int d = dist[{pos, mask}];
        for (int v : p.adjacency()[static_cast<std::size_t>(pos)]) {
            if (v < 0) continue;
            std::uint64_t m2 = mask | (1ULL << v);
            if (dist.count({v, m2})) continue;
            dist[{v, m2}] = d + 1;
            if (v == start && m2 == full) return d + 1;
            q.push_back({v, m2});
        }
    }
    return -1;
}

// Random simple polygon by cell growth; retries until valid. Start is the
// smallest boundary-adjacent cell.
inline GridPolygon random_polygon(std::mt19937& rng, int max_cells) {
    for (;;) {
        std::set<std::pair<int, int>> cells{{0, 0}};
        std::uniform_int_distribution<int> dk(2, max_cells);
        int want = dk(rng);
        std::vector<std::pair<int, int>> frontier{{0, 0}};
        const int dx4[] = {0, 0, 1, -1}, dy4[] = {1, -1, 0, 0};
        while (static_cast<int>(cells.size()) < want && !frontier.empty()) {
            std::uniform_int_distribution<std::size_t> di(0, frontier.size() - 1);
            auto [x, y] = frontier[di(rng)];
            int k = std::uniform_int_distribution<int>(0, 3)(rng);
            std::pair<int, int> n{x + dx4[k], y + dy4[k]};
            if (!cells.count(n)) {
                cells.insert(n);
                frontier.push_back(n);
            }
        }
        CellSet cs;
        for (auto& [x, y] : cells) cs.insert({x, y});
        std::vector<Cell> ordered(cs.begin(), cs.end());
        std::sort(ordered.begin(), ordered.end());
        for (Cell c : ordered) {
            if (validate_simple(cs, c).ok())
                return GridPolygon::from_validated(ordered, c);
        }
    }
}

// Random width-1 polygon (a tree of cells, no 2x2 square), entirely one
// narrow passage.
inline GridPolygon random_corridor(std::mt19937& rng, int max_cells) {
    std::set<std::pair<int, int>> cells{{0, 0}};
    std::uniform_int_distribution<int> dk(2, max_cells);
    int want = dk(rng);
    std::vector<std::pair<int, int>> frontier{{0, 0}};
    const int dx4[] = {0, 0, 1, -1}, dy4[] = {1, -1, 0, 0};
    int guard = 0;
    while (static_cast<int>(cells.size()) < want && ++guard < 10000) {
        std::uniform_int_distribution<std::size_t> di(0, frontier.size() - 1);
        auto [x, y] = frontier[di(rng)];
        int k = std::uniform_int_distribution<int>(0, 3)(rng);
        std::pair<int, int> n{x + dx4[k], y + dy4[k]};
        if (cells.count(n)) continue;
        // keep width 1: the new cell may touch exactly one existing cell
        int touch = 0;
        for (int j = 0; j < 4; ++j)
            touch += cells.count({n.first + dx4[j], n.second + dy4[j]}) ? 1 : 0;
        if (touch != 1) continue;
        cells.insert(n);
        frontier.push_back(n);
    }
    CellSet cs;
    for (auto& [x, y] : cells) cs.insert({x, y});
    std::vector<Cell> ordered(cs.begin(), cs.end());
    std::sort(ordered.begin(), ordered.end());
    return GridPolygon::from_validated(ordered, ordered.front());
}

}  // namespace gridpoly::testing
