#include "gridpoly/tour.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <queue>
#include <unordered_map>

namespace gridpoly {

int default_exact_threshold() {
    if (const char* env = std::getenv("GRIDPOLY_EXACT_THRESHOLD")) {
        int v = std::atoi(env);
        if (v > 0) return std::min(v, 32);
    }
    return 26;
}

std::vector<std::vector<std::uint16_t>> pairwise_distances(const GridPolygon& p) {
    const int n = p.size();
    std::vector<std::vector<std::uint16_t>> dist(
        static_cast<std::size_t>(n),
        std::vector<std::uint16_t>(static_cast<std::size_t>(n), UINT16_MAX));
    for (int s = 0; s < n; ++s) {
        auto& row = dist[static_cast<std::size_t>(s)];
        row[static_cast<std::size_t>(s)] = 0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : p.adjacency()[static_cast<std::size_t>(u)]) {
                if (v < 0) continue;
                if (row[static_cast<std::size_t>(v)] == UINT16_MAX) {
                    row[static_cast<std::size_t>(v)] =
                        static_cast<std::uint16_t>(row[static_cast<std::size_t>(u)] + 1);
                    queue.push_back(v);
                }
            }
        }
    }
    return dist;
}

namespace {

struct HamDfs {
    const GridPolygon& p;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<char> visited;
    std::vector<int> path;
    int start;

    HamDfs(const GridPolygon& poly, std::uint64_t node_budget)
        : p(poly), budget(node_budget), visited(static_cast<std::size_t>(poly.size()), 0),
          start(poly.start_id()) {}

    bool feasible(int head) const {
        const int n = p.size();
        // Every unvisited cell still needs two usable connections; the region
        // of unvisited cells must be reachable from the head.
        int remaining = 0;
        for (int u = 0; u < n; ++u) {
            if (visited[static_cast<std::size_t>(u)]) continue;
            ++remaining;
            int cnt = 0;
            for (int v : p.adjacency()[static_cast<std::size_t>(u)]) {
                if (v < 0) continue;
                if (!visited[static_cast<std::size_t>(v)] || v == head || v == start) ++cnt;
            }
            if (cnt < 2) return false;
        }
        if (remaining == 0) return true;
        std::vector<int> stack;
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (int v : p.adjacency()[static_cast<std::size_t>(head)]) {
            if (v >= 0 && !visited[static_cast<std::size_t>(v)] &&
                !seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                stack.push_back(v);
            }
        }
        int reached = 0;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            ++reached;
            for (int v : p.adjacency()[static_cast<std::size_t>(u)]) {
                if (v >= 0 && !visited[static_cast<std::size_t>(v)] &&
                    !seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    stack.push_back(v);
                }
            }
        }
        return reached == remaining;
    }

    bool run(int head, int count) {
        if (++nodes > budget) throw BudgetExceeded("hamiltonian_cycle budget exceeded");
        if (count == p.size()) {
            for (int v : p.adjacency()[static_cast<std::size_t>(head)])
                if (v == start) return true;
            return false;
        }
        if (!feasible(head)) return false;
        for (int v : p.adjacency()[static_cast<std::size_t>(head)]) {
            if (v < 0 || visited[static_cast<std::size_t>(v)]) continue;
            visited[static_cast<std::size_t>(v)] = 1;
            path.push_back(v);
            if (run(v, count + 1)) return true;
            path.pop_back();
            visited[static_cast<std::size_t>(v)] = 0;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<Cell>> hamiltonian_cycle(const GridPolygon& p,
                                                   std::uint64_t node_budget) {
    const int n = p.size();
    if (n == 1) return std::vector<Cell>{p.start()};
    if (n == 2) {
        Cell other = p.cells()[0] == p.start() ? p.cells()[1] : p.cells()[0];
        return std::vector<Cell>{p.start(), other, p.start()};
    }
    int colors[2] = {0, 0};
    for (Cell c : p.cells()) ++colors[((c.x + c.y) % 2 + 2) % 2];
    if (colors[0] != colors[1]) return std::nullopt;
    for (std::size_t u = 0; u < static_cast<std::size_t>(n); ++u) {
        int deg = 0;
        for (int v : p.adjacency()[u])
            if (v >= 0) ++deg;
        if (deg < 2) return std::nullopt;
    }

    HamDfs dfs(p, node_budget);
    dfs.visited[static_cast<std::size_t>(dfs.start)] = 1;
    dfs.path.push_back(dfs.start);
    if (!dfs.run(dfs.start, 1)) return std::nullopt;
    std::vector<Cell> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int id : dfs.path) out.push_back(p.cell_of(id));
    out.push_back(p.start());
    return out;
}

namespace {

struct CoverSearch {
    const GridPolygon& p;
    std::vector<std::vector<std::uint16_t>> dist;
    int goal;

    explicit CoverSearch(const GridPolygon& poly)
        : p(poly), dist(pairwise_distances(poly)), goal(poly.start_id()) {}

    static std::uint64_t key(std::uint64_t mask, int pos) {
        return (mask << 5) | static_cast<std::uint64_t>(pos);
    }

    int heuristic(int pos, std::uint64_t mask, std::uint64_t full) const {
        const int n = p.size();
        std::uint64_t missing = full & ~mask;
        int h;
        if (missing == 0) {
            h = dist[static_cast<std::size_t>(pos)][static_cast<std::size_t>(goal)];
        } else {
            int unvisited = 0, far = 0;
            for (int u = 0; u < n; ++u) {
                if (!(missing >> u & 1)) continue;
                ++unvisited;
                int through = dist[static_cast<std::size_t>(pos)][static_cast<std::size_t>(u)] +
                              dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(goal)];
                far = std::max(far, through);
            }
            h = std::max(unvisited, far);
        }
        // closed-walk parity on a bipartite graph
        int parity = dist[static_cast<std::size_t>(pos)][static_cast<std::size_t>(goal)] % 2;
        if (h % 2 != parity) ++h;
        return h;
    }

    int solve(int init_pos, std::uint64_t init_mask) const {
        const std::uint64_t full =
            p.size() == 64 ? ~0ULL : ((1ULL << p.size()) - 1);
        init_mask |= 1ULL << init_pos;
        if (init_mask == full && init_pos == goal) return 0;

        using Node = std::tuple<int, int, int, std::uint64_t>;  // f, g, pos, mask
        std::priority_queue<Node, std::vector<Node>, std::greater<>> open;
        std::unordered_map<std::uint64_t, int> best;
        open.emplace(heuristic(init_pos, init_mask, full), 0, init_pos, init_mask);
        best[key(init_mask, init_pos)] = 0;
        while (!open.empty()) {
            auto [f, g, pos, mask] = open.top();
            open.pop();
            auto it = best.find(key(mask, pos));
            if (it != best.end() && it->second < g) continue;
            if (mask == full && pos == goal) return g;
            for (int v : p.adjacency()[static_cast<std::size_t>(pos)]) {
                if (v < 0) continue;
                std::uint64_t m2 = mask | (1ULL << v);
                int g2 = g + 1;
                auto k = key(m2, v);
                auto jt = best.find(k);
                if (jt != best.end() && jt->second <= g2) continue;
                best[k] = g2;
                open.emplace(g2 + heuristic(v, m2, full), g2, v, m2);
            }
        }
        throw std::logic_error("cover search exhausted without reaching goal");
    }

    bool lexmin(int pos, std::uint64_t mask, int budget, std::uint64_t full,
                std::unordered_map<std::uint64_t, int>& failed_at,
                std::vector<int>& out) const {
        if (budget == 0) return mask == full && pos == goal;
        if (heuristic(pos, mask, full) > budget) return false;
        auto k = key(mask, pos);
        auto it = failed_at.find(k);
        if (it != failed_at.end() && it->second >= budget) return false;
        for (int v : p.adjacency()[static_cast<std::size_t>(pos)]) {  // N,E,S,W order
            if (v < 0) continue;
            out.push_back(v);
            if (lexmin(v, mask | (1ULL << v), budget - 1, full, failed_at, out)) return true;
            out.pop_back();
        }
        auto jt = failed_at.find(k);
        if (jt == failed_at.end() || jt->second < budget) failed_at[k] = budget;
        return false;
    }
};

std::uint64_t mask_of(const GridPolygon& p, const std::vector<Cell>& cells) {
    std::uint64_t m = 0;
    for (Cell c : cells) m |= 1ULL << p.id_of(c);
    return m;
}

}  // namespace

int exact_cover_length(const GridPolygon& p, Cell pos, const std::vector<Cell>& visited) {
    if (p.size() > 32) throw InstanceTooLarge("exact search limited to 32 cells");
    CoverSearch cs(p);
    return cs.solve(p.id_of(pos), mask_of(p, visited));
}

std::vector<Cell> lexmin_cover_path(const GridPolygon& p, Cell pos,
                                    const std::vector<Cell>& visited, int optimal_length) {
    if (p.size() > 32) throw InstanceTooLarge("exact search limited to 32 cells");
    CoverSearch cs(p);
    const std::uint64_t full = p.size() == 64 ? ~0ULL : ((1ULL << p.size()) - 1);
    std::uint64_t mask = mask_of(p, visited) | (1ULL << p.id_of(pos));
    std::unordered_map<std::uint64_t, int> failed_at;
    std::vector<int> ids;
    if (!cs.lexmin(p.id_of(pos), mask, optimal_length, full, failed_at, ids))
        throw std::logic_error("lexmin_cover_path: no path at claimed optimal length");
    std::vector<Cell> out{pos};
    for (int id : ids) out.push_back(p.cell_of(id));
    return out;
}

OptimalTour optimal_tour(const GridPolygon& p, int exact_threshold) {
    const int n = p.size();
    if (n == 1) return {0, {p.start()}, TourCertificate::Hamiltonian};
    if (auto ham = hamiltonian_cycle(p)) {
        return {n, std::move(*ham), TourCertificate::Hamiltonian};
    }
    if (n > exact_threshold)
        throw InstanceTooLarge("no Hamiltonian certificate and " + std::to_string(n) +
                               " cells exceeds the exact-search threshold " +
                               std::to_string(exact_threshold));
    int length = exact_cover_length(p, p.start(), {});
    std::vector<Cell> path = lexmin_cover_path(p, p.start(), {}, length);
    return {length, std::move(path), TourCertificate::ExactSearch};
}

int min_completion(const GridPolygon& p, const std::vector<Cell>& prefix, int exact_threshold) {
    if (p.size() > exact_threshold)
        throw InstanceTooLarge("min_completion beyond exact-search threshold");
    Cell pos = p.start();
    std::vector<Cell> visited{p.start()};
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        Cell c = prefix[i];
        if (i == 0) {
            if (c != p.start()) throw std::invalid_argument("prefix must begin at start");
        } else if (!adjacent4(prefix[i - 1], c)) {
            throw std::invalid_argument("prefix positions must be 4-adjacent");
        }
        if (!p.is_free(c)) throw std::invalid_argument("prefix leaves the polygon");
        visited.push_back(c);
        pos = c;
    }
    return exact_cover_length(p, pos, visited);
}

Rational competitive_ratio(int steps, const OptimalTour& opt) {
    if (opt.length <= 0) {
        if (steps == 0) return Rational(1);
        throw std::invalid_argument("competitive ratio against a zero-length optimum");
    }
    return Rational(steps, opt.length);
}

}  // namespace gridpoly
