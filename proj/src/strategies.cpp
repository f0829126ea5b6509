#include "gridpoly/strategies.hpp"

#include <algorithm>
#include <deque>

namespace gridpoly {

namespace {

std::optional<Dir> initial_heading(const KnowledgeMap& map, Cell pos) {
    std::vector<Dir> free;
    for (Dir d : all_dirs)
        if (map.is_known_free(step(pos, d))) free.push_back(d);
    if (free.empty()) return std::nullopt;
    if (free.size() == 1) return free[0];
    for (Dir d : {Dir::East, Dir::South, Dir::West, Dir::North})
        if (map.is_known_free(step(pos, d))) return d;
    return std::nullopt;
}

std::vector<CellSet> unvisited_components(const KnowledgeMap& map) {
    CellSet unvisited;
    for (Cell c : map.known_free())
        if (!map.is_visited(c)) unvisited.insert(c);
    std::vector<CellSet> comps;
    CellSet seen;
    std::vector<Cell> ordered(unvisited.begin(), unvisited.end());
    std::sort(ordered.begin(), ordered.end());
    for (Cell seed : ordered) {
        if (seen.count(seed)) continue;
        CellSet comp;
        std::deque<Cell> queue{seed};
        seen.insert(seed);
        while (!queue.empty()) {
            Cell c = queue.front();
            queue.pop_front();
            comp.insert(c);
            for (Dir d : all_dirs) {
                Cell n = step(c, d);
                if (unvisited.count(n) && !seen.count(n)) {
                    seen.insert(n);
                    queue.push_back(n);
                }
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::unordered_map<Cell, int, CellHash> known_distances(const KnowledgeMap& map, Cell from) {
    std::unordered_map<Cell, int, CellHash> dist;
    if (!map.is_known_free(from)) return dist;
    dist[from] = 0;
    std::deque<Cell> queue{from};
    while (!queue.empty()) {
        Cell c = queue.front();
        queue.pop_front();
        for (Dir d : all_dirs) {
            Cell n = step(c, d);
            if (map.is_known_free(n) && !dist.count(n)) {
                dist[n] = dist[c] + 1;
                queue.push_back(n);
            }
        }
    }
    return dist;
}

Cell min_cell(const CellSet& s) {
    return *std::min_element(s.begin(), s.end());
}

}  // namespace

void LeftHandDfs::reset() {
    heading_ = Dir::East;
    heading_set_ = false;
    homing_ = false;
    stack_.clear();
    on_stack_.clear();
    seen_history_ = 0;
}

StrategyDecision LeftHandDfs::decide(const KnowledgeMap& map, Cell pos,
                                     const std::vector<Cell>& history) {
    // Catch up the DFS tree with moves made since the previous call.
    if (seen_history_ == 0) {
        stack_ = {history.front()};
        on_stack_ = {history.front()};
        seen_history_ = 1;
    }
    for (std::size_t i = seen_history_; i < history.size(); ++i) {
        Cell c = history[i];
        heading_ = dir_between(history[i - 1], c);
        heading_set_ = true;
        if (homing_) continue;  // shortest-path moves leave the tree
        if (on_stack_.count(c)) {
            // backtrack edge: must return to the DFS parent
            if (stack_.size() < 2 || stack_[stack_.size() - 2] != c)
                throw std::logic_error("history does not follow the DFS tree");
            on_stack_.erase(stack_.back());
            stack_.pop_back();
        } else {
            stack_.push_back(c);
            on_stack_.insert(c);
        }
    }
    seen_history_ = history.size();

    if (!homing_) {
        std::optional<Dir> h =
            heading_set_ ? std::optional<Dir>(heading_) : initial_heading(map, pos);
        if (h) {
            if (auto d = pick_move(map, pos, *h)) return StrategyDecision::move(*d);
        }
        bool any_unvisited = false;
        for (Cell c : map.known_free())
            if (!map.is_visited(c)) {
                any_unvisited = true;
                break;
            }
        if (any_unvisited) {
            if (stack_.size() >= 2)
                return StrategyDecision::move(dir_between(pos, stack_[stack_.size() - 2]));
            return StrategyDecision::halt();
        }
        homing_ = true;
    }

    // Everything known is visited: close the tour on a shortest known path.
    Cell home = history.front();
    if (pos == home) return StrategyDecision::halt();
    auto dist = known_distances(map, home);
    for (Dir d : all_dirs) {
        Cell n = step(pos, d);
        auto it = dist.find(n);
        if (it != dist.end() && it->second == dist.at(pos) - 1)
            return StrategyDecision::move(d);
    }
    throw std::logic_error("no path home from " + to_string(pos));
}

std::optional<Dir> LeftHandDfs::pick_move(const KnowledgeMap& map, Cell pos, Dir heading) {
    for (Dir d : {left_of(heading), heading, right_of(heading), opposite(heading)}) {
        Cell n = step(pos, d);
        if (map.is_known_free(n) && !map.is_visited(n)) return d;
    }
    return std::nullopt;
}

std::optional<Cell> tangent_rule_triggered(const KnowledgeMap& map, Cell pos,
                                           Cell active_start) {
    if (!map.is_visited(pos)) return std::nullopt;
    for (Dir d : all_dirs) {
        Cell c = step(pos, d);
        if (!map.is_known_free(c) || map.is_visited(c)) continue;
        Cell other = step(c, d);  // the far collinear neighbour c''
        if (!map.is_known_free(other) || !map.is_visited(other)) continue;
        const bool horizontal = (d == Dir::East || d == Dir::West);
        Dir side_a = horizontal ? Dir::North : Dir::East;
        Dir side_b = horizontal ? Dir::South : Dir::West;
        bool u_formed = false;
        for (Dir side : {side_a, side_b}) {
            bool all = true;
            for (Cell base : {pos, c, other}) {
                Cell sidecell = step(base, side);
                if (!map.is_known_free(sidecell) || !map.is_visited(sidecell)) {
                    all = false;
                    break;
                }
            }
            if (all) u_formed = true;
        }
        if (!u_formed) continue;

        // Separation: drop the supporting line (except c itself) from the
        // known free cells and see whether the active start can still reach c.
        auto on_line = [&](Cell q) {
            return horizontal ? q.y == c.y : q.x == c.x;
        };
        if (on_line(active_start)) continue;
        CellSet region;
        for (Cell q : map.known_free())
            if (!on_line(q) || q == c) region.insert(q);
        if (!region.count(active_start)) continue;
        std::deque<Cell> queue{active_start};
        CellSet seen{active_start};
        bool reached = false;
        while (!queue.empty() && !reached) {
            Cell q = queue.front();
            queue.pop_front();
            for (Dir dd : all_dirs) {
                Cell n = step(q, dd);
                if (!region.count(n) || seen.count(n)) continue;
                if (n == c) {
                    reached = true;
                    break;
                }
                seen.insert(n);
                queue.push_back(n);
            }
        }
        if (!reached) return c;
    }
    return std::nullopt;
}

std::optional<SplitInfo> detect_split_cell(const KnowledgeMap& map, Cell pos,
                                           Cell active_start) {
    std::vector<CellSet> comps = unvisited_components(map);
    if (comps.size() < 2) return std::nullopt;
    auto dist = known_distances(map, active_start);
    SplitInfo info;
    info.split_cell = pos;
    for (auto& comp : comps) {
        int best = INT32_MAX;
        for (Cell c : comp) {
            auto it = dist.find(c);
            if (it != dist.end()) best = std::min(best, it->second);
        }
        std::vector<Cell> cells(comp.begin(), comp.end());
        std::sort(cells.begin(), cells.end());
        info.components.emplace_back(std::move(cells), best);
    }
    std::sort(info.components.begin(), info.components.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second > b.second;  // farther first
                  if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
                  return a.first.front() < b.first.front();
              });
    return info;
}

void TangentRuleDfs::reset() {
    LeftHandDfs::reset();
    frames_.clear();
    global_start_ = {};
    tangent_fires_ = 0;
}

Cell TangentRuleDfs::active_start(Cell global_start) const {
    return frames_.empty() ? global_start : frames_.back().active_start;
}

void TangentRuleDfs::refresh_frames(const KnowledgeMap& map) {
    std::vector<CellSet> comps = unvisited_components(map);
    // Components shrink and split but never merge, so each frame tracks the
    // union of current components that grew out of its original choice.
    for (auto& frame : frames_) {
        CellSet updated;
        for (auto& comp : comps) {
            bool intersects = false;
            for (Cell c : comp)
                if (frame.component.count(c)) {
                    intersects = true;
                    break;
                }
            if (intersects)
                for (Cell c : comp) updated.insert(c);
        }
        frame.component = std::move(updated);
    }
    while (!frames_.empty() && frames_.back().component.empty()) frames_.pop_back();
}

std::optional<Dir> TangentRuleDfs::pick_move(const KnowledgeMap& map, Cell pos, Dir heading) {
    for (Dir d : {left_of(heading), heading, right_of(heading), opposite(heading)}) {
        Cell n = step(pos, d);
        if (!map.is_known_free(n) || map.is_visited(n)) continue;
        if (!frames_.empty() && !frames_.back().component.count(n)) continue;
        return d;
    }
    return std::nullopt;
}

StrategyDecision TangentRuleDfs::decide(const KnowledgeMap& map, Cell pos,
                                        const std::vector<Cell>& history) {
    global_start_ = history.front();
    refresh_frames(map);

    if (auto c = tangent_rule_triggered(map, pos, active_start(global_start_))) {
        ++tangent_fires_;
        return StrategyDecision::move(dir_between(pos, *c));
    }

    // Split handling: when the region being explored has decomposed, commit
    // to the component farther from the active start.
    std::vector<CellSet> comps = unvisited_components(map);
    std::vector<CellSet> in_scope;
    for (auto& comp : comps) {
        if (frames_.empty()) {
            in_scope.push_back(comp);
        } else {
            bool inside = true;
            for (Cell c : comp)
                if (!frames_.back().component.count(c)) {
                    inside = false;
                    break;
                }
            if (inside) in_scope.push_back(comp);
        }
    }
    if (in_scope.size() >= 2) {
        auto dist = known_distances(map, active_start(global_start_));
        auto comp_key = [&](const CellSet& comp) {
            int best = INT32_MAX;
            for (Cell c : comp) {
                auto it = dist.find(c);
                if (it != dist.end()) best = std::min(best, it->second);
            }
            return std::tuple<int, std::size_t, Cell>(-best, comp.size(), min_cell(comp));
        };
        const CellSet* chosen = &in_scope.front();
        for (auto& comp : in_scope)
            if (comp_key(comp) < comp_key(*chosen)) chosen = &comp;
        frames_.push_back({pos, *chosen});
    }

    return LeftHandDfs::decide(map, pos, history);
}

}  // namespace gridpoly
