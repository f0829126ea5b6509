#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "gridpoly/engine.hpp"

namespace gridpoly {

// Wall-following depth-first exploration: prefer the known-free unvisited
// neighbour left of the current heading, then straight, right, back; with no
// unvisited neighbour, backtrack along the DFS tree; halt at the start with
// an empty stack. Initial heading: the unique free direction if there is
// exactly one, otherwise east with clockwise tie-break.
class LeftHandDfs : public Strategy {
  public:
    std::string name() const override { return "lhdfs"; }
    void reset() override;
    StrategyDecision decide(const KnowledgeMap& map, Cell pos,
                            const std::vector<Cell>& history) override;

  protected:
    // Preference order for the base rule; the tangent variant narrows it.
    virtual std::optional<Dir> pick_move(const KnowledgeMap& map, Cell pos, Dir heading);

    Dir heading_ = Dir::East;
    bool heading_set_ = false;
    bool homing_ = false;  // map fully explored, returning by shortest path
    std::vector<Cell> stack_;  // DFS tree path from start to pos
    std::size_t seen_history_ = 0;
    CellSet on_stack_;
};

// Reconstruction of the tangent-rule strategy: left-hand DFS plus an
// immediate visit of a U-surrounded isolated cell when the tangent line
// through it separates it from the active start, plus the farther-component
// preference at split cells.
class TangentRuleDfs : public LeftHandDfs {
  public:
    std::string name() const override { return "tangent"; }
    void reset() override;
    StrategyDecision decide(const KnowledgeMap& map, Cell pos,
                            const std::vector<Cell>& history) override;

    int tangent_applications() const { return tangent_fires_; }

  protected:
    std::optional<Dir> pick_move(const KnowledgeMap& map, Cell pos, Dir heading) override;

  private:
    struct Frame {
        Cell active_start;
        CellSet component;  // unvisited cells of the chosen component
    };

    Cell active_start(Cell global_start) const;
    void refresh_frames(const KnowledgeMap& map);

    std::vector<Frame> frames_;
    Cell global_start_{};
    int tangent_fires_ = 0;
};

// The isolated cell c if the tangent rule fires at pos, else empty:
// c is known-free and unvisited, the five cells around it on one side form a
// visited U, pos is one of its two collinear visited neighbours, and removing
// the supporting line from the known map separates active_start from c.
std::optional<Cell> tangent_rule_triggered(const KnowledgeMap& map, Cell pos, Cell active_start);

struct SplitInfo {
    Cell split_cell;
    // Components of the known-but-unvisited region, each with its shortest
    // known-map distance to the active start; ordered farther first, ties by
    // smaller size then smallest cell.
    std::vector<std::pair<std::vector<Cell>, int>> components;
};

// Reports when the known unvisited region splits into two or more components
// at the agent's position.
std::optional<SplitInfo> detect_split_cell(const KnowledgeMap& map, Cell pos, Cell active_start);

}  // namespace gridpoly
