#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "gridpoly/knowledge.hpp"
#include "gridpoly/polygon.hpp"
#include "gridpoly/transcript.hpp"

namespace gridpoly {

struct StrategyDecision {
    enum class Kind { Move, Halt };
    Kind kind = Kind::Halt;
    Dir dir = Dir::North;

    static StrategyDecision move(Dir d) { return {Kind::Move, d}; }
    static StrategyDecision halt() { return {}; }
};

// A deterministic decision procedure. The engine calls decide() once per
// step with the current map, position and the full position history
// (history.front() == start, history.back() == pos). Implementations may
// cache between calls but must be a pure function of those arguments; one
// instance serves one run at a time.
class Strategy {
  public:
    virtual ~Strategy() = default;
    virtual std::string name() const = 0;
    virtual void reset() = 0;
    virtual StrategyDecision decide(const KnowledgeMap& map, Cell pos,
                                    const std::vector<Cell>& history) = 0;
};

// Ground-truth provider. A GridPolygon gives a fixed world; the adversary
// environment commits statuses lazily through the same interface.
class CellOracle {
  public:
    virtual ~CellOracle() = default;
    virtual CellStatus status(Cell c) = 0;
    // Called after every agent move (and once for the initial position)
    // before the neighbours of `pos` are sensed.
    virtual void agent_at(Cell /*pos*/) {}
};

enum class RunStatus {
    Complete,
    IllegalMove,
    StepLimitExceeded,
    HaltedIncomplete,
};

const char* run_status_name(RunStatus s);

struct RunResult {
    Transcript transcript;
    RunStatus status = RunStatus::Complete;
    std::string detail;

    bool ok() const { return status == RunStatus::Complete; }
};

struct RunConfig {
    int step_limit = -1;  // -1: engine default 4V+16
    // Cells already known at start (the "potentially already known"
    // rectangle of the adversary model). The start cell is always known.
    std::vector<std::pair<Cell, CellStatus>> initial_knowledge;
};

// Drive a strategy over an oracle until HALT. `is_complete(visited, pos)`
// decides whether a HALT finishes the task.
RunResult run_on_oracle(CellOracle& oracle, Cell start, Strategy& strategy,
                        const std::function<bool(const KnowledgeMap&, Cell)>& is_complete,
                        const RunConfig& config);

// Online run against a fixed polygon. complete = all free cells visited and
// the agent halted at the start.
RunResult run_strategy(const GridPolygon& p, Strategy& strategy, int step_limit = -1);

}  // namespace gridpoly
