#include "gridpoly/engine.hpp"

namespace gridpoly {

const char* run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Complete: return "complete";
        case RunStatus::IllegalMove: return "illegal_move";
        case RunStatus::StepLimitExceeded: return "step_limit_exceeded";
        case RunStatus::HaltedIncomplete: return "halted_incomplete";
    }
    return "?";
}

namespace {

void sense_into(CellOracle& oracle, KnowledgeMap& map, Cell pos) {
    for (Dir d : all_dirs) {
        Cell n = step(pos, d);
        map.learn(n, oracle.status(n));
    }
}

}  // namespace

RunResult run_on_oracle(CellOracle& oracle, Cell start, Strategy& strategy,
                        const std::function<bool(const KnowledgeMap&, Cell)>& is_complete,
                        const RunConfig& config) {
    if (config.step_limit <= 0) throw std::invalid_argument("run_on_oracle needs a step limit");

    strategy.reset();
    RunResult result;
    Transcript& t = result.transcript;
    t.strategy = strategy.name();
    t.start = start;

    KnowledgeMap map;
    for (auto& [c, s] : config.initial_knowledge) map.learn(c, s);

    Cell pos = start;
    std::vector<Cell> history{start};
    map.mark_visited(start);
    oracle.agent_at(start);
    sense_into(oracle, map, start);

    for (;;) {
        StrategyDecision d = strategy.decide(map, pos, history);
        if (d.kind == StrategyDecision::Kind::Halt) {
            if (is_complete(map, pos)) {
                t.complete = true;
                result.status = RunStatus::Complete;
            } else {
                result.status = RunStatus::HaltedIncomplete;
                result.detail = "halted at " + to_string(pos) + " before finishing";
            }
            return result;
        }
        Cell next = step(pos, d.dir);
        if (!map.is_known_free(next)) {
            result.status = RunStatus::IllegalMove;
            result.detail = "move into non-free cell " + to_string(next);
            return result;
        }
        if (t.steps() >= config.step_limit) {
            result.status = RunStatus::StepLimitExceeded;
            result.detail = "no halt within " + std::to_string(config.step_limit) + " steps";
            return result;
        }
        if (map.is_visited(next)) ++t.revisits;
        map.mark_visited(next);
        t.moves.push_back(next);
        history.push_back(next);
        pos = next;
        oracle.agent_at(pos);
        sense_into(oracle, map, pos);
    }
}

namespace {

class PolygonOracle : public CellOracle {
  public:
    explicit PolygonOracle(const GridPolygon& p) : p_(p) {}
    CellStatus status(Cell c) override {
        return p_.is_free(c) ? CellStatus::Free : CellStatus::Blocked;
    }

  private:
    const GridPolygon& p_;
};

}  // namespace

RunResult run_strategy(const GridPolygon& p, Strategy& strategy, int step_limit) {
    PolygonOracle oracle(p);
    RunConfig config;
    config.step_limit = step_limit > 0 ? step_limit : 4 * p.size() + 16;
    auto done = [&p](const KnowledgeMap& map, Cell pos) {
        return pos == p.start() &&
               static_cast<int>(map.visited().size()) == p.size();
    };
    RunResult r = run_on_oracle(oracle, p.start(), strategy, done, config);
    r.transcript.polygon_id = p.content_hash();
    return r;
}

}  // namespace gridpoly
