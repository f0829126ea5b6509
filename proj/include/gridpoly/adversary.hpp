#pragma once

#include <optional>

#include "gridpoly/blocks.hpp"
#include "gridpoly/engine.hpp"
#include "gridpoly/rational.hpp"

namespace gridpoly {

struct StrategyIncomplete : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The reactive, lazily committing environment. Cell statuses are fixed at
// first sensing and never change; which block a round presents depends only
// on information the agent has revealed by its own motion.
class AdversaryEnvironment : public CellOracle {
  public:
    AdversaryEnvironment(const BlockLibrary& lib, int n_blocks);

    CellStatus status(Cell c) override;
    void agent_at(Cell pos) override;

    Cell global_start() const { return {0, 1}; }
    int rounds_total() const { return n_; }
    bool all_committed() const;
    std::vector<PlacedBlock> triggered() const;

    // Valid once every round has committed: the full polygon and whether the
    // agent has covered it.
    GridPolygon final_polygon() const;
    bool run_complete(const KnowledgeMap& map, Cell pos) const;

    // Per-round (phase, flip, spine_col, committed block) tuples; statuses
    // and transitions are a deterministic function of this digest, which
    // makes exhaustive state walks finite.
    std::vector<std::array<int, 4>> state_digest() const;

  private:
    enum class Phase { Start, Spine, Room, Done };

    struct Round {
        Cell origin;       // global cell of local (0,0) (flip: of local (0,1))
        int flip = -1;     // -1 until the agent leaves the rectangle
        Phase phase = Phase::Start;
        int spine_col = 0;
        const Block* committed = nullptr;
        bool committed_mirrored = false;
    };

    Cell to_local(const Round& r, Cell global) const;
    Cell to_global(const Round& r, Cell local) const;
    int round_of(Cell global) const;  // index of the round owning this column
    void ensure_round_exists_beyond(int round_index);
    void commit(Round& r, char block_id);
    CellStatus planned_status(const Round& r, Cell local) const;

    const BlockLibrary& lib_;
    int n_;
    std::vector<Round> rounds_;
    std::unordered_map<Cell, CellStatus, CellHash> committed_cells_;
};

struct AdversaryRunOutcome {
    RunResult run;
    std::vector<PlacedBlock> blocks_triggered;
    GridPolygon polygon;
    OptimalTour optimum;
    Rational ratio;
};

// Chains n adversary rounds against a deterministic strategy, certifies the
// final polygon's optimum, and returns the exact ratio.
AdversaryRunOutcome adversary_run(const BlockLibrary& lib, Strategy& strategy, int n_blocks);

struct TriggerClassResult {
    std::string label;
    int prefix_steps = 0;
    int min_total = 0;  // prefix + exact completion, minimised over behaviours
};

struct DetourReport {
    char block_id = '?';
    int opt_steps = 0;
    int required = 0;  // opt + 2 for b,d,f; opt + 4 for h,i
    std::vector<TriggerClassResult> classes;
    int min_total = 0;
    bool pass = false;
    std::string violation;  // witness description when pass is false
};

// Exhaustively bounds every sensing-consistent agent behaviour that triggers
// the block: the pre-commitment game graph is finite once dominated states
// are folded, and completions are exact searches on the committed geometry.
DetourReport verify_block_forced_detour(const BlockLibrary& lib, char block_id);

struct TotalityReport {
    bool pass = false;
    std::vector<std::string> checks;
    std::string failure;
};

// Static and exhaustive-walk checks that the decision tree covers every legal
// move sequence from the start rectangle and reveals statuses consistent with
// whichever block it commits.
TotalityReport verify_decision_tree_totality(const BlockLibrary& lib);

// (28 + 26(n-1)) / (24 + 22(n-1)), the chain ratio when every round
// presents block (i).
Rational ratio_limit(int n);

// Smallest n whose chain ratio exceeds 13/11 - epsilon while any additive
// constant A is overrun: A / opt(n) < epsilon / 2.
int blocks_needed(const Rational& epsilon, const Rational& additive);

// Scripted strategy that rides the spine, takes the door mapped to block (i)
// in every round on the way back, and otherwise explores optimally. Used for
// the asymptotic reproduction.
std::unique_ptr<Strategy> make_block_i_trigger_strategy(const BlockLibrary& lib, int n_blocks);

}  // namespace gridpoly
