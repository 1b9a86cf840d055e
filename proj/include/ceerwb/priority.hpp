#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ceerwb/ceer.hpp"

namespace ceerwb {

// The family member E_i enumerates W_{parameterize(family, i)} as coded pairs.
struct PriorityConfig {
    ProgramIndex family = 0;
    ProgramIndex v_program = 0;            // V_s = W_{v_program, s}
    std::vector<ProgramIndex> candidates;  // the j of the Q-requirements
    std::uint64_t family_count = 1;        // the i of the Q-requirements range below this
    Stage stages = 0;
};

CeerSpec family_member(const PriorityConfig& cfg, const Natural& i);

struct RequirementId {
    bool is_p = true;
    std::uint64_t n = 0;  // P_n
    Natural i = 0, j = 0; // Q_<i,j>
    std::string name() const;  // "P3", "Q<0,4>"
};

// M = <v, k>: k = 0 divergence at v, k = 1 the pair v = <x,y> is merged
// wrongly, k = 2 no evidence.
struct Evidence {
    Natural v = 0;
    unsigned k = 2;
    bool operator==(const Evidence& o) const { return v == o.v && k == o.k; }
    bool operator!=(const Evidence& o) const { return !(*this == o); }
};

struct RequirementState {
    bool initialized = true;
    bool permanent = false;           // absorbing
    std::optional<Natural> restraint; // m^R
    std::optional<Evidence> m_param;  // M, Q only
    std::vector<Natural> picks;       // P only
};

enum class PriorityAction { PPick, QInit, QPermanent, QCollapse };
const char* to_string(PriorityAction a);
std::optional<PriorityAction> parse_action(const std::string& s);

struct StageRecord {
    Stage stage = 0;
    std::string actor;
    PriorityAction action = PriorityAction::PPick;
    // All numbers lo..hi are merged into one class; unset when nothing merged.
    std::optional<std::pair<Natural, Natural>> collapsed;
    std::vector<Natural> picks;
    std::vector<std::string> initialized;  // lower requirements this action initialized
    std::optional<Natural> restraint;      // actor's m after acting
    std::optional<Evidence> m_param;       // actor's M after acting
};

// Requirements in priority order: P_0, Q_{r_0}, P_1, Q_{r_1}, ... where r_k
// runs through the (i, j) pairs ordered by <i,j>; once they run out only P's follow.
class RequirementList {
public:
    explicit RequirementList(const PriorityConfig& cfg);
    RequirementId at(std::size_t rank) const;
    std::optional<std::size_t> rank_of(const std::string& name) const;  // searches the first ranks
    std::size_t q_count() const { return pairs_.size(); }

private:
    std::vector<std::pair<Natural, Natural>> pairs_;
};

class PriorityConstruction {
public:
    explicit PriorityConstruction(PriorityConfig cfg);

    // Executes stage s+1 where s = stage().
    StageRecord run_stage();
    Stage stage() const { return s_; }
    const PartitionSnapshot& e() const { return e_; }
    const PriorityConfig& config() const { return cfg_; }
    const RequirementList& requirements() const { return list_; }
    // States of the ranks touched so far; all later ranks are initialized.
    const std::vector<RequirementState>& states() const { return states_; }

    // Least v <= t with phi_{j,t}(v) divergent (v >= t counts as divergent),
    // else v = <x,y> with converging images, x, y unrelated in E_{i,t} but the
    // images related in the current E.
    Evidence evidence_param(const Natural& i, const Natural& j, Stage t) const;

private:
    RequirementState& state(std::size_t rank);

    PriorityConfig cfg_;
    RequirementList list_;
    Stage s_ = 0;
    PartitionSnapshot e_;
    std::optional<Natural> high_water_;  // largest number used so far
    std::vector<RequirementState> states_;
};

// E frozen after the last stage: related at t iff related in E_{min(t, stages)}.
class PriorityRelation : public StagedRelation {
public:
    PriorityRelation(std::string label, std::vector<std::pair<Stage, PartitionSnapshot>> history);
    std::string name() const override { return label_; }
    bool related(const Natural& x, const Natural& y, Stage s) const override;

private:
    std::string label_;
    std::vector<std::pair<Stage, PartitionSnapshot>> history_;  // snapshot after each stage that merged
};

struct PriorityRun {
    PriorityConfig config;
    std::vector<StageRecord> log;
    PartitionSnapshot final_e;
    CeerSpec e;  // WordProblem-kind handle over the stage history
    std::vector<std::pair<RequirementId, RequirementState>> final_states;
};

PriorityRun run_priority(const PriorityConfig& cfg);

// E after the last logged stage, rebuilt from the collapse events.
PartitionSnapshot e_from_log(const std::vector<StageRecord>& log);

struct AuditViolation {
    char clause;  // 'a'..'e', or 's' for a malformed log
    std::string detail;
};

struct AuditReport {
    std::vector<AuditViolation> violations;
    bool clean() const { return violations.empty(); }
};

// (a) every collapse lies above the actor's replayed restraint, and a Q's
//     restraint is the maximum of the higher restraints;
// (b) the picks of each P that is still active are pairwise unrelated in e;
// (c) permanently satisfied Q_<i,j> have i in V_final;
// (d) an active Q whose M is <<x,y>,1> has x, y unrelated in E_i and images related in e;
// (e) each action initialized exactly the lower requirements that were active.
AuditReport audit(const PriorityConfig& cfg, const std::vector<StageRecord>& log, const PartitionSnapshot& e,
                  Budget budget);

// --- log format (JSON lines) -------------------------------------------------
// {"record":"priority-config",...}, one {"record":"stage",...} per stage, then
// {"record":"priority-summary",...}.
std::string log_to_jsonl(const PriorityRun& run);
struct ParsedLog {
    PriorityConfig config;
    std::vector<StageRecord> log;
};
ParsedLog parse_log(const std::string& text);  // throws std::invalid_argument

}  // namespace ceerwb
