#include "ceerwb/priority.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ceerwb {

CeerSpec family_member(const PriorityConfig& cfg, const Natural& i) {
    return CeerSpec::enumerated(parameterize(cfg.family, i));
}

std::string RequirementId::name() const {
    if (is_p) return "P" + std::to_string(n);
    return "Q<" + to_string(i) + "," + to_string(j) + ">";
}

const char* to_string(PriorityAction a) {
    switch (a) {
        case PriorityAction::PPick:
            return "P-pick";
        case PriorityAction::QInit:
            return "Q-init";
        case PriorityAction::QPermanent:
            return "Q-permanent";
        default:
            return "Q-collapse";
    }
}

std::optional<PriorityAction> parse_action(const std::string& s) {
    for (auto a : {PriorityAction::PPick, PriorityAction::QInit, PriorityAction::QPermanent, PriorityAction::QCollapse})
        if (s == to_string(a)) return a;
    return std::nullopt;
}

// --- requirement list -------------------------------------------------------

RequirementList::RequirementList(const PriorityConfig& cfg) {
    std::set<Natural> js(cfg.candidates.begin(), cfg.candidates.end());
    std::map<Natural, std::pair<Natural, Natural>> by_code;
    for (std::uint64_t i = 0; i < cfg.family_count; ++i)
        for (const auto& j : js) by_code.emplace(pair(i, j), std::make_pair(Natural(i), j));
    for (auto& [code, ij] : by_code) pairs_.push_back(ij);
}

RequirementId RequirementList::at(std::size_t rank) const {
    RequirementId id;
    const std::size_t k = pairs_.size();
    if (rank >= 2 * k) {
        id.n = k + (rank - 2 * k);
        return id;
    }
    if (rank % 2 == 0) {
        id.n = rank / 2;
        return id;
    }
    id.is_p = false;
    id.i = pairs_[(rank - 1) / 2].first;
    id.j = pairs_[(rank - 1) / 2].second;
    return id;
}

std::optional<std::size_t> RequirementList::rank_of(const std::string& name) const {
    const std::size_t k = pairs_.size();
    if (name.size() > 1 && name[0] == 'P') {
        std::uint64_t n = 0;
        try {
            n = to_u64(parse_natural(name.substr(1)));
        } catch (const std::exception&) {
            return std::nullopt;
        }
        return n < k ? 2 * n : 2 * k + (n - k);
    }
    for (std::size_t r = 0; r < k; ++r)
        if (at(2 * r + 1).name() == name) return 2 * r + 1;
    return std::nullopt;
}

// --- construction -----------------------------------------------------------

PriorityConstruction::PriorityConstruction(PriorityConfig cfg) : cfg_(std::move(cfg)), list_(cfg_) {}

RequirementState& PriorityConstruction::state(std::size_t rank) {
    if (states_.size() <= rank) states_.resize(rank + 1);
    return states_[rank];
}

Evidence PriorityConstruction::evidence_param(const Natural& i, const Natural& j, Stage t) const {
    const CeerSpec ei = family_member(cfg_, i);
    std::vector<Natural> image;  // image[v] = phi_{j,t}(v) for the v checked so far
    for (Stage v = 0; v <= t; ++v) {
        if (v >= t) return {v, 0};
        EvalOutcome o = eval(j, v, t);
        if (!o.converged) return {v, 0};
        image.push_back(o.value);
        // x, y <= v, so both images are known; x = v forces v = 0 = y.
        auto [x, y] = unpair(v);
        if (x == y) continue;
        const Natural& fx = image[x.convert_to<std::size_t>()];
        const Natural& fy = image[y.convert_to<std::size_t>()];
        if (!related_at(ei, x, y, t) && e_.same(fx, fy)) return {v, 1};
    }
    return {0, 2};
}

StageRecord PriorityConstruction::run_stage() {
    const Stage s = s_, t = s_ + 1;
    StageRecord rec;
    rec.stage = t;
    std::size_t rank = 0;
    for (;; ++rank) {
        const RequirementId id = list_.at(rank);
        RequirementState& st = state(rank);
        if (id.is_p) {
            if (!st.initialized) continue;
            Natural first = high_water_ ? *high_water_ + 1 : Natural(0);
            st.picks.clear();
            for (std::uint64_t k = 0; k <= id.n; ++k) st.picks.push_back(first + k);
            st.restraint = st.picks.back();
            st.initialized = false;
            high_water_ = st.picks.back();
            rec.action = PriorityAction::PPick;
            rec.picks = st.picks;
            break;
        }
        if (st.permanent) continue;
        if (st.initialized) {
            Natural m = 0;
            for (std::size_t r = 0; r < rank; ++r)
                if (states_[r].restraint) m = std::max(m, *states_[r].restraint);
            st.restraint = m;
            st.m_param = evidence_param(id.i, id.j, t);
            st.initialized = false;
            rec.action = PriorityAction::QInit;
            break;
        }
        if (in_w(cfg_.v_program, id.i, s)) {
            st.permanent = true;
            rec.action = PriorityAction::QPermanent;
            break;
        }
        Evidence ev = evidence_param(id.i, id.j, t);
        if (ev != *st.m_param) {
            Natural lo = *st.restraint + 1, hi = s;
            if (lo < hi) {
                for (Natural x = lo + 1; x <= hi; ++x) e_.unite(lo, x);
                rec.collapsed = std::make_pair(lo, hi);
                high_water_ = high_water_ ? std::max(*high_water_, hi) : hi;
            }
            st.m_param = ev;
            rec.action = PriorityAction::QCollapse;
            break;
        }
    }
    rec.actor = list_.at(rank).name();
    rec.restraint = states_[rank].restraint;
    rec.m_param = states_[rank].m_param;
    for (std::size_t r = rank + 1; r < states_.size(); ++r) {
        RequirementState& low = states_[r];
        if (low.permanent || low.initialized) continue;
        low = RequirementState{};
        rec.initialized.push_back(list_.at(r).name());
    }
    s_ = t;
    return rec;
}

// --- E as a ceer ------------------------------------------------------------

PriorityRelation::PriorityRelation(std::string label, std::vector<std::pair<Stage, PartitionSnapshot>> history)
    : label_(std::move(label)), history_(std::move(history)) {}

bool PriorityRelation::related(const Natural& x, const Natural& y, Stage s) const {
    if (x == y) return true;
    auto it = std::upper_bound(history_.begin(), history_.end(), s,
                               [](Stage v, const auto& entry) { return v < entry.first; });
    if (it == history_.begin()) return false;
    return std::prev(it)->second.same(x, y);
}

PriorityRun run_priority(const PriorityConfig& cfg) {
    PriorityConstruction c(cfg);
    PriorityRun run;
    run.config = cfg;
    std::vector<std::pair<Stage, PartitionSnapshot>> history;
    for (Stage k = 0; k < cfg.stages; ++k) {
        run.log.push_back(c.run_stage());
        if (run.log.back().collapsed) history.emplace_back(c.stage(), c.e());
    }
    run.final_e = c.e();
    run.e = CeerSpec::word_problem(std::make_shared<PriorityRelation>("priority", std::move(history)));
    for (std::size_t r = 0; r < c.states().size(); ++r) run.final_states.emplace_back(c.requirements().at(r), c.states()[r]);
    return run;
}

PartitionSnapshot e_from_log(const std::vector<StageRecord>& log) {
    PartitionSnapshot e(log.empty() ? 0 : log.back().stage);
    for (const auto& rec : log) {
        if (!rec.collapsed) continue;
        for (Natural x = rec.collapsed->first + 1; x <= rec.collapsed->second; ++x) e.unite(rec.collapsed->first, x);
    }
    return e;
}

// --- audit ------------------------------------------------------------------

AuditReport audit(const PriorityConfig& cfg, const std::vector<StageRecord>& log, const PartitionSnapshot& e,
                  Budget budget) {
    AuditReport report;
    auto fail = [&](char clause, std::string detail) { report.violations.push_back({clause, std::move(detail)}); };
    RequirementList list(cfg);
    std::vector<RequirementState> st;
    auto at = [&](std::size_t r) -> RequirementState& {
        if (st.size() <= r) st.resize(r + 1);
        return st[r];
    };
    const Stage final_stage = log.empty() ? 0 : log.back().stage;

    for (std::size_t idx = 0; idx < log.size(); ++idx) {
        const StageRecord& rec = log[idx];
        const std::string where = "stage " + std::to_string(rec.stage) + " " + rec.actor;
        if (rec.stage != idx + 1) fail('s', where + ": stages are not consecutive");
        auto rank_opt = list.rank_of(rec.actor);
        if (!rank_opt) {
            fail('s', where + ": unknown requirement");
            continue;
        }
        const std::size_t rank = *rank_opt;
        const RequirementId id = list.at(rank);
        RequirementState& me = at(rank);
        switch (rec.action) {
            case PriorityAction::PPick:
                if (!id.is_p || rec.picks.size() != id.n + 1) fail('s', where + ": malformed P action");
                me.picks = rec.picks;
                me.restraint = rec.picks.empty() ? std::nullopt : std::optional<Natural>(rec.picks.back());
                me.initialized = false;
                break;
            case PriorityAction::QInit: {
                Natural m = 0;
                for (std::size_t r = 0; r < rank && r < st.size(); ++r)
                    if (st[r].restraint) m = std::max(m, *st[r].restraint);
                if (!rec.restraint || *rec.restraint != m)
                    fail('a', where + ": restraint is not the maximum higher restraint " + to_string(m));
                me.restraint = m;
                me.m_param = rec.m_param;
                me.initialized = false;
                break;
            }
            case PriorityAction::QPermanent:
                if (!in_w(cfg.v_program, id.i, final_stage))
                    fail('c', where + ": " + to_string(id.i) + " is not in V_final");
                me.permanent = true;
                break;
            case PriorityAction::QCollapse:
                if (rec.collapsed) {
                    if (!me.restraint || rec.collapsed->first <= *me.restraint)
                        fail('a', where + ": collapse from " + to_string(rec.collapsed->first) + " at or below restraint " +
                                      (me.restraint ? to_string(*me.restraint) : std::string("undefined")));
                    if (rec.collapsed->second >= rec.stage) fail('a', where + ": collapse reaches the current stage");
                }
                me.m_param = rec.m_param;
                break;
        }
        std::vector<std::string> expected;
        for (std::size_t r = rank + 1; r < st.size(); ++r) {
            if (st[r].permanent || st[r].initialized) continue;
            st[r] = RequirementState{};
            expected.push_back(list.at(r).name());
        }
        if (expected != rec.initialized) fail('e', where + ": initialized set differs from the active lower requirements");
    }

    for (std::size_t r = 0; r < st.size(); ++r) {
        const RequirementId id = list.at(r);
        const RequirementState& s = st[r];
        if (s.initialized) continue;
        if (id.is_p) {
            for (std::size_t a = 0; a < s.picks.size(); ++a)
                for (std::size_t b = a + 1; b < s.picks.size(); ++b)
                    if (e.same(s.picks[a], s.picks[b]))
                        fail('b', id.name() + ": picks " + to_string(s.picks[a]) + " and " + to_string(s.picks[b]) +
                                      " are related");
            continue;
        }
        if (s.permanent || !s.m_param || s.m_param->k != 1) continue;
        auto [x, y] = unpair(s.m_param->v);
        if (related_at(family_member(cfg, id.i), x, y, final_stage))
            fail('d', id.name() + ": witness pair is related in the family member");
        EvalOutcome fx = eval(id.j, x, budget), fy = eval(id.j, y, budget);
        if (!fx.converged || !fy.converged || !e.same(fx.value, fy.value))
            fail('d', id.name() + ": images of the witness pair are not related");
    }
    return report;
}

}  // namespace ceerwb
