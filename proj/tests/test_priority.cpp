#include <set>

#include "ceerwb/priority.hpp"
#include "doctest.h"

using namespace ceerwb;

namespace {

PriorityConfig flagship(Stage stages) {
    PriorityConfig c;
    c.family = 0;     // W empty for every parameter: E_0 = Id
    c.v_program = 0;  // V empty
    c.candidates = {0, 1, 2, 3, 4};
    c.stages = stages;
    return c;
}

PriorityConfig identity_candidate(Stage stages) {
    PriorityConfig c = flagship(stages);
    c.candidates = {samples::identity()};
    return c;
}

bool has_clause(const AuditReport& r, char clause) {
    for (const auto& v : r.violations)
        if (v.clause == clause) return true;
    return false;
}

const StageRecord* last_record_of(const std::vector<StageRecord>& log, const std::string& actor) {
    const StageRecord* out = nullptr;
    for (const auto& r : log)
        if (r.actor == actor) out = &r;
    return out;
}

}  // namespace

TEST_CASE("requirement order interleaves P and Q by pair code") {
    PriorityConfig c;
    c.candidates = {1, 0};
    c.family_count = 2;
    RequirementList list(c);
    CHECK(list.q_count() == 4);
    std::vector<std::string> names;
    for (std::size_t r = 0; r < 10; ++r) names.push_back(list.at(r).name());
    CHECK(names == std::vector<std::string>{"P0", "Q<0,0>", "P1", "Q<0,1>", "P2", "Q<1,0>", "P3", "Q<1,1>", "P4", "P5"});
    for (std::size_t r = 0; r < 20; ++r) CHECK(list.rank_of(list.at(r).name()) == r);
    CHECK_FALSE(list.rank_of("Q<5,5>"));
}

TEST_CASE("evidence parameter") {
    PriorityConstruction pc(flagship(0));
    // No evidence below t: the frontier v = t has not converged yet.
    Evidence total = pc.evidence_param(0, samples::identity(), 5);
    CHECK(total.k == 0);
    CHECK(total.v == 5);
    Evidence loop = pc.evidence_param(0, samples::forever_loop(), 5);
    CHECK(loop.k == 0);
    CHECK(loop.v == 0);
}

TEST_CASE("stage one: P0 picks one fresh number") {
    PriorityConstruction pc(flagship(1));
    StageRecord r = pc.run_stage();
    CHECK(r.stage == 1);
    CHECK(r.actor == "P0");
    CHECK(r.action == PriorityAction::PPick);
    CHECK(r.picks == std::vector<Natural>{0});
    CHECK(r.restraint == Natural(0));
}

TEST_CASE("zero stages leave E the identity") {
    PriorityRun run = run_priority(flagship(0));
    CHECK(run.log.empty());
    CHECK(run.final_e.blocks().empty());
    CHECK(audit(run.config, run.log, run.final_e, 1000).clean());
}

TEST_CASE("identity candidate is defeated by a collapsed pair") {
    PriorityRun run = run_priority(identity_candidate(60));
    const std::string q = "Q<0," + to_string(samples::identity()) + ">";
    const StageRecord* last = last_record_of(run.log, q);
    REQUIRE(last);
    REQUIRE(last->m_param);
    CHECK(last->m_param->k == 1);
    auto [x, y] = unpair(last->m_param->v);
    CHECK(x != y);
    CHECK(run.final_e.same(x, y));
    CHECK(last->stage < 20);
    CHECK(audit(run.config, run.log, run.final_e, 10000).clean());
}

TEST_CASE("flagship run passes the audit and defeats every candidate") {
    PriorityRun run = run_priority(flagship(200));
    REQUIRE(run.log.size() == 200);
    AuditReport report = audit(run.config, run.log, run.final_e, 10000);
    for (const auto& v : report.violations) INFO(v.clause << ": " << v.detail);
    CHECK(report.clean());
    for (unsigned j = 0; j < 5; ++j) {
        const StageRecord* last = last_record_of(run.log, "Q<0," + std::to_string(j) + ">");
        REQUIRE(last);
        REQUIRE(last->m_param);
        if (last->m_param->k == 0) {
            CHECK_FALSE(eval(j, last->m_param->v, 10000).converged);
            continue;
        }
        REQUIRE(last->m_param->k == 1);
        auto [x, y] = unpair(last->m_param->v);
        CHECK(x != y);
        EvalOutcome fx = eval(j, x, 10000), fy = eval(j, y, 10000);
        REQUIRE(fx.converged);
        REQUIRE(fy.converged);
        CHECK(run.final_e.same(fx.value, fy.value));
    }
    // P_0..P_4 keep pairwise distinct classes.
    std::vector<Natural> witnesses;
    for (const auto& [id, st] : run.final_states)
        if (id.is_p && id.n < 5) {
            REQUIRE_FALSE(st.picks.empty());
            witnesses.push_back(st.picks.front());
        }
    REQUIRE(witnesses.size() == 5);
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = a + 1; b < 5; ++b) CHECK_FALSE(run.final_e.same(witnesses[a], witnesses[b]));
}

TEST_CASE("runs are deterministic and logs round-trip") {
    std::string a = log_to_jsonl(run_priority(flagship(80)));
    std::string b = log_to_jsonl(run_priority(flagship(80)));
    CHECK(a == b);
    ParsedLog parsed = parse_log(a);
    CHECK(parsed.log.size() == 80);
    PriorityRun again;
    again.config = parsed.config;
    again.log = parsed.log;
    PriorityRun orig = run_priority(flagship(80));
    again.final_states = orig.final_states;
    CHECK(log_to_jsonl(again) == a);
    CHECK(e_from_log(parsed.log).blocks() == orig.final_e.blocks());
    CHECK_THROWS_AS(parse_log("{\"record\":\"stage\"}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_log("not json"), std::invalid_argument);
}

TEST_CASE("E grows with the stage and only collapses above the actor's restraint") {
    PriorityRun run = run_priority(identity_candidate(40));
    for (Stage s = 0; s < 40; ++s)
        for (unsigned x = 0; x < 12; ++x)
            for (unsigned y = 0; y < 12; ++y)
                if (related_at(run.e, x, y, s)) CHECK(related_at(run.e, x, y, s + 1));
    for (const auto& r : run.log) {
        if (!r.collapsed) continue;
        REQUIRE(r.restraint);
        CHECK(r.collapsed->first > *r.restraint);
        CHECK(r.collapsed->second < r.stage);
    }
}

TEST_CASE("permanently satisfied requirements never act again") {
    PriorityConfig c;
    c.family = 3;                         // constant 1: E_0 is a single class
    c.v_program = samples::accept_zero();  // V = {0}
    c.candidates = {0, 1, 2};
    c.stages = 60;
    PriorityRun run = run_priority(c);
    std::set<std::string> permanent;
    for (const auto& r : run.log) {
        CHECK(permanent.count(r.actor) == 0);
        if (r.action == PriorityAction::QPermanent) permanent.insert(r.actor);
    }
    CHECK(permanent == std::set<std::string>{"Q<0,0>", "Q<0,1>", "Q<0,2>"});
    CHECK(audit(c, run.log, run.final_e, 10000).clean());
}

TEST_CASE("audit catches injected faults") {
    PriorityRun run = run_priority(identity_candidate(40));
    REQUIRE(audit(run.config, run.log, run.final_e, 10000).clean());

    SUBCASE("(a) collapse at or below the restraint") {
        auto log = run.log;
        for (auto& r : log)
            if (r.collapsed) {
                r.collapsed->first = *r.restraint;
                break;
            }
        CHECK(has_clause(audit(run.config, log, e_from_log(log), 10000), 'a'));
    }
    SUBCASE("(b) P_2's picks merged by hand") {
        PartitionSnapshot e = run.final_e;
        std::vector<Natural> picks;
        for (const auto& [id, st] : run.final_states)
            if (id.is_p && id.n == 2) picks = st.picks;
        REQUIRE(picks.size() == 3);
        e.unite(picks[0], picks[2]);
        CHECK(has_clause(audit(run.config, run.log, e, 10000), 'b'));
    }
    SUBCASE("(c) permanent without membership in V") {
        auto log = run.log;
        for (auto& r : log)
            if (r.actor[0] == 'Q' && r.action == PriorityAction::QCollapse) {
                r.action = PriorityAction::QPermanent;
                break;
            }
        CHECK(has_clause(audit(run.config, log, e_from_log(log), 10000), 'c'));
    }
    SUBCASE("(d) witness pair whose images are unrelated") {
        auto log = run.log;
        StageRecord* last = nullptr;
        for (auto& r : log)
            if (r.actor[0] == 'Q') last = &r;
        REQUIRE(last);
        last->m_param = Evidence{pair(100, 200), 1};
        CHECK(has_clause(audit(run.config, log, e_from_log(log), 10000), 'd'));
    }
    SUBCASE("(e) initialization list altered") {
        auto log = run.log;
        log[5].initialized.push_back("P77");
        CHECK(has_clause(audit(run.config, log, e_from_log(log), 10000), 'e'));
    }
}
