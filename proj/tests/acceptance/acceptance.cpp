// Acceptance suite: one PASS/FAIL line per criterion. Every size, stage and
// budget below is pinned here; the process exits nonzero if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ceerwb/ceer.hpp"
#include "ceerwb/freering.hpp"
#include "ceerwb/machine.hpp"
#include "ceerwb/priority.hpp"
#include "ceerwb/wordproblem.hpp"
#include "oracles.hpp"

using namespace ceerwb;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::size_t failures = 0;
    // Records a failed check; only the first few messages are kept.
    void fail(const std::string& what) {
        pass = false;
        if (failures++ < 3) detail << " [" << what << "]";
    }
};

// --- criterion 1 and 2: right-zero band and bandlike monoid ----------------

constexpr unsigned kPartitions = 20;
constexpr unsigned kUniverse = 10;      // partitions of {0..9}; closure alphabet x_0..x_9
constexpr unsigned kTestLetters = 4;    // compared words use x_0..x_3
constexpr std::size_t kMaxWordLen = 4;
constexpr Stage kRealizationStage = 9;  // every generator 0..9 is in the stage-9 relations

void criterion_rzb(Outcome& out) {
    std::mt19937_64 rng(1001);
    const auto words = oracle::all_words(kTestLetters, 1, kMaxWordLen);
    std::size_t compared = 0;
    for (unsigned t = 0; t < kPartitions; ++t) {
        CeerSpec r = CeerSpec::finite_partition(oracle::random_partition(rng, kUniverse));
        oracle::BoundedClosure closure(kUniverse, kMaxWordLen, rzb_presentation(r).relations_at(kRealizationStage),
                                       false);
        for (const auto& u : words) {
            for (const auto& v : words) {
                ++compared;
                if (rzb_equal(r, u, v, kRealizationStage) != closure.equal(u, v))
                    out.fail("mismatch " + word_text(u) + " / " + word_text(v));
            }
            if (!rzb_equal(r, u, {u.back()}, kRealizationStage)) out.fail("last letter " + word_text(u));
        }
    }
    out.detail << compared << " pairs over " << kPartitions << " partitions";
}

void criterion_bandlike(Outcome& out) {
    std::mt19937_64 rng(1002);
    const auto words = oracle::all_words(kTestLetters, 0, kMaxWordLen);
    std::size_t compared = 0;
    for (unsigned t = 0; t < kPartitions; ++t) {
        CeerSpec r = CeerSpec::finite_partition(oracle::random_partition(rng, kUniverse));
        auto rels = bandlike_monoid_presentation(r).relations_at(kRealizationStage);
        bool has_x0 = false;
        for (const auto& rel : rels)
            if ((rel.lhs == Word{0} && rel.rhs.empty()) || (rel.rhs == Word{0} && rel.lhs.empty())) has_x0 = true;
        if (!has_x0) out.fail("relation x0 = 1 missing");
        oracle::BoundedClosure closure(kUniverse, kMaxWordLen, rels, true);
        for (const auto& u : words)
            for (const auto& v : words) {
                ++compared;
                if (bandlike_equal(r, u, v, kRealizationStage) != closure.equal(u, v))
                    out.fail("mismatch " + word_text(u) + " / " + word_text(v));
            }
        for (std::size_t n = 0; n <= kMaxWordLen; ++n) {
            Word zeros(n, 0);
            if (!bandlike_equal(r, zeros, {}, kRealizationStage) || !closure.equal(zeros, {}))
                out.fail("x0^" + std::to_string(n) + " is not the identity");
        }
    }
    out.detail << compared << " pairs over " << kPartitions << " partitions";
}

// --- criterion 3: lifted ceers are infinite and isomorphic -----------------

// x ~ y iff (x)_1 R (y)_1: the same lift coded through the second coordinate.
class SecondCoordinateLift : public StagedRelation {
public:
    explicit SecondCoordinateLift(CeerSpec r) : r_(std::move(r)) {}
    std::string name() const override { return "lift2"; }
    bool related(const Natural& x, const Natural& y, Stage s) const override {
        return related_at(r_, unpair(x).second, unpair(y).second, s);
    }

private:
    CeerSpec r_;
};

void criterion_lift(Outcome& out) {
    const CeerSpec r = CeerSpec::finite_partition({{0, 1}, {2}});
    const CeerSpec lifted = lift_infinite(r);
    constexpr unsigned kElements = 30, kMembers = 10, kRounds = 50;
    for (unsigned x = 0; x < kElements; ++x) {
        std::vector<Natural> members;
        for (Natural y = 0; members.size() < kMembers && y < 5000; ++y)
            if (related_at(lifted, x, y, 0)) members.push_back(y);
        if (members.size() < kMembers) out.fail("class of " + std::to_string(x) + " looks finite");
    }
    const CeerSpec other = CeerSpec::word_problem(std::make_shared<SecondCoordinateLift>(r));
    Correspondence map;
    for (unsigned round = 0; round < kRounds; ++round) {
        MyhillStep step = myhill_extend(lifted, other, samples::swap_pair(), map, 0, 10000);
        map = step.map;
        if (step.stuck) {
            out.fail("round " + std::to_string(round) + ": " + *step.stuck);
            break;
        }
    }
    std::size_t violations = 0;
    std::map<Natural, Natural> inverse;
    for (const auto& [a, b] : map.pairs()) {
        if (!inverse.emplace(b, a).second) ++violations;
        for (const auto& [c, d] : map.pairs())
            if (related_at(lifted, a, c, 0) != related_at(other, b, d, 0)) ++violations;
    }
    if (map.size() < kRounds) out.fail("correspondence has only " + std::to_string(map.size()) + " pairs");
    if (violations) out.fail(std::to_string(violations) + " violations");
    out.detail << kMembers << " members for each x < " << kElements << "; correspondence of size " << map.size()
               << " after " << kRounds << " rounds";
}

// --- criterion 4: class enumeration on a corpus -----------------------------

constexpr std::uint64_t kClassBudget = 10000;

struct ClassCase {
    const char* presentation;
    const char* word;
    // Hand-derived class; empty means the class is infinite.
    std::vector<const char*> expected;
};

void criterion_classes(Outcome& out) {
    const std::vector<ClassCase> corpus = {
        {"semigroup\ngenerators 2\nrel x0 x1 = x1 x0\n", "x0 x0 x1", {"x0 x0 x1", "x0 x1 x0", "x1 x0 x0"}},
        {"semigroup\ngenerators 1\nrel x0 x0 = x0\n", "x0", {}},
        {"semigroup\ngenerators 2\n", "x0 x1 x1 x0", {"x0 x1 x1 x0"}},
        {"monoid\ngenerators 2\nrel x0 x1 = 1\n", "1", {}},
        {"semigroup\ngenerators 2\nrel x0 x1 x0 = x1\n", "x1", {}},
        {"semigroup\ngenerators 3\nrel x0 x1 = x2\n", "x2 x2", {"x2 x2", "x0 x1 x2", "x2 x0 x1", "x0 x1 x0 x1"}},
        {"semigroup\ngenerators 2\nrel x0 x0 = x1 x1\n", "x0 x0 x0", {"x0 x0 x0", "x0 x1 x1", "x1 x1 x0"}},
        {"monoid\ngenerators 1\nrel x0 x0 x0 = 1\n", "x0", {}},
        {"semigroup\ngenerators 2\nrel x0 x1 = x1\n", "x1 x0", {}},
        {"semigroup\ngenerators 2\nrel x0 x1 x0 x1 = x1 x0\n", "x0 x1", {"x0 x1"}},
    };
    unsigned finite = 0, infinite = 0;
    for (const auto& c : corpus) {
        const Presentation p = parse_presentation(c.presentation);
        const Word w = parse_word(c.word, p.kind);
        const std::string tag = std::string(c.word) + " in " + presentation_text(p);
        // Oracle: bounded closure long enough to leave room for one rewrite past the longest member.
        std::size_t longest = w.size(), slack = 0;
        for (const char* e : c.expected) longest = std::max(longest, parse_word(e, p.kind).size());
        for (const auto& rel : p.relations)
            slack = std::max(slack, std::max(rel.lhs.size(), rel.rhs.size()));
        const std::size_t max_len = c.expected.empty() ? 8 : longest + slack;
        oracle::BoundedClosure closure(*p.generators, max_len, p.relations, p.kind == AlgebraKind::Monoid);
        WordSet oracle_class;
        for (const auto& v : closure.words())
            if (closure.equal(w, v)) oracle_class.insert(v);

        ClassEnumResult got = class_enumerate(p, w, kClassBudget);
        if (c.expected.empty()) {
            ++infinite;
            if (got.finite) out.fail("finite answer for an infinite class: " + tag);
            if (oracle_class.rbegin()->size() + slack <= max_len) out.fail("oracle does not see growth: " + tag);
            continue;
        }
        ++finite;
        WordSet hand;
        for (const char* e : c.expected) hand.insert(parse_word(e, p.kind));
        if (oracle_class != hand) out.fail("hand class disagrees with the oracle: " + tag);
        if (oracle_class.rbegin()->size() > longest) out.fail("oracle class is not closed: " + tag);
        if (!got.finite || got.words != hand) out.fail("wrong class: " + tag);
    }
    out.detail << finite << " finite and " << infinite << " infinite classes at budget " << kClassBudget;
}

// --- criterion 5: finiteness semidecision -----------------------------------

constexpr std::uint64_t kFinitenessBudget = 100000;

void criterion_finiteness(Outcome& out) {
    const std::vector<const char*> collapsing = {
        "semigroup\ngenerators 1\nrel x0 x0 = x0\n",
        "semigroup\ngenerators 2\nrel x0 x1 = x1\nrel x1 x1 = x1\nrel x0 x0 = x0\nrel x1 x0 = x0\n",
        "semigroup\ngenerators 2\nrel x0 x1 = x0\nrel x1 x1 = x1\nrel x0 x0 = x0\nrel x1 x0 = x1\n",
        "monoid\ngenerators 1\nrel x0 x0 = x0\n",
    };
    const std::vector<const char*> free = {"semigroup\ngenerators 1\n", "semigroup\ngenerators 2\n",
                                           "monoid\ngenerators 2\n"};
    std::size_t rechecked = 0;
    for (const char* text : collapsing) {
        const Presentation p = parse_presentation(text);
        FinitenessResult r = finiteness_semidecide(p, kFinitenessBudget);
        if (!r.finite || r.bound != 2) {
            out.fail("expected FiniteWithBound(2) for " + presentation_text(p));
            continue;
        }
        // Soundness: every word up to length bound+2 equals a word shorter than the bound.
        const bool monoid = p.kind == AlgebraKind::Monoid;
        oracle::BoundedClosure closure(*p.generators, r.bound + 2, p.relations, monoid);
        for (const auto& w : closure.words()) {
            ++rechecked;
            bool ok = false;
            for (const auto& v : oracle::all_words(*p.generators, monoid ? 0 : 1, r.bound - 1))
                if (closure.equal(w, v)) ok = true;
            if (!ok) out.fail("no short representative for " + word_text(w));
        }
    }
    for (const char* text : free) {
        const Presentation p = parse_presentation(text);
        if (finiteness_semidecide(p, kFinitenessBudget).finite) out.fail("free presentation judged finite");
    }
    out.detail << collapsing.size() << " collapsing, " << free.size() << " free at budget " << kFinitenessBudget
               << "; " << rechecked << " words re-checked";
}

// --- criterion 6 and 7: the flagship priority run ---------------------------

constexpr Stage kFlagshipStages = 500;
constexpr Budget kCandidateBudget = 10000;

PriorityConfig flagship_config() {
    PriorityConfig c;
    c.family = 0;
    c.v_program = 0;
    c.candidates = {0, 1, 2, 3, 4};
    c.family_count = 1;
    c.stages = kFlagshipStages;
    return c;
}

const PriorityRun& flagship() {
    static const PriorityRun run = run_priority(flagship_config());
    return run;
}

void criterion_priority(Outcome& out) {
    const PriorityRun& run = flagship();
    AuditReport report = audit(run.config, run.log, run.final_e, kCandidateBudget);
    for (const auto& v : report.violations) out.fail(std::string("audit ") + v.clause + ": " + v.detail);
    unsigned defeated = 0, partial = 0;
    for (const auto& j : run.config.candidates) {
        const std::string name = "Q<0," + to_string(j) + ">";
        const RequirementState* st = nullptr;
        for (const auto& [id, s] : run.final_states)
            if (id.name() == name) st = &s;
        if (!st || !st->m_param) {
            out.fail(name + " never initialized");
            continue;
        }
        if (st->m_param->k != 1) {
            // Only a candidate that is not total within the budget may stay undefeated.
            if (eval(j, st->m_param->v, kCandidateBudget).converged) out.fail(name + " total but undefeated");
            else ++partial;
            continue;
        }
        auto [x, y] = unpair(st->m_param->v);
        EvalOutcome fx = eval(j, x, kCandidateBudget), fy = eval(j, y, kCandidateBudget);
        if (x == y || !fx.converged || !fy.converged || !run.final_e.same(fx.value, fy.value))
            out.fail(name + " witness is not a collapsed pair");
        else ++defeated;
    }
    const std::string first = log_to_jsonl(run), second = log_to_jsonl(run_priority(flagship_config()));
    if (first != second) out.fail("logs differ between runs");
    out.detail << kFlagshipStages << " stages, " << report.violations.size() << " audit violations, " << defeated
               << " candidates defeated, " << partial << " not total; " << first.size() << "-byte logs identical";
}

void criterion_priority_classes(Outcome& out) {
    const PriorityRun& run = flagship();
    std::vector<Natural> witnesses;
    for (unsigned n = 0; n < 5; ++n) {
        const RequirementState* st = nullptr;
        for (const auto& [id, s] : run.final_states)
            if (id.is_p && id.n == n) st = &s;
        if (!st || st->picks.size() != n + 1) {
            out.fail("P" + std::to_string(n) + " has no picks");
            continue;
        }
        for (std::size_t a = 0; a < st->picks.size(); ++a)
            for (std::size_t b = a + 1; b < st->picks.size(); ++b)
                if (run.final_e.same(st->picks[a], st->picks[b])) out.fail("P" + std::to_string(n) + " picks merged");
        witnesses.push_back(st->picks.front());
    }
    for (std::size_t a = 0; a < witnesses.size(); ++a)
        for (std::size_t b = a + 1; b < witnesses.size(); ++b)
            if (run.final_e.same(witnesses[a], witnesses[b])) out.fail("witnesses of two P requirements merged");
    out.detail << witnesses.size() << " pairwise unrelated witnesses at stage " << kFlagshipStages;
}

// --- criterion 8: the ideal ----------------------------------------------------

constexpr unsigned kRingGens = 2, kRingDegree = 3;
constexpr int kCoefBound = 2;
constexpr Stage kRingStages = 200;
constexpr std::uint64_t kRandomComparisons = 100000;

RingElement element_of(const std::vector<Monomial>& basis, const oracle::Lattice::Vec& v) {
    RingElement a;
    for (std::size_t i = 0; i < basis.size(); ++i) a.add_term(basis[i], v[i]);
    return a;
}

// The box has (2*kCoefBound+1)^15 elements, so the comparison over all of it
// is done by counting. Both membership tests are additive: the oracle's is
// membership in a lattice L, the library's is the kernel K of a substitution.
// Every generator of L lies in K, so L is contained in K. Counting the box
// elements in each by dynamic programming over coset representatives then
// shows the two sets coincide exactly on the box.
void criterion_ideal(Outcome& out) {
    IdealStage st;
    st.u = {0};
    st.v = {1};
    oracle::IdealSpan span(kRingGens, kRingDegree, {0}, {1});
    const auto& basis = span.basis();
    const std::size_t dim = basis.size();

    for (const auto& [col, row] : span.lattice().rows())
        if (!ideal_member_at(element_of(basis, row), st)) out.fail("span generator outside the ideal");

    std::map<oracle::Lattice::Vec, std::uint64_t> lattice_states{{oracle::Lattice::Vec(dim), 1}};
    std::map<Natural, std::pair<RingElement, std::uint64_t>> subst_states{{0, {RingElement{}, 1}}};
    for (std::size_t i = 0; i < dim; ++i) {
        std::map<oracle::Lattice::Vec, std::uint64_t> next_lattice;
        std::map<Natural, std::pair<RingElement, std::uint64_t>> next_subst;
        const RingElement image = substitute(RingElement::monomial(basis[i]), st.u, st.v);
        for (int c = -kCoefBound; c <= kCoefBound; ++c) {
            for (const auto& [v, count] : lattice_states) {
                oracle::Lattice::Vec w = v;
                w[i] += c;
                next_lattice[span.lattice().reduce(std::move(w))] += count;
            }
            const RingElement step = mul(RingElement::constant(c), image);
            for (const auto& [code, state] : subst_states) {
                RingElement sum = add(state.first, step);
                auto& slot = next_subst[element_code(sum)];
                slot.first = sum;
                slot.second += state.second;
            }
        }
        lattice_states = std::move(next_lattice);
        subst_states = std::move(next_subst);
    }
    const std::uint64_t in_span = lattice_states[oracle::Lattice::Vec(dim)];
    const std::uint64_t in_ideal = subst_states[0].second;
    if (in_span != in_ideal) out.fail("counts differ: " + std::to_string(in_span) + " vs " + std::to_string(in_ideal));

    std::mt19937_64 rng(808);
    std::uniform_int_distribution<int> coef(-kCoefBound, kCoefBound);
    std::uint64_t disagreements = 0;
    for (std::uint64_t k = 0; k < kRandomComparisons; ++k) {
        oracle::Lattice::Vec v(dim);
        for (auto& x : v) x = coef(rng);
        // Half the samples are pushed into the ideal so both answers get exercised.
        if (k % 2 == 0) {
            RingElement a = element_of(basis, v);
            v = span.vector_of(sub(a, substitute(a, st.u, st.v)));
        }
        const RingElement a = element_of(basis, v);
        if (ideal_member_at(a, st) != span.contains(a)) ++disagreements;
    }
    if (disagreements) out.fail(std::to_string(disagreements) + " random disagreements");

    for (Stage s = 0; s <= kRingStages; ++s) {
        const IdealStage at = ideal_stage(s);
        for (int n = -10; n <= 10; ++n)
            if (n != 0 && ideal_member_at(RingElement::constant(n), at))
                out.fail("integer " + std::to_string(n) + " in the ideal at stage " + std::to_string(s));
        if (!mreduction_check(50, s).clean()) out.fail("m-reduction discrepancy at stage " + std::to_string(s));
    }
    out.detail << in_span << " of the box in the span, " << in_ideal << " in the ideal; " << kRandomComparisons
               << " random comparisons; integers and m-reduction clean for stages 0.." << kRingStages;
}

// --- criterion 9: uniform finite precompleteness ---------------------------

constexpr Stage kCommitHorizon = 100000;
constexpr Stage kDivergeHorizon = 10000;

void criterion_ufp(Outcome& out) {
    struct Scenario {
        std::vector<Natural> d;
        ProgramIndex e;
    };
    // phi_0(0) = 0, phi_3(0) = 1 and phi_6(0) = 2 (the code of x_0): each lands in D.
    const std::vector<Scenario> committing = {{{0}, 0},    {{1}, 3},    {{0, 1}, 0}, {{0, 1}, 3}, {{3}, 0},
                                              {{2}, 6},    {{1, 2}, 6}, {{0, 2}, 3}, {{1}, 6},    {{1, 2}, 3}};
    // phi_9(0) diverges.
    const std::vector<Scenario> diverging = {{{0, 1}, 9}, {{1}, 9}, {{2}, 9}};
    Stage latest = 0;
    for (const auto& sc : committing) {
        UfpRequest req{sc.d, sc.e, 0};
        EvalOutcome y = eval(sc.e, 0, kDivergeHorizon);
        if (!y.converged) {
            out.fail("scenario program diverges");
            continue;
        }
        const RingElement f = ufp_f(req), target = element_decode(y.value);
        std::optional<Stage> commit;
        for (Stage s = 1; !commit; s = std::min(2 * s, kCommitHorizon)) {
            if (ring_equal_at(f, target, s)) commit = s;
            if (s == kCommitHorizon) break;
        }
        if (!commit) out.fail("no commit for e=" + to_string(sc.e));
        else latest = std::max(latest, *commit);
    }
    for (const auto& sc : diverging) {
        UfpRequest req{sc.d, sc.e, 0};
        if (eval(sc.e, 0, kDivergeHorizon).converged) out.fail("diverging scenario converges");
        for (const auto& t : ufp_terms(req))
            if (in_u_at(t.c_index, kDivergeHorizon) || in_v_at(t.c_index, kDivergeHorizon))
                out.fail("generator " + to_string(t.c_index) + " committed");
    }
    out.detail << committing.size() << " scenarios committed by stage " << latest << "; " << diverging.size()
               << " diverging scenarios uncommitted at " << kDivergeHorizon;
}

// --- criterion 10: diagonal and separation ---------------------------------

void criterion_diagonal(Outcome& out) {
    const CeerSpec ring = ring_ceer();
    for (Stage s = 0; s <= kRingStages; ++s) {
        AuditVerdict v = audit_diagonal(samples::ring_plus_one(), ring, 100, s, kCandidateBudget);
        if (v.status != AuditVerdict::Status::Consistent) out.fail("diagonal audit at stage " + std::to_string(s));
        if (!separation_witnesses(s).ok()) out.fail("separation at stage " + std::to_string(s));
    }
    out.detail << "100 elements, stages 0.." << kRingStages;
}

// --- criterion 11: machine kernel ------------------------------------------

void criterion_machine(Outcome& out) {
    const ProgramIndex bases[] = {samples::first_projection(), samples::second_projection(), samples::add_pair(),
                                  samples::eq_pair(), samples::swap_pair()};
    for (const auto& p : bases) {
        const ProgramIndex t = samples::param_transformer(p), n = fixpoint(t);
        EvalOutcome tn = eval(t, n, 10000);
        if (!tn.converged) {
            out.fail("transformer diverges");
            continue;
        }
        for (unsigned x = 0; x < 20; ++x) {
            EvalOutcome a = eval(n, x, 10000), b = eval(tn.value, x, 10000);
            if (a.converged != b.converged || a.value != b.value) out.fail("fixpoint differs at " + std::to_string(x));
        }
    }
    const EiPair ei = ei_pair();
    const ProgramIndex c = ei.productive(ei.u_side, ei.v_side);
    if (eval(c, c, 100000).converged) out.fail("productive value converges on itself");
    if (in_w(ei.u_side, c, 100000) || in_w(ei.v_side, c, 100000)) out.fail("productive value enumerated");
    out.detail << "5 transformers on x < 20; productive value " << to_string(c) << " outside both sides at 100000";
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
        {"right-zero band realization", criterion_rzb},
        {"bandlike monoid realization", criterion_bandlike},
        {"lifted ceers: infinite classes and back-and-forth", criterion_lift},
        {"class enumeration corpus", criterion_classes},
        {"finiteness semidecision", criterion_finiteness},
        {"priority construction: audit and defeated candidates", criterion_priority},
        {"priority construction: distinct classes", criterion_priority_classes},
        {"free-ring ideal membership", criterion_ideal},
        {"uniform productive function", criterion_ufp},
        {"ring diagonal and separation", criterion_diagonal},
        {"machine fixpoints and productive value", criterion_machine},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(out);
        } catch (const std::exception& ex) {
            out.fail(std::string("exception: ") + ex.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!out.pass) ++failed;
        std::printf("%s criterion %zu (%s): %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    out.detail.str().c_str(), secs);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
