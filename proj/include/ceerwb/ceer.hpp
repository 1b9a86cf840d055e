#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ceerwb/machine.hpp"

namespace ceerwb {

using Stage = std::uint64_t;

// Disjoint-set partition of the naturals in which unmentioned numbers are
// singletons. The root of every block is its least element.
class PartitionSnapshot {
public:
    PartitionSnapshot() = default;
    explicit PartitionSnapshot(Stage s) : stage_(s) {}

    Stage stage() const { return stage_; }
    Natural find(const Natural& x) const;
    bool same(const Natural& x, const Natural& y) const { return find(x) == find(y); }
    void unite(const Natural& x, const Natural& y);
    // Blocks with at least two elements, each sorted, ordered by least element.
    std::vector<std::vector<Natural>> blocks() const;

private:
    Stage stage_ = 0;
    mutable std::map<Natural, Natural> parent_;
};

// A stage-monotone relation supplied from outside this module (word problems,
// the priority construction's E). related(x, y, s) must be an equivalence
// relation in (x, y) for each s and grow with s.
class StagedRelation {
public:
    virtual ~StagedRelation() = default;
    virtual std::string name() const = 0;
    virtual bool related(const Natural& x, const Natural& y, Stage s) const = 0;
};

struct CeerSpec {
    enum class Kind { Identity, FinitePartition, Enumerated, Lifted, JoinId1, WordProblem };

    Kind kind = Kind::Identity;
    std::vector<std::vector<Natural>> blocks;       // FinitePartition
    ProgramIndex program = 0;                       // Enumerated: W_e lists codes <x,y>
    std::shared_ptr<const CeerSpec> base;           // Lifted, JoinId1
    std::shared_ptr<const StagedRelation> handle;   // WordProblem

    static CeerSpec identity();
    // Blocks must be pairwise disjoint; throws std::invalid_argument otherwise.
    static CeerSpec finite_partition(std::vector<std::vector<Natural>> blocks);
    static CeerSpec enumerated(const ProgramIndex& e);
    static CeerSpec word_problem(std::shared_ptr<const StagedRelation> h);
};

// x S y iff (x)_0 R (y)_0.
CeerSpec lift_infinite(const CeerSpec& r);
// 2x ~ 2y iff x E y; all odd numbers form one class.
CeerSpec join_id1(const CeerSpec& e);

bool related_at(const CeerSpec& e, const Natural& x, const Natural& y, Stage s);
// Exact for Identity, FinitePartition and Enumerated. For the other kinds
// the blocks are computed among the numbers below `window`.
PartitionSnapshot snapshot(const CeerSpec& e, Stage s, std::uint64_t window = 64);
// True when related_at never changes with s, so an unrelated pair stays unrelated.
bool is_ground_truth(const CeerSpec& e);

// --- audits -----------------------------------------------------------------

struct NonTotalWithinBudget : std::runtime_error {
    Natural argument;
    explicit NonTotalWithinBudget(const Natural& x)
        : std::runtime_error("program did not halt within budget on input " + to_string(x)), argument(x) {}
};

struct AuditVerdict {
    enum class Status { Consistent, DefiniteViolation, Obligations };
    Status status = Status::Consistent;
    // DefiniteViolation: the violating pairs (audit_diagonal: (d(x), x)).
    // Obligations: the unresolved pairs.
    std::vector<std::pair<Natural, Natural>> witnesses;
};

const char* to_string(AuditVerdict::Status s);

// Compares R on x,y < bound with S on the images.
AuditVerdict audit_reduction(const ProgramIndex& f, const CeerSpec& r, const CeerSpec& s, std::uint64_t bound,
                             Stage stage, Budget budget);
// g(f(x)) R x for x < bound and f(g(y)) S y for y < bound with s_domain(y).
AuditVerdict audit_inverse_pair(const ProgramIndex& f, const ProgramIndex& g, const CeerSpec& r, const CeerSpec& s,
                                std::uint64_t bound, Stage stage, Budget budget,
                                const std::function<bool(const Natural&)>& s_domain = {});
AuditVerdict audit_diagonal(const ProgramIndex& d, const CeerSpec& e, std::uint64_t bound, Stage stage,
                            Budget budget);

// Least-first picks among 0..scan_limit-1, each unrelated at stage s to the
// earlier picks. May return fewer than `count`.
std::vector<Natural> greedy_transversal(const CeerSpec& e, std::size_t count, Stage s,
                                        std::uint64_t scan_limit = 100000);

// Finite one-to-one correspondence with f(a) S b for every pair (a, b).
class Correspondence {
public:
    bool has_source(const Natural& a) const { return forward_.count(a) > 0; }
    bool has_target(const Natural& b) const { return backward_.count(b) > 0; }
    const Natural& image(const Natural& a) const { return forward_.at(a); }
    const std::map<Natural, Natural>& pairs() const { return forward_; }
    std::size_t size() const { return forward_.size(); }
    void add(const Natural& a, const Natural& b);  // throws if either side is already used

private:
    std::map<Natural, Natural> forward_;
    std::map<Natural, Natural> backward_;
};

struct MyhillStep {
    Correspondence map;
    std::optional<std::string> stuck;  // set when stage-s information did not suffice
};

// One back-and-forth round: matches the least unmapped source, then the least
// unmapped target. Candidates are searched below scan_limit.
MyhillStep myhill_extend(const CeerSpec& r, const CeerSpec& s, const ProgramIndex& f, const Correspondence& map,
                         Stage stage, Budget budget, std::uint64_t scan_limit = 5000);

// --- text form --------------------------------------------------------------
// id | fp {0 1}{2 5} | enum <program> | lift(<spec>) | joinid1(<spec>) | wp:<handle>
using HandleResolver = std::function<std::shared_ptr<const StagedRelation>(const std::string&)>;
CeerSpec parse_ceer(const std::string& text, const HandleResolver& resolver = {});
std::string to_text(const CeerSpec& e);

}  // namespace ceerwb
