#pragma once

#include <memory>
#include <set>
#include <vector>

#include "ceerwb/ceer.hpp"
#include "ceerwb/ring.hpp"

namespace ceerwb {

// Generators killed at a stage: x_i -> 0 for i in u, x_j -> 1 for j in v.
struct IdealStage {
    Stage stage = 0;
    std::set<Natural> u, v;
};

// U_s and V_s of the machine's effectively inseparable pair.
IdealStage ideal_stage(Stage s);
bool in_u_at(const Natural& i, Stage s);
bool in_v_at(const Natural& i, Stage s);

// a lies in the two-sided ideal generated by {x_i : i in U_s} and {1 - x_j : j in V_s}.
bool ideal_member_at(const RingElement& a, const IdealStage& st);
// a =_{K_s} b; only the generators occurring in a - b are looked up.
bool ring_equal_at(const RingElement& a, const RingElement& b, Stage s);

// The word problem on element codes, as a ceer.
std::shared_ptr<const StagedRelation> ring_word_problem();
CeerSpec ring_ceer();

struct MReductionReport {
    Stage stage = 0;
    std::uint64_t bound = 0;
    std::vector<Natural> discrepancies;  // indices i where membership and equality disagree
    bool clean() const { return discrepancies.empty(); }
};
// i in U_s <=> x_i =_{K_s} 0 and i in V_s <=> x_i =_{K_s} 1, for i < bound.
MReductionReport mreduction_check(std::uint64_t bound, Stage s);

// Productive function for ([0]_K, [1]_K) on indices of sets of element codes;
// the result is an element code. For the controlled pair
// (library UFP_U[q], library UFP_V[q]) it is x_{UFP_DIAG[q]}; for any other pair
// it is x_c with c the machine pair's productive index for the pulled-back sets.
Natural ring_productive(const ProgramIndex& a, const ProgramIndex& b);

struct UfpRequest {
    std::vector<Natural> d;  // element codes, strictly increasing, nonempty
    ProgramIndex e = 0;
    Natural x = 0;
};

struct UfpTerm {
    Natural d;           // element code
    ProgramIndex u, v;   // controlled enumerators
    Natural c;           // code of the productive value, x_{c_index}
    Natural c_index;     // its generator index
};

std::vector<UfpTerm> ufp_terms(const UfpRequest& req);
// Sum over D of d * c_d.
RingElement ufp_f(const UfpRequest& req);

// u + 1; never K_s-equal to u.
RingElement ring_diagonal(const RingElement& u);

struct SeparationReport {
    Stage stage = 0;
    Natural a, b;  // the two least indices in neither U_s nor V_s
    bool non_commutative = false;  // x_a x_b != x_b x_a
    bool non_boolean = false;      // x_a x_a != x_a
    bool ok() const { return non_commutative && non_boolean; }
};
SeparationReport separation_witnesses(Stage s);

}  // namespace ceerwb
