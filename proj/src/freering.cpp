#include "ceerwb/freering.hpp"

#include <stdexcept>

namespace ceerwb {

bool in_u_at(const Natural& i, Stage s) { return in_w(ei_pair().u_side, i, s); }

bool in_v_at(const Natural& i, Stage s) { return in_w(ei_pair().v_side, i, s); }

IdealStage ideal_stage(Stage s) {
    IdealStage st;
    st.stage = s;
    EiPair p = ei_pair();
    st.u = enumerate_w(p.u_side, s);
    st.v = enumerate_w(p.v_side, s);
    return st;
}

bool ideal_member_at(const RingElement& a, const IdealStage& st) { return substitute(a, st.u, st.v).is_zero(); }

bool ring_equal_at(const RingElement& a, const RingElement& b, Stage s) {
    RingElement diff = sub(a, b);
    if (diff.is_zero()) return true;
    std::set<Natural> zero, one;
    for (const auto& g : diff.generators()) {
        if (in_u_at(g, s)) zero.insert(g);
        else if (in_v_at(g, s)) one.insert(g);
    }
    return substitute(diff, zero, one).is_zero();
}

namespace {

class RingRelation : public StagedRelation {
public:
    std::string name() const override { return "ring"; }
    bool related(const Natural& x, const Natural& y, Stage s) const override {
        return x == y || ring_equal_at(element_decode(x), element_decode(y), s);
    }
};

}  // namespace

std::shared_ptr<const StagedRelation> ring_word_problem() { return std::make_shared<RingRelation>(); }

CeerSpec ring_ceer() { return CeerSpec::word_problem(ring_word_problem()); }

MReductionReport mreduction_check(std::uint64_t bound, Stage s) {
    MReductionReport r;
    r.stage = s;
    r.bound = bound;
    const RingElement zero, one = RingElement::constant(1);
    for (std::uint64_t i = 0; i < bound; ++i) {
        RingElement xi = RingElement::generator(i);
        bool ok = in_u_at(i, s) == ring_equal_at(xi, zero, s) && in_v_at(i, s) == ring_equal_at(xi, one, s);
        if (!ok) r.discrepancies.push_back(i);
    }
    return r;
}

Natural ring_productive(const ProgramIndex& a, const ProgramIndex& b) {
    DecodedIndex da = decode_index(a), db = decode_index(b);
    bool controlled = da.form == IndexForm::Library && db.form == IndexForm::Library && da.slot == library::UfpU &&
                      db.slot == library::UfpV && da.param == db.param;
    Natural c = controlled ? library_index(library::UfpDiag, da.param)
                           : productive(library_index(library::Pull, a), library_index(library::Pull, b));
    return element_code(RingElement::generator(c));
}

std::vector<UfpTerm> ufp_terms(const UfpRequest& req) {
    if (req.d.empty()) throw std::invalid_argument("ufp request needs a nonempty D");
    Natural dcode = finite_set_code(req.d);
    std::vector<UfpTerm> out;
    for (std::size_t pos = 0; pos < req.d.size(); ++pos) {
        Natural q = tuple4({Natural(pos), req.e, req.x, dcode});
        UfpTerm t;
        t.d = req.d[pos];
        t.u = library_index(library::UfpU, q);
        t.v = library_index(library::UfpV, q);
        t.c = ring_productive(t.u, t.v);
        t.c_index = *element_decode(t.c).generators().begin();
        out.push_back(t);
    }
    return out;
}

RingElement ufp_f(const UfpRequest& req) {
    RingElement sum;
    for (const auto& t : ufp_terms(req)) sum = add(sum, mul(element_decode(t.d), element_decode(t.c)));
    return sum;
}

RingElement ring_diagonal(const RingElement& u) { return add(u, RingElement::constant(1)); }

SeparationReport separation_witnesses(Stage s) {
    SeparationReport r;
    r.stage = s;
    std::vector<Natural> fresh;
    // U_s and V_s only contain numbers <= s, so s + 2 is always far enough.
    for (Natural i = 0; fresh.size() < 2 && i <= Natural(s) + 2; ++i)
        if (!in_u_at(i, s) && !in_v_at(i, s)) fresh.push_back(i);
    if (fresh.size() < 2) throw std::logic_error("no fresh generators below the scan bound");
    r.a = fresh[0];
    r.b = fresh[1];
    RingElement xa = RingElement::generator(r.a), xb = RingElement::generator(r.b);
    r.non_commutative = !ring_equal_at(mul(xa, xb), mul(xb, xa), s);
    r.non_boolean = !ring_equal_at(mul(xa, xa), xa, s);
    return r;
}

}  // namespace ceerwb
