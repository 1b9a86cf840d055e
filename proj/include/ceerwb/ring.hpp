#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ceerwb/pairing.hpp"

namespace ceerwb {

using Integer = boost::multiprecision::cpp_int;

// A word over generators x_0, x_1, ...; the empty word is the unit 1.
using Monomial = std::vector<Natural>;

// Degree-lexicographic order: shorter words first, then letter by letter.
struct DegLex {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Element of the free ring Z<X>: finitely many monomials with nonzero integer
// coefficients. Zero coefficients are never stored, so two elements are equal
// exactly when their term maps are equal.
class RingElement {
public:
    RingElement() = default;
    static RingElement constant(const Integer& n);
    static RingElement generator(const Natural& i);
    static RingElement monomial(const Monomial& m, const Integer& coef = 1);

    const std::map<Monomial, Integer, DegLex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Adds coef*m, dropping the term if it cancels.
    void add_term(const Monomial& m, const Integer& coef);
    std::set<Natural> generators() const;

    bool operator==(const RingElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const RingElement& o) const { return !(*this == o); }

private:
    std::map<Monomial, Integer, DegLex> terms_;
};

RingElement add(const RingElement& a, const RingElement& b);
RingElement neg(const RingElement& a);
RingElement sub(const RingElement& a, const RingElement& b);
RingElement mul(const RingElement& a, const RingElement& b);

// Ring homomorphism fixing Z with x_i -> 0 when in_zero(i), x_j -> 1 when
// in_one(j), and every other generator fixed. Callers keep the predicates disjoint.
RingElement substitute(const RingElement& a,
                       const std::function<bool(const Natural&)>& in_zero,
                       const std::function<bool(const Natural&)>& in_one);
RingElement substitute(const RingElement& a, const std::set<Natural>& zero_set,
                       const std::set<Natural>& one_set);

// Bijective coding of ring elements by naturals. Code 0 is the zero element,
// code 1 is the unit, code 3 is x_0.
Natural monomial_code(const Monomial& m);
Monomial monomial_decode(const Natural& code);
Natural element_code(const RingElement& a);
RingElement element_decode(const Natural& code);

// Text form "3*x0.x1 + -1*1 + 2*x2"; "0" is the zero element.
std::string to_text(const RingElement& a);
RingElement parse_element(const std::string& text);  // throws std::invalid_argument

}  // namespace ceerwb
