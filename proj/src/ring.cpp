#include "ceerwb/ring.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace ceerwb {

bool DegLex::operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

RingElement RingElement::constant(const Integer& n) { return monomial({}, n); }

RingElement RingElement::generator(const Natural& i) { return monomial({i}, 1); }

RingElement RingElement::monomial(const Monomial& m, const Integer& coef) {
    RingElement r;
    r.add_term(m, coef);
    return r;
}

void RingElement::add_term(const Monomial& m, const Integer& coef) {
    if (coef == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, coef);
        return;
    }
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
}

std::set<Natural> RingElement::generators() const {
    std::set<Natural> out;
    for (const auto& [m, c] : terms_) out.insert(m.begin(), m.end());
    return out;
}

RingElement add(const RingElement& a, const RingElement& b) {
    RingElement r = a;
    for (const auto& [m, c] : b.terms()) r.add_term(m, c);
    return r;
}

RingElement neg(const RingElement& a) {
    RingElement r;
    for (const auto& [m, c] : a.terms()) r.add_term(m, -c);
    return r;
}

RingElement sub(const RingElement& a, const RingElement& b) { return add(a, neg(b)); }

RingElement mul(const RingElement& a, const RingElement& b) {
    RingElement r;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

RingElement substitute(const RingElement& a,
                       const std::function<bool(const Natural&)>& in_zero,
                       const std::function<bool(const Natural&)>& in_one) {
    RingElement r;
    for (const auto& [m, c] : a.terms()) {
        Monomial kept;
        bool vanished = false;
        for (const auto& g : m) {
            if (in_zero(g)) {
                vanished = true;
                break;
            }
            if (!in_one(g)) kept.push_back(g);
        }
        if (!vanished) r.add_term(kept, c);
    }
    return r;
}

RingElement substitute(const RingElement& a, const std::set<Natural>& zero_set,
                       const std::set<Natural>& one_set) {
    return substitute(
        a, [&](const Natural& g) { return zero_set.count(g) > 0; },
        [&](const Natural& g) { return one_set.count(g) > 0; });
}

namespace {

// Nonzero integers <-> naturals: k>0 -> 2(k-1), k<0 -> 2(-k)-1.
Natural coef_code(const Integer& k) { return k > 0 ? Natural(2 * (k - 1)) : Natural(-2 * k - 1); }

Integer coef_decode(const Natural& n) {
    if (n % 2 == 0) return Integer(n / 2 + 1);
    return -Integer((n + 1) / 2);
}

}  // namespace

Natural monomial_code(const Monomial& m) { return list_code(m); }

Monomial monomial_decode(const Natural& code) { return list_decode(code); }

// Terms are sorted by monomial code; each contributes <coef code, gap> where
// gap is the distance above the previous monomial code plus one.
Natural element_code(const RingElement& a) {
    std::map<Natural, Integer> by_code;
    for (const auto& [m, c] : a.terms()) by_code.emplace(monomial_code(m), c);
    std::vector<Natural> items;
    Natural base = 0;
    for (const auto& [mc, c] : by_code) {
        items.push_back(pair(coef_code(c), mc - base));
        base = mc + 1;
    }
    return list_code(items);
}

RingElement element_decode(const Natural& code) {
    RingElement r;
    Natural base = 0;
    for (const auto& h : list_decode(code)) {
        auto [cc, gap] = unpair(h);
        Natural mc = base + gap;
        r.add_term(monomial_decode(mc), coef_decode(cc));
        base = mc + 1;
    }
    return r;
}

std::string to_text(const RingElement& a) {
    if (a.is_zero()) return "0";
    std::ostringstream out;
    bool firstTerm = true;
    for (const auto& [m, c] : a.terms()) {
        if (!firstTerm) out << " + ";
        firstTerm = false;
        out << c << "*";
        if (m.empty()) {
            out << "1";
            continue;
        }
        for (std::size_t i = 0; i < m.size(); ++i) out << (i ? "." : "") << "x" << m[i];
    }
    return out.str();
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Integer parse_integer(const std::string& text) {
    std::string t = trim(text);
    bool negative = false;
    std::size_t i = 0;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
        negative = t[0] == '-';
        i = 1;
    }
    Integer v = parse_natural(t.substr(i));
    return negative ? Integer(-v) : v;
}

Monomial parse_monomial(const std::string& text) {
    std::string t = trim(text);
    if (t == "1") return {};
    Monomial m;
    std::stringstream ss(t);
    std::string factor;
    while (std::getline(ss, factor, '.')) {
        factor = trim(factor);
        if (factor.size() < 2 || factor[0] != 'x') throw std::invalid_argument("bad generator: " + factor);
        m.push_back(parse_natural(factor.substr(1)));
    }
    if (m.empty()) throw std::invalid_argument("empty monomial");
    return m;
}

}  // namespace

RingElement parse_element(const std::string& text) {
    RingElement r;
    std::string t = trim(text);
    if (t.empty()) throw std::invalid_argument("empty ring element");
    std::size_t pos = 0;
    while (pos <= t.size()) {
        std::size_t next = t.find('+', pos);
        std::string term = trim(t.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        if (term.empty()) throw std::invalid_argument("empty term in: " + text);
        std::size_t star = term.find('*');
        if (star != std::string::npos) {
            r.add_term(parse_monomial(term.substr(star + 1)), parse_integer(term.substr(0, star)));
        } else if (term[0] == 'x' || term == "1") {
            r.add_term(parse_monomial(term), 1);
        } else if (term[0] == '-' && term.size() > 1 && term[1] == 'x') {
            r.add_term(parse_monomial(term.substr(1)), -1);
        } else {
            r.add_term({}, parse_integer(term));
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return r;
}

}  // namespace ceerwb
