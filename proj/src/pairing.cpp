#include "ceerwb/pairing.hpp"

#include <stdexcept>

namespace ceerwb {

Natural pair(const Natural& x, const Natural& y) {
    Natural s = x + y;
    return s * (s + 1) / 2 + x;
}

std::pair<Natural, Natural> unpair(const Natural& z) {
    // w = floor((sqrt(8z+1)-1)/2) is the diagonal holding z.
    Natural w = (boost::multiprecision::sqrt(Natural(8 * z + 1)) - 1) / 2;
    Natural t = w * (w + 1) / 2;
    Natural x = z - t;
    return {x, w - x};
}

Natural first(const Natural& z) { return unpair(z).first; }

Natural binomial(const Natural& n, unsigned k) {
    if (n < k) return 0;
    Natural r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

namespace {

// Largest v in [0, hi] with f(v) <= target, for f non-decreasing and f(0) <= target.
template <class F>
Natural last_at_most(const Natural& target, Natural hi, F f) {
    Natural lo = 0;
    while (f(hi) <= target) hi = hi * 2 + 1;
    while (lo < hi) {
        Natural mid = (lo + hi + 1) / 2;
        if (f(mid) <= target) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

}  // namespace

// rank(a,b,c,d) with S = a+b+c+d and T = S-a:
//   C(S+3,4) + [C(S+3,3) - C(S-a+3,3)] + [C(T+2,2) - C(T-b+2,2)] + c
Natural tuple4(const std::array<Natural, 4>& a) {
    Natural s = a[0] + a[1] + a[2] + a[3];
    Natural t = s - a[0];
    Natural r = binomial(s + 3, 4);
    r += binomial(s + 3, 3) - binomial(s - a[0] + 3, 3);
    r += binomial(t + 2, 2) - binomial(t - a[1] + 2, 2);
    r += a[2];
    return r;
}

std::array<Natural, 4> untuple4(const Natural& q) {
    Natural s = last_at_most(q, 1, [](const Natural& v) -> Natural { return binomial(v + 3, 4); });
    Natural r = q - binomial(s + 3, 4);
    Natural top3 = binomial(s + 3, 3);
    Natural a = last_at_most(r, 1, [&](const Natural& v) -> Natural {
        if (v > s) return top3 + 1 + v;  // past the end: larger than any rank
        return top3 - binomial(s - v + 3, 3);
    });
    r -= top3 - binomial(s - a + 3, 3);
    Natural t = s - a;
    Natural top2 = binomial(t + 2, 2);
    Natural b = last_at_most(r, 1, [&](const Natural& v) -> Natural {
        if (v > t) return top2 + 1 + v;
        return top2 - binomial(t - v + 2, 2);
    });
    r -= top2 - binomial(t - b + 2, 2);
    Natural c = r;
    Natural d = t - b - c;
    return {a, b, c, d};
}

Natural list_code(const std::vector<Natural>& items) {
    Natural code = 0;
    for (auto it = items.rbegin(); it != items.rend(); ++it) code = 1 + pair(*it, code);
    return code;
}

std::vector<Natural> list_decode(const Natural& code) {
    std::vector<Natural> out;
    Natural c = code;
    while (c != 0) {
        auto [h, rest] = unpair(c - 1);
        out.push_back(h);
        c = rest;
    }
    return out;
}

Natural finite_set_code(const std::vector<Natural>& sorted_distinct) {
    std::vector<Natural> gaps;
    Natural base = 0;
    for (const auto& d : sorted_distinct) {
        if (d < base) throw std::invalid_argument("finite_set_code: elements must be strictly increasing");
        gaps.push_back(d - base);
        base = d + 1;
    }
    return list_code(gaps);
}

std::vector<Natural> finite_set_decode(const Natural& code) {
    std::vector<Natural> out;
    Natural base = 0;
    for (const auto& g : list_decode(code)) {
        out.push_back(base + g);
        base = out.back() + 1;
    }
    return out;
}

bool fits_u64(const Natural& n) {
    return n >= 0 && n <= Natural(std::numeric_limits<std::uint64_t>::max());
}

std::uint64_t to_u64(const Natural& n) {
    if (!fits_u64(n)) throw std::overflow_error("natural number does not fit in 64 bits");
    return n.convert_to<std::uint64_t>();
}

std::string to_string(const Natural& n) { return n.str(); }

Natural parse_natural(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    for (char ch : text)
        if (ch < '0' || ch > '9') throw std::invalid_argument("not a natural number: " + text);
    return Natural(text);
}

}  // namespace ceerwb
