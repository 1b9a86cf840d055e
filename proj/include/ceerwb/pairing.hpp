#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ceerwb {

// Unbounded natural number. Values are kept non-negative by every operation
// in this library.
using Natural = boost::multiprecision::cpp_int;

// Cantor pairing <x,y> = (x+y)(x+y+1)/2 + x.
Natural pair(const Natural& x, const Natural& y);
std::pair<Natural, Natural> unpair(const Natural& z);
// (z)_0
Natural first(const Natural& z);

// Sum-ordered bijection omega^4 -> omega: tuples are listed by increasing
// coordinate sum, then lexicographically. Small tuples get small codes.
Natural tuple4(const std::array<Natural, 4>& a);
std::array<Natural, 4> untuple4(const Natural& q);

// Finite lists and strictly increasing finite sets of naturals.
// list: [] -> 0, h::t -> 1 + <h, code(t)>.
Natural list_code(const std::vector<Natural>& items);
std::vector<Natural> list_decode(const Natural& code);
// set: sorted elements stored as gaps (d_0, d_1-d_0-1, ...) in a list.
Natural finite_set_code(const std::vector<Natural>& sorted_distinct);
std::vector<Natural> finite_set_decode(const Natural& code);

// Binomial coefficient C(n,k) for small k.
Natural binomial(const Natural& n, unsigned k);

bool fits_u64(const Natural& n);
std::uint64_t to_u64(const Natural& n);  // throws std::overflow_error
std::string to_string(const Natural& n);
Natural parse_natural(const std::string& text);  // throws std::invalid_argument

}  // namespace ceerwb
