#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ceerwb/ceer.hpp"

namespace ceerwb {

using Letter = std::uint64_t;
// Generator indices; the empty word is the monoid identity.
using Word = std::vector<Letter>;

// Length-lexicographic order, used wherever "the first word" is meant.
struct LengthLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

using WordSet = std::set<Word, LengthLex>;

enum class AlgebraKind { Semigroup, Monoid };

struct WordRelation {
    Word lhs, rhs;
    bool operator==(const WordRelation& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

struct Presentation {
    AlgebraKind kind = AlgebraKind::Semigroup;
    std::optional<std::uint64_t> generators;  // nullopt: x_0, x_1, ... (all naturals)
    std::vector<WordRelation> relations;      // used when not staged
    // Stage-indexed relation lists, monotone in the stage.
    std::function<std::vector<WordRelation>(Stage)> staged;
    // Set when the staged relations come from an enumerator (text form "rel-program").
    std::optional<ProgramIndex> relation_program;

    bool is_staged() const { return static_cast<bool>(staged); }
    std::vector<WordRelation> relations_at(Stage s) const;
    // Finite presentation with the relations present at stage s.
    Presentation frozen(Stage s) const;
};

// --- realizations of a ceer -------------------------------------------------

// Relations at stage s: x_i = x_j for i != j <= s related at s, and x_j x_i = x_i for i, j <= s.
Presentation rzb_presentation(const CeerSpec& r);
// The word problem of the presentation built from R at stage s over all
// generators: u = v iff their last letters are related.
bool rzb_equal(const CeerSpec& r, const Word& u, const Word& v, Stage s);

// Relations at stage s: x_0 = 1, x_i = x_j for i != j <= s related at s, and
// x_j x_i = x_i for 0 < i <= s, j <= s.
Presentation bandlike_monoid_presentation(const CeerSpec& r);
// Word problem of the presentation built from R at stage s over all generators.
// If 0 is related to some i != 0 then x_j = x_j x_i = x_i = 1 for every j and
// all words are equal. Otherwise delete every x_0; an empty result is the
// identity, and nonempty results compare by related last letters.
bool bandlike_equal(const CeerSpec& r, const Word& u, const Word& v, Stage s);

// Word problems as ceers on codes: semigroup words are coded by
// list_decode(c + 1), monoid words by list_decode(c).
std::shared_ptr<const StagedRelation> rzb_word_problem(const CeerSpec& r);
std::shared_ptr<const StagedRelation> bandlike_word_problem(const CeerSpec& r);
Word word_from_code(const Natural& c, AlgebraKind kind);
Natural word_code(const Word& w, AlgebraKind kind);

// --- finite presentations ---------------------------------------------------
// Staged presentations are read at `stage`; finite ones ignore it.

struct ClassEnumResult {
    bool finite = false;        // Finite(words) when true, otherwise Exhausted
    WordSet words;              // exactly the class; empty when Exhausted
    std::uint64_t visited = 0;  // words expanded
    std::uint64_t reached = 0;  // distinct words seen
};

// Breadth-first closure under single relation applications in both
// directions at every position, with a global visited set. Words are told
// apart by a 128-bit rolling hash, so expanding a word is linear in its length.
ClassEnumResult class_enumerate(const Presentation& p, const Word& w, std::uint64_t node_budget, Stage stage = 0);

enum class SemiDecision { Related, Unresolved };
// Grows both closures in lockstep; Related once they share a word.
SemiDecision fp_equal(const Presentation& p, const Word& u, const Word& v, std::uint64_t budget, Stage stage = 0);

// Every word of length m has an equal shorter word, found with at most
// `budget` nodes per word. Needs a finite generator set.
bool star_check(const Presentation& p, std::uint64_t m, std::uint64_t budget, Stage stage = 0);

struct FinitenessResult {
    bool finite = false;      // FiniteWithBound(bound) when true
    std::uint64_t bound = 0;  // every class has a representative shorter than bound
};
// Phases k = 1, 2, ...: star_check for m = 1..k with per-word budget 2^k,
// until `budget` nodes have been spent in total.
FinitenessResult finiteness_semidecide(const Presentation& p, std::uint64_t budget, Stage stage = 0);

enum class Decision { Equal, NotEqual, BudgetExceeded };
// `reps` must contain exactly one word from each infinite class (trusted).
Decision decide_with_infinite_reps(const Presentation& p, const std::vector<Word>& reps, const Word& u, const Word& v,
                                   std::uint64_t budget, Stage stage = 0);

// Least words of pairwise distinct finite classes, scanning words in
// length-lex order with `budget` nodes per word and budget*(count+1) in total.
std::vector<Word> light_transversal(const Presentation& p, std::size_t count, std::uint64_t budget, Stage stage = 0);

struct RepeatResult {
    bool found = false;
    std::uint64_t n = 0, m = 0;  // a^n = a^m with 1 <= n < m
};
// Tries m = 2..max_exp in order, and n = 1..m-1 for each m.
RepeatResult power_repeat_search(const Presentation& p, const Word& a, std::uint64_t max_exp, std::uint64_t budget,
                                 Stage stage = 0);

// Finitely generated family: generators x_0..x_n, relations decoded from
// W_{i,s} as <code u, code v> with words in bijective base n+1.
Presentation fg_family(std::uint64_t n, const ProgramIndex& i, Stage s);
Presentation fg_family_staged(std::uint64_t n, const ProgramIndex& i);
// Nonempty words over k letters <-> naturals: bijective base-k numeral of c+1.
Word fg_word_decode(const Natural& c, std::uint64_t k);
Natural fg_word_code(const Word& w, std::uint64_t k);

// --- text -------------------------------------------------------------------
// "x3 x0 x3"; the monoid identity is "1".
Word parse_word(const std::string& text, AlgebraKind kind);
std::string word_text(const Word& w);
// header "semigroup|monoid", "generators <n>|omega", "rel <w> = <w>", "rel-program <program>".
Presentation parse_presentation(const std::string& text);
// Staged presentations without a relation program are written at `stage`.
std::string presentation_text(const Presentation& p, Stage stage = 0);

}  // namespace ceerwb
