#include <random>

#include "ceerwb/wordproblem.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ceerwb;

namespace {

Presentation pres(const std::string& text) { return parse_presentation(text); }
Word sw(const std::string& text) { return parse_word(text, AlgebraKind::Semigroup); }
Word mw(const std::string& text) { return parse_word(text, AlgebraKind::Monoid); }

const char* kCommuting = "semigroup\ngenerators 2\nrel x0 x1 = x1 x0\n";
const char* kFreeOne = "semigroup\ngenerators 1\n";
const char* kIdempotent = "semigroup\ngenerators 1\nrel x0 x0 = x0\n";
const char* kRectangular = "semigroup\ngenerators 2\nrel x0 x1 = x1\nrel x1 x1 = x1\nrel x0 x0 = x0\nrel x1 x0 = x0\n";

bool has_relation(const std::vector<WordRelation>& rels, const Word& l, const Word& r) {
    for (const auto& x : rels)
        if ((x.lhs == l && x.rhs == r) || (x.lhs == r && x.rhs == l)) return true;
    return false;
}

}  // namespace

TEST_CASE("rzb presentation relations") {
    auto rels = rzb_presentation(CeerSpec::identity()).relations_at(2);
    CHECK(has_relation(rels, {0, 0}, {0}));
    CHECK(has_relation(rels, {1, 0}, {0}));
    CHECK(has_relation(rels, {0, 1}, {1}));
    for (const auto& r : rels) CHECK_FALSE((r.lhs.size() == 1 && r.rhs.size() == 1));
    auto r35 = rzb_presentation(CeerSpec::finite_partition({{3, 5}})).relations_at(6);
    CHECK(has_relation(r35, {3}, {5}));
    for (Stage s : {7, 8, 20}) CHECK(rzb_equal(CeerSpec::identity(), {2, 7}, {7}, s));
    // the stage relations grow
    auto p = rzb_presentation(CeerSpec::finite_partition({{3, 5}}));
    for (Stage s = 0; s < 8; ++s)
        for (const auto& r : p.relations_at(s)) CHECK(has_relation(p.relations_at(s + 1), r.lhs, r.rhs));
}

TEST_CASE("rzb_equal examples") {
    CHECK(rzb_equal(CeerSpec::identity(), sw("x1 x2"), sw("x0 x2"), 0));
    CHECK(rzb_equal(CeerSpec::finite_partition({{3, 5}}), sw("x9 x3"), sw("x5"), 10));
    CHECK_FALSE(rzb_equal(CeerSpec::identity(), sw("x1"), sw("x2"), 10));
}

TEST_CASE("bandlike_equal examples") {
    CHECK(bandlike_equal(CeerSpec::identity(), mw("x0 x0"), mw("1"), 3));
    CHECK(bandlike_equal(CeerSpec::identity(), mw("x3 x0"), mw("x3"), 3));
    CHECK(bandlike_equal(CeerSpec::finite_partition({{0, 4}}), mw("x4"), mw("1"), 4));
    CHECK_FALSE(bandlike_equal(CeerSpec::identity(), mw("x4"), mw("1"), 4));
    CHECK_FALSE(bandlike_equal(CeerSpec::identity(), mw("x1 x2"), mw("x2 x1"), 4));
}

TEST_CASE("normal forms agree with brute-force closure of the stage relations") {
    std::mt19937_64 rng(31);
    const Stage s = 9;
    for (int trial = 0; trial < 4; ++trial) {
        CeerSpec r = CeerSpec::finite_partition(oracle::random_partition(rng, 10));
        oracle::BoundedClosure sg(10, 3, rzb_presentation(r).relations_at(s), false);
        oracle::BoundedClosure mon(10, 3, bandlike_monoid_presentation(r).relations_at(s), true);
        auto sg_words = oracle::all_words(4, 1, 3), mon_words = oracle::all_words(4, 0, 3);
        for (const auto& u : sg_words)
            for (const auto& v : sg_words) CHECK(rzb_equal(r, u, v, s) == sg.equal(u, v));
        for (const auto& u : mon_words)
            for (const auto& v : mon_words) CHECK(bandlike_equal(r, u, v, s) == mon.equal(u, v));
    }
}

TEST_CASE("a nontrivial class of 0 collapses the bandlike monoid") {
    CeerSpec r = CeerSpec::finite_partition({{0, 7}});
    const Stage s = 9;
    oracle::BoundedClosure mon(10, 3, bandlike_monoid_presentation(r).relations_at(s), true);
    CHECK(mon.equal({3}, {}));
    CHECK(bandlike_equal(r, {3}, {}, s));
    // The normal form describes R_s over all generators, so it collapses as
    // soon as 0 R_s 7, even while x_7 is outside the stage-6 relation list.
    CHECK(bandlike_equal(r, {3}, {}, 6));
    oracle::BoundedClosure early(10, 3, bandlike_monoid_presentation(r).relations_at(6), true);
    CHECK_FALSE(early.equal({3}, {}));
    CHECK_FALSE(bandlike_equal(CeerSpec::finite_partition({{1, 7}}), {3}, {}, 9));
}

TEST_CASE("word problems as ceers") {
    CeerSpec r = CeerSpec::finite_partition({{3, 5}});
    auto h = rzb_word_problem(r);
    Natural a = word_code({9, 3}, AlgebraKind::Semigroup), b = word_code({5}, AlgebraKind::Semigroup);
    CHECK(h->related(a, b, 10));
    CHECK_FALSE(h->related(a, word_code({4}, AlgebraKind::Semigroup), 10));
    for (unsigned c = 0; c < 500; ++c) {
        CHECK(word_code(word_from_code(c, AlgebraKind::Semigroup), AlgebraKind::Semigroup) == c);
        CHECK(word_code(word_from_code(c, AlgebraKind::Monoid), AlgebraKind::Monoid) == c);
        CHECK_FALSE(word_from_code(c, AlgebraKind::Semigroup).empty());
    }
    CHECK(word_from_code(0, AlgebraKind::Monoid).empty());
    auto m = bandlike_word_problem(CeerSpec::identity());
    CHECK(m->related(word_code({3, 0}, AlgebraKind::Monoid), word_code({3}, AlgebraKind::Monoid), 5));
}

TEST_CASE("class_enumerate examples") {
    ClassEnumResult ab = class_enumerate(pres(kCommuting), sw("x0 x1"), 10000);
    CHECK(ab.finite);
    CHECK(ab.words == WordSet{sw("x0 x1"), sw("x1 x0")});
    ClassEnumResult free = class_enumerate(pres(kFreeOne), sw("x0"), 10000);
    CHECK(free.finite);
    CHECK(free.words == WordSet{sw("x0")});
    ClassEnumResult idem = class_enumerate(pres(kIdempotent), sw("x0"), 1000);
    CHECK_FALSE(idem.finite);
    CHECK(idem.visited == 1000);
    CHECK(idem.reached == 1001);
    CHECK(idem.words.empty());
}

TEST_CASE("finite classes are closed and equal the brute-force closure") {
    Presentation p = pres(kCommuting);
    oracle::BoundedClosure bf(2, 5, p.relations, false);
    for (const auto& w : oracle::all_words(2, 1, 4)) {
        ClassEnumResult r = class_enumerate(p, w, 10000);
        REQUIRE(r.finite);
        CHECK(r.words.count(w) == 1);
        for (const auto& x : r.words) CHECK(bf.equal(x, w));
        std::size_t expected = 0;
        for (const auto& x : bf.words())
            if (!x.empty() && bf.equal(x, w)) ++expected;
        CHECK(r.words.size() == expected);
    }
}

TEST_CASE("class search matches a plain breadth-first search") {
    // Short relations over two letters, many of them runs of one letter, so
    // that neighbouring matches often produce the same word.
    std::mt19937_64 rng(77);
    auto random_word = [&](std::size_t max_len, bool allow_empty) {
        std::size_t len = rng() % (max_len + 1);
        if (!allow_empty && len == 0) len = 1;
        Word w(len, rng() % 2);
        if (rng() % 2)
            for (auto& x : w) x = rng() % 2;
        return w;
    };
    for (int trial = 0; trial < 60; ++trial) {
        const bool monoid = trial % 2 == 1;
        Presentation p;
        p.kind = monoid ? AlgebraKind::Monoid : AlgebraKind::Semigroup;
        p.generators = 2;
        for (std::size_t k = 1 + rng() % 2; k > 0; --k) p.relations.push_back({random_word(3, monoid), random_word(3, false)});
        for (int start = 0; start < 4; ++start) {
            const Word w = random_word(4, monoid);
            const std::uint64_t budget = 120;
            ClassEnumResult got = class_enumerate(p, w, budget);
            std::vector<Word> naive = oracle::naive_class(p.relations, w, budget);
            CHECK(got.reached == naive.size());
            if (got.finite) CHECK(got.words == WordSet(naive.begin(), naive.end()));
        }
    }
}

TEST_CASE("fp_equal examples") {
    CHECK(fp_equal(pres(kCommuting), sw("x0 x1"), sw("x1 x0"), 100) == SemiDecision::Related);
    CHECK(fp_equal(pres(kFreeOne), sw("x0"), sw("x0 x0"), 10000) == SemiDecision::Unresolved);
    CHECK(fp_equal(pres(kIdempotent), sw("x0 x0 x0"), sw("x0"), 100) == SemiDecision::Related);
}

TEST_CASE("star_check and finiteness") {
    CHECK(star_check(pres(kIdempotent), 2, 100));
    CHECK_FALSE(star_check(pres(kFreeOne), 2, 1000));
    CHECK(star_check(pres(kRectangular), 2, 100));
    FinitenessResult idem = finiteness_semidecide(pres(kIdempotent), 100000);
    CHECK(idem.finite);
    CHECK(idem.bound == 2);
    CHECK(finiteness_semidecide(pres(kRectangular), 100000).bound == 2);
    CHECK_FALSE(finiteness_semidecide(pres(kFreeOne), 10000).finite);
    CHECK_THROWS_AS(star_check(pres("semigroup\ngenerators omega\n"), 2, 10), std::invalid_argument);
}

TEST_CASE("decide_with_infinite_reps") {
    CHECK(decide_with_infinite_reps(pres(kIdempotent), {sw("x0")}, sw("x0 x0"), sw("x0 x0 x0"), 1000) ==
          Decision::Equal);
    Presentation two = pres("semigroup\ngenerators 2\nrel x0 x0 = x0\nrel x1 x1 = x1\n");
    CHECK(decide_with_infinite_reps(two, {sw("x0"), sw("x1")}, sw("x0"), sw("x1"), 1000) == Decision::NotEqual);
    CHECK(decide_with_infinite_reps(pres(kCommuting), {}, sw("x0 x1"), sw("x1 x0"), 1000) == Decision::Equal);
    CHECK(decide_with_infinite_reps(pres(kCommuting), {}, sw("x0 x1"), sw("x1 x1"), 1000) == Decision::NotEqual);
    // agreement with fp_equal wherever it resolves
    for (const auto& u : oracle::all_words(2, 1, 3))
        for (const auto& v : oracle::all_words(2, 1, 3))
            if (fp_equal(pres(kCommuting), u, v, 1000) == SemiDecision::Related)
                CHECK(decide_with_infinite_reps(pres(kCommuting), {}, u, v, 1000) == Decision::Equal);
}

TEST_CASE("light_transversal") {
    Presentation p = pres(kCommuting);
    auto t = light_transversal(p, 6, 1000);
    REQUIRE(t.size() == 6);
    for (std::size_t a = 0; a < t.size(); ++a) {
        CHECK(class_enumerate(p, t[a], 10000).finite);
        for (std::size_t b = a + 1; b < t.size(); ++b)
            CHECK(fp_equal(p, t[a], t[b], 10000) == SemiDecision::Unresolved);
    }
    CHECK(light_transversal(pres(kIdempotent), 3, 100).empty());
    CHECK(light_transversal(pres(kFreeOne), 3, 100) == std::vector<Word>{sw("x0"), sw("x0 x0"), sw("x0 x0 x0")});
}

TEST_CASE("power_repeat_search") {
    RepeatResult r = power_repeat_search(pres(kIdempotent), sw("x0"), 5, 1000);
    CHECK(r.found);
    CHECK(r.n == 1);
    CHECK(r.m == 2);
    CHECK_FALSE(power_repeat_search(pres(kFreeOne), sw("x0"), 5, 1000).found);
    RepeatResult cube = power_repeat_search(pres("semigroup\ngenerators 1\nrel x0 x0 x0 = x0\n"), sw("x0"), 5, 1000);
    CHECK(cube.found);
    CHECK(cube.n == 1);
    CHECK(cube.m == 3);
}

TEST_CASE("finitely generated family") {
    CHECK(fg_family(2, 0, 50).relations_at(50).empty());
    for (unsigned c = 0; c < 300; ++c) CHECK(fg_word_code(fg_word_decode(c, 3), 3) == c);
    // <code aa, code a> = <1, 0> = 2 over one letter
    ProgramIndex e = register_index(assemble("SET 2 2; EQ 1 2 0"));
    Presentation p = fg_family(0, e, 10);
    REQUIRE(p.relations_at(10).size() == 1);
    CHECK(p.relations_at(10).front().lhs == sw("x0 x0"));
    CHECK(p.relations_at(10).front().rhs == sw("x0"));
    Presentation staged = fg_family_staged(0, e);
    CHECK(staged.relations_at(1).empty());
    for (Stage s = 0; s < 10; ++s) CHECK(staged.relations_at(s).size() <= staged.relations_at(s + 1).size());
}

TEST_CASE("text forms") {
    CHECK(word_text(sw("x3 x0 x3")) == "x3 x0 x3");
    CHECK(word_text({}) == "1");
    CHECK(mw("1").empty());
    CHECK_THROWS_AS(sw("1"), std::invalid_argument);
    CHECK_THROWS_AS(sw("y3"), std::invalid_argument);
    Presentation p = pres(kRectangular);
    CHECK(presentation_text(pres(presentation_text(p))) == presentation_text(p));
    CHECK_THROWS_AS(pres("group\n"), std::invalid_argument);
    CHECK_THROWS_AS(pres("semigroup\ngenerators 1\nrel x0 = x1\n"), std::invalid_argument);
    Presentation staged = pres("semigroup\ngenerators 1\nrel-program SET 2 2; EQ 1 2 0\n");
    CHECK(staged.is_staged());
    CHECK(staged.relations_at(10).size() == 1);
}
