#include "ceerwb/wordproblem.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>
#include <sstream>
#include <stdexcept>

namespace ceerwb {

std::vector<WordRelation> Presentation::relations_at(Stage s) const {
    return is_staged() ? staged(s) : relations;
}

Presentation Presentation::frozen(Stage s) const {
    Presentation p;
    p.kind = kind;
    p.generators = generators;
    p.relations = relations_at(s);
    return p;
}

// --- realizations -----------------------------------------------------------

namespace {

// Relations x_i = x_j for related i < j <= s.
void add_generator_identifications(const CeerSpec& r, Stage s, std::vector<WordRelation>& out) {
    for (Stage i = 0; i <= s; ++i)
        for (Stage j = i + 1; j <= s; ++j)
            if (related_at(r, i, j, s)) out.push_back({{i}, {j}});
}

// Numbers related to 0 among those the relation kind lets us inspect. Exact
// for every kind except word-problem handles, which are scanned below 1024.
bool zero_class_nontrivial(const CeerSpec& r, Stage s) {
    switch (r.kind) {
        case CeerSpec::Kind::Identity:
            return false;
        case CeerSpec::Kind::FinitePartition:
        case CeerSpec::Kind::Enumerated:
            for (const auto& b : snapshot(r, s).blocks())
                if (b.front() == 0) return true;
            return false;
        case CeerSpec::Kind::Lifted:
            return true;  // <0,1> = 1 shares the first coordinate 0
        case CeerSpec::Kind::JoinId1:
            return zero_class_nontrivial(*r.base, s);
        case CeerSpec::Kind::WordProblem:
            for (std::uint64_t i = 1; i < 1024; ++i)
                if (related_at(r, 0, i, s)) return true;
            return false;
    }
    return false;
}

}  // namespace

Presentation rzb_presentation(const CeerSpec& r) {
    Presentation p;
    p.kind = AlgebraKind::Semigroup;
    p.staged = [r](Stage s) {
        std::vector<WordRelation> out;
        add_generator_identifications(r, s, out);
        for (Stage j = 0; j <= s; ++j)
            for (Stage i = 0; i <= s; ++i) out.push_back({{j, i}, {i}});
        return out;
    };
    return p;
}

bool rzb_equal(const CeerSpec& r, const Word& u, const Word& v, Stage s) {
    if (u.empty() || v.empty()) throw std::invalid_argument("semigroup words are nonempty");
    return related_at(r, u.back(), v.back(), s);
}

Presentation bandlike_monoid_presentation(const CeerSpec& r) {
    Presentation p;
    p.kind = AlgebraKind::Monoid;
    p.staged = [r](Stage s) {
        std::vector<WordRelation> out;
        out.push_back({{0}, {}});
        add_generator_identifications(r, s, out);
        for (Stage j = 0; j <= s; ++j)
            for (Stage i = 1; i <= s; ++i) out.push_back({{j, i}, {i}});
        return out;
    };
    return p;
}

bool bandlike_equal(const CeerSpec& r, const Word& u, const Word& v, Stage s) {
    if (zero_class_nontrivial(r, s)) return true;
    auto last_kept = [](const Word& w) -> std::optional<Letter> {
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            if (*it != 0) return *it;
        return std::nullopt;
    };
    auto a = last_kept(u), b = last_kept(v);
    if (!a || !b) return !a && !b;
    return related_at(r, *a, *b, s);
}

Word word_from_code(const Natural& c, AlgebraKind kind) {
    Word w;
    for (const auto& x : list_decode(kind == AlgebraKind::Semigroup ? Natural(c + 1) : c)) w.push_back(to_u64(x));
    return w;
}

Natural word_code(const Word& w, AlgebraKind kind) {
    std::vector<Natural> xs(w.begin(), w.end());
    Natural c = list_code(xs);
    if (kind == AlgebraKind::Semigroup) {
        if (w.empty()) throw std::invalid_argument("semigroup words are nonempty");
        return c - 1;
    }
    return c;
}

namespace {

class WordProblemRelation : public StagedRelation {
public:
    WordProblemRelation(CeerSpec r, bool monoid) : r_(std::move(r)), monoid_(monoid) {}
    std::string name() const override { return std::string(monoid_ ? "bandlike(" : "rzb(") + to_text(r_) + ")"; }
    bool related(const Natural& x, const Natural& y, Stage s) const override {
        if (x == y) return true;
        AlgebraKind k = monoid_ ? AlgebraKind::Monoid : AlgebraKind::Semigroup;
        Word u = word_from_code(x, k), v = word_from_code(y, k);
        return monoid_ ? bandlike_equal(r_, u, v, s) : rzb_equal(r_, u, v, s);
    }

private:
    CeerSpec r_;
    bool monoid_;
};

}  // namespace

std::shared_ptr<const StagedRelation> rzb_word_problem(const CeerSpec& r) {
    return std::make_shared<WordProblemRelation>(r, false);
}

std::shared_ptr<const StagedRelation> bandlike_word_problem(const CeerSpec& r) {
    return std::make_shared<WordProblemRelation>(r, true);
}

// --- closures ---------------------------------------------------------------

namespace {

// 128-bit polynomial hash of words: two independent residues mod 2^61 - 1.
// Rewritten words are hashed from prefix hashes in O(1), so expanding a word
// of length n costs O(n) no matter how many rewrites produce the same result.
struct WordHash {
    std::uint64_t a = 0, b = 0;
    bool operator==(const WordHash& o) const { return a == o.a && b == o.b; }
};

struct WordHashHasher {
    std::size_t operator()(const WordHash& h) const { return static_cast<std::size_t>(h.a ^ (h.b * 0x9e3779b97f4a7c15ULL)); }
};

constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;
constexpr std::uint64_t kBaseA = 1000003, kBaseB = 998244353;

std::uint64_t mul_mod(std::uint64_t x, std::uint64_t y) {
    __uint128_t p = static_cast<__uint128_t>(x) * y;
    std::uint64_t r = static_cast<std::uint64_t>(p & kMod) + static_cast<std::uint64_t>(p >> 61);
    return r >= kMod ? r - kMod : r;
}
std::uint64_t add_mod(std::uint64_t x, std::uint64_t y) {
    std::uint64_t r = x + y;
    return r >= kMod ? r - kMod : r;
}
std::uint64_t sub_mod(std::uint64_t x, std::uint64_t y) { return x >= y ? x - y : x + kMod - y; }

std::uint64_t letter_value(Letter x) {
    x += 0x9e3779b97f4a7c15ULL;  // splitmix64 finalizer
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x % (kMod - 1) + 1;
}

// Powers of both bases, grown on demand.
class Powers {
public:
    std::uint64_t a(std::size_t n) {
        grow(n);
        return a_[n];
    }
    std::uint64_t b(std::size_t n) {
        grow(n);
        return b_[n];
    }
    void grow(std::size_t n) {
        while (a_.size() <= n) {
            a_.push_back(mul_mod(a_.back(), kBaseA));
            b_.push_back(mul_mod(b_.back(), kBaseB));
        }
    }

private:
    std::vector<std::uint64_t> a_{1}, b_{1};
};

// Prefix hashes of one word: H(w[0..i)) for every i.
class PrefixHash {
public:
    explicit PrefixHash(const Word& w) : a_(w.size() + 1), b_(w.size() + 1) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::uint64_t v = letter_value(w[i]);
            a_[i + 1] = add_mod(mul_mod(a_[i], kBaseA), v);
            b_[i + 1] = add_mod(mul_mod(b_[i], kBaseB), v);
        }
    }
    WordHash whole() const { return {a_.back(), b_.back()}; }
    // Hash of w[0..p) + to + w[tail..n), where `to` has hash t and length m:
    // H = H[p]*B^(m+n-tail) + H[n] + (t - H[tail])*B^(n-tail).
    WordHash replaced(std::size_t p, std::size_t tail, const WordHash& t, std::size_t m, Powers& pw) const {
        const std::size_t n = a_.size() - 1, rest = n - tail;
        return {add_mod(add_mod(mul_mod(a_[p], pw.a(m + rest)), a_.back()), mul_mod(sub_mod(t.a, a_[tail]), pw.a(rest))),
                add_mod(add_mod(mul_mod(b_[p], pw.b(m + rest)), b_.back()), mul_mod(sub_mod(t.b, b_[tail]), pw.b(rest)))};
    }

private:
    std::vector<std::uint64_t> a_, b_;
};

WordHash hash_of(const Word& w) { return PrefixHash(w).whole(); }

// Breadth-first closure of one word. `expanded` counts nodes whose neighbours
// have been generated; that is the budget unit everywhere. Words are
// identified by their 128-bit hash. Each word is stored as the rewrite that
// first produced it, so recording a word is O(1) whatever its length.
class Closure {
public:
    Closure(const std::vector<WordRelation>& rels, Word root) : rels_(rels), root_(root) {
        for (const auto& r : rels_) {
            rule_hash_.push_back({hash_of(r.lhs), hash_of(r.rhs)});
        }
        seen_.insert(hash_of(root));
        origin_.push_back({});
        queue_.push_back({std::move(root), 0});
    }

    bool saturated() const { return queue_.empty(); }
    bool contains(const Word& w) const { return seen_.count(hash_of(w)) > 0; }
    bool contains(const WordHash& h) const { return seen_.count(h) > 0; }
    // Replays every recorded rewrite; parents are always recorded before children.
    WordSet words() const {
        std::vector<Word> all{root_};
        all.reserve(origin_.size());
        for (std::size_t id = 1; id < origin_.size(); ++id) {
            const Origin& o = origin_[id];
            const WordRelation& r = rels_[o.rule];
            const Word& from = o.reversed ? r.rhs : r.lhs;
            const Word& to = o.reversed ? r.lhs : r.rhs;
            const Word& w = all[o.parent];
            Word next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(o.pos));
            next.insert(next.end(), to.begin(), to.end());
            next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(o.pos + from.size()), w.end());
            all.push_back(std::move(next));
        }
        return WordSet(all.begin(), all.end());
    }
    std::uint64_t expanded() const { return expanded_; }
    std::uint64_t reached() const { return seen_.size(); }

    // Expands the next queued word; calls on_new(word, hash) for every newly seen word.
    template <class F>
    void expand(F&& on_new) {
        if (queue_.empty()) return;
        auto [w, id] = std::move(queue_.front());
        queue_.pop_front();
        ++expanded_;
        PrefixHash ph(w);
        last_ = {~std::uint64_t{0}, ~std::uint64_t{0}};
        for (std::size_t i = 0; i < rels_.size(); ++i) {
            rewrite(w, id, ph, i, false, on_new);
            rewrite(w, id, ph, i, true, on_new);
        }
    }

    void expand() {
        expand([](const Word&, const WordHash&) {});
    }

private:
    struct Origin {
        std::uint32_t parent = 0, rule = 0;
        std::size_t pos = 0;
        bool reversed = false;
    };

    template <class F>
    void rewrite(const Word& w, std::uint32_t id, const PrefixHash& ph, std::size_t rule, bool reversed, F& on_new) {
        const Word& from = reversed ? rels_[rule].rhs : rels_[rule].lhs;
        const Word& to = reversed ? rels_[rule].lhs : rels_[rule].rhs;
        const WordHash& to_hash = reversed ? rule_hash_[rule].first : rule_hash_[rule].second;
        if (from == to) return;
        if (from.size() > w.size()) return;
        const std::size_t n = w.size();
        // Matches at p-1 and p give the same word iff w[p-1] == w[p-1+|from|]
        // and `to` is a run of that letter; such repeats are skipped unhashed.
        const bool uniform_to = std::all_of(to.begin(), to.end(), [&](Letter x) { return x == to.front(); });
        std::size_t prev = n + 1;
        for (std::size_t p = 0; p + from.size() <= n; ++p) {
            if (!std::equal(from.begin(), from.end(), w.begin() + static_cast<std::ptrdiff_t>(p))) continue;
            const std::size_t tail = p + from.size();
            const bool repeat = prev + 1 == p && w[p - 1] == w[tail - 1] && uniform_to && (to.empty() || to.front() == w[p - 1]);
            prev = p;
            if (repeat) continue;
            WordHash h = ph.replaced(p, tail, to_hash, to.size(), powers_);
            if (h == last_ || seen_.count(h)) continue;  // neighbouring matches in a run often agree
            last_ = h;
            Word next;
            next.reserve(n - from.size() + to.size());
            next.insert(next.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
            next.insert(next.end(), to.begin(), to.end());
            next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(tail), w.end());
            seen_.insert(h);
            origin_.push_back({id, static_cast<std::uint32_t>(rule), p, reversed});
            on_new(next, h);
            queue_.push_back({std::move(next), static_cast<std::uint32_t>(origin_.size() - 1)});
        }
    }

    const std::vector<WordRelation>& rels_;
    std::vector<std::pair<WordHash, WordHash>> rule_hash_;
    Word root_;
    std::unordered_set<WordHash, WordHashHasher> seen_;
    std::vector<Origin> origin_;  // indexed by word id; the root is id 0
    Powers powers_;
    WordHash last_;
    std::deque<std::pair<Word, std::uint32_t>> queue_;
    std::uint64_t expanded_ = 0;
};

void check_finite_generators(const Presentation& p, const char* op) {
    if (!p.generators) throw std::invalid_argument(std::string(op) + " needs a finite generator set");
}

// Calls visit on every word of length `len` over k letters in lexicographic
// order until it returns false.
template <class F>
bool for_each_word(std::uint64_t k, std::uint64_t len, F&& visit) {
    Word w(len, 0);
    for (;;) {
        if (!visit(w)) return false;
        std::size_t i = len;
        while (i > 0 && w[i - 1] + 1 == k) w[--i] = 0;
        if (i == 0) return true;
        ++w[i - 1];
    }
}

}  // namespace

ClassEnumResult class_enumerate(const Presentation& p, const Word& w, std::uint64_t node_budget, Stage stage) {
    auto rels = p.relations_at(stage);
    Closure c(rels, w);
    while (!c.saturated() && c.expanded() < node_budget) c.expand();
    ClassEnumResult r;
    r.finite = c.saturated();
    if (r.finite) r.words = c.words();
    r.visited = c.expanded();
    r.reached = c.reached();
    return r;
}

SemiDecision fp_equal(const Presentation& p, const Word& u, const Word& v, std::uint64_t budget, Stage stage) {
    if (u == v) return SemiDecision::Related;
    auto rels = p.relations_at(stage);
    Closure a(rels, u), b(rels, v);
    bool met = false;
    while (!met && a.expanded() + b.expanded() < budget && !(a.saturated() && b.saturated())) {
        a.expand([&](const Word&, const WordHash& h) { met = met || b.contains(h); });
        if (met) break;
        b.expand([&](const Word&, const WordHash& h) { met = met || a.contains(h); });
    }
    return met ? SemiDecision::Related : SemiDecision::Unresolved;
}

namespace {

// star_check that stops after `cap` nodes in total; reports the nodes used.
bool star_check_counted(const std::vector<WordRelation>& rels, std::uint64_t k, std::uint64_t m,
                        std::uint64_t per_word, std::uint64_t cap, std::uint64_t& used) {
    return for_each_word(k, m, [&](const Word& sigma) {
        Closure c(rels, sigma);
        bool shorter = false;
        while (!shorter && !c.saturated() && c.expanded() < per_word && used < cap) {
            c.expand([&](const Word& w, const WordHash&) { shorter = shorter || w.size() < m; });
            ++used;
        }
        return shorter;
    });
}

}  // namespace

bool star_check(const Presentation& p, std::uint64_t m, std::uint64_t budget, Stage stage) {
    check_finite_generators(p, "star_check");
    if (m == 0) throw std::invalid_argument("star_check needs m > 0");
    auto rels = p.relations_at(stage);
    std::uint64_t used = 0;
    return star_check_counted(rels, *p.generators, m, budget, UINT64_MAX, used);
}

FinitenessResult finiteness_semidecide(const Presentation& p, std::uint64_t budget, Stage stage) {
    check_finite_generators(p, "finiteness_semidecide");
    auto rels = p.relations_at(stage);
    std::uint64_t used = 0;
    for (std::uint64_t k = 1; used < budget; ++k) {
        std::uint64_t per_word = std::uint64_t{1} << std::min<std::uint64_t>(k, 62);
        for (std::uint64_t m = 1; m <= k && used < budget; ++m) {
            std::uint64_t before = used;
            if (star_check_counted(rels, *p.generators, m, per_word, budget, used)) return {true, m};
            if (used == before) ++used;  // guarantees progress on alphabets without words
        }
    }
    return {};
}

Decision decide_with_infinite_reps(const Presentation& p, const std::vector<Word>& reps, const Word& u, const Word& v,
                                   std::uint64_t budget, Stage stage) {
    if (u == v) return Decision::Equal;
    auto rels = p.relations_at(stage);
    Closure a(rels, u), b(rels, v);
    auto rep_in = [&](const Closure& c) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (c.contains(reps[i])) return i;
        return std::nullopt;
    };
    bool met = false;
    for (;;) {
        if (met) return Decision::Equal;
        if (a.saturated() && b.saturated()) return Decision::NotEqual;  // distinct finite classes
        auto ra = rep_in(a), rb = rep_in(b);
        if (ra && rb) return *ra == *rb ? Decision::Equal : Decision::NotEqual;
        if ((a.saturated() && rb) || (b.saturated() && ra)) return Decision::NotEqual;
        if (a.expanded() + b.expanded() >= budget) return Decision::BudgetExceeded;
        a.expand([&](const Word&, const WordHash& h) { met = met || b.contains(h); });
        if (!met) b.expand([&](const Word&, const WordHash& h) { met = met || a.contains(h); });
    }
}

std::vector<Word> light_transversal(const Presentation& p, std::size_t count, std::uint64_t budget, Stage stage) {
    check_finite_generators(p, "light_transversal");
    auto rels = p.relations_at(stage);
    const std::uint64_t cap = budget * (count + 1);
    const std::uint64_t k = *p.generators;
    std::vector<Word> out;
    WordSet covered;
    std::uint64_t used = 0;
    if (count == 0 || k == 0) return out;
    for (std::uint64_t len = p.kind == AlgebraKind::Monoid ? 0 : 1; used < cap && out.size() < count; ++len) {
        for_each_word(k, len, [&](const Word& w) {
            if (used >= cap || out.size() >= count) return false;
            if (covered.count(w)) {
                ++used;
                return true;
            }
            Closure c(rels, w);
            std::uint64_t allowance = std::min(budget, cap - used);
            while (!c.saturated() && c.expanded() < allowance) c.expand();
            used += std::max<std::uint64_t>(c.expanded(), 1);
            if (c.saturated()) {
                WordSet cls = c.words();
                out.push_back(*cls.begin());
                covered.insert(cls.begin(), cls.end());
            }
            return true;
        });
    }
    return out;
}

RepeatResult power_repeat_search(const Presentation& p, const Word& a, std::uint64_t max_exp, std::uint64_t budget,
                                 Stage stage) {
    auto power = [&](std::uint64_t n) {
        Word w;
        for (std::uint64_t i = 0; i < n; ++i) w.insert(w.end(), a.begin(), a.end());
        return w;
    };
    Presentation frozen = p.frozen(stage);
    for (std::uint64_t m = 2; m <= max_exp; ++m)
        for (std::uint64_t n = 1; n < m; ++n)
            if (fp_equal(frozen, power(n), power(m), budget) == SemiDecision::Related) return {true, n, m};
    return {};
}

// --- finitely generated family ----------------------------------------------

Word fg_word_decode(const Natural& c, std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("empty alphabet");
    Word w;
    Natural v = c + 1;
    while (v > 0) {
        Natural d = (v - 1) % k;
        w.push_back(d.convert_to<Letter>());
        v = (v - 1) / k;
    }
    std::reverse(w.begin(), w.end());
    return w;
}

Natural fg_word_code(const Word& w, std::uint64_t k) {
    if (w.empty()) throw std::invalid_argument("fg words are nonempty");
    Natural v = 0;
    for (Letter x : w) {
        if (x >= k) throw std::invalid_argument("letter outside the alphabet");
        v = v * k + (x + 1);
    }
    return v - 1;
}

namespace {

Word relation_side(const Natural& c, const Presentation& p) {
    if (!p.generators) return word_from_code(c, p.kind);
    if (p.kind == AlgebraKind::Monoid) return c == 0 ? Word{} : fg_word_decode(c - 1, *p.generators);
    return fg_word_decode(c, *p.generators);
}

void attach_relation_program(Presentation& p, const ProgramIndex& e) {
    p.relation_program = e;
    Presentation shape = p;  // kind and generators only
    p.staged = [shape, e](Stage s) {
        std::vector<WordRelation> out;
        for (const auto& z : enumerate_w(e, s)) {
            auto [a, b] = unpair(z);
            out.push_back({relation_side(a, shape), relation_side(b, shape)});
        }
        return out;
    };
}

}  // namespace

Presentation fg_family_staged(std::uint64_t n, const ProgramIndex& i) {
    Presentation p;
    p.kind = AlgebraKind::Semigroup;
    p.generators = n + 1;
    attach_relation_program(p, i);
    return p;
}

Presentation fg_family(std::uint64_t n, const ProgramIndex& i, Stage s) { return fg_family_staged(n, i).frozen(s); }

// --- text -------------------------------------------------------------------

Word parse_word(const std::string& text, AlgebraKind kind) {
    std::istringstream in(text);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    if (toks.empty() || (toks.size() == 1 && toks[0] == "1")) {
        if (kind == AlgebraKind::Semigroup) throw std::invalid_argument("semigroup words are nonempty");
        return {};
    }
    Word w;
    for (const auto& tok : toks) {
        if (tok.size() < 2 || tok[0] != 'x') throw std::invalid_argument("bad letter '" + tok + "'");
        w.push_back(to_u64(parse_natural(tok.substr(1))));
    }
    return w;
}

std::string word_text(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? " x" : "x") + std::to_string(w[i]);
    return out;
}

Presentation parse_presentation(const std::string& text) {
    Presentation p;
    std::istringstream lines(text);
    std::string line;
    bool header = false;
    std::optional<ProgramIndex> program;
    std::vector<std::string> rel_lines;
    while (std::getline(lines, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream in(line);
        std::string key;
        if (!(in >> key)) continue;
        std::string rest;
        std::getline(in, rest);
        if (!header) {
            if (key == "semigroup") p.kind = AlgebraKind::Semigroup;
            else if (key == "monoid") p.kind = AlgebraKind::Monoid;
            else throw std::invalid_argument("presentation must start with 'semigroup' or 'monoid'");
            header = true;
        } else if (key == "generators") {
            std::istringstream r(rest);
            std::string g;
            r >> g;
            if (g == "omega") p.generators.reset();
            else p.generators = to_u64(parse_natural(g));
        } else if (key == "rel") {
            rel_lines.push_back(rest);
        } else if (key == "rel-program") {
            program = parse_program(rest);
        } else {
            throw std::invalid_argument("unknown presentation line '" + key + "'");
        }
    }
    if (!header) throw std::invalid_argument("empty presentation");
    for (const auto& r : rel_lines) {
        auto eq = r.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("relation without '='");
        WordRelation rel{parse_word(r.substr(0, eq), p.kind), parse_word(r.substr(eq + 1), p.kind)};
        for (const Word* w : {&rel.lhs, &rel.rhs})
            for (Letter x : *w)
                if (p.generators && x >= *p.generators) throw std::invalid_argument("letter outside the generators");
        p.relations.push_back(rel);
    }
    if (program) {
        if (!p.relations.empty()) throw std::invalid_argument("'rel' and 'rel-program' cannot be mixed");
        attach_relation_program(p, *program);
    }
    return p;
}

std::string presentation_text(const Presentation& p, Stage stage) {
    std::ostringstream out;
    out << (p.kind == AlgebraKind::Monoid ? "monoid" : "semigroup") << "\n";
    out << "generators " << (p.generators ? std::to_string(*p.generators) : "omega") << "\n";
    if (p.relation_program) {
        out << "rel-program " << *p.relation_program << "\n";
        return out.str();
    }
    for (const auto& r : p.relations_at(stage)) out << "rel " << word_text(r.lhs) << " = " << word_text(r.rhs) << "\n";
    return out.str();
}

}  // namespace ceerwb
