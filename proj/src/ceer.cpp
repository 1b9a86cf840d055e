#include "ceerwb/ceer.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace ceerwb {

// --- PartitionSnapshot ------------------------------------------------------

Natural PartitionSnapshot::find(const Natural& x) const {
    auto it = parent_.find(x);
    if (it == parent_.end() || it->second == x) return x;
    Natural root = find(it->second);
    it->second = root;
    return root;
}

void PartitionSnapshot::unite(const Natural& x, const Natural& y) {
    Natural a = find(x), b = find(y);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[a] = a;
    parent_[b] = a;  // the smaller root survives, so roots stay least elements
}

std::vector<std::vector<Natural>> PartitionSnapshot::blocks() const {
    std::map<Natural, std::vector<Natural>> by_root;
    for (const auto& [x, p] : parent_) by_root[find(x)].push_back(x);
    std::vector<std::vector<Natural>> out;
    for (auto& [root, members] : by_root) {
        if (members.size() < 2) continue;
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

// --- CeerSpec ---------------------------------------------------------------

CeerSpec CeerSpec::identity() { return CeerSpec{}; }

CeerSpec CeerSpec::finite_partition(std::vector<std::vector<Natural>> blocks) {
    std::set<Natural> seen;
    for (auto& b : blocks) {
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        for (const auto& x : b)
            if (!seen.insert(x).second) throw std::invalid_argument("finite partition blocks overlap at " + to_string(x));
    }
    CeerSpec c;
    c.kind = Kind::FinitePartition;
    c.blocks = std::move(blocks);
    return c;
}

CeerSpec CeerSpec::enumerated(const ProgramIndex& e) {
    CeerSpec c;
    c.kind = Kind::Enumerated;
    c.program = e;
    return c;
}

CeerSpec CeerSpec::word_problem(std::shared_ptr<const StagedRelation> h) {
    if (!h) throw std::invalid_argument("null word-problem handle");
    CeerSpec c;
    c.kind = Kind::WordProblem;
    c.handle = std::move(h);
    return c;
}

CeerSpec lift_infinite(const CeerSpec& r) {
    CeerSpec c;
    c.kind = CeerSpec::Kind::Lifted;
    c.base = std::make_shared<const CeerSpec>(r);
    return c;
}

CeerSpec join_id1(const CeerSpec& e) {
    CeerSpec c;
    c.kind = CeerSpec::Kind::JoinId1;
    c.base = std::make_shared<const CeerSpec>(e);
    return c;
}

namespace {

// Closure of the pairs enumerated by e within stage s. Cached per thread;
// the value depends only on (e, s).
const PartitionSnapshot& enumerated_snapshot(const ProgramIndex& e, Stage s) {
    thread_local std::map<std::pair<Natural, Stage>, PartitionSnapshot> cache;
    auto key = std::make_pair(e, s);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (cache.size() >= 256) cache.clear();
    PartitionSnapshot p(s);
    for (const auto& z : enumerate_w(e, s)) {
        auto [x, y] = unpair(z);
        p.unite(x, y);
    }
    return cache.emplace(key, std::move(p)).first->second;
}

bool same_block(const std::vector<std::vector<Natural>>& blocks, const Natural& x, const Natural& y) {
    for (const auto& b : blocks) {
        bool hx = std::binary_search(b.begin(), b.end(), x);
        bool hy = std::binary_search(b.begin(), b.end(), y);
        if (hx || hy) return hx && hy;
    }
    return false;
}

}  // namespace

bool related_at(const CeerSpec& e, const Natural& x, const Natural& y, Stage s) {
    if (x == y) return true;
    switch (e.kind) {
        case CeerSpec::Kind::Identity:
            return false;
        case CeerSpec::Kind::FinitePartition:
            return same_block(e.blocks, x, y);
        case CeerSpec::Kind::Enumerated:
            return enumerated_snapshot(e.program, s).same(x, y);
        case CeerSpec::Kind::Lifted:
            return related_at(*e.base, first(x), first(y), s);
        case CeerSpec::Kind::JoinId1: {
            bool ox = x % 2 == 1, oy = y % 2 == 1;
            if (ox || oy) return ox && oy;
            return related_at(*e.base, x / 2, y / 2, s);
        }
        case CeerSpec::Kind::WordProblem:
            return e.handle->related(x, y, s);
    }
    return false;
}

PartitionSnapshot snapshot(const CeerSpec& e, Stage s, std::uint64_t window) {
    switch (e.kind) {
        case CeerSpec::Kind::Identity:
            return PartitionSnapshot(s);
        case CeerSpec::Kind::FinitePartition: {
            PartitionSnapshot p(s);
            for (const auto& b : e.blocks)
                for (const auto& x : b) p.unite(b.front(), x);
            return p;
        }
        case CeerSpec::Kind::Enumerated:
            return enumerated_snapshot(e.program, s);
        default: {
            // Each x joins the least earlier number related to it.
            PartitionSnapshot p(s);
            for (std::uint64_t x = 1; x < window; ++x) {
                for (std::uint64_t y = 0; y < x; ++y) {
                    if (p.find(y) != y) continue;
                    if (related_at(e, x, y, s)) {
                        p.unite(x, y);
                        break;
                    }
                }
            }
            return p;
        }
    }
}

bool is_ground_truth(const CeerSpec& e) {
    switch (e.kind) {
        case CeerSpec::Kind::Identity:
        case CeerSpec::Kind::FinitePartition:
            return true;
        case CeerSpec::Kind::Lifted:
        case CeerSpec::Kind::JoinId1:
            return is_ground_truth(*e.base);
        default:
            return false;
    }
}

// --- audits -----------------------------------------------------------------

const char* to_string(AuditVerdict::Status s) {
    switch (s) {
        case AuditVerdict::Status::Consistent:
            return "Consistent";
        case AuditVerdict::Status::DefiniteViolation:
            return "DefiniteViolation";
        default:
            return "Obligations";
    }
}

namespace {

Natural apply(const ProgramIndex& f, const Natural& x, Budget budget) {
    EvalOutcome o = eval(f, x, budget);
    if (!o.converged) throw NonTotalWithinBudget(x);
    return o.value;
}

std::vector<Natural> apply_all(const ProgramIndex& f, std::uint64_t bound, Budget budget) {
    std::vector<Natural> out;
    out.reserve(bound);
    for (std::uint64_t x = 0; x < bound; ++x) out.push_back(apply(f, x, budget));
    return out;
}

// Collects mismatches; `definite` ones can never be repaired by enumeration.
struct Findings {
    std::vector<std::pair<Natural, Natural>> definite, open;

    AuditVerdict verdict() const {
        AuditVerdict v;
        if (!definite.empty()) {
            v.status = AuditVerdict::Status::DefiniteViolation;
            v.witnesses = definite;
        } else if (!open.empty()) {
            v.status = AuditVerdict::Status::Obligations;
            v.witnesses = open;
        }
        return v;
    }
};

}  // namespace

AuditVerdict audit_reduction(const ProgramIndex& f, const CeerSpec& r, const CeerSpec& s, std::uint64_t bound,
                             Stage stage, Budget budget) {
    auto img = apply_all(f, bound, budget);
    const bool r_fixed = is_ground_truth(r), s_fixed = is_ground_truth(s);
    Findings out;
    for (std::uint64_t x = 0; x < bound; ++x) {
        for (std::uint64_t y = x + 1; y < bound; ++y) {
            bool in_r = related_at(r, x, y, stage);
            bool in_s = related_at(s, img[x], img[y], stage);
            if (in_r == in_s) continue;
            // The related side is final; the unrelated side may still grow
            // unless its relation is fixed.
            bool definite = in_r ? s_fixed : r_fixed;
            (definite ? out.definite : out.open).emplace_back(x, y);
        }
    }
    return out.verdict();
}

AuditVerdict audit_inverse_pair(const ProgramIndex& f, const ProgramIndex& g, const CeerSpec& r, const CeerSpec& s,
                                std::uint64_t bound, Stage stage, Budget budget,
                                const std::function<bool(const Natural&)>& s_domain) {
    Findings out;
    for (std::uint64_t x = 0; x < bound; ++x) {
        Natural back = apply(g, apply(f, x, budget), budget);
        if (!related_at(r, back, x, stage)) (is_ground_truth(r) ? out.definite : out.open).emplace_back(back, x);
    }
    for (std::uint64_t y = 0; y < bound; ++y) {
        if (s_domain && !s_domain(y)) continue;
        Natural back = apply(f, apply(g, y, budget), budget);
        if (!related_at(s, back, y, stage)) (is_ground_truth(s) ? out.definite : out.open).emplace_back(back, y);
    }
    return out.verdict();
}

AuditVerdict audit_diagonal(const ProgramIndex& d, const CeerSpec& e, std::uint64_t bound, Stage stage,
                            Budget budget) {
    AuditVerdict v;
    for (std::uint64_t x = 0; x < bound; ++x) {
        Natural dx = apply(d, x, budget);
        if (related_at(e, dx, x, stage)) {
            v.status = AuditVerdict::Status::DefiniteViolation;
            v.witnesses.emplace_back(dx, x);
            return v;
        }
    }
    return v;
}

std::vector<Natural> greedy_transversal(const CeerSpec& e, std::size_t count, Stage s, std::uint64_t scan_limit) {
    std::vector<Natural> picks;
    for (std::uint64_t n = 0; n < scan_limit && picks.size() < count; ++n) {
        bool fresh = std::none_of(picks.begin(), picks.end(), [&](const Natural& p) { return related_at(e, n, p, s); });
        if (fresh) picks.push_back(n);
    }
    return picks;
}

// --- back and forth ---------------------------------------------------------

void Correspondence::add(const Natural& a, const Natural& b) {
    if (has_source(a) || has_target(b)) throw std::logic_error("correspondence is not one-to-one");
    forward_.emplace(a, b);
    backward_.emplace(b, a);
}

namespace {

// Adding (a, b) keeps the map relation-preserving at stage s.
bool compatible(const CeerSpec& r, const CeerSpec& s, const Correspondence& map, const Natural& a, const Natural& b,
                Stage stage) {
    for (const auto& [x, y] : map.pairs())
        if (related_at(r, a, x, stage) != related_at(s, b, y, stage)) return false;
    return true;
}

Natural least_unmapped(const std::function<bool(const Natural&)>& used) {
    Natural n = 0;
    while (used(n)) ++n;
    return n;
}

}  // namespace

MyhillStep myhill_extend(const CeerSpec& r, const CeerSpec& s, const ProgramIndex& f, const Correspondence& map,
                         Stage stage, Budget budget, std::uint64_t scan_limit) {
    MyhillStep step{map, std::nullopt};
    Correspondence& m = step.map;

    // forth: the least unmapped x goes to the least unused y with y S f(x)
    Natural x = least_unmapped([&](const Natural& n) { return m.has_source(n); });
    Natural fx = apply(f, x, budget);
    bool found = false;
    for (std::uint64_t y = 0; y < scan_limit && !found; ++y) {
        if (m.has_target(y) || !related_at(s, y, fx, stage) || !compatible(r, s, m, x, y, stage)) continue;
        m.add(x, y);
        found = true;
    }
    if (!found) {
        step.stuck = "no fresh element of the class of f(" + to_string(x) + ") below " + std::to_string(scan_limit);
        return step;
    }

    // back: the least unmapped y gets the least unused x with f(x) S y
    Natural y = least_unmapped([&](const Natural& n) { return m.has_target(n); });
    found = false;
    for (std::uint64_t c = 0; c < scan_limit && !found; ++c) {
        if (m.has_source(c)) continue;
        if (!related_at(s, apply(f, c, budget), y, stage) || !compatible(r, s, m, c, y, stage)) continue;
        m.add(c, y);
        found = true;
    }
    if (!found) step.stuck = "no fresh preimage for the class of " + to_string(y) + " below " + std::to_string(scan_limit);
    return step;
}

// --- text form --------------------------------------------------------------

namespace {

struct Parser {
    const std::string& text;
    const HandleResolver& resolver;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(const std::string& word) {
        skip();
        if (text.compare(pos, word.size(), word) != 0) return false;
        pos += word.size();
        return true;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("ceer spec: " + why + " at offset " + std::to_string(pos) + " in '" + text + "'");
    }

    // Text up to the parenthesis closing the one just consumed.
    std::string balanced() {
        int depth = 1;
        std::size_t start = pos;
        for (; pos < text.size(); ++pos) {
            if (text[pos] == '(') ++depth;
            if (text[pos] == ')' && --depth == 0) return text.substr(start, pos++ - start);
        }
        fail("unbalanced parentheses");
    }

    CeerSpec spec() {
        skip();
        if (eat("lift(")) return lift_infinite(inner(balanced()));
        if (eat("joinid1(")) return join_id1(inner(balanced()));
        if (eat("wp:")) {
            std::string name = text.substr(pos);
            pos = text.size();
            while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
            if (!resolver) fail("no resolver for word-problem handle '" + name + "'");
            auto h = resolver(name);
            if (!h) fail("unknown word-problem handle '" + name + "'");
            return CeerSpec::word_problem(h);
        }
        if (eat("enum")) {
            std::string prog = text.substr(pos);
            pos = text.size();
            return CeerSpec::enumerated(parse_program(prog));
        }
        if (eat("fp")) {
            std::vector<std::vector<Natural>> blocks;
            while (eat("{")) {
                std::size_t close = text.find('}', pos);
                if (close == std::string::npos) fail("missing '}'");
                std::istringstream in(text.substr(pos, close - pos));
                std::vector<Natural> block;
                std::string tok;
                while (in >> tok) block.push_back(parse_natural(tok));
                blocks.push_back(block);
                pos = close + 1;
            }
            return CeerSpec::finite_partition(blocks);
        }
        if (eat("id")) return CeerSpec::identity();
        fail("unknown ceer");
    }

    CeerSpec inner(const std::string& sub) const {
        Parser p{sub, resolver};
        CeerSpec c = p.spec();
        p.skip();
        if (p.pos != sub.size()) p.fail("trailing text");
        return c;
    }
};

}  // namespace

CeerSpec parse_ceer(const std::string& text, const HandleResolver& resolver) {
    Parser p{text, resolver};
    CeerSpec c = p.spec();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing text");
    return c;
}

std::string to_text(const CeerSpec& e) {
    switch (e.kind) {
        case CeerSpec::Kind::Identity:
            return "id";
        case CeerSpec::Kind::FinitePartition: {
            std::string out = "fp ";
            for (const auto& b : e.blocks) {
                out += "{";
                for (std::size_t i = 0; i < b.size(); ++i) out += (i ? " " : "") + to_string(b[i]);
                out += "}";
            }
            return out;
        }
        case CeerSpec::Kind::Enumerated:
            return "enum " + to_string(e.program);
        case CeerSpec::Kind::Lifted:
            return "lift(" + to_text(*e.base) + ")";
        case CeerSpec::Kind::JoinId1:
            return "joinid1(" + to_text(*e.base) + ")";
        case CeerSpec::Kind::WordProblem:
            return "wp:" + e.handle->name();
    }
    return "id";
}

}  // namespace ceerwb
