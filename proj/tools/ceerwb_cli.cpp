// ceerwb: batch command-line front end. Every command prints JSON lines on
// stdout; big numbers are decimal strings. Exit status 0 on success, 1 on a
// domain error (an "error" record is printed), 2 on a usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "ceerwb/ceer.hpp"
#include "ceerwb/freering.hpp"
#include "ceerwb/machine.hpp"
#include "ceerwb/priority.hpp"
#include "ceerwb/wordproblem.hpp"
#include "json.hpp"

namespace {

using namespace ceerwb;
using json = nlohmann::ordered_json;

// Malformed user input; reported as a usage error.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Globals {
    Budget budget = 10000;
    Stage stage = 100;
    std::uint64_t seed = 0;
};

json record(const std::string& kind) {
    json j;
    j["record"] = kind;
    j["schema"] = 1;
    return j;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

json nat(const Natural& n) { return to_string(n); }

json nats(const std::vector<Natural>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(nat(x));
    return a;
}

json nats(const std::set<Natural>& xs) { return nats(std::vector<Natural>(xs.begin(), xs.end())); }

json pairs(const std::vector<std::pair<Natural, Natural>>& ps) {
    json a = json::array();
    for (const auto& [x, y] : ps) a.push_back(json::array({nat(x), nat(y)}));
    return a;
}

json blocks(const std::vector<std::vector<Natural>>& bs) {
    json a = json::array();
    for (const auto& b : bs) a.push_back(nats(b));
    return a;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

template <class F>
auto as_usage(const std::string& what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& ex) {
        throw UsageError(what + ": " + ex.what());
    }
}

Natural natural_arg(const std::string& text) {
    return as_usage("number", [&] { return parse_natural(text); });
}

ProgramIndex sample_program(const std::string& name) {
    static const std::vector<std::pair<std::string, ProgramIndex (*)()>> table = {
        {"identity", samples::identity},     {"successor", samples::successor},
        {"first", samples::first_projection}, {"second", samples::second_projection},
        {"add-pair", samples::add_pair},     {"swap-pair", samples::swap_pair},
        {"eq-pair", samples::eq_pair},       {"accept-evens", samples::accept_evens},
        {"accept-zero", samples::accept_zero}, {"reject-all", samples::reject_all},
        {"loop", samples::forever_loop},     {"halve", samples::halve},
        {"twice", samples::twice},           {"ring-plus-one", samples::ring_plus_one},
    };
    for (const auto& [n, f] : table)
        if (n == name) return f();
    if (name.rfind("constant-", 0) == 0) return samples::constant(natural_arg(name.substr(9)));
    throw UsageError("unknown sample program '" + name + "'");
}

// A program argument is a file, "sample:<name>", or inline text (decimal
// index or assembly).
ProgramIndex program_arg(const std::string& arg) {
    if (arg.rfind("sample:", 0) == 0) return sample_program(arg.substr(7));
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec))
        return as_usage("program file " + arg, [&] { return parse_program(read_file(arg)); });
    return as_usage("program", [&] { return parse_program(arg); });
}

std::shared_ptr<const StagedRelation> resolve_handle(const std::string& name);

CeerSpec ceer_arg(const std::string& text) {
    return as_usage("ceer", [&] { return parse_ceer(text, resolve_handle); });
}

// wp:ring, wp:rzb(<spec>), wp:bandlike(<spec>)
std::shared_ptr<const StagedRelation> resolve_handle(const std::string& name) {
    if (name == "ring") return ring_word_problem();
    auto inside = [&](const std::string& head) -> std::optional<std::string> {
        if (name.rfind(head + "(", 0) != 0 || name.back() != ')') return std::nullopt;
        return name.substr(head.size() + 1, name.size() - head.size() - 2);
    };
    if (auto s = inside("rzb")) return rzb_word_problem(ceer_arg(*s));
    if (auto s = inside("bandlike")) return bandlike_word_problem(ceer_arg(*s));
    return nullptr;
}

Word word_arg(const std::string& text, AlgebraKind kind) {
    return as_usage("word", [&] { return parse_word(text, kind); });
}

Presentation presentation_arg(const std::string& path) {
    std::string text = read_file(path);
    return as_usage("presentation " + path, [&] { return parse_presentation(text); });
}

RingElement element_arg(const std::string& text) {
    return as_usage("ring element", [&] { return parse_element(text); });
}

std::vector<Natural> naturals_arg(const std::string& text) {
    std::string t = text;
    for (auto& ch : t)
        if (ch == ',') ch = ' ';
    std::istringstream in(t);
    std::vector<Natural> out;
    std::string tok;
    while (in >> tok) out.push_back(natural_arg(tok));
    return out;
}

json word_json(const Word& w) { return word_text(w); }

json wordset_json(const WordSet& ws) {
    json a = json::array();
    for (const auto& w : ws) a.push_back(word_json(w));
    return a;
}

json element_json(const RingElement& a) {
    json j;
    j["text"] = to_text(a);
    j["code"] = nat(element_code(a));
    return j;
}

json verdict_json(const std::string& kind, const AuditVerdict& v) {
    json j = record(kind);
    j["status"] = to_string(v.status);
    j["witnesses"] = pairs(v.witnesses);
    return j;
}

json outcome_json(const EvalOutcome& o) {
    json j = record("eval");
    j["converged"] = o.converged;
    j["value"] = o.converged ? nat(o.value) : json(nullptr);
    j["steps"] = o.steps;
    return j;
}

// --- command tables ---------------------------------------------------------

struct Cli {
    CLI::App app{"ceerwb: ceers, word problems, priority constructions and the free-ring ideal"};
    Globals g;

    CLI::App* group(const std::string& name, const std::string& help) {
        auto* c = app.add_subcommand(name, help);
        c->require_subcommand(1);
        return c;
    }

    Cli() {
        app.require_subcommand(1);
        app.fallthrough();
        app.add_option("--budget", g.budget, "interpreter steps per evaluation or closure nodes")->capture_default_str();
        app.add_option("--stage", g.stage, "enumeration stage")->capture_default_str();
        app.add_option("--seed", g.seed, "seed for generated corpora")->capture_default_str();
        machine_commands(group("machine", "register machine, numbering and library programs"));
        ceer_commands(group("ceer", "ceers, reductions, audits and transversals"));
        sg_commands(group("sg", "right-zero band semigroup realization"));
        mon_commands(group("mon", "bandlike monoid realization"));
        fp_commands(group("fp", "finite and staged presentations"));
        priority_commands(group("priority", "finite-injury construction, logs and audits"));
        ring_commands(group("ring", "free ring modulo the inseparable ideal"));
    }

    // Strings captured by the leaf options; each leaf reads only its own.
    std::map<std::string, std::string> s;
    std::map<std::string, std::uint64_t> n;

    static std::string key(CLI::App* c) { return c->get_parent()->get_name() + " " + c->get_name(); }

    CLI::Option* str(CLI::App* c, const std::string& flag, const std::string& help, bool required = true) {
        auto* o = c->add_option("--" + flag, s[key(c) + "." + flag], help);
        if (required) o->required();
        return o;
    }
    CLI::Option* num(CLI::App* c, const std::string& flag, std::uint64_t dflt, const std::string& help) {
        n[key(c) + "." + flag] = dflt;
        return c->add_option("--" + flag, n[key(c) + "." + flag], help)->capture_default_str();
    }
    const std::string& S(CLI::App* c, const std::string& flag) { return s[key(c) + "." + flag]; }
    std::uint64_t N(CLI::App* c, const std::string& flag) { return n[key(c) + "." + flag]; }

    void machine_commands(CLI::App* m) {
        auto* c = m->add_subcommand("eval", "run phi_e(x) for at most --budget steps");
        str(c, "program", "program file, sample:<name>, index or assembly");
        str(c, "x", "input");
        c->callback([this, c] { emit(outcome_json(eval(program_arg(S(c, "program")), natural_arg(S(c, "x")), g.budget))); });

        c = m->add_subcommand("show", "index, form and instruction listing of a program");
        str(c, "program", "program");
        c->callback([this, c] {
            ProgramIndex e = program_arg(S(c, "program"));
            json j = record("program");
            j["index"] = nat(e);
            j["describe"] = describe_index(e);
            if (decode_index(e).form == IndexForm::Register) j["text"] = disassemble(program_decode(e / 3));
            emit(j);
        });

        c = m->add_subcommand("param", "index of x -> phi_e(<n,x>)");
        str(c, "program", "program");
        str(c, "n", "parameter");
        c->callback([this, c] {
            json j = record("index");
            j["index"] = nat(parameterize(program_arg(S(c, "program")), natural_arg(S(c, "n"))));
            emit(j);
        });

        c = m->add_subcommand("fixpoint", "index n with phi_n = phi_{phi_t(n)}");
        str(c, "transformer", "program t");
        c->callback([this, c] {
            json j = record("index");
            j["index"] = nat(fixpoint(program_arg(S(c, "transformer"))));
            emit(j);
        });

        c = m->add_subcommand("enumerate", "W_{e,s} at --stage");
        str(c, "program", "program");
        c->callback([this, c] {
            json j = record("w");
            j["stage"] = g.stage;
            j["members"] = nats(enumerate_w(program_arg(S(c, "program")), g.stage));
            emit(j);
        });

        c = m->add_subcommand("ei-pair", "indices of the effectively inseparable pair");
        c->callback([] {
            EiPair p = ei_pair();
            json j = record("ei-pair");
            j["u"] = nat(p.u_side);
            j["v"] = nat(p.v_side);
            emit(j);
        });

        c = m->add_subcommand("productive", "productive index for a candidate separating pair");
        str(c, "u", "program enumerating a superset of U");
        str(c, "v", "program enumerating a superset of V");
        c->callback([this, c] {
            json j = record("index");
            j["index"] = nat(productive(program_arg(S(c, "u")), program_arg(S(c, "v"))));
            emit(j);
        });

        c = m->add_subcommand("library", "library program indices for parameter --n");
        num(c, "n", 0, "parameter");
        c->callback([this, c] {
            for (unsigned k = 0; k < library::Count; ++k) {
                json j = record("library");
                j["slot"] = k;
                j["name"] = library::name(k);
                j["index"] = nat(library_index(k, N(c, "n")));
                emit(j);
            }
        });

        c = m->add_subcommand("pair", "Cantor pairing");
        str(c, "x", "first");
        str(c, "y", "second");
        c->callback([this, c] {
            json j = record("pair");
            j["z"] = nat(pair(natural_arg(S(c, "x")), natural_arg(S(c, "y"))));
            emit(j);
        });

        c = m->add_subcommand("unpair", "inverse of the pairing");
        str(c, "z", "code");
        c->callback([this, c] {
            auto [x, y] = unpair(natural_arg(S(c, "z")));
            json j = record("unpair");
            j["x"] = nat(x);
            j["y"] = nat(y);
            emit(j);
        });
    }

    void ceer_commands(CLI::App* m) {
        auto* c = m->add_subcommand("related", "x R_s y");
        str(c, "spec", "ceer");
        str(c, "x", "x");
        str(c, "y", "y");
        c->callback([this, c] {
            json j = record("related");
            j["related"] = related_at(ceer_arg(S(c, "spec")), natural_arg(S(c, "x")), natural_arg(S(c, "y")), g.stage);
            emit(j);
        });

        c = m->add_subcommand("snapshot", "nontrivial blocks at --stage");
        str(c, "spec", "ceer");
        num(c, "window", 64, "numbers scanned for relations without a finite description");
        c->callback([this, c] {
            CeerSpec e = ceer_arg(S(c, "spec"));
            json j = record("snapshot");
            j["spec"] = to_text(e);
            j["stage"] = g.stage;
            j["ground_truth"] = is_ground_truth(e);
            j["blocks"] = blocks(snapshot(e, g.stage, N(c, "window")).blocks());
            emit(j);
        });

        for (const char* op : {"lift", "joinid1"}) {
            c = m->add_subcommand(op, std::string(op) == "lift" ? "x ~ y iff (x)_0 R (y)_0" : "R on evens, odds one class");
            str(c, "spec", "ceer");
            c->callback([this, c, op] {
                CeerSpec e = ceer_arg(S(c, "spec"));
                json j = record("ceer");
                j["spec"] = to_text(std::string(op) == "lift" ? lift_infinite(e) : join_id1(e));
                emit(j);
            });
        }

        c = m->add_subcommand("audit-reduction", "check x R y <=> f(x) S f(y) for x, y < bound");
        str(c, "f", "program");
        str(c, "r", "source ceer");
        str(c, "s", "target ceer");
        num(c, "bound", 20, "pairs below this bound");
        c->callback([this, c] {
            emit(verdict_json("audit", audit_reduction(program_arg(S(c, "f")), ceer_arg(S(c, "r")), ceer_arg(S(c, "s")),
                                                       N(c, "bound"), g.stage, g.budget)));
        });

        c = m->add_subcommand("audit-inverse", "check g(f(x)) R x and f(g(y)) S y below bound");
        str(c, "f", "program R -> S");
        str(c, "g", "program S -> R");
        str(c, "r", "ceer R");
        str(c, "s", "ceer S");
        num(c, "bound", 20, "arguments below this bound");
        c->callback([this, c] {
            emit(verdict_json("audit", audit_inverse_pair(program_arg(S(c, "f")), program_arg(S(c, "g")),
                                                          ceer_arg(S(c, "r")), ceer_arg(S(c, "s")), N(c, "bound"),
                                                          g.stage, g.budget)));
        });

        c = m->add_subcommand("audit-diagonal", "check d(x) is never related to x below bound");
        str(c, "d", "program");
        str(c, "spec", "ceer");
        num(c, "bound", 20, "arguments below this bound");
        c->callback([this, c] {
            emit(verdict_json("audit", audit_diagonal(program_arg(S(c, "d")), ceer_arg(S(c, "spec")), N(c, "bound"),
                                                      g.stage, g.budget)));
        });

        c = m->add_subcommand("transversal", "greedy pairwise unrelated numbers at --stage");
        str(c, "spec", "ceer");
        num(c, "count", 10, "numbers wanted");
        num(c, "scan", 100000, "numbers scanned");
        c->callback([this, c] {
            json j = record("transversal");
            j["members"] = nats(greedy_transversal(ceer_arg(S(c, "spec")), N(c, "count"), g.stage, N(c, "scan")));
            emit(j);
        });

        c = m->add_subcommand("myhill", "back-and-forth rounds extending a correspondence along f");
        str(c, "r", "ceer R");
        str(c, "s", "ceer S");
        str(c, "f", "reduction R -> S");
        num(c, "rounds", 10, "rounds");
        num(c, "scan", 5000, "candidate scan limit");
        c->callback([this, c] {
            ProgramIndex f = program_arg(S(c, "f"));
            CeerSpec r = ceer_arg(S(c, "r")), t = ceer_arg(S(c, "s"));
            Correspondence map;
            std::optional<std::string> stuck;
            for (std::uint64_t k = 0; k < N(c, "rounds") && !stuck; ++k) {
                MyhillStep step = myhill_extend(r, t, f, map, g.stage, g.budget, N(c, "scan"));
                map = step.map;
                stuck = step.stuck;
            }
            json j = record("myhill");
            std::vector<std::pair<Natural, Natural>> ps(map.pairs().begin(), map.pairs().end());
            j["pairs"] = pairs(ps);
            j["stuck"] = stuck ? json(*stuck) : json(nullptr);
            emit(j);
        });
    }

    void realization_commands(CLI::App* m, AlgebraKind kind) {
        const bool sg = kind == AlgebraKind::Semigroup;
        const std::string prefix = sg ? "rzb" : "bandlike";
        auto* c = m->add_subcommand(prefix + "-eq", "word problem of the realization at --stage");
        str(c, "ceer", "ceer R");
        str(c, "u", "word");
        str(c, "v", "word");
        c->callback([this, c, kind, sg] {
            CeerSpec r = ceer_arg(S(c, "ceer"));
            Word u = word_arg(S(c, "u"), kind), v = word_arg(S(c, "v"), kind);
            json j = record("equal");
            j["equal"] = sg ? rzb_equal(r, u, v, g.stage) : bandlike_equal(r, u, v, g.stage);
            emit(j);
        });

        c = m->add_subcommand(prefix + "-pres", "stage relations of the realization");
        str(c, "ceer", "ceer R");
        c->callback([this, c, sg] {
            CeerSpec r = ceer_arg(S(c, "ceer"));
            Presentation p = sg ? rzb_presentation(r) : bandlike_monoid_presentation(r);
            json j = record("presentation");
            j["stage"] = g.stage;
            j["text"] = presentation_text(p, g.stage);
            emit(j);
        });

        c = m->add_subcommand("word-code", "code of a word in the word problem as a ceer");
        str(c, "w", "word");
        c->callback([this, c, kind] {
            json j = record("word-code");
            j["code"] = nat(word_code(word_arg(S(c, "w"), kind), kind));
            emit(j);
        });

        c = m->add_subcommand("word-decode", "word with the given code");
        str(c, "code", "code");
        c->callback([this, c, kind] {
            json j = record("word");
            j["word"] = word_json(word_from_code(natural_arg(S(c, "code")), kind));
            emit(j);
        });

        // Random finite partitions of {0..9} (seeded): the closed-form word
        // problem against closure of the stage-9 relations, which already
        // mention every generator of the partition.
        c = m->add_subcommand(prefix + "-check", "seeded comparison of the normal form with closure search");
        num(c, "trials", 3, "random partitions");
        num(c, "length", 2, "maximum word length");
        num(c, "nodes", 100, "closure search nodes per pair");
        c->callback([this, c, kind, sg] {
            std::mt19937_64 rng(g.seed);
            std::uint64_t mismatches = 0, compared = 0, unresolved = 0;
            for (std::uint64_t t = 0; t < N(c, "trials"); ++t) {
                std::vector<std::vector<Natural>> bs(10);
                for (unsigned x = 0; x < 10; ++x) bs[rng() % 10].push_back(x);
                std::vector<std::vector<Natural>> nonempty;
                for (auto& b : bs)
                    if (!b.empty()) nonempty.push_back(b);
                CeerSpec r = CeerSpec::finite_partition(nonempty);
                Presentation p = sg ? rzb_presentation(r) : bandlike_monoid_presentation(r);
                std::vector<Word> words;
                if (!sg) words.push_back({});
                std::vector<Word> layer{{}};
                for (std::uint64_t len = 1; len <= N(c, "length"); ++len) {
                    std::vector<Word> next;
                    for (const auto& w : layer)
                        for (Letter a = 0; a < 4; ++a) {
                            Word x = w;
                            x.push_back(a);
                            next.push_back(x);
                        }
                    words.insert(words.end(), next.begin(), next.end());
                    layer = std::move(next);
                }
                const Stage st = 9;
                for (std::size_t a = 0; a < words.size(); ++a)
                    for (std::size_t b = a + 1; b < words.size(); ++b) {
                        bool nf = sg ? rzb_equal(r, words[a], words[b], st) : bandlike_equal(r, words[a], words[b], st);
                        bool search = fp_equal(p, words[a], words[b], N(c, "nodes"), st) == SemiDecision::Related;
                        ++compared;
                        if (nf && !search) ++unresolved;
                        if (!nf && search) ++mismatches;
                    }
            }
            json j = record("check");
            j["seed"] = g.seed;
            j["compared"] = compared;
            j["mismatches"] = mismatches;
            j["unresolved"] = unresolved;
            emit(j);
        });
    }

    void sg_commands(CLI::App* m) { realization_commands(m, AlgebraKind::Semigroup); }
    void mon_commands(CLI::App* m) { realization_commands(m, AlgebraKind::Monoid); }

    void fp_commands(CLI::App* m) {
        auto* c = m->add_subcommand("class", "breadth-first class of a word (node budget --budget)");
        str(c, "pres", "presentation file");
        str(c, "w", "word");
        c->callback([this, c] {
            Presentation p = presentation_arg(S(c, "pres"));
            ClassEnumResult r = class_enumerate(p, word_arg(S(c, "w"), p.kind), g.budget, g.stage);
            json j = record("class");
            j["status"] = r.finite ? "Complete" : "Exhausted";
            j["visited"] = r.visited;
            j["reached"] = r.reached;
            j["words"] = wordset_json(r.words);
            emit(j);
        });

        c = m->add_subcommand("equal", "semi-decide u = v");
        str(c, "pres", "presentation file");
        str(c, "u", "word");
        str(c, "v", "word");
        c->callback([this, c] {
            Presentation p = presentation_arg(S(c, "pres"));
            json j = record("equal");
            j["status"] = fp_equal(p, word_arg(S(c, "u"), p.kind), word_arg(S(c, "v"), p.kind), g.budget, g.stage) ==
                                  SemiDecision::Related
                              ? "Related"
                              : "Unresolved";
            emit(j);
        });

        c = m->add_subcommand("star", "every word of length m has a shorter equal word");
        str(c, "pres", "presentation file");
        num(c, "m", 2, "word length");
        c->callback([this, c] {
            json j = record("star");
            j["holds"] = star_check(presentation_arg(S(c, "pres")), N(c, "m"), g.budget, g.stage);
            emit(j);
        });

        c = m->add_subcommand("finite", "semi-decide finiteness of the presented algebra");
        str(c, "pres", "presentation file");
        c->callback([this, c] {
            FinitenessResult r = finiteness_semidecide(presentation_arg(S(c, "pres")), g.budget, g.stage);
            json j = record("finiteness");
            j["status"] = r.finite ? "FiniteWithBound" : "Unresolved";
            j["bound"] = r.finite ? json(r.bound) : json(nullptr);
            emit(j);
        });

        c = m->add_subcommand("decide", "decide u = v given one word from each infinite class");
        str(c, "pres", "presentation file");
        str(c, "reps", "representatives separated by ';'", false);
        str(c, "u", "word");
        str(c, "v", "word");
        c->callback([this, c] {
            Presentation p = presentation_arg(S(c, "pres"));
            std::vector<Word> reps;
            std::istringstream in(S(c, "reps"));
            std::string item;
            while (std::getline(in, item, ';'))
                if (item.find_first_not_of(" \t") != std::string::npos) reps.push_back(word_arg(item, p.kind));
            Decision d = decide_with_infinite_reps(p, reps, word_arg(S(c, "u"), p.kind), word_arg(S(c, "v"), p.kind),
                                                   g.budget, g.stage);
            json j = record("decision");
            j["status"] = d == Decision::Equal ? "Equal" : d == Decision::NotEqual ? "NotEqual" : "BudgetExceeded";
            emit(j);
        });

        c = m->add_subcommand("transversal", "least words of distinct finite classes");
        str(c, "pres", "presentation file");
        num(c, "count", 5, "words wanted");
        c->callback([this, c] {
            json j = record("transversal");
            json a = json::array();
            for (const auto& w : light_transversal(presentation_arg(S(c, "pres")), N(c, "count"), g.budget, g.stage))
                a.push_back(word_json(w));
            j["words"] = a;
            emit(j);
        });

        c = m->add_subcommand("repeat", "search a^n = a^m with 1 <= n < m");
        str(c, "pres", "presentation file");
        str(c, "w", "word a");
        num(c, "max-exp", 8, "largest m tried");
        c->callback([this, c] {
            Presentation p = presentation_arg(S(c, "pres"));
            RepeatResult r = power_repeat_search(p, word_arg(S(c, "w"), p.kind), N(c, "max-exp"), g.budget, g.stage);
            json j = record("repeat");
            j["found"] = r.found;
            j["n"] = r.found ? json(r.n) : json(nullptr);
            j["m"] = r.found ? json(r.m) : json(nullptr);
            emit(j);
        });

        c = m->add_subcommand("family", "member of the finitely generated family at --stage");
        num(c, "n", 1, "generators x_0..x_n");
        str(c, "program", "relation enumerator");
        c->callback([this, c] {
            json j = record("presentation");
            j["stage"] = g.stage;
            j["text"] = presentation_text(fg_family(N(c, "n"), program_arg(S(c, "program")), g.stage), g.stage);
            emit(j);
        });

        c = m->add_subcommand("show", "canonical text of a presentation at --stage");
        str(c, "pres", "presentation file");
        c->callback([this, c] {
            json j = record("presentation");
            j["stage"] = g.stage;
            j["text"] = presentation_text(presentation_arg(S(c, "pres")), g.stage);
            emit(j);
        });
    }

    PriorityConfig config_from(CLI::App* c) {
        PriorityConfig cfg;
        cfg.family = program_arg(S(c, "family"));
        cfg.v_program = program_arg(S(c, "v"));
        cfg.candidates = naturals_arg(S(c, "candidates"));
        cfg.family_count = N(c, "family-count");
        cfg.stages = N(c, "stages");
        return cfg;
    }

    void priority_options(CLI::App* c) {
        str(c, "family", "program enumerating the family's pairs");
        str(c, "v", "program enumerating V");
        s[key(c) + ".candidates"] = "0 1 2 3 4";
        c->add_option("--candidates", s[key(c) + ".candidates"], "candidate reduction indices")
            ->capture_default_str();
        num(c, "family-count", 1, "family members E_0..E_{count-1} with Q-requirements");
        num(c, "stages", 500, "stages to run");
    }

    void priority_commands(CLI::App* m) {
        auto* c = m->add_subcommand("run", "run the construction and write its log");
        priority_options(c);
        str(c, "log", "log file; the summary record goes to stdout", false);
        c->callback([this, c] {
            PriorityRun run = run_priority(config_from(c));
            std::string text = log_to_jsonl(run);
            if (S(c, "log").empty()) {
                std::cout << text;
                return;
            }
            write_file(S(c, "log"), text);
            json j = record("priority-run");
            j["stages"] = run.log.size();
            j["merged_blocks"] = blocks(run.final_e.blocks()).size();
            j["log"] = S(c, "log");
            emit(j);
        });

        c = m->add_subcommand("audit", "replay a log and check the construction's invariants");
        str(c, "log", "log file");
        c->callback([this, c] {
            ParsedLog parsed = as_usage("log", [&] { return parse_log(read_file(S(c, "log"))); });
            AuditReport r = audit(parsed.config, parsed.log, e_from_log(parsed.log), g.budget);
            json j = record("audit");
            json v = json::array();
            for (const auto& x : r.violations) v.push_back(json::object({{"clause", std::string(1, x.clause)}, {"detail", x.detail}}));
            j["violations"] = v;
            emit(j);
        });

        c = m->add_subcommand("evidence", "the parameter M of Q_<i,j> after --stages stages");
        priority_options(c);
        str(c, "i", "family member");
        str(c, "j", "candidate");
        c->callback([this, c] {
            PriorityConfig cfg = config_from(c);
            PriorityConstruction pc(cfg);
            for (Stage k = 0; k < cfg.stages; ++k) pc.run_stage();
            Evidence ev = pc.evidence_param(natural_arg(S(c, "i")), program_arg(S(c, "j")), pc.stage() + 1);
            json j = record("evidence");
            j["stage"] = pc.stage() + 1;
            j["M"] = json::array({nat(ev.v), ev.k});
            emit(j);
        });
    }

    void ring_commands(CLI::App* m) {
        auto* c = m->add_subcommand("parse", "canonical text and code of an element");
        str(c, "a", "element");
        c->callback([this, c] {
            json j = record("element");
            j["element"] = element_json(element_arg(S(c, "a")));
            emit(j);
        });

        c = m->add_subcommand("decode", "element with the given code");
        str(c, "code", "code");
        c->callback([this, c] {
            json j = record("element");
            j["element"] = element_json(element_decode(natural_arg(S(c, "code"))));
            emit(j);
        });

        for (const char* op : {"add", "sub", "mul"}) {
            c = m->add_subcommand(op, std::string("a ") + op + " b in the free ring");
            str(c, "a", "element");
            str(c, "b", "element");
            c->callback([this, c, op] {
                RingElement a = element_arg(S(c, "a")), b = element_arg(S(c, "b"));
                std::string o = op;
                json j = record("element");
                j["element"] = element_json(o == "add" ? add(a, b) : o == "sub" ? sub(a, b) : mul(a, b));
                emit(j);
            });
        }

        c = m->add_subcommand("neg", "-a");
        str(c, "a", "element");
        c->callback([this, c] {
            json j = record("element");
            j["element"] = element_json(neg(element_arg(S(c, "a"))));
            emit(j);
        });

        c = m->add_subcommand("substitute", "send x_i to 0 for i in --zero and to 1 for i in --one");
        str(c, "a", "element");
        str(c, "zero", "generator indices", false);
        str(c, "one", "generator indices", false);
        c->callback([this, c] {
            auto z = naturals_arg(S(c, "zero")), o = naturals_arg(S(c, "one"));
            std::set<Natural> zs(z.begin(), z.end()), os(o.begin(), o.end());
            for (const auto& i : zs)
                if (os.count(i)) throw UsageError("--zero and --one overlap");
            json j = record("element");
            j["element"] = element_json(substitute(element_arg(S(c, "a")), zs, os));
            emit(j);
        });

        c = m->add_subcommand("ideal", "U_s and V_s at --stage");
        c->callback([this] {
            IdealStage st = ideal_stage(g.stage);
            json j = record("ideal");
            j["stage"] = g.stage;
            j["u"] = nats(st.u);
            j["v"] = nats(st.v);
            emit(j);
        });

        c = m->add_subcommand("member", "a lies in the ideal at --stage");
        str(c, "a", "element");
        c->callback([this, c] {
            json j = record("member");
            j["member"] = ideal_member_at(element_arg(S(c, "a")), ideal_stage(g.stage));
            emit(j);
        });

        c = m->add_subcommand("equal", "a = b modulo the ideal at --stage");
        str(c, "a", "element");
        str(c, "b", "element");
        c->callback([this, c] {
            json j = record("equal");
            j["equal"] = ring_equal_at(element_arg(S(c, "a")), element_arg(S(c, "b")), g.stage);
            emit(j);
        });

        c = m->add_subcommand("mreduction", "i in U iff x_i = 0 and i in V iff x_i = 1, for i < bound");
        num(c, "bound", 50, "indices checked");
        c->callback([this, c] {
            MReductionReport r = mreduction_check(N(c, "bound"), g.stage);
            json j = record("mreduction");
            j["stage"] = g.stage;
            j["discrepancies"] = nats(r.discrepancies);
            emit(j);
        });

        c = m->add_subcommand("productive", "productive element code for a pair of indices");
        str(c, "a", "index enumerating element codes");
        str(c, "b", "index enumerating element codes");
        c->callback([this, c] {
            json j = record("element");
            j["element"] = element_json(element_decode(ring_productive(program_arg(S(c, "a")), program_arg(S(c, "b")))));
            emit(j);
        });

        c = m->add_subcommand("ufp", "correction element f(D, e, x); --check also evaluates phi_e(x)");
        str(c, "d", "elements of D separated by ';'");
        str(c, "e", "program");
        str(c, "x", "input");
        auto* check = c->add_flag("--check", "compare with phi_e(x) at --stage");
        c->callback([this, c, check] {
            UfpRequest req;
            std::set<Natural> codes;
            std::istringstream in(S(c, "d"));
            std::string item;
            while (std::getline(in, item, ';'))
                if (item.find_first_not_of(" \t") != std::string::npos) codes.insert(element_code(element_arg(item)));
            req.d.assign(codes.begin(), codes.end());
            if (req.d.empty()) throw UsageError("--d must name at least one element");
            req.e = program_arg(S(c, "e"));
            req.x = natural_arg(S(c, "x"));
            RingElement f = ufp_f(req);
            json j = record("ufp");
            j["f"] = element_json(f);
            json terms = json::array();
            for (const auto& t : ufp_terms(req))
                terms.push_back(json::object({{"d", nat(t.d)}, {"u", nat(t.u)}, {"v", nat(t.v)}, {"c", nat(t.c_index)}}));
            j["terms"] = terms;
            if (*check) {
                EvalOutcome o = eval(req.e, req.x, g.budget);
                j["converged"] = o.converged;
                j["equal"] = o.converged ? json(ring_equal_at(f, element_decode(o.value), g.stage)) : json(nullptr);
            }
            emit(j);
        });

        c = m->add_subcommand("diagonal", "u + 1");
        str(c, "a", "element");
        c->callback([this, c] {
            json j = record("element");
            j["element"] = element_json(ring_diagonal(element_arg(S(c, "a"))));
            emit(j);
        });

        c = m->add_subcommand("separation", "fresh generators that neither commute nor are idempotent");
        c->callback([this] {
            SeparationReport r = separation_witnesses(g.stage);
            json j = record("separation");
            j["stage"] = g.stage;
            j["a"] = nat(r.a);
            j["b"] = nat(r.b);
            j["non_commutative"] = r.non_commutative;
            j["non_boolean"] = r.non_boolean;
            emit(j);
        });
    }
};

json error_record(const std::string& kind, const std::string& message) {
    json j = record("error");
    j["kind"] = kind;
    j["message"] = message;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    Cli cli;
    try {
        cli.app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return cli.app.exit(e);
    } catch (const CLI::ParseError& e) {
        cli.app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        emit(error_record("usage", e.what()));
        return 2;
    } catch (const NonTotalWithinBudget& e) {
        json j = error_record("NonTotalWithinBudget", e.what());
        j["argument"] = nat(e.argument);
        emit(j);
        return 1;
    } catch (const std::exception& e) {
        emit(error_record("domain", e.what()));
        return 1;
    }
    return 0;
}
