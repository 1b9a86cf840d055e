#include "ceerwb/machine.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "ceerwb/ring.hpp"

namespace ceerwb {

namespace {

struct OpInfo {
    const char* name;
    const char* operands;  // one letter per operand: r register, j jump target, k constant
};

constexpr OpInfo kOpInfo[kOpcodes] = {
    {"INC", "r"},      {"DEC", "rj"},     {"JMP", "j"},     {"HALT", ""},     {"SET", "rk"},
    {"MOV", "rr"},     {"ADD", "rrr"},    {"EQ", "rrr"},    {"LE", "rrr"},    {"PAIR", "rrr"},
    {"UNPAIR", "rrr"}, {"EVAL", "rrr"},   {"BEVAL", "rrrrr"}, {"SMN", "rrr"}, {"LIB", "rrr"},
    {"RGEN", "rr"},    {"RADD", "rrr"},   {"KEQ", "rrrr"},  {"UNTUP", "rr"},
};

const OpInfo& info(Op op) { return kOpInfo[static_cast<unsigned>(op)]; }

// Operands o1..on nest to the right: () -> 0, (o) -> o, (o1, rest) -> <o1, rest>.
Natural nest(const std::vector<Natural>& ops, std::size_t from = 0) {
    if (from >= ops.size()) return 0;
    if (from + 1 == ops.size()) return ops[from];
    return pair(ops[from], nest(ops, from + 1));
}

std::vector<Natural> unnest(Natural arg, std::size_t n) {
    std::vector<Natural> out;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        auto [h, rest] = unpair(arg);
        out.push_back(h);
        arg = rest;
    }
    if (n > 0) out.push_back(arg);
    return out;
}

}  // namespace

// --- numbering --------------------------------------------------------------

DecodedIndex decode_index(const ProgramIndex& e) {
    DecodedIndex d;
    Natural m = e / 3;
    switch (static_cast<int>(e % 3)) {
        case 0:
            d.form = IndexForm::Register;
            break;
        case 1: {
            d.form = IndexForm::Param;
            auto [a, n] = unpair(m);
            d.base = a;
            d.param = n;
            break;
        }
        default:
            d.form = IndexForm::Library;
            d.slot = static_cast<unsigned>(m % library::Count);
            d.param = m / library::Count;
            break;
    }
    return d;
}

Natural instruction_code(const Instruction& ins) {
    const OpInfo& oi = info(ins.op);
    std::vector<Natural> ops;
    std::size_t ri = 0;
    for (const char* c = oi.operands; *c; ++c) {
        if (*c == 'r') ops.push_back(ins.reg[ri++]);
        else ops.push_back(ins.imm);
    }
    return Natural(static_cast<unsigned>(ins.op)) + Natural(kOpcodes) * nest(ops);
}

Instruction decode_instruction(const Natural& code) {
    Instruction ins;
    ins.op = static_cast<Op>(static_cast<unsigned>(code % kOpcodes));
    const OpInfo& oi = info(ins.op);
    std::string kinds = oi.operands;
    auto ops = unnest(code / kOpcodes, kinds.size());
    std::size_t ri = 0;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        if (kinds[i] == 'r') ins.reg[ri++] = static_cast<std::uint8_t>(static_cast<unsigned>(ops[i] % kRegisters));
        else ins.imm = ops[i];
    }
    return ins;
}

Natural program_code(const Program& p) {
    std::vector<Natural> codes;
    codes.reserve(p.size());
    for (const auto& ins : p) codes.push_back(instruction_code(ins));
    return list_code(codes);
}

Program program_decode(const Natural& code) {
    Program p;
    for (const auto& c : list_decode(code)) p.push_back(decode_instruction(c));
    return p;
}

ProgramIndex register_index(const Program& p) { return 3 * program_code(p); }

ProgramIndex library_index(unsigned slot, const Natural& n) {
    if (slot >= library::Count) throw std::invalid_argument("library slot out of range");
    return 3 * (n * library::Count + slot) + 2;
}

ProgramIndex parameterize(const ProgramIndex& e, const Natural& n) { return 3 * pair(e, n) + 1; }

ProgramIndex fixpoint(const ProgramIndex& t) { return library_index(library::Diag, t); }

ProgramIndex EiPair::productive(const ProgramIndex& u, const ProgramIndex& v) const {
    return ceerwb::productive(u, v);
}

EiPair ei_pair() { return {library_index(library::USide, 0), library_index(library::VSide, 0)}; }

ProgramIndex productive(const ProgramIndex& u, const ProgramIndex& v) {
    return library_index(library::PDiag, pair(u, v));
}

// --- text -------------------------------------------------------------------

namespace {

std::string upper(std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return s;
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        for (auto& ch : line)
            if (ch == ';' || ch == ',') ch = ' ';
        std::istringstream words(line);
        std::string w;
        while (words >> w) out.push_back(w);
    }
    return out;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (ch < '0' || ch > '9') return false;
    return true;
}

}  // namespace

Program assemble(const std::string& text) {
    struct Pending {
        std::size_t instr;
        std::string label;
    };
    Program prog;
    std::map<std::string, std::size_t> labels;
    std::vector<Pending> pending;
    auto toks = tokenize(text);
    for (std::size_t i = 0; i < toks.size();) {
        const std::string& tok = toks[i];
        if (tok.size() > 1 && tok.back() == ':') {
            std::string name = tok.substr(0, tok.size() - 1);
            if (!labels.emplace(name, prog.size()).second) throw std::invalid_argument("duplicate label: " + name);
            ++i;
            continue;
        }
        std::string mn = upper(tok);
        unsigned opnum = kOpcodes;
        for (unsigned k = 0; k < kOpcodes; ++k)
            if (mn == kOpInfo[k].name) opnum = k;
        if (opnum == kOpcodes) throw std::invalid_argument("unknown mnemonic: " + tok);
        ++i;
        Instruction ins;
        ins.op = static_cast<Op>(opnum);
        std::size_t ri = 0;
        for (const char* c = kOpInfo[opnum].operands; *c; ++c) {
            if (i >= toks.size()) throw std::invalid_argument("missing operand for " + mn);
            std::string arg = toks[i++];
            if (*c == 'r') {
                if (!arg.empty() && (arg[0] == 'r' || arg[0] == 'R')) arg = arg.substr(1);
                if (!all_digits(arg) || arg.size() > 2 || std::stoul(arg) >= kRegisters)
                    throw std::invalid_argument("bad register operand: " + arg);
                ins.reg[ri++] = static_cast<std::uint8_t>(std::stoul(arg));
            } else if (*c == 'j' && !arg.empty() && arg[0] == '@') {
                pending.push_back({prog.size(), arg.substr(1)});
            } else {
                if (!all_digits(arg)) throw std::invalid_argument("bad numeric operand: " + arg);
                ins.imm = Natural(arg);
            }
        }
        prog.push_back(ins);
    }
    for (const auto& p : pending) {
        auto it = labels.find(p.label);
        if (it == labels.end()) throw std::invalid_argument("undefined label: " + p.label);
        prog[p.instr].imm = it->second;
    }
    return prog;
}

std::string disassemble(const Program& p) {
    std::ostringstream out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out << "; ";
        const OpInfo& oi = info(p[i].op);
        out << oi.name;
        std::size_t ri = 0;
        for (const char* c = oi.operands; *c; ++c) {
            out << ' ';
            if (*c == 'r') out << static_cast<unsigned>(p[i].reg[ri++]);
            else out << p[i].imm;
        }
    }
    return out.str();
}

ProgramIndex parse_program(const std::string& text) {
    std::string t;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        t += line + "\n";
    }
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    std::size_t b = 0;
    while (b < t.size() && std::isspace(static_cast<unsigned char>(t[b]))) ++b;
    t = t.substr(b);
    if (all_digits(t)) return Natural(t);
    return register_index(assemble(t));
}

std::string describe_index(const ProgramIndex& e) {
    DecodedIndex d = decode_index(e);
    switch (d.form) {
        case IndexForm::Register: {
            std::string s = disassemble(program_decode(e / 3));
            return s.empty() ? "(empty program)" : s;
        }
        case IndexForm::Param:
            return "param(" + to_string(d.base) + ", " + to_string(d.param) + ")";
        default:
            return std::string("lib ") + library::name(d.slot) + "(" + to_string(d.param) + ")";
    }
}

// --- interpreter ------------------------------------------------------------

namespace {

struct Ctx {
    Budget rem;
    unsigned depth;
};

using Result = std::optional<Natural>;

bool too_big(const Natural& v) { return v != 0 && boost::multiprecision::msb(v) >= kMaxValueBits; }

// Decoded register programs, keyed by index. Purely a cache: decoding is deterministic.
std::shared_ptr<const Program> cached_program(const Natural& e) {
    thread_local std::map<Natural, std::shared_ptr<const Program>> cache;
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    if (cache.size() >= 4096) cache.clear();
    auto p = std::make_shared<const Program>(program_decode(e / 3));
    cache.emplace(e, p);
    return p;
}

Result run_index(const Natural& e, const Natural& x, Ctx& ctx);

// Runs a sub-computation with its own allowance of at most t steps, charged to
// ctx. Returns nullopt in `outer_diverged` style when the caller cannot afford t.
struct Bounded {
    bool afforded;  // false: the caller ran out first and diverges
    Result value;
};

Bounded run_bounded(const Natural& e, const Natural& x, const Natural& t, Ctx& ctx) {
    bool full = t <= ctx.rem;
    Budget local = full ? t.convert_to<Budget>() : ctx.rem;
    Ctx inner{local, ctx.depth + 1};
    Result r = run_index(e, x, inner);
    ctx.rem -= local - inner.rem;
    if (r) return {true, r};
    return {full, std::nullopt};
}

Result run_program(const Program& p, const Natural& x, Ctx& ctx) {
    std::array<Natural, kRegisters> R{};
    R[1] = x;
    const std::size_t n = p.size();
    std::size_t pc = 0;
    auto jump = [&](const Natural& j) { pc = j >= n ? n : j.convert_to<std::size_t>(); };
    const Natural u_side = library_index(library::USide, 0);
    const Natural v_side = library_index(library::VSide, 0);
    for (;;) {
        if (pc >= n) return R[0];
        const Instruction& ins = p[pc];
        if (ins.op == Op::HALT) return R[0];
        if (ctx.rem == 0) return std::nullopt;
        --ctx.rem;
        ++pc;
        const auto& g = ins.reg;
        int dest = -1;  // register whose size must be checked
        switch (ins.op) {
            case Op::INC:
                ++R[g[0]];
                dest = g[0];
                break;
            case Op::DEC:
                if (R[g[0]] == 0) jump(ins.imm);
                else --R[g[0]];
                break;
            case Op::JMP:
                jump(ins.imm);
                break;
            case Op::HALT:
                break;
            case Op::SET:
                R[g[0]] = ins.imm;
                dest = g[0];
                break;
            case Op::MOV:
                R[g[1]] = R[g[0]];
                break;
            case Op::ADD:
                R[g[2]] = R[g[0]] + R[g[1]];
                dest = g[2];
                break;
            case Op::EQ:
                R[g[2]] = R[g[0]] == R[g[1]] ? 1 : 0;
                break;
            case Op::LE:
                R[g[2]] = R[g[0]] <= R[g[1]] ? 1 : 0;
                break;
            case Op::PAIR:
                R[g[2]] = pair(R[g[0]], R[g[1]]);
                dest = g[2];
                break;
            case Op::UNPAIR: {
                auto [a, b] = unpair(R[g[0]]);
                R[g[1]] = a;
                R[g[2]] = b;
                break;
            }
            case Op::EVAL: {
                ++ctx.depth;
                Result r = run_index(R[g[0]], R[g[1]], ctx);
                --ctx.depth;
                if (!r) return std::nullopt;
                R[g[2]] = *r;
                break;
            }
            case Op::BEVAL: {
                Bounded b = run_bounded(R[g[0]], R[g[1]], R[g[2]], ctx);
                if (!b.afforded) return std::nullopt;
                R[g[3]] = b.value ? *b.value : Natural(0);
                R[g[4]] = b.value ? 1 : 0;
                break;
            }
            case Op::SMN:
                R[g[2]] = parameterize(R[g[0]], R[g[1]]);
                dest = g[2];
                break;
            case Op::LIB:
                R[g[2]] = library_index(static_cast<unsigned>(R[g[0]] % library::Count), R[g[1]]);
                dest = g[2];
                break;
            case Op::RGEN:
                R[g[1]] = element_code(RingElement::generator(R[g[0]]));
                dest = g[1];
                break;
            case Op::RADD:
                R[g[2]] = element_code(add(element_decode(R[g[0]]), element_decode(R[g[1]])));
                dest = g[2];
                break;
            case Op::KEQ: {
                RingElement diff = sub(element_decode(R[g[0]]), element_decode(R[g[1]]));
                const Natural t = R[g[2]];
                std::set<Natural> zero, one;
                for (const auto& gen : diff.generators()) {
                    if (gen > t) continue;
                    Bounded bu = run_bounded(u_side, gen, t, ctx);
                    if (!bu.afforded) return std::nullopt;
                    if (bu.value && *bu.value == 1) {
                        zero.insert(gen);
                        continue;
                    }
                    Bounded bv = run_bounded(v_side, gen, t, ctx);
                    if (!bv.afforded) return std::nullopt;
                    if (bv.value && *bv.value == 1) one.insert(gen);
                }
                R[g[3]] = substitute(diff, zero, one).is_zero() ? 1 : 0;
                break;
            }
            case Op::UNTUP: {
                auto parts = untuple4(R[g[0]]);
                for (unsigned i = 0; i < 4; ++i) R[(g[1] + i) % kRegisters] = parts[i];
                break;
            }
        }
        if (dest >= 0 && too_big(R[dest])) {
            ctx.rem = 0;
            return std::nullopt;
        }
    }
}

Result run_index(const Natural& e, const Natural& x, Ctx& ctx) {
    if (ctx.depth > kMaxDepth) {
        ctx.rem = 0;
        return std::nullopt;
    }
    DecodedIndex d = decode_index(e);
    if (d.form == IndexForm::Register) return run_program(*cached_program(e), x, ctx);
    // Wrapper forms cost one step before the wrapped program starts.
    if (ctx.rem == 0) return std::nullopt;
    --ctx.rem;
    Natural input = d.form == IndexForm::Param ? pair(d.param, x) : pair(d.param, pair(e, x));
    if (too_big(input)) {
        ctx.rem = 0;
        return std::nullopt;
    }
    ++ctx.depth;
    Result r = d.form == IndexForm::Param ? run_index(d.base, input, ctx)
                                          : run_program(library::program(d.slot), input, ctx);
    --ctx.depth;
    return r;
}

}  // namespace

EvalOutcome eval(const ProgramIndex& e, const Natural& x, Budget budget) {
    Ctx ctx{budget, 0};
    Result r = run_index(e, x, ctx);
    EvalOutcome out;
    out.steps = budget - ctx.rem;
    if (r) {
        out.converged = true;
        out.value = *r;
    }
    return out;
}

std::set<Natural> enumerate_w(const ProgramIndex& e, std::uint64_t s) {
    std::set<Natural> out;
    for (std::uint64_t x = 0; x <= s; ++x)
        if (in_w(e, x, s)) out.insert(x);
    return out;
}

bool in_w(const ProgramIndex& e, const Natural& x, std::uint64_t s) {
    if (x > s) return false;
    EvalOutcome o = eval(e, x, s);
    return o.converged && o.value == 1;
}

// --- samples ----------------------------------------------------------------

namespace samples {

namespace {
ProgramIndex asm_index(const std::string& text) { return register_index(assemble(text)); }
}  // namespace

ProgramIndex identity() { return asm_index("MOV 1 0"); }
ProgramIndex successor() { return asm_index("MOV 1 0; INC 0"); }
ProgramIndex first_projection() { return asm_index("UNPAIR 1 0 2"); }
ProgramIndex second_projection() { return asm_index("UNPAIR 1 2 0"); }
ProgramIndex add_pair() { return asm_index("UNPAIR 1 2 3; ADD 2 3 0"); }
ProgramIndex swap_pair() { return asm_index("UNPAIR 1 2 3; PAIR 3 2 0"); }
ProgramIndex eq_pair() { return asm_index("UNPAIR 1 2 3; EQ 2 3 0"); }
// x = 2k halts after 3k+2 steps with 1; odd x halts with 0.
ProgramIndex accept_evens() {
    return asm_index("loop: DEC 1 @even; DEC 1 @odd; JMP @loop; even: SET 0 1; HALT; odd: HALT");
}
ProgramIndex accept_zero() { return asm_index("DEC 1 @yes; HALT; yes: SET 0 1"); }
ProgramIndex reject_all() { return 0; }
ProgramIndex forever_loop() { return asm_index("JMP 0"); }
ProgramIndex halve() { return asm_index("loop: DEC 1 @done; DEC 1 @done; INC 0; JMP @loop; done: HALT"); }
ProgramIndex twice() { return asm_index("MOV 1 0; ADD 0 0 0"); }
ProgramIndex constant(const Natural& k) { return asm_index("SET 0 " + to_string(k)); }
ProgramIndex ring_plus_one() { return asm_index("SET 2 1; RADD 1 2 0"); }
ProgramIndex param_transformer(const ProgramIndex& p) { return asm_index("SET 2 " + to_string(p) + "; SMN 2 1 0"); }

}  // namespace samples

}  // namespace ceerwb
