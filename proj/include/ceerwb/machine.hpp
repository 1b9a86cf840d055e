#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ceerwb/pairing.hpp"

namespace ceerwb {

using ProgramIndex = Natural;
using Budget = std::uint64_t;

constexpr unsigned kRegisters = 16;
constexpr unsigned kOpcodes = 19;
// Evaluations nested deeper than this never halt.
constexpr unsigned kMaxDepth = 1000;
// A register value wider than this many bits makes the evaluation never halt.
constexpr unsigned kMaxValueBits = 4096;

// Every instruction costs one step. Operand letters: r register, j jump
// target (instruction number; past the end halts), k constant.
enum class Op : std::uint8_t {
    INC,     // r         R[r] += 1
    DEC,     // r j       if R[r] == 0 goto j else R[r] -= 1
    JMP,     // j
    HALT,    //           output R0
    SET,     // r k       R[r] = k
    MOV,     // a b       R[b] = R[a]
    ADD,     // a b c     R[c] = R[a] + R[b]
    EQ,      // a b c     R[c] = (R[a] == R[b])
    LE,      // a b c     R[c] = (R[a] <= R[b])
    PAIR,    // a b c     R[c] = <R[a], R[b]>
    UNPAIR,  // a b c     R[b] = (R[a])_0, R[c] = (R[a])_1
    EVAL,    // e x r     R[r] = phi_{R[e]}(R[x]); shares the remaining budget
    BEVAL,   // e x t r f run phi_{R[e]}(R[x]) for at most R[t] steps; f = 1 and r = value
             //           if it halted, else f = 0; the inner steps are charged
    SMN,     // a b r     R[r] = parameterize(R[a], R[b])
    LIB,     // k n r     R[r] = library_index(R[k] mod L, R[n])
    RGEN,    // a r       R[r] = ring code of x_{R[a]}
    RADD,    // a b r     R[r] = ring code of the sum of the coded elements
    KEQ,     // a b t r   R[r] = (coded elements equal modulo K_{R[t]}); the
             //           membership evaluations are charged
    UNTUP,   // a r       R[r..r+3] = untuple4(R[a])
};

struct Instruction {
    Op op = Op::HALT;
    std::array<std::uint8_t, 5> reg{};  // register operands in order
    Natural imm = 0;                    // jump target or constant
};

using Program = std::vector<Instruction>;

struct EvalOutcome {
    bool converged = false;
    Natural value = 0;  // meaningful only when converged
    Budget steps = 0;   // steps consumed
};

// --- numbering --------------------------------------------------------------
// e mod 3 == 0: register program with list code e/3
// e mod 3 == 1: parameterized index, (e-1)/3 = <a,n>, phi_e(x) = phi_a(<n,x>)
// e mod 3 == 2: library program k with parameter n, (e-2)/3 = nL + k;
//               the program receives <n, <e, x>>
enum class IndexForm { Register, Param, Library };

struct DecodedIndex {
    IndexForm form = IndexForm::Register;
    Natural base = 0;    // Param: a
    Natural param = 0;   // Param / Library: n
    unsigned slot = 0;   // Library: k
};

DecodedIndex decode_index(const ProgramIndex& e);
Natural instruction_code(const Instruction& ins);
Instruction decode_instruction(const Natural& code);
Natural program_code(const Program& p);
Program program_decode(const Natural& code);
ProgramIndex register_index(const Program& p);
ProgramIndex library_index(unsigned slot, const Natural& n);

// --- text -------------------------------------------------------------------
// Mnemonics separated by whitespace or ';'. Labels are written "name:" and
// referenced as "@name"; '#' starts a comment.
Program assemble(const std::string& text);
std::string disassemble(const Program& p);
// Decimal index or mnemonic program text.
ProgramIndex parse_program(const std::string& text);
// Mnemonic text for register programs, a structural description otherwise.
std::string describe_index(const ProgramIndex& e);

// --- operations -------------------------------------------------------------
EvalOutcome eval(const ProgramIndex& e, const Natural& x, Budget budget);
ProgramIndex parameterize(const ProgramIndex& e, const Natural& n);
ProgramIndex fixpoint(const ProgramIndex& t);
// W_{e,s} = { x <= s : eval(e,x,s) converges to 1 }
std::set<Natural> enumerate_w(const ProgramIndex& e, std::uint64_t s);
bool in_w(const ProgramIndex& e, const Natural& x, std::uint64_t s);

struct EiPair {
    ProgramIndex u_side;  // W = { e : phi_e(e) = 0 }
    ProgramIndex v_side;  // W = { e : phi_e(e) = 1 }
    ProgramIndex productive(const ProgramIndex& u, const ProgramIndex& v) const;
};
EiPair ei_pair();
ProgramIndex productive(const ProgramIndex& u, const ProgramIndex& v);

namespace library {
enum Slot : unsigned { USide, VSide, PDiag, Diag, UfpDiag, UfpU, UfpV, Pull, Count };
const Program& program(unsigned slot);
const char* name(unsigned slot);
}  // namespace library

// Hand-written programs used by examples, tests and the command line.
namespace samples {
ProgramIndex identity();
ProgramIndex successor();
ProgramIndex first_projection();
ProgramIndex second_projection();
ProgramIndex add_pair();
ProgramIndex swap_pair();
ProgramIndex eq_pair();
ProgramIndex accept_evens();
ProgramIndex accept_zero();
ProgramIndex reject_all();
ProgramIndex forever_loop();
ProgramIndex halve();
ProgramIndex twice();
ProgramIndex constant(const Natural& k);
ProgramIndex ring_plus_one();
// Transformers t for fixpoint: phi_t(e) = parameterize(p, e).
ProgramIndex param_transformer(const ProgramIndex& p);
}  // namespace samples

}  // namespace ceerwb
