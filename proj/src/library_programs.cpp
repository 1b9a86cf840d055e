// Register programs behind the library indices. Each receives <n, <self, x>>
// in R1, where n is the index parameter and self the library index itself.

#include <array>
#include <stdexcept>
#include <string>

#include "ceerwb/machine.hpp"

namespace ceerwb::library {

namespace {

// Accepts x iff phi_x(x) = 0.
constexpr const char* kUSide = R"(
    UNPAIR 1 2 3
    UNPAIR 3 4 1        # R1 = x
    EVAL 1 1 5
    DEC 5 @yes
loop:
    JMP @loop
yes:
    SET 0 1
    HALT
)";

// Accepts x iff phi_x(x) = 1.
constexpr const char* kVSide = R"(
    UNPAIR 1 2 3
    UNPAIR 3 4 1
    EVAL 1 1 5
    DEC 5 @loop
    DEC 5 @yes
loop:
    JMP @loop
yes:
    SET 0 1
    HALT
)";

// n = <u,v>. Searches with bounds t = 1, 2, 4, ... for self in W_u (answer 1)
// or W_v (answer 0); the input x is ignored.
constexpr const char* kPDiag = R"(
    UNPAIR 1 2 3        # R2 = <u,v>
    UNPAIR 3 6 7        # R6 = self
    UNPAIR 2 4 5        # R4 = u, R5 = v
    SET 8 1             # t
    SET 9 1
round:
    BEVAL 4 6 8 10 11
    DEC 11 @tryv
    EQ 10 9 12
    DEC 12 @tryv
    SET 0 1
    HALT
tryv:
    BEVAL 5 6 8 10 11
    DEC 11 @grow
    EQ 10 9 12
    DEC 12 @grow
    SET 0 0
    HALT
grow:
    ADD 8 8 8
    JMP @round
)";

// n = t. phi_self(x) = phi_{phi_t(self)}(x).
constexpr const char* kDiag = R"(
    UNPAIR 1 2 3        # R2 = t
    UNPAIR 3 4 5        # R4 = self, R5 = x
    EVAL 2 4 6
    EVAL 6 5 0
    HALT
)";

// n = q. The productive search for the controlled pair (UFP_U[q], UFP_V[q]),
// looking for the ring code of x_self; the input is ignored.
constexpr const char* kUfpDiag = R"(
    UNPAIR 1 2 3        # R2 = q
    UNPAIR 3 4 5        # R4 = self
    SET 6 5
    LIB 6 2 6           # R6 = u
    SET 7 6
    LIB 7 2 7           # R7 = v
    RGEN 4 13           # R13 = code of x_self
    SET 8 1
    SET 9 1
round:
    BEVAL 6 13 8 10 11
    DEC 11 @tryv
    EQ 10 9 12
    DEC 12 @tryv
    SET 0 1
    HALT
tryv:
    BEVAL 7 13 8 10 11
    DEC 11 @grow
    EQ 10 9 12
    DEC 12 @grow
    SET 0 0
    HALT
grow:
    ADD 8 8 8
    JMP @round
)";

// Shared body of the controlled enumerations. n = q = tuple4(pos, e, x, D),
// input i is a ring code. Accepts i when i =_{K_t} CLASS for some t, and, once
// phi_e(x) = y converges at a bound t where y =_{K_t} d for some d in D, also
// accepts the code of x_{c_q} according to TAKE (whether the first such d is
// at position pos).
std::string ufp_side(bool v_side) {
    std::string take = v_side ? "    DEC 14 @takeit\n    JMP @settled\ntakeit:\n" : "    DEC 14 @settled\n";
    return std::string(R"(
    UNPAIR 1 2 3        # R2 = q
    UNPAIR 3 4 5        # R5 = i
    UNTUP 2 6           # R6 = pos, R7 = e, R8 = x, R9 = D
    SET 11 4
    LIB 11 2 11
    RGEN 11 11          # R11 = code of x_{c_q}
    SET 12 )") + (v_side ? "1" : "0") + R"(
    SET 10 1            # t
unresolved:
    KEQ 5 12 10 13
    DEC 13 @probe
accept:
    SET 0 1
    HALT
probe:
    BEVAL 7 8 10 15 14  # R15 = y
    DEC 14 @grow
    MOV 9 0             # R0 = rest of D, R1 = base, R3 = position
    SET 1 0
    SET 3 0
scan:
    DEC 0 @grow
    UNPAIR 0 4 0
    ADD 1 4 4           # R4 = d
    KEQ 15 4 10 14
    DEC 14 @advance
    EQ 3 6 14
)" + take + R"(
    EQ 5 11 14
    DEC 14 @settled
    JMP @accept
advance:
    MOV 4 1
    INC 1
    INC 3
    JMP @scan
grow:
    ADD 10 10 10
    JMP @unresolved
settled:
    ADD 10 10 10
    KEQ 5 12 10 13
    DEC 13 @settled
    JMP @accept
)";
}

// n = a. phi_self(x) = phi_a(code of x_x): pulls a set of ring codes back
// along i -> x_i.
constexpr const char* kPull = R"(
    UNPAIR 1 2 3        # R2 = a
    UNPAIR 3 4 5        # R5 = x
    RGEN 5 6
    EVAL 2 6 0
    HALT
)";

constexpr std::array<const char*, Count> kNames = {"uside", "vside", "pdiag", "diag", "ufp-diag", "ufp-u", "ufp-v", "pull"};

std::array<Program, Count> build() {
    std::array<Program, Count> p;
    p[USide] = assemble(kUSide);
    p[VSide] = assemble(kVSide);
    p[PDiag] = assemble(kPDiag);
    p[Diag] = assemble(kDiag);
    p[UfpDiag] = assemble(kUfpDiag);
    p[UfpU] = assemble(ufp_side(false));
    p[UfpV] = assemble(ufp_side(true));
    p[Pull] = assemble(kPull);
    return p;
}

}  // namespace

const Program& program(unsigned slot) {
    static const std::array<Program, Count> programs = build();
    if (slot >= Count) throw std::out_of_range("library slot");
    return programs[slot];
}

const char* name(unsigned slot) {
    if (slot >= Count) throw std::out_of_range("library slot");
    return kNames[slot];
}

}  // namespace ceerwb::library
