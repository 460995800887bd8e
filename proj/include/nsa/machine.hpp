// machine.hpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
//
// A deterministic register machine with an oracle-query instruction.
// Instructions: INC r, DECJZ r label, QUERY rdst rsrc, HALT rout.
// Execution starts at step 1; DECJZ jumps on zero, otherwise decrements and
// falls through; QUERY writes A(value of rsrc) into rdst; running past the
// end of the program never halts.  The encoding of programs as naturals is
// documented bit-exactly in docs/encoding.md; decoding is total (invalid
// codes decode to the immediately-looping program).
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsa/pairing.hpp"

namespace nsa::machines {

enum class Op : std::uint8_t { Inc = 0, Decjz = 1, Query = 2, Halt = 3 };

struct Instr {
  Op op;
  std::uint64_t a = 0;  // register (INC/HALT: the register; QUERY: destination)
  std::uint64_t b = 0;  // DECJZ: jump label; QUERY: source register
};

constexpr std::uint64_t kMaxRegisterIndex = 1u << 16;

struct Program {
  std::vector<Instr> code;

  std::uint64_t register_count() const;
  bool well_formed(std::string* why = nullptr) const;
};

// The canonical never-halting program: DECJZ 0 0 self-loops on zero and
// falls off the end otherwise.
Program looping_program();

BigNat encode_program(const Program& p);
Program decode_program(const BigNat& code);  // total

struct MachineIndex {
  Program program;
  BigNat code;

  static MachineIndex from_program(const Program& p);
  static MachineIndex from_code(const BigNat& code);
};

// ------------------------------------------------------------------ oracle ----
// A total binary oracle presented as a closure plus a query log; each
// simulation should own its tape (copy freely, the log restarts).
struct OracleTape {
  std::function<int(std::uint64_t)> bits;
  std::map<std::uint64_t, int> log;

  int query(std::uint64_t i);

  static OracleTape all0();
  static OracleTape all1();
  static OracleTape parity();
  static OracleTape from_bit_string(const std::string& s);  // beyond the end: 0
  // named spec: all0 | all1 | parity | file:<path>
  static OracleTape from_spec(const std::string& spec);
};

// --------------------------------------------------------------- execution ----
struct RunResult {
  std::uint64_t output;
  std::uint64_t steps;  // the step at which HALT executed (first step is 1)
};

// Runs program e on input n (placed in register 0) against oracle A for at
// most `budget` steps.  Deterministic and monotone in the budget.
std::optional<RunResult> run_bounded(const Program& e, std::uint64_t n, OracleTape& A,
                                     std::uint64_t budget);

// Halting on every input up to n_max within s_cap steps; an
// under-approximation of totality, reported as such.
bool check_tot_up_to(const Program& e, const OracleTape& A, std::uint64_t n_max,
                     std::uint64_t s_cap);

// 0 if e on n with oracle A halts within k steps with output at most k,
// otherwise 1.  Antitone threshold in k.
int f0(const Program& e, std::uint64_t n, const OracleTape& A, std::uint64_t k);

enum class Verdict { Pass, VacuousPass, Fail };
std::string verdict_name(Verdict v);

// Checks the halting-bound contract for one cell: PASS when the machine
// halts within nu steps with output at most nu; VACUOUS when it does not
// halt within s_cap at all; FAIL otherwise.
Verdict check_mu_a(std::uint64_t nu, const Program& e, std::uint64_t n, const OracleTape& A,
                   std::uint64_t s_cap, std::optional<RunResult>* run_out = nullptr);

// ------------------------------------------------------ canonical programs ----
// The sixteen desk-scale test programs used by the verification suites.
struct CanonicalProgram {
  std::string name;
  Program program;
};
const std::vector<CanonicalProgram>& canonical_programs();

// ------------------------------------------------------------------- s-m-n ----
// An index e' with: running e' on input m against any oracle A halts within
// step_bound(m) steps and outputs the coded rational of the monotone
// sequence attached to (e, n, A); see smn.cpp for the construction.
Program smn_program(const Program& e, std::uint64_t n);
MachineIndex smn_monotone_index(const MachineIndex& e, std::uint64_t n);
std::uint64_t smn_step_bound(std::uint64_t m);

}  // namespace nsa::machines
