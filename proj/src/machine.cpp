// machine.cpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
#include "nsa/machine.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace nsa::machines {

std::uint64_t Program::register_count() const {
  std::uint64_t m = 0;
  for (auto& i : code) {
    m = std::max(m, i.a + 1);
    if (i.op == Op::Query) m = std::max(m, i.b + 1);
  }
  return std::max<std::uint64_t>(m, 1);
}

bool Program::well_formed(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (code.size() >= kMaxRegisterIndex) return fail("program too long");
  for (std::size_t j = 0; j < code.size(); ++j) {
    const Instr& i = code[j];
    if (i.a >= kMaxRegisterIndex) return fail("register index out of range");
    switch (i.op) {
      case Op::Inc:
      case Op::Halt:
        if (i.b != 0) return fail("unused argument must be 0");
        break;
      case Op::Decjz:
        if (i.b >= code.size()) return fail("jump label out of range");
        break;
      case Op::Query:
        if (i.b >= kMaxRegisterIndex) return fail("register index out of range");
        break;
    }
  }
  return true;
}

Program looping_program() { return Program{{Instr{Op::Decjz, 0, 0}}}; }

// ---------------------------------------------------------------- encoding ----
// instruction = pair(opcode, pair(a, b)); program = pair(length, tree) where
// tree is the balanced pairing tree over the instruction codes (left half
// takes ceil(n/2) leaves); the empty program is pair(0, 0).

namespace {

BigNat encode_instr(const Instr& i) {
  return cantor_pair(static_cast<std::uint64_t>(i.op), cantor_pair(i.a, i.b));
}

BigNat encode_tree(const std::vector<BigNat>& leaves, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return leaves[lo];
  std::size_t mid = lo + (hi - lo + 1) / 2;
  return cantor_pair(encode_tree(leaves, lo, mid), encode_tree(leaves, mid, hi));
}

void decode_tree(const BigNat& t, std::size_t count, std::vector<BigNat>& out) {
  if (count == 1) {
    out.push_back(t);
    return;
  }
  auto [l, r] = cantor_unpair(t);
  std::size_t left = (count + 1) / 2;
  decode_tree(l, left, out);
  decode_tree(r, count - left, out);
}

std::optional<Instr> decode_instr(const BigNat& c) {
  auto [op, args] = cantor_unpair(c);
  if (op > 3) return std::nullopt;
  auto [a, b] = cantor_unpair(args);
  if (a >= kMaxRegisterIndex || b >= kMaxRegisterIndex) return std::nullopt;
  Instr i;
  i.op = static_cast<Op>(static_cast<std::uint8_t>(op));
  i.a = static_cast<std::uint64_t>(a);
  i.b = static_cast<std::uint64_t>(b);
  return i;
}

}  // namespace

BigNat encode_program(const Program& p) {
  if (p.code.empty()) return cantor_pair(0, 0);
  std::vector<BigNat> leaves;
  leaves.reserve(p.code.size());
  for (auto& i : p.code) leaves.push_back(encode_instr(i));
  return cantor_pair(p.code.size(), encode_tree(leaves, 0, leaves.size()));
}

Program decode_program(const BigNat& code) {
  auto [len_big, tree] = cantor_unpair(code);
  if (len_big == 0) return tree == 0 ? Program{} : looping_program();
  if (len_big >= kMaxRegisterIndex) return looping_program();
  std::size_t len = static_cast<std::size_t>(len_big);
  std::vector<BigNat> leaves;
  leaves.reserve(len);
  decode_tree(tree, len, leaves);
  Program p;
  for (auto& leaf : leaves) {
    auto i = decode_instr(leaf);
    if (!i) return looping_program();
    p.code.push_back(*i);
  }
  if (!p.well_formed()) return looping_program();
  return p;
}

MachineIndex MachineIndex::from_program(const Program& p) {
  return MachineIndex{p, encode_program(p)};
}

MachineIndex MachineIndex::from_code(const BigNat& code) {
  return MachineIndex{decode_program(code), code};
}

// ------------------------------------------------------------------ oracle ----

int OracleTape::query(std::uint64_t i) {
  auto it = log.find(i);
  if (it != log.end()) return it->second;
  int b = bits(i) ? 1 : 0;
  log.emplace(i, b);
  return b;
}

OracleTape OracleTape::all0() { return OracleTape{[](std::uint64_t) { return 0; }, {}}; }
OracleTape OracleTape::all1() { return OracleTape{[](std::uint64_t) { return 1; }, {}}; }
OracleTape OracleTape::parity() {
  return OracleTape{[](std::uint64_t i) { return static_cast<int>(i % 2); }, {}};
}

OracleTape OracleTape::from_bit_string(const std::string& s) {
  auto bits = std::make_shared<std::vector<int>>();
  for (char c : s) {
    if (c == '0') bits->push_back(0);
    else if (c == '1') bits->push_back(1);
    else if (!std::isspace(static_cast<unsigned char>(c)))
      throw std::runtime_error("oracle bit strings may contain only 0 and 1");
  }
  return OracleTape{[bits](std::uint64_t i) { return i < bits->size() ? (*bits)[i] : 0; }, {}};
}

OracleTape OracleTape::from_spec(const std::string& spec) {
  if (spec == "all0") return all0();
  if (spec == "all1") return all1();
  if (spec == "parity") return parity();
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) throw std::runtime_error("cannot open oracle file: " + spec.substr(5));
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_bit_string(s);
  }
  throw std::runtime_error("unknown oracle spec: " + spec +
                           " (expected all0 | all1 | parity | file:<path>)");
}

// --------------------------------------------------------------- execution ----

std::optional<RunResult> run_bounded(const Program& e, std::uint64_t n, OracleTape& A,
                                     std::uint64_t budget) {
  std::vector<std::uint64_t> reg(e.register_count(), 0);
  if (!reg.empty()) reg[0] = n;
  std::uint64_t pc = 0;
  for (std::uint64_t step = 1; step <= budget; ++step) {
    if (pc >= e.code.size()) return std::nullopt;  // fell off the end: no halt
    const Instr& i = e.code[pc];
    switch (i.op) {
      case Op::Inc:
        ++reg[i.a];
        ++pc;
        break;
      case Op::Decjz:
        if (reg[i.a] == 0) {
          pc = i.b;
        } else {
          --reg[i.a];
          ++pc;
        }
        break;
      case Op::Query:
        reg[i.a] = static_cast<std::uint64_t>(A.query(reg[i.b]));
        ++pc;
        break;
      case Op::Halt:
        return RunResult{reg[i.a], step};
    }
  }
  return std::nullopt;
}

bool check_tot_up_to(const Program& e, const OracleTape& A, std::uint64_t n_max,
                     std::uint64_t s_cap) {
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    OracleTape tape = A;
    tape.log.clear();
    if (!run_bounded(e, n, tape, s_cap)) return false;
  }
  return true;
}

int f0(const Program& e, std::uint64_t n, const OracleTape& A, std::uint64_t k) {
  OracleTape tape = A;
  tape.log.clear();
  auto r = run_bounded(e, n, tape, k);
  return (r && r->output <= k) ? 0 : 1;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::VacuousPass: return "VACUOUS-PASS";
    case Verdict::Fail: return "FAIL";
  }
  return "?";
}

Verdict check_mu_a(std::uint64_t nu, const Program& e, std::uint64_t n, const OracleTape& A,
                   std::uint64_t s_cap, std::optional<RunResult>* run_out) {
  OracleTape tape = A;
  tape.log.clear();
  auto r = run_bounded(e, n, tape, s_cap);
  if (run_out) *run_out = r;
  if (!r) return Verdict::VacuousPass;
  return (r->steps <= nu && r->output <= nu) ? Verdict::Pass : Verdict::Fail;
}

// ------------------------------------------------------ canonical programs ----

namespace {

Program make(std::initializer_list<Instr> is) { return Program{std::vector<Instr>(is)}; }

Instr INC(std::uint64_t r) { return Instr{Op::Inc, r, 0}; }
Instr DECJZ(std::uint64_t r, std::uint64_t l) { return Instr{Op::Decjz, r, l}; }
Instr QUERY(std::uint64_t d, std::uint64_t s) { return Instr{Op::Query, d, s}; }
Instr HALT(std::uint64_t r) { return Instr{Op::Halt, r, 0}; }

}  // namespace

const std::vector<CanonicalProgram>& canonical_programs() {
  // register 7 is kept at zero for unconditional jumps
  static const std::vector<CanonicalProgram> progs = [] {
    std::vector<CanonicalProgram> v;
    // 0: halts immediately, echoes the input
    v.push_back({"echo", make({HALT(0)})});
    // 1: self-loop on the always-zero register 1
    v.push_back({"loop", make({DECJZ(1, 0)})});
    // 2: one oracle query at the input, halts with the bit
    v.push_back({"query-bit", make({QUERY(0, 0), HALT(0)})});
    // 3: halts (with 0) exactly on even inputs
    v.push_back({"even-only", make({
                                  DECJZ(0, 5),  // 0: even so far -> halt
                                  DECJZ(0, 3),  // 1: odd -> self-loop at 3
                                  DECJZ(7, 0),  // 2: jump 0
                                  DECJZ(7, 3),  // 3: loop forever
                                  DECJZ(7, 3),  // 4: (unreachable)
                                  HALT(1),      // 5: output 0
                              })});
    // 4: constant output 7 after seven increments
    v.push_back({"const7", make({INC(1), INC(1), INC(1), INC(1), INC(1), INC(1), INC(1),
                                 HALT(1)})});
    // 5: successor
    v.push_back({"succ", make({INC(0), HALT(0)})});
    // 6: doubles the input
    v.push_back({"double", make({
                              DECJZ(0, 4),  // 0
                              INC(1),       // 1
                              INC(1),       // 2
                              DECJZ(7, 0),  // 3
                              HALT(1),      // 4
                          })});
    // 7: counts the input down to zero, then halts with 0
    v.push_back({"countdown", make({
                                  DECJZ(0, 2),  // 0
                                  DECJZ(7, 0),  // 1
                                  HALT(0),      // 2
                              })});
    // 8: halts iff the oracle bit at the input is 0
    v.push_back({"halt-if-zero-bit", make({
                                         QUERY(1, 0),  // 0
                                         DECJZ(1, 3),  // 1
                                         DECJZ(7, 2),  // 2: loop forever
                                         HALT(0),      // 3
                                     })});
    // 9: sum of the first three oracle bits
    v.push_back({"bit-sum-3", make({
                                  QUERY(3, 2),  // 0: r3 = A(0)
                                  INC(2),       // 1
                                  QUERY(4, 2),  // 2: r4 = A(1)
                                  INC(2),       // 3
                                  QUERY(5, 2),  // 4: r5 = A(2)
                                  DECJZ(3, 7),  // 5
                                  INC(6),       // 6
                                  DECJZ(4, 9),  // 7
                                  INC(6),       // 8
                                  DECJZ(5, 11), // 9
                                  INC(6),       // 10
                                  HALT(6),      // 11
                              })});
    // 10: input plus 32
    {
      Program p;
      for (int i = 0; i < 32; ++i) p.code.push_back(INC(0));
      p.code.push_back(HALT(0));
      v.push_back({"plus32", p});
    }
    // 11: halts only for inputs below three
    v.push_back({"small-only", make({
                                   DECJZ(0, 5),  // 0
                                   DECJZ(0, 5),  // 1
                                   DECJZ(0, 5),  // 2
                                   DECJZ(7, 3),  // 3: loop forever
                                   DECJZ(7, 3),  // 4
                                   HALT(1),      // 5: output 0
                               })});
    // 12: negated oracle bit at the input
    v.push_back({"not-bit", make({
                                QUERY(1, 0),  // 0: r1 = A(n)
                                DECJZ(1, 3),  // 1: bit 0 -> emit 1; bit 1 -> fall
                                HALT(3),      // 2: output 0
                                INC(3),       // 3
                                HALT(3),      // 4: output 1
                            })});
    // 13: sum of the oracle bits below the input
    v.push_back({"bit-sum-n", make({
                                  DECJZ(0, 6),  // 0: n exhausted -> halt
                                  QUERY(2, 3),  // 1: r2 = A(i)
                                  DECJZ(2, 4),  // 2
                                  INC(1),       // 3: r1 += bit
                                  INC(3),       // 4: i += 1
                                  DECJZ(7, 0),  // 5
                                  HALT(1),      // 6
                              })});
    // 14: the oracle bit at the oracle bit at the input
    v.push_back({"bit-of-bit", make({QUERY(1, 0), QUERY(1, 1), HALT(1)})});
    // 15: increments forever
    v.push_back({"diverge-grow", make({INC(1), DECJZ(7, 0)})});
    return v;
  }();
  return progs;
}

}  // namespace nsa::machines
