// smn.cpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
//
// The index construction: from a program e and an input n, build a total
// program e' that on input m (against any oracle A) plays the inlined,
// step-budgeted simulation of e on n and emits the coded rational of the
// attached monotone sequence:
//   code(0) = pair(0,1) = 2                when e does not halt within m
//                                          steps with output <= m,
//   code(1 - 2^-m) = pair(2^m - 1, 2^m) = 2^(2m+1)   otherwise.
// Both branches need only doubling, so the generated code stays small and
// the declared step bound smn_step_bound(m) covers every oracle.
#include "nsa/machine.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace nsa::machines {

namespace {

// scratch registers of the generated program; e's register i maps to kBase+i
constexpr std::uint64_t kBudget = 1;  // remaining simulation steps
constexpr std::uint64_t kM1 = 2;      // m, consumed by the output comparison
constexpr std::uint64_t kM2 = 3;      // m, consumed by the doubling loop
constexpr std::uint64_t kVal = 4;     // halting output of e
constexpr std::uint64_t kOut = 5;     // emitted code
constexpr std::uint64_t kTmp = 6;     // doubling scratch
constexpr std::uint64_t kZero = 7;    // never incremented: unconditional jumps
constexpr std::uint64_t kBase = 8;

// assembler with symbolic labels
class Asm {
 public:
  std::uint64_t label() { return next_label_++; }
  void place(std::uint64_t l) {
    if (!placed_.emplace(l, code_.size()).second)
      throw std::logic_error("label placed twice");
  }
  void inc(std::uint64_t r) { code_.push_back({Op::Inc, r, 0}); }
  void decjz(std::uint64_t r, std::uint64_t l) {
    code_.push_back({Op::Decjz, r, 0});
    fixups_.emplace_back(code_.size() - 1, l);
  }
  void jmp(std::uint64_t l) { decjz(kZero, l); }
  void query(std::uint64_t d, std::uint64_t s) { code_.push_back({Op::Query, d, s}); }
  void halt(std::uint64_t r) { code_.push_back({Op::Halt, r, 0}); }

  Program finish() {
    for (auto& [at, l] : fixups_) {
      auto it = placed_.find(l);
      if (it == placed_.end()) throw std::logic_error("unplaced label");
      code_[at].b = it->second;
    }
    Program p{std::move(code_)};
    std::string why;
    if (!p.well_formed(&why)) throw std::logic_error("generated program invalid: " + why);
    return p;
  }

 private:
  std::vector<Instr> code_;
  std::uint64_t next_label_ = 0;
  std::map<std::uint64_t, std::uint64_t> placed_;
  std::vector<std::pair<std::size_t, std::uint64_t>> fixups_;
};

}  // namespace

Program smn_program(const Program& e, std::uint64_t n) {
  for (auto& i : e.code)
    if (i.a + kBase >= kMaxRegisterIndex || (i.op == Op::Query && i.b + kBase >= kMaxRegisterIndex))
      throw std::invalid_argument("source program uses registers too close to the limit");

  Asm a;
  std::uint64_t Lsetup = a.label();
  std::uint64_t Lnozero = a.label();
  std::uint64_t Lcmp = a.label();
  std::uint64_t Lle = a.label();
  std::uint64_t Lpow = a.label();
  std::uint64_t Lmove = a.label();
  std::uint64_t Ladd = a.label();
  std::uint64_t Ldone = a.label();
  std::vector<std::uint64_t> sim_labels;  // one per instruction of e, plus the end
  for (std::size_t j = 0; j <= e.code.size(); ++j) sim_labels.push_back(a.label());

  // phase 0: spread the input m over budget and the two saved copies
  a.place(Lsetup);
  a.decjz(0, sim_labels.empty() ? Lnozero : sim_labels[0]);
  a.inc(kBudget);
  a.inc(kM1);
  a.inc(kM2);
  a.jmp(Lsetup);

  // phase 1: e's input register starts at n
  a.place(sim_labels[0]);
  std::uint64_t Lsim0 = a.label();
  for (std::uint64_t i = 0; i < n; ++i) a.inc(kBase);
  a.jmp(Lsim0);

  // phase 2: inlined simulation, one budget unit per simulated step
  std::vector<std::uint64_t> block(e.code.size() + 1);
  for (std::size_t j = 0; j <= e.code.size(); ++j) block[j] = a.label();
  a.place(Lsim0);
  a.jmp(block[0]);
  for (std::size_t j = 0; j < e.code.size(); ++j) {
    a.place(block[j]);
    a.decjz(kBudget, Lnozero);
    const Instr& i = e.code[j];
    switch (i.op) {
      case Op::Inc:
        a.inc(kBase + i.a);
        break;
      case Op::Decjz:
        a.decjz(kBase + i.a, block[i.b]);
        break;
      case Op::Query:
        a.query(kBase + i.a, kBase + i.b);
        break;
      case Op::Halt: {
        // move e's output register into kVal, then compare against m
        std::uint64_t Lcopy = a.label();
        a.place(Lcopy);
        a.decjz(kBase + i.a, Lcmp);
        a.inc(kVal);
        a.jmp(Lcopy);
        break;
      }
    }
    if (i.op != Op::Halt) a.jmp(block[j + 1]);
  }
  a.place(block[e.code.size()]);  // e fell off its end: it never halts
  a.jmp(Lnozero);

  // phase 3a: output <= m?
  a.place(Lcmp);
  a.decjz(kVal, Lle);
  a.decjz(kM1, Lnozero);
  a.jmp(Lcmp);

  // phase 3b: emit 2^(2m+1) by m quadruplings of 2
  a.place(Lle);
  a.inc(kOut);
  a.inc(kOut);
  a.place(Lpow);
  a.decjz(kM2, Ldone);
  a.place(Lmove);
  a.decjz(kOut, Ladd);
  a.inc(kTmp);
  a.jmp(Lmove);
  a.place(Ladd);
  a.decjz(kTmp, Lpow);
  a.inc(kOut);
  a.inc(kOut);
  a.inc(kOut);
  a.inc(kOut);
  a.jmp(Ladd);
  a.place(Ldone);
  a.halt(kOut);

  // phase 3c: emit code(0) = 2
  a.place(Lnozero);
  a.inc(kOut);
  a.inc(kOut);
  a.halt(kOut);

  return a.finish();
}

MachineIndex smn_monotone_index(const MachineIndex& e, std::uint64_t n) {
  return MachineIndex::from_program(smn_program(e.program, n));
}

std::uint64_t smn_step_bound(std::uint64_t m) {
  if (m > 24) throw std::invalid_argument("step bound overflows past m = 24");
  std::uint64_t pow4 = 1;
  for (std::uint64_t i = 0; i < m; ++i) pow4 *= 4;
  return 80 * pow4 + 80 * m + 80;
}

}  // namespace nsa::machines
