// verify.hpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
//
// Desk-scale verification suites: for each canonical program, input and
// oracle, derive a halting bound from a brute-force convergence modulus of
// the attached monotone sequence and check it against direct simulation;
// and the associate-mediated variant where the bound is read off through a
// neighborhood function applied to the interleaving of the modulus data
// with the oracle.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nsa/machine.hpp"

#include "json.hpp"

namespace nsa::verify {

struct Caps {
  std::uint64_t e_max = 16;
  std::uint64_t n_max = 4;
  std::uint64_t s_cap = 512;
  std::uint64_t m_max = 8;
  std::uint64_t probe_cap = 1 << 16;
  std::uint64_t mod_cap = 0;  // 0 = derived: 2 * s_cap + 64
  std::uint64_t mu_cap = 512;
  std::uint64_t derived_mod_cap() const { return mod_cap ? mod_cap : 2 * s_cap + 64; }
};

struct EquivRow {
  std::uint64_t e = 0;
  std::uint64_t n = 0;
  std::string oracle;
  std::string program;      // canonical program name
  std::string e_prime;      // decimal code of the derived index
  std::uint64_t nu = 0;     // derived halting bound (modulus at k = 3)
  bool nu_found = false;
  machines::Verdict verdict = machines::Verdict::VacuousPass;
  std::optional<std::uint64_t> halting_step;
  bool smn_agree = false;   // simulated index output == direct evaluation
};

struct EquivReport {
  Caps caps;
  std::vector<std::string> oracles;
  std::vector<EquivRow> rows;
  int fail_count() const;
  int pass_count() const;
  int vacuous_count() const;
  bool all_smn_agree() const;
};

EquivReport verify_equivalence(const Caps& caps, const std::vector<std::string>& oracles,
                               unsigned threads = 0);

struct Cor45Row {
  std::uint64_t e = 0;
  std::uint64_t n = 0;
  std::string oracle;
  std::string program;
  bool defined = false;       // the associate answered within the probe cap
  std::uint64_t probe_index = 0;
  std::uint64_t nu = 0;
  machines::Verdict verdict = machines::Verdict::VacuousPass;
  std::optional<std::uint64_t> halting_step;
  std::uint64_t a_bits_queried = 0;  // distinct oracle positions read through the pairing
};

struct Cor45Report {
  Caps caps;
  std::vector<std::string> oracles;
  std::vector<Cor45Row> rows;
  bool all_defined() const;
  int fail_count() const;
};

Cor45Report run_cor45(const Caps& caps, const std::vector<std::string>& oracles,
                      unsigned threads = 0);

nlohmann::ordered_json rows_json(const EquivReport& r);
nlohmann::ordered_json rows_json(const Cor45Report& r);
nlohmann::ordered_json report_json(const EquivReport& r, std::uint64_t seed);
nlohmann::ordered_json report_json(const Cor45Report& r, std::uint64_t seed);

}  // namespace nsa::verify
