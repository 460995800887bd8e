// verify.cpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
#include "nsa/verify.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "nsa/associate.hpp"
#include "nsa/mct.hpp"
#include "nsa/pairing.hpp"

namespace nsa::verify {

using machines::canonical_programs;
using machines::OracleTape;
using machines::Program;
using machines::Verdict;
using mct::Rational;
using mct::RationalSeq;

namespace {

// The monotone sequence attached to a cell (e, n, A): zero until the
// machine halts within the index (output included in the bound), then
// 1 - 2^-m.  Pointwise this equals t_of_f over the halting indicator.
RationalSeq cell_sequence(const Program& e, std::uint64_t n, const OracleTape& A) {
  return mct::memoized(RationalSeq{[&e, n, A](std::uint64_t m) -> Rational {
    return machines::f0(e, n, A, m) == 0 ? Rational(1) - mct::pow2_inv(m) : Rational(0);
  }});
}

std::uint64_t cell_modulus_at(const Program& e, std::uint64_t n, const OracleTape& A,
                              std::uint64_t k, std::uint64_t mod_cap, bool* found) {
  RationalSeq c = cell_sequence(e, n, A);
  mct::ModulusResult r = mct::brute_modulus(c, k == 0 ? 1 : k, mod_cap);
  if (found) *found = r.found();
  return r.found() ? r.value : 0;
}

template <typename Row, typename Fn>
std::vector<Row> run_cells(const Caps& caps, const std::vector<std::string>& oracles,
                           std::uint64_t e_lim, unsigned threads, Fn&& cell_fn) {
  struct CellKey {
    std::string oracle;
    std::uint64_t e, n;
  };
  std::vector<CellKey> keys;
  for (auto& o : oracles)
    for (std::uint64_t e = 0; e < e_lim; ++e)
      for (std::uint64_t n = 0; n <= caps.n_max; ++n) keys.push_back({o, e, n});

  std::vector<Row> rows(keys.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= keys.size()) return;
      rows[i] = cell_fn(keys[i].oracle, keys[i].e, keys[i].n);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace

int EquivReport::fail_count() const {
  int c = 0;
  for (auto& r : rows) c += r.verdict == Verdict::Fail;
  return c;
}
int EquivReport::pass_count() const {
  int c = 0;
  for (auto& r : rows) c += r.verdict == Verdict::Pass;
  return c;
}
int EquivReport::vacuous_count() const {
  int c = 0;
  for (auto& r : rows) c += r.verdict == Verdict::VacuousPass;
  return c;
}
bool EquivReport::all_smn_agree() const {
  return std::all_of(rows.begin(), rows.end(), [](const EquivRow& r) { return r.smn_agree; });
}

EquivReport verify_equivalence(const Caps& caps, const std::vector<std::string>& oracles,
                               unsigned threads) {
  const auto& progs = canonical_programs();
  std::uint64_t e_lim = std::min<std::uint64_t>(caps.e_max, progs.size());
  std::uint64_t mod_cap = caps.derived_mod_cap();

  auto cell = [&](const std::string& oracle, std::uint64_t e, std::uint64_t n) -> EquivRow {
    EquivRow row;
    row.e = e;
    row.n = n;
    row.oracle = oracle;
    row.program = progs[e].name;
    const Program& prog = progs[e].program;
    OracleTape base = OracleTape::from_spec(oracle);

    row.nu = cell_modulus_at(prog, n, base, 3, mod_cap, &row.nu_found);

    std::optional<machines::RunResult> run;
    row.verdict = machines::check_mu_a(row.nu, prog, n, base, caps.s_cap, &run);
    if (run) row.halting_step = run->steps;

    // the derived index must compute the same sequence as the direct
    // evaluation of the attached-sequence definition
    Program eprime = machines::smn_program(prog, n);
    row.e_prime = machines::encode_program(eprime).str();
    row.smn_agree = true;
    auto direct_f = [&](std::uint64_t i) -> std::uint64_t {
      return static_cast<std::uint64_t>(machines::f0(prog, n, base, i));
    };
    for (std::uint64_t m = 0; m <= caps.m_max; ++m) {
      OracleTape tape = base;
      tape.log.clear();
      auto r = machines::run_bounded(eprime, m, tape, machines::smn_step_bound(m));
      BigNat direct = mct::code_rational(mct::t_of_f(direct_f)(m));
      if (!r || BigNat(r->output) != direct) {
        row.smn_agree = false;
        break;
      }
    }
    return row;
  };

  EquivReport rep;
  rep.caps = caps;
  rep.oracles = oracles;
  rep.rows = run_cells<EquivRow>(caps, oracles, e_lim, threads, cell);
  return rep;
}

// ----------------------------------------------------------------- cor45 ----

bool Cor45Report::all_defined() const {
  return std::all_of(rows.begin(), rows.end(), [](const Cor45Row& r) { return r.defined; });
}
int Cor45Report::fail_count() const {
  int c = 0;
  for (auto& r : rows) c += r.verdict == Verdict::Fail;
  return c;
}

Cor45Report run_cor45(const Caps& caps, const std::vector<std::string>& oracles,
                      unsigned threads) {
  const auto& progs = canonical_programs();
  std::uint64_t e_lim = std::min<std::uint64_t>(caps.e_max, progs.size());
  std::uint64_t mod_cap = caps.derived_mod_cap();
  if (e_lim == 0) return Cor45Report{caps, oracles, {}};

  // the modulus data as a single function per oracle:
  // psi(pair(pair(e,n),k)) is the brute modulus of cell (e,n) at precision
  // k.  The probe loop reads every position below its threshold, so the
  // table is computed once per oracle (cell sequences shared across k).
  std::uint64_t p_top = cantor_pair_u64(e_lim - 1, caps.n_max);
  std::uint64_t j_top = cantor_pair_u64(p_top, 3);
  std::map<std::string, std::vector<std::uint64_t>> psi_tables;
  for (auto& o : oracles) {
    if (psi_tables.count(o)) continue;
    OracleTape base = OracleTape::from_spec(o);
    std::map<std::uint64_t, RationalSeq> seqs;
    for (std::uint64_t e = 0; e < e_lim; ++e)
      for (std::uint64_t n = 0; n <= caps.n_max; ++n)
        seqs.emplace(cantor_pair_u64(e, n), cell_sequence(progs[e].program, n, base));
    std::vector<std::uint64_t> table(j_top + 1, 0);
    for (std::uint64_t j = 0; j <= j_top; ++j) {
      auto [p, k] = cantor_unpair_u64(j);
      auto [pe, pn] = cantor_unpair_u64(p);
      if (pe >= e_lim || pn > caps.n_max) continue;
      mct::ModulusResult r = mct::brute_modulus(seqs.at(p), k == 0 ? 1 : k, mod_cap);
      table[j] = r.found() ? r.value : 0;
    }
    psi_tables.emplace(o, std::move(table));
  }

  auto cell = [&](const std::string& oracle, std::uint64_t e, std::uint64_t n) -> Cor45Row {
    Cor45Row row;
    row.e = e;
    row.n = n;
    row.oracle = oracle;
    row.program = progs[e].name;
    const Program& prog = progs[e].program;
    OracleTape base = OracleTape::from_spec(oracle);
    const std::vector<std::uint64_t>& psi = psi_tables.at(oracle);

    // the oracle side of the interleaving keeps its query log
    OracleTape a_tape = base;
    a_tape.log.clear();
    auto beta = [&](std::uint64_t i) -> std::uint64_t {
      if (i % 2 == 0) return i / 2 < psi.size() ? psi[i / 2] : 0;
      return static_cast<std::uint64_t>(a_tape.query(i / 2));
    };

    // the neighborhood function: the first entry selects the cell, the rest
    // is the interleaved data read as its zero-extension; the continuity
    // modulus is recorded by instrumenting the cell functional's own probes
    auto cell_functional = [](std::uint64_t p) {
      return [p](const ecf::Fn& b) -> std::uint64_t {
        return b(2 * cantor_pair_u64(p, 3));  // the even (modulus) side at k = 3
      };
    };
    auto z_alpha = [&cell_functional](const ecf::Seq& sigma) -> std::uint64_t {
      if (sigma.empty()) return 0;
      auto F = cell_functional(sigma[0]);
      ecf::Fn rest = [&sigma](std::uint64_t i) -> std::uint64_t {
        return i + 1 < sigma.size() ? sigma[i + 1] : 0;
      };
      std::uint64_t max_index = 0;
      bool any = false;
      ecf::Fn probe = [&](std::uint64_t i) {
        any = true;
        max_index = std::max(max_index, i);
        return rest(i);
      };
      F(probe);
      std::uint64_t modulus = any ? max_index + 1 : 0;
      if (sigma.size() - 1 >= modulus) return F(rest) + 1;
      return 0;
    };

    std::uint64_t p = cantor_pair_u64(e, n);
    // the application loop, inlined to capture the successful probe index
    std::optional<std::uint64_t> value;
    ecf::Seq segment;
    for (std::uint64_t k = 0; k <= caps.probe_cap; ++k) {
      segment.push_back(k == 0 ? p : beta(k - 1));
      std::uint64_t v = z_alpha(segment);
      if (v > 0) {
        value = v - 1;
        row.probe_index = k;
        break;
      }
    }
    row.defined = value.has_value();
    row.nu = value.value_or(0);
    row.a_bits_queried = a_tape.log.size();

    std::optional<machines::RunResult> run;
    row.verdict = machines::check_mu_a(row.nu, prog, n, base, caps.s_cap, &run);
    if (run) row.halting_step = run->steps;
    return row;
  };

  Cor45Report rep;
  rep.caps = caps;
  rep.oracles = oracles;
  rep.rows = run_cells<Cor45Row>(caps, oracles, e_lim, threads, cell);
  return rep;
}

// ------------------------------------------------------------------- json ----

namespace {

nlohmann::ordered_json caps_json(const Caps& c) {
  return nlohmann::ordered_json{{"e_max", c.e_max},   {"n_max", c.n_max},
                                {"s_cap", c.s_cap},   {"m_max", c.m_max},
                                {"probe_cap", c.probe_cap}, {"mod_cap", c.derived_mod_cap()},
                                {"mu_cap", c.mu_cap}};
}

}  // namespace

nlohmann::ordered_json rows_json(const EquivReport& r) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (auto& row : r.rows) {
    nlohmann::ordered_json j{{"e", row.e},
                             {"n", row.n},
                             {"oracle", row.oracle},
                             {"program", row.program},
                             {"e_prime", row.e_prime},
                             {"nu", row.nu},
                             {"nu_found", row.nu_found},
                             {"verdict", machines::verdict_name(row.verdict)}};
    if (row.halting_step) j["halting_step"] = *row.halting_step;
    j["smn_agree"] = row.smn_agree;
    rows.push_back(std::move(j));
  }
  return rows;
}

nlohmann::ordered_json rows_json(const Cor45Report& r) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (auto& row : r.rows) {
    nlohmann::ordered_json j{{"e", row.e},
                             {"n", row.n},
                             {"oracle", row.oracle},
                             {"program", row.program},
                             {"defined", row.defined},
                             {"probe_index", row.probe_index},
                             {"nu", row.nu},
                             {"verdict", machines::verdict_name(row.verdict)}};
    if (row.halting_step) j["halting_step"] = *row.halting_step;
    j["a_bits_queried"] = row.a_bits_queried;
    rows.push_back(std::move(j));
  }
  return rows;
}

nlohmann::ordered_json report_json(const EquivReport& r, std::uint64_t seed) {
  return nlohmann::ordered_json{
      {"command", "verify-mu"},
      {"caps", caps_json(r.caps)},
      {"seed", seed},
      {"oracles", r.oracles},
      {"rows", rows_json(r)},
      {"summary",
       nlohmann::ordered_json{{"pass", r.pass_count()},
                              {"vacuous", r.vacuous_count()},
                              {"fail", r.fail_count()},
                              {"smn_agree", r.all_smn_agree()}}}};
}

nlohmann::ordered_json report_json(const Cor45Report& r, std::uint64_t seed) {
  int pass = 0, vac = 0;
  for (auto& row : r.rows) {
    pass += row.verdict == Verdict::Pass;
    vac += row.verdict == Verdict::VacuousPass;
  }
  return nlohmann::ordered_json{
      {"command", "ecf"},
      {"caps", caps_json(r.caps)},
      {"seed", seed},
      {"oracles", r.oracles},
      {"rows", rows_json(r)},
      {"summary", nlohmann::ordered_json{{"pass", pass},
                                         {"vacuous", vac},
                                         {"fail", r.fail_count()},
                                         {"all_defined", r.all_defined()}}}};
}

}  // namespace nsa::verify
