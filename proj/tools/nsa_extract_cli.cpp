// nsa_extract_cli.cpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
//
// Command-line entry point: normalize st-annotated formulas, emit the
// extracted witness terms, and run the desk-scale verification suites.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "nsa/formula.hpp"
#include "nsa/machine.hpp"
#include "nsa/mct.hpp"
#include "nsa/principles.hpp"
#include "nsa/rewrite.hpp"
#include "nsa/verify.hpp"

namespace {

using nlohmann::ordered_json;

std::string position_string(const nsa::formulas::Position& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ".";
    s += std::to_string(p[i]);
  }
  return s;
}

ordered_json trace_json(const nsa::rewrite::RewriteTrace& tr, bool monotonize,
                        std::uint64_t seed) {
  ordered_json steps = ordered_json::array();
  for (auto& s : tr.steps)
    steps.push_back(ordered_json{{"rule", s.rule},
                                 {"position", position_string(s.pos)},
                                 {"before", nsa::formulas::formula_to_string(s.before)},
                                 {"after", nsa::formulas::formula_to_string(s.after)}});
  ordered_json milestones = ordered_json::object();
  for (auto& m : tr.milestones)
    milestones[m.name] = nsa::formulas::formula_to_string(m.formula);
  return ordered_json{{"command", "normalize"},
                      {"monotonize", monotonize},
                      {"seed", seed},
                      {"input", nsa::formulas::formula_to_string(tr.input)},
                      {"steps", steps},
                      {"milestones", milestones},
                      {"final", nsa::formulas::formula_to_string(tr.final)}};
}

void emit(const ordered_json& j, const std::string& out_path) {
  std::string text = j.dump(2);
  text += "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
  }
}

struct CapsConfig {
  nsa::verify::Caps caps;
  std::uint64_t pattern_len = 12;
  std::uint64_t seed = 0;
  std::vector<std::string> oracles;
  std::string out_path;

  void apply_env() {
    const char* env = std::getenv("NSA_EXTRACT_CAPS");
    if (!env) return;
    auto j = nlohmann::json::parse(env);
    if (j.contains("e_max")) caps.e_max = j["e_max"].get<std::uint64_t>();
    if (j.contains("n_max")) caps.n_max = j["n_max"].get<std::uint64_t>();
    if (j.contains("s_cap")) caps.s_cap = j["s_cap"].get<std::uint64_t>();
    if (j.contains("m_max")) caps.m_max = j["m_max"].get<std::uint64_t>();
    if (j.contains("probe_cap")) caps.probe_cap = j["probe_cap"].get<std::uint64_t>();
    if (j.contains("mod_cap")) caps.mod_cap = j["mod_cap"].get<std::uint64_t>();
    if (j.contains("mu_cap")) caps.mu_cap = j["mu_cap"].get<std::uint64_t>();
    if (j.contains("pattern_len")) pattern_len = j["pattern_len"].get<std::uint64_t>();
  }

  std::vector<std::string> oracle_list() const {
    return oracles.empty() ? std::vector<std::string>{"all0", "all1", "parity"} : oracles;
  }
};

void add_cap_flags(CLI::App* cmd, CapsConfig& cfg) {
  cmd->add_option("--e-max", cfg.caps.e_max, "number of canonical programs to use");
  cmd->add_option("--n-max", cfg.caps.n_max, "largest machine input");
  cmd->add_option("--s-cap", cfg.caps.s_cap, "step cap for halting checks");
  cmd->add_option("--m-max", cfg.caps.m_max, "largest index for the derived-index check");
  cmd->add_option("--probe-cap", cfg.caps.probe_cap, "probe cap for associates");
  cmd->add_option("--oracle", cfg.oracles,
                  "oracle spec (all0 | all1 | parity | file:<path>); repeatable");
  cmd->add_option("--seed", cfg.seed, "seed for randomized property sampling");
  cmd->add_option("--out", cfg.out_path, "write the JSON report to this path");
}

void print_equiv_table(const nsa::verify::EquivReport& rep) {
  std::printf("%-8s %-3s %-2s %-18s %6s %-12s %5s\n", "oracle", "e", "n", "program", "nu",
              "verdict", "smn");
  for (auto& r : rep.rows)
    std::printf("%-8s %-3llu %-2llu %-18s %6llu %-12s %5s\n", r.oracle.c_str(),
                static_cast<unsigned long long>(r.e), static_cast<unsigned long long>(r.n),
                r.program.c_str(), static_cast<unsigned long long>(r.nu),
                nsa::machines::verdict_name(r.verdict).c_str(), r.smn_agree ? "ok" : "BAD");
  std::printf("pass=%d vacuous=%d fail=%d smn_agree=%s\n", rep.pass_count(),
              rep.vacuous_count(), rep.fail_count(), rep.all_smn_agree() ? "yes" : "NO");
}

// ------------------------------------------------------------- verify-mct ----

struct MctSuiteResult {
  ordered_json rows = ordered_json::array();
  int fails = 0;

  void row(const std::string& suite, const std::string& name, bool ok,
           const std::string& detail = "") {
    ordered_json j{{"suite", suite}, {"case", name}, {"verdict", ok ? "PASS" : "FAIL"}};
    if (!detail.empty()) j["detail"] = detail;
    rows.push_back(std::move(j));
    if (!ok) ++fails;
  }
};

// all 0/1 prefixes of length <= len, extended by ones
std::vector<std::vector<std::uint64_t>> f_patterns(std::uint64_t len) {
  std::vector<std::vector<std::uint64_t>> out;
  for (std::uint64_t l = 0; l <= len; ++l) {
    for (std::uint64_t bits = 0; bits < (1ull << l); ++bits) {
      std::vector<std::uint64_t> p(l);
      for (std::uint64_t i = 0; i < l; ++i) p[i] = (bits >> i) & 1;
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::function<std::uint64_t(std::uint64_t)> pattern_fn(
    const std::vector<std::uint64_t>& pat) {
  auto data = std::make_shared<std::vector<std::uint64_t>>(pat);
  return [data](std::uint64_t i) { return i < data->size() ? (*data)[i] : 1; };
}

int run_verify_mct(const CapsConfig& cfg) {
  using namespace nsa::mct;
  MctSuiteResult res;
  const std::uint64_t mod_cap = 64;
  auto patterns = f_patterns(cfg.pattern_len);

  // modulus / search-operator agreement on t_of_f sequences and the
  // standard extras
  MuOperator mu{cfg.caps.mu_cap};
  int agree_bad = 0, agree_total = 0;
  for (auto& pat : patterns) {
    RationalSeq c = memoized(t_of_f(pattern_fn(pat)));
    for (std::uint64_t k = 1; k <= 8; ++k) {
      ModulusResult bm = brute_modulus(c, k, mod_cap);
      MctFromMuResult mm = mct_from_mu(mu, c, k, 64);
      ++agree_total;
      if (!(bm.found() && mm.found() && bm.value == mm.value)) ++agree_bad;
    }
  }
  {
    RationalSeq c{[](std::uint64_t n2) { return Rational(1) - pow2_inv(n2); }};
    for (std::uint64_t k = 1; k <= 8; ++k) {
      ModulusResult bm = brute_modulus(c, k, mod_cap);
      MctFromMuResult mm = mct_from_mu(mu, c, k, 64);
      ++agree_total;
      if (!(bm.found() && mm.found() && bm.value == mm.value)) ++agree_bad;
    }
    RationalSeq half{[](std::uint64_t) { return Rational(1, 2); }};
    ModulusResult bm = brute_modulus(half, 3, mod_cap);
    MctFromMuResult mm = mct_from_mu(mu, half, 3, 64);
    ++agree_total;
    if (!(bm.found() && mm.found() && bm.value == 0 && mm.value == 0)) ++agree_bad;
  }
  res.row("modulus-agreement",
          "mct_from_mu == brute_modulus on " + std::to_string(agree_total) + " cases",
          agree_bad == 0, agree_bad ? std::to_string(agree_bad) + " disagreements" : "");

  // zero-bounding transfer: the derived bound covers a zero whenever f has
  // one
  int transfer_bad = 0, transfer_total = 0;
  ConvergenceModulus psi = brute_modulus_operator(mod_cap);
  for (auto& pat : patterns) {
    bool has_zero = false;
    for (auto b : pat) has_zero |= b == 0;
    if (!has_zero) continue;
    ++transfer_total;
    auto f = pattern_fn(pat);
    std::uint64_t bound = mu_from_mct(psi, f);
    bool covered = false;
    for (std::uint64_t i = 0; i <= bound; ++i) covered |= f(i) == 0;
    if (!covered) ++transfer_bad;
  }
  res.row("zero-transfer",
          "bound covers a zero on " + std::to_string(transfer_total) + " patterns",
          transfer_bad == 0);

  // shape invariants of the attached sequences
  int shape_bad = 0;
  for (auto& pat : patterns) {
    RationalSeq c = memoized(t_of_f(pattern_fn(pat)));
    Rational prev = c(0);
    for (std::uint64_t i = 0; i + 1 <= 2 * cfg.pattern_len; ++i) {
      Rational next = c(i + 1);
      if (next < prev || next > 1 || prev < 0) ++shape_bad;
      prev = next;
    }
  }
  res.row("sequence-shape", "monotone and within [0,1]", shape_bad == 0);

  ordered_json report{{"command", "verify-mct"},
                      {"caps", ordered_json{{"pattern_len", cfg.pattern_len},
                                            {"mu_cap", cfg.caps.mu_cap},
                                            {"mod_cap", mod_cap}}},
                      {"seed", cfg.seed},
                      {"rows", res.rows},
                      {"summary", ordered_json{{"fail", res.fails}}}};
  emit(report, cfg.out_path);
  return res.fails == 0 ? 0 : 1;
}

int run_extract(const CapsConfig& cfg) {
  using namespace nsa;
  rewrite::PipelineOptions full_opts;
  auto full = rewrite::normalize_formula(principles::mct_to_trans_input(), full_opts);
  rewrite::PipelineOptions pw_opts;
  pw_opts.monotonize_witness = true;
  auto pointwise =
      rewrite::normalize_formula(principles::mct_to_trans_restricted_input(), pw_opts);

  terms::TermPtr t = principles::tseq_term();
  terms::TermPtr z_full = principles::witness_enum_term();
  terms::TermPtr z_single = principles::witness_single_term();
  terms::TermPtr bound_full =
      rewrite::herbrand_to_bound(z_full, principles::pointwise_matrix(), "n");
  terms::TermPtr bound_single =
      rewrite::herbrand_to_bound(z_single, principles::pointwise_matrix(), "n");

  ordered_json j{
      {"command", "extract-mct"},
      {"seed", cfg.seed},
      {"witnesses",
       ordered_json{{"sequence", terms::term_to_string(t)},
                    {"candidates_full", terms::term_to_string(z_full)},
                    {"bound_full", terms::term_to_string(bound_full)},
                    {"candidates_pointwise", terms::term_to_string(z_single)},
                    {"bound_pointwise", terms::term_to_string(bound_single)}}},
      {"normal_forms",
       ordered_json{
           {"full", formulas::formula_to_string(full.final)},
           {"pointwise", formulas::formula_to_string(pointwise.final)}}}};
  emit(j, cfg.out_path);
  return 0;
}

int run_selftest(const CapsConfig& cfg) {
  using namespace nsa;
  int fails = 0;
  auto check = [&](const char* name, bool ok) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
    if (!ok) ++fails;
  };

  // golden pipeline reaches normal forms and replays
  try {
    auto tr = rewrite::normalize_formula(principles::mct_to_trans_input(), {});
    check("normalize full input", formulas::is_normal_form(tr.final) && tr.replays());
    rewrite::PipelineOptions opts;
    opts.monotonize_witness = true;
    auto tr2 =
        rewrite::normalize_formula(principles::mct_to_trans_restricted_input(), opts);
    check("normalize pointwise input", formulas::is_normal_form(tr2.final) && tr2.replays());
  } catch (const std::exception& e) {
    check((std::string("normalize: ") + e.what()).c_str(), false);
  }

  // principle schemas parse back to themselves
  bool principles_ok = true;
  for (auto& name : principles::principle_names()) {
    auto a = principles::principle(name);
    auto b = formulas::parse_formula(formulas::formula_to_string(a));
    principles_ok = principles_ok && formulas::alpha_equal(a, b);
  }
  check("principle schemas round-trip", principles_ok);

  // small machine suite
  {
    verify::Caps caps = cfg.caps;
    caps.e_max = std::min<std::uint64_t>(caps.e_max, 6);
    caps.n_max = std::min<std::uint64_t>(caps.n_max, 2);
    caps.s_cap = std::min<std::uint64_t>(caps.s_cap, 128);
    caps.m_max = std::min<std::uint64_t>(caps.m_max, 5);
    auto rep = verify::verify_equivalence(caps, {"all0", "parity"});
    check("verify-mu (small)", rep.fail_count() == 0 && rep.all_smn_agree());
    verify::Caps ecaps = caps;
    ecaps.e_max = std::min<std::uint64_t>(ecaps.e_max, 4);
    auto rep2 = verify::run_cor45(ecaps, {"all0"});
    check("ecf (small)", rep2.fail_count() == 0 && rep2.all_defined());
  }

  // mct suite at a reduced pattern length
  {
    CapsConfig small = cfg;
    small.pattern_len = std::min<std::uint64_t>(cfg.pattern_len, 6);
    small.out_path = "/dev/null";
    check("verify-mct (small)", run_verify_mct(small) == 0);
  }

  std::printf("selftest: %s\n", fails == 0 ? "all suites passed" : "FAILURES");
  return fails == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for standardness-annotated formulas: normal forms, witness "
               "extraction, and desk-scale verification"};
  app.require_subcommand(1);

  CapsConfig cfg;
  try {
    cfg.apply_env();
  } catch (const std::exception& e) {
    std::cerr << "bad NSA_EXTRACT_CAPS: " << e.what() << "\n";
    return 2;
  }

  // normalize
  std::string formula_path;
  bool monotonize = false;
  auto* cmd_norm = app.add_subcommand("normalize", "rewrite a formula file to normal form");
  cmd_norm->add_option("file", formula_path, "formula file (s-expression)")->required();
  cmd_norm->add_flag("--monotonize", monotonize,
                     "rewrite the consequent witness into its monotone bounded shape");
  cmd_norm->add_option("--seed", cfg.seed, "seed recorded in the trace");
  cmd_norm->add_option("--out", cfg.out_path, "write the JSON trace to this path");

  auto* cmd_extract =
      app.add_subcommand("extract-mct", "emit the extracted witness terms and normal forms");
  cmd_extract->add_option("--seed", cfg.seed, "seed recorded in the report");
  cmd_extract->add_option("--out", cfg.out_path, "write the JSON report to this path");

  auto* cmd_vmct = app.add_subcommand("verify-mct", "modulus/search-operator suites");
  add_cap_flags(cmd_vmct, cfg);

  auto* cmd_vmu = app.add_subcommand("verify-mu", "machine suites and the index check");
  add_cap_flags(cmd_vmu, cfg);

  auto* cmd_ecf = app.add_subcommand("ecf", "associate-mediated verification");
  add_cap_flags(cmd_ecf, cfg);

  auto* cmd_self = app.add_subcommand("selftest", "run all property suites");
  add_cap_flags(cmd_self, cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_norm->parsed()) {
      std::ifstream in(formula_path);
      if (!in) {
        std::cerr << "cannot open " << formula_path << "\n";
        return 2;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      nsa::formulas::FormulaPtr f;
      try {
        f = nsa::formulas::parse_formula(ss.str());
      } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
      }
      nsa::rewrite::PipelineOptions opts;
      opts.monotonize_witness = monotonize;
      auto tr = nsa::rewrite::normalize_formula(f, opts);
      emit(trace_json(tr, monotonize, cfg.seed), cfg.out_path);
      if (cfg.out_path.empty()) return 0;
      std::cout << "steps: " << tr.steps.size() << "\n"
                << "final: " << nsa::formulas::formula_to_string(tr.final) << "\n";
      return 0;
    }
    if (cmd_extract->parsed()) return run_extract(cfg);
    if (cmd_vmct->parsed()) return run_verify_mct(cfg);
    if (cmd_vmu->parsed()) {
      auto rep = nsa::verify::verify_equivalence(cfg.caps, cfg.oracle_list());
      if (!cfg.out_path.empty()) emit(nsa::verify::report_json(rep, cfg.seed), cfg.out_path);
      print_equiv_table(rep);
      return rep.fail_count() == 0 && rep.all_smn_agree() ? 0 : 1;
    }
    if (cmd_ecf->parsed()) {
      auto rep = nsa::verify::run_cor45(cfg.caps, cfg.oracle_list());
      if (!cfg.out_path.empty()) emit(nsa::verify::report_json(rep, cfg.seed), cfg.out_path);
      int fails = rep.fail_count();
      std::printf("cells=%zu defined=%s fail=%d\n", rep.rows.size(),
                  rep.all_defined() ? "all" : "NOT ALL", fails);
      return fails == 0 && rep.all_defined() ? 0 : 1;
    }
    if (cmd_self->parsed()) return run_selftest(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
