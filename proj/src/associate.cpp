// associate.cpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
#include "nsa/associate.hpp"

#include <memory>

namespace nsa::ecf {

namespace {

// view of a finite sequence as its zero-extension; valid only while the
// sequence outlives the closure (the associate_of alpha calls F and the
// modulus synchronously)
Fn zero_extend(const Seq& s) {
  return [&s](std::uint64_t i) { return i < s.size() ? s[i] : 0; };
}

}  // namespace

bool is_neighborhood(const Associate& a, std::uint64_t sample_depth) {
  // enumerate all tau over {0..sample_depth} with |tau| <= sample_depth
  std::vector<Seq> frontier = {{}};
  for (std::uint64_t len = 0; len < sample_depth; ++len) {
    std::vector<Seq> next;
    for (const Seq& tau : frontier) {
      for (std::uint64_t v = 0; v <= sample_depth; ++v) {
        Seq ext = tau;
        ext.push_back(v);
        // check every proper prefix sigma of ext with alpha(sigma) > 0
        for (std::size_t cut = 0; cut < ext.size(); ++cut) {
          Seq sigma(ext.begin(), ext.begin() + cut);
          std::uint64_t vs = a(sigma);
          if (vs > 0 && vs != a(ext)) return false;
        }
        next.push_back(std::move(ext));
      }
    }
    frontier = std::move(next);
  }
  return true;
}

std::optional<std::uint64_t> apply_associate(const Associate& a, const Fn& beta,
                                             std::uint64_t probe_cap) {
  Seq segment;
  for (std::uint64_t k = 0; k <= probe_cap; ++k) {
    segment.push_back(beta(k));  // inclusive: the probe at k has length k+1
    std::uint64_t v = a(segment);
    if (v > 0) return v - 1;
  }
  return std::nullopt;
}

Fn oplus(Fn beta, Fn gamma) {
  return [beta = std::move(beta), gamma = std::move(gamma)](std::uint64_t n) {
    return n % 2 == 0 ? beta(n / 2) : gamma(n / 2);
  };
}

bool PartialApplication::defined_up_to(std::uint64_t n_max) const {
  if (values.size() <= n_max) return false;
  for (std::uint64_t n = 0; n <= n_max; ++n)
    if (!values[n]) return false;
  return true;
}

PartialApplication restrict_apply(const Associate& a, const Fn& beta, std::uint64_t probe_cap,
                                  std::uint64_t n_max) {
  PartialApplication out;
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    Fn shifted = [n, &beta](std::uint64_t i) { return i == 0 ? n : beta(i - 1); };
    out.values.push_back(apply_associate(a, shifted, probe_cap));
  }
  return out;
}

Associate associate_of(const Functional& F, const Modulus& modulus, std::uint64_t) {
  return Associate{[F, modulus](const Seq& sigma) -> std::uint64_t {
    Fn beta = zero_extend(sigma);
    std::uint64_t m = modulus(beta);
    if (sigma.size() >= m + 1) return F(beta) + 1;
    return 0;
  }};
}

std::map<Seq, std::uint64_t> associate_table(const Associate& a, std::uint64_t depth,
                                             std::uint64_t alphabet) {
  std::map<Seq, std::uint64_t> table;
  std::vector<Seq> frontier = {{}};
  for (std::uint64_t len = 0; len <= depth; ++len) {
    std::vector<Seq> next;
    for (const Seq& s : frontier) {
      std::uint64_t v = a(s);
      if (v != 0) table[s] = v;
      if (len < depth)
        for (std::uint64_t x = 0; x <= alphabet; ++x) {
          Seq e = s;
          e.push_back(x);
          next.push_back(std::move(e));
        }
    }
    frontier = std::move(next);
  }
  return table;
}

}  // namespace nsa::ecf
