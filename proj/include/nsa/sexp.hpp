// sexp.hpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsa::sexp {

// Minimal S-expression reader shared by the term and formula parsers.
// A node is either an atom (symbol or unsigned integer) or a list.
struct Node {
  enum class Kind { Symbol, Number, List };
  Kind kind;
  std::string sym;
  std::uint64_t num = 0;
  std::vector<Node> items;
  std::size_t pos = 0;  // byte offset in the source text

  bool is_symbol(const std::string& s) const {
    return kind == Kind::Symbol && sym == s;
  }
  bool is_list() const { return kind == Kind::List; }
  std::size_t size() const { return items.size(); }
  const Node& operator[](std::size_t i) const { return items[i]; }
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

Node parse(const std::string& text);
std::vector<Node> parse_many(const std::string& text);
std::string to_string(const Node& n);

}  // namespace nsa::sexp
