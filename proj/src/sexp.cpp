// sexp.cpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
#include "nsa/sexp.hpp"

#include <cctype>

namespace nsa::sexp {

namespace {

struct Reader {
  const std::string& text;
  std::size_t i = 0;

  void skip_ws() {
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      } else if (text[i] == ';') {  // line comment
        while (i < text.size() && text[i] != '\n') ++i;
      } else {
        break;
      }
    }
  }

  Node read() {
    skip_ws();
    if (i >= text.size()) throw SyntaxError("unexpected end of input", i);
    std::size_t start = i;
    if (text[i] == '(') {
      ++i;
      Node n;
      n.kind = Node::Kind::List;
      n.pos = start;
      while (true) {
        skip_ws();
        if (i >= text.size()) throw SyntaxError("unclosed '('", start);
        if (text[i] == ')') {
          ++i;
          return n;
        }
        n.items.push_back(read());
      }
    }
    if (text[i] == ')') throw SyntaxError("unexpected ')'", i);
    // atom: run of non-space, non-paren characters
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
           text[j] != '(' && text[j] != ')' && text[j] != ';')
      ++j;
    std::string tok = text.substr(i, j - i);
    i = j;
    Node n;
    n.pos = start;
    bool digits = !tok.empty();
    for (char c : tok)
      if (!std::isdigit(static_cast<unsigned char>(c))) digits = false;
    if (digits) {
      n.kind = Node::Kind::Number;
      n.num = std::stoull(tok);
    } else {
      n.kind = Node::Kind::Symbol;
      n.sym = tok;
    }
    return n;
  }
};

void write(const Node& n, std::string& out) {
  switch (n.kind) {
    case Node::Kind::Symbol:
      out += n.sym;
      break;
    case Node::Kind::Number:
      out += std::to_string(n.num);
      break;
    case Node::Kind::List:
      out += '(';
      for (std::size_t i = 0; i < n.items.size(); ++i) {
        if (i) out += ' ';
        write(n.items[i], out);
      }
      out += ')';
      break;
  }
}

}  // namespace

Node parse(const std::string& text) {
  Reader r{text};
  Node n = r.read();
  r.skip_ws();
  if (r.i != text.size()) throw SyntaxError("trailing input after expression", r.i);
  return n;
}

std::vector<Node> parse_many(const std::string& text) {
  Reader r{text};
  std::vector<Node> out;
  r.skip_ws();
  while (r.i < text.size()) {
    out.push_back(r.read());
    r.skip_ws();
  }
  return out;
}

std::string to_string(const Node& n) {
  std::string out;
  write(n, out);
  return out;
}

}  // namespace nsa::sexp
