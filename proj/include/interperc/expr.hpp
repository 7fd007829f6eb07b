#pragma once

// Sequence expressions in the index n, e.g. "n^2", "1/n", "0.9/n",
// "n*log(n)", "1/(2*n^2)". Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | 'n' | ident '(' expr ')' | '(' expr ')'
// with ident in {log, exp, sqrt, abs}.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <string>

#include "error.hpp"

namespace interperc {

class SequenceExpr {
 public:
  explicit SequenceExpr(std::string text) : text_(std::move(text)) {
    pos_ = 0;
    root_ = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  [[nodiscard]] double operator()(std::uint64_t n) const { return root_->eval(static_cast<double>(n)); }
  [[nodiscard]] const std::string& text() const { return text_; }

 private:
  struct Node {
    enum Kind { num, var, add, sub, mul, div, pow, neg, log, exp, sqrt, abs } kind;
    double value = 0.0;
    std::shared_ptr<const Node> a, b;

    [[nodiscard]] double eval(double n) const {
      switch (kind) {
        case num: return value;
        case var: return n;
        case add: return a->eval(n) + b->eval(n);
        case sub: return a->eval(n) - b->eval(n);
        case mul: return a->eval(n) * b->eval(n);
        case div: return a->eval(n) / b->eval(n);
        case pow: return std::pow(a->eval(n), b->eval(n));
        case neg: return -a->eval(n);
        case log: return std::log(a->eval(n));
        case exp: return std::exp(a->eval(n));
        case sqrt: return std::sqrt(a->eval(n));
        case abs: return std::abs(a->eval(n));
      }
      return 0.0;
    }
  };
  using Ptr = std::shared_ptr<const Node>;

  static Ptr make(Node::Kind k, Ptr a = nullptr, Ptr b = nullptr, double v = 0.0) {
    return std::make_shared<const Node>(Node{k, v, std::move(a), std::move(b)});
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("expression '" + text_ + "': " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Ptr parse_expr() {
    Ptr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Node::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = make(Node::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Ptr parse_term() {
    Ptr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Node::mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = make(Node::div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Ptr parse_unary() {
    if (accept('-')) return make(Node::neg, parse_unary());
    return parse_power();
  }

  Ptr parse_power() {
    Ptr base = parse_atom();
    if (accept('^')) return make(Node::pow, base, parse_unary());
    return base;
  }

  Ptr parse_atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (accept('(')) {
      Ptr inner = parse_expr();
      if (!accept(')')) fail("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return make(Node::num, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string id = text_.substr(start, pos_ - start);
      if (id == "n") return make(Node::var);
      Node::Kind k;
      if (id == "log") {
        k = Node::log;
      } else if (id == "exp") {
        k = Node::exp;
      } else if (id == "sqrt") {
        k = Node::sqrt;
      } else if (id == "abs") {
        k = Node::abs;
      } else {
        fail("unknown identifier '" + id + "'");
      }
      if (!accept('(')) fail("expected '(' after " + id);
      Ptr arg = parse_expr();
      if (!accept(')')) fail("missing ')'");
      return make(k, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string text_;
  std::size_t pos_ = 0;
  Ptr root_;
};

}  // namespace interperc
