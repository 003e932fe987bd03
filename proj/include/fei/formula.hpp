#pragma once

#include "boolean_function.hpp"

#include <cctype>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fei {

class ParseError : public std::invalid_argument {
public:
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

/// immutable formula tree over x1..x24 with !, &, |
class Formula {
public:
  enum class Kind { var, not_, and_, or_ };

  static Formula var(int i)
  {
    if (i < 1 || i > BooleanFunction::max_vars)
      throw std::out_of_range("variable index " + std::to_string(i) + " outside [1,24]");
    return Formula(std::make_shared<const Node>(Node{Kind::var, i, {}, {}}));
  }
  static Formula negate(const Formula& a) { return Formula(std::make_shared<const Node>(Node{Kind::not_, 0, a.node_, {}})); }
  static Formula conj(const Formula& a, const Formula& b) { return Formula(std::make_shared<const Node>(Node{Kind::and_, 0, a.node_, b.node_})); }
  static Formula disj(const Formula& a, const Formula& b) { return Formula(std::make_shared<const Node>(Node{Kind::or_, 0, a.node_, b.node_})); }

  Kind kind() const { return node_->kind; }
  int index() const { return node_->index; }
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }
  Formula child() const { return Formula(node_->left); }

  bool operator==(const Formula& o) const
  {
    if (node_ == o.node_)
      return true;
    if (kind() != o.kind())
      return false;
    switch (kind()) {
    case Kind::var: return index() == o.index();
    case Kind::not_: return child() == o.child();
    default: return left() == o.left() && right() == o.right();
    }
  }

  int max_var() const
  {
    switch (kind()) {
    case Kind::var: return index();
    case Kind::not_: return child().max_var();
    default: return std::max(left().max_var(), right().max_var());
    }
  }

  bool is_monotone() const
  {
    switch (kind()) {
    case Kind::var: return true;
    case Kind::not_: return false;
    default: return left().is_monotone() && right().is_monotone();
    }
  }

private:
  struct Node {
    Kind kind;
    int index;
    std::shared_ptr<const Node> left, right;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

namespace detail {

inline int precedence(Formula::Kind k) { return k == Formula::Kind::or_ ? 1 : k == Formula::Kind::and_ ? 2 : 3; }

inline void print(const Formula& f, std::string& out)
{
  using K = Formula::Kind;
  switch (f.kind()) {
  case K::var:
    out += "x" + std::to_string(f.index());
    return;
  case K::not_: {
    out += "!";
    bool paren = f.child().kind() == K::and_ || f.child().kind() == K::or_;
    if (paren)
      out += "(";
    print(f.child(), out);
    if (paren)
      out += ")";
    return;
  }
  default: {
    int prec = precedence(f.kind());
    // left-assoc: same-precedence left child needs no parens, right child does
    bool lp = precedence(f.left().kind()) < prec;
    bool rp = precedence(f.right().kind()) <= prec;
    if (lp)
      out += "(";
    print(f.left(), out);
    if (lp)
      out += ")";
    out += f.kind() == K::and_ ? " & " : " | ";
    if (rp)
      out += "(";
    print(f.right(), out);
    if (rp)
      out += ")";
  }
  }
}

class Parser {
public:
  explicit Parser(std::string_view s) : s_(s) {}

  Formula parse()
  {
    auto f = parse_or();
    skip();
    if (pos_ != s_.size())
      throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return f;
  }

private:
  void skip()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  // one of the tokens, ASCII or UTF-8 alias; advances on match
  bool accept(std::string_view ascii, std::string_view utf8)
  {
    skip();
    if (s_.substr(pos_, ascii.size()) == ascii) {
      pos_ += ascii.size();
      return true;
    }
    if (!utf8.empty() && s_.substr(pos_, utf8.size()) == utf8) {
      pos_ += utf8.size();
      return true;
    }
    return false;
  }

  Formula parse_or()
  {
    auto f = parse_and();
    while (accept("|", "∨"))
      f = Formula::disj(f, parse_and());
    return f;
  }

  Formula parse_and()
  {
    auto f = parse_unary();
    while (accept("&", "∧"))
      f = Formula::conj(f, parse_unary());
    return f;
  }

  Formula parse_unary()
  {
    if (accept("!", "¬"))
      return Formula::negate(parse_unary());
    skip();
    if (pos_ >= s_.size())
      throw ParseError("unexpected end of input", pos_);
    if (s_[pos_] == '(') {
      std::size_t open = pos_++;
      auto f = parse_or();
      if (!accept(")", ""))
        throw ParseError("unbalanced '(' opened at " + std::to_string(open), pos_);
      return f;
    }
    if (s_[pos_] == 'x') {
      std::size_t start = pos_++;
      std::size_t digits = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      if (digits == pos_)
        throw ParseError("expected digits after 'x'", pos_);
      if (pos_ - digits > 3)
        throw ParseError("variable index out of range", start);
      int i = std::stoi(std::string(s_.substr(digits, pos_ - digits)));
      if (i < 1 || i > BooleanFunction::max_vars)
        throw ParseError("variable index " + std::to_string(i) + " outside [1,24]", start);
      return Formula::var(i);
    }
    throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline Formula parse_formula(std::string_view text) { return detail::Parser(text).parse(); }

inline std::string to_string(const Formula& f)
{
  std::string out;
  detail::print(f, out);
  return out;
}

inline BooleanFunction evaluate(const Formula& f, int n)
{
  if (n > BooleanFunction::max_vars)
    throw std::out_of_range("n above the variable cap");
  if (f.max_var() > n)
    throw std::invalid_argument("formula uses x" + std::to_string(f.max_var()) + " but n = " + std::to_string(n));
  using K = Formula::Kind;
  switch (f.kind()) {
  case K::var: return BooleanFunction::variable(n, f.index());
  case K::not_: return ~evaluate(f.child(), n);
  case K::and_: return evaluate(f.left(), n) & evaluate(f.right(), n);
  default: return evaluate(f.left(), n) | evaluate(f.right(), n);
  }
}

/// swap & and | throughout
inline Formula swap_gates(const Formula& f)
{
  using K = Formula::Kind;
  switch (f.kind()) {
  case K::var: return f;
  case K::not_: return Formula::negate(swap_gates(f.child()));
  case K::and_: return Formula::disj(swap_gates(f.left()), swap_gates(f.right()));
  default: return Formula::conj(swap_gates(f.left()), swap_gates(f.right()));
  }
}

/// G_1 = y1, G_{m+1} = y1 | (y2 & G_m) over variables vars[0..2m-2]
inline Formula chain_formula(std::span<const int> vars)
{
  if (vars.size() % 2 == 0)
    throw std::invalid_argument("chain needs an odd number of variables");
  Formula f = Formula::var(vars.back());
  for (std::size_t k = vars.size() - 1; k >= 2; k -= 2)
    f = Formula::disj(Formula::var(vars[k - 2]), Formula::conj(Formula::var(vars[k - 1]), f));
  return f;
}

/// the named constructions; param is n for AND/OR and m for g/G
inline Formula builtin(std::string_view name, int param = 0)
{
  auto need = [&](bool ok) {
    if (!ok)
      throw std::out_of_range("parameter " + std::to_string(param) + " out of range for " + std::string(name));
  };
  if (name == "AND" || name == "OR") {
    need(param >= 1 && param <= BooleanFunction::max_vars);
    Formula f = Formula::var(1);
    for (int i = 2; i <= param; ++i)
      f = name == "AND" ? Formula::conj(f, Formula::var(i)) : Formula::disj(f, Formula::var(i));
    return f;
  }
  if (name == "g") {
    // (x1|x2) & (x3 | (x4 & (x5 | ... (x_{2m-1} | (x_{2m} & x1)))))
    need(param >= 1 && 2 * param <= BooleanFunction::max_vars);
    int m = param;
    Formula head = Formula::disj(Formula::var(1), Formula::var(2));
    if (m == 1)
      return Formula::conj(head, Formula::var(1));
    std::vector<int> vars;
    for (int i = 3; i <= 2 * m; ++i)
      vars.push_back(i);
    vars.push_back(1);
    return Formula::conj(head, chain_formula(vars));
  }
  if (name == "G") {
    need(param >= 1 && 2 * param - 1 <= BooleanFunction::max_vars);
    std::vector<int> vars;
    for (int i = 1; i <= 2 * param - 1; ++i)
      vars.push_back(i);
    return chain_formula(vars);
  }
  if (name == "g3clauses")
    return parse_formula("(x1 | x2) & (x3 | x4) & (x1 | x3 | x5) & (x3 | x5 | x6)");
  if (name == "gprime3")
    return parse_formula("(x1 | x2) & (x3 | x4) & (x1 | x3 | x5) & (x2 | x4 | x6)");
  if (name == "g4clauses")
    return parse_formula("(x1 | x2) & (x3 | x4) & (x3 | x5 | x6) & (x1 | x3 | x5 | x7) & (x3 | x5 | x7 | x8)");
  if (name == "gprime4")
    return parse_formula("(x1 | x2) & (x3 | x4) & (x3 | x5 | x6) & (x1 | x3 | x5 | x7) & (x2 | x3 | x6 | x8)");
  if (name == "tau")
    return parse_formula("!(x1 & x2)");
  if (name == "iota")
    return Formula::var(1);
  throw std::invalid_argument("unknown builtin '" + std::string(name) + "'");
}

} // namespace fei
