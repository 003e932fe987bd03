#pragma once

#include "rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fei {

/// Dense truth table. Index i encodes an input: the j-th most significant of
/// the n bits is 0 iff x_j is true, so variable j lives at bit (n - j).
/// A set value bit means the output is true (-1).
class BooleanFunction {
public:
  static constexpr int max_vars = 24;

  BooleanFunction() : BooleanFunction(1) {}

  explicit BooleanFunction(int n, bool value = false) : n_(n)
  {
    check_vars(n);
    words_.assign(word_count(n), value ? ~std::uint64_t{0} : 0);
    trim();
  }

  static BooleanFunction from_bits(int n, std::span<const std::uint8_t> bits)
  {
    check_vars(n);
    if (bits.size() != (std::size_t{1} << n))
      throw std::invalid_argument("bit vector length " + std::to_string(bits.size()) + " != 2^" + std::to_string(n));
    BooleanFunction f(n);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] > 1)
        throw std::invalid_argument("bits must be 0 or 1");
      if (bits[i])
        f.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    return f;
  }

  static BooleanFunction from_bits(int n, std::initializer_list<int> bits)
  {
    std::vector<std::uint8_t> v(bits.begin(), bits.end());
    return from_bits(n, v);
  }

  template <class Pred>
  static BooleanFunction from_predicate(int n, Pred&& pred)
  {
    BooleanFunction f(n);
    for (std::uint64_t i = 0; i < f.size(); ++i)
      if (pred(i))
        f.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    return f;
  }

  static BooleanFunction from_words(int n, std::vector<std::uint64_t> words)
  {
    check_vars(n);
    if (words.size() != word_count(n))
      throw std::invalid_argument("word count mismatch");
    BooleanFunction f(n);
    f.words_ = std::move(words);
    f.trim();
    return f;
  }

  /// variable x_j (1-based) on n inputs
  static BooleanFunction variable(int n, int j)
  {
    check_vars(n);
    if (j < 1 || j > n)
      throw std::out_of_range("variable index out of range");
    int bit = n - j;
    return from_predicate(n, [bit](std::uint64_t i) { return ((i >> bit) & 1) == 0; });
  }

  static BooleanFunction constant(int n, bool value) { return BooleanFunction(n, value); }

  int num_vars() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }
  std::span<const std::uint64_t> words() const { return words_; }

  bool operator[](std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  bool at(std::uint64_t i) const
  {
    if (i >= size())
      throw std::out_of_range("index out of range");
    return (*this)[i];
  }

  std::uint64_t count_true() const
  {
    std::uint64_t c = 0;
    for (auto w : words_)
      c += std::popcount(w);
    return c;
  }

  Rational probability_true() const { return Rational(Integer(count_true()), Integer(size())); }

  bool is_constant() const { return count_true() == 0 || count_true() == size(); }

  BooleanFunction operator&(const BooleanFunction& o) const { return zip(o, [](auto a, auto b) { return a & b; }); }
  BooleanFunction operator|(const BooleanFunction& o) const { return zip(o, [](auto a, auto b) { return a | b; }); }
  BooleanFunction operator^(const BooleanFunction& o) const { return zip(o, [](auto a, auto b) { return a ^ b; }); }
  BooleanFunction operator~() const
  {
    BooleanFunction f = *this;
    for (auto& w : f.words_)
      w = ~w;
    f.trim();
    return f;
  }

  bool operator==(const BooleanFunction& o) const = default;

  /// lexicographic order of the value bit strings (index 0 first)
  bool operator<(const BooleanFunction& o) const
  {
    if (n_ != o.n_)
      return n_ < o.n_;
    for (std::uint64_t i = 0; i < size(); ++i)
      if ((*this)[i] != o[i])
        return !(*this)[i];
    return false;
  }

  /// value bits as an integer, index 0 as the most significant bit (n <= 6)
  std::uint64_t to_uint() const
  {
    if (n_ > 6)
      throw std::out_of_range("to_uint needs n <= 6");
    std::uint64_t v = 0;
    for (std::uint64_t i = 0; i < size(); ++i)
      v = (v << 1) | (*this)[i];
    return v;
  }

  static BooleanFunction from_uint(int n, std::uint64_t v)
  {
    if (n > 6)
      throw std::out_of_range("from_uint needs n <= 6");
    std::uint64_t N = std::uint64_t{1} << n;
    return from_predicate(n, [&](std::uint64_t i) { return (v >> (N - 1 - i)) & 1; });
  }

  BooleanFunction flip_entry(std::uint64_t i) const
  {
    if (i >= size())
      throw std::out_of_range("flip index out of range");
    BooleanFunction f = *this;
    f.words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
    return f;
  }

  /// f(x1..xn, y1..yk) = f(x1..xn)
  BooleanFunction extend_with_dummy(int k) const
  {
    if (k < 0 || n_ + k > max_vars)
      throw std::out_of_range("extend_with_dummy exceeds the variable cap");
    return from_predicate(n_ + k, [&](std::uint64_t i) { return (*this)[i >> k]; });
  }

  /// f(x) = ~f(~x); input negation maps index i to N-1-i
  BooleanFunction dual() const
  {
    std::uint64_t last = size() - 1;
    return from_predicate(n_, [&](std::uint64_t i) { return !(*this)[last - i]; });
  }

  /// conjunction/disjunction on disjoint inputs: result has n + o.n variables,
  /// this function reading the leading ones
  BooleanFunction disjoint_and(const BooleanFunction& o) const { return disjoint(o, false); }
  BooleanFunction disjoint_or(const BooleanFunction& o) const { return disjoint(o, true); }

  /// rename variables: new x_{perm[j]} takes the role of old x_j (0-based perm)
  BooleanFunction permute(std::span<const int> perm) const
  {
    if (perm.size() != std::size_t(n_))
      throw std::invalid_argument("permutation size mismatch");
    return from_predicate(n_, [&](std::uint64_t i) {
      std::uint64_t src = 0;
      for (int j = 0; j < n_; ++j) {
        std::uint64_t b = (i >> (n_ - 1 - perm[j])) & 1;
        src |= b << (n_ - 1 - j);
      }
      return (*this)[src];
    });
  }

  /// no false->true input flip lowers the output
  bool is_monotone() const
  {
    for (int b = 0; b < n_; ++b) {
      std::uint64_t s = std::uint64_t{1} << b;
      for (std::uint64_t i = 0; i < size(); ++i)
        if (!(i & s) && !(*this)[i] && (*this)[i | s])
          return false; // i has the variable true, i|s has it false
    }
    return true;
  }

  /// Pr_x[f(x) != f(x with x_j flipped)]
  Rational coordinate_influence(int j) const
  {
    if (j < 1 || j > n_)
      throw std::out_of_range("variable index out of range");
    return Rational(Integer(2 * sensitive_edges(n_ - j)), Integer(size()));
  }

  /// (1/N) sum_x #{j : f(x) != f(x ^ e_j)}
  Rational average_sensitivity() const
  {
    std::uint64_t edges = 0;
    for (int b = 0; b < n_; ++b)
      edges += sensitive_edges(b);
    return Rational(Integer(2 * edges), Integer(size()));
  }

  std::string to_hex() const
  {
    static const char* digits = "0123456789abcdef";
    std::string out;
    if (n_ < 2) {
      unsigned d = 0;
      for (std::uint64_t i = 0; i < size(); ++i)
        d |= unsigned((*this)[i]) << (3 - i);
      out.push_back(digits[d]);
      return out;
    }
    for (std::uint64_t k = 0; k < size() / 4; ++k) {
      unsigned d = 0;
      for (unsigned t = 0; t < 4; ++t)
        d |= unsigned((*this)[4 * k + t]) << (3 - t);
      out.push_back(digits[d]);
    }
    return out;
  }

  static BooleanFunction from_hex(int n, std::string_view hex)
  {
    check_vars(n);
    std::uint64_t N = std::uint64_t{1} << n;
    std::size_t want = n < 2 ? 1 : N / 4;
    if (hex.size() != want)
      throw std::invalid_argument("hex length " + std::to_string(hex.size()) + " != " + std::to_string(want));
    BooleanFunction f(n);
    for (std::size_t k = 0; k < hex.size(); ++k) {
      char c = hex[k];
      unsigned d;
      if (c >= '0' && c <= '9')
        d = c - '0';
      else if (c >= 'a' && c <= 'f')
        d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F')
        d = c - 'A' + 10;
      else
        throw std::invalid_argument(std::string("bad hex digit '") + c + "'");
      for (unsigned t = 0; t < 4; ++t) {
        std::uint64_t i = 4 * k + t;
        bool bit = (d >> (3 - t)) & 1;
        if (i >= N) {
          if (bit)
            throw std::invalid_argument("padding bits must be zero");
          continue;
        }
        if (bit)
          f.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
      }
    }
    return f;
  }

private:
  static std::size_t word_count(int n) { return n >= 6 ? std::size_t{1} << (n - 6) : 1; }

  static void check_vars(int n)
  {
    if (n < 1 || n > max_vars)
      throw std::out_of_range("variable count " + std::to_string(n) + " outside [1," + std::to_string(max_vars) + "]");
  }

  void trim()
  {
    if (n_ < 6)
      words_[0] &= (std::uint64_t{1} << (std::uint64_t{1} << n_)) - 1;
  }

  template <class Op>
  BooleanFunction zip(const BooleanFunction& o, Op op) const
  {
    if (n_ != o.n_)
      throw std::invalid_argument("variable count mismatch");
    BooleanFunction f = *this;
    for (std::size_t k = 0; k < words_.size(); ++k)
      f.words_[k] = op(words_[k], o.words_[k]);
    return f;
  }

  BooleanFunction disjoint(const BooleanFunction& o, bool is_or) const
  {
    int n = n_ + o.n_;
    check_vars(n);
    int k = o.n_;
    std::uint64_t mask = o.size() - 1;
    return from_predicate(n, [&](std::uint64_t i) {
      bool a = (*this)[i >> k], b = o[i & mask];
      return is_or ? (a || b) : (a && b);
    });
  }

  /// number of edges along index bit b with differing outputs
  std::uint64_t sensitive_edges(int b) const
  {
    std::uint64_t c = 0;
    if (b >= 6) {
      std::size_t stride = std::size_t{1} << (b - 6);
      for (std::size_t k = 0; k < words_.size(); ++k)
        if (!(k & stride))
          c += std::popcount(words_[k] ^ words_[k + stride]);
      return c;
    }
    static constexpr std::uint64_t low_half[6] = {
        0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
        0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull};
    unsigned s = 1u << b;
    for (auto w : words_)
      c += std::popcount((w ^ (w >> s)) & low_half[b]);
    return c;
  }

  int n_;
  std::vector<std::uint64_t> words_;
};

inline Rational conditional_probability(const BooleanFunction& f, const BooleanFunction& g)
{
  if (f.num_vars() != g.num_vars())
    throw std::invalid_argument("conditional_probability: variable count mismatch");
  auto cg = g.count_true();
  if (cg == 0)
    throw std::domain_error("conditioning on a never-true function");
  return Rational(Integer((f & g).count_true()), Integer(cg));
}

/// truth-table text format: "n=<int>" then the hex string
inline void write_table(std::ostream& os, const BooleanFunction& f)
{
  os << "n=" << f.num_vars() << "\n" << f.to_hex() << "\n";
}

inline BooleanFunction read_table(std::istream& is)
{
  std::string header, hex;
  if (!std::getline(is, header) || header.rfind("n=", 0) != 0)
    throw std::invalid_argument("truth table: expected 'n=<int>' header");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(header.substr(2), &used);
    if (used != header.size() - 2)
      throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw std::invalid_argument("truth table: bad header '" + header + "'");
  }
  if (!std::getline(is, hex))
    throw std::invalid_argument("truth table: missing hex line");
  while (!hex.empty() && (hex.back() == '\r' || hex.back() == ' '))
    hex.pop_back();
  return BooleanFunction::from_hex(n, hex);
}

} // namespace fei
