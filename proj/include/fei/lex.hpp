#pragma once

#include "boolean_function.hpp"
#include "formula.hpp"
#include "profile.hpp"
#include "rational.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fei {

/// true exactly on indices 0..s-1
inline BooleanFunction lex_truth_table(int n, std::uint64_t s)
{
  BooleanFunction probe(n);
  if (s > probe.size())
    throw std::out_of_range("lex_truth_table: s exceeds 2^n");
  return BooleanFunction::from_predicate(n, [s](std::uint64_t i) { return i < s; });
}

/// decision-list formula x1 o1 (x2 o2 (... x_n)), o_i = & if s_i = 0 else |
inline Formula lex_formula(int n, std::uint64_t s)
{
  if (n < 1 || n > BooleanFunction::max_vars || s >= (std::uint64_t{1} << n) || s % 2 == 0)
    throw std::invalid_argument("lex_formula needs odd 0 < s < 2^n");
  Formula f = Formula::var(n);
  for (int i = n - 1; i >= 1; --i) {
    bool bit = (s >> (n - i)) & 1;
    f = bit ? Formula::disj(Formula::var(i), f) : Formula::conj(Formula::var(i), f);
  }
  return f;
}

/// sum_{x<s} popcount(x)
inline std::uint64_t weight_prefix_sum(std::uint64_t s)
{
  std::uint64_t total = 0;
  for (int b = 0; b < 63 && (std::uint64_t{1} << b) < s; ++b) {
    std::uint64_t block = std::uint64_t{1} << (b + 1), half = std::uint64_t{1} << b;
    std::uint64_t rem = s % block;
    total += (s / block) * half + (rem > half ? rem - half : 0);
  }
  return total;
}

/// I[l_n<s>] = 2sn/N - (4/N) sum_{x<s} wt(x)
inline Rational hart_influence(int n, std::uint64_t s)
{
  if (n < 1 || n > 62 || s > (std::uint64_t{1} << n))
    throw std::out_of_range("hart_influence: s outside [0, 2^n]");
  Integer N = Integer(1) << n;
  Integer num = Integer(2) * s * n - Integer(4) * weight_prefix_sum(s);
  return Rational(num, N);
}

/// eventually periodic binary expansion 0.(preperiod)(period)^inf
struct BinaryExpansion {
  std::vector<std::uint8_t> preperiod;
  std::vector<std::uint8_t> period{0};

  static BinaryExpansion from_rational(const Rational& mu)
  {
    if (mu < 0 || mu > 1)
      throw std::domain_error("mu outside [0,1]");
    BinaryExpansion e;
    if (mu == 1) {
      e.period = {1};
      return e;
    }
    Integer num = boost::multiprecision::numerator(mu), den = boost::multiprecision::denominator(mu);
    std::map<Integer, std::size_t> seen;
    std::vector<std::uint8_t> digits;
    while (!seen.count(num)) {
      seen[num] = digits.size();
      num *= 2;
      std::uint8_t d = num >= den ? 1 : 0;
      if (d)
        num -= den;
      digits.push_back(d);
    }
    std::size_t start = seen[num];
    e.preperiod.assign(digits.begin(), digits.begin() + start);
    e.period.assign(digits.begin() + start, digits.end());
    // dyadic values stop at remainder 0, which repeats with digit 0
    return e;
  }

  Rational value() const
  {
    Rational v = 0, scale = 1;
    for (auto b : preperiod) {
      scale /= 2;
      if (b)
        v += scale;
    }
    return v + scale * periodic_value();
  }

  /// value of 0.(period)^inf
  Rational periodic_value() const
  {
    Integer word = 0;
    for (auto b : period)
      word = word * 2 + b;
    return Rational(word, (Integer(1) << period.size()) - 1);
  }

  bool dyadic() const { return period.size() == 1 && period[0] == 0; }
};

/// sum_i (k_i - 2i) 2^{1-k_i} over the 1-positions k_0 < k_1 < ...
inline Rational influence_from_expansion(const BinaryExpansion& e)
{
  Rational total = 0;
  long ones = 0;
  long pos = 0;
  for (auto b : e.preperiod) {
    ++pos;
    if (b) {
      total += Rational(pos - 2 * ones) * pow2_rational(1 - int(pos));
      ++ones;
    }
  }
  const long L = long(e.period.size());
  long per_ones = 0;
  for (auto b : e.period)
    per_ones += b;
  if (per_ones == 0)
    return total;
  // repetition r contributes (A + r B) 2^{1-P-o} x^r with x = 2^{-L}
  Rational x = pow2_rational(-int(L));
  Rational s0 = 1 / (1 - x), s1 = x / ((1 - x) * (1 - x));
  const long B = L - 2 * per_ones;
  long j = 0;
  for (long o = 1; o <= L; ++o) {
    if (!e.period[o - 1])
      continue;
    long A = pos + o - 2 * (ones + j);
    total += pow2_rational(int(1 - pos - o)) * (Rational(A) * s0 + Rational(B) * s1);
    ++j;
  }
  return total;
}

struct LexProfile {
  double mu = 0.0;
  std::optional<Rational> mu_exact;
  std::optional<ExactProfile> exact; // (p, I) exact, H float
  double influence = 0.0;
  double entropy = 0.0;
  double error_influence = 0.0;
  double error_entropy = 0.0;

  Profile profile() const { return {mu, influence, entropy}; }
};

namespace detail {

// apply step maps for bits in reverse order (innermost first)
inline ExactProfile apply_lex_bits(ExactProfile inner, const std::vector<std::uint8_t>& bits)
{
  for (auto it = bits.rbegin(); it != bits.rend(); ++it)
    inner = with_iota(inner, *it ? Gate::join : Gate::meet);
  return inner;
}

} // namespace detail

/// profile of l<mu> for rational mu through the periodic fixed point
inline LexProfile lex_profile_exact(const Rational& mu)
{
  auto e = BinaryExpansion::from_rational(mu);
  Rational tail = e.periodic_value();
  // one pass over the period from zero influence/entropy gives the constants
  ExactProfile c = detail::apply_lex_bits(ExactProfile{tail, 0, 0.0}, e.period);
  if (c.p != tail)
    throw std::logic_error("lex period does not close");
  Rational x = pow2_rational(-int(e.period.size()));
  ExactProfile cycle{tail, c.influence / (1 - x), c.entropy / (1.0 - to_double(x))};
  ExactProfile out = detail::apply_lex_bits(cycle, e.preperiod);
  LexProfile lp;
  lp.mu = to_double(mu);
  lp.mu_exact = mu;
  lp.exact = out;
  lp.influence = to_double(out.influence);
  lp.entropy = out.entropy;
  return lp;
}

/// floor(mu 2^K) / 2^K
inline Rational truncate_bits(const Rational& mu, int bits)
{
  Integer scale = Integer(1) << bits;
  Integer num = boost::multiprecision::numerator(mu) * scale / boost::multiprecision::denominator(mu);
  return Rational(num, scale);
}

/// sum_{k>K} k x^k
inline double tail_k_xk(int K, double x)
{
  return std::pow(x, K + 1) * ((K + 1) - K * x) / ((1 - x) * (1 - x));
}

/// profile of l<mu_K> with certified distance to l<mu>
inline LexProfile lex_profile_truncated(const Rational& mu, int bits)
{
  if (bits < 8 || bits > 60)
    throw std::out_of_range("bits outside [8, 60]");
  if (mu < 0 || mu > 1)
    throw std::domain_error("mu outside [0,1]");
  Rational mu_k = mu == 1 ? Rational(1) : truncate_bits(mu, bits);
  LexProfile lp = lex_profile_exact(mu_k);
  lp.mu = to_double(mu);
  lp.mu_exact = mu;
  lp.error_influence = 2.0 * tail_k_xk(bits, 0.5);
  lp.error_entropy = 12.0 * tail_k_xk(bits, std::sqrt(0.5));
  return lp;
}

inline LexProfile lex_profile_truncated(double mu, int bits)
{
  if (!(mu >= 0.0 && mu <= 1.0))
    throw std::domain_error("mu outside [0,1]");
  auto lp = lex_profile_truncated(Rational(mu), bits);
  lp.mu_exact.reset();
  return lp;
}

/// mean number of variables read by the decision list, by enumeration
inline Rational average_reads(int n, std::uint64_t s)
{
  if (n < 1 || n > BooleanFunction::max_vars)
    throw std::out_of_range("n outside [1,24]");
  if (s % 2 == 0 || s >= (std::uint64_t{1} << n))
    throw std::invalid_argument("average_reads needs odd s < 2^n");
  std::uint64_t N = std::uint64_t{1} << n, total = 0;
  for (std::uint64_t x = 0; x < N; ++x) {
    int k = 1;
    for (; k < n; ++k) {
      bool x_true = ((x >> (n - k)) & 1) == 0;
      bool is_or = (s >> (n - k)) & 1;
      if (x_true == is_or)
        break; // output decided
    }
    total += std::uint64_t(k);
  }
  return Rational(Integer(total), Integer(N));
}

/// fraction of assignments to x_1..x_{k-1} after which f still depends on x_k
inline Rational dependence_probability(const BooleanFunction& f, int k)
{
  int n = f.num_vars();
  if (k < 1 || k > n)
    throw std::out_of_range("variable index out of range");
  std::uint64_t block = std::uint64_t{1} << (n - k + 1), half = block / 2;
  std::uint64_t prefixes = f.size() / block, hits = 0;
  for (std::uint64_t p = 0; p < prefixes; ++p) {
    std::uint64_t base = p * block;
    for (std::uint64_t t = 0; t < half; ++t)
      if (f[base + t] != f[base + half + t]) {
        ++hits;
        break;
      }
  }
  return Rational(Integer(hits), Integer(prefixes));
}

struct InfluenceScan {
  Rational step;
  Rational maximum;
  Rational argmax;
  std::vector<Rational> attainers; // points with I = 4/3
  std::size_t points = 0;
};

/// influence over mu = j*step/3 in [lo, hi) (hi included when it is 1)
inline InfluenceScan influence_scan(const Rational& grid_step, const Rational& lo = 0, const Rational& hi = 1)
{
  if (grid_step <= 0)
    throw std::invalid_argument("grid_step must be positive");
  auto den = boost::multiprecision::denominator(grid_step);
  if ((den & (den - 1)) != 0)
    throw std::invalid_argument("grid_step must be dyadic");
  InfluenceScan r;
  r.step = grid_step / 3;
  r.maximum = -1;
  const Rational four_thirds(4, 3);
  for (Rational mu = lo; mu < hi || (mu == hi && hi == 1); mu += r.step) {
    Rational I = influence_from_expansion(BinaryExpansion::from_rational(mu));
    ++r.points;
    if (I > r.maximum) {
      r.maximum = I;
      r.argmax = mu;
    }
    if (I == four_thirds)
      r.attainers.push_back(mu);
  }
  return r;
}

} // namespace fei
