#pragma once

#include "biased.hpp"
#include "bounds.hpp"
#include "boolean_function.hpp"
#include "formula.hpp"
#include "lex.hpp"
#include "spectrum.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace fei {

struct NamedCheck {
  std::string name;
  Rational probability;
  Rational influence;
  double entropy = 0.0;
  double ratio = 0.0;
  Rational reference_influence;
  double reference_entropy = 0.0; // reference lower decimal
  double reference_ratio = 0.0;

  bool passed() const
  {
    return probability == Rational(1, 2) && influence == reference_influence && entropy > reference_entropy && ratio > reference_ratio;
  }
};

/// g3, g3', g4, g4' against their reference parameters
inline std::vector<NamedCheck> verify_named()
{
  struct Row {
    const char* name;
    const char* builtin_name;
    int n;
    Rational I;
    double H, C;
  };
  const Row rows[] = {
      {"g3", "g3clauses", 6, Rational(13, 8), 3.92434, 6.278944},
      {"g3'", "gprime3", 6, Rational(13, 8), 3.9669, 6.34704},
      {"g4", "g4clauses", 8, Rational(53, 32), 4.16885, 6.35253},
      {"g4'", "gprime4", 8, Rational(53, 32), 4.17635, 6.36396},
  };
  std::vector<NamedCheck> out;
  for (const auto& r : rows) {
    auto pr = profile(evaluate(builtin(r.builtin_name), r.n));
    out.push_back({r.name, pr.p, pr.influence, pr.entropy, pr.entropy / to_double(pr.influence - 1), r.I, r.H, r.C});
  }
  return out;
}

/// truth table of a k <= 4 variable function packed with index 0 at bit 0
using SmallTable = std::uint32_t;

inline BooleanFunction small_to_function(int k, SmallTable v)
{
  return BooleanFunction::from_predicate(k, [v](std::uint64_t i) { return (v >> i) & 1; });
}

inline SmallTable function_to_small(const BooleanFunction& f)
{
  SmallTable v = 0;
  for (std::uint64_t i = 0; i < f.size(); ++i)
    v |= SmallTable(f[i]) << i;
  return v;
}

/// orbit representatives under input permutations and dualization
class SmallCanonicalizer {
public:
  explicit SmallCanonicalizer(int k) : k_(k)
  {
    if (k < 1 || k > 4)
      throw std::out_of_range("canonicalizer supports 1..4 variables");
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    const std::uint32_t N = 1u << k;
    do {
      std::vector<std::uint32_t> map(N);
      for (std::uint32_t i = 0; i < N; ++i) {
        std::uint32_t src = 0;
        for (int j = 0; j < k; ++j)
          src |= ((i >> (k - 1 - perm[j])) & 1u) << (k - 1 - j);
        map[i] = src;
      }
      maps_.push_back(std::move(map));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  SmallTable canonical(SmallTable v) const
  {
    const std::uint32_t N = 1u << k_;
    SmallTable best = ~SmallTable{0};
    SmallTable dual = 0;
    for (std::uint32_t i = 0; i < N; ++i)
      dual |= SmallTable(!((v >> (N - 1 - i)) & 1)) << i;
    for (SmallTable w : {v, dual})
      for (const auto& map : maps_) {
        SmallTable u = 0;
        for (std::uint32_t i = 0; i < N; ++i)
          u |= ((w >> map[i]) & 1u) << i;
        best = std::min(best, u);
      }
    return best;
  }

private:
  int k_;
  std::vector<std::vector<std::uint32_t>> maps_;
};

struct BaseCandidate {
  int k = 0;
  SmallTable table = 0;
  double rho = 0.0; // bias fixed point
  double p = 0.0;   // (1 - rho)/2
  double derivative = 0.0;
  bool attractive = false;
  double biased_influence = 0.0;
  double biased_entropy = 0.0;
  double bound = 0.0;
};

struct BaseSearch {
  std::vector<BaseCandidate> ranked; // descending bound, ties by (k, table)
  std::uint64_t functions = 0;       // truth tables enumerated
  std::uint64_t evaluated = 0;       // fixed points scored
  std::uint64_t skipped = 0;         // fixed points failing the denominator/entropy guard
  double tau_bound = 0.0;
};

/// all functions on k = 1..max_vars variables; each interior bias fixed point with
/// It > V and Ht > 0 is scored by the general biased bound
inline BaseSearch search_biased_bases(int max_vars, bool prune = true, std::size_t keep = 20)
{
  if (max_vars < 1 || max_vars > 4)
    throw std::out_of_range("search_biased_bases: max_vars outside [1,4]");
  BaseSearch res;
  std::vector<BaseCandidate> all;
  for (int k = 1; k <= max_vars; ++k) {
    SmallCanonicalizer canon(k);
    const std::uint64_t count = std::uint64_t{1} << (1u << k);
    for (std::uint64_t v = 0; v < count; ++v) {
      ++res.functions;
      if (prune && canon.canonical(SmallTable(v)) != v)
        continue;
      auto g = small_to_function(k, SmallTable(v));
      auto fps = bias_fixed_points(g);
      if (fps.identity)
        continue;
      for (const auto& fp : fps.points) {
        double p = (1.0 - fp.rho) / 2.0;
        std::vector<double> eta(k, fp.rho);
        auto bp = biased_profile(g, eta);
        double V = 4.0 * p * (1.0 - p);
        if (!(bp.influence - V > 1e-9) || !(bp.entropy > 1e-12)) {
          ++res.skipped;
          continue;
        }
        BaseCandidate c;
        c.k = k;
        c.table = SmallTable(v);
        c.rho = fp.rho;
        c.p = p;
        c.derivative = fp.derivative;
        c.attractive = fp.attractive;
        c.biased_influence = bp.influence;
        c.biased_entropy = bp.entropy;
        c.bound = general_biased_bound(g, p, lex_profile_truncated(p, 60).profile());
        ++res.evaluated;
        all.push_back(c);
      }
    }
  }
  std::sort(all.begin(), all.end(), [](const BaseCandidate& a, const BaseCandidate& b) {
    if (a.bound != b.bound)
      return a.bound > b.bound;
    if (a.k != b.k)
      return a.k < b.k;
    return a.table < b.table;
  });
  if (all.size() > keep)
    all.resize(keep);
  res.ranked = std::move(all);
  res.tau_bound = general_biased_bound(tau_function(), kPhi);
  return res;
}

enum class BalancedScope { all, monotone, read_once };

struct BalancedBest {
  bool found = false;
  BooleanFunction function;
  Rational influence;
  double entropy = 0.0;
  double ratio = 0.0;
  std::uint64_t candidates = 0;
};

namespace detail {

// read-once monotone functions on every nonempty subset of n <= 6 variables,
// each embedded into n variables (stored as 64-bit truth tables)
inline std::vector<std::uint64_t> read_once_tables(int n)
{
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::set<std::uint64_t>> ro(full + 1);
  const std::uint64_t N = std::uint64_t{1} << n;
  auto var_table = [&](int j) {
    std::uint64_t t = 0;
    for (std::uint64_t i = 0; i < N; ++i)
      if (!((i >> (n - 1 - j)) & 1))
        t |= std::uint64_t{1} << i;
    return t;
  };
  for (std::uint32_t S = 1; S <= full; ++S) {
    if (std::popcount(S) == 1) {
      ro[S].insert(var_table(std::countr_zero(S)));
      continue;
    }
    std::uint32_t low = S & (~S + 1);
    // A holds the lowest element of S so each split is seen once
    for (std::uint32_t A = (S - 1) & S; A; A = (A - 1) & S) {
      if (!(A & low))
        continue;
      std::uint32_t B = S ^ A;
      for (auto f : ro[A])
        for (auto g : ro[B]) {
          ro[S].insert(f & g);
          ro[S].insert(f | g);
        }
    }
  }
  std::set<std::uint64_t> all;
  for (std::uint32_t S = 1; S <= full; ++S)
    all.insert(ro[S].begin(), ro[S].end());
  return {all.begin(), all.end()};
}

} // namespace detail

namespace detail {

// tables increasing in every index bit, index 0 at bit 0
inline std::vector<std::uint64_t> index_monotone_tables(int n)
{
  std::vector<std::uint64_t> cur{0, 1};
  for (int k = 1; k <= n; ++k) {
    const int half = 1 << (k - 1);
    std::vector<std::uint64_t> next;
    for (auto lo : cur)
      for (auto hi : cur)
        if ((lo & ~hi) == 0)
          next.push_back(lo | (hi << half));
    cur = std::move(next);
  }
  return cur;
}

} // namespace detail

/// max H/(I-1) over balanced functions with I > 1; ties go to the smaller truth table.
/// scope all needs n <= 4; monotone and read_once take n <= 6
inline BalancedBest search_balanced_ratio(int n, BalancedScope scope)
{
  if (n < 1 || n > 6)
    throw std::out_of_range("search_balanced_ratio: n outside [1,6]");
  if (scope == BalancedScope::all && n > 4)
    throw std::out_of_range("search_balanced_ratio: exhaustive scope needs n <= 4");
  const std::uint64_t N = std::uint64_t{1} << n;
  std::vector<std::uint64_t> tables; // index 0 at bit 0
  if (scope == BalancedScope::all) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << N); ++v)
      tables.push_back(v);
  } else if (scope == BalancedScope::monotone) {
    // monotone in x means decreasing in the index bits: reverse the index
    for (auto t : detail::index_monotone_tables(n)) {
      if (std::popcount(t) != int(N / 2))
        continue;
      std::uint64_t r = 0;
      for (std::uint64_t i = 0; i < N; ++i)
        r |= ((t >> i) & 1) << (N - 1 - i);
      tables.push_back(r);
    }
  } else {
    tables = detail::read_once_tables(n);
  }
  BalancedBest best;
  best.ratio = -1.0;
  std::vector<std::int32_t> buf(N);
  for (auto t : tables) {
    if (std::popcount(t) != int(N / 2))
      continue;
    ++best.candidates;
    for (std::uint64_t i = 0; i < N; ++i)
      buf[i] = ((t >> i) & 1) ? -1 : 1;
    walsh_hadamard(buf);
    std::uint64_t wsum = 0;
    for (std::uint64_t S = 0; S < N; ++S)
      wsum += std::uint64_t(std::popcount(S)) * std::uint64_t(std::int64_t(buf[S]) * buf[S]);
    Rational I(Integer(wsum), Integer(N * N));
    if (I <= 1)
      continue;
    auto f = BooleanFunction::from_predicate(n, [t](std::uint64_t i) { return (t >> i) & 1; });
    double H = spectral_entropy(wht_spectrum(f));
    double C = H / to_double(I - 1);
    if (!best.found || C > best.ratio || (C == best.ratio && f.to_uint() < best.function.to_uint())) {
      best.found = true;
      best.function = f;
      best.influence = I;
      best.entropy = H;
      best.ratio = C;
    }
  }
  return best;
}

inline BalancedBest search_balanced_ratio(int n)
{
  return search_balanced_ratio(n, n <= 4 ? BalancedScope::all : BalancedScope::monotone);
}

} // namespace fei
