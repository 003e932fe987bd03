#pragma once

#include "boolean_function.hpp"
#include "rational.hpp"
#include "spectrum.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fei {

struct InfluenceGap {
  Rational gap;   // |I[f] - I[g]|
  Rational bound; // 2n/N
  bool holds() const { return gap <= bound; }
};

struct EntropyGap {
  double gap = 0.0;   // |H[f] - H[g]|
  double bound = 0.0; // 12n/sqrt(N)
  bool holds() const { return gap <= bound; }
};

inline InfluenceGap influence_gap(const BooleanFunction& f, std::uint64_t index)
{
  auto g = f.flip_entry(index);
  Rational d = f.average_sensitivity() - g.average_sensitivity();
  return {d < 0 ? Rational(-d) : d, Rational(2 * f.num_vars(), Integer(f.size()))};
}

inline EntropyGap entropy_gap(const BooleanFunction& f, std::uint64_t index)
{
  auto g = f.flip_entry(index);
  double d = spectral_entropy(wht_spectrum(f)) - spectral_entropy(wht_spectrum(g));
  return {std::fabs(d), 12.0 * f.num_vars() / std::sqrt(double(f.size()))};
}

/// signed counts of the odd coefficients of a = N(f + delta) after translating x0 to the all-false point
struct DeltaProfile {
  int n = 0;
  std::vector<std::int64_t> deltas; // deltas[k-1] = Delta_k, k = 1..N/2
  std::vector<std::int64_t> a_hat;  // translated a-hat(S), all odd

  Integer weighted_sum() const // sum Delta_k (2k-1)
  {
    Integer s = 0;
    for (std::size_t k = 1; k <= deltas.size(); ++k)
      s += Integer(deltas[k - 1]) * (2 * k - 1);
    return s;
  }
  Integer abs_sum() const
  {
    Integer s = 0;
    for (auto d : deltas)
      s += d < 0 ? -d : d;
    return s;
  }
  Integer abs_square_sum() const
  {
    Integer s = 0;
    for (std::size_t k = 1; k <= deltas.size(); ++k)
      s += Integer(deltas[k - 1] < 0 ? -deltas[k - 1] : deltas[k - 1]) * (2 * k - 1) * (2 * k - 1);
    return s;
  }
  Integer abs_linear_sum() const
  {
    Integer s = 0;
    for (std::size_t k = 1; k <= deltas.size(); ++k)
      s += Integer(deltas[k - 1] < 0 ? -deltas[k - 1] : deltas[k - 1]) * (2 * k - 1);
    return s;
  }

  bool sum_vanishes() const { return weighted_sum() == 0; }
  bool abs_sum_bounded() const { return abs_sum() <= Integer(1) << n; }
  bool square_sum_bounded() const
  {
    Integer N = Integer(1) << n;
    return abs_square_sum() <= N * (N - 1);
  }
  bool linear_sum_bounded() const
  {
    Integer s = abs_linear_sum();
    return s * s < Integer(1) << (3 * n); // s < N^{3/2}
  }

  /// entropy difference through the Delta_k; with f false at the point and g true there this is H[g] - H[f]
  double entropy_difference() const
  {
    const double N2 = std::ldexp(1.0, 2 * n);
    CompensatedSum s;
    for (std::size_t k = 2; k <= deltas.size(); ++k) {
      if (!deltas[k - 1])
        continue;
      double kk = double(k), d = double(deltas[k - 1]);
      s.add(d * kk * kk * std::log2(kk / (kk - 1.0)));
      s.add(d * (2.0 * kk - 1.0) * std::log2(kk - 1.0));
    }
    return 8.0 / N2 * s.value();
  }
};

/// f(index) must be false; g = f with index flipped to true
inline DeltaProfile delta_profile(const BooleanFunction& f, std::uint64_t index)
{
  if (index >= f.size())
    throw std::out_of_range("index out of range");
  if (f[index])
    throw std::invalid_argument("delta_profile: f must be false at the flipped point");
  auto af = wht_spectrum(f);
  const int n = f.num_vars();
  DeltaProfile dp;
  dp.n = n;
  dp.deltas.assign(f.size() / 2, 0);
  dp.a_hat.resize(f.size());
  // chi_S(x0) = (-1)^{#variables in S true at x0}; x_j true iff its index bit is 0
  std::uint64_t true_mask = ~index & (f.size() - 1);
  for (std::uint64_t S = 0; S < f.size(); ++S) {
    std::int64_t chi = (std::popcount(S & true_mask) & 1) ? -1 : 1;
    std::int64_t a = chi * std::int64_t(af[S]) - 1;
    dp.a_hat[S] = a;
    std::int64_t k = (std::llabs(a) + 1) / 2;
    dp.deltas[k - 1] += a > 0 ? 1 : -1;
  }
  return dp;
}

} // namespace fei
