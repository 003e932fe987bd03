#pragma once

#include "boolean_function.hpp"
#include "profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace fei {

/// A(S) = sum_x f(x) chi_S(x) = N * fhat(S), S as a bitmask over index bits
struct Spectrum {
  int n = 0;
  std::vector<std::int32_t> coeffs;

  std::uint64_t size() const { return coeffs.size(); }
  std::int32_t operator[](std::uint64_t s) const { return coeffs[s]; }

  /// p(S) = A(S)^2 / N^2
  Rational probability(std::uint64_t s) const
  {
    Integer a = coeffs[s];
    return Rational(a * a, Integer(1) << (2 * n));
  }
};

/// in-place unnormalized Walsh-Hadamard butterfly
template <class T>
void walsh_hadamard(std::vector<T>& v)
{
  for (std::size_t len = 1; len < v.size(); len <<= 1)
    for (std::size_t i = 0; i < v.size(); i += len << 1)
      for (std::size_t j = i; j < i + len; ++j) {
        T a = v[j], b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
}

inline Spectrum wht_spectrum(const BooleanFunction& f)
{
  Spectrum sp;
  sp.n = f.num_vars();
  std::uint64_t N = f.size();
  sp.coeffs.resize(N);
  for (std::uint64_t i = 0; i < N; ++i)
    sp.coeffs[i] = f[i] ? -1 : 1;
  walsh_hadamard(sp.coeffs);
  // chi_S(x) = prod (-1)^{bit}  up to the sign (-1)^{|S|}
  for (std::uint64_t s = 0; s < N; ++s)
    if (std::popcount(s) & 1)
      sp.coeffs[s] = -sp.coeffs[s];
  return sp;
}

/// sum_S A(S)^2 |S| / N^2
inline Rational spectral_influence(const Spectrum& sp)
{
  std::uint64_t acc = 0;
  for (std::uint64_t s = 0; s < sp.size(); ++s) {
    std::uint64_t a = std::uint64_t(std::abs(std::int64_t(sp.coeffs[s])));
    acc += a * a * std::uint64_t(std::popcount(s));
  }
  return Rational(Integer(acc), Integer(1) << (2 * sp.n));
}

/// (|A|, multiplicity) pairs in ascending |A|
inline std::vector<std::pair<std::int64_t, std::uint64_t>> magnitude_histogram(const Spectrum& sp)
{
  std::vector<std::int32_t> mags(sp.coeffs.size());
  std::transform(sp.coeffs.begin(), sp.coeffs.end(), mags.begin(), [](std::int32_t a) { return a < 0 ? -a : a; });
  std::sort(mags.begin(), mags.end());
  std::vector<std::pair<std::int64_t, std::uint64_t>> out;
  for (auto a : mags) {
    if (!out.empty() && out.back().first == a)
      ++out.back().second;
    else
      out.emplace_back(a, 1);
  }
  return out;
}

/// Shannon entropy of the spectral distribution, 0 log 0 = 0
inline double spectral_entropy(const Spectrum& sp)
{
  CompensatedSum sum;
  for (auto [a, cnt] : magnitude_histogram(sp)) {
    if (a == 0)
      continue;
    // r = |a|/N is exact, so log2(r) has no cancellation even for r near 1
    double r = std::ldexp(double(a), -sp.n);
    sum.add(-2.0 * double(cnt) * r * r * std::log2(r));
  }
  return sum.value();
}

inline ExactProfile profile(const BooleanFunction& f)
{
  auto sp = wht_spectrum(f);
  return {f.probability_true(), spectral_influence(sp), spectral_entropy(sp)};
}

} // namespace fei
