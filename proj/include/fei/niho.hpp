#pragma once

#include "boolean_function.hpp"
#include "spectrum.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace fei {

namespace gf2 {

inline int degree(std::uint64_t p) { return p ? 63 - std::countl_zero(p) : -1; }

inline std::uint64_t mod(std::uint64_t a, std::uint64_t m)
{
  int dm = degree(m);
  for (int d = degree(a); d >= dm; d = degree(a))
    a ^= m << (d - dm);
  return a;
}

/// trial division by every polynomial of degree 1..deg/2
inline bool is_irreducible(std::uint64_t p)
{
  int d = degree(p);
  if (d < 1)
    return false;
  for (std::uint64_t q = 2; degree(q) <= d / 2; ++q)
    if (mod(p, q) == 0)
      return false;
  return true;
}

} // namespace gf2

/// GF(2^n) in the polynomial basis
class GaloisField {
public:
  explicit GaloisField(int n) : n_(n)
  {
    if (n < 1 || n > 24)
      throw std::out_of_range("field degree outside [1,24]");
    for (std::uint64_t p = std::uint64_t{1} << n; p < (std::uint64_t{2} << n); ++p)
      if (gf2::is_irreducible(p)) {
        modulus_ = p;
        return;
      }
    throw std::logic_error("no irreducible polynomial found");
  }

  GaloisField(int n, std::uint64_t modulus) : n_(n), modulus_(modulus)
  {
    if (gf2::degree(modulus) != n || !gf2::is_irreducible(modulus))
      throw std::invalid_argument("modulus is not an irreducible polynomial of degree n");
  }

  int degree() const { return n_; }
  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const
  {
    std::uint64_t r = 0;
    while (b) {
      if (b & 1)
        r ^= a;
      b >>= 1;
      a <<= 1;
      if (a >> n_ & 1)
        a ^= modulus_;
    }
    return r;
  }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const
  {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1)
        r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// sum_{i<n} a^{2^i}, always 0 or 1
  std::uint64_t trace(std::uint64_t a) const
  {
    std::uint64_t t = 0, x = a;
    for (int i = 0; i < n_; ++i) {
      t ^= x;
      x = mul(x, x);
    }
    if (t > 1)
      throw std::logic_error("trace left the prime field");
    return t;
  }

private:
  int n_;
  std::uint64_t modulus_ = 0;
};

/// element with coordinates c maps to index (N-1) xor c, so the zero element is the all-false input
inline std::uint64_t field_to_index(const GaloisField& F, std::uint64_t alpha) { return (F.size() - 1) ^ alpha; }

/// Tr(alpha^{2 sqrt(N) - 1}), true where the trace is 1
inline BooleanFunction niho(int n)
{
  if (n != 4 && n != 8 && n != 12)
    throw std::invalid_argument("niho: n must be 4, 8 or 12");
  GaloisField F(n);
  std::uint64_t r = (std::uint64_t{2} << (n / 2)) - 1;
  return BooleanFunction::from_predicate(n, [&](std::uint64_t i) {
    std::uint64_t alpha = field_to_index(F, i);
    return F.trace(F.pow(alpha, r)) == 1;
  });
}

/// multiplicities of fhat(S) in units of 1/sqrt(N)
inline std::map<std::int64_t, std::uint64_t> niho_spectrum_multiset(int n)
{
  auto sp = wht_spectrum(niho(n));
  std::int64_t root = std::int64_t{1} << (n / 2); // N fhat = A, fhat sqrt(N) = A / sqrt(N)
  std::map<std::int64_t, std::uint64_t> out;
  for (auto a : sp.coeffs) {
    if (a % root != 0)
      throw std::logic_error("niho spectrum is not a multiple of sqrt(N)");
    ++out[a / root];
  }
  return out;
}

struct NihoGap {
  double gap = 0.0;       // H[f + 2 delta] - H[f]
  double threshold = 0.0; // 8 / (3 sqrt N)
  double lipschitz = 0.0; // 12 n / sqrt N
};

inline NihoGap niho_gap(int n)
{
  auto f = niho(n);
  GaloisField F(n);
  auto g = f.flip_entry(field_to_index(F, 0));
  double sqrtN = std::sqrt(double(f.size()));
  return {spectral_entropy(wht_spectrum(g)) - spectral_entropy(wht_spectrum(f)), 8.0 / (3.0 * sqrtN), 12.0 * n / sqrtN};
}

} // namespace fei
