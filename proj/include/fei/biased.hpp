#pragma once

#include "boolean_function.hpp"
#include "entropy.hpp"
#include "profile.hpp"
#include "spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace fei {

/// ftilde(S) = E_{x~eta}[f(x) chitilde_S(x)], S as an index-bit mask
struct BiasedSpectrum {
  int n = 0;
  std::vector<double> eta; // eta[j-1] = E[x_j]
  std::vector<double> coeffs;
};

namespace detail {

inline void check_eta(const BooleanFunction& f, std::span<const double> eta)
{
  if (f.num_vars() > 16)
    throw std::out_of_range("biased analysis is capped at 16 variables");
  if (eta.size() != std::size_t(f.num_vars()))
    throw std::invalid_argument("bias vector length differs from n");
  for (double e : eta)
    if (!(e > -1.0 && e < 1.0))
      throw std::domain_error("bias must lie in (-1,1)");
}

} // namespace detail

/// per-coordinate tensor transform: weights (1 -+ eta)/2, basis (x - eta)/sqrt(1 - eta^2)
inline BiasedSpectrum biased_spectrum(const BooleanFunction& f, std::span<const double> eta)
{
  detail::check_eta(f, eta);
  const int n = f.num_vars();
  BiasedSpectrum sp{n, {eta.begin(), eta.end()}, std::vector<double>(f.size())};
  auto& v = sp.coeffs;
  for (std::uint64_t i = 0; i < f.size(); ++i)
    v[i] = f[i] ? -1.0 : 1.0;
  for (int j = 1; j <= n; ++j) {
    const double e = eta[j - 1], sigma = std::sqrt(1.0 - e * e);
    const double wt = (1.0 - e) / 2.0, wf = (1.0 + e) / 2.0; // x_j true = -1, false = +1
    const double ct = (-1.0 - e) / sigma, cf = (1.0 - e) / sigma;
    const std::uint64_t s = std::uint64_t{1} << (n - j);
    for (std::uint64_t i = 0; i < f.size(); ++i) {
      if (i & s)
        continue;
      double vt = v[i], vf = v[i | s];
      v[i] = wt * vt + wf * vf;
      v[i | s] = wt * vt * ct + wf * vf * cf;
    }
  }
  return sp;
}

/// per-S weighted summation, O(4^n)
inline BiasedSpectrum biased_spectrum_direct(const BooleanFunction& f, std::span<const double> eta)
{
  detail::check_eta(f, eta);
  const int n = f.num_vars();
  BiasedSpectrum sp{n, {eta.begin(), eta.end()}, std::vector<double>(f.size())};
  std::vector<double> weight(f.size(), 1.0);
  for (std::uint64_t x = 0; x < f.size(); ++x)
    for (int j = 1; j <= n; ++j) {
      bool x_false = (x >> (n - j)) & 1;
      weight[x] *= x_false ? (1.0 + eta[j - 1]) / 2.0 : (1.0 - eta[j - 1]) / 2.0;
    }
  for (std::uint64_t S = 0; S < f.size(); ++S) {
    CompensatedSum acc;
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      double chi = 1.0;
      for (int j = 1; j <= n; ++j) {
        std::uint64_t b = std::uint64_t{1} << (n - j);
        if (!(S & b))
          continue;
        double xj = (x & b) ? 1.0 : -1.0, e = eta[j - 1];
        chi *= (xj - e) / std::sqrt(1.0 - e * e);
      }
      acc.add(weight[x] * (f[x] ? -1.0 : 1.0) * chi);
    }
    sp.coeffs[S] = acc.value();
  }
  return sp;
}

struct BiasedProfile {
  double influence = 0.0;
  double entropy = 0.0;
  std::vector<double> coordinate_influences; // [j-1] for x_j
  double probability_true = 0.0;
};

inline BiasedProfile biased_profile(const BiasedSpectrum& sp)
{
  BiasedProfile r;
  r.coordinate_influences.assign(sp.n, 0.0);
  std::vector<double> probs(sp.coeffs.size());
  std::vector<CompensatedSum> coord(sp.n);
  CompensatedSum infl;
  for (std::uint64_t S = 0; S < sp.coeffs.size(); ++S) {
    double p = sp.coeffs[S] * sp.coeffs[S];
    probs[S] = p;
    infl.add(p * std::popcount(S));
    for (int j = 1; j <= sp.n; ++j)
      if (S & (std::uint64_t{1} << (sp.n - j)))
        coord[j - 1].add(p);
  }
  std::sort(probs.begin(), probs.end());
  CompensatedSum ent;
  for (double p : probs)
    if (p > 0.0)
      ent.add(-p * std::log2(p));
  r.influence = infl.value();
  r.entropy = ent.value();
  for (int j = 0; j < sp.n; ++j)
    r.coordinate_influences[j] = coord[j].value();
  r.probability_true = (1.0 - sp.coeffs[0]) / 2.0;
  return r;
}

inline BiasedProfile biased_profile(const BooleanFunction& f, std::span<const double> eta)
{
  return biased_profile(biased_spectrum(f, eta));
}

/// profile of F(g_1, ..., g_k) on disjoint inputs
inline Profile ot_compose(const BooleanFunction& F, std::span<const Profile> gs)
{
  if (gs.size() != std::size_t(F.num_vars()))
    throw std::invalid_argument("ot_compose: arity mismatch");
  std::vector<double> eta;
  for (const auto& g : gs) {
    if (g.degenerate())
      throw std::domain_error("ot_compose: constant inner function");
    eta.push_back(g.expectation());
  }
  auto bp = biased_profile(F, eta);
  CompensatedSum I, H;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    I.add(bp.coordinate_influences[i] * *gs[i].influence_plus());
    H.add(bp.coordinate_influences[i] * *gs[i].entropy_plus());
  }
  H.add(bp.entropy);
  return {bp.probability_true, I.value(), H.value()};
}

/// coefficients c_k of E_g(rho) = sum_S ghat(S) rho^|S|
inline std::vector<Rational> bias_polynomial(const BooleanFunction& g)
{
  auto sp = wht_spectrum(g);
  std::vector<Integer> acc(g.num_vars() + 1, 0);
  for (std::uint64_t S = 0; S < sp.size(); ++S)
    acc[std::popcount(S)] += sp[S];
  std::vector<Rational> c;
  for (auto& a : acc)
    c.emplace_back(a, Integer(g.size()));
  return c;
}

/// dense real polynomial, coefficient k multiplies x^k
class Polynomial {
public:
  explicit Polynomial(std::vector<double> c) : c_(std::move(c))
  {
    while (!c_.empty() && c_.back() == 0.0)
      c_.pop_back();
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return int(c_.size()) - 1; }

  double operator()(double x) const
  {
    double r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      r = r * x + *it;
    return r;
  }

  Polynomial derivative() const
  {
    std::vector<double> d;
    for (std::size_t k = 1; k < c_.size(); ++k)
      d.push_back(double(k) * c_[k]);
    return Polynomial(d);
  }

  /// real roots in the closed interval [a, b]: critical points split it into
  /// monotone pieces, each bisected; tangential roots come from the critical points
  std::vector<double> roots(double a, double b, double tol = 1e-12, double touch = 1e-12) const
  {
    std::vector<double> out;
    if (degree() < 1)
      return out;
    std::vector<double> cuts{a};
    for (double c : derivative().roots(a, b, tol, touch))
      if (c > a && c < b)
        cuts.push_back(c);
    cuts.push_back(b);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      double u = cuts[k], v = cuts[k + 1], fu = (*this)(u), fv = (*this)(v);
      if (fu == 0.0)
        out.push_back(u);
      if ((fu < 0.0 && fv > 0.0) || (fu > 0.0 && fv < 0.0)) {
        while (v - u > tol) {
          double mid = 0.5 * (u + v), fm = (*this)(mid);
          if (fm == 0.0) {
            u = v = mid;
            break;
          }
          if ((fm < 0.0) == (fu < 0.0)) {
            u = mid;
            fu = fm;
          } else {
            v = mid;
          }
        }
        out.push_back(0.5 * (u + v));
      }
    }
    if ((*this)(b) == 0.0)
      out.push_back(b);
    for (std::size_t k = 1; k + 1 < cuts.size(); ++k)
      if (std::fabs((*this)(cuts[k])) <= touch)
        out.push_back(cuts[k]);
    std::sort(out.begin(), out.end());
    std::vector<double> dedup;
    for (double r : out)
      if (dedup.empty() || r - dedup.back() > 1e-9)
        dedup.push_back(r);
    return dedup;
  }

private:
  std::vector<double> c_;
};

struct FixedPoint {
  double rho = 0.0;        // the bias E[x_i]
  double derivative = 0.0; // E_g'(rho)
  bool attractive = false;
};

struct FixedPointSet {
  bool identity = false; // E_g(rho) = rho for every rho
  std::vector<FixedPoint> points;
};

/// interior roots of E_g(rho) = rho
inline FixedPointSet bias_fixed_points(const BooleanFunction& g)
{
  auto c = bias_polynomial(g);
  std::vector<Rational> diff = c;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] -= 1;
  FixedPointSet out;
  bool zero = std::all_of(diff.begin(), diff.end(), [](const Rational& r) { return r == 0; });
  if (zero) {
    out.identity = true;
    return out;
  }
  std::vector<double> dc, ec;
  for (auto& r : diff)
    dc.push_back(to_double(r));
  for (auto& r : c)
    ec.push_back(to_double(r));
  Polynomial P(dc), E(ec);
  auto dE = E.derivative();
  for (double rho : P.roots(-1.0, 1.0)) {
    if (rho <= -1.0 + 1e-12 || rho >= 1.0 - 1e-12)
      continue;
    double d = dE(rho);
    out.points.push_back({rho, d, std::fabs(d) < 1.0});
  }
  return out;
}

} // namespace fei
