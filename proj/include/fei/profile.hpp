#pragma once

#include "entropy.hpp"
#include "rational.hpp"

#include <optional>
#include <stdexcept>

namespace fei {

/// (p, I, H): probability of true, total influence, spectral entropy
template <class Scalar>
struct BasicProfile {
  Scalar p{};
  Scalar influence{};
  double entropy = 0.0;

  Scalar expectation() const { return Scalar(1) - 2 * p; }
  Scalar variance() const { return 4 * p * (Scalar(1) - p); }
  bool degenerate() const { return variance() == Scalar(0); }

  std::optional<Scalar> influence_plus() const
  {
    if (degenerate())
      return std::nullopt;
    return Scalar(influence / variance());
  }

  std::optional<double> entropy_plus() const
  {
    if (degenerate())
      return std::nullopt;
    return (entropy - h_tilde(to_double(p))) / to_double(variance());
  }
};

using ExactProfile = BasicProfile<Rational>;
using Profile = BasicProfile<double>;

inline Profile to_float(const ExactProfile& a) { return {to_double(a.p), to_double(a.influence), a.entropy}; }
inline Profile to_float(const Profile& a) { return a; }

template <class Scalar>
BasicProfile<Scalar> iota_profile() { return {Scalar(1) / 2, Scalar(1), 0.0}; }

template <class Scalar>
BasicProfile<Scalar> constant_profile(bool value) { return {Scalar(value ? 1 : 0), Scalar(0), 0.0}; }

template <class Scalar>
BasicProfile<Scalar> dual(const BasicProfile<Scalar>& a) { return {Scalar(1) - a.p, a.influence, a.entropy}; }

namespace detail {

// conjunction in terms of the two true-probabilities
template <class Scalar>
BasicProfile<Scalar> meet_core(const Scalar& p1, const Scalar& i1, double h1,
                               const Scalar& p2, const Scalar& i2, double h2)
{
  double d1 = to_double(p1), d2 = to_double(p2);
  BasicProfile<Scalar> r;
  r.p = p1 * p2;
  r.influence = p2 * i1 + p1 * i2;
  r.entropy = d2 * (h1 - h_tilde(d1)) + d1 * (h2 - h_tilde(d2)) + psi(d1, d2);
  return r;
}

} // namespace detail

/// disjoint conjunction
template <class Scalar>
BasicProfile<Scalar> meet(const BasicProfile<Scalar>& a, const BasicProfile<Scalar>& b)
{
  return detail::meet_core(a.p, a.influence, a.entropy, b.p, b.influence, b.entropy);
}

/// disjoint disjunction, the conjunction of the duals, dualized
template <class Scalar>
BasicProfile<Scalar> join(const BasicProfile<Scalar>& a, const BasicProfile<Scalar>& b)
{
  Scalar one(1);
  auto r = detail::meet_core(Scalar(one - a.p), a.influence, a.entropy, Scalar(one - b.p), b.influence, b.entropy);
  r.p = one - r.p;
  return r;
}

enum class Gate { meet, join };

/// f meet iota / f join iota
template <class Scalar>
BasicProfile<Scalar> with_iota(const BasicProfile<Scalar>& a, Gate gate)
{
  Scalar half = Scalar(1) / 2;
  double p = to_double(a.p);
  BasicProfile<Scalar> r;
  if (gate == Gate::meet) {
    r.p = a.p * half;
    r.influence = half * a.influence + a.p;
    r.entropy = 0.5 * (a.entropy - h_tilde(p)) + 2.0 * h(p);
  } else {
    Scalar q = Scalar(1) - a.p;
    double dq = to_double(q);
    r.p = Scalar(1) - q * half;
    r.influence = half * a.influence + q;
    r.entropy = 0.5 * (a.entropy - h_tilde(dq)) + 2.0 * h(dq);
  }
  return r;
}

/// fixed point kappa = (lambda meet kappa)^dagger
template <class Scalar>
BasicProfile<Scalar> solve_kappa(const BasicProfile<Scalar>& lambda)
{
  Scalar one(1);
  if (lambda.degenerate() || lambda.p == one)
    throw std::domain_error("solve_kappa: degenerate lambda (constant or p = 1)");
  const Scalar& p = lambda.p;
  Scalar q = one / (one + p);
  BasicProfile<Scalar> k;
  k.p = q;
  k.influence = q * lambda.influence / (one - p);
  double dp = to_double(p), dq = to_double(q);
  double h_plus = (*lambda.entropy_plus() + h(dp) / (1.0 - dp)) / dq;
  k.entropy = to_double(k.variance()) * h_plus + h_tilde(dq);
  return k;
}

} // namespace fei
