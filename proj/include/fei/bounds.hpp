#pragma once

#include "biased.hpp"
#include "boolean_function.hpp"
#include "entropy.hpp"
#include "formula.hpp"
#include "lex.hpp"
#include "profile.hpp"
#include "rational.hpp"
#include "spectrum.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fei {

/// b_m with b_0 = 0, b_1 = 1, b_{-m} = (-1)^{m+1} b_m
inline std::int64_t fibonacci(int m)
{
  if (m > 90 || m < -90)
    throw std::overflow_error("fibonacci index beyond |m| <= 90");
  int a = m < 0 ? -m : m;
  std::int64_t x = 0, y = 1;
  for (int i = 0; i < a; ++i) {
    std::int64_t t = x + y;
    x = y;
    y = t;
  }
  if (m < 0 && a % 2 == 0)
    x = -x;
  return x;
}

inline double binet(int m)
{
  return (std::pow(kPhi, -m) - std::pow(-kPhi, m)) / std::sqrt(5.0);
}

template <class Scalar>
struct RecursionState {
  Scalar z{};
  int m = 0;
  Scalar q{};  // q_m
  Scalar pi{}; // prod_{k=1}^m q_k; 1/z at m=-1, 1/(1-z) at m=-2
};

/// closed forms q_m = (b_{m-1}z + b_m)/(b_m z + b_{m+1}), pi_m = 1/(z b_m + b_{m+1})
template <class Scalar>
RecursionState<Scalar> q_pi(const Scalar& z, int m)
{
  if (m < -2)
    throw std::out_of_range("q_pi: level below -2");
  Scalar bm1(fibonacci(m - 1)), b0(fibonacci(m)), bp1(fibonacci(m + 1));
  RecursionState<Scalar> st;
  st.z = z;
  st.m = m;
  Scalar den = b0 * z + bp1;
  st.pi = Scalar(1) / den;
  if (m >= 0)
    st.q = (bm1 * z + b0) / den;
  return st;
}

namespace detail {

inline void check_open_unit(double z)
{
  if (!(z > 0.0 && z < 1.0))
    throw std::domain_error("z must lie in (0,1)");
}

// iterate q_k (k >= 0) and pi_k (k >= -2) and call fn(k, q_{k+2}, pi_k)
template <class Fn>
void walk_q_pi(double z, int kmax, Fn&& fn)
{
  std::vector<double> q{z};
  auto q_at = [&](int j) {
    while (int(q.size()) <= j)
      q.push_back(1.0 / (1.0 + q.back()));
    return q[j];
  };
  double pi = 1.0;
  for (int k = -2; k <= kmax; ++k) {
    double pk = k == -2 ? 1.0 / (1.0 - z) : k == -1 ? 1.0 / z : pi;
    fn(k, q_at(k + 2), pk);
    if (k >= 0)
      pi *= q_at(k + 1);
  }
}

} // namespace detail

/// generic form 4z(1-z) sum_{k=-2}^{m-3} h(q_{k+2}) pi_k
inline double beta_m_generic(double z, int m)
{
  detail::check_open_unit(z);
  CompensatedSum s;
  detail::walk_q_pi(z, m - 3, [&](int, double q, double pi) { s.add(h(q) * pi); });
  return 4.0 * z * (1.0 - z) * s.value();
}

/// three-case form for m = 0, 1, >= 2
inline double beta_m(double z, int m)
{
  if (m < 0)
    throw std::out_of_range("beta_m: negative level");
  if (z == 0.0 || z == 1.0)
    return 0.0;
  detail::check_open_unit(z);
  if (m == 0)
    return 0.0;
  if (m == 1)
    return 4.0 * z * h(z);
  double q1 = 1.0 / (1.0 + z);
  CompensatedSum s;
  detail::walk_q_pi(z, m - 3, [&](int k, double q, double pi) {
    if (k >= 0)
      s.add(h(q) * pi);
  });
  return 4.0 * z * h(z) + 4.0 * (1.0 - z) * h(q1) + 4.0 * z * (1.0 - z) * s.value();
}

/// terms beyond K are at most 4z(1-z) Phi^K / (1 - Phi)
inline double beta_tail_bound(double z, int K) { return 4.0 * z * (1.0 - z) * std::pow(kPhi, K) / (1.0 - kPhi); }

inline int beta_terms_for(double z, double tol)
{
  int K = 0;
  while (beta_tail_bound(z, K) >= tol / 2)
    ++K;
  return K;
}

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
  int terms = 0;
};

inline SeriesValue beta_series(double z, double tol = 1e-12)
{
  detail::check_open_unit(z);
  int K = beta_terms_for(z, tol);
  CompensatedSum s;
  detail::walk_q_pi(z, K, [&](int, double q, double pi) { s.add(h(q) * pi); });
  return {4.0 * z * (1.0 - z) * s.value(), beta_tail_bound(z, K), K + 3};
}

inline double beta(double z, double tol = 1e-12) { return beta_series(z, tol).value; }

/// 4zh(z) - 4z(1-z) sum_{m>=0} (pi_{m-1} log q_{m+1} + pi_{m+1} log q_m)
inline double beta_simplified(double z, double tol = 1e-12)
{
  detail::check_open_unit(z);
  int K = beta_terms_for(z, tol) + 2;
  std::vector<double> q{z}, pi{1.0 / z, 1.0}; // pi[j] = pi_{j-1}
  for (int m = 1; m <= K + 2; ++m) {
    q.push_back(1.0 / (1.0 + q.back()));
    pi.push_back(pi.back() * q.back());
  }
  CompensatedSum s;
  for (int m = 0; m <= K; ++m)
    s.add(pi[m] * std::log2(q[m + 1]) + pi[m + 2] * std::log2(q[m]));
  return 4.0 * z * h(z) - 4.0 * z * (1.0 - z) * s.value();
}

/// H[F_m]/I[F_m] by the level-m closed form
inline double ratio_at_level(const Profile& f0, int m)
{
  double z = f0.p;
  detail::check_open_unit(z);
  auto st = q_pi(z, m);
  double pm1 = q_pi(z, m - 1).pi, pm2 = q_pi(z, m - 2).pi;
  return (f0.entropy - h_tilde(z) + beta_m(z, m) + z * (1.0 - z) * (pm1 + pm2) * h_tilde(st.q)) / f0.influence;
}

/// H[F_m]/I[F_m] by iterating q, I+, H+ level by level
inline double ratio_by_iteration(const Profile& f0, int m)
{
  double q = f0.p;
  double ip = *f0.influence_plus(), hp = *f0.entropy_plus();
  for (int k = 0; k < m; ++k) {
    double qn = 1.0 / (1.0 + q);
    ip = ip / qn;
    hp = (hp + h(q) / (1.0 - q)) / qn;
    q = qn;
  }
  double V = 4.0 * q * (1.0 - q);
  return (V * hp + h_tilde(q)) / (V * ip);
}

/// BoundReport: value, certified lower bound and margin against a reference decimal
struct BoundReport {
  std::string name;
  std::string formula;
  double value = 0.0;
  double lower = 0.0;
  double target = 0.0;
  double margin = 0.0; // lower - target
  double error = 0.0;  // value - lower
  bool passed() const { return margin > 0.0; }
};

inline BoundReport make_report(std::string name, std::string formula, double value, double lower, double target)
{
  return {std::move(name), std::move(formula), value, lower, target, lower - target, value - lower};
}

inline ExactProfile or2_profile() { return profile(evaluate(builtin("OR", 2), 2)); }

/// meet(OR2, l<2/3>): the limit (p, I*, H*) of the g_m sequence
inline ExactProfile gm_limit_profile()
{
  auto lex23 = lex_profile_exact(Rational(2, 3));
  return meet(or2_profile(), *lex23.exact);
}

inline BoundReport lb1()
{
  auto star = gm_limit_profile();
  double v = star.entropy / to_double(star.influence - 1);
  return make_report("lb1", "H*/(I*-1) = (8/3+log2 3)/(2/3) = 4+3log4 3", v, v, 6.377443751);
}

struct GmRow {
  int m = 0;
  int n = 0;
  Rational influence;
  double entropy = 0.0;
  double ratio = 0.0; // H/(I-1)
  Rational probability;
};

inline GmRow gm_row(int m)
{
  if (m < 2 || 2 * m > BooleanFunction::max_vars)
    throw std::out_of_range("gm_row: m outside [2, 12]");
  auto f = evaluate(builtin("g", m), 2 * m);
  auto pr = profile(f);
  return {m, 2 * m, pr.influence, pr.entropy, pr.entropy / to_double(pr.influence - 1), pr.p};
}

inline std::vector<GmRow> gm_table(int max_m)
{
  if (max_m > 12)
    throw std::out_of_range("gm_table: max_m above 12");
  std::vector<GmRow> rows;
  for (int m = 2; m <= max_m; ++m)
    rows.push_back(gm_row(m));
  return rows;
}

/// floor(Phi 2^K) / 2^K
inline Rational phi_truncated(int bits)
{
  Integer s = boost::multiprecision::sqrt(Integer(5) << (2 * bits));
  return Rational((s - (Integer(1) << bits)) >> 1, Integer(1) << bits);
}

inline double tau_biased_entropy_closed() { return 8.0 * (1.0 - 2.0 * kPhi) + 10.0 * (4.0 * kPhi - 3.0) * std::log2(kPhi); }
inline double tau_biased_influence_closed() { return 8.0 * std::pow(kPhi, 4); }

inline BooleanFunction tau_function() { return evaluate(builtin("tau"), 2); }

/// (H[l<p>] + (3+2Phi) Ht[tau] - (4+2Phi) ht(Phi)) / I[l<p>], certified with the truncation tails
inline BoundReport lb2(int bits = 60)
{
  auto lp = lex_profile_truncated(phi_truncated(bits), bits);
  double eta = 1.0 - 2.0 * kPhi;
  std::vector<double> e{eta, eta};
  auto tp = biased_profile(tau_function(), e);
  double num = (3.0 + 2.0 * kPhi) * tp.entropy - (4.0 + 2.0 * kPhi) * h_tilde(kPhi);
  double value = (lp.entropy + num) / lp.influence;
  double lower = (lp.entropy - lp.error_entropy + num) / (lp.influence + lp.error_influence);
  return make_report("lb2", "(H[l<Phi>] + (3+2Phi)Ht[tau] - (4+2Phi)ht(Phi)) / I[l<Phi>]", value, lower, 6.413846);
}

/// H[l<p>]/I[l<p>] + (V Ht[g] - It[g] ht(p)) / (I[l<p>] (It[g] - V)), V = 4p(1-p)
inline double general_biased_bound(const BooleanFunction& g, double p, const Profile& lex_p)
{
  double eta = 1.0 - 2.0 * p;
  std::vector<double> e(g.num_vars(), eta);
  auto bp = biased_profile(g, e);
  if (std::fabs(bp.probability_true - p) > 1e-9)
    throw std::domain_error("general_biased_bound: p is not a bias fixed point of g");
  double V = 4.0 * p * (1.0 - p);
  if (!(bp.influence - V > 1e-12))
    throw std::domain_error("general_biased_bound: degenerate denominator");
  return lex_p.entropy / lex_p.influence + (V * bp.entropy - bp.influence * h_tilde(p)) / (lex_p.influence * (bp.influence - V));
}

inline double general_biased_bound(const BooleanFunction& g, double p)
{
  return general_biased_bound(g, p, lex_profile_truncated(p, 60).profile());
}

/// limit ratio (H - ht(z) + beta(z))/I for F_0 with profile (z, I, H)
inline BoundReport lb3(const Profile& f0, double tol = 1e-12)
{
  if (f0.degenerate() || !(f0.influence > 0.0))
    throw std::domain_error("lb3: degenerate profile");
  auto b = beta_series(f0.p, tol);
  double v = (f0.entropy - h_tilde(f0.p) + b.value) / f0.influence;
  return make_report("lb3", "(H - ht(z) + beta(z)) / I", v, v - b.tail_bound / f0.influence, 6.4547837);
}

/// double mantissa with a wide binary exponent; only products are needed
class WideFloat {
public:
  WideFloat(double x = 0.0) { set(x, 0); }

  static WideFloat from_parts(double m, std::int64_t e)
  {
    WideFloat w;
    w.set(m, e);
    return w;
  }

  double mantissa() const { return m_; }
  std::int64_t exponent() const { return e_; }
  bool is_zero() const { return m_ == 0.0; }

  /// log2 of the magnitude
  double log2_abs() const { return std::log2(std::fabs(m_)) + double(e_); }

  double to_double() const
  {
    if (m_ == 0.0 || e_ < -1100)
      return 0.0;
    if (e_ > 1100)
      return m_ > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    return std::ldexp(m_, int(e_));
  }

  friend WideFloat operator*(const WideFloat& a, const WideFloat& b) { return from_parts(a.m_ * b.m_, a.e_ + b.e_); }
  friend WideFloat operator/(const WideFloat& a, const WideFloat& b) { return from_parts(a.m_ / b.m_, a.e_ - b.e_); }

private:
  void set(double m, std::int64_t e)
  {
    if (m == 0.0) {
      m_ = 0.0;
      e_ = 0;
      return;
    }
    int k = 0;
    m_ = std::frexp(m, &k);
    e_ = e + k;
  }

  double m_ = 0.0;
  std::int64_t e_ = 0;
};

namespace detail {

// h(t) given both t and c = 1 - t, keeping the tiny one exact
inline WideFloat wide_entropy(const WideFloat& t, const WideFloat& c)
{
  const double inv_ln2 = 1.0 / std::log(2.0);
  if (t.exponent() < -40)
    return t * WideFloat(-t.log2_abs() + inv_ln2);
  if (c.exponent() < -40)
    return c * WideFloat(-c.log2_abs() + inv_ln2);
  double td = t.to_double(), cd = c.to_double();
  return WideFloat(-td * std::log2(td) - cd * std::log2(cd));
}

// ht(t) = h(4tc)
inline WideFloat wide_entropy_tilde(const WideFloat& t, const WideFloat& c)
{
  WideFloat u = WideFloat(4.0) * t * c;
  return wide_entropy(u, WideFloat(1.0 - u.to_double()));
}

struct GammaStep {
  int k = 0;
  double t = 0.0;
  double term = 0.0;     // 4 (2t_k - 1) h(t_k) / (2^k P_k), P_k = prod_{i<k} t_i
  double boundary = 0.0; // (ht(t_k) - 4 (1 - t_k) h(t_k)) / (2^k P_k)
};

// t_{k+1} = 1 - t_k^2 carried as the pair (t, c = 1 - t) with the smaller one exact
template <class Fn>
void walk_gamma_terms(double z, int kmax, Fn&& fn)
{
  WideFloat t(z), c(1.0 - z), prod(z);
  for (int k = 1; k <= kmax; ++k) {
    WideFloat tn = c * WideFloat(1.0 + t.to_double()), cn = t * t;
    if (tn.to_double() <= 0.5) {
      t = tn;
      c = WideFloat(1.0 - tn.to_double());
    } else {
      c = cn;
      t = WideFloat(1.0 - cn.to_double());
    }
    WideFloat scale = WideFloat::from_parts(1.0, k) * prod;
    WideFloat ht = wide_entropy(t, c);
    double two_t_minus_1 = c.to_double() < 0.5 ? 1.0 - 2.0 * c.to_double() : 2.0 * t.to_double() - 1.0;
    GammaStep st;
    st.k = k;
    st.t = t.to_double();
    st.term = (WideFloat(4.0 * two_t_minus_1) * ht / scale).to_double();
    st.boundary = (wide_entropy_tilde(t, c) / scale).to_double() - (WideFloat(4.0) * c * ht / scale).to_double();
    if (!fn(st))
      return;
    prod = prod * t;
  }
}

} // namespace detail

/// gamma(z) = lim_m G_m, G_m = 4zh(z) + sum_{k<m} term_k + boundary_m, so that
/// H[T_m]/I[T_m] = (H - ht(z) + G_m)/I exactly for T_{m+1} = (T_m meet T_m)^dagger.
/// boundary_m does not vanish when t_m is driven to {0, 1}; tail from the decay of G_m - G_{m-2}.
inline SeriesValue gamma_series(double z, double tol = 1e-12, int kmax = 120)
{
  detail::check_open_unit(z);
  CompensatedSum s;
  s.add(4.0 * z * h(z));
  std::vector<double> G;
  double tail = std::numeric_limits<double>::infinity();
  int used = 0;
  detail::walk_gamma_terms(z, kmax, [&](const detail::GammaStep& st) {
    used = st.k;
    G.push_back(s.value() + st.boundary);
    s.add(st.term);
    std::size_t m = G.size();
    if (m < 6)
      return true;
    double d1 = std::fabs(G[m - 1] - G[m - 3]), d0 = std::fabs(G[m - 2] - G[m - 4]);
    double dp = std::fabs(G[m - 3] - G[m - 5]);
    if (d1 == 0.0 && d0 == 0.0)
      tail = 0.0;
    else if (dp > 0.0 && d1 < dp)
      tail = (d1 + d0) * (d1 / dp) / (1.0 - d1 / dp);
    else
      tail = std::numeric_limits<double>::infinity();
    return !(st.k >= 8 && tail < tol);
  });
  return {G.back(), tail, used};
}

inline double gamma_value(double z, double tol = 1e-12) { return gamma_series(z, tol).value; }

/// partial sums of the bare series 4zh(z) + sum_{k=1}^{K} term_k, which oscillate when t_k leaves Phi
inline double gamma_bare_partial(double z, int K)
{
  detail::check_open_unit(z);
  CompensatedSum s;
  s.add(4.0 * z * h(z));
  detail::walk_gamma_terms(z, K, [&](const detail::GammaStep& st) {
    s.add(st.term);
    return true;
  });
  return s.value();
}

/// G_m as defined above
inline double gamma_level(double z, int m)
{
  detail::check_open_unit(z);
  if (m < 1)
    throw std::domain_error("gamma_level: m >= 1");
  CompensatedSum s;
  s.add(4.0 * z * h(z));
  double out = 0.0;
  detail::walk_gamma_terms(z, m, [&](const detail::GammaStep& st) {
    if (st.k == m)
      out = s.value() + st.boundary;
    s.add(st.term);
    return true;
  });
  return out;
}

/// H[T_m]/I[T_m] for T_{m+1} = (T_m meet T_m)^dagger, straight from the profile algebra
inline double gamma_ratio_by_iteration(const Profile& t0, int m)
{
  Profile t = t0;
  for (int k = 0; k < m; ++k)
    t = dual(meet(t, t));
  return t.entropy / t.influence;
}

inline BoundReport lb_gamma(const Profile& t0, double target, double tol = 1e-12)
{
  if (t0.degenerate() || !(t0.influence > 0.0))
    throw std::domain_error("lb_gamma: degenerate profile");
  auto g = gamma_series(t0.p, tol);
  double v = (t0.entropy - h_tilde(t0.p) + g.value) / t0.influence;
  return make_report("lb_gamma", "(H - ht(z) + gamma(z)) / I", v, v - g.tail_bound / t0.influence, target);
}

struct BetaMaximum {
  double z_star = 0.0;
  double beta_star = 0.0;
  double beta_half = 0.0;
  bool unimodal = true;
  double grid_argmax = 0.0;
};

/// grid scan of [0.4, 0.6] then golden-section refinement
inline BetaMaximum maximize_beta(double lo = 0.4, double hi = 0.6, int grid = 1001, double resolution = 1e-10)
{
  BetaMaximum r;
  std::vector<double> vals(grid);
  int best = 0;
  for (int j = 0; j < grid; ++j) {
    vals[j] = beta(lo + (hi - lo) * j / (grid - 1));
    if (vals[j] > vals[best])
      best = j;
  }
  for (int j = 1; j < grid; ++j)
    if ((j <= best && vals[j] < vals[j - 1]) || (j > best && vals[j] > vals[j - 1]))
      r.unimodal = false;
  r.grid_argmax = lo + (hi - lo) * best / (grid - 1);
  r.beta_half = beta(0.5);
  if (!r.unimodal) {
    r.z_star = r.grid_argmax;
    r.beta_star = vals[best];
    return r;
  }
  double step = (hi - lo) / (grid - 1);
  double a = std::max(lo, r.grid_argmax - step), b = std::min(hi, r.grid_argmax + step);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a), f1 = beta(x1), f2 = beta(x2);
  while (b - a > resolution) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = beta(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = beta(x1);
    }
  }
  r.z_star = 0.5 * (a + b);
  r.beta_star = beta(r.z_star);
  return r;
}

struct BetaCurvePoint {
  double z;
  int m;
  double value;
};

/// (z, m, beta_m(z)) for z = j/grid, endpoints written as 0
inline std::vector<BetaCurvePoint> beta_curves(const std::vector<int>& levels, int grid)
{
  if (grid < 1)
    throw std::invalid_argument("grid must be positive");
  std::vector<BetaCurvePoint> out;
  for (int j = 0; j <= grid; ++j) {
    double z = double(j) / grid;
    for (int m : levels)
      out.push_back({z, m, (j == 0 || j == grid) ? 0.0 : beta_m(z, m)});
  }
  return out;
}

} // namespace fei
