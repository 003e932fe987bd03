#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fei;
using fei::testing::random_function;

namespace {

std::vector<double> uniform_eta(int n, double e) { return std::vector<double>(n, e); }

double sum_squares(const BiasedSpectrum& sp)
{
  double s = 0.0;
  for (double c : sp.coeffs)
    s += c * c;
  return s;
}

} // namespace

TEST(BiasedSpectrum, TauAtPhi)
{
  auto tau = evaluate(builtin("tau"), 2);
  auto eta = uniform_eta(2, 1.0 - 2.0 * kPhi);
  auto sp = biased_spectrum(tau, eta);
  double P = kPhi;
  EXPECT_NEAR(sp.coeffs[0] * sp.coeffs[0], std::pow(P, 6), 1e-12);
  EXPECT_NEAR(sp.coeffs[1] * sp.coeffs[1], 4 * std::pow(P, 5), 1e-12);
  EXPECT_NEAR(sp.coeffs[2] * sp.coeffs[2], 4 * std::pow(P, 5), 1e-12);
  EXPECT_NEAR(sp.coeffs[3] * sp.coeffs[3], 4 * std::pow(P, 6), 1e-12);
}

TEST(BiasedSpectrum, ZeroBiasIsUniform)
{
  std::mt19937_64 rng(30);
  for (int n = 1; n <= 8; ++n) {
    auto f = random_function(n, rng);
    auto sp = biased_spectrum(f, uniform_eta(n, 0.0));
    auto u = wht_spectrum(f);
    double N = double(f.size());
    for (std::uint64_t S = 0; S < f.size(); ++S)
      ASSERT_NEAR(sp.coeffs[S], u[S] / N, 1e-13);
  }
}

TEST(BiasedSpectrum, ContinuityAtZero)
{
  std::mt19937_64 rng(31);
  auto f = random_function(6, rng);
  auto sp = biased_spectrum(f, uniform_eta(6, 1e-6));
  auto u = wht_spectrum(f);
  for (std::uint64_t S = 0; S < f.size(); ++S)
    EXPECT_NEAR(sp.coeffs[S], u[S] / 64.0, 1e-5);
}

TEST(BiasedSpectrum, Dictator)
{
  for (double e : {-0.9, -0.3, 0.0, 0.4, 0.8}) {
    // x1 = E + sqrt(1 - E^2) phi: the level-one weight is the variance
    auto sp = biased_spectrum(BooleanFunction::variable(1, 1), uniform_eta(1, e));
    EXPECT_NEAR(sp.coeffs[0] * sp.coeffs[0], e * e, 1e-12);
    EXPECT_NEAR(sp.coeffs[1] * sp.coeffs[1], 1.0 - e * e, 1e-12);
    auto bp = biased_profile(BooleanFunction::variable(3, 2), uniform_eta(3, e));
    EXPECT_NEAR(bp.influence, 1.0 - e * e, 1e-12);
    EXPECT_NEAR(bp.coordinate_influences[1], 1.0 - e * e, 1e-12);
    EXPECT_NEAR(bp.coordinate_influences[0], 0.0, 1e-12);
  }
}

TEST(BiasedSpectrum, FastMatchesDirect)
{
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  for (int n = 1; n <= 8; ++n)
    for (int t = 0; t < 3; ++t) {
      auto f = random_function(n, rng);
      std::vector<double> eta(n);
      for (auto& e : eta)
        e = u(rng);
      auto a = biased_spectrum(f, eta), b = biased_spectrum_direct(f, eta);
      for (std::uint64_t S = 0; S < f.size(); ++S)
        ASSERT_NEAR(a.coeffs[S], b.coeffs[S], 1e-12);
    }
}

TEST(BiasedSpectrum, Normalization)
{
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  for (int n = 1; n <= 12; ++n) {
    auto f = random_function(n, rng);
    std::vector<double> eta(n);
    for (auto& e : eta)
      e = u(rng);
    EXPECT_NEAR(sum_squares(biased_spectrum(f, eta)), 1.0, 1e-9);
  }
}

TEST(BiasedSpectrum, Errors)
{
  auto f = BooleanFunction::variable(2, 1);
  EXPECT_THROW(biased_spectrum(f, uniform_eta(2, 1.0)), std::domain_error);
  EXPECT_THROW(biased_spectrum(f, uniform_eta(3, 0.0)), std::invalid_argument);
  EXPECT_THROW(biased_spectrum_direct(BooleanFunction(17), uniform_eta(17, 0.0)), std::out_of_range);
}

TEST(BiasedProfile, Tau)
{
  auto bp = biased_profile(evaluate(builtin("tau"), 2), uniform_eta(2, 1.0 - 2.0 * kPhi));
  EXPECT_NEAR(bp.influence, 8.0 * std::pow(kPhi, 4), 1e-12);
  EXPECT_NEAR(bp.influence, 1.16718, 1e-5);
  EXPECT_NEAR(bp.entropy, 8.0 * (1.0 - 2.0 * kPhi) + 10.0 * (4.0 * kPhi - 3.0) * std::log2(kPhi), 1e-12);
  EXPECT_NEAR(bp.entropy, 1.77611, 1e-5);
  EXPECT_NEAR(bp.probability_true, kPhi, 1e-12);
}

TEST(BiasedProfile, And2Unbiased)
{
  auto bp = biased_profile(evaluate(builtin("AND", 2), 2), uniform_eta(2, 0.0));
  EXPECT_NEAR(bp.influence, 1.0, 1e-14);
  EXPECT_NEAR(bp.coordinate_influences[0], 0.5, 1e-14);
  EXPECT_NEAR(bp.coordinate_influences[1], 0.5, 1e-14);
  EXPECT_NEAR(bp.entropy, 2.0, 1e-14);
}

TEST(PlusQuantities, AndN)
{
  for (int n = 1; n <= 16; ++n) {
    auto pr = profile(evaluate(builtin("AND", n), n));
    double N = std::ldexp(1.0, n);
    EXPECT_NEAR(to_double(*pr.influence_plus()), n / (2.0 * (1.0 - 1.0 / N)), 1e-12) << n;
    EXPECT_NEAR(*pr.entropy_plus(), std::log2(N - 1.0), 1e-10) << n;
  }
}

TEST(OtCompose, TauLevels)
{
  auto tau = evaluate(builtin("tau"), 2);
  Profile g = lex_profile_truncated(kPhi, 60).profile();
  std::vector<Profile> gs{g, g};
  auto r = ot_compose(tau, gs);
  EXPECT_NEAR(r.influence, 2.0 * kPhi * g.influence, 1e-12);
  EXPECT_NEAR(r.p, kPhi, 1e-12);
  // once more from the composed profile
  std::vector<Profile> hs{r, r};
  EXPECT_NEAR(ot_compose(tau, hs).influence, 2.0 * kPhi * r.influence, 1e-12);
}

TEST(OtCompose, Identities)
{
  std::mt19937_64 rng(34);
  auto g = to_float(profile(random_function(5, rng)));
  std::vector<Profile> one{g};
  auto r = ot_compose(BooleanFunction::variable(1, 1), one);
  EXPECT_NEAR(r.p, g.p, 1e-15);
  EXPECT_NEAR(r.influence, g.influence, 1e-12);
  EXPECT_NEAR(r.entropy, g.entropy, 1e-12);

  auto iota = iota_profile<double>();
  std::vector<Profile> two{iota, iota};
  auto a = ot_compose(evaluate(builtin("AND", 2), 2), two);
  EXPECT_NEAR(a.p, 0.25, 1e-15);
  EXPECT_NEAR(a.influence, 1.0, 1e-12);
  EXPECT_NEAR(a.entropy, 2.0, 1e-12);

  EXPECT_THROW(ot_compose(evaluate(builtin("AND", 2), 2), one), std::invalid_argument);
  std::vector<Profile> bad{iota, constant_profile<double>(true)};
  EXPECT_THROW(ot_compose(evaluate(builtin("AND", 2), 2), bad), std::domain_error);
}

// F on k <= 3 variables composed with g_i on m <= 3 variables, against the explicit km-variable table
TEST(OtCompose, TruthTableOracle)
{
  std::mt19937_64 rng(35);
  int done = 0;
  while (done < 60) {
    int k = 1 + int(rng() % 3), m = 1 + int(rng() % 3);
    auto F = random_function(k, rng);
    std::vector<BooleanFunction> g;
    std::vector<Profile> gp;
    bool ok = true;
    for (int i = 0; i < k; ++i) {
      g.push_back(random_function(m, rng));
      gp.push_back(to_float(profile(g.back())));
      ok = ok && !g.back().is_constant();
    }
    if (!ok)
      continue;
    int n = k * m;
    auto composed = BooleanFunction::from_predicate(n, [&](std::uint64_t x) {
      std::uint64_t Fi = 0;
      for (int i = 0; i < k; ++i) {
        std::uint64_t block = (x >> (m * (k - 1 - i))) & ((std::uint64_t{1} << m) - 1);
        // F's variable i+1 is true (index bit 0) when g_i is true
        if (!g[i][block])
          Fi |= std::uint64_t{1} << (k - 1 - i);
      }
      return F[Fi];
    });
    auto direct = profile(composed);
    auto r = ot_compose(F, gp);
    ASSERT_NEAR(r.p, to_double(direct.p), 1e-12);
    ASSERT_NEAR(r.influence, to_double(direct.influence), 1e-9);
    ASSERT_NEAR(r.entropy, direct.entropy, 1e-8);
    ++done;
  }
}

TEST(FixedPoints, Tau)
{
  auto fp = bias_fixed_points(evaluate(builtin("tau"), 2));
  EXPECT_FALSE(fp.identity);
  ASSERT_EQ(fp.points.size(), 1u);
  EXPECT_NEAR(fp.points[0].rho, 1.0 - 2.0 * kPhi, 1e-12);
  EXPECT_FALSE(fp.points[0].attractive);
}

TEST(FixedPoints, Iota)
{
  auto fp = bias_fixed_points(BooleanFunction::variable(1, 1));
  EXPECT_TRUE(fp.identity);
  EXPECT_TRUE(fp.points.empty());
}

TEST(FixedPoints, And2)
{
  // E(rho) = (rho^2 + 2 rho - 1)/2: rho^2 - 1 = 0 has no interior root
  auto poly = bias_polynomial(evaluate(builtin("AND", 2), 2));
  ASSERT_EQ(poly.size(), 3u);
  EXPECT_EQ(poly[0], Rational(1, 2));
  EXPECT_EQ(poly[1], Rational(1));
  EXPECT_EQ(poly[2], Rational(-1, 2));
  auto fp = bias_fixed_points(evaluate(builtin("AND", 2), 2));
  EXPECT_TRUE(fp.points.empty());
}

TEST(FixedPoints, MatchBiasedProbability)
{
  std::mt19937_64 rng(36);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + int(rng() % 4);
    auto g = random_function(n, rng);
    for (const auto& p : bias_fixed_points(g).points) {
      // E_x~rho[g] = rho with g = -1 on true
      auto bp = biased_profile(g, uniform_eta(n, p.rho));
      EXPECT_NEAR(1.0 - 2.0 * bp.probability_true, p.rho, 1e-9);
    }
  }
}

TEST(Polynomial, Roots)
{
  // (x - 0.5)(x + 0.25)(x - 0.9)
  Polynomial P({0.1125, 0.1, -1.15, 1.0});
  auto r = P.roots(-1.0, 1.0);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], -0.25, 1e-11);
  EXPECT_NEAR(r[1], 0.5, 1e-11);
  EXPECT_NEAR(r[2], 0.9, 1e-11);
  // double root at 0.3
  Polynomial Q({0.09, -0.6, 1.0});
  auto q = Q.roots(-1.0, 1.0);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_NEAR(q[0], 0.3, 1e-9);
}
