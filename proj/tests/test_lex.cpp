#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fei;

TEST(LexTable, Examples)
{
  for (int n = 1; n <= 10; ++n) {
    std::uint64_t N = std::uint64_t{1} << n;
    EXPECT_EQ(lex_truth_table(n, 1), evaluate(builtin("AND", n), n));
    EXPECT_EQ(lex_truth_table(n, N - 1), evaluate(builtin("OR", n), n));
    if (n >= 2)
      EXPECT_EQ(lex_truth_table(n, 3 * N / 4), evaluate(parse_formula("x1 | x2"), n));
  }
  EXPECT_EQ(lex_truth_table(5, 21), evaluate(builtin("G", 3), 5));
  EXPECT_THROW(lex_truth_table(3, 9), std::out_of_range);
}

TEST(LexTable, FormulaForOddS)
{
  for (int n = 1; n <= 8; ++n)
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); s += 2)
      ASSERT_EQ(evaluate(lex_formula(n, s), n), lex_truth_table(n, s)) << n << " " << s;
}

TEST(Hart, WeightPrefixSum)
{
  std::uint64_t acc = 0;
  for (std::uint64_t s = 0; s < 5000; ++s) {
    ASSERT_EQ(weight_prefix_sum(s), acc) << s;
    acc += std::popcount(s);
  }
}

TEST(Hart, Examples)
{
  for (int n = 1; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) {
      std::uint64_t s = (std::uint64_t{1} << n) >> k;
      EXPECT_EQ(hart_influence(n, s), Rational(k) * pow2_rational(1 - k));
    }
  EXPECT_EQ(hart_influence(4, 6), Rational(5, 4));
  EXPECT_EQ(hart_influence(7, 0), Rational(0));
  EXPECT_EQ(hart_influence(7, 128), Rational(0));
}

TEST(Hart, AgreesWithSpectrumAndExpansion)
{
  for (int n = 1; n <= 10; ++n) {
    std::uint64_t N = std::uint64_t{1} << n;
    for (std::uint64_t s = 0; s <= N; ++s) {
      Rational I = hart_influence(n, s);
      ASSERT_EQ(I, profile(lex_truth_table(n, s)).influence) << n << " " << s;
      ASSERT_EQ(I, influence_from_expansion(BinaryExpansion::from_rational(Rational(Integer(s), Integer(N)))));
    }
  }
  // a few at 16 bits
  for (std::uint64_t s : {1ull, 12345ull, 43690ull, 65535ull}) {
    Rational I = hart_influence(16, s);
    EXPECT_EQ(I, profile(lex_truth_table(16, s)).influence);
    EXPECT_EQ(I, influence_from_expansion(BinaryExpansion::from_rational(Rational(s, 65536))));
  }
}

TEST(Expansion, FromRational)
{
  auto e = BinaryExpansion::from_rational(Rational(2, 3));
  EXPECT_TRUE(e.preperiod.empty());
  EXPECT_EQ(e.period, (std::vector<std::uint8_t>{1, 0}));
  auto d = BinaryExpansion::from_rational(Rational(5, 8));
  EXPECT_TRUE(d.dyadic());
  EXPECT_EQ(d.preperiod, (std::vector<std::uint8_t>{1, 0, 1}));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    std::uint64_t den = 1 + rng() % 500, num = rng() % (den + 1);
    Rational mu(num, den);
    EXPECT_EQ(BinaryExpansion::from_rational(mu).value(), mu);
  }
  EXPECT_THROW(BinaryExpansion::from_rational(Rational(3, 2)), std::domain_error);
}

TEST(Expansion, Influence)
{
  EXPECT_EQ(influence_from_expansion(BinaryExpansion::from_rational(Rational(2, 3))), Rational(4, 3));
  EXPECT_EQ(influence_from_expansion(BinaryExpansion::from_rational(Rational(1, 3))), Rational(4, 3));
  EXPECT_EQ(influence_from_expansion(BinaryExpansion::from_rational(Rational(7, 12))), Rational(4, 3));
  EXPECT_EQ(influence_from_expansion(BinaryExpansion::from_rational(Rational(1, 2))), Rational(1));
}

TEST(Expansion, SelfSimilarity)
{
  std::mt19937_64 rng(8);
  auto I = [](const Rational& mu) { return influence_from_expansion(BinaryExpansion::from_rational(mu)); };
  for (int t = 0; t < 1000; ++t) {
    std::uint64_t den = 1 + rng() % 200, num = rng() % (den + 1);
    Rational mu(num, den);
    Rational expect = 1 + I(mu) / 4;
    ASSERT_EQ(I(Rational(1, 2) + mu / 4), expect) << to_string(mu);
    ASSERT_EQ(I(Rational(1, 2) - mu / 4), expect) << to_string(mu);
  }
}

TEST(LexProfile, Exact)
{
  auto a = lex_profile_exact(Rational(2, 3));
  ASSERT_TRUE(a.exact.has_value());
  EXPECT_EQ(a.exact->influence, Rational(4, 3));
  EXPECT_NEAR(a.entropy, 2.0 * std::log2(3.0), 1e-12);
  EXPECT_EQ(a.error_influence, 0.0);

  auto b = lex_profile_exact(Rational(1, 2));
  EXPECT_EQ(b.exact->influence, Rational(1));
  EXPECT_NEAR(b.entropy, 0.0, 1e-15);

  auto c = lex_profile_exact(Rational(3, 4));
  auto or2 = profile(evaluate(builtin("OR", 2), 2));
  EXPECT_EQ(c.exact->influence, or2.influence);
  EXPECT_NEAR(c.entropy, or2.entropy, 1e-12);

  EXPECT_THROW(lex_profile_exact(Rational(-1, 2)), std::domain_error);
}

TEST(LexProfile, ExactMatchesTruthTablesAtDyadic)
{
  for (std::uint64_t s = 0; s <= 256; s += 7) {
    auto exact = lex_profile_exact(Rational(s, 256));
    auto tt = profile(lex_truth_table(8, s));
    EXPECT_EQ(exact.exact->influence, tt.influence) << s;
    EXPECT_NEAR(exact.entropy, tt.entropy, 1e-11) << s;
  }
}

TEST(LexProfile, ExactConvergesFromFiniteTables)
{
  // H[l_n<floor(N mu)>] approaches the periodic fixed point
  auto exact = lex_profile_exact(Rational(5, 7));
  std::uint64_t N = std::uint64_t{1} << 20;
  auto tt = profile(lex_truth_table(20, N * 5 / 7));
  EXPECT_NEAR(to_double(tt.influence), exact.influence, 40.0 * 20 / double(N));
  EXPECT_NEAR(tt.entropy, exact.entropy, 12.0 * 20 / std::sqrt(double(N)));
}

TEST(LexProfile, TruncatedPhi)
{
  auto t = lex_profile_truncated(kPhi, 60);
  EXPECT_LT(t.influence + t.error_influence, 1.2976895);
  EXPECT_GT(t.entropy, 2.4239395);
  EXPECT_LT(t.error_influence, 1e-15);
  EXPECT_LT(t.error_entropy, 2e-6);
  // the 60-bit truncation is itself dyadic, so its exact profile must agree
  auto d = lex_profile_exact(phi_truncated(60));
  EXPECT_NEAR(d.entropy, t.entropy, 1e-12);
}

TEST(LexProfile, TruncatedWithinBounds)
{
  auto exact = lex_profile_exact(Rational(2, 3));
  auto t = lex_profile_truncated(Rational(2, 3), 40);
  EXPECT_LE(std::fabs(t.influence - 4.0 / 3.0), t.error_influence);
  EXPECT_LE(std::fabs(t.entropy - exact.entropy), t.error_entropy);
  EXPECT_GT(t.error_entropy, 0.0);

  auto z = lex_profile_truncated(0.0, 30);
  EXPECT_EQ(z.influence, 0.0);
  EXPECT_EQ(z.entropy, 0.0);
  EXPECT_THROW(lex_profile_truncated(0.5, 7), std::out_of_range);
  EXPECT_THROW(lex_profile_truncated(0.5, 61), std::out_of_range);
}

TEST(LexProfile, TailBoundsClosedForm)
{
  for (int K : {8, 20, 40, 60}) {
    double a = 0.0, b = 0.0;
    for (int k = K + 1; k < 2000; ++k) {
      a += 2.0 * k * std::ldexp(1.0, -k);
      b += 12.0 * k * std::pow(2.0, -k / 2.0);
    }
    EXPECT_NEAR(2.0 * tail_k_xk(K, 0.5), a, 1e-12 * std::max(1.0, a));
    EXPECT_NEAR(12.0 * tail_k_xk(K, std::sqrt(0.5)), b, 1e-10 * std::max(1.0, b));
  }
}

TEST(AverageReads, Examples)
{
  EXPECT_EQ(average_reads(2, 1), Rational(3, 2));
  EXPECT_EQ(average_reads(1, 1), Rational(1));
  EXPECT_EQ(average_reads(3, 5), Rational(7, 4));
  EXPECT_THROW(average_reads(3, 4), std::invalid_argument);
}

TEST(AverageReads, EnumerationValue)
{
  for (int n = 1; n <= 10; ++n) {
    Rational expect = 2 - Rational(2, Integer(1) << n);
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); s += 2)
      ASSERT_EQ(average_reads(n, s), expect) << n << " " << s;
  }
}

TEST(InfluenceScan, FullGrid)
{
  auto r = influence_scan(Rational(1, 65536));
  EXPECT_EQ(r.maximum, Rational(4, 3));
  auto has = [&](const Rational& mu) { return std::find(r.attainers.begin(), r.attainers.end(), mu) != r.attainers.end(); };
  EXPECT_TRUE(has(Rational(1, 3)));
  EXPECT_TRUE(has(Rational(2, 3)));
  EXPECT_TRUE(has(Rational(7, 12)));
}

TEST(InfluenceScan, LowQuarter)
{
  auto r = influence_scan(Rational(1, 4096), 0, Rational(1, 4));
  EXPECT_LE(r.maximum, Rational(5, 4));
  EXPECT_THROW(influence_scan(Rational(1, 3)), std::invalid_argument);
}

TEST(Isoperimetry, EdgeBound)
{
  for (int n = 1; n <= 12; ++n) {
    std::uint64_t N = std::uint64_t{1} << n;
    for (std::uint64_t s = 1; s <= N; ++s) {
      Rational I = hart_influence(n, s);
      bool pow2 = std::has_single_bit(s);
      if (pow2) {
        int k = std::countr_zero(s);
        ASSERT_EQ(I, Rational(2 * (n - k) * Integer(s), Integer(N)));
      } else {
        double mu = double(s) / double(N);
        ASSERT_GT(to_double(I), -2.0 * mu * std::log2(mu)) << n << " " << s;
      }
    }
  }
}

TEST(Harper, ExhaustiveFourVariables)
{
  std::array<Rational, 9> best;
  for (std::uint64_t s = 0; s <= 8; ++s)
    best[s] = hart_influence(4, s);
  std::uint64_t checked = 0;
  for (std::uint64_t v = 0; v < 65536; ++v) {
    auto f = BooleanFunction::from_uint(4, v);
    auto s = f.count_true();
    if (s > 8)
      continue;
    ++checked;
    ASSERT_GE(f.average_sensitivity(), best[s]) << v;
  }
  EXPECT_GT(checked, 32768u);
}

TEST(LexDependence, DependenceProbability)
{
  for (int n = 2; n <= 9; ++n)
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); s += 2) {
      auto f = lex_truth_table(n, s);
      for (int k = 1; k <= n - 1; ++k)
        ASSERT_EQ(dependence_probability(f, k), Rational(1, Integer(1) << (k - 1))) << n << " " << s << " " << k;
    }
}
