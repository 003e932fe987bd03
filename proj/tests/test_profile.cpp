#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fei;
using fei::testing::random_function;
using fei::testing::random_profile;

namespace {

void expect_same(const Profile& a, const Profile& b, double tol)
{
  EXPECT_NEAR(a.p, b.p, 1e-15);
  EXPECT_NEAR(a.influence, b.influence, 1e-12);
  EXPECT_NEAR(a.entropy, b.entropy, tol);
}

void expect_identical(const ExactProfile& a, const ExactProfile& b)
{
  EXPECT_EQ(a.p, b.p);
  EXPECT_EQ(a.influence, b.influence);
  EXPECT_EQ(a.entropy, b.entropy);
}

} // namespace

TEST(EntropyFunctions, Values)
{
  EXPECT_EQ(h(0.5), 1.0);
  EXPECT_EQ(h(0.0), 0.0);
  EXPECT_EQ(h(1.0), 0.0);
  EXPECT_EQ(h_tilde(0.5), 0.0);
  EXPECT_NEAR(h_tilde(2.0 / 3.0), h(8.0 / 9.0), 1e-15);
  for (int k = 1; k <= 9; ++k) {
    double p = k / 10.0;
    EXPECT_NEAR(psi(p, 0.5), 2.0 * h(p), 1e-14);
    EXPECT_NEAR(psi_general(p, 0.5), 2.0 * h(p), 1e-14);
    EXPECT_NEAR(h_tilde(p), h((1 - 2 * p) * (1 - 2 * p)), 1e-14);
  }
  EXPECT_THROW(h(1.5), std::domain_error);
  EXPECT_THROW(h_tilde(-0.1), std::domain_error);
}

TEST(Meet, Or2WithLexTwoThirds)
{
  auto or2 = profile(evaluate(builtin("OR", 2), 2));
  auto lex = *lex_profile_exact(Rational(2, 3)).exact;
  auto r = meet(or2, lex);
  EXPECT_EQ(r.p, Rational(1, 2));
  EXPECT_EQ(r.influence, Rational(5, 3));
  EXPECT_NEAR(r.entropy, 8.0 / 3.0 + std::log2(3.0), 1e-12);
}

TEST(Meet, Identities)
{
  std::mt19937_64 rng(20);
  for (int t = 0; t < 20; ++t) {
    auto a = random_profile(rng);
    expect_same(meet(a, constant_profile<double>(true)), a, 1e-12);
    expect_same(join(a, constant_profile<double>(false)), a, 1e-12);
  }
}

TEST(Join, IotaIotaIsOr2)
{
  auto r = join(iota_profile<Rational>(), iota_profile<Rational>());
  EXPECT_EQ(r.p, Rational(3, 4));
  EXPECT_EQ(r.influence, Rational(1));
  EXPECT_NEAR(r.entropy, 2.0, 1e-15);
}

TEST(Join, DeMorgan)
{
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    auto a = random_profile(rng), b = random_profile(rng);
    expect_same(join(a, b), dual(meet(dual(a), dual(b))), 1e-12);
  }
}

TEST(Composition, TruthTableOracle)
{
  std::mt19937_64 rng(22);
  for (int t = 0; t < 200; ++t) {
    int n1 = 1 + int(rng() % 8);
    int n2 = 1 + int(rng() % (12 - n1));
    auto f = random_function(n1, rng), g = random_function(n2, rng);
    auto pf = profile(f), pg = profile(g);
    bool use_meet = t % 2 == 0;
    auto algebra = use_meet ? meet(pf, pg) : join(pf, pg);
    auto direct = profile(use_meet ? f.disjoint_and(g) : f.disjoint_or(g));
    ASSERT_EQ(algebra.p, direct.p);
    ASSERT_EQ(algebra.influence, direct.influence);
    ASSERT_NEAR(algebra.entropy, direct.entropy, 1e-9) << n1 << "+" << n2;
  }
}

TEST(Composition, SpecificPairs)
{
  // random f on 4 and 5 variables, conjunction on 9
  std::mt19937_64 rng(23);
  auto f = random_function(4, rng), g = random_function(5, rng);
  auto direct = profile(f.disjoint_and(g));
  auto algebra = meet(profile(f), profile(g));
  EXPECT_EQ(algebra.influence, direct.influence);
  EXPECT_NEAR(algebra.entropy, direct.entropy, 1e-9);
}

TEST(Composition, CommutativeAssociative)
{
  std::mt19937_64 rng(24);
  for (int t = 0; t < 50; ++t) {
    auto a = random_profile(rng), b = random_profile(rng), c = random_profile(rng);
    expect_same(meet(a, b), meet(b, a), 1e-12);
    expect_same(join(a, b), join(b, a), 1e-12);
    expect_same(meet(meet(a, b), c), meet(a, meet(b, c)), 1e-12);
    expect_same(join(join(a, b), c), join(a, join(b, c)), 1e-12);
  }
  auto x = profile(evaluate(builtin("g", 2), 4)), y = profile(lex_truth_table(3, 3)), z = profile(evaluate(builtin("tau"), 2));
  EXPECT_EQ(meet(meet(x, y), z).influence, meet(x, meet(y, z)).influence);
}

TEST(WithIota, BitIdentical)
{
  std::mt19937_64 rng(25);
  auto iota = iota_profile<Rational>();
  for (int t = 0; t < 100; ++t) {
    int n = 1 + int(rng() % 8);
    auto a = profile(random_function(n, rng));
    expect_identical(with_iota(a, Gate::meet), meet(a, iota));
    expect_identical(with_iota(a, Gate::join), join(a, iota));
  }
  auto fi = iota_profile<double>();
  for (int t = 0; t < 100; ++t) {
    auto a = random_profile(rng);
    auto m = with_iota(a, Gate::meet), mm = meet(a, fi);
    EXPECT_EQ(m.p, mm.p);
    EXPECT_EQ(m.influence, mm.influence);
    EXPECT_EQ(m.entropy, mm.entropy);
    auto j = with_iota(a, Gate::join), jj = join(a, fi);
    EXPECT_EQ(j.p, jj.p);
    EXPECT_EQ(j.influence, jj.influence);
    EXPECT_EQ(j.entropy, jj.entropy);
  }
}

TEST(WithIota, Examples)
{
  auto and2 = profile(evaluate(builtin("AND", 2), 2));
  expect_identical(with_iota(iota_profile<Rational>(), Gate::meet), {and2.p, and2.influence, and2.entropy});

  auto lex23 = *lex_profile_exact(Rational(2, 3)).exact;
  auto chained = with_iota(lex23, Gate::join);
  auto lex56 = *lex_profile_exact(Rational(5, 6)).exact;
  EXPECT_EQ(chained.p, Rational(5, 6));
  EXPECT_EQ(chained.influence, lex23.influence / 2 + 1 - lex23.p);
  EXPECT_EQ(chained.influence, lex56.influence);
  EXPECT_NEAR(chained.entropy, lex56.entropy, 1e-12);

  // 11/16 = 0.1011: innermost bit first
  ExactProfile f = iota_profile<Rational>();
  for (Gate g : {Gate::join, Gate::meet, Gate::join})
    f = with_iota(f, g);
  auto lex = *lex_profile_exact(Rational(11, 16)).exact;
  EXPECT_EQ(f.p, Rational(11, 16));
  EXPECT_EQ(f.influence, lex.influence);
  EXPECT_NEAR(f.entropy, lex.entropy, 1e-12);
  auto tt = profile(lex_truth_table(4, 11));
  EXPECT_EQ(f.influence, tt.influence);
  EXPECT_NEAR(f.entropy, tt.entropy, 1e-12);
}

TEST(Kappa, Iota)
{
  auto k = solve_kappa(iota_profile<Rational>());
  EXPECT_EQ(k.p, Rational(2, 3));
  EXPECT_EQ(k.influence, Rational(4, 3));
  EXPECT_NEAR(k.entropy, 2.0 * std::log2(3.0), 1e-12);
}

TEST(Kappa, LexTwoThirds)
{
  auto lex = *lex_profile_exact(Rational(2, 3)).exact;
  auto k = solve_kappa(lex);
  EXPECT_EQ(k.p, Rational(3, 5));
  EXPECT_EQ(k.p, q_pi(Rational(1, 2), 2).q);
}

TEST(Kappa, Degenerate)
{
  EXPECT_THROW(solve_kappa(constant_profile<Rational>(false)), std::domain_error);
  EXPECT_THROW(solve_kappa(constant_profile<Rational>(true)), std::domain_error);
}

TEST(Kappa, FixedPoint)
{
  std::mt19937_64 rng(26);
  for (int t = 0; t < 50; ++t) {
    int n = 1 + int(rng() % 8);
    auto f = random_function(n, rng);
    auto lam = profile(f);
    if (lam.degenerate())
      continue;
    auto k = solve_kappa(lam);
    auto again = dual(meet(lam, k));
    EXPECT_EQ(again.p, k.p);
    EXPECT_EQ(again.influence, k.influence);
    EXPECT_NEAR(again.entropy, k.entropy, 1e-12);
  }
}

TEST(ProfileFields, Derived)
{
  auto a = profile(evaluate(builtin("AND", 3), 3));
  EXPECT_EQ(a.expectation(), Rational(3, 4));
  EXPECT_EQ(a.variance(), Rational(7, 16));
  EXPECT_EQ(*a.influence_plus(), a.influence / a.variance());
}
