#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace splitgap;

namespace {

const PrimeField F;

BinForm random_binform(ResidueSource& src, int deg) {
  std::vector<u64> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = src.next();
  c.front() = src.next_nonzero();
  return BinForm(F, c);
}

BinForm s() { return BinForm::monomial(F, 1, 0); }
BinForm t() { return BinForm::monomial(F, 0, 1); }

}  // namespace

TEST(Field, Basics) {
  EXPECT_TRUE(is_prime(kDefaultPrime));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(65535));
  EXPECT_THROW(PrimeField(100), DomainError);
  EXPECT_THROW(PrimeField(4294967311ULL), DomainError);
  const PrimeField f(65537);
  EXPECT_EQ(f.reduce(-1), 65536u);
  for (u64 a : {1ULL, 2ULL, 12345ULL, 65536ULL}) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_THROW(f.inv(0), DomainError);
  EXPECT_EQ(f.centered(65536), -1);
}

TEST(Field, ResidueStreamDeterministic) {
  ResidueSource a(F, 42), b(F, 42);
  for (int i = 0; i < 100; ++i) {
    const u64 x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_LT(x, F.modulus());
  }
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(ExactLA, RankExamples) {
  EXPECT_EQ(rank(MatFp::identity(F, 3)), 3u);
  EXPECT_EQ(rank(MatFp(F, 4, 7)), 0u);
  const PrimeField small(65537);
  EXPECT_EQ(rank(from_rows(small, {{1, 2}, {2, 4}}, 2)), 1u);
}

TEST(ExactLA, KernelExamples) {
  EXPECT_TRUE(kernel_basis(MatFp::identity(F, 3)).empty());
  EXPECT_EQ(kernel_basis(MatFp(F, 2, 3)).size(), 3u);
  const MatFp m = from_rows(F, {{1, 1, 0}}, 3);
  const auto ker = kernel_basis(m);
  ASSERT_EQ(ker.size(), 2u);
  for (const auto& v : ker) {
    for (u64 x : m.apply(v)) EXPECT_EQ(x, 0u);
  }
}

TEST(ExactLA, RankNullityAndRowOperations) {
  ResidueSource src(F, 3);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
    // Low-rank product so that kernels are non-trivial.
    const std::size_t inner = 1 + rng() % std::min(rows, cols);
    MatFp a(F, rows, inner), b(F, inner, cols), m(F, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < inner; ++j) a.at(i, j) = src.next();
    for (std::size_t i = 0; i < inner; ++i)
      for (std::size_t j = 0; j < cols; ++j) b.at(i, j) = src.next();
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        u64 acc = 0;
        for (std::size_t l = 0; l < inner; ++l) acc = F.add(acc, F.mul(a.at(i, l), b.at(l, j)));
        m.at(i, j) = acc;
      }
    const auto ker = kernel_basis(m);
    EXPECT_EQ(rank(m) + ker.size(), cols);
    EXPECT_LE(rank(m), inner);
    for (const auto& v : ker) {
      for (u64 x : m.apply(v)) EXPECT_EQ(x, 0u);
      std::size_t lead = 0;
      while (v[lead] == 0) ++lead;
      EXPECT_EQ(v[lead], 1u);
    }
    MatFp shuffled(F, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      const u64 c = src.next_nonzero();
      for (std::size_t j = 0; j < cols; ++j) shuffled.at(rows - 1 - i, j) = F.mul(c, m.at(i, j));
    }
    EXPECT_EQ(rank(shuffled), rank(m));
  }
}

TEST(BinForm, MulExamples) {
  EXPECT_EQ(mul(s(), t()), BinForm::monomial(F, 1, 1));
  EXPECT_EQ(mul(s() + t(), s() - t()), BinForm::from_signed(F, {1, 0, -1}));
}

TEST(BinForm, MulMatchesEvaluation) {
  ResidueSource src(F, 11);
  const BinForm f = random_binform(src, 5), g = random_binform(src, 5);
  const BinForm h = mul(f, g);
  EXPECT_EQ(h.degree(), 10);
  for (int i = 0; i < 20; ++i) {
    const u64 a = src.next(), b = src.next();
    EXPECT_EQ(h.eval(a, b), F.mul(f.eval(a, b), g.eval(a, b)));
  }
}

TEST(BinForm, RingAxioms) {
  ResidueSource src(F, 12);
  for (int i = 0; i < 20; ++i) {
    const BinForm a = random_binform(src, 3), b = random_binform(src, 4), c = random_binform(src, 4);
    EXPECT_EQ(mul(mul(a, b), c), mul(a, mul(b, c)));
    EXPECT_EQ(mul(a, b + c), mul(a, b) + mul(a, c));
    EXPECT_EQ(mul(a, b), mul(b, a));
  }
}

TEST(BinForm, GcdExamples) {
  EXPECT_EQ(gcd(pow(s(), 4), mul(pow(s(), 3), t())), pow(s(), 3));
  EXPECT_EQ(gcd(s() + t(), s() - t()).degree(), 0);
  EXPECT_EQ(gcd(pow(t(), 3), mul(t(), s())), t());
}

TEST(BinForm, GcdMultiplicative) {
  ResidueSource src(F, 13);
  for (int i = 0; i < 30; ++i) {
    const BinForm f = random_binform(src, 4), g = random_binform(src, 5);
    BinForm h = random_binform(src, 3);
    if (i % 3 == 0) h = mul(h, pow(t(), 2));
    const BinForm lhs = gcd(mul(f, h), mul(g, h));
    EXPECT_TRUE(lhs.proportional_to(mul(h, gcd(f, g)))) << to_string(lhs);
    EXPECT_EQ(lhs, lhs.monic());
  }
}

TEST(BinForm, DivExact) {
  ResidueSource src(F, 14);
  EXPECT_EQ(div_exact(mul(s(), t()), t()), s());
  EXPECT_EQ(div_exact(BinForm::from_signed(F, {1, 0, -1}), s() + t()), s() - t());
  for (int i = 0; i < 20; ++i) {
    const BinForm f = random_binform(src, 6), g = random_binform(src, 3);
    EXPECT_EQ(div_exact(mul(f, g), g), f);
    // deg gcd + deg lcm = deg f + deg g
    const BinForm p = mul(f, s() + t()), q = mul(g, s() + t());
    const BinForm d = gcd(p, q);
    const BinForm lcm = div_exact(mul(p, q), d);
    EXPECT_EQ(d.degree() + lcm.degree(), p.degree() + q.degree());
  }
  EXPECT_THROW(div_exact(s() + t(), s()), InvariantError);
}

TEST(BinForm, Eval) {
  EXPECT_EQ(pow(s(), 2).eval(2, 0), 4u);
  EXPECT_EQ(mul(s(), t()).eval(1, 1), 1u);
  ResidueSource src(F, 15);
  const BinForm f = random_binform(src, 4), g = random_binform(src, 4);
  const u64 a = src.next(), b = src.next();
  EXPECT_EQ((f + g).eval(a, b), F.add(f.eval(a, b), g.eval(a, b)));
  u64 sum = 0;
  for (u64 c : f.coeffs()) sum = F.add(sum, c);
  EXPECT_EQ(f.eval(1, 1), sum);
}

TEST(BinForm, TextAndJson) {
  EXPECT_EQ(to_json(BinForm::from_signed(F, {1, 0, -1})).dump(), "[2,[1,0,2147483646]]");
  EXPECT_FALSE(to_string(s() + t()).empty());
}

TEST(ParamTriple, Invariants) {
  EXPECT_NO_THROW(ParamTriple(pow(s(), 2), mul(s(), t()), pow(t(), 2)));
  EXPECT_THROW(ParamTriple(pow(s(), 2), mul(s(), t()), t()), DimensionError);
  EXPECT_THROW(ParamTriple(pow(s(), 2), mul(s(), t()), mul(s(), s() + t())), DomainError);
  EXPECT_THROW(ParamTriple(s(), s().scaled(2), s().scaled(3)), DomainError);
  EXPECT_THROW(ParamTriple(BinForm::constant(F, 1), BinForm::constant(F, 2), BinForm::constant(F, 0)), DomainError);
}

TEST(PlaneForm, MonomialIndexing) {
  for (int k = 0; k <= 12; ++k) {
    const auto exps = monomial_exponents(k);
    EXPECT_EQ(exps.size(), monomial_count(k));
    for (std::size_t i = 0; i < exps.size(); ++i) {
      EXPECT_EQ(exps[i][0] + exps[i][1] + exps[i][2], k);
      EXPECT_EQ(monomial_index(exps[i]), i);
    }
  }
}

TEST(PlaneForm, ComposeMatchesEvaluation) {
  ResidueSource src(F, 16);
  const ParamTriple phi(random_binform(src, 3), random_binform(src, 3), random_binform(src, 3));
  std::vector<u64> c(monomial_count(4));
  for (auto& x : c) x = src.next();
  const PlaneForm g(F, 4, c);
  const BinForm h = compose(g, phi);
  EXPECT_EQ(h.degree(), 12);
  for (int i = 0; i < 10; ++i) {
    const u64 a = src.next(), b = src.next();
    EXPECT_EQ(h.eval(a, b), g.eval(phi.eval(a, b)));
  }
}
