#include <gtest/gtest.h>

#include "corpus.hpp"

using namespace cobham;
using corpus::w;

TEST(Compose, FibonacciSquared) {
  const Morphism f = corpus::fibonacci().morphism();
  const Morphism ff = compose(f, f);
  EXPECT_EQ(ff.image(0), w("010"));
  EXPECT_EQ(ff.image(1), w("01"));
  EXPECT_EQ(compose(Morphism::identity(2), f), f);
  EXPECT_EQ(compose(f, Morphism::identity(2)), f);
  EXPECT_EQ(incidence_matrix(ff), (IntMatrix{{2, 1}, {1, 1}}));
  EXPECT_EQ(incidence_matrix(f), (IntMatrix{{1, 1}, {1, 0}}));
}

TEST(IncidenceMatrix, PairFromCounterexample) {
  EXPECT_EQ(corpus::tau().matrix(), (IntMatrix{{2, 1}, {2, 3}}));
  EXPECT_EQ(corpus::sigma().matrix(), (IntMatrix{{2, 1, 1}, {2, 0, 2}, {0, 3, 1}}));
  EXPECT_EQ(incidence_matrix(Morphism::identity(3)), IntMatrix::identity(3));
}

TEST(IncidenceMatrix, FunctorialityExhaustive) {
  // Every morphism on alphabets of size <= 3 with image lengths in [1, 2], paired with random partners.
  std::mt19937 rng(1);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int t = 0; t < 400; ++t) {
      auto random_morphism = [&](std::size_t from, std::size_t to) {
        std::vector<Word> images(from);
        for (auto& img : images) img = corpus::random_word(rng, to, 1 + rng() % 3);
        return Morphism(to, images);
      };
      const std::size_t m = 1 + rng() % 3;
      const std::size_t k = 1 + rng() % 3;
      const Morphism g = random_morphism(n, m);
      const Morphism f = random_morphism(m, k);
      ASSERT_EQ(incidence_matrix(compose(f, g)), incidence_matrix(f) * incidence_matrix(g));
    }
  }
}

TEST(Primitivity, Examples) {
  const Primitivity fib = is_primitive(corpus::fibonacci().matrix());
  EXPECT_TRUE(fib.primitive);
  EXPECT_EQ(fib.exponent, 2u);
  EXPECT_FALSE(is_primitive(IntMatrix::identity(2)).primitive);
  EXPECT_TRUE(is_primitive(corpus::sigma().matrix()).primitive);
  EXPECT_FALSE(is_primitive(IntMatrix{{0, 1}, {1, 0}}).primitive);
}

TEST(Primitivity, AgreesWithPowerScan) {
  // Oracle: an irreducible aperiodic matrix becomes positive within n^2 - 2n + 2 steps; scan further to be sure.
  std::mt19937 rng(2);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 4;
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng() % 3 == 0;
    std::optional<unsigned> first;
    IntMatrix p = m;
    for (unsigned k = 1; k <= 3 * n * n && !first; ++k) {
      bool pos = true;
      for (std::size_t i = 0; i < n * n; ++i) pos = pos && p(i / n, i % n) > 0;
      if (pos) first = k;
      p = p * m;
      for (std::size_t i = 0; i < n * n; ++i) p(i / n, i % n) = p(i / n, i % n) > 0;
    }
    const Primitivity got = is_primitive(m);
    ASSERT_EQ(got.primitive, first.has_value());
    ASSERT_EQ(got.exponent, first);
  }
}

TEST(Power, Examples) {
  EXPECT_EQ(power(corpus::fibonacci(), 1), corpus::fibonacci());
  const Substitution f3 = power(corpus::fibonacci(), 3);
  EXPECT_EQ(f3.image(0), w("01001"));
  EXPECT_EQ(f3.image(1), w("010"));
  for (unsigned k = 1; k <= 8; ++k) EXPECT_EQ(power(corpus::morse(), k).image(0).size(), 1u << k);
  EXPECT_THROW(power(corpus::fibonacci(), 0), std::invalid_argument);
}

TEST(FixedPoint, Examples) {
  EXPECT_EQ(fixed_point_prefix(corpus::fibonacci(), 13), w("0100101001001"));
  EXPECT_EQ(fixed_point_prefix(corpus::morse(), 8), w("01101001"));
  for (const auto& [name, s] : corpus::all()) EXPECT_EQ(fixed_point_prefix(s, 1), Word{s.start()}) << name;
  EXPECT_THROW(fixed_point_prefix(Substitution(std::vector<Word>{{0}, {1, 0}}), 5), GenerationError);
}

TEST(FixedPoint, CodedSigmaEqualsTau) {
  const Morphism phi(2, {{0}, {1}, {1}});
  EXPECT_EQ(morphic_image_prefix(phi, corpus::sigma(), 16), fixed_point_prefix(corpus::tau(), 16));
  EXPECT_EQ(morphic_image_prefix(phi, corpus::sigma(), 10000), fixed_point_prefix(corpus::tau(), 10000));
  EXPECT_EQ(morphic_image_prefix(Morphism::identity(2), corpus::morse(), 50), fixed_point_prefix(corpus::morse(), 50));
  EXPECT_EQ(morphic_image_prefix(Morphism(1, {{0}, {0}}), corpus::morse(), 20), Word(20, 0));
  EXPECT_THROW(morphic_image_prefix(Morphism(2, {{0, 1}, {1}}), corpus::fibonacci(), 5), std::invalid_argument);
}

TEST(FixedPoint, Coherence) {
  for (const auto& [name, s] : corpus::all())
    for (std::size_t n : {1u, 2u, 7u, 100u, 1000u}) {
      const Word x = fixed_point_prefix(s, n);
      EXPECT_TRUE(is_prefix(x, s.apply(x))) << name << " n=" << n;
    }
}

TEST(FixedPoint, PowersShareFixedPoint) {
  for (const auto& [name, s] : corpus::all()) {
    const Word x = fixed_point_prefix(s, 10000);
    for (unsigned k = 1; k <= 5; ++k) {
      const Substitution p = power(s, k);
      EXPECT_EQ(fixed_point_prefix(p, 10000), x) << name << "^" << k;
      EXPECT_TRUE(p.primitive()) << name << "^" << k;
    }
  }
}

TEST(FixedPoint, PrefixCapIsEnforced) {
  FixedPointPrefix fp(corpus::fibonacci());
  EXPECT_THROW(fp.extend(prefix_cap() + 1), ResourceLimit);
}

TEST(Canonical, RenamingIsInvariant) {
  // Swap the letters of Fibonacci: 1 -> 10, 0 -> 1 with start 1.
  const Substitution swapped(Morphism(2, {{1}, {1, 0}}), 1);
  EXPECT_TRUE(canonically_equal(swapped, corpus::fibonacci()));
  EXPECT_FALSE(canonically_equal(corpus::morse(), corpus::fibonacci()));
  EXPECT_EQ(first_appearance_order(corpus::tribonacci()), (std::vector<Letter>{0, 1, 2}));
  EXPECT_EQ(first_appearance_order(swapped), (std::vector<Letter>{1, 0}));
}

TEST(Substitution, Validation) {
  EXPECT_THROW(Substitution(std::vector<Word>{{1, 0}, {0}}, 0), std::invalid_argument);
  EXPECT_THROW(Substitution(std::vector<Word>{{0}, {}}, 0), std::invalid_argument);
  EXPECT_THROW(Substitution(Morphism(3, {{0}, {1}}), 0), std::invalid_argument);
}

TEST(Periodicity, CorpusIsAperiodicAndPeriodicFixtureIsNot) {
  for (const auto& [name, s] : corpus::all()) EXPECT_TRUE(check_nonperiodic(s).nonperiodic()) << name;
  const auto p = check_nonperiodic(Substitution(std::vector<Word>{{0, 1}, {0, 1}}));
  ASSERT_FALSE(p.nonperiodic());
  EXPECT_EQ(p.period->period, 2u);
}
