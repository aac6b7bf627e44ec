// Cross-module invariants on randomly generated primitive, aperiodic substitutions.
#include <gtest/gtest.h>

#include <set>

#include "cobham/io.hpp"
#include "corpus.hpp"

using namespace cobham;

namespace {

/// Images of length 1..3 over 2 or 3 letters, the start image of length >= 2 beginning with 0.
/// Rejects non-primitive substitutions and those with a visible period.
Substitution random_substitution(std::mt19937& rng) {
  for (;;) {
    const std::size_t k = 2 + rng() % 2;
    std::vector<Word> images(k);
    for (std::size_t b = 0; b < k; ++b) {
      const std::size_t len = (b == 0 ? 2 : 1) + rng() % (b == 0 ? 2 : 3);
      images[b] = corpus::random_word(rng, k, len);
    }
    images[0][0] = 0;
    const Substitution s(std::move(images));
    if (!s.primitive()) continue;
    if (!check_nonperiodic(s, 2048).nonperiodic()) continue;
    return s;
  }
}

std::vector<Substitution> sample(unsigned seed, std::size_t count) {
  std::mt19937 rng(seed);
  std::vector<Substitution> out;
  while (out.size() < count) out.push_back(random_substitution(rng));
  return out;
}

std::string show(const Substitution& s) {
  std::string out;
  for (Letter b = 0; b < s.size(); ++b) {
    out += std::to_string(b) + "->";
    for (Letter c : s.image(b)) out += std::to_string(c);
    out += " ";
  }
  return out;
}

}  // namespace

TEST(RandomSubstitutions, GeneratorIsVaried) {
  std::set<std::vector<Word>> distinct;
  for (const Substitution& s : sample(101, 40)) distinct.insert(s.images());
  EXPECT_GE(distinct.size(), 20u);
}

TEST(RandomSubstitutions, ReturnSubstitutionIdentitiesAndSpectra) {
  std::mt19937 rng(7);
  for (const Substitution& s : sample(101, 12)) {
    const Word x = fixed_point_prefix(s, 64);
    const IntPolynomial cs = char_poly(s.matrix());
    const RootEnclosure es = dominant_eigenvalue(s.matrix());
    for (std::size_t n = 1; n <= 4; ++n) {
      const Word u(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
      const ReturnData d = return_substitution(s, u);
      const Morphism theta = d.system.coding();
      for (Letter b = 0; b < d.system.size(); ++b)
        ASSERT_EQ(theta.apply(d.substitution.image(b)), s.apply(d.system.word(b))) << show(s) << " n=" << n;
      for (int t = 0; t < 20; ++t) {
        const Word word = corpus::random_word(rng, d.system.size(), rng() % 10);
        ASSERT_EQ(d.system.decompose(d.system.encode(word)), word) << show(s);
      }
      // Same non-zero eigenvalues up to roots of unity, and the same Perron number.
      const IntMatrix mu = d.substitution.matrix();
      EXPECT_TRUE(spectra_equal_mod_trivial(s.matrix(), mu)) << show(s) << " n=" << n;
      const RootEnclosure eu = dominant_eigenvalue(mu);
      EXPECT_TRUE(certify_common_root(cs, es, char_poly(mu), eu)) << show(s) << " n=" << n;
    }
  }
}

TEST(RandomSubstitutions, PropprecAndMatrixConsequences) {
  for (const Substitution& s : sample(202, 10)) {
    const Word x = fixed_point_prefix(s, 16);
    for (std::size_t a = 1; a <= 2; ++a)
      for (std::size_t b = a + 1; b <= 4; ++b) {
        const RelationReport r = verify_propprec(s, WordView(x.data(), a), WordView(x.data(), b));
        ASSERT_TRUE(r.passed()) << show(s) << " |u|=" << a << " |v|=" << b;
        EXPECT_EQ(incidence_matrix(r.kappa) * incidence_matrix(r.lambda), matrix_power(r.tau_v.matrix(), r.k));
        EXPECT_EQ(incidence_matrix(r.lambda) * incidence_matrix(r.kappa), matrix_power(r.tau_u.matrix(), r.k));
      }
  }
}

TEST(RandomSubstitutions, StripTrivialIsIdempotent) {
  for (const Substitution& s : sample(303, 20)) {
    for (unsigned k = 1; k <= 3; ++k) {
      const IntPolynomial p = char_poly(matrix_power(s.matrix(), k));
      const IntPolynomial once = strip_trivial_factors(p);
      EXPECT_EQ(strip_trivial_factors(once), once) << show(s);
      // What remains has no root 0 and no root of unity among its integer roots.
      EXPECT_NE(once.evaluate(BigInt(0)), 0) << show(s);
      EXPECT_NE(once.evaluate(BigInt(1)), 0) << show(s);
      EXPECT_NE(once.evaluate(BigInt(-1)), 0) << show(s);
    }
  }
}

TEST(RandomSubstitutions, PowersKeepTheFixedPointAndDependence) {
  for (const Substitution& s : sample(404, 8)) {
    const Word x = fixed_point_prefix(s, 2000);
    for (unsigned n = 2; n <= 3; ++n) {
      const Substitution p = power(s, n);
      EXPECT_EQ(fixed_point_prefix(p, 2000), x) << show(s);
      const DependenceSearch dep = mult_dependent(s.matrix(), p.matrix(), 6);
      ASSERT_TRUE(dep.witness) << show(s);
      EXPECT_TRUE(dep.witness->certified);
      // Least witness: n-th power of α equals the first power of α^n.
      EXPECT_EQ(dep.witness->m, n);
      EXPECT_EQ(dep.witness->n, 1u);
    }
  }
}

TEST(RandomSubstitutions, InterpretationsReconstruct) {
  for (const Substitution& s : sample(505, 8)) {
    const Word x = fixed_point_prefix(s, 600);
    const FactorIndex idx(x, 6);
    for (std::size_t n = 1; n <= 6; ++n)
      for (const Word& f : idx.of_length(n)) {
        const auto all = interpretations(s, f, idx);
        EXPECT_FALSE(all.empty()) << show(s);
        for (const auto& in : all) ASSERT_EQ(concat(concat(in.u, s.apply(in.w)), in.v), f) << show(s);
      }
  }
}

TEST(RandomSubstitutions, PeriodicPresentation) {
  std::mt19937 rng(9);
  for (const Substitution& s : sample(606, 6)) {
    const Word m = corpus::random_word(rng, 3, 1 + rng() % 4);
    const PeriodicPresentation p = build_periodic_presentation(m, s);
    const PresentationReport r = verify_presentation(p, 500);
    EXPECT_TRUE(r.passed()) << show(s) << r.failure;
  }
}

TEST(RandomSubstitutions, FormatParseRoundTrip) {
  for (const Substitution& s : sample(707, 20)) {
    std::vector<std::string> names;
    for (std::size_t b = 0; b < s.size(); ++b) names.push_back("s" + std::to_string(b));
    const std::string text = format_substitution(s, Alphabet(names));
    const SubstitutionFile f = parse_substitution(text);
    EXPECT_EQ(f.substitution.images(), s.images());
    EXPECT_EQ(format_substitution(f), text);
  }
}
