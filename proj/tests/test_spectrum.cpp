#include <gtest/gtest.h>

#include <cmath>

#include "corpus.hpp"

using namespace cobham;

namespace {

// det(A) by Bareiss elimination; independent of the Berkowitz recursion.
BigInt bareiss_det(BigMatrix a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign_flip = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
      sign_flip = -sign_flip;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign_flip * a(n - 1, n - 1);
}

// char_poly(M) evaluated at n + 1 integer points against det(tI - M).
void expect_char_poly_matches_det(const IntMatrix& m) {
  const IntPolynomial p = char_poly(m);
  ASSERT_EQ(p.degree(), static_cast<int>(m.rows()));
  ASSERT_EQ(p.leading(), 1);
  for (long long t = -2; t <= static_cast<long long>(m.rows()) + 1; ++t) {
    BigMatrix a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = BigInt((i == j ? t : 0) - m(i, j));
    ASSERT_EQ(p.evaluate(BigInt(t)), bareiss_det(a)) << "t = " << t;
  }
}

IntPolynomial roots_poly(const std::vector<long long>& roots) {
  IntPolynomial p{1};
  for (long long r : roots) p = p * IntPolynomial::linear_root(r);
  return p;
}

// Matrix of the Morse return substitution on 011, computed by the return-word closure.
IntMatrix morse_011_matrix() { return return_substitution(corpus::morse(), corpus::w("011")).substitution.matrix(); }

}  // namespace

TEST(CharPoly, PairFromCounterexample) {
  EXPECT_EQ(char_poly(corpus::tau().matrix()), roots_poly({1, 4}));
  EXPECT_EQ(char_poly(corpus::sigma().matrix()), roots_poly({1, -2, 4}));
  EXPECT_EQ(char_poly(corpus::sigma().matrix()).to_string(), "x^3 - 3x^2 - 6x + 8");
  EXPECT_EQ(char_poly(IntMatrix::identity(2)), roots_poly({1, 1}));
  EXPECT_EQ(char_poly(corpus::morse().matrix()), (IntPolynomial{0, -2, 1}));
}

TEST(CharPoly, AgreesWithDeterminantOracle) {
  std::mt19937 rng(21);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 6;
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<std::int64_t>(rng() % 7) - 2;
    expect_char_poly_matches_det(m);
  }
  for (const auto& [name, s] : corpus::all()) expect_char_poly_matches_det(s.matrix());
  expect_char_poly_matches_det(morse_011_matrix());
}

TEST(Dominant, Examples) {
  const RootEnclosure t = dominant_eigenvalue(corpus::tau().matrix());
  EXPECT_TRUE(t.exact);
  EXPECT_EQ(t.lower, 4);
  const RootEnclosure f = dominant_eigenvalue(corpus::fibonacci().matrix(), Rational(1, 1000000000));
  EXPECT_FALSE(f.exact);
  EXPECT_LE(f.width(), Rational(1, 1000000000));
  EXPECT_NEAR(static_cast<double>(f.approx()), (1 + std::sqrt(5.0)) / 2, 1e-9);
  // x^2 - x - 1 changes sign across the enclosure.
  const IntPolynomial golden{-1, -1, 1};
  EXPECT_LT(golden.sign_at(f.lower), 0);
  EXPECT_GT(golden.sign_at(f.upper), 0);
  const RootEnclosure z = dominant_eigenvalue(IntMatrix(2, 2));
  EXPECT_TRUE(z.exact);
  EXPECT_EQ(z.lower, 0);
}

TEST(Dominant, EnclosureIsolatesSimpleRoot) {
  std::vector<IntMatrix> ms;
  for (const auto& [name, s] : corpus::all()) ms.push_back(s.matrix());
  ms.push_back(corpus::sigma().matrix());
  ms.push_back(morse_011_matrix());
  for (const auto& m : ms) {
    const RootEnclosure e = dominant_eigenvalue(m);
    const IntPolynomial p = char_poly(m);
    if (e.exact) {
      EXPECT_EQ(p.evaluate(e.lower), 0);
      EXPECT_NE(p.derivative().evaluate(e.lower), 0);  // simple
    } else {
      EXPECT_EQ(SturmSequence(squarefree_part(p)).roots_in(e.lower, e.upper), 1u);
      // No repeated root inside: gcd(p, p') has no root there.
      const IntPolynomial g = gcd(p, p.derivative());
      if (g.degree() >= 1) {
        EXPECT_EQ(SturmSequence(squarefree_part(g)).roots_in(e.lower, e.upper), 0u);
      }
    }
  }
}

TEST(Dominant, PowersMatchPowerOfEnclosure) {
  for (const auto& [name, s] : corpus::all()) {
    const RootEnclosure e = dominant_eigenvalue(s.matrix());
    for (unsigned k = 1; k <= 4; ++k) {
      const RootEnclosure ek = dominant_eigenvalue(matrix_power(s.matrix(), k));
      Rational lo = 1, hi = 1;
      for (unsigned i = 0; i < k; ++i) {
        lo *= e.lower;
        hi *= e.upper;
      }
      // Enclosures of λ^k from both sides must intersect.
      EXPECT_LE(std::max(lo, ek.lower), std::min(hi, ek.upper)) << name << " k=" << k;
      EXPECT_TRUE(certify_common_root(char_poly(matrix_power(s.matrix(), k)), ek,
                                      char_poly(matrix_power(s.matrix(), k)), ek));
    }
  }
}

TEST(Spectrum, PowersRaiseRoots) {
  // Numeric check on irrational roots, exact on integer ones: roots of char_poly(M^k) are λ^k.
  std::vector<IntMatrix> ms;
  for (const auto& [name, s] : corpus::all()) ms.push_back(s.matrix());
  ms.push_back(corpus::sigma().matrix());
  for (const auto& m : ms) {
    const auto base = numeric_roots(char_poly(m));
    for (unsigned k = 2; k <= 4; ++k) {
      const IntPolynomial pk = char_poly(matrix_power(m, k));
      for (const auto& z : base.roots) {
        const std::complex<long double> zk = std::pow(std::complex<long double>(z.real(), z.imag()), static_cast<int>(k));
        std::complex<long double> v = 0;
        for (int i = pk.degree(); i >= 0; --i) v = v * zk + pk.coeff(static_cast<std::size_t>(i)).convert_to<long double>();
        // Scale by the size of the terms to get a relative residual.
        long double scale = 0;
        for (int i = 0; i <= pk.degree(); ++i)
          scale += std::fabs(pk.coeff(static_cast<std::size_t>(i)).convert_to<long double>()) * std::pow(std::abs(zk), i);
        EXPECT_LT(std::abs(v) / std::max(scale, 1.0L), 1e-9L);
      }
      for (const auto& r : spectrum(m).integer_roots) {
        BigInt rk = 1;
        for (unsigned i = 0; i < k; ++i) rk *= r.root;
        EXPECT_EQ(pk.evaluate(rk), 0);
      }
    }
  }
}

TEST(Spectrum, MorseAndItsDerivedSubstitution) {
  const Spectrum s = spectrum(corpus::morse().matrix());
  EXPECT_EQ(s.zero_multiplicity, 1u);
  ASSERT_EQ(s.integer_roots.size(), 1u);
  EXPECT_EQ(s.integer_roots[0].root, 2);
  const IntMatrix m011 = morse_011_matrix();
  EXPECT_EQ(char_poly(m011), roots_poly({0, 0, -1, 2}));
  const Spectrum a = strip_trivial(s), b = strip_trivial(spectrum(m011));
  EXPECT_EQ(a.char_poly, roots_poly({2}));
  EXPECT_EQ(b.char_poly, roots_poly({2}));
  EXPECT_EQ(b.removed_zeros, 2u);
  ASSERT_EQ(b.removed_cyclotomic.size(), 1u);
  EXPECT_EQ(b.removed_cyclotomic[0], (CyclotomicFactor{2, 1}));
  EXPECT_TRUE(spectra_equal_mod_trivial(corpus::morse().matrix(), m011));
}

TEST(Spectrum, StripTrivial) {
  EXPECT_EQ(strip_trivial(spectrum(IntMatrix::identity(3))).char_poly.degree(), 0);
  for (const auto& [name, s] : corpus::all()) {
    const Spectrum once = strip_trivial(spectrum(s.matrix()));
    const Spectrum twice = strip_trivial(once);
    EXPECT_EQ(once.char_poly, twice.char_poly) << name;
  }
  // x^6 - 1 times (x - 3): only x - 3 survives.
  const IntPolynomial p = (IntPolynomial::monomial(6) - IntPolynomial{1}) * IntPolynomial{-3, 1} * IntPolynomial{0, 1};
  EXPECT_EQ(strip_trivial_factors(p), (IntPolynomial{-3, 1}));
}

TEST(Spectrum, EqualityModuloTrivial) {
  const IntMatrix f = corpus::fibonacci().matrix();
  EXPECT_FALSE(spectra_equal_mod_trivial(f, matrix_power(f, 2)));
  EXPECT_EQ(nontrivial_root_set(char_poly(f)), (IntPolynomial{-1, -1, 1}));
  EXPECT_EQ(nontrivial_root_set(char_poly(matrix_power(f, 2))), (IntPolynomial{1, -3, 1}));
  for (const auto& [name, s] : corpus::all()) EXPECT_TRUE(spectra_equal_mod_trivial(s.matrix(), s.matrix()));
}

TEST(Dependence, PairFromCounterexample) {
  const DependenceSearch d = mult_dependent(corpus::tau().matrix(), corpus::sigma().matrix(), 12);
  ASSERT_TRUE(d.witness);
  EXPECT_EQ(d.witness->m, 1u);
  EXPECT_EQ(d.witness->n, 1u);
  EXPECT_TRUE(d.witness->certified);
  EXPECT_TRUE(d.alpha.exact && d.alpha.lower == 4);
  EXPECT_TRUE(d.beta.exact && d.beta.lower == 4);
}

TEST(Dependence, PowersOfOneMatrix) {
  const IntMatrix f = corpus::fibonacci().matrix();
  const DependenceSearch d = mult_dependent(f, matrix_power(f, 2), 12);
  ASSERT_TRUE(d.witness);
  EXPECT_EQ(d.witness->m, 2u);
  EXPECT_EQ(d.witness->n, 1u);
  EXPECT_TRUE(d.witness->certified);
}

TEST(Dependence, AbsentIsReportedRelativeToBound) {
  const DependenceSearch d = mult_dependent(corpus::morse().matrix(), corpus::cyclic3().matrix(), 12);
  EXPECT_FALSE(d.witness);
  EXPECT_EQ(d.summary(), "no witness <= 12");
  EXPECT_EQ(d.summary().find("independent"), std::string::npos);
  // Oracle: 2^m = 3^n has no solution; |m log 2 - n log 3| stays far from 0 for m, n <= 12.
  double closest = 1;
  for (int m = 1; m <= 12; ++m)
    for (int n = 1; n <= 12; ++n) closest = std::min(closest, std::fabs(m * std::log(2.0) - n * std::log(3.0)));
  EXPECT_GT(closest, 1e-3);
}

TEST(Dependence, Symmetric) {
  std::vector<IntMatrix> ms{corpus::fibonacci().matrix(), matrix_power(corpus::fibonacci().matrix(), 3),
                            corpus::morse().matrix(), corpus::tau().matrix(), corpus::cyclic3().matrix(),
                            corpus::sigma().matrix(), corpus::tribonacci().matrix()};
  for (const auto& a : ms)
    for (const auto& b : ms) {
      const auto ab = mult_dependent(a, b, 6);
      const auto ba = mult_dependent(b, a, 6);
      ASSERT_EQ(ab.witness.has_value(), ba.witness.has_value());
      if (ab.witness) {
        EXPECT_EQ(ab.witness->m, ba.witness->n);
        EXPECT_EQ(ab.witness->n, ba.witness->m);
      }
    }
}

TEST(Dependence, CancellationIsReported) {
  std::stop_source src;
  src.request_stop();
  const auto d = mult_dependent(corpus::morse().matrix(), corpus::cyclic3().matrix(), 12, src.get_token());
  EXPECT_TRUE(d.cancelled);
  EXPECT_FALSE(d.witness);
}
