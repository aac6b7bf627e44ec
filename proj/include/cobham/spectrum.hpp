#pragma once

// Characteristic polynomials, dominant eigenvalues, root-of-unity stripping,
// spectrum comparison and multiplicative dependence of dominant eigenvalues.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <utility>
#include <vector>

#include "cobham/matrix.hpp"
#include "cobham/polynomial.hpp"
#include "cobham/substitution.hpp"

namespace cobham {

using BigMatrix = Matrix<BigInt>;

/// det(xI - M) by the division-free Berkowitz algorithm.
inline IntPolynomial char_poly(const BigMatrix& m) {
  if (!m.square()) throw std::invalid_argument("char_poly: non-square " + m.shape());
  const std::size_t n = m.rows();
  if (n == 0) return IntPolynomial{1};
  // Coefficients in descending order while bordering the leading principal submatrix.
  std::vector<BigInt> vect{1, -m(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    // t = [1, -a, -R C, -R A C, ..., -R A^{r-1} C]
    std::vector<BigInt> t(r + 2);
    t[0] = 1;
    t[1] = -m(r, r);
    std::vector<BigInt> col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = m(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      BigInt dot = 0;
      for (std::size_t i = 0; i < r; ++i) dot += m(r, i) * col[i];
      t[k + 2] = -dot;
      if (k + 1 < r) {
        std::vector<BigInt> next(r, BigInt(0));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) next[i] += m(i, j) * col[j];
        col = std::move(next);
      }
    }
    std::vector<BigInt> out(r + 2, BigInt(0));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) out[i] += t[i - j] * vect[j];
    vect = std::move(out);
  }
  std::reverse(vect.begin(), vect.end());
  return IntPolynomial(std::move(vect));
}

inline IntPolynomial char_poly(const IntMatrix& m) { return char_poly(m.cast<BigInt>()); }

/// Real root enclosure. Exact: lower == upper is the root. Otherwise the root
/// lies in the open interval (lower, upper), neither endpoint being a root.
struct RootEnclosure {
  Rational lower;
  Rational upper;
  bool exact = false;

  Rational width() const { return upper - lower; }
  Rational midpoint() const { return (lower + upper) / 2; }
  long double approx() const { return midpoint().convert_to<long double>(); }
  bool contains(const Rational& x) const { return exact ? x == lower : (lower < x && x < upper); }
};

namespace detail {

inline Rational nonroot_split(const IntPolynomial& p, const Rational& lo, const Rational& hi) {
  // The polynomial has finitely many roots, so one of these fractions works.
  for (int k = 2;; ++k) {
    for (int j = 1; j < k; ++j) {
      Rational mid = lo + (hi - lo) * Rational(j, k);
      if (p.sign_at(mid) != 0) return mid;
    }
  }
}

inline void isolate(const IntPolynomial& p, const SturmSequence& sturm, const Rational& lo,
                    const Rational& hi, unsigned count, std::vector<RootEnclosure>& out) {
  if (count == 0) return;
  if (count == 1) {
    out.push_back({lo, hi, false});
    return;
  }
  Rational mid = (lo + hi) / 2;
  if (p.sign_at(mid) == 0) mid = nonroot_split(p, lo, hi);
  const unsigned left = sturm.roots_in(lo, mid);
  isolate(p, sturm, lo, mid, left, out);
  isolate(p, sturm, mid, hi, count - left, out);
}

}  // namespace detail

/// Isolating enclosures of every real root of a squarefree p, increasing.
inline std::vector<RootEnclosure> isolate_real_roots(const IntPolynomial& squarefree) {
  std::vector<RootEnclosure> out;
  if (squarefree.degree() < 1) return out;
  const SturmSequence sturm(squarefree);
  const Rational bound(cauchy_root_bound(squarefree));
  detail::isolate(squarefree, sturm, -bound, bound, sturm.roots_in(-bound, bound), out);
  return out;
}

/// Shrinks an isolating enclosure of a root of squarefree p to width <= precision.
inline RootEnclosure refine(const IntPolynomial& p, RootEnclosure e, const Rational& precision) {
  if (e.exact) return e;
  const int s_hi = p.sign_at(e.upper);
  while (e.width() > precision) {
    Rational mid = e.midpoint();
    const int s = p.sign_at(mid);
    if (s == 0) return {mid, mid, true};
    (s == s_hi ? e.upper : e.lower) = mid;
  }
  return e;
}

/// Replaces an enclosure by an exact one when it contains an integer root.
inline RootEnclosure snap_integer_root(const IntPolynomial& p, RootEnclosure e) {
  if (e.exact) return e;
  RootEnclosure narrow = e.width() < 1 ? e : refine(p, e, Rational(1, 2));
  if (narrow.exact) return narrow;
  for (BigInt k = ceil_of(narrow.lower); Rational(k) <= narrow.upper; ++k)
    if (p.evaluate(k) == 0) return {Rational(k), Rational(k), true};
  return e;
}

struct RootMultiplicity {
  BigInt root;
  unsigned multiplicity = 0;
  friend bool operator==(const RootMultiplicity&, const RootMultiplicity&) = default;
};

struct CyclotomicFactor {
  unsigned order = 0;
  unsigned multiplicity = 0;
  friend bool operator==(const CyclotomicFactor&, const CyclotomicFactor&) = default;
};

struct NumericRoots {
  std::vector<std::complex<double>> roots;
  /// Every root of the polynomial lies within this distance of some approximation.
  double error_bound = 0.0;
};

/// Aberth-Ehrlich iteration; advisory only, never used for certification.
inline NumericRoots numeric_roots(const IntPolynomial& p) {
  NumericRoots out;
  const int n = p.degree();
  if (n < 1) return out;
  using C = std::complex<long double>;
  std::vector<long double> a(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) a[static_cast<std::size_t>(i)] = p.coeff(static_cast<std::size_t>(i)).convert_to<long double>();
  auto eval = [&](C z, C& dz) {
    C v = 0, d = 0;
    for (int i = n; i >= 0; --i) {
      d = d * z + v;
      v = v * z + a[static_cast<std::size_t>(i)];
    }
    dz = d;
    return v;
  };
  long double radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(a[static_cast<std::size_t>(i)] / a[static_cast<std::size_t>(n)]));
  radius = std::pow(radius + 1, 1.0L / n);
  std::vector<C> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    z[static_cast<std::size_t>(i)] = std::polar(radius, 2 * 3.14159265358979323846L * i / n + 0.4L);
  for (int iter = 0; iter < 1000; ++iter) {
    long double max_step = 0;
    for (int i = 0; i < n; ++i) {
      C d;
      C v = eval(z[static_cast<std::size_t>(i)], d);
      if (v == C(0)) continue;
      C ratio = v / d;
      C sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) sum += C(1) / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
      C step = ratio / (C(1) - ratio * sum);
      z[static_cast<std::size_t>(i)] -= step;
      max_step = std::max(max_step, std::abs(step));
    }
    if (max_step < 1e-18L) break;
  }
  long double bound = 0;
  for (int i = 0; i < n; ++i) {
    C d;
    C v = eval(z[static_cast<std::size_t>(i)], d);
    C denom = a[static_cast<std::size_t>(n)];
    for (int j = 0; j < n; ++j)
      if (j != i) denom *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
    long double w = std::abs(denom) == 0 ? INFINITY : std::abs(v / denom);
    bound = std::max(bound, n * w);
  }
  for (auto& r : z) out.roots.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  std::sort(out.roots.begin(), out.roots.end(), [](auto x, auto y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  out.error_bound = static_cast<double>(bound);
  return out;
}

/// Eigenvalue data of an integer polynomial (usually a characteristic polynomial).
///
/// char_poly = x^zero_multiplicity * Π (x - r)^m over integer_roots * residual.
/// `removed` records what strip_trivial took out of an earlier polynomial.
struct Spectrum {
  IntPolynomial char_poly;
  unsigned zero_multiplicity = 0;
  std::vector<RootMultiplicity> integer_roots;
  IntPolynomial residual;
  /// Largest real root (the Perron root for non-negative matrices).
  std::optional<RootEnclosure> dominant;
  NumericRoots numeric;
  Rational precision;

  unsigned removed_zeros = 0;
  std::vector<CyclotomicFactor> removed_cyclotomic;

  /// Squarefree, primitive, positive-leading polynomial with the same root set.
  IntPolynomial root_set() const { return squarefree_part(char_poly); }
};

inline const Rational& default_precision() {
  static const Rational p(1, BigInt(10) * BigInt("1000000000000000000000000000000"));
  return p;
}

/// Largest real root of p, refined to width <= precision; nullopt without real roots.
inline std::optional<RootEnclosure> largest_real_root(const IntPolynomial& p, const Rational& precision) {
  const IntPolynomial sf = squarefree_part(p);
  auto roots = isolate_real_roots(sf);
  if (roots.empty()) return std::nullopt;
  RootEnclosure e = snap_integer_root(sf, roots.back());
  return refine(sf, e, precision);
}

inline Spectrum analyze_polynomial(const IntPolynomial& p, const Rational& precision = default_precision()) {
  if (p.is_zero()) throw std::invalid_argument("spectrum of the zero polynomial");
  Spectrum s;
  s.char_poly = p;
  s.precision = precision;
  s.zero_multiplicity = p.zero_multiplicity();
  IntPolynomial rest = p.shift_down(s.zero_multiplicity);
  const IntPolynomial sf = squarefree_part(rest);
  for (const auto& e : isolate_real_roots(sf)) {
    RootEnclosure snapped = snap_integer_root(sf, e);
    if (!snapped.exact) continue;
    const BigInt r = floor_of(snapped.lower);
    RootMultiplicity rm{r, 0};
    const IntPolynomial lin = IntPolynomial::linear_root(r);
    while (auto q = divide_exact(rest, lin)) {
      rest = *q;
      ++rm.multiplicity;
    }
    s.integer_roots.push_back(rm);
  }
  s.residual = rest;
  s.dominant = largest_real_root(p, precision);
  s.numeric = numeric_roots(s.residual);
  return s;
}

/// Spectrum of a square matrix; the dominant enclosure has width <= precision.
inline Spectrum spectrum(const IntMatrix& m, const Rational& precision = default_precision()) {
  return analyze_polynomial(char_poly(m), precision);
}

/// Dominant (Perron) eigenvalue of a non-negative square matrix.
inline RootEnclosure dominant_eigenvalue(const IntMatrix& m, const Rational& precision = default_precision()) {
  if (!m.square()) throw std::invalid_argument("dominant_eigenvalue: non-square " + m.shape());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) < 0) throw std::invalid_argument("dominant_eigenvalue: negative entry");
  auto e = largest_real_root(char_poly(m), precision);
  if (!e) throw std::logic_error("non-negative matrix without a real eigenvalue");
  return *e;
}

/// p with the factor x^k and every cyclotomic factor removed; records what was removed.
inline IntPolynomial strip_trivial_factors(const IntPolynomial& p, unsigned* zeros = nullptr,
                                           std::vector<CyclotomicFactor>* removed = nullptr) {
  const unsigned z = p.zero_multiplicity();
  if (zeros) *zeros = z;
  IntPolynomial q = p.shift_down(z);
  const int deg = q.degree();
  if (deg < 1) return q;
  const unsigned limit = 2U * static_cast<unsigned>(deg) * static_cast<unsigned>(deg);
  for (unsigned d = 1; d <= limit && q.degree() >= 1; ++d) {
    if (euler_phi(d) > static_cast<unsigned>(q.degree())) continue;
    const IntPolynomial phi = cyclotomic(d);
    CyclotomicFactor f{d, 0};
    while (q.degree() >= phi.degree()) {
      auto quotient = divide_exact(q, phi);
      if (!quotient) break;
      q = *quotient;
      ++f.multiplicity;
    }
    if (f.multiplicity && removed) removed->push_back(f);
  }
  return q;
}

/// Spectrum with the eigenvalue 0 and all roots of unity removed.
inline Spectrum strip_trivial(const Spectrum& s) {
  unsigned zeros = 0;
  std::vector<CyclotomicFactor> removed;
  IntPolynomial q = strip_trivial_factors(s.char_poly, &zeros, &removed);
  Spectrum out = analyze_polynomial(q, s.precision == 0 ? default_precision() : s.precision);
  out.removed_zeros = s.removed_zeros + zeros;
  out.removed_cyclotomic = s.removed_cyclotomic;
  out.removed_cyclotomic.insert(out.removed_cyclotomic.end(), removed.begin(), removed.end());
  return out;
}

/// Root set of the characteristic polynomial without 0 and roots of unity.
inline IntPolynomial nontrivial_root_set(const IntPolynomial& char_poly) {
  return squarefree_part(strip_trivial_factors(char_poly));
}

/// Same eigenvalue sets once 0 and roots of unity are discarded.
inline bool spectra_equal_mod_trivial(const IntMatrix& a, const IntMatrix& b) {
  return nontrivial_root_set(char_poly(a)) == nontrivial_root_set(char_poly(b));
}

/// Certifies that the root of p1 isolated by e1 equals the root of p2 isolated by e2.
///
/// Both enclosures isolate a single root of their polynomial, so a root of
/// gcd(p1, p2) inside their intersection is that common root.
inline bool certify_common_root(const IntPolynomial& p1, const RootEnclosure& e1, const IntPolynomial& p2,
                                const RootEnclosure& e2) {
  const IntPolynomial g = gcd(p1, p2);
  if (g.degree() < 1) return false;
  if (e1.exact || e2.exact) {
    const Rational r = e1.exact ? e1.lower : e2.lower;
    return e1.contains(r) && e2.contains(r) && g.evaluate(r) == 0;
  }
  const Rational lo = std::max(e1.lower, e2.lower);
  const Rational hi = std::min(e1.upper, e2.upper);
  if (!(lo < hi)) return false;
  return SturmSequence(squarefree_part(g)).roots_in(lo, hi) == 1;
}

/// α^m = β^n, certified exactly.
struct DependenceWitness {
  unsigned m = 0;
  unsigned n = 0;
  bool certified = false;
  IntPolynomial common_factor;
  RootEnclosure left;   ///< encloses α^m, isolated in char_poly(M1^m)
  RootEnclosure right;  ///< encloses β^n, isolated in char_poly(M2^n)
};

struct DependenceSearch {
  std::optional<DependenceWitness> witness;
  unsigned bound = 0;
  bool cancelled = false;
  /// Numeric candidates that failed exact certification.
  unsigned rejected_candidates = 0;
  RootEnclosure alpha;
  RootEnclosure beta;

  /// Absence is only ever relative to the bound.
  std::string summary() const {
    if (witness)
      return "witness (m, n) = (" + std::to_string(witness->m) + ", " + std::to_string(witness->n) + ")" +
             (witness->certified ? ", certified" : ", numeric only");
    if (cancelled) return "search cancelled before bound " + std::to_string(bound);
    return "no witness <= " + std::to_string(bound);
  }
};

inline constexpr unsigned kDefaultDependenceBound = 12;

/// Searches 1 <= m, n <= bound for α^m = β^n between the dominant eigenvalues
/// of two primitive matrices. Candidates are screened numerically on log α, log β
/// and certified through the common factor of char_poly(M1^m) and char_poly(M2^n).
inline DependenceSearch mult_dependent(const IntMatrix& m1, const IntMatrix& m2,
                                       unsigned bound = kDefaultDependenceBound, std::stop_token stop = {}) {
  if (!is_primitive(m1).primitive || !is_primitive(m2).primitive)
    throw std::invalid_argument("mult_dependent: both matrices must be primitive");
  if (bound == 0) throw std::invalid_argument("mult_dependent: bound must be positive");

  DependenceSearch out;
  out.bound = bound;
  const Rational precision = default_precision();
  out.alpha = dominant_eigenvalue(m1, precision);
  out.beta = dominant_eigenvalue(m2, precision);
  const long double log_a = std::log(out.alpha.approx());
  const long double log_b = std::log(out.beta.approx());
  const long double tolerance = 1e-12L * (1 + bound * std::max(std::fabs(log_a), std::fabs(log_b)));

  const BigMatrix b1 = m1.cast<BigInt>();
  const BigMatrix b2 = m2.cast<BigInt>();
  std::vector<std::optional<std::pair<IntPolynomial, RootEnclosure>>> left(bound + 1), right(bound + 1);
  auto power_data = [&](const BigMatrix& base, unsigned k) {
    IntPolynomial cp = char_poly(matrix_power(base, k));
    auto e = largest_real_root(cp, precision);
    if (!e) throw std::logic_error("power of a primitive matrix without real eigenvalue");
    return std::make_pair(std::move(cp), *e);
  };

  for (unsigned m = 1; m <= bound; ++m) {
    for (unsigned n = 1; n <= bound; ++n) {
      if (stop.stop_requested()) {
        out.cancelled = true;
        return out;
      }
      if (std::fabs(m * log_a - n * log_b) > tolerance) continue;
      if (!left[m]) left[m] = power_data(b1, m);
      if (!right[n]) right[n] = power_data(b2, n);
      const auto& [p1, e1] = *left[m];
      const auto& [p2, e2] = *right[n];
      if (certify_common_root(p1, e1, p2, e2)) {
        out.witness = DependenceWitness{m, n, true, gcd(p1, p2), e1, e2};
        return out;
      }
      ++out.rejected_candidates;
    }
  }
  return out;
}

}  // namespace cobham
