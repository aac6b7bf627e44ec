#pragma once

// Exact integer polynomials: arithmetic, gcds, cyclotomic factors and Sturm sequences.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cobham {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign(const BigInt& v) { return v.sign(); }
inline int sign(const Rational& v) { return v.sign(); }
inline BigInt abs_value(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

/// "p/q" (or "p" when integral).
inline std::string to_string(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Floor of a rational.
inline BigInt floor_of(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigInt q = numerator(r) / denominator(r);
  if (r < 0 && Rational(q) != r) q -= 1;
  return q;
}

inline BigInt ceil_of(const Rational& r) {
  BigInt f = floor_of(r);
  return Rational(f) == r ? f : BigInt(f + 1);
}

/// Polynomial with arbitrary-precision integer coefficients, ascending degree.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> ascending) : c_(std::move(ascending)) { trim(); }
  IntPolynomial(std::initializer_list<long long> ascending) {
    for (long long v : ascending) c_.emplace_back(v);
    trim();
  }

  static IntPolynomial constant(const BigInt& v) { return IntPolynomial(std::vector<BigInt>{v}); }
  static IntPolynomial monomial(std::size_t degree, const BigInt& coeff = 1) {
    std::vector<BigInt> c(degree + 1, BigInt(0));
    c[degree] = coeff;
    return IntPolynomial(std::move(c));
  }
  /// x - r
  static IntPolynomial linear_root(const BigInt& r) { return IntPolynomial(std::vector<BigInt>{-r, 1}); }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<BigInt>& coefficients() const noexcept { return c_; }
  BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
  const BigInt& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  BigInt content() const {
    BigInt g = 0;
    for (const auto& v : c_) g = boost::multiprecision::gcd(g, abs_value(v));
    return g;
  }

  /// Divided by its content, with positive leading coefficient.
  IntPolynomial primitive_part() const {
    if (is_zero()) return {};
    BigInt g = content();
    if (leading() < 0) g = -g;
    std::vector<BigInt> c = c_;
    for (auto& v : c) v /= g;
    return IntPolynomial(std::move(c));
  }

  IntPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long long>(i);
    return IntPolynomial(std::move(d));
  }

  BigInt evaluate(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Rational evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
  }

  int sign_at(const Rational& x) const { return sign(evaluate(x)); }

  /// Sign as x -> +infinity (or -infinity).
  int sign_at_infinity(bool positive) const {
    if (is_zero()) return 0;
    int s = sign(leading());
    return (positive || degree() % 2 == 0) ? s : -s;
  }

  /// Number of leading zero coefficients, i.e. the multiplicity of the root 0.
  unsigned zero_multiplicity() const {
    unsigned k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    return k;
  }

  /// Divides out x^k.
  IntPolynomial shift_down(std::size_t k) const {
    if (k > c_.size()) return {};
    return IntPolynomial(std::vector<BigInt>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator-(const IntPolynomial& a) { return IntPolynomial() - a; }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator*(const BigInt& k, const IntPolynomial& a) {
    std::vector<BigInt> c = a.c_;
    for (auto& v : c) v *= k;
    return IntPolynomial(std::move(c));
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  /// Human-readable form, highest degree first, e.g. "x^2 - 5x + 4".
  std::string to_string(char var = 'x') const {
    if (is_zero()) return "0";
    std::string out;
    for (int d = degree(); d >= 0; --d) {
      const BigInt& v = c_[static_cast<std::size_t>(d)];
      if (v == 0) continue;
      BigInt mag = abs_value(v);
      if (out.empty()) {
        if (v < 0) out += "-";
      } else {
        out += v < 0 ? " - " : " + ";
      }
      if (mag != 1 || d == 0) out += mag.str();
      if (d >= 1) out += var;
      if (d >= 2) out += "^" + std::to_string(d);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<BigInt> c_;
};

/// Quotient of a / b when b divides a in Z[x]; nullopt otherwise.
inline std::optional<IntPolynomial> divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return IntPolynomial();
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<BigInt> r = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  std::vector<BigInt> q(r.size() - db, BigInt(0));
  for (std::size_t i = r.size(); i-- > db;) {
    if (r[i] == 0) continue;
    BigInt rem;
    BigInt t;
    boost::multiprecision::divide_qr(r[i], bc[db], t, rem);
    if (rem != 0) return std::nullopt;
    q[i - db] = t;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] -= t * bc[j];
  }
  for (const auto& v : r)
    if (v != 0) return std::nullopt;
  return IntPolynomial(std::move(q));
}

/// A positive multiple of the remainder of a modulo b (sign-preserving pseudo-remainder).
inline IntPolynomial positive_pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero polynomial");
  std::vector<BigInt> r = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  const BigInt lb = bc[db];
  const BigInt lb_abs = abs_value(lb);
  const int lb_sign = sign(lb);
  while (!r.empty() && r.size() - 1 >= db) {
    const std::size_t dr = r.size() - 1;
    const BigInt lr = r[dr];
    const BigInt factor = lb_sign > 0 ? lr : BigInt(-lr);
    for (auto& v : r) v *= lb_abs;
    for (std::size_t j = 0; j <= db; ++j) r[dr - db + j] -= factor * bc[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
    // keep coefficient growth in check by removing the (positive) content
    BigInt g = 0;
    for (const auto& v : r) g = boost::multiprecision::gcd(g, abs_value(v));
    if (g > 1)
      for (auto& v : r) v /= g;
  }
  return IntPolynomial(std::move(r));
}

/// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
inline IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial x = a.primitive_part();
  IntPolynomial y = b.primitive_part();
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPolynomial r = positive_pseudo_remainder(x, y).primitive_part();
    x = std::move(y);
    y = std::move(r);
  }
  return x.primitive_part();
}

/// p / gcd(p, p'): same roots, all simple. Primitive, positive leading coefficient.
inline IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.degree() <= 0) return p.is_zero() ? p : IntPolynomial{1};
  IntPolynomial g = gcd(p, p.derivative());
  auto q = divide_exact(p.primitive_part(), g);
  if (!q) throw std::logic_error("squarefree_part: gcd does not divide polynomial");
  return q->primitive_part();
}

inline unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

inline int mobius(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

/// Φ_d = Π_{e | d} (x^e - 1)^{μ(d/e)}.
inline IntPolynomial cyclotomic(unsigned d) {
  if (d == 0) throw std::invalid_argument("cyclotomic: order must be positive");
  IntPolynomial num{1}, den{1};
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    const int mu = mobius(d / e);
    if (mu == 0) continue;
    IntPolynomial f = IntPolynomial::monomial(e) - IntPolynomial{1};
    (mu > 0 ? num : den) = (mu > 0 ? num : den) * f;
  }
  auto q = divide_exact(num, den);
  if (!q) throw std::logic_error("cyclotomic: inexact division");
  return *q;
}

/// Sturm chain of a squarefree polynomial, used for exact real-root counting.
class SturmSequence {
 public:
  explicit SturmSequence(const IntPolynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("Sturm sequence of zero polynomial");
    chain_.push_back(p);
    if (p.degree() == 0) return;
    chain_.push_back(p.derivative());
    while (chain_.back().degree() > 0) {
      IntPolynomial r = positive_pseudo_remainder(chain_[chain_.size() - 2], chain_.back());
      if (r.is_zero()) break;
      chain_.push_back(-r);
    }
  }

  const IntPolynomial& polynomial() const { return chain_.front(); }

  unsigned variations_at(const Rational& x) const {
    std::vector<int> signs;
    for (const auto& q : chain_) signs.push_back(q.sign_at(x));
    return count(signs);
  }

  unsigned variations_at_infinity(bool positive) const {
    std::vector<int> signs;
    for (const auto& q : chain_) signs.push_back(q.sign_at_infinity(positive));
    return count(signs);
  }

  /// Distinct real roots in (a, b].
  unsigned roots_in(const Rational& a, const Rational& b) const {
    if (!(a < b)) return 0;
    return variations_at(a) - variations_at(b);
  }

  unsigned real_root_count() const { return variations_at_infinity(false) - variations_at_infinity(true); }

 private:
  static unsigned count(const std::vector<int>& signs) {
    unsigned v = 0;
    int last = 0;
    for (int s : signs) {
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  }

  std::vector<IntPolynomial> chain_;
};

/// Integer M with every real root of p in (-M, M).
inline BigInt cauchy_root_bound(const IntPolynomial& p) {
  if (p.degree() < 1) return 1;
  BigInt max_ratio = 0;
  const BigInt lead = abs_value(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    BigInt a = abs_value(p.coeff(static_cast<std::size_t>(i)));
    BigInt q = (a + lead - 1) / lead;
    max_ratio = std::max(max_ratio, q);
  }
  return max_ratio + 2;
}

}  // namespace cobham
