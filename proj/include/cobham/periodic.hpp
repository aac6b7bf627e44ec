#pragma once

// A substitution ζ, a morphism ψ and a coding φ with φ(X_ζ) = m^ω, built
// from a period word m and a primitive substitution τ.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cobham/spectrum.hpp"
#include "cobham/substitution.hpp"
#include "cobham/words.hpp"

namespace cobham {

/// Letter (b, i) of the product alphabet D has index b·|m| + i.
struct PeriodicPresentation {
  Word m;
  std::size_t m_alphabet = 0;
  unsigned k = 0;
  Substitution tau;
  Substitution zeta;
  Morphism psi;  ///< A -> D^+
  Morphism phi;  ///< D -> alphabet of m, letter to letter

  Letter pair(Letter b, std::size_t i) const { return static_cast<Letter>(b * m.size() + i); }
};

namespace detail {

/// Least k with M^k > 0 and every column sum of M^k larger than |m|.
inline unsigned presentation_exponent(const IntMatrix& matrix, std::size_t period) {
  const Primitivity prim = is_primitive(matrix);
  if (!prim.primitive) throw std::invalid_argument("periodic presentation needs a primitive substitution");
  IntMatrix power = matrix_power(matrix, *prim.exponent);
  for (unsigned k = *prim.exponent;; ++k) {
    bool large = true;
    for (std::size_t j = 0; j < power.cols() && large; ++j)
      large = power.column_sum(j) > static_cast<std::int64_t>(period);
    if (large) return k;
    power = power * matrix;
  }
}

inline Morphism psi_morphism(std::size_t alphabet, std::size_t period) {
  std::vector<Word> images(alphabet);
  for (std::size_t b = 0; b < alphabet; ++b)
    for (std::size_t i = 0; i < period; ++i) images[b].push_back(static_cast<Letter>(b * period + i));
  return Morphism(alphabet * period, std::move(images));
}

}  // namespace detail

struct PresentationReport {
  bool commutation = false;  ///< ζψ = ψτ^k
  std::optional<Letter> commutation_counterexample;
  bool phi_psi = false;  ///< φψ(b) = m for every b
  bool primitive = false;
  std::size_t check_length = 0;
  bool prefix_matches = false;  ///< φ(X_ζ) agrees with m^ω on check_length letters
  std::optional<std::size_t> prefix_mismatch;
  bool dominant_power = false;  ///< dominant(M_ζ) = dominant(M_τ)^k, certified exactly
  std::string failure;

  bool passed() const { return commutation && phi_psi && primitive && prefix_matches && dominant_power; }
};

inline PresentationReport verify_presentation(const PeriodicPresentation& p, std::size_t check_length) {
  PresentationReport r;
  r.check_length = check_length;
  const Morphism tk = power(p.tau, p.k).morphism();
  const Morphism lhs = compose(p.zeta.morphism(), p.psi);
  const Morphism rhs = compose(p.psi, tk);
  r.commutation = true;
  for (Letter b = 0; b < p.tau.size(); ++b)
    if (lhs.image(b) != rhs.image(b)) {
      r.commutation = false;
      r.commutation_counterexample = b;
      r.failure = "zeta psi differs from psi tau^k on letter " + std::to_string(b);
      break;
    }
  r.phi_psi = true;
  for (Letter b = 0; b < p.tau.size(); ++b)
    if (p.phi.apply(p.psi.image(b)) != p.m) r.phi_psi = false;
  const IntMatrix mz = p.zeta.matrix();
  r.primitive = is_primitive(mz).primitive;

  if (check_length == 0) {
    r.prefix_matches = true;
  } else {
    try {
      const Word y = morphic_image_prefix(p.phi, p.zeta, check_length);
      r.prefix_matches = true;
      for (std::size_t i = 0; i < check_length; ++i)
        if (y[i] != p.m[i % p.m.size()]) {
          r.prefix_matches = false;
          r.prefix_mismatch = i;
          break;
        }
    } catch (const GenerationError& e) {
      r.failure = e.what();
    }
  }

  if (r.primitive) {
    const IntPolynomial cz = char_poly(mz);
    const IntPolynomial ct = char_poly(matrix_power(p.tau.matrix(), p.k));
    const Rational prec = default_precision();
    auto ez = largest_real_root(cz, prec);
    auto et = largest_real_root(ct, prec);
    r.dominant_power = ez && et && certify_common_root(cz, *ez, ct, *et);
  }
  return r;
}

/// Builds ζ on D = A x {0..|m|-1} from τ^k, with ψ(b) = (b,0)...(b,|m|-1) and φ((b,i)) = m_i.
/// The letters of m range over an alphabet of size m_alphabet (default: largest letter + 1).
inline PeriodicPresentation build_periodic_presentation(WordView m, const Substitution& tau,
                                                        std::size_t m_alphabet = 0) {
  if (m.empty()) throw std::invalid_argument("period word must be non-empty");
  const std::size_t period = m.size();
  const std::size_t na = tau.size();
  const unsigned k = detail::presentation_exponent(tau.matrix(), period);
  const Substitution tk = power(tau, k);
  const Morphism psi = detail::psi_morphism(na, period);

  std::vector<Word> images(na * period);
  for (Letter b = 0; b < na; ++b) {
    const Word& img = tk.image(b);
    for (std::size_t i = 0; i + 1 < period; ++i) images[b * period + i] = psi.image(img[i]);
    images[b * period + period - 1] = psi.apply(WordView(img).subspan(period - 1));
  }
  for (Letter a : m) m_alphabet = std::max<std::size_t>(m_alphabet, a + 1);
  std::vector<Word> phi_images(na * period);
  for (std::size_t d = 0; d < na * period; ++d) phi_images[d] = {m[d % period]};

  PeriodicPresentation p{Word(m.begin(), m.end()),
                         m_alphabet,
                         k,
                         tau,
                         Substitution(Morphism(na * period, std::move(images)), static_cast<Letter>(tau.start() * period)),
                         psi,
                         Morphism(m_alphabet, std::move(phi_images))};
  const PresentationReport check = verify_presentation(p, 0);
  if (!(check.commutation && check.phi_psi && check.primitive && check.dominant_power))
    throw std::logic_error("periodic presentation failed its own invariants: " + check.failure);
  return p;
}

}  // namespace cobham
