#pragma once

// Morphism and matrix relations between return substitutions, and the
// machinery for two substitutions sharing a fixed point.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cobham/errors.hpp"
#include "cobham/polynomial.hpp"
#include "cobham/returns.hpp"
#include "cobham/spectrum.hpp"
#include "cobham/substitution.hpp"
#include "cobham/words.hpp"

namespace cobham {

/// Outcome of one letterwise morphism identity f = g.
struct IdentityCheck {
  std::string name;
  bool passed = false;
  /// First source letter where the two sides differ.
  std::optional<Letter> counterexample;
};

inline IdentityCheck check_identity(std::string name, const Morphism& lhs, const Morphism& rhs) {
  IdentityCheck c{std::move(name), true, std::nullopt};
  if (lhs.source_size() != rhs.source_size() || lhs.target_size() != rhs.target_size()) {
    c.passed = false;
    return c;
  }
  for (Letter b = 0; b < lhs.source_size(); ++b)
    if (lhs.image(b) != rhs.image(b)) {
      c.passed = false;
      c.counterexample = b;
      break;
    }
  return c;
}

/// Θ_u λ = Θ_v: each return word on v written over return words on u.
inline Morphism lambda_morphism(const ReturnSystem& ru, const ReturnSystem& rv) {
  std::vector<Word> images;
  images.reserve(rv.size());
  for (const Word& w : rv.words()) {
    try {
      images.push_back(ru.decompose(w));
    } catch (const DecompositionError& e) {
      throw std::logic_error(std::string("return word on v does not decompose over R_u: ") + e.what());
    }
  }
  return Morphism(ru.size(), std::move(images));
}

inline void require_nested_prefixes(const Substitution& tau, WordView u, WordView v) {
  if (u.empty()) throw std::invalid_argument("u must be non-empty");
  if (u.size() >= v.size()) throw std::invalid_argument("need |u| < |v|");
  const Word x = fixed_point_prefix(tau, v.size());
  if (!is_prefix(v, x)) throw std::invalid_argument("v is not a prefix of the fixed point");
}

inline Morphism lambda_morphism(const Substitution& tau, WordView u, WordView v) {
  require_nested_prefixes(tau, u, v);
  return lambda_morphism(return_substitution(tau, u).system, return_substitution(tau, v).system);
}

struct KappaMorphism {
  unsigned k = 0;
  Morphism kappa;  ///< R_u -> R_v^+
};

/// Least k with |τ^k(u)| > |v| and every τ^k(Θ_u(b)) a concatenation of return words on v.
inline KappaMorphism kappa_morphism(const Substitution& tau, const ReturnSystem& ru, const ReturnSystem& rv,
                                    unsigned max_exponent = 64) {
  const std::size_t cap = prefix_cap();
  std::vector<Word> images = ru.words();
  Word tu = ru.prefix();
  for (unsigned k = 1; k <= max_exponent; ++k) {
    tu = tau.apply(tu);
    for (auto& w : images) {
      w = tau.apply(w);
      if (w.size() > cap) throw ResourceLimit("kappa_morphism: image length exceeds prefix cap", cap);
    }
    if (tu.size() <= rv.prefix().size()) continue;
    std::vector<Word> decomposed;
    for (const Word& w : images) {
      auto d = rv.try_decompose(w);
      if (!d || d->empty()) break;
      decomposed.push_back(std::move(*d));
    }
    if (decomposed.size() == images.size()) return {k, Morphism(rv.size(), std::move(decomposed))};
  }
  throw ResourceLimit("kappa_morphism: no admissible exponent", max_exponent);
}

inline KappaMorphism kappa_morphism(const Substitution& tau, WordView u, WordView v) {
  require_nested_prefixes(tau, u, v);
  return kappa_morphism(tau, return_substitution(tau, u).system, return_substitution(tau, v).system);
}

/// λ, κ and the four commutation identities between τ_u and τ_v.
struct RelationReport {
  Word u;
  Word v;
  unsigned k = 0;
  Morphism lambda;
  Morphism kappa;
  Substitution tau_u;
  Substitution tau_v;
  std::vector<IdentityCheck> identities;
  /// M_κ M_λ = M_{τ_v}^k and M_λ M_κ = M_{τ_u}^k through matrix arithmetic.
  bool matrix_consequences = false;

  bool passed() const {
    return matrix_consequences &&
           std::all_of(identities.begin(), identities.end(), [](const IdentityCheck& c) { return c.passed; });
  }
};

inline RelationReport verify_propprec(const Substitution& tau, WordView u, WordView v) {
  require_nested_prefixes(tau, u, v);
  const ReturnData du = return_substitution(tau, u);
  const ReturnData dv = return_substitution(tau, v);
  const Morphism lambda = lambda_morphism(du.system, dv.system);
  const KappaMorphism kap = kappa_morphism(tau, du.system, dv.system);
  RelationReport r{Word(u.begin(), u.end()), Word(v.begin(), v.end()), kap.k, lambda, kap.kappa,
                   du.substitution, dv.substitution, {}, false};
  const Morphism& tu = du.substitution.morphism();
  const Morphism& tv = dv.substitution.morphism();
  const Morphism tu_k = power(du.substitution, kap.k).morphism();
  const Morphism tv_k = power(dv.substitution, kap.k).morphism();
  r.identities.push_back(check_identity("tau_v kappa = kappa tau_u", compose(tv, kap.kappa), compose(kap.kappa, tu)));
  r.identities.push_back(check_identity("tau_u lambda = lambda tau_v", compose(tu, lambda), compose(lambda, tv)));
  r.identities.push_back(check_identity("kappa lambda = tau_v^k", compose(kap.kappa, lambda), tv_k));
  r.identities.push_back(check_identity("lambda kappa = tau_u^k", compose(lambda, kap.kappa), tu_k));
  const IntMatrix mk = incidence_matrix(kap.kappa);
  const IntMatrix ml = incidence_matrix(lambda);
  r.matrix_consequences = mk * ml == matrix_power(dv.substitution.matrix(), kap.k) &&
                          ml * mk == matrix_power(du.substitution.matrix(), kap.k);
  return r;
}

/// Least n such that every τ^n(b) contains at least two occurrences of u.
inline unsigned two_occurrence_exponent(const Substitution& tau, WordView u, unsigned max_exponent = 64) {
  const std::size_t cap = prefix_cap();
  std::vector<Word> images = tau.images();
  for (unsigned n = 1; n <= max_exponent; ++n) {
    bool all = true;
    for (const Word& w : images) all = all && count_occurrences(u, w) >= 2;
    if (all) return n;
    for (auto& w : images) {
      w = tau.apply(w);
      if (w.size() > cap) throw ResourceLimit("two_occurrence_exponent: image exceeds prefix cap", cap);
    }
  }
  throw ResourceLimit("two_occurrence_exponent: no exponent found", max_exponent);
}

/// M_τ^l = M_Θ K_l + Q_l and M_{τ_u}^l = K_l M_Θ + P_l, with the residual bounds.
struct MatrixDecomposition {
  Word u;
  unsigned l = 0;
  unsigned n0 = 0;
  IntMatrix theta;  ///< M_{Θ_u}, indexed A x R_u
  IntMatrix k;      ///< K_l, indexed R_u x A
  IntMatrix q;      ///< Q_l, indexed A x A
  IntMatrix p;      ///< P_l, indexed R_u x R_u
  bool tau_identity = false;
  bool return_identity = false;
  /// Q_l agrees with the letter counts of the parts of τ^l(b) outside the return-word run.
  bool q_matches_split = false;
  /// P_l agrees with p_{c,b} computed from occurrence counts in τ^l(Θ_u(b))u.
  bool p_matches_counts = false;
  ReturnConstants constants;
  Rational q_bound;  ///< (H2 + 2)|u|
  Rational p_bound;  ///< 2(H2 + 1)H2|u|/H1
  std::int64_t q_max = 0;
  std::int64_t p_max = 0;
  bool q_within_bound = false;
  bool p_within_bound = false;

  bool passed() const {
    return tau_identity && return_identity && q_matches_split && p_matches_counts && q_within_bound && p_within_bound;
  }
};

/// Prefix lengths sampled for the empirical constants behind the residual bounds.
inline std::vector<std::size_t> default_constant_sample(std::size_t u_length) {
  std::vector<std::size_t> out;
  const std::size_t top = std::max<std::size_t>(2 * u_length, 16);
  for (std::size_t n = 1; n <= top; ++n) out.push_back(n);
  return out;
}

inline MatrixDecomposition matrix_decomposition(const Substitution& tau, WordView u, unsigned l,
                                                std::optional<ReturnConstants> constants = std::nullopt) {
  if (u.empty()) throw std::invalid_argument("matrix_decomposition: empty prefix");
  const unsigned n0 = two_occurrence_exponent(tau, u);
  if (l < n0) throw std::invalid_argument("matrix_decomposition: l must be at least n0 = " + std::to_string(n0));
  const ReturnData data = return_substitution(tau, u);
  const ReturnSystem& sys = data.system;
  const std::size_t na = tau.size();
  const std::size_t nr = sys.size();

  MatrixDecomposition d;
  d.u.assign(u.begin(), u.end());
  d.l = l;
  d.n0 = n0;
  d.theta = incidence_matrix(sys.coding());
  const Substitution tl = power(tau, l);

  // K(c, b) = occurrences of Θ(c)u in τ^l(b)u.
  d.k = IntMatrix(nr, na);
  std::vector<Word> patterns;
  for (Letter c = 0; c < nr; ++c) patterns.push_back(concat(sys.word(c), u));
  for (Letter b = 0; b < na; ++b) {
    const Word host = concat(tl.image(b), u);
    for (Letter c = 0; c < nr; ++c)
      d.k(c, b) = static_cast<std::int64_t>(count_occurrences(patterns[c], host));
  }

  const IntMatrix mt_l = matrix_power(tau.matrix(), l);
  d.q = mt_l - d.theta * d.k;
  d.tau_identity = incidence_matrix(tl.morphism()) == mt_l && mt_l == d.theta * d.k + d.q;
  const IntMatrix mu_l = matrix_power(data.substitution.matrix(), l);
  d.p = mu_l - d.k * d.theta;
  d.return_identity = incidence_matrix(power(data.substitution, l).morphism()) == mu_l && mu_l == d.k * d.theta + d.p;

  // Q through the split τ^l(b) = x w y, w the maximal run of return words after the first u.
  IntMatrix q_split(na, na);
  for (Letter b = 0; b < na; ++b) {
    const Word& img = tl.image(b);
    const Word host = concat(img, u);
    const auto occ = occurrences(u, host);
    std::size_t i = occ.front();
    std::size_t j = i;
    for (std::size_t t = 0; t + 1 < occ.size() && occ[t] == j; ++t) {
      Word piece(host.begin() + static_cast<std::ptrdiff_t>(occ[t]), host.begin() + static_cast<std::ptrdiff_t>(occ[t + 1]));
      if (!sys.letter_of(piece)) break;
      j = occ[t + 1];
    }
    for (std::size_t t = 0; t < i; ++t) q_split(img[t], b) += 1;
    for (std::size_t t = j; t < img.size(); ++t) q_split(img[t], b) += 1;
  }
  d.q_matches_split = q_split == d.q;

  // p_{c,b} = L_{Θ(c)u}(τ^l(Θ(b))u) - Σ_d K(c, d) L_d(Θ(b)).
  IntMatrix p_counts(nr, nr);
  for (Letter b = 0; b < nr; ++b) {
    const Word host = concat(tl.apply(sys.word(b)), u);
    for (Letter c = 0; c < nr; ++c) {
      std::int64_t v = static_cast<std::int64_t>(count_occurrences(patterns[c], host));
      for (Letter a = 0; a < na; ++a) v -= d.k(c, a) * static_cast<std::int64_t>(count_letter(a, sys.word(b)));
      p_counts(c, b) = v;
    }
  }
  d.p_matches_counts = p_counts == d.p;

  d.constants = constants ? *constants : estimate_constants(tau, default_constant_sample(u.size()));
  const Rational len(static_cast<long long>(u.size()));
  d.q_bound = (d.constants.h2 + 2) * len;
  d.p_bound = 2 * (d.constants.h2 + 1) * d.constants.h2 * len / d.constants.h1;
  d.q_within_bound = true;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      d.q_max = std::max(d.q_max, d.q(i, j));
      if (d.q(i, j) < 0 || !(Rational(d.q(i, j)) < d.q_bound)) d.q_within_bound = false;
    }
  d.p_within_bound = true;
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nr; ++j) {
      const std::int64_t a = d.p(i, j) < 0 ? -d.p(i, j) : d.p(i, j);
      d.p_max = std::max(d.p_max, a);
      if (Rational(a) > d.p_bound) d.p_within_bound = false;
    }
  return d;
}

/// τ and τ_u share their eigenvalues up to 0 and roots of unity.
inline bool eigenvalue_transfer_check(const Substitution& tau, WordView u) {
  return spectra_equal_mod_trivial(tau.matrix(), return_substitution(tau, u).substitution.matrix());
}

/// The four hypotheses under which a commuting γ exists.
struct SteponeHypotheses {
  bool images_start_with_start = false;
  bool return_substitution_identical = false;
  PeriodicityCheck periodicity;
  bool every_letter_in_every_return_word = false;
  std::size_t return_word_count = 0;
  /// First letter whose image does not begin with the start letter.
  std::optional<Letter> hyp1_counterexample;
  /// First (b, c) with b absent from Θ_u(c).
  std::optional<std::pair<Letter, Letter>> hyp4_counterexample;

  bool nonperiodic() const { return periodicity.nonperiodic(); }
  bool all() const {
    return images_start_with_start && return_substitution_identical && nonperiodic() &&
           every_letter_in_every_return_word;
  }
};

inline SteponeHypotheses check_stepone_hypotheses(const Substitution& tau, WordView u) {
  SteponeHypotheses h;
  h.images_start_with_start = true;
  for (Letter b = 0; b < tau.size(); ++b)
    if (tau.image(b).front() != tau.start()) {
      h.images_start_with_start = false;
      h.hyp1_counterexample = b;
      break;
    }
  h.periodicity = check_nonperiodic(tau);
  if (!tau.primitive()) return h;
  const ReturnData data = return_substitution(tau, u);
  h.return_word_count = data.system.size();
  h.return_substitution_identical = data.substitution == tau;
  h.every_letter_in_every_return_word = true;
  for (Letter c = 0; c < data.system.size() && h.every_letter_in_every_return_word; ++c)
    for (Letter b = 0; b < tau.size(); ++b)
      if (count_letter(b, data.system.word(c)) == 0) {
        h.every_letter_in_every_return_word = false;
        h.hyp4_counterexample = std::make_pair(b, c);
        break;
      }
  return h;
}

/// One admissible exponent p with its l_p and γ_p.
struct GammaCandidate {
  unsigned p = 0;
  unsigned l = 0;
  Morphism gamma;
  /// Θ_{w_l} equals Θ^l.
  bool coding_is_power = false;
};

/// Θ^{l_p} γ = γ Θ^{l_p} = τ^p for all p in the largest group of equal γ_p.
struct SteponeResult {
  SteponeHypotheses hypotheses;
  unsigned p_max = 0;
  unsigned k0 = 0;
  std::vector<GammaCandidate> candidates;
  /// The exponents of the chosen group I, increasing.
  std::vector<unsigned> group;
  std::vector<unsigned> l_values;
  std::optional<Morphism> gamma;
  bool commutation_verified = false;
  /// τ^{q-p} = Θ^{l_q - l_p} for every p < q in the group.
  bool difference_identity = false;
  std::size_t max_gamma_image = 0;

  bool found() const { return gamma.has_value(); }
  std::string summary() const {
    if (!hypotheses.all()) return "hypotheses not satisfied";
    if (!gamma) return "inconclusive <= " + std::to_string(p_max);
    return "gamma found for " + std::to_string(group.size()) + " exponents";
  }
};

/// Searches p in (k0, p_max] for equal morphisms γ_p with Θ_{w_{l_p}} γ_p = τ^p.
inline SteponeResult find_gamma(const Substitution& tau, WordView u, unsigned p_max = 10) {
  SteponeResult r;
  r.p_max = p_max;
  r.hypotheses = check_stepone_hypotheses(tau, u);
  if (!r.hypotheses.all()) return r;

  const ReturnData data = return_substitution(tau, u);
  const Substitution theta(data.system.coding(), tau.start());
  const std::size_t cap = prefix_cap();

  // k0: u is a prefix of every τ^k0(b).
  {
    std::vector<Word> images = tau.images();
    unsigned k = 1;
    for (;; ++k) {
      bool all = true;
      for (const Word& w : images) all = all && is_prefix(u, w);
      if (all) break;
      if (k >= p_max) {
        r.k0 = k + 1;
        return r;
      }
      for (auto& w : images) {
        w = tau.apply(w);
        if (w.size() > cap) throw ResourceLimit("find_gamma: image exceeds prefix cap", cap);
      }
    }
    r.k0 = k;
  }

  std::vector<Word> w_seq{Word(u.begin(), u.end())};  // w_1, w_2, ...
  std::vector<Morphism> theta_pow{Morphism::identity(tau.size()), theta.morphism()};
  auto theta_power = [&](unsigned l) -> const Morphism& {
    while (theta_pow.size() <= l) theta_pow.push_back(compose(theta.morphism(), theta_pow.back()));
    return theta_pow[l];
  };

  for (unsigned p = r.k0 + 1; p <= p_max; ++p) {
    const Substitution tp = power(tau, p);
    const Word prev = power(tau, p - 1).image(tau.start());
    while (is_prefix(w_seq.back(), prev)) {
      w_seq.push_back(concat(theta.apply(w_seq.back()), u));
      if (w_seq.back().size() > cap) throw ResourceLimit("find_gamma: w_n exceeds prefix cap", cap);
    }
    const unsigned l = static_cast<unsigned>(w_seq.size() - 1);
    if (l == 0) continue;
    const ReturnData dw = return_substitution(tau, w_seq[l - 1]);
    GammaCandidate cand{p, l, Morphism(), dw.system.coding() == theta_power(l)};
    std::vector<Word> images;
    bool ok = true;
    for (Letter b = 0; b < tau.size() && ok; ++b) {
      auto d = dw.system.try_decompose(tp.image(b));
      if (!d || d->empty()) ok = false;
      if (ok) images.push_back(std::move(*d));
    }
    if (!ok) continue;
    cand.gamma = Morphism(dw.system.size(), std::move(images));
    r.candidates.push_back(std::move(cand));
  }

  // Largest group of equal γ_p, earliest p on ties.
  std::size_t best_start = 0, best_size = 0;
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    std::size_t size = 0;
    bool earlier = false;
    for (std::size_t j = 0; j < r.candidates.size(); ++j)
      if (r.candidates[j].gamma == r.candidates[i].gamma) {
        ++size;
        if (j < i) earlier = true;
      }
    if (!earlier && size > best_size) {
      best_size = size;
      best_start = i;
    }
  }
  if (best_size < 2) return r;

  const Morphism gamma = r.candidates[best_start].gamma;
  r.gamma = gamma;
  r.commutation_verified = true;
  r.difference_identity = true;
  for (const auto& c : r.candidates) {
    if (!(c.gamma == gamma)) continue;
    r.group.push_back(c.p);
    r.l_values.push_back(c.l);
    const Morphism& tl = theta_power(c.l);
    const Morphism tp = power(tau, c.p).morphism();
    if (!(c.coding_is_power && compose(tl, gamma) == tp && compose(gamma, tl) == tp)) r.commutation_verified = false;
  }
  for (std::size_t i = 0; i < r.group.size(); ++i)
    for (std::size_t j = i + 1; j < r.group.size(); ++j) {
      if (r.l_values[j] <= r.l_values[i]) {
        r.difference_identity = false;
        continue;
      }
      if (!(power(tau, r.group[j] - r.group[i]).morphism() == theta_power(r.l_values[j] - r.l_values[i])))
        r.difference_identity = false;
    }
  r.max_gamma_image = gamma.max_image_length();
  return r;
}

/// Length of the prefix comparison used to accept that two substitutions share a fixed point.
inline std::size_t fixed_point_gate_length(const Substitution& tau, const Substitution& sigma) {
  return std::max<std::size_t>(10000, 20 * std::max(tau.morphism().max_image_length(), sigma.morphism().max_image_length()));
}

/// Throws invalid_argument naming the first differing index when the prefixes disagree.
inline std::size_t require_same_fixed_point(const Substitution& tau, const Substitution& sigma) {
  const std::size_t n = fixed_point_gate_length(tau, sigma);
  const Word a = fixed_point_prefix(tau, n);
  const Word b = fixed_point_prefix(sigma, n);
  if (a != b) {
    const auto diff = std::mismatch(a.begin(), a.end(), b.begin()).first - a.begin();
    throw std::invalid_argument("fixed points differ at index " + std::to_string(diff));
  }
  return n;
}

struct PowerCoincidence {
  std::optional<std::pair<unsigned, unsigned>> pair;
  unsigned bound = 0;
  std::size_t gate_length = 0;

  std::string summary() const {
    if (pair) return "(i, j) = (" + std::to_string(pair->first) + ", " + std::to_string(pair->second) + ")";
    return "no pair <= " + std::to_string(bound);
  }
};

/// Least (i, j), ordered by i then j, with M_τ^i and M_σ^j sharing eigenvalues up to 0 and roots of unity.
inline PowerCoincidence power_coincidence(const Substitution& tau, const Substitution& sigma, unsigned bound = 12) {
  if (!tau.primitive() || !sigma.primitive())
    throw std::invalid_argument("power_coincidence: substitutions must be primitive");
  PowerCoincidence out;
  out.bound = bound;
  out.gate_length = require_same_fixed_point(tau, sigma);
  std::vector<IntPolynomial> right;
  for (unsigned j = 1; j <= bound; ++j) right.push_back(nontrivial_root_set(char_poly(matrix_power(sigma.matrix(), j))));
  for (unsigned i = 1; i <= bound; ++i) {
    const IntPolynomial left = nontrivial_root_set(char_poly(matrix_power(tau.matrix(), i)));
    for (unsigned j = 1; j <= bound; ++j)
      if (left == right[j - 1]) {
        out.pair = std::make_pair(i, j);
        return out;
      }
  }
  return out;
}

/// Prefix u of the common fixed point and (i, j) with τ_u^i = σ_u^j.
struct SharedWitness {
  Word u;
  std::size_t level = 0;  ///< 1-based position of u in the derivation tower
  unsigned i = 0;
  unsigned j = 0;
  Substitution tau_u;
  Substitution sigma_u;
};

struct SharedAnalysis {
  std::optional<SharedWitness> witness;
  unsigned budget = 0;
  std::size_t depth = 0;
  std::size_t levels_examined = 0;
  std::size_t gate_length = 0;
  PeriodicityCheck periodicity;

  std::string summary() const {
    if (witness)
      return "u of length " + std::to_string(witness->u.size()) + ", (i, j) = (" + std::to_string(witness->i) +
             ", " + std::to_string(witness->j) + ")";
    return "no witness with i, j <= " + std::to_string(budget) + " on " + std::to_string(levels_examined) +
           " tower levels";
  }
};

/// Walks the derivation tower of the common fixed point and searches τ_u^i = σ_u^j, i, j <= budget.
inline SharedAnalysis shared_fixed_point_analysis(const Substitution& tau, const Substitution& sigma,
                                                  unsigned budget = 6, std::size_t depth = 8) {
  if (!tau.primitive() || !sigma.primitive())
    throw std::invalid_argument("shared_fixed_point_analysis: substitutions must be primitive");
  SharedAnalysis out;
  out.budget = budget;
  out.depth = depth;
  out.gate_length = require_same_fixed_point(tau, sigma);
  out.periodicity = check_nonperiodic(tau);
  Word u{tau.start()};
  for (std::size_t level = 1; level <= depth; ++level) {
    const ReturnData dt = return_substitution(tau, u);
    const ReturnData ds = return_substitution(sigma, u);
    out.levels_examined = level;
    if (dt.system.words() != ds.system.words())
      throw std::logic_error("return words on a common prefix differ between the two substitutions");
    std::vector<std::optional<Substitution>> sp(budget + 1);
    for (unsigned i = 1; i <= budget; ++i) {
      std::optional<Substitution> ti;
      try {
        ti = power(dt.substitution, i);
      } catch (const ResourceLimit&) {
        break;
      }
      for (unsigned j = 1; j <= budget; ++j) {
        if (!sp[j]) {
          try {
            sp[j] = power(ds.substitution, j);
          } catch (const ResourceLimit&) {
            break;
          }
        }
        if (*ti == *sp[j]) {
          out.witness = SharedWitness{u, level, i, j, dt.substitution, ds.substitution};
          return out;
        }
      }
    }
    u = concat(dt.system.word(0), u);
  }
  return out;
}

}  // namespace cobham
