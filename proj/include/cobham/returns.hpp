#pragma once

// Return words on prefixes, the coding Θ_u, derived sequences, return
// substitutions and derivation towers.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cobham/errors.hpp"
#include "cobham/polynomial.hpp"
#include "cobham/substitution.hpp"
#include "cobham/words.hpp"

namespace cobham {

/// Pieces of w·u cut at the occurrences of u that start at positions <= |w|.
///
/// Requires u to be a prefix of w·u. Piece k is [cuts[k], cuts[k+1]) in w, and
/// the cuts always end with |w|. The empty word yields no pieces.
inline std::vector<std::size_t> return_cuts(WordView w, WordView u) {
  const Word wu = concat(w, u);
  if (!is_prefix(u, wu)) throw std::invalid_argument("return_cuts: u is not a prefix of w·u");
  std::vector<std::size_t> cuts;
  for (std::size_t p : occurrences(u, wu))
    if (p <= w.size()) cuts.push_back(p);
  return cuts;
}

/// Return words on a prefix u, numbered by first appearance, with Θ_u.
class ReturnSystem {
 public:
  ReturnSystem() = default;

  ReturnSystem(Word prefix, std::vector<Word> words, std::size_t host_alphabet, bool complete)
      : prefix_(std::move(prefix)), words_(std::move(words)), host_size_(host_alphabet), complete_(complete) {
    if (prefix_.empty()) throw std::invalid_argument("return words need a non-empty prefix");
    for (std::size_t b = 0; b < words_.size(); ++b)
      if (!index_.emplace(words_[b], static_cast<Letter>(b)).second)
        throw std::invalid_argument("duplicate return word");
  }

  const Word& prefix() const noexcept { return prefix_; }
  const std::vector<Word>& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }
  std::size_t host_alphabet_size() const noexcept { return host_size_; }
  /// False for systems read off a finite prefix, which may miss return words.
  bool complete() const noexcept { return complete_; }

  const Word& word(Letter b) const { return words_.at(b); }

  std::optional<Letter> letter_of(const Word& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Θ_u as a morphism R_u -> A*.
  Morphism coding() const { return Morphism(host_size_, words_); }

  Word encode(WordView letters) const {
    Word out;
    for (Letter b : letters) {
      const Word& w = words_.at(b);
      out.insert(out.end(), w.begin(), w.end());
    }
    return out;
  }

  /// The unique word over R_u whose Θ_u-image is w.
  Word decompose(WordView w) const {
    Word out;
    if (w.empty()) return out;
    if (!is_prefix(prefix_, concat(w, prefix_)))
      throw DecompositionError("word does not start with the prefix u", 0);
    const auto cuts = return_cuts(w, prefix_);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      Word piece(w.begin() + static_cast<std::ptrdiff_t>(cuts[k]), w.begin() + static_cast<std::ptrdiff_t>(cuts[k + 1]));
      auto b = letter_of(piece);
      if (!b) throw DecompositionError("factor is not a return word", cuts[k]);
      out.push_back(*b);
    }
    return out;
  }

  /// Decomposition that reports failure as nullopt.
  std::optional<Word> try_decompose(WordView w) const {
    try {
      return decompose(w);
    } catch (const DecompositionError&) {
      return std::nullopt;
    }
  }

 private:
  Word prefix_;
  std::vector<Word> words_;
  std::size_t host_size_ = 0;
  bool complete_ = false;
  std::unordered_map<Word, Letter, WordHash> index_;
};

/// Return words on u observed between successive occurrences of u in host.
inline ReturnSystem return_words_of_prefix(WordView host, WordView u, std::size_t alphabet_size = 0) {
  if (u.empty()) throw std::invalid_argument("return_words_of_prefix: empty prefix");
  if (!is_prefix(u, host)) throw std::invalid_argument("return_words_of_prefix: u is not a prefix of the host");
  if (alphabet_size == 0)
    for (Letter a : host) alphabet_size = std::max<std::size_t>(alphabet_size, a + 1);
  const auto occ = occurrences(u, host);
  std::vector<Word> words;
  std::unordered_map<Word, Letter, WordHash> seen;
  for (std::size_t k = 0; k + 1 < occ.size(); ++k) {
    Word w(host.begin() + static_cast<std::ptrdiff_t>(occ[k]), host.begin() + static_cast<std::ptrdiff_t>(occ[k + 1]));
    if (seen.emplace(w, static_cast<Letter>(words.size())).second) words.push_back(std::move(w));
  }
  return ReturnSystem(Word(u.begin(), u.end()), std::move(words), alphabet_size, false);
}

/// A complete return system and the return substitution τ_u, Θ_u τ_u = τ Θ_u.
struct ReturnData {
  ReturnSystem system;
  Substitution substitution;
};

namespace detail {

/// First return word on u: X[0, second occurrence of u), from a doubling prefix.
inline Word first_return_word(const Substitution& tau, WordView u) {
  FixedPointPrefix fp(tau);
  const std::size_t cap = prefix_cap();
  std::size_t len = std::max<std::size_t>(64, 4 * u.size());
  if (u.size() > cap) throw ResourceLimit("prefix u is longer than the prefix cap", cap);
  for (;;) {
    len = std::min(len, cap);
    const Word& buf = fp.extend(len);
    const WordView view(buf.data(), len);
    if (!is_prefix(u, view)) throw std::invalid_argument("u is not a prefix of the fixed point");
    const auto occ = occurrences(u, view);
    if (occ.size() >= 2) return Word(view.begin(), view.begin() + static_cast<std::ptrdiff_t>(occ[1]));
    if (len >= cap) throw ResourceLimit("no second occurrence of u within the prefix cap", cap);
    len *= 2;
  }
}

}  // namespace detail

/// Complete set of return words on u and the return substitution τ_u.
///
/// Starting from the first return word, each known return word w is mapped
/// through τ and τ(w)·u is cut at the occurrences of u; new pieces are return
/// words. Letters are then renumbered by first appearance in D_u(X).
inline ReturnData return_substitution(const Substitution& tau, WordView u) {
  if (u.empty()) throw std::invalid_argument("return_substitution: empty prefix");
  if (!tau.primitive()) throw std::invalid_argument("return_substitution: substitution is not primitive");
  const std::size_t cap = prefix_cap();

  std::vector<Word> words{detail::first_return_word(tau, u)};
  std::unordered_map<Word, Letter, WordHash> index{{words[0], 0}};
  std::vector<Word> images;
  for (std::size_t b = 0; b < words.size(); ++b) {
    const Word image = tau.apply(words[b]);
    if (image.size() > cap) throw ResourceLimit("return word image exceeds the prefix cap", cap);
    const auto cuts = return_cuts(image, u);
    Word letters;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      Word piece(image.begin() + static_cast<std::ptrdiff_t>(cuts[k]),
                 image.begin() + static_cast<std::ptrdiff_t>(cuts[k + 1]));
      auto [it, inserted] = index.emplace(piece, static_cast<Letter>(words.size()));
      if (inserted) words.push_back(std::move(piece));
      letters.push_back(it->second);
    }
    if (letters.empty()) throw std::logic_error("return_substitution: image of a return word is empty");
    images.push_back(std::move(letters));
  }

  const Substitution discovered(Morphism(words.size(), std::move(images)), 0);
  const std::vector<Letter> order = first_appearance_order(discovered);
  std::vector<Word> ordered;
  ordered.reserve(words.size());
  for (Letter old : order) ordered.push_back(words[old]);
  return ReturnData{ReturnSystem(Word(u.begin(), u.end()), std::move(ordered), tau.size(), true),
                    rename(discovered, order)};
}

struct DerivedPrefix {
  ReturnData data;
  /// D_u(X)[0 .. n-1].
  Word letters;
};

/// First n letters of D_u(X), read off a prefix of X by cutting at occurrences of u.
inline DerivedPrefix derived_prefix(const Substitution& tau, WordView u, std::size_t n) {
  DerivedPrefix out{return_substitution(tau, u), {}};
  if (n == 0) return out;
  FixedPointPrefix fp(tau);
  const std::size_t cap = prefix_cap();
  std::size_t len = std::max<std::size_t>(64, 2 * (n + 1) * u.size());
  for (;;) {
    len = std::min(len, cap);
    const Word& buf = fp.extend(len);
    const WordView view(buf.data(), len);
    const auto occ = occurrences(u, view);
    if (occ.size() > n) {
      for (std::size_t k = 0; k < n; ++k) {
        Word piece(view.begin() + static_cast<std::ptrdiff_t>(occ[k]),
                   view.begin() + static_cast<std::ptrdiff_t>(occ[k + 1]));
        auto b = out.data.system.letter_of(piece);
        if (!b) throw std::logic_error("derived_prefix: return word missing from the closure");
        out.letters.push_back(*b);
      }
      return out;
    }
    if (len >= cap) throw ResourceLimit("derived prefix needs a longer fixed-point prefix", cap);
    len *= 2;
  }
}

/// Check of Θ_u Θ_{D_u(X),v} = Θ_{X,w} and D_v(D_u(X)) = D_w(X), w = Θ_u(v)u.
struct NestedDerivationReport {
  Word w;
  std::size_t check_length = 0;
  bool precondition = false;
  bool w_is_prefix = false;
  bool coding_identity = false;
  bool derived_identity = false;
  std::string failure;

  bool passed() const noexcept { return precondition && w_is_prefix && coding_identity && derived_identity; }
};

inline NestedDerivationReport nested_derivation(const Substitution& tau, WordView u, WordView v,
                                                std::size_t check_length = 10000) {
  NestedDerivationReport r;
  r.check_length = check_length;
  if (v.empty()) {
    r.failure = "v must be non-empty";
    return r;
  }
  const ReturnData outer = return_substitution(tau, u);
  const Substitution& tau_u = outer.substitution;
  for (Letter b : v)
    if (b >= outer.system.size()) {
      r.failure = "v uses a letter outside R_u";
      return r;
    }
  if (!is_prefix(v, fixed_point_prefix(tau_u, v.size()))) {
    r.failure = "v is not a prefix of D_u(X)";
    return r;
  }
  r.precondition = true;
  r.w = concat(outer.system.encode(v), u);
  r.w_is_prefix = is_prefix(r.w, fixed_point_prefix(tau, r.w.size()));
  if (!r.w_is_prefix) {
    r.failure = "w is not a prefix of X";
    return r;
  }

  const ReturnData inner = return_substitution(tau_u, v);
  const ReturnData direct = return_substitution(tau, r.w);
  r.coding_identity = compose(outer.system.coding(), inner.system.coding()) == direct.system.coding();
  if (!r.coding_identity) r.failure = "Θ_u Θ_v differs from Θ_w";

  if (check_length > 0) {
    const bool grows = inner.substitution.image(0).size() >= 2 && direct.substitution.image(0).size() >= 2;
    r.derived_identity = grows && fixed_point_prefix(inner.substitution, check_length) ==
                                      fixed_point_prefix(direct.substitution, check_length);
  } else {
    r.derived_identity = true;
  }
  if (!r.derived_identity && r.failure.empty()) r.failure = "D_v(D_u(X)) differs from D_w(X)";
  return r;
}

struct TowerLevel {
  Word prefix;
  ReturnData data;
};

struct TowerReport {
  std::vector<TowerLevel> levels;
  /// First (p, q), p < q, 1-based, with equal return substitutions.
  std::optional<std::pair<std::size_t, std::size_t>> repetition;
  std::size_t depth = 0;
  PeriodicityCheck periodicity;
};

/// u^(1) = first letter, u^(n+1) = Θ_{u^(n)}(1) u^(n); stops at the first repetition.
inline TowerReport derivation_tower(const Substitution& tau, std::size_t depth) {
  if (depth == 0) throw std::invalid_argument("derivation_tower: depth must be positive");
  TowerReport r;
  r.depth = depth;
  r.periodicity = check_nonperiodic(tau);
  Word u{tau.start()};
  for (std::size_t level = 1; level <= depth; ++level) {
    ReturnData data = return_substitution(tau, u);
    for (std::size_t p = 0; p < r.levels.size(); ++p)
      if (r.levels[p].data.substitution == data.substitution) {
        r.repetition = std::make_pair(p + 1, level);
        break;
      }
    Word next = concat(data.system.word(0), u);
    r.levels.push_back({std::move(u), std::move(data)});
    if (r.repetition) break;
    u = std::move(next);
  }
  return r;
}

/// Empirical bounds H1|u| <= |v| <= H2|u| and Card(R_u) <= H3.
struct ReturnConstants {
  Rational h1;
  Rational h2;
  std::size_t h3 = 0;
  std::vector<std::size_t> lengths;
};

inline ReturnConstants estimate_constants(const Substitution& tau, const std::vector<std::size_t>& lengths) {
  if (lengths.empty()) throw std::invalid_argument("estimate_constants: no prefix lengths");
  ReturnConstants c;
  c.lengths = lengths;
  const std::size_t longest = *std::max_element(lengths.begin(), lengths.end());
  const Word x = fixed_point_prefix(tau, longest);
  bool first = true;
  for (std::size_t n : lengths) {
    if (n == 0) throw std::invalid_argument("estimate_constants: prefix length must be positive");
    const Word u(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
    const ReturnData data = return_substitution(tau, u);
    c.h3 = std::max(c.h3, data.system.size());
    for (const Word& v : data.system.words()) {
      const Rational ratio(static_cast<long long>(v.size()), static_cast<long long>(n));
      if (first || ratio < c.h1) c.h1 = ratio;
      if (first || ratio > c.h2) c.h2 = ratio;
      first = false;
    }
  }
  return c;
}

/// m_n: length of the shortest return word on the prefix of length n.
inline std::size_t min_return_length(const Substitution& tau, std::size_t n) {
  if (n == 0) throw std::invalid_argument("min_return_length: prefix length must be positive");
  const ReturnData data = return_substitution(tau, fixed_point_prefix(tau, n));
  std::size_t m = data.system.word(0).size();
  for (const Word& v : data.system.words()) m = std::min(m, v.size());
  return m;
}

}  // namespace cobham
