#pragma once

// Interpretations of factors, bounded synchronization-delay search and
// injectivity of τ on concatenations of return words.

#include <algorithm>
#include <map>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cobham/returns.hpp"
#include "cobham/substitution.hpp"
#include "cobham/words.hpp"

namespace cobham {

/// x = u τ(w) v, u a proper suffix and v a proper prefix of letter images.
struct Interpretation {
  Word u;
  Word w;
  Word v;
  friend bool operator==(const Interpretation&, const Interpretation&) = default;
};

/// Distinct factors of a host word, of every length up to a bound.
class FactorIndex {
 public:
  FactorIndex(WordView host, std::size_t max_length) : max_length_(max_length) {
    for (std::size_t i = 0; i < host.size(); ++i)
      for (std::size_t n = 1; n <= max_length && i + n <= host.size(); ++n)
        factors_.emplace(host.begin() + static_cast<std::ptrdiff_t>(i), host.begin() + static_cast<std::ptrdiff_t>(i + n));
  }

  std::size_t max_length() const noexcept { return max_length_; }
  bool contains(const Word& w) const { return w.empty() || factors_.count(w) > 0; }

  /// Factors of exactly length n, sorted.
  std::vector<Word> of_length(std::size_t n) const {
    std::vector<Word> out;
    for (const auto& w : factors_)
      if (w.size() == n) out.push_back(w);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::size_t max_length_;
  std::unordered_set<Word, WordHash> factors_;
};

namespace detail {

inline bool is_proper_suffix_of_image(const Substitution& tau, WordView s) {
  if (s.empty()) return true;
  for (const Word& img : tau.images())
    if (s.size() < img.size() && std::equal(s.begin(), s.end(), img.end() - static_cast<std::ptrdiff_t>(s.size())))
      return true;
  return false;
}

inline bool is_proper_prefix_of_image(const Substitution& tau, WordView s) {
  if (s.empty()) return true;
  for (const Word& img : tau.images())
    if (s.size() < img.size() && std::equal(s.begin(), s.end(), img.begin())) return true;
  return false;
}

inline void extend_interpretations(const Substitution& tau, WordView x, const FactorIndex& factors,
                                   std::size_t pos, Word& u, Word& w, std::vector<Interpretation>& out) {
  if (is_proper_prefix_of_image(tau, x.subspan(pos)) && factors.contains(w))
    out.push_back({u, w, Word(x.begin() + static_cast<std::ptrdiff_t>(pos), x.end())});
  for (Letter b = 0; b < tau.size(); ++b) {
    const Word& img = tau.image(b);
    if (pos + img.size() > x.size() || !std::equal(img.begin(), img.end(), x.begin() + static_cast<std::ptrdiff_t>(pos)))
      continue;
    w.push_back(b);
    if (factors.contains(w)) extend_interpretations(tau, x, factors, pos + img.size(), u, w, out);
    w.pop_back();
  }
}

}  // namespace detail

/// Every interpretation of x whose core w is a factor known to `factors`.
inline std::vector<Interpretation> interpretations(const Substitution& tau, WordView x, const FactorIndex& factors) {
  std::vector<Interpretation> out;
  for (std::size_t s = 0; s <= x.size(); ++s) {
    Word u(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(s));
    if (!detail::is_proper_suffix_of_image(tau, u)) continue;
    Word w;
    detail::extend_interpretations(tau, x, factors, s, u, w, out);
  }
  return out;
}

/// Interpretations of a factor x of the fixed point, cores taken from a prefix of the given length.
inline std::vector<Interpretation> interpretations(const Substitution& tau, WordView x, std::size_t search_prefix_len) {
  if (x.empty()) throw std::invalid_argument("interpretations: empty factor");
  const Word prefix = fixed_point_prefix(tau, search_prefix_len);
  if (occurrences(x, prefix).empty())
    throw std::invalid_argument("interpretations: x does not occur in the generated prefix");
  return interpretations(tau, x, FactorIndex(prefix, x.size()));
}

/// Cut positions (in x) of an interpretation, paired with the letter at each cut.
inline std::vector<std::pair<std::size_t, Letter>> interpretation_cuts(const Substitution& tau, const Interpretation& in) {
  std::vector<std::pair<std::size_t, Letter>> cuts;
  std::size_t pos = in.u.size();
  for (Letter b : in.w) {
    cuts.emplace_back(pos, b);
    pos += tau.image(b).size();
  }
  return cuts;
}

struct SyncDelayReport {
  /// Least delay consistent with every sampled pair, if it is <= d_max.
  std::optional<std::size_t> delay;
  /// Least delay consistent with the sample, whether or not it exceeds d_max.
  std::size_t observed = 0;
  std::size_t d_max = 0;
  std::size_t sample_length = 0;
  std::size_t prefix_length = 0;
  std::size_t factors_checked = 0;
  std::size_t pairs_checked = 0;
  /// Factor and cut position behind `observed`.
  std::optional<std::pair<Word, std::size_t>> worst_cut;

  std::string summary() const {
    if (delay) return "delay " + std::to_string(*delay) + " certified on the sample only";
    return "no delay <= " + std::to_string(d_max) + " on the sample (observed " + std::to_string(observed) + ")";
  }
};

/// Searches the least D such that all sampled pairs of interpretations synchronize at
/// cuts with more than D letters on both sides. Cuts at the first and last letter of
/// the core are included.
inline SyncDelayReport sync_delay_search(const Substitution& tau, std::size_t d_max, std::size_t sample_len) {
  if (!tau.primitive()) throw std::invalid_argument("sync_delay_search: substitution is not primitive");
  if (sample_len == 0) throw std::invalid_argument("sync_delay_search: sample length must be positive");
  SyncDelayReport r;
  r.d_max = d_max;
  r.sample_length = sample_len;
  r.prefix_length = std::max<std::size_t>(50 * sample_len, 1000);
  const Word prefix = fixed_point_prefix(tau, r.prefix_length);
  const FactorIndex factors(prefix, sample_len);

  for (std::size_t n = 1; n <= sample_len; ++n) {
    for (const Word& x : factors.of_length(n)) {
      ++r.factors_checked;
      const auto interps = interpretations(tau, x, factors);
      for (std::size_t a = 0; a < interps.size(); ++a) {
        const auto cuts_a = interpretation_cuts(tau, interps[a]);
        for (std::size_t b = 0; b < interps.size(); ++b) {
          if (a == b) continue;
          ++r.pairs_checked;
          const auto cuts_b = interpretation_cuts(tau, interps[b]);
          for (const auto& [pos, letter] : cuts_a) {
            const bool synced = std::any_of(cuts_b.begin(), cuts_b.end(), [&](const auto& c) {
              return c.first == pos && c.second == letter;
            });
            if (synced) continue;
            const std::size_t left = pos;
            const std::size_t right = x.size() - pos - tau.image(letter).size();
            const std::size_t need = std::min(left, right);
            if (!r.worst_cut || need > r.observed) {
              r.observed = need;
              r.worst_cut = std::make_pair(x, pos);
            }
          }
        }
      }
    }
  }
  if (r.observed <= d_max) r.delay = r.observed;
  return r;
}

struct InjectivityCertificate {
  Word u;
  std::size_t max_length = 0;
  std::size_t prefix_length = 0;
  /// Distinct words compared.
  std::size_t checked = 0;
  bool passed = false;
  /// Two distinct words with the same image, when the check fails.
  std::optional<std::pair<Word, Word>> collision;
};

namespace detail {

inline InjectivityCertificate injectivity_over(const Morphism& m, const std::vector<Word>& words) {
  InjectivityCertificate c;
  c.passed = true;
  std::unordered_map<Word, const Word*, WordHash> seen;
  for (const Word& w : words) {
    ++c.checked;
    auto [it, inserted] = seen.emplace(m.apply(w), &w);
    if (!inserted && *it->second != w) {
      c.passed = false;
      c.collision = std::make_pair(*it->second, w);
      return c;
    }
  }
  return c;
}

inline std::size_t injectivity_prefix_length(std::size_t max_length) {
  return std::max<std::size_t>(10000, 100 * max_length);
}

}  // namespace detail

namespace detail {

/// Sorted factors of length 1..max_length of a prefix of the fixed point.
inline std::vector<Word> sampled_factors(const Substitution& s, std::size_t prefix_length, std::size_t max_length) {
  std::vector<Word> out;
  if (max_length == 0 || s.image(s.start()).size() < 2) return out;
  const FactorIndex factors(fixed_point_prefix(s, prefix_length), max_length);
  for (std::size_t len = 1; len <= max_length; ++len)
    for (Word& f : factors.of_length(len)) out.push_back(std::move(f));
  return out;
}

inline InjectivityCertificate concatenation_injectivity(const Substitution& tau, const ReturnSystem& sys,
                                                        const std::vector<Word>& factors) {
  std::vector<Word> words;
  for (const Word& f : factors)
    if (sys.try_decompose(f)) words.push_back(f);
  return injectivity_over(tau.morphism(), words);
}

}  // namespace detail

/// τ one to one on the factors of X of length <= L that are concatenations of return words on u.
inline InjectivityCertificate check_injectivity(const Substitution& tau, WordView u, std::size_t max_length) {
  const ReturnData data = return_substitution(tau, u);
  const std::size_t n = detail::injectivity_prefix_length(max_length);
  InjectivityCertificate c =
      detail::concatenation_injectivity(tau, data.system, detail::sampled_factors(tau, n, max_length));
  c.u.assign(u.begin(), u.end());
  c.max_length = max_length;
  c.prefix_length = n;
  return c;
}

/// τ_u one to one on the factors of length <= L of its own fixed point D_u(X).
inline InjectivityCertificate check_return_injectivity(const Substitution& tau, WordView u, std::size_t max_length) {
  const ReturnData data = return_substitution(tau, u);
  const std::size_t n = detail::injectivity_prefix_length(max_length);
  InjectivityCertificate c =
      detail::injectivity_over(data.substitution.morphism(), detail::sampled_factors(data.substitution, n, max_length));
  c.u.assign(u.begin(), u.end());
  c.max_length = max_length;
  c.prefix_length = n;
  return c;
}

struct N0Report {
  std::optional<std::size_t> n0;
  std::size_t max_length = 0;
  std::size_t max_prefix = 0;
  /// Prefix lengths at which one of the two checks failed, increasing.
  std::vector<std::size_t> failing_lengths;

  std::string summary() const {
    if (n0) return "n0 = " + std::to_string(*n0) + " (checked up to prefix length " + std::to_string(max_prefix) + ")";
    return "no n0 <= " + std::to_string(max_prefix);
  }
};

/// Least n such that for every prefix length in [n, max_prefix] both τ on
/// concatenations of return words and τ_u on its language are one to one.
inline N0Report find_n0(const Substitution& tau, std::size_t max_length, std::size_t max_prefix) {
  N0Report r;
  r.max_length = max_length;
  r.max_prefix = max_prefix;
  if (max_prefix == 0) return r;
  const Word x = fixed_point_prefix(tau, max_prefix);
  const std::size_t sample = detail::injectivity_prefix_length(max_length);
  const std::vector<Word> factors = detail::sampled_factors(tau, sample, max_length);
  // Return substitutions repeat along the prefixes; the τ_u check depends on τ_u alone.
  std::map<std::vector<Word>, bool> return_checks;
  for (std::size_t n = 1; n <= max_prefix; ++n) {
    const ReturnData data = return_substitution(tau, WordView(x.data(), n));
    auto it = return_checks.find(data.substitution.images());
    if (it == return_checks.end()) {
      const bool passed = detail::injectivity_over(data.substitution.morphism(),
                                                   detail::sampled_factors(data.substitution, sample, max_length))
                              .passed;
      it = return_checks.emplace(data.substitution.images(), passed).first;
    }
    const bool ok = it->second && detail::concatenation_injectivity(tau, data.system, factors).passed;
    if (!ok) r.failing_lengths.push_back(n);
  }
  r.n0 = r.failing_lengths.empty() ? 1 : r.failing_lengths.back() + 1;
  if (*r.n0 > max_prefix) r.n0.reset();
  return r;
}

}  // namespace cobham
