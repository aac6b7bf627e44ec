#pragma once

// Letters, words and occurrence combinatorics over finite prefixes.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cobham {

/// Dense letter index into an Alphabet.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;
using WordView = std::span<const Letter>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (Letter a : w) {
      h ^= a + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h ^ w.size());
  }
};

/// Ordered table of distinct display names; letter i is symbols()[i].
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw std::invalid_argument("alphabet must be non-empty");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].empty()) throw std::invalid_argument("empty letter name");
      if (!index_.emplace(symbols_[i], static_cast<Letter>(i)).second)
        throw std::invalid_argument("duplicate letter '" + symbols_[i] + "'");
    }
  }

  /// Alphabet {1, ..., n}, used for return-word alphabets.
  static Alphabet numbered(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
    return Alphabet(std::move(names));
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::string& symbol(Letter a) const { return symbols_.at(a); }

  std::optional<Letter> index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool single_character() const {
    return std::all_of(symbols_.begin(), symbols_.end(),
                       [](const std::string& s) { return s.size() == 1; });
  }

  /// Concatenated names when every name is one character, space separated otherwise.
  std::string format(WordView w) const {
    std::string out;
    const bool compact = single_character();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!compact && i) out += ' ';
      out += symbol(w[i]);
    }
    return out;
  }

  /// Inverse of format(). Whitespace-separated names, or one letter per
  /// character when the text has no whitespace and every name is one character.
  Word parse(std::string_view text) const {
    Word w;
    const bool has_space = text.find_first_of(" \t") != std::string_view::npos;
    if (!has_space && single_character()) {
      for (char ch : text) w.push_back(lookup(std::string_view(&ch, 1)));
      return w;
    }
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
      if (j > i) w.push_back(lookup(text.substr(i, j - i)));
      i = j;
    }
    return w;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  Letter lookup(std::string_view name) const {
    auto l = index_of(name);
    if (!l) throw std::invalid_argument("unknown letter '" + std::string(name) + "'");
    return *l;
  }

  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Letter> index_;
};

inline bool is_prefix(WordView prefix, WordView w) {
  return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

inline Word concat(WordView a, WordView b) {
  Word w(a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

/// Reference scanner: compares the pattern against every window of the host.
inline std::vector<std::size_t> occurrences_naive(WordView pattern, WordView host) {
  if (pattern.empty()) throw std::invalid_argument("occurrences: empty pattern");
  std::vector<std::size_t> pos;
  if (pattern.size() > host.size()) return pos;
  for (std::size_t i = 0; i + pattern.size() <= host.size(); ++i)
    if (std::equal(pattern.begin(), pattern.end(), host.begin() + static_cast<std::ptrdiff_t>(i)))
      pos.push_back(i);
  return pos;
}

/// Knuth-Morris-Pratt failure table of a non-empty pattern.
inline std::vector<std::size_t> failure_table(WordView pattern) {
  std::vector<std::size_t> fail(pattern.size(), 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < pattern.size(); ++i) {
    while (k > 0 && pattern[i] != pattern[k]) k = fail[k - 1];
    if (pattern[i] == pattern[k]) ++k;
    fail[i] = k;
  }
  return fail;
}

/// All start positions of `pattern` in `host`, increasing. Linear time.
inline std::vector<std::size_t> occurrences(WordView pattern, WordView host) {
  if (pattern.empty()) throw std::invalid_argument("occurrences: empty pattern");
  std::vector<std::size_t> pos;
  if (pattern.size() > host.size()) return pos;
  const auto fail = failure_table(pattern);
  std::size_t k = 0;
  for (std::size_t i = 0; i < host.size(); ++i) {
    while (k > 0 && host[i] != pattern[k]) k = fail[k - 1];
    if (host[i] == pattern[k]) ++k;
    if (k == pattern.size()) {
      pos.push_back(i + 1 - pattern.size());
      k = fail[k - 1];
    }
  }
  return pos;
}

/// L_u(v): number of occurrences of u in v.
inline std::size_t count_occurrences(WordView pattern, WordView host) {
  return occurrences(pattern, host).size();
}

inline std::size_t count_letter(Letter a, WordView w) {
  return static_cast<std::size_t>(std::count(w.begin(), w.end(), a));
}

/// L_n(host): distinct factors of length n.
inline std::set<Word> factor_set(WordView host, std::size_t n) {
  if (n < 1 || n > host.size())
    throw std::invalid_argument("factor_set: length " + std::to_string(n) + " out of range [1, " +
                                std::to_string(host.size()) + "]");
  std::set<Word> out;
  for (std::size_t i = 0; i + n <= host.size(); ++i)
    out.emplace(host.begin() + static_cast<std::ptrdiff_t>(i),
                host.begin() + static_cast<std::ptrdiff_t>(i + n));
  return out;
}

struct Period {
  std::size_t preperiod = 0;
  std::size_t period = 0;
  friend bool operator==(const Period&, const Period&) = default;
};

/// Bounded ultimate-periodicity test on a finite word.
///
/// Returns the least (preperiod, period), ordered lexicographically, with
/// period <= max_period, preperiod <= |host|/2 and a periodic tail of length at
/// least 2*period. An absent result only says no such pattern was found in
/// this prefix.
inline std::optional<Period> detect_period(WordView host, std::size_t max_period) {
  if (max_period > host.size() / 2)
    throw std::invalid_argument("detect_period: max_period exceeds half the host length");
  const std::size_t n = host.size();
  std::optional<Period> best;
  for (std::size_t p = 1; p <= max_period; ++p) {
    // Least preperiod for p: one past the last mismatch host[i] != host[i+p].
    std::size_t pre = 0;
    for (std::size_t i = n - p; i-- > 0;)
      if (host[i] != host[i + p]) {
        pre = i + 1;
        break;
      }
    if (pre > n / 2 || n - pre < 2 * p) continue;
    if (!best || pre < best->preperiod) best = Period{pre, p};
  }
  return best;
}

}  // namespace cobham
