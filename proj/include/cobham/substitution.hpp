#pragma once

// Morphisms, substitutions, incidence matrices and fixed-point generation.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cobham/errors.hpp"
#include "cobham/matrix.hpp"
#include "cobham/words.hpp"

namespace cobham {

/// Default cap on generated fixed-point prefixes; REPO_PREFIX_CAP overrides it.
inline constexpr std::size_t kDefaultPrefixCap = 10'000'000;

inline std::size_t prefix_cap() {
  if (const char* env = std::getenv("REPO_PREFIX_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultPrefixCap;
}

/// A map A -> B*, stored as one image word per source letter.
class Morphism {
 public:
  Morphism() = default;

  Morphism(std::size_t target_size, std::vector<Word> images)
      : target_size_(target_size), images_(std::move(images)) {
    for (std::size_t b = 0; b < images_.size(); ++b)
      for (Letter c : images_[b])
        if (c >= target_size_)
          throw std::invalid_argument("image of letter " + std::to_string(b) +
                                      " uses letter outside the target alphabet");
  }

  static Morphism identity(std::size_t n) {
    std::vector<Word> images(n);
    for (std::size_t b = 0; b < n; ++b) images[b] = {static_cast<Letter>(b)};
    return Morphism(n, std::move(images));
  }

  std::size_t source_size() const noexcept { return images_.size(); }
  std::size_t target_size() const noexcept { return target_size_; }
  const Word& image(Letter b) const { return images_.at(b); }
  const std::vector<Word>& images() const noexcept { return images_; }

  std::size_t max_image_length() const {
    std::size_t m = 0;
    for (const auto& w : images_) m = std::max(m, w.size());
    return m;
  }

  bool non_erasing() const {
    for (const auto& w : images_)
      if (w.empty()) return false;
    return true;
  }

  bool letter_to_letter() const {
    for (const auto& w : images_)
      if (w.size() != 1) return false;
    return true;
  }

  void apply_append(WordView w, Word& out) const {
    for (Letter a : w) {
      const Word& img = images_.at(a);
      out.insert(out.end(), img.begin(), img.end());
    }
  }

  Word apply(WordView w) const {
    Word out;
    apply_append(w, out);
    return out;
  }

  friend bool operator==(const Morphism&, const Morphism&) = default;

 private:
  std::size_t target_size_ = 0;
  std::vector<Word> images_;
};

/// f∘g : A -> C for g : A -> B and f : B -> C.
inline Morphism compose(const Morphism& f, const Morphism& g) {
  if (g.target_size() != f.source_size())
    throw std::invalid_argument("compose: target of g has " + std::to_string(g.target_size()) +
                                " letters, source of f has " + std::to_string(f.source_size()));
  std::vector<Word> images;
  images.reserve(g.source_size());
  for (const auto& w : g.images()) images.push_back(f.apply(w));
  return Morphism(f.target_size(), std::move(images));
}

/// Entry (i, j) counts the letter i in the image of j.
inline IntMatrix incidence_matrix(const Morphism& m) {
  IntMatrix out(m.target_size(), m.source_size());
  for (std::size_t j = 0; j < m.source_size(); ++j)
    for (Letter i : m.image(static_cast<Letter>(j))) out(i, j) += 1;
  return out;
}

struct Primitivity {
  bool primitive = false;
  /// Least k with M^k entrywise positive, when primitive.
  std::optional<unsigned> exponent;
};

/// Decides primitivity exactly: boolean powers up to the Wielandt bound n^2 - 2n + 2.
inline Primitivity is_primitive(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("is_primitive: non-square " + m.shape());
  const std::size_t n = m.rows();
  if (n == 0) return {};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) < 0) throw std::invalid_argument("is_primitive: negative entry");
  using Bool = std::vector<unsigned char>;
  Bool base(n * n), cur(n * n), next(n * n);
  for (std::size_t i = 0; i < n * n; ++i) base[i] = cur[i] = m(i / n, i % n) > 0;
  const unsigned bound = static_cast<unsigned>(n * n - 2 * n + 2);
  for (unsigned k = 1;; ++k) {
    bool all = true;
    for (unsigned char v : cur) all = all && v;
    if (all) return {true, k};
    if (k == bound) return {};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        unsigned char v = 0;
        for (std::size_t l = 0; l < n && !v; ++l) v = cur[i * n + l] && base[l * n + j];
        next[i * n + j] = v;
      }
    cur.swap(next);
  }
}

/// A morphism A -> A+ whose start letter begins its own image.
class Substitution {
 public:
  static Morphism square_morphism(std::vector<Word> images) {
    const std::size_t n = images.size();
    return Morphism(n, std::move(images));
  }

  Substitution(Morphism morphism, Letter start) : morphism_(std::move(morphism)), start_(start) {
    if (morphism_.source_size() == 0) throw std::invalid_argument("substitution on empty alphabet");
    if (morphism_.source_size() != morphism_.target_size())
      throw std::invalid_argument("substitution must map an alphabet to itself");
    if (!morphism_.non_erasing()) throw std::invalid_argument("substitution has an empty image");
    if (start_ >= morphism_.source_size()) throw std::invalid_argument("start letter out of range");
    if (morphism_.image(start_).front() != start_)
      throw std::invalid_argument("image of the start letter must begin with the start letter");
  }

  Substitution(std::vector<Word> images, Letter start = 0)
      : Substitution(square_morphism(std::move(images)), start) {}

  std::size_t size() const noexcept { return morphism_.source_size(); }
  Letter start() const noexcept { return start_; }
  const Morphism& morphism() const noexcept { return morphism_; }
  const Word& image(Letter b) const { return morphism_.image(b); }
  const std::vector<Word>& images() const noexcept { return morphism_.images(); }
  Word apply(WordView w) const { return morphism_.apply(w); }
  IntMatrix matrix() const { return incidence_matrix(morphism_); }
  bool primitive() const { return is_primitive(matrix()).primitive; }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Morphism morphism_;
  Letter start_;
};

/// τ^n with the same start letter.
inline Substitution power(const Substitution& s, unsigned n) {
  if (n == 0) throw std::invalid_argument("power: exponent must be positive");
  std::vector<Word> images = s.images();
  const std::size_t cap = prefix_cap();
  for (unsigned k = 1; k < n; ++k)
    for (auto& w : images) {
      w = s.apply(w);
      if (w.size() > cap) throw ResourceLimit("power: image length exceeds prefix cap", cap);
    }
  return Substitution(Morphism(s.size(), std::move(images)), s.start());
}

/// Extend-on-demand prefix of the fixed point X_τ.
///
/// The buffer is the prefix τ(x_0)τ(x_1)...τ(x_{c-1}) where c letters have been
/// consumed; every extension appends the image of the next consumed letter.
class FixedPointPrefix {
 public:
  explicit FixedPointPrefix(Substitution s) : sub_(std::move(s)) {
    if (sub_.image(sub_.start()).size() < 2)
      throw GenerationError("fixed point cannot grow: image of the start letter has length 1");
    buffer_ = sub_.image(sub_.start());
    consumed_ = 1;
  }

  const Substitution& substitution() const noexcept { return sub_; }
  const Word& buffer() const noexcept { return buffer_; }

  /// Makes the buffer at least n letters long.
  const Word& extend(std::size_t n) {
    if (n > prefix_cap()) throw ResourceLimit("fixed-point prefix request exceeds cap", prefix_cap());
    if (buffer_.capacity() < n) buffer_.reserve(n);
    while (buffer_.size() < n) {
      const Word& img = sub_.image(buffer_[consumed_++]);
      buffer_.insert(buffer_.end(), img.begin(), img.end());
    }
    return buffer_;
  }

  Word prefix(std::size_t n) {
    extend(n);
    return Word(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(n));
  }

 private:
  Substitution sub_;
  Word buffer_;
  std::size_t consumed_ = 0;
};

/// X_τ[0 .. n-1].
inline Word fixed_point_prefix(const Substitution& s, std::size_t n) {
  if (n == 0) throw std::invalid_argument("fixed_point_prefix: length must be positive");
  FixedPointPrefix fp(s);
  return fp.prefix(n);
}

/// φ(X_τ)[0 .. n-1] for a letter-to-letter coding φ.
inline Word morphic_image_prefix(const Morphism& coding, const Substitution& s, std::size_t n) {
  if (!coding.letter_to_letter())
    throw std::invalid_argument("morphic_image_prefix: coding is not letter-to-letter");
  if (coding.source_size() != s.size())
    throw std::invalid_argument("morphic_image_prefix: coding source does not match substitution");
  return coding.apply(fixed_point_prefix(s, n));
}

/// Letters ordered by first appearance in X_τ; letters never seen follow in index order.
inline std::vector<Letter> first_appearance_order(const Substitution& s) {
  std::vector<Letter> order;
  std::vector<bool> seen(s.size(), false);
  auto note = [&](Letter a) {
    if (!seen[a]) {
      seen[a] = true;
      order.push_back(a);
    }
  };
  if (s.image(s.start()).size() >= 2) {
    FixedPointPrefix fp(s);
    std::size_t len = 64;
    std::size_t scanned = 0;
    const std::size_t limit = std::min<std::size_t>(prefix_cap(), 1U << 20);
    while (order.size() < s.size()) {
      const Word& buf = fp.extend(len);
      for (; scanned < buf.size() && order.size() < s.size(); ++scanned) note(buf[scanned]);
      if (len >= limit) break;
      len = std::min(limit, len * 2);
    }
  } else {
    note(s.start());
  }
  for (Letter a = 0; a < s.size(); ++a) note(a);
  return order;
}

/// Renames letters as in `order` (new letter i is old letter order[i]).
inline Substitution rename(const Substitution& s, const std::vector<Letter>& order) {
  std::vector<Letter> new_index(s.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_index[order[i]] = static_cast<Letter>(i);
  std::vector<Word> images(s.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    Word w = s.image(order[i]);
    for (auto& a : w) a = new_index[a];
    images[i] = std::move(w);
  }
  return Substitution(Morphism(s.size(), std::move(images)), new_index[s.start()]);
}

/// τ relabelled so that letters are numbered by first appearance in X_τ.
inline Substitution canonical_form(const Substitution& s) {
  return rename(s, first_appearance_order(s));
}

/// Equality up to the canonical first-appearance renaming.
inline bool canonically_equal(const Substitution& a, const Substitution& b) {
  return a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

}  // namespace cobham

namespace cobham {

/// Outcome of the bounded ultimate-periodicity test on a fixed-point prefix.
struct PeriodicityCheck {
  std::size_t prefix_length = 0;
  std::size_t max_period = 0;
  std::optional<Period> period;

  /// True when no period <= max_period was seen in the prefix (not a proof).
  bool nonperiodic() const noexcept { return !period.has_value(); }
};

inline PeriodicityCheck check_nonperiodic(const Substitution& s, std::size_t prefix_length = 4096,
                                          std::size_t max_period = 1024) {
  PeriodicityCheck out;
  out.prefix_length = prefix_length;
  // With pre <= n/2 and p <= n/8 an accepted tail spans at least four periods, which rules
  // out the long but finite repetitions of Sturmian and similar fixed points.
  out.max_period = std::min(max_period, prefix_length / 8);
  if (s.image(s.start()).size() < 2) {
    out.period = Period{0, 1};
    return out;
  }
  out.period = detect_period(fixed_point_prefix(s, prefix_length), out.max_period);
  return out;
}

}  // namespace cobham
