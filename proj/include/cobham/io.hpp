#pragma once

// Text format for substitutions and named letter-to-letter codings:
//
//   alphabet = a b c
//   start = a
//   a -> a b a b
//   b -> a c c c
//   c -> a b b c
//   coding phi: a -> a, b -> b, c -> b

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cobham/errors.hpp"
#include "cobham/substitution.hpp"
#include "cobham/words.hpp"

namespace cobham {

/// A named letter-to-letter morphism from the substitution alphabet.
struct Coding {
  std::string name;
  Alphabet target;
  Morphism map;
};

struct SubstitutionFile {
  Alphabet alphabet;
  Substitution substitution;
  std::vector<Coding> codings;

  /// The named coding; "id" is always available.
  Coding coding(std::string_view name) const {
    if (name == "id") return {"id", alphabet, Morphism::identity(alphabet.size())};
    for (const auto& c : codings)
      if (c.name == name) return c;
    throw std::invalid_argument("unknown coding '" + std::string(name) + "'");
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

inline bool valid_symbol(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == ' ' || c == '\t' || c == '#' || c == ',' || c == ':' || c == '=') return false;
  return s != "->";
}

inline Coding parse_coding(std::string_view body, std::size_t line, const Alphabet& alphabet) {
  const auto colon = body.find(':');
  if (colon == std::string_view::npos) throw ParseError("coding needs 'name:' before its images", line);
  const std::string name(trim(body.substr(0, colon)));
  if (!valid_symbol(name)) throw ParseError("invalid coding name", line);
  if (name == "id") throw ParseError("coding name 'id' is reserved", line);
  std::vector<std::optional<std::string>> targets(alphabet.size());
  std::vector<std::string> target_order;
  for (std::string_view entry : split_on(body.substr(colon + 1), ',')) {
    const auto arrow = entry.find("->");
    if (arrow == std::string_view::npos) throw ParseError("coding entry needs '->'", line);
    const std::string from(trim(entry.substr(0, arrow)));
    const auto to = split_words(entry.substr(arrow + 2));
    auto letter = alphabet.index_of(from);
    if (!letter) throw ParseError("unknown letter '" + from + "' in coding", line);
    if (to.size() != 1) throw ParseError("coding image of '" + from + "' must be a single letter", line);
    if (targets[*letter]) throw ParseError("letter '" + from + "' coded twice", line);
    targets[*letter] = to[0];
    if (std::find(target_order.begin(), target_order.end(), to[0]) == target_order.end())
      target_order.push_back(to[0]);
  }
  for (std::size_t b = 0; b < targets.size(); ++b)
    if (!targets[b]) throw ParseError("coding misses letter '" + alphabet.symbol(static_cast<Letter>(b)) + "'", line);
  Alphabet target(target_order);
  std::vector<Word> images;
  for (const auto& t : targets) images.push_back({*target.index_of(*t)});
  return {name, std::move(target), Morphism(target_order.size(), std::move(images))};
}

}  // namespace detail

/// Parses the text format. Malformed lines raise ParseError with their line
/// number; a well-formed file violating a substitution invariant raises SemanticError.
inline SubstitutionFile parse_substitution(std::string_view text) {
  std::optional<Alphabet> alphabet;
  std::optional<std::string> start;
  std::size_t start_line = 0;
  std::vector<std::optional<Word>> images;
  std::vector<std::pair<std::string_view, std::size_t>> coding_lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = detail::trim(raw);
    if (line.empty()) continue;

    if (line.rfind("coding", 0) == 0 && line.size() > 6 && (line[6] == ' ' || line[6] == '\t')) {
      if (!alphabet) throw ParseError("coding before the alphabet line", line_no);
      coding_lines.emplace_back(line.substr(7), line_no);
      continue;
    }
    if (const auto arrow = line.find("->"); arrow != std::string_view::npos) {
      if (!alphabet) throw ParseError("image before the alphabet line", line_no);
      const std::string from(detail::trim(line.substr(0, arrow)));
      auto letter = alphabet->index_of(from);
      if (!letter) throw ParseError("unknown letter '" + from + "'", line_no);
      if (images[*letter]) throw ParseError("second image for '" + from + "'", line_no);
      Word w;
      for (const auto& tok : detail::split_words(line.substr(arrow + 2))) {
        auto l = alphabet->index_of(tok);
        if (!l) throw ParseError("unknown letter '" + tok + "' in image", line_no);
        w.push_back(*l);
      }
      if (w.empty()) throw ParseError("empty image for '" + from + "'", line_no);
      images[*letter] = std::move(w);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("unrecognized line", line_no);
    const std::string_view key = detail::trim(line.substr(0, eq));
    const auto values = detail::split_words(line.substr(eq + 1));
    if (key == "alphabet") {
      if (alphabet) throw ParseError("second alphabet line", line_no);
      if (values.empty()) throw ParseError("empty alphabet", line_no);
      for (const auto& v : values)
        if (!detail::valid_symbol(v)) throw ParseError("invalid letter name '" + v + "'", line_no);
      try {
        alphabet.emplace(values);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no);
      }
      images.assign(alphabet->size(), std::nullopt);
    } else if (key == "start") {
      if (!alphabet) throw ParseError("start before the alphabet line", line_no);
      if (start) throw ParseError("second start line", line_no);
      if (values.size() != 1) throw ParseError("start needs exactly one letter", line_no);
      if (!alphabet->index_of(values[0])) throw ParseError("unknown start letter '" + values[0] + "'", line_no);
      start = values[0];
      start_line = line_no;
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", line_no);
    }
  }

  if (!alphabet) throw ParseError("missing alphabet line", line_no);
  if (!start) throw SemanticError("missing start line");
  std::vector<Word> all;
  for (std::size_t b = 0; b < images.size(); ++b) {
    if (!images[b]) throw SemanticError("no image for letter '" + alphabet->symbol(static_cast<Letter>(b)) + "'");
    all.push_back(*images[b]);
  }
  const Letter s = *alphabet->index_of(*start);
  if (all[s].front() != s)
    throw SemanticError("line " + std::to_string(start_line) + ": the image of the start letter '" + *start +
                        "' must begin with '" + *start + "'");
  std::vector<Coding> codings;
  for (const auto& [body, ln] : coding_lines) {
    Coding c = detail::parse_coding(body, ln, *alphabet);
    for (const auto& other : codings)
      if (other.name == c.name) throw ParseError("second coding named '" + c.name + "'", ln);
    codings.push_back(std::move(c));
  }
  const std::size_t n = alphabet->size();
  return SubstitutionFile{std::move(*alphabet), Substitution(Morphism(n, std::move(all)), s), std::move(codings)};
}

/// Canonical text of a parsed file; parse_substitution(format_substitution(f)) reproduces f.
inline std::string format_substitution(const SubstitutionFile& f) {
  std::string out = "alphabet =";
  for (const auto& s : f.alphabet.symbols()) out += " " + s;
  out += "\nstart = " + f.alphabet.symbol(f.substitution.start()) + "\n";
  for (Letter b = 0; b < f.substitution.size(); ++b) {
    out += f.alphabet.symbol(b) + " ->";
    for (Letter c : f.substitution.image(b)) out += " " + f.alphabet.symbol(c);
    out += "\n";
  }
  for (const auto& c : f.codings) {
    out += "coding " + c.name + ":";
    for (Letter b = 0; b < f.alphabet.size(); ++b)
      out += std::string(b ? "," : "") + " " + f.alphabet.symbol(b) + " -> " + c.target.symbol(c.map.image(b)[0]);
    out += "\n";
  }
  return out;
}

/// A substitution with an alphabet for display, without codings.
inline std::string format_substitution(const Substitution& s, const Alphabet& alphabet) {
  return format_substitution(SubstitutionFile{alphabet, s, {}});
}

}  // namespace cobham
