#pragma once

// Command-line front end. run_command() parses arguments, runs one analysis
// and writes a human-readable report or, with --json, its machine-readable mirror.
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or parse error,
// 3 a search bound or budget was exhausted.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cobham/circularity.hpp"
#include "cobham/io.hpp"
#include "cobham/periodic.hpp"
#include "cobham/relations.hpp"
#include "cobham/returns.hpp"
#include "cobham/spectrum.hpp"
#include "cobham/substitution.hpp"

namespace cobham::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

/// Human lines plus the machine-readable mirror of one command.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  json& config() { return config_; }
  json& result() { return result_; }
  void line(const std::string& text) { lines_.push_back(text); }

  void check(const std::string& name, bool passed, const std::string& detail = "") {
    json c{{"name", name}, {"passed", passed}};
    if (!detail.empty()) c["detail"] = detail;
    checks_.push_back(std::move(c));
    lines_.push_back(std::string(passed ? "[pass] " : "[FAIL] ") + name + (detail.empty() ? "" : ": " + detail));
    if (!passed) failed_ = true;
  }

  /// A bounded search came back empty.
  void exhausted(const std::string& what) {
    exhausted_ = true;
    lines_.push_back("[bound] " + what);
    result_["exhausted"] = what;
  }

  int status() const { return failed_ ? kCheckFailed : exhausted_ ? kBudget : kPass; }

  void write(std::ostream& out, bool as_json, double millis) const {
    if (as_json) {
      json j{{"command", command_}, {"config", config_}, {"checks", checks_}, {"result", result_}, {"status", status()}};
      out << j.dump(2) << "\n";
      return;
    }
    out << "command: " << command_ << "\n";
    for (const auto& [k, v] : config_.items()) out << "  " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    for (const auto& l : lines_) out << l << "\n";
    out << "status: " << status() << "\n";
    std::ostringstream t;
    t << std::fixed << std::setprecision(1) << millis;
    out << "time: " << t.str() << " ms\n";
  }

 private:
  std::string command_;
  json config_ = json::object();
  json result_ = json::object();
  json checks_ = json::array();
  std::vector<std::string> lines_;
  bool failed_ = false;
  bool exhausted_ = false;
};

namespace detail {

inline SubstitutionFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_substitution(buf.str());
}

inline std::string approx(const Rational& r, int digits = 12) {
  std::ostringstream s;
  s << std::setprecision(digits) << r.convert_to<long double>();
  return s.str();
}

inline json enclosure_json(const RootEnclosure& e) {
  return json{{"lower", to_string(e.lower)}, {"upper", to_string(e.upper)}, {"width", to_string(e.width())},
              {"exact", e.exact}};
}

inline std::string enclosure_text(const RootEnclosure& e) {
  if (e.exact) return to_string(e.lower) + " (exact)";
  return approx(e.midpoint(), 15) + " in (" + approx(e.lower, 18) + ", " + approx(e.upper, 18) + "), width <= " +
         approx(e.width(), 3);
}

inline json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string matrix_text(const IntMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + std::to_string(m(i, j));
    out += "]";
  }
  return out + "]";
}

inline json poly_json(const IntPolynomial& p) {
  json coeffs = json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(c.str());
  return json{{"text", p.to_string()}, {"ascending", std::move(coeffs)}};
}

inline std::vector<std::string> morphism_lines(const Morphism& m, const Alphabet& from, const Alphabet& to) {
  std::vector<std::string> out;
  for (Letter b = 0; b < m.source_size(); ++b) out.push_back(from.symbol(b) + " -> " + to.format(m.image(b)));
  return out;
}

inline json morphism_json(const Morphism& m, const Alphabet& from, const Alphabet& to) {
  json j = json::object();
  for (Letter b = 0; b < m.source_size(); ++b) j[from.symbol(b)] = to.format(m.image(b));
  return j;
}

/// Words for command-line arguments: whitespace separated names, or one letter per character.
inline Word parse_word(const Alphabet& a, const std::string& text) {
  Word w = a.parse(text);
  if (w.empty()) throw std::invalid_argument("empty word argument");
  return w;
}

inline void spectrum_section(Report& r, const std::string& key, const IntMatrix& m) {
  const Spectrum s = spectrum(m);
  const Spectrum stripped = strip_trivial(s);
  json roots = json::array();
  std::string listed;
  auto add = [&](const std::string& root, unsigned mult) {
    roots.push_back(json{{"root", root}, {"multiplicity", mult}});
    for (unsigned i = 0; i < mult; ++i) listed += (listed.empty() ? "" : ", ") + root;
  };
  if (s.zero_multiplicity) add("0", s.zero_multiplicity);
  for (const auto& rm : s.integer_roots) add(rm.root.str(), rm.multiplicity);
  json numeric = json::array();
  for (const auto& z : s.numeric.roots) numeric.push_back(json{{"re", z.real()}, {"im", z.imag()}});
  r.result()[key] = json{{"matrix", matrix_json(m)},
                         {"char_poly", poly_json(s.char_poly)},
                         {"exact_roots", roots},
                         {"residual", poly_json(s.residual)},
                         {"numeric_residual_roots", numeric},
                         {"numeric_error_bound", s.numeric.error_bound},
                         {"dominant", s.dominant ? enclosure_json(*s.dominant) : json()},
                         {"nontrivial", poly_json(squarefree_part(stripped.char_poly))},
                         {"removed_zeros", stripped.removed_zeros}};
  json cyc = json::array();
  for (const auto& f : stripped.removed_cyclotomic) cyc.push_back(json{{"order", f.order}, {"multiplicity", f.multiplicity}});
  r.result()[key]["removed_cyclotomic"] = cyc;

  r.line(key + " matrix: " + matrix_text(m));
  r.line(key + " char poly: " + s.char_poly.to_string());
  if (s.residual.degree() < 1) {
    r.line(key + " eigenvalues: {" + listed + "}");
  } else {
    r.line(key + " exact eigenvalues: {" + listed + "}, residual factor " + s.residual.to_string());
    std::string approx_roots;
    for (const auto& z : s.numeric.roots) {
      std::ostringstream o;
      o << std::setprecision(10) << z.real();
      if (z.imag() != 0) o << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
      approx_roots += (approx_roots.empty() ? "" : ", ") + o.str();
    }
    std::ostringstream eb;
    eb << std::setprecision(3) << s.numeric.error_bound;
    r.line(key + " residual roots (numeric, error <= " + eb.str() + "): " + approx_roots);
  }
  if (s.dominant) r.line(key + " dominant eigenvalue: " + enclosure_text(*s.dominant));
  r.line(key + " without 0 and roots of unity: " + squarefree_part(stripped.char_poly).to_string());
}

inline std::string pair_text(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace detail

struct Options {
  bool json = false;
  std::string file;
  std::string file2;
  std::string prefix;
  std::string v;
  std::string period;
  std::string coding = "id";
  std::string coding_left = "id";
  std::string coding_right = "id";
  std::size_t length = 100;
  std::size_t observe = 0;
  std::size_t depth = 8;
  unsigned bound = kDefaultDependenceBound;
  unsigned budget = 6;
  unsigned l = 0;
  std::size_t d_max = 20;
  std::size_t sample = 10;
  std::size_t inj_length = 30;
  std::size_t max_prefix = 200;
  bool skip_gate = false;
};

inline Report cmd_fixed_point(const Options& o) {
  Report r("fixed-point");
  const auto f = detail::load(o.file);
  const Coding c = f.coding(o.coding);
  r.config() = json{{"file", o.file}, {"length", o.length}, {"coding", o.coding}, {"prefix_cap", prefix_cap()}};
  const Word x = morphic_image_prefix(c.map, f.substitution, o.length);
  r.result()["prefix"] = c.target.format(x);
  r.line(c.target.format(x));
  return r;
}

inline Report cmd_spectrum(const Options& o) {
  Report r("spectrum");
  const auto f = detail::load(o.file);
  r.config() = json{{"file", o.file}, {"precision", to_string(default_precision())}};
  const IntMatrix m = f.substitution.matrix();
  const Primitivity p = is_primitive(m);
  r.result()["primitive"] = p.primitive;
  if (p.exponent) r.result()["primitivity_exponent"] = *p.exponent;
  r.line(std::string("primitive: ") + (p.primitive ? "yes, M^" + std::to_string(*p.exponent) + " > 0" : "no"));
  detail::spectrum_section(r, "tau", m);
  return r;
}

inline Report cmd_return_words(const Options& o) {
  Report r("return-words");
  const auto f = detail::load(o.file);
  const Word u = detail::parse_word(f.alphabet, o.prefix);
  r.config() = json{{"file", o.file}, {"prefix", f.alphabet.format(u)}, {"observe", o.observe}};
  const ReturnSystem sys = o.observe ? return_words_of_prefix(fixed_point_prefix(f.substitution, o.observe), u,
                                                              f.alphabet.size())
                                     : return_substitution(f.substitution, u).system;
  r.result()["complete"] = sys.complete();
  json words = json::array();
  for (std::size_t b = 0; b < sys.size(); ++b) {
    const std::string w = f.alphabet.format(sys.word(static_cast<Letter>(b)));
    words.push_back(w);
    r.line(std::to_string(b + 1) + ": " + w);
  }
  r.result()["return_words"] = words;
  r.line(sys.complete() ? "complete set (closure under tau)"
                        : "observed on a prefix of length " + std::to_string(o.observe) + "; completeness not guaranteed");
  return r;
}

inline Report cmd_return_sub(const Options& o) {
  Report r("return-sub");
  const auto f = detail::load(o.file);
  const Substitution& tau = f.substitution;
  const Word u = detail::parse_word(f.alphabet, o.prefix);
  r.config() = json{{"file", o.file}, {"prefix", f.alphabet.format(u)}, {"prefix_cap", prefix_cap()}};
  const ReturnData d = return_substitution(tau, u);
  const Alphabet ru = Alphabet::numbered(d.system.size());
  json words = json::array();
  for (std::size_t b = 0; b < d.system.size(); ++b) {
    words.push_back(f.alphabet.format(d.system.word(static_cast<Letter>(b))));
    r.line("Theta(" + std::to_string(b + 1) + ") = " + words.back().get<std::string>());
  }
  r.result()["return_words"] = words;
  r.result()["tau_u"] = detail::morphism_json(d.substitution.morphism(), ru, ru);
  for (const auto& l : detail::morphism_lines(d.substitution.morphism(), ru, ru)) r.line("tau_u: " + l);
  const Morphism theta = d.system.coding();
  r.check("Theta tau_u = tau Theta", compose(theta, d.substitution.morphism()) == compose(tau.morphism(), theta));
  const bool same = d.substitution.size() == tau.size() && d.substitution == canonical_form(tau);
  r.result()["equals_tau"] = same;
  r.line(std::string("tau_u equals tau up to renaming: ") + (same ? "yes" : "no"));
  return r;
}

inline Report cmd_derived(const Options& o) {
  Report r("derived");
  const auto f = detail::load(o.file);
  const Word u = detail::parse_word(f.alphabet, o.prefix);
  r.config() = json{{"file", o.file}, {"prefix", f.alphabet.format(u)}, {"length", o.length}};
  const DerivedPrefix d = derived_prefix(f.substitution, u, o.length);
  const Alphabet ru = Alphabet::numbered(d.data.system.size());
  r.result()["derived"] = ru.format(d.letters);
  r.line("D_u(X) prefix: " + ru.format(d.letters));
  r.check("prefix equals the fixed point of tau_u", d.letters == fixed_point_prefix(d.data.substitution, o.length));
  return r;
}

inline Report cmd_tower(const Options& o) {
  Report r("tower");
  const auto f = detail::load(o.file);
  r.config() = json{{"file", o.file}, {"depth", o.depth}};
  const TowerReport t = derivation_tower(f.substitution, o.depth);
  json levels = json::array();
  for (std::size_t k = 0; k < t.levels.size(); ++k) {
    const auto& lv = t.levels[k];
    const Alphabet ru = Alphabet::numbered(lv.data.system.size());
    levels.push_back(json{{"level", k + 1},
                          {"prefix_length", lv.prefix.size()},
                          {"return_words", lv.data.system.size()},
                          {"tau_u", detail::morphism_json(lv.data.substitution.morphism(), ru, ru)}});
    std::string images;
    for (const auto& l : detail::morphism_lines(lv.data.substitution.morphism(), ru, ru)) images += (images.empty() ? "" : ", ") + l;
    r.line("level " + std::to_string(k + 1) + ": |u| = " + std::to_string(lv.prefix.size()) + ", " +
           std::to_string(lv.data.system.size()) + " return words, tau_u: " + images);
  }
  r.result()["levels"] = levels;
  r.result()["nonperiodic_prefix"] = t.periodicity.prefix_length;
  r.line("no period <= " + std::to_string(t.periodicity.max_period) + " on a prefix of length " +
         std::to_string(t.periodicity.prefix_length) + ": " + (t.periodicity.nonperiodic() ? "yes" : "no"));
  if (t.repetition) {
    r.result()["repetition"] = json::array({t.repetition->first, t.repetition->second});
    r.line("repetition: levels " + std::to_string(t.repetition->first) + " and " +
           std::to_string(t.repetition->second) + " have the same return substitution");
  } else {
    r.exhausted("no repetition <= " + std::to_string(o.depth));
  }
  return r;
}

inline Report cmd_relations(const Options& o) {
  Report r("relations");
  const auto f = detail::load(o.file);
  const Substitution& tau = f.substitution;
  const Word u = detail::parse_word(f.alphabet, o.prefix);
  const Word v = detail::parse_word(f.alphabet, o.v);
  r.config() = json{{"file", o.file}, {"u", f.alphabet.format(u)}, {"v", f.alphabet.format(v)}, {"l", o.l}};
  const RelationReport rel = verify_propprec(tau, u, v);
  r.result()["k"] = rel.k;
  const Alphabet ru = Alphabet::numbered(rel.tau_u.size());
  const Alphabet rv = Alphabet::numbered(rel.tau_v.size());
  r.result()["lambda"] = detail::morphism_json(rel.lambda, rv, ru);
  r.result()["kappa"] = detail::morphism_json(rel.kappa, ru, rv);
  r.line("k = " + std::to_string(rel.k));
  for (const auto& l : detail::morphism_lines(rel.lambda, rv, ru)) r.line("lambda: " + l);
  for (const auto& l : detail::morphism_lines(rel.kappa, ru, rv)) r.line("kappa: " + l);
  for (const auto& c : rel.identities)
    r.check(c.name, c.passed, c.counterexample ? "differs on letter " + std::to_string(*c.counterexample + 1) : "");
  r.check("M_kappa M_lambda = M_tau_v^k and M_lambda M_kappa = M_tau_u^k", rel.matrix_consequences);

  const unsigned l = o.l ? o.l : two_occurrence_exponent(tau, u);
  const MatrixDecomposition d = matrix_decomposition(tau, u, l);
  r.result()["decomposition"] = json{{"l", d.l},
                                     {"n0", d.n0},
                                     {"K", detail::matrix_json(d.k)},
                                     {"Q", detail::matrix_json(d.q)},
                                     {"P", detail::matrix_json(d.p)},
                                     {"H1", to_string(d.constants.h1)},
                                     {"H2", to_string(d.constants.h2)},
                                     {"Q_bound", to_string(d.q_bound)},
                                     {"P_bound", to_string(d.p_bound)}};
  r.line("l = " + std::to_string(d.l) + " (n0 = " + std::to_string(d.n0) + ")");
  r.line("K_l = " + detail::matrix_text(d.k) + ", Q_l = " + detail::matrix_text(d.q) + ", P_l = " + detail::matrix_text(d.p));
  r.check("M_tau^l = M_Theta K_l + Q_l", d.tau_identity && d.q_matches_split);
  r.check("M_tau_u^l = K_l M_Theta + P_l", d.return_identity && d.p_matches_counts);
  r.check("Q_l entries < (H2 + 2)|u| = " + to_string(d.q_bound), d.q_within_bound, "max " + std::to_string(d.q_max));
  r.check("|P_l| entries <= 2(H2 + 1)H2|u|/H1 = " + to_string(d.p_bound), d.p_within_bound,
          "max " + std::to_string(d.p_max));
  r.check("tau and tau_u share eigenvalues up to 0 and roots of unity", eigenvalue_transfer_check(tau, u));
  return r;
}

inline Report cmd_circularity(const Options& o) {
  Report r("circularity");
  const auto f = detail::load(o.file);
  r.config() = json{{"file", o.file},         {"d_max", o.d_max},           {"sample", o.sample},
                    {"length", o.inj_length}, {"max_prefix", o.max_prefix}, {"boundary_cuts", "included"}};
  const SyncDelayReport s = sync_delay_search(f.substitution, o.d_max, o.sample);
  r.result()["sync"] = json{{"delay", s.delay ? json(*s.delay) : json()},
                            {"observed", s.observed},
                            {"prefix_length", s.prefix_length},
                            {"factors", s.factors_checked},
                            {"pairs", s.pairs_checked}};
  r.line("synchronization: " + s.summary() + " (" + std::to_string(s.factors_checked) + " factors, " +
         std::to_string(s.pairs_checked) + " interpretation pairs)");
  if (!s.delay) r.exhausted("no delay <= " + std::to_string(o.d_max));
  if (!o.prefix.empty()) {
    const Word u = detail::parse_word(f.alphabet, o.prefix);
    const InjectivityCertificate c = check_injectivity(f.substitution, u, o.inj_length);
    r.result()["injectivity"] = json{{"prefix", f.alphabet.format(u)}, {"words", c.checked}, {"passed", c.passed}};
    r.check("tau one to one on return-word concatenations of length <= " + std::to_string(o.inj_length), c.passed,
            std::to_string(c.checked) + " words");
  }
  const N0Report n = find_n0(f.substitution, o.inj_length, o.max_prefix);
  r.result()["n0"] = n.n0 ? json(*n.n0) : json();
  r.line("injectivity threshold: " + n.summary());
  if (!n.n0) r.exhausted(n.summary());
  return r;
}

inline Report cmd_shared(const Options& o) {
  Report r("shared");
  const auto left = detail::load(o.file);
  const auto right = detail::load(o.file2);
  r.config() = json{{"left", o.file}, {"right", o.file2}, {"bound", o.bound}, {"budget", o.budget}, {"depth", o.depth}};
  if (!(left.alphabet == right.alphabet)) {
    r.check("same alphabet", false);
    return r;
  }
  try {
    r.result()["gate_length"] = require_same_fixed_point(left.substitution, right.substitution);
    r.check("same fixed point on " + std::to_string(fixed_point_gate_length(left.substitution, right.substitution)) +
                " letters",
            true);
  } catch (const std::invalid_argument& e) {
    r.check("same fixed point", false, e.what());
    return r;
  }
  const PowerCoincidence pc = power_coincidence(left.substitution, right.substitution, o.bound);
  r.result()["power_coincidence"] = pc.pair ? json::array({pc.pair->first, pc.pair->second}) : json();
  r.line("powers with equal eigenvalues up to 0 and roots of unity: " + pc.summary());
  const SharedAnalysis sa = shared_fixed_point_analysis(left.substitution, right.substitution, o.budget, o.depth);
  if (sa.witness) {
    const auto& w = *sa.witness;
    r.result()["witness"] = json{{"u", left.alphabet.format(w.u)}, {"level", w.level}, {"i", w.i}, {"j", w.j}};
    r.line("tau_u^" + std::to_string(w.i) + " = sigma_u^" + std::to_string(w.j) + " for u = " + left.alphabet.format(w.u));
  } else {
    r.exhausted(sa.summary());
  }
  if (!pc.pair) r.exhausted(pc.summary());
  return r;
}

inline Report cmd_cobham(const Options& o) {
  Report r("cobham");
  const auto left = detail::load(o.file);
  const auto right = detail::load(o.file2);
  const Coding cl = left.coding(o.coding_left);
  const Coding cr = right.coding(o.coding_right);
  r.config() = json{{"left", o.file},           {"right", o.file2}, {"coding_left", o.coding_left},
                    {"coding_right", o.coding_right}, {"bound", o.bound}, {"skip_gate", o.skip_gate}};
  const std::size_t n = std::max<std::size_t>(
      10000, 20 * std::max(left.substitution.morphism().max_image_length(), right.substitution.morphism().max_image_length()));
  const Word yl = morphic_image_prefix(cl.map, left.substitution, n);
  const Word yr = morphic_image_prefix(cr.map, right.substitution, n);
  std::optional<std::size_t> diff;
  for (std::size_t i = 0; i < n && !diff; ++i)
    if (cl.target.symbol(yl[i]) != cr.target.symbol(yr[i])) diff = i;
  r.result()["gate_length"] = o.skip_gate ? json() : json(n);
  if (!o.skip_gate) r.check("coded fixed points agree on " + std::to_string(n) + " letters", !diff,
          diff ? "first difference at index " + std::to_string(*diff) : "");
  detail::spectrum_section(r, "left", left.substitution.matrix());
  detail::spectrum_section(r, "right", right.substitution.matrix());
  const DependenceSearch s = mult_dependent(left.substitution.matrix(), right.substitution.matrix(), o.bound);
  r.result()["dependence"] = json{{"bound", s.bound}, {"summary", s.summary()}};
  if (s.witness) {
    const auto& w = *s.witness;
    r.result()["dependence"]["witness"] = json{{"m", w.m},
                                               {"n", w.n},
                                               {"certified", w.certified},
                                               {"common_factor", detail::poly_json(w.common_factor)},
                                               {"left", detail::enclosure_json(w.left)},
                                               {"right", detail::enclosure_json(w.right)}};
    r.line("dominant eigenvalues: " + detail::enclosure_text(s.alpha) + " and " + detail::enclosure_text(s.beta));
    r.check("multiplicative dependence, witness " + detail::pair_text(w.m, w.n), w.certified,
            "alpha^" + std::to_string(w.m) + " = beta^" + std::to_string(w.n) + " = " + detail::enclosure_text(w.left));
  } else {
    r.exhausted(s.summary());
  }
  return r;
}

inline Report cmd_periodic(const Options& o) {
  Report r("periodic");
  const auto f = detail::load(o.file);
  std::vector<std::string> names;
  if (o.period.find_first_of(" \t") == std::string::npos) {
    for (char ch : o.period) names.emplace_back(1, ch);
  } else {
    std::istringstream in(o.period);
    for (std::string t; in >> t;) names.push_back(t);
  }
  if (names.empty()) throw std::invalid_argument("empty period word");
  std::vector<std::string> symbols;
  Word m;
  for (const auto& s : names) {
    auto it = std::find(symbols.begin(), symbols.end(), s);
    if (it == symbols.end()) {
      symbols.push_back(s);
      it = symbols.end() - 1;
    }
    m.push_back(static_cast<Letter>(it - symbols.begin()));
  }
  const Alphabet ma(symbols);
  r.config() = json{{"file", o.file}, {"period", ma.format(m)}, {"check_length", o.length}};
  const PeriodicPresentation p = build_periodic_presentation(m, f.substitution, ma.size());
  std::vector<std::string> dnames;
  for (Letter b = 0; b < f.alphabet.size(); ++b)
    for (std::size_t i = 0; i < m.size(); ++i) dnames.push_back("(" + f.alphabet.symbol(b) + "," + std::to_string(i) + ")");
  const Alphabet da(dnames);
  r.result()["k"] = p.k;
  r.result()["zeta"] = detail::morphism_json(p.zeta.morphism(), da, da);
  r.line("k = " + std::to_string(p.k) + ", |D| = " + std::to_string(da.size()));
  for (const auto& l : detail::morphism_lines(p.zeta.morphism(), da, da)) r.line("zeta: " + l);
  const PresentationReport v = verify_presentation(p, o.length);
  r.check("zeta psi = psi tau^k", v.commutation,
          v.commutation_counterexample ? "differs on " + f.alphabet.symbol(*v.commutation_counterexample) : "");
  r.check("phi psi(b) = m", v.phi_psi);
  r.check("zeta primitive", v.primitive);
  r.check("phi(X_zeta) = m^omega on " + std::to_string(o.length) + " letters", v.prefix_matches);
  r.check("dominant(zeta) = dominant(tau)^k", v.dominant_power);
  return r;
}

/// Runs one command; `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Return-word calculus for primitive substitutions", "cobham"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Emit the machine-readable report");
  app.fallthrough();

  auto* fp = app.add_subcommand("fixed-point", "Print a prefix of the fixed point");
  fp->add_option("file", o.file, "Substitution file")->required();
  fp->add_option("--length", o.length, "Prefix length")->capture_default_str();
  fp->add_option("--coding", o.coding, "Coding applied to the prefix")->capture_default_str();

  auto* sp = app.add_subcommand("spectrum", "Characteristic polynomial and eigenvalues");
  sp->add_option("file", o.file, "Substitution file")->required();

  auto* rw = app.add_subcommand("return-words", "Return words on a prefix");
  rw->add_option("file", o.file, "Substitution file")->required();
  rw->add_option("--prefix", o.prefix, "Prefix u of the fixed point")->required();
  rw->add_option("--observe", o.observe, "Only scan a fixed-point prefix of this length");

  auto* rs = app.add_subcommand("return-sub", "Return substitution on a prefix");
  rs->add_option("file", o.file, "Substitution file")->required();
  rs->add_option("--prefix", o.prefix, "Prefix u of the fixed point")->required();

  auto* dv = app.add_subcommand("derived", "Prefix of the derived sequence");
  dv->add_option("file", o.file, "Substitution file")->required();
  dv->add_option("--prefix", o.prefix, "Prefix u of the fixed point")->required();
  dv->add_option("--length", o.length, "Number of derived letters")->capture_default_str();

  auto* tw = app.add_subcommand("tower", "Derivation tower with repetition detection");
  tw->add_option("file", o.file, "Substitution file")->required();
  tw->add_option("--depth", o.depth, "Maximum number of levels")->capture_default_str();

  auto* rl = app.add_subcommand("relations", "Morphism and matrix relations between return substitutions");
  rl->add_option("file", o.file, "Substitution file")->required();
  rl->add_option("--u", o.prefix, "Shorter prefix u")->required();
  rl->add_option("--v", o.v, "Longer prefix v")->required();
  rl->add_option("--l", o.l, "Exponent l (default: least admissible)");

  auto* ci = app.add_subcommand("circularity", "Synchronization delay and injectivity");
  ci->add_option("file", o.file, "Substitution file")->required();
  ci->add_option("--dmax", o.d_max, "Largest delay accepted")->capture_default_str();
  ci->add_option("--sample", o.sample, "Longest sampled factor")->capture_default_str();
  ci->add_option("--length", o.inj_length, "Longest word in the injectivity checks")->capture_default_str();
  ci->add_option("--max-prefix", o.max_prefix, "Longest prefix scanned for n0")->capture_default_str();
  ci->add_option("--prefix", o.prefix, "Also certify injectivity on this prefix");

  auto* sh = app.add_subcommand("shared", "Two substitutions sharing a fixed point");
  sh->add_option("left", o.file, "First substitution file")->required();
  sh->add_option("right", o.file2, "Second substitution file")->required();
  sh->add_option("--bound", o.bound, "Power bound for eigenvalue coincidence")->capture_default_str();
  sh->add_option("--budget", o.budget, "Power bound for return substitution equality")->capture_default_str();
  sh->add_option("--depth", o.depth, "Tower levels examined")->capture_default_str();

  auto* cb = app.add_subcommand("cobham", "Coded fixed points and multiplicative dependence");
  cb->add_option("--left", o.file, "First substitution file")->required();
  cb->add_option("--right", o.file2, "Second substitution file")->required();
  cb->add_option("--coding-left", o.coding_left, "Coding of the first fixed point")->capture_default_str();
  cb->add_option("--coding-right", o.coding_right, "Coding of the second fixed point")->capture_default_str();
  cb->add_option("--bound", o.bound, "Exponent bound for the dependence search")->capture_default_str();
  cb->add_flag("--skip-gate", o.skip_gate, "Only search for multiplicative dependence");

  auto* pd = app.add_subcommand("periodic", "Substitutive presentation of a periodic sequence");
  pd->add_option("file", o.file, "Primitive substitution file")->required();
  pd->add_option("--period", o.period, "Period word m")->required();
  pd->add_option("--check-length", o.length, "Letters of phi(X_zeta) compared with m^omega")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    std::optional<Report> report;
    if (fp->parsed()) report = cmd_fixed_point(o);
    else if (sp->parsed()) report = cmd_spectrum(o);
    else if (rw->parsed()) report = cmd_return_words(o);
    else if (rs->parsed()) report = cmd_return_sub(o);
    else if (dv->parsed()) report = cmd_derived(o);
    else if (tw->parsed()) report = cmd_tower(o);
    else if (rl->parsed()) report = cmd_relations(o);
    else if (ci->parsed()) report = cmd_circularity(o);
    else if (sh->parsed()) report = cmd_shared(o);
    else if (cb->parsed()) report = cmd_cobham(o);
    else if (pd->parsed()) report = cmd_periodic(o);
    if (!report) return kUsage;
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    report->write(out, o.json, ms);
    return report->status();
  } catch (const ResourceLimit& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const SemanticError& e) {
    err << "invalid substitution: " << e.what() << "\n";
    return kUsage;
  } catch (const GenerationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  }
}

}  // namespace cobham::cli
