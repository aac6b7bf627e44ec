#include <gtest/gtest.h>

#include <sstream>

#include "cobham/cli.hpp"
#include "corpus.hpp"

using namespace cobham;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return corpus::data_file(name); }

}  // namespace

TEST(Parse, TauFile) {
  const SubstitutionFile f = parse_substitution("alphabet = a b\nstart = a\na -> a b a b\nb -> a b b b\n");
  EXPECT_EQ(f.substitution.images(), (std::vector<Word>{{0, 1, 0, 1}, {0, 1, 1, 1}}));
  EXPECT_EQ(f.alphabet.symbol(1), "b");
  EXPECT_TRUE(f.codings.empty());
}

TEST(Parse, CodingAndComments) {
  const SubstitutionFile f = parse_substitution(
      "# comment\nalphabet = a b c\nstart = a\na -> a b a b\nb -> a c c c   # trailing\nc -> a b b c\n"
      "coding phi: a -> a, b -> b, c -> b\n");
  const Coding phi = f.coding("phi");
  EXPECT_EQ(phi.target.size(), 2u);
  EXPECT_EQ(phi.map.apply(Word{0, 1, 2}), (Word{0, 1, 1}));
  EXPECT_EQ(f.coding("id").map.apply(Word{2}), Word{2});
  EXPECT_THROW(f.coding("psi"), std::invalid_argument);
}

TEST(Parse, StartImageMustBeginWithStart) {
  EXPECT_THROW(parse_substitution("alphabet = a b\nstart = a\na -> b a\nb -> a\n"), SemanticError);
}

TEST(Parse, ErrorsCarryLineNumbers) {
  try {
    parse_substitution("alphabet = a b\nstart = a\na ->\nb -> a\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_substitution("alphabet = a b\nstart = a\na -> a b\nb -> a z\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse_substitution("start = a\n"), ParseError);
  EXPECT_THROW(parse_substitution("alphabet = a b\nstart = a\na -> a b\n"), SemanticError);
}

TEST(Parse, RoundTrip) {
  for (const char* name : {"fib.sub", "morse.sub", "tribonacci.sub", "tau.sub", "sigma.sub", "cyclic3.sub"}) {
    const SubstitutionFile f = cli::detail::load(data(name));
    const std::string text = format_substitution(f);
    const SubstitutionFile g = parse_substitution(text);
    EXPECT_EQ(g.substitution.images(), f.substitution.images()) << name;
    EXPECT_EQ(g.substitution.start(), f.substitution.start()) << name;
    EXPECT_EQ(g.codings.size(), f.codings.size()) << name;
    EXPECT_EQ(format_substitution(g), text) << name;
  }
}

TEST(Cli, ExamplesExitZero) {
  EXPECT_EQ(run({"spectrum", data("morse.sub")}).code, 0);
  EXPECT_EQ(run({"return-sub", data("fib.sub"), "--prefix", "0 1"}).code, 0);
  const Outcome pair = run({"cobham", "--left", data("sigma.sub"), "--right", data("tau.sub"), "--coding-left", "phi"});
  EXPECT_EQ(pair.code, 0) << pair.err;
  EXPECT_NE(pair.out.find("(1, 1)"), std::string::npos) << pair.out;
}

TEST(Cli, GateFailureExitsOne) {
  const Outcome r = run({"cobham", "--left", data("morse.sub"), "--right", data("cyclic3.sub")});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, ExhaustedBoundExitsThreeAndNeverClaimsIndependence) {
  const Outcome r = run({"cobham", "--left", data("morse.sub"), "--right", data("cyclic3.sub"), "--skip-gate"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("no witness <= 12"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("independent"), std::string::npos);
}

TEST(Cli, UsageAndInputErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({"spectrum"}).code, 2);
  EXPECT_EQ(run({"spectrum", "/nonexistent.sub"}).code, 2);
  EXPECT_EQ(run({"return-sub", data("fib.sub"), "--prefix", "1"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, JsonIsDeterministic) {
  const std::vector<std::string> args{"--json", "return-sub", data("morse.sub"), "--prefix", "0 1 1"};
  const Outcome a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  for (const char* key : {"command", "config", "checks", "result", "status"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_FALSE(j.contains("time"));
  EXPECT_EQ(j["status"], 0);
}

TEST(Cli, HumanOutputEndsWithTime) {
  const Outcome r = run({"spectrum", data("fib.sub")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.rfind("time: "), std::string::npos);
  EXPECT_EQ(r.out.back(), '\n');
}
