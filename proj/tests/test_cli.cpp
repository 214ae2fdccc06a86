#include <doctest.h>

#include <random>

#include "mage/acceptance.hpp"
#include "mage/commands.hpp"
#include "mage/config.hpp"
#include "mage/errors.hpp"
#include "mage/report.hpp"

using namespace mage;

namespace {

std::string random_string(std::mt19937_64& rng) {
  static const std::string alphabet = "abc XYZ019_-+*/^()=[]{},.#\"\\\n\t";
  std::uniform_int_distribution<std::size_t> len(0, 12), pick(0, alphabet.size() - 1);
  std::string s;
  for (std::size_t n = len(rng); n > 0; --n) s += alphabet[pick(rng)];
  return s;
}

std::string random_key(std::mt19937_64& rng) {
  static const std::string alphabet = "abcxyz019_-.";
  std::uniform_int_distribution<std::size_t> len(1, 8), pick(0, alphabet.size() - 1);
  std::string s;
  for (std::size_t n = len(rng); n > 0; --n) s += alphabet[pick(rng)];
  return s;
}

void fill(Report& r, std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> count(0, 5), kind(0, 2), dim(0, 3);
  for (int n = count(rng); n > 0; --n) {
    int k = kind(rng);
    if (k == 2 && depth < 3) {
      fill(r.section(random_key(rng)), rng, depth + 1);
    } else if (k == 1) {
      Table t(dim(rng));
      for (auto& row : t) {
        row.resize(dim(rng));
        for (auto& cell : row) cell = random_string(rng);
      }
      r.set(random_key(rng), t);
    } else {
      r.set(random_key(rng), random_string(rng));
    }
  }
}

RunConfig config(std::string_view text) { return parse_config(text); }

}  // namespace

TEST_CASE("structured reports round-trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Report r;
    fill(r, rng, 0);
    std::string text = r.structured();
    Report back = Report::parse(text);
    CHECK(back == r);
    CHECK(back.structured() == text);
  }
}

TEST_CASE("structured syntax") {
  Report r;
  r.set("pfaffian", "1");
  r.set("rho", Table{{"0", "1"}, {"-1", "0"}});
  r.section("run").set("seed", "19777");
  CHECK(r.structured() ==
        "pfaffian = \"1\"\n"
        "rho = [\n"
        "  [\"0\", \"1\"]\n"
        "  [\"-1\", \"0\"]\n"
        "]\n"
        "run {\n"
        "  seed = \"19777\"\n"
        "}\n");
  CHECK(r.value("run.seed") == "19777");
  CHECK(r.find("missing") == nullptr);

  Report commented = Report::parse("# header\n\nkey = \"v\"  \n  # inner\nsec {\n}\n");
  CHECK(commented.value("key") == "v");
  REQUIRE(commented.find("sec"));
  CHECK(commented.find("sec")->kind == Report::Kind::Section);

  CHECK_THROWS_AS(Report::parse("key = v\n"), ParseError);
  CHECK_THROWS_AS(Report::parse("sec {\n"), ParseError);
  CHECK_THROWS_AS(Report::parse("}\n"), ParseError);
  CHECK_THROWS_AS(Report::parse("key = \"open\n"), ParseError);
  CHECK_THROWS_AS(Report::parse("t = [\n  [\"a\" \"b\"]\n]\n"), ParseError);
  try {
    Report::parse("a = \"1\"\nb ? \"2\"\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 10);
  }
}

TEST_CASE("text rendering aligns table columns") {
  Report r;
  r.set("m", Table{{"1", "-10"}, {"200", "3"}});
  CHECK(r.text() == "m:\n  1    -10\n  200  3\n");
}

TEST_CASE("config parsing") {
  RunConfig c = config(
      "# comment\n[structure]\nA = p\nC = 1\n\n[generalized]\neps2 = -1\neps3 = -1\na1 = 5/4\ndP = -2\n"
      "[run]\nseed = 0x10\ntolerance = 1e-6\nbox = 1.5\n");
  CHECK(c.structure.at("A") == "p");
  CHECK(c.structure.size() == 2);
  CHECK(c.eps == std::array<int, 3>{1, -1, -1});
  CHECK(c.combo[0] == "5/4");
  CHECK(c.generalized_dP == "-2");
  CHECK(c.seed == 16);
  CHECK(c.sample_options().tolerance == doctest::Approx(1e-6));
  CHECK(c.sample_options().half_width == doctest::Approx(1.5));

  CHECK_THROWS_AS(config("[nowhere]\n"), ParseError);
  CHECK_THROWS_AS(config("[structure]\nF = 1\n"), ParseError);
  CHECK_THROWS_AS(config("A = 1\n"), ParseError);
  CHECK_THROWS_AS(config("[structure]\nA = 1\nA = 2\n"), ParseError);
  CHECK_THROWS_AS(config("[generalized]\neps1 = 2\n"), ParseError);
  CHECK_THROWS_AS(config("[run]\ntolerance = 0\n"), ParseError);
  CHECK_THROWS_AS(config("[run]\nbox = -1\n"), ParseError);
  CHECK_THROWS_AS(config("[run]\nseed = twelve\n"), ParseError);
  CHECK_THROWS_AS(config("[structure\n"), ParseError);
}

TEST_CASE("classify command") {
  Report laplace = cmd_classify(config("[structure]\nA = -1\nC = -1\n"));
  CHECK(laplace.value("pfaffian") == "1");
  CHECK(laplace.value("class") == "elliptic");
  CHECK(laplace.value("integrable") == "yes");

  Report vk = cmd_classify(config("[structure]\nA = p\nC = 1\n"));
  CHECK(vk.value("pfaffian") == "p");
  CHECK(vk.value("class") == "indefinite");
  CHECK(vk.value("class.evidence") == "sampled");

  CHECK_THROWS_AS(cmd_classify(config("[structure]\n")), ParseError);
  CHECK_THROWS_AS(cmd_classify(config("[structure]\nA = \n")), ParseError);
  CHECK_THROWS_AS(cmd_classify(config("[structure]\nA = x +\n")), ParseError);
  CHECK_THROWS_AS(cmd_classify(config("[structure]\nA = 1\n")), DomainError);
}

TEST_CASE("generalized command") {
  Report hyper = cmd_generalized(config("[generalized]\ndP = 2\n"));
  CHECK(hyper.value("products.hyper_type") == "generalized hyper-complex");
  CHECK(hyper.value("metric.verdict") == "generalized Kahler structure");
  CHECK(hyper.value("integrability.J1.integrable") == "yes");

  Report chiral = cmd_generalized(config("[generalized]\ndP = -2\n"));
  CHECK(chiral.value("metric.construction") == "generalized chiral structure");
  CHECK(chiral.value("metric.commutator") == "zero (exact)");

  Report bad = cmd_generalized(config("[generalized]\neps1 = -1\n"));
  CHECK(bad.value("anticommutators.all_vanish") == "no");
  CHECK(bad.value("anticommutators.J1J2") == "nonzero (exact)");

  Report varying = cmd_generalized(config("[generalized]\ndP = 2 + x^2\n"));
  CHECK(varying.value("integrability.J1.integrable") == "no");
  CHECK(varying.value("classification.J2.type") == "not a generalized almost structure");
  CHECK(varying.value("products.status").starts_with("skipped"));

  Report seven = cmd_generalized(config("[generalized]\ndP = 7\n"));
  CHECK(seven.value("anticommutators.all_vanish") == "no");
  CHECK_THROWS_AS(cmd_algebra(config("[generalized]\ndP = 7\n")), DomainError);
}

TEST_CASE("fluids command") {
  Report rot = cmd_fluids(config("[fluids]\na = y\nb = -x\nf = (x^2 + y^2)/2\n"));
  CHECK(rot.value("dP") == "2");
  CHECK(rot.value("residual") == "0");
  CHECK(cmd_fluids(config("[fluids]\ndP = -2\n")).value("pfaffian") == "-1");
  try {
    cmd_fluids(config("[fluids]\na = x\nb = y\n"));
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("div v = 2") != std::string::npos);
  }
  CHECK_THROWS_AS(cmd_fluids(config("[fluids]\na = x\n")), ParseError);
  CHECK_THROWS_AS(cmd_fluids(RunConfig{}), ParseError);
}

TEST_CASE("algebra command") {
  Report q = cmd_algebra(config("[generalized]\n"));
  CHECK(q.value("dimension") == "4");
  CHECK(q.value("basis") == "Id, J1, J2, J3");
  const Report::Entry* assoc = q.find("tables.associative");
  REQUIRE(assoc);
  CHECK(assoc->table[2] == std::vector<std::string>{"J1", "J1", "-Id", "J3", "-J2"});
  CHECK(q.value("identities.lie_jordan.q2_minus_quarter").starts_with("holds"));
  CHECK(q.value("identities.lie_jordan.q2_plus_quarter").starts_with("fails"));

  Report s = cmd_algebra(config("[generalized]\neps2 = -1\neps3 = -1\n"));
  CHECK(s.value("dimension") == "4");
  CHECK(s.find("tables.associative")->table[3] == std::vector<std::string>{"J2", "J2", "-J3", "Id", "-J1"});

  CHECK_THROWS_WITH_AS(cmd_algebra(config("[generalized]\neps1 = -1\n")),
                       doctest::Contains("identities apply to anticommuting triples"), DomainError);
  CHECK_THROWS_AS(cmd_algebra(config("[generalized]\ndP = 2 + x^2\n")), DomainError);
}

TEST_CASE("reports are deterministic per seed") {
  RunConfig cfg = config("[generalized]\ndP = 2 + x^2\n");
  CHECK(cmd_generalized(cfg).structured() == cmd_generalized(cfg).structured());
  std::vector<CriterionResult> a = run_acceptance(), b = run_acceptance();
  CHECK(acceptance_report(a, {}).structured() == acceptance_report(b, {}).structured());
}
