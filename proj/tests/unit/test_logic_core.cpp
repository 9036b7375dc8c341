#include <random>

#include "catch.hpp"
#include "loclang/combinators.hpp"
#include "loclang/dsl.hpp"
#include "loclang/error.hpp"
#include "loclang/evaluator.hpp"
#include "loclang/examples.hpp"
#include "loclang/normal_form.hpp"
#include "oracles.hpp"
#include "random_structures.hpp"

using namespace loclang;

namespace {

int count_top_conjuncts(const Formula& f) { return f.kind == Formula::Kind::And ? static_cast<int>(f.children.size()) : 1; }

std::vector<std::string> names(const Signature& s) {
  std::vector<std::string> out;
  for (const auto& sym : s.symbols()) out.push_back(sym.name + "/" + std::to_string(sym.arity));
  std::sort(out.begin(), out.end());
  return out;
}

// Random sentences over R/1, S/2, g/1, c with universal quantifiers in
// positive position and existential ones under negations.
struct SentenceGen {
  std::mt19937_64 rng;
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  Term term(const std::vector<std::string>& vars, int depth) {
    int k = pick(depth > 0 ? 4 : 2);
    if (k == 0) return Term::constant("c");
    if (k == 1) return Term::var(vars[pick(static_cast<int>(vars.size()))]);
    if (k == 2) return Term::apply("g", {term(vars, depth - 1)});
    return Term::min({term(vars, depth - 1), term(vars, depth - 1)});
  }

  Formula atom(const std::vector<std::string>& vars) {
    switch (pick(4)) {
      case 0: return rel("R", {term(vars, 1)});
      case 1: return rel("S", {term(vars, 1), term(vars, 1)});
      case 2: return eq(term(vars, 1), term(vars, 1));
      default: return lt(term(vars, 1), term(vars, 1));
    }
  }

  Formula formula(std::vector<std::string> vars, int depth, bool positive, int& fresh) {
    if (depth == 0) return atom(vars);
    switch (pick(6)) {
      case 0: return conj({formula(vars, depth - 1, positive, fresh), formula(vars, depth - 1, positive, fresh)});
      case 1: return disj({formula(vars, depth - 1, positive, fresh), formula(vars, depth - 1, positive, fresh)});
      case 2: return neg(formula(vars, depth - 1, !positive, fresh));
      case 3: return implies(formula(vars, depth - 1, !positive, fresh), formula(vars, depth - 1, positive, fresh));
      case 4: {
        std::string v = pick(2) && !vars.empty() ? vars[0] : "v" + std::to_string(fresh++);
        vars.push_back(v);
        Formula body = formula(vars, depth - 1, positive, fresh);
        return positive ? forall({v}, body) : exists({v}, body);
      }
      default: return atom(vars);
    }
  }

  Formula sentence(int depth) {
    int fresh = 0;
    return forall({"x"}, formula({"x"}, depth, true, fresh));
  }
};

Signature small_signature() {
  Signature s;
  s.add_relation("<", 2);
  s.add_relation("R", 1);
  s.add_relation("S", 2);
  s.add_function("g", 1);
  s.add_constant("c");
  return s;
}

}  // namespace

TEST_CASE("parse a two-variable universal sentence", "[logic-core]") {
  Formula f = parse_sentence("forall x y . x <= y | y <= x");
  UniversalSentence u = to_universal_prenex(f);
  CHECK(u.prefix == std::vector<std::string>{"x", "y"});
  CHECK(is_quantifier_free(u.matrix));
}

TEST_CASE("sigma_word parses into eleven conjuncts", "[logic-core]") {
  SentenceDocument doc = parse_document(example_text("sigma_word"));
  CHECK(count_top_conjuncts(doc.body) == 11);
  CHECK(doc.alphabet == std::vector<std::string>{"a", "b"});
  CHECK(doc.bound == 2);
}

TEST_CASE("unclosed parenthesis is a syntax error with a position", "[logic-core]") {
  try {
    parse_sentence("forall x . f(x");
    FAIL("parse succeeded");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() >= 14);
  }
}

TEST_CASE("declared signature headers are enforced", "[logic-core]") {
  CHECK_THROWS_AS(parse_document("relations: R/1\nforall x . Q(x)"), UnknownSymbolError);
  CHECK_NOTHROW(parse_document("relations: R/1\nforall x . R(x)"));
}

TEST_CASE("render and parse round-trip", "[logic-core]") {
  SECTION("single atom") {
    Formula f = parse_sentence("forall x . P_a(x)");
    CHECK(parse_sentence(render_sentence(f)) == f);
  }
  SECTION("shipped examples") {
    for (const auto& name : example_names()) {
      Formula f = example_sentence(name).body.as_formula();
      INFO(name);
      CHECK(parse_sentence(render_sentence(f)) == f);
    }
  }
  SECTION("sigma_word text keeps all conjuncts") {
    std::string text = render_sentence(parse_document(example_text("sigma_word")).body);
    CHECK(count_top_conjuncts(parse_sentence(text)) == 11);
  }
  SECTION("union output") {
    LocalSentence u = union_sentence(example_sentence("sigma_word"), example_sentence("anbn"));
    Formula f = u.body.as_formula();
    CHECK(parse_sentence(render_sentence(f)) == f);
    LocalSentence again = parse_local_sentence(render_local_sentence(u));
    CHECK(again.body == u.body);
    CHECK(again.signature == u.signature);
  }
  SECTION("generated sentences") {
    SentenceGen gen{std::mt19937_64(7)};
    for (int i = 0; i < 300; ++i) {
      Formula f = gen.sentence(4);
      CHECK(parse_sentence(render_sentence(f)) == f);
    }
  }
}

TEST_CASE("signature_of", "[logic-core]") {
  Signature s = signature_of(example_sentence("sigma_word").body);
  CHECK(names(s) == std::vector<std::string>{"</2", "P_a/1", "P_b/1", "f/2", "p'/1", "p/1"});
  CHECK(signature_of(parse_sentence("forall x . x = x")).empty());
  CHECK_THROWS_AS(signature_of(parse_sentence("forall x . g(x) = g(x, x)")), ArityConflictError);
}

TEST_CASE("prenex normal form", "[logic-core]") {
  SECTION("prefix merge") {
    UniversalSentence u = to_universal_prenex(parse_sentence("(forall x . R(x)) & (forall y . Q(y))"));
    CHECK(u.prefix.size() == 2);
    CHECK(render_sentence(u.as_formula()) == "forall x y . R(x) & Q(y)");
  }
  SECTION("existentials are rejected") {
    CHECK_THROWS_AS(to_universal_prenex(parse_sentence("exists x . P_a(x)")), NotUniversalError);
    CHECK_THROWS_AS(to_universal_prenex(parse_sentence("!(forall x . P_a(x))")), NotUniversalError);
    CHECK_NOTHROW(to_universal_prenex(parse_sentence("!(exists x . P_a(x))")));
  }
  SECTION("sigma_word prenex agrees with the nested sentence on random structures of size <= 4") {
    Formula nested = parse_document(example_text("sigma_word")).body;
    UniversalSentence u = to_universal_prenex(nested);
    Signature sig = signature_of(nested);
    CHECK(signature_of(u) == sig);
    std::mt19937_64 rng(11);
    for (int n = 0; n <= 4; ++n)
      for (int i = 0; i < 400; ++i) {
        FiniteStructure m = testing_support::random_structure(sig, n, rng);
        REQUIRE(oracle::naive_eval(m, nested) == satisfies(m, u).holds);
      }
  }
  SECTION("generated sentences agree with their prenex form on all small structures") {
    SentenceGen gen{std::mt19937_64(3)};
    Signature sig = small_signature();
    std::mt19937_64 rng(5);
    for (int i = 0; i < 150; ++i) {
      Formula f = gen.sentence(4);
      UniversalSentence u = to_universal_prenex(f);
      Signature used = signature_of(f);
      REQUIRE(signature_of(u) == used);
      for (int n = 1; n <= 2; ++n)
        testing_support::for_all_structures(sig, n, 1e5, [&](const FiniteStructure& m) {
          REQUIRE(oracle::naive_eval(m, f) == oracle::naive_satisfies(m, u));
        });
      for (int n = 3; n <= 4; ++n)
        for (int k = 0; k < 30; ++k) {
          FiniteStructure m = testing_support::random_structure(sig, n, rng);
          REQUIRE(oracle::naive_eval(m, f) == oracle::naive_satisfies(m, u));
        }
    }
  }
}

TEST_CASE("validate", "[logic-core]") {
  LocalSentence ls = example_sentence("sigma_word");
  CHECK(validate(ls).empty());

  LocalSentence wider = make_local(ls.body, {"a", "b", "c"}, 2, "wider", ls.signature);
  auto diags = validate(wider);
  REQUIRE_FALSE(diags.empty());
  bool mentions = false;
  for (const auto& d : diags) mentions = mentions || d.find("P_c") != std::string::npos;
  CHECK(mentions);

  LocalSentence q = make_local(parse_sentence("forall x . Q_a(x)"), {"a"}, 1, "q");
  CHECK_FALSE(validate(q).empty());
}

TEST_CASE("local sentence files", "[logic-core]") {
  LocalSentence ls = parse_local_sentence("name: t\nalphabet: a b\nbound: 2\nforall x . P_a(x) | P_b(x)\n");
  CHECK(ls.name == "t");
  CHECK(ls.declared_bound == 2);
  CHECK(validate(ls).empty());
  LocalSentence again = parse_local_sentence(render_local_sentence(ls));
  CHECK(again.body == ls.body);
  CHECK(again.alphabet == ls.alphabet);
  CHECK_THROWS_AS(parse_local_sentence("alphabet: a\nbound: 0\ntrue\n"), SyntaxError);
}
