#include <random>

#include "catch.hpp"
#include "loclang/closure.hpp"
#include "loclang/dsl.hpp"
#include "loclang/error.hpp"
#include "loclang/evaluator.hpp"
#include "loclang/examples.hpp"
#include "loclang/search.hpp"
#include "loclang/structure_json.hpp"
#include "oracles.hpp"
#include "random_structures.hpp"

using namespace loclang;

namespace {

const Alphabet kAB{"a", "b"};

FiniteStructure witness(const std::string& word, const LocalSentence& ls = example_sentence("sigma_word")) {
  auto r = decide_membership(parse_word(word), ls);
  REQUIRE(r.accepted);
  return *r.witness;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> out;
  for (int i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

// Brute-force indiscernibility: values of every term with at most k function
// applications over the tuple, P and the constants, then every atomic formula
// over those values.
bool brute_indiscernible(const FiniteStructure& m, const std::vector<int>& x, const std::vector<int>& p, int k,
                         int max_length) {
  const Signature& sig = m.signature();
  auto term_values = [&](const std::vector<int>& tuple) {
    std::vector<int> vals = tuple;
    for (int e : p) vals.push_back(e);
    for (const auto& c : sig.constants()) vals.push_back(m.constant(c.name));
    for (int depth = 0; depth < k; ++depth) {
      std::vector<int> next;
      for (const auto& f : sig.functions()) {
        std::vector<std::size_t> idx(f.arity, 0);
        while (true) {
          std::vector<int> args;
          for (auto i : idx) args.push_back(vals[i]);
          next.push_back(m.apply(f.name, args));
          std::size_t j = 0;
          for (; j < idx.size(); ++j) {
            if (++idx[j] < vals.size()) break;
            idx[j] = 0;
          }
          if (j == idx.size()) break;
        }
      }
      vals.insert(vals.end(), next.begin(), next.end());
    }
    return vals;
  };
  auto atom_truths = [&](const std::vector<int>& vals) {
    std::vector<bool> out;
    for (std::size_t i = 0; i < vals.size(); ++i)
      for (std::size_t j = 0; j < vals.size(); ++j) out.push_back(vals[i] == vals[j]);
    for (const auto& r : sig.relations()) {
      std::vector<std::size_t> idx(r.arity, 0);
      while (true) {
        std::vector<int> args;
        for (auto i : idx) args.push_back(vals[i]);
        out.push_back(m.holds(r.name, args));
        std::size_t j = 0;
        for (; j < idx.size(); ++j) {
          if (++idx[j] < vals.size()) break;
          idx[j] = 0;
        }
        if (j == idx.size()) break;
      }
    }
    return out;
  };
  for (int len = 1; len <= std::min<int>(max_length, static_cast<int>(x.size())); ++len) {
    std::vector<std::vector<bool>> seen;
    std::vector<int> pick(len);
    for (int i = 0; i < len; ++i) pick[i] = i;
    while (true) {
      std::vector<int> tuple;
      for (int i : pick) tuple.push_back(x[i]);
      seen.push_back(atom_truths(term_values(tuple)));
      if (seen.back() != seen.front()) return false;
      int i = len - 1;
      while (i >= 0 && pick[i] == static_cast<int>(x.size()) - len + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < len; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("word structures", "[model-core]") {
  FiniteStructure m = word_to_structure(parse_word("aba"), kAB);
  CHECK(m.size() == 3);
  CHECK(m.tuples("P_a") == std::vector<std::vector<int>>{{0}, {2}});
  CHECK(m.tuples("P_b") == std::vector<std::vector<int>>{{1}});
  CHECK(m.holds("<", {0, 2}));
  CHECK_FALSE(m.holds("<", {2, 0}));
  CHECK(word_to_structure(parse_word("λ"), kAB).size() == 0);
  CHECK_THROWS_AS(word_to_structure(parse_word("b"), {"a"}), LetterError);

  CHECK(structure_to_word(m, kAB) == parse_word("aba"));
  FiniteStructure bad = m;
  bad.set_relation("P_b", {0}, true);
  CHECK_THROWS_AS(structure_to_word(bad, kAB), StructureError);
  FiniteStructure cyclic = m;
  cyclic.set_relation("<", {2, 0}, true);
  CHECK_THROWS_AS(structure_to_word(cyclic, kAB), StructureError);
}

TEST_CASE("word round-trip on all short words", "[model-core]") {
  for (const auto& w : all_words({"a", "b", "c"}, 5)) CHECK(structure_to_word(word_to_structure(w, {"a", "b", "c"}), {"a", "b", "c"}) == w);
}

TEST_CASE("witness for ababba reduces to its word", "[model-core]") {
  FiniteStructure m = witness("ababba");
  CHECK(structure_to_word(m, kAB) == parse_word("ababba"));
  CHECK(reduct(m, word_signature(kAB)) == word_to_structure(parse_word("ababba"), kAB));
  CHECK(reduct(m, m.signature()) == m);
  Signature order;
  order.add_relation("<", 2);
  FiniteStructure bare = reduct(m, order);
  CHECK(bare.signature().size() == 1);
  CHECK(bare.tuples("<").size() == 15);
  Signature foreign;
  foreign.add_function("zz", 1);
  CHECK_THROWS_AS(reduct(m, foreign), StructureError);
}

TEST_CASE("term evaluation", "[model-core]") {
  FiniteStructure m = witness("ababba");
  int v = eval_term(m, Term::apply("f", {Term::var("x"), Term::var("y")}), {{"x", 0}, {"y", 2}});
  CHECK(m.holds("P_b", {v}));
  CHECK(v == 1);

  FiniteStructure w = word_to_structure(parse_word("aaaa"), kAB);
  CHECK(eval_term(w, Term::min({Term::var("x"), Term::var("y")}), {{"x", 3}, {"y", 1}}) == 1);

  Signature s;
  s.add_constant("A");
  FiniteStructure c(s, 6);
  c.set_constant("A", 5);
  CHECK(eval_term(c, Term::constant("A"), {}) == 5);
  CHECK_THROWS_AS(eval_term(c, Term::constant("B"), {}), UnknownSymbolError);
}

TEST_CASE("satisfaction", "[model-core]") {
  LocalSentence sigma = example_sentence("sigma_word");
  CHECK(satisfies(FiniteStructure(sigma.signature, 0), sigma.body).holds);

  LocalSentence ab = example_sentence("a_before_b");
  CHECK(satisfies(word_to_structure(parse_word("ab"), kAB), ab.body).holds);
  CHECK_FALSE(satisfies(word_to_structure(parse_word("ba"), kAB), ab.body).holds);

  SECTION("two a-pairs sharing an f-value break the decomposition and ordering conjuncts") {
    FiniteStructure m = witness("ababbabbba");
    REQUIRE(m.apply("f", {2, 5}) != m.apply("f", {0, 5}));
    m.set_function("f", {0, 5}, m.apply("f", {2, 5}));
    SatisfactionResult r = satisfies(m, sigma.body);
    REQUIRE_FALSE(r.holds);
    CHECK_FALSE(oracle::naive_eval(m, sigma.body.matrix, r.counterexample));

    SentenceDocument doc = parse_document(example_text("sigma_word"));
    REQUIRE(doc.body.children.size() == 11);
    std::vector<int> failing;
    for (int i = 0; i < 11; ++i)
      if (!oracle::naive_eval(m, doc.body.children[i])) failing.push_back(i);
    CHECK(failing == std::vector<int>{8, 9});
  }
}

TEST_CASE("compiled evaluation agrees with the naive evaluator", "[model-core]") {
  std::mt19937_64 rng(23);
  for (const auto& name : example_names()) {
    LocalSentence ls = example_sentence(name);
    CompiledSentence compiled(ls.body);
    int lo = ls.has_constants() ? 1 : 0;
    for (int n = lo; n <= 4; ++n) {
      bool all = testing_support::for_all_structures(ls.signature, n, 3e4, [&](const FiniteStructure& m) {
        bool expect = oracle::naive_satisfies(m, ls.body);
        REQUIRE(satisfies(m, ls.body).holds == expect);
        REQUIRE(compiled.check(m).holds == expect);
      });
      if (all) continue;
      for (int i = 0; i < 500; ++i) {
        FiniteStructure m = testing_support::random_structure(ls.signature, n, rng);
        bool expect = oracle::naive_satisfies(m, ls.body);
        INFO(name << " size " << n);
        REQUIRE(satisfies(m, ls.body).holds == expect);
        REQUIRE(compiled.check(m).holds == expect);
      }
    }
  }
}

TEST_CASE("closure walkthrough on the ababbabbba witness", "[model-core]") {
  FiniteStructure m = witness("ababbabbba");
  CHECK(m.apply("f", {5, 9}) == 6);
  CHECK(m.apply("f", {2, 9}) == 7);
  CHECK(m.apply("f", {0, 9}) == 8);

  SECTION("the trailing ab³a segment generates everything in two steps") {
    ClosureTrace t = closure(m, range(5, 9));
    CHECK(t.result() == range(0, 9));
    CHECK(t.steps() == 2);
    CHECK(t.stages[1] == std::vector<int>{0, 2, 5, 6, 7, 8, 9});
  }
  SECTION("the trailing b²a induces ababba") {
    ClosureTrace t = closure(m, {7, 8, 9});
    CHECK(t.result() == std::vector<int>{0, 1, 2, 7, 8, 9});
    CHECK(t.steps() == 2);
    FiniteStructure sub = generated_substructure(m, {7, 8, 9});
    CHECK(structure_to_word(sub, kAB) == parse_word("ababba"));
    CHECK(satisfies(sub, example_sentence("sigma_word").body).holds);
    // not an order segment: 3..6 are skipped
    CHECK(t.result().back() - t.result().front() + 1 != static_cast<int>(t.result().size()));
  }
  SECTION("a single a-position") {
    FiniteStructure sub = generated_substructure(m, {5});
    CHECK(structure_to_word(sub, kAB) == parse_word("a"));
    CHECK(satisfies(sub, example_sentence("sigma_word").body).holds);
  }
  SECTION("full universe") {
    CHECK(generated_substructure(m, range(0, 9)) == m);
  }
}

TEST_CASE("closure basics", "[model-core]") {
  FiniteStructure w = word_to_structure(parse_word("abab"), kAB);
  ClosureTrace t = closure(w, {});
  CHECK(t.stages.size() == 1);
  CHECK(t.steps() == 0);
  CHECK(t.result().empty());

  Signature s = word_signature(kAB);
  s.add_constant("c");
  FiniteStructure m = extend_signature(w, s);
  m.set_constant("c", 2);
  CHECK(closure(m, {}).result() == std::vector<int>{2});
  CHECK(closure(m, {}).steps() == 1);
}

TEST_CASE("closure invariants on random structures", "[model-core]") {
  std::mt19937_64 rng(99);
  Signature sig;
  sig.add_relation("<", 2);
  sig.add_function("g", 1);
  sig.add_function("h", 2);
  sig.add_constant("c");
  for (int n = 1; n <= 6; ++n)
    for (int i = 0; i < 40; ++i) {
      FiniteStructure m = testing_support::random_structure(sig, n, rng);
      for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> x;
        for (int e = 0; e < n; ++e)
          if (mask >> e & 1) x.push_back(e);
        ClosureTrace t = closure(m, x);
        for (std::size_t k = 1; k < t.stages.size(); ++k) REQUIRE(t.stages[k].size() > t.stages[k - 1].size());
        REQUIRE(closure(m, t.result()).steps() <= 1);
        REQUIRE(closure_step(m, t.result()) == t.result());
        std::vector<int> y = x;
        y.push_back(rng() % n);
        std::sort(y.begin(), y.end());
        y.erase(std::unique(y.begin(), y.end()), y.end());
        std::vector<int> big = closure(m, y).result();
        REQUIRE(std::includes(big.begin(), big.end(), t.result().begin(), t.result().end()));
      }
    }
}

TEST_CASE("universal sentences are preserved under generated substructures", "[model-core]") {
  std::mt19937_64 rng(5);
  std::vector<LocalSentence> sentences;
  for (const auto& name : example_names()) sentences.push_back(example_sentence(name));
  sentences.push_back(make_local(parse_sentence("forall x y . g(x) = g(y) -> x = y"), {"a"}, 1, "injective"));
  for (const auto& ls : sentences) {
    int found = 0;
    for (int n = ls.has_constants() ? 1 : 0; n <= 5; ++n)
      for (int i = 0; i < 3000 && found < 60; ++i) {
        FiniteStructure m = testing_support::random_structure(ls.signature, n, rng);
        if (!oracle::naive_satisfies(m, ls.body)) continue;
        ++found;
        for (int mask = 0; mask < (1 << n); ++mask) {
          std::vector<int> x;
          for (int e = 0; e < n; ++e)
            if (mask >> e & 1) x.push_back(e);
          if (x.empty() && !ls.has_constants()) continue;
          REQUIRE(oracle::naive_satisfies(generated_substructure(m, x), ls.body));
        }
      }
  }
}

TEST_CASE("indiscernibles", "[model-core]") {
  FiniteStructure w = word_to_structure(parse_word("abaab"), kAB);
  CHECK(is_indiscernible_above(w, {2}, {}, 3).indiscernible);
  CHECK(is_indiscernible_above(w, {0, 2, 3}, {}, 0).indiscernible);
  CHECK(brute_indiscernible(w, {0, 2, 3}, {}, 0, 3));
  auto mixed = is_indiscernible_above(w, {0, 1, 2}, {}, 0);
  CHECK_FALSE(mixed.indiscernible);
  CHECK_FALSE(mixed.atom.empty());

  SECTION("a-positions of sigma_word witnesses at complexity 1") {
    for (const char* word : {"ababba", "ababbabbba"}) {
      FiniteStructure m = witness(word);
      std::vector<int> as;
      for (int i = 0; i < m.size(); ++i)
        if (m.holds("P_a", {i})) as.push_back(i);
      std::vector<int> three(as.begin(), as.begin() + 3);
      bool expect = brute_indiscernible(m, three, {}, 1, 3);
      CHECK(is_indiscernible_above(m, three, {}, 1).indiscernible == expect);
      CHECK(expect);
      CHECK(is_indiscernible_above(m, as, {}, 1).indiscernible == brute_indiscernible(m, as, {}, 1, 3));
      // with a b-position as parameter the f-values become distinguishable
      std::vector<int> param{m.apply("f", {as[0], as[1]})};
      bool with_param = brute_indiscernible(m, three, param, 1, 3);
      CHECK(is_indiscernible_above(m, three, param, 1).indiscernible == with_param);
    }
  }
  SECTION("random structures agree with brute force") {
    std::mt19937_64 rng(8);
    Signature sig = word_signature(kAB);
    sig.add_function("g", 1);
    sig.add_function("h", 2);
    for (int i = 0; i < 200; ++i) {
      int n = 2 + static_cast<int>(rng() % 4);
      Word letters;
      for (int e = 0; e < n; ++e) letters.letters.push_back(rng() % 2 ? "a" : "b");
      FiniteStructure m = extend_signature(word_to_structure(letters, kAB), sig);
      FiniteStructure r = testing_support::random_structure(sig, n, rng);
      std::vector<int> cells = m.cells();
      const auto& layout = m.layout();
      for (int c = 0; c < layout.cell_count(); ++c) {
        auto sym = layout.decode(c).first;
        if (layout.signature().symbols()[sym].kind == SymbolKind::Function) cells[c] = r.cells()[c];
      }
      m = FiniteStructure(layout, cells);
      std::vector<int> x;
      for (int e = 0; e < n; ++e)
        if (rng() % 2) x.push_back(e);
      std::vector<int> p;
      if (rng() % 2) p.push_back(static_cast<int>(rng() % n));
      int k = static_cast<int>(rng() % 2);
      INFO("case " << i);
      CHECK(is_indiscernible_above(m, x, p, k).indiscernible == brute_indiscernible(m, x, p, k, 3));
    }
  }
  SECTION("X must be ordered") {
    FiniteStructure m = word_to_structure(parse_word("ab"), kAB);
    m.set_relation("<", {1, 0}, true);
    CHECK_THROWS_AS(is_indiscernible_above(m, {0, 1}, {}, 0), InvalidArgument);
  }
}

TEST_CASE("structure JSON", "[model-core]") {
  FiniteStructure m = witness("ababba");
  auto j = structure_to_json(m);
  CHECK(j["size"] == 6);
  CHECK(j["relations"]["P_a"]["tuples"] == nlohmann::ordered_json::parse("[[0],[2],[5]]"));
  CHECK(j["functions"]["f"]["table"].size() == 36);
  CHECK(structure_from_json(j) == m);
  CHECK(structure_from_json_text(structure_to_json_text(m)) == m);
  CHECK_THROWS(structure_from_json_text("{\"size\": 2, \"functions\": {\"g\": {\"arity\": 1, \"table\": [0, 7]}}}"));
}
