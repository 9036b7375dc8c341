#include <chrono>

#include "catch.hpp"
#include "loclang/closure.hpp"
#include "loclang/error.hpp"
#include "loclang/evaluator.hpp"
#include "loclang/examples.hpp"
#include "loclang/search.hpp"
#include "oracles.hpp"

using namespace loclang;

namespace {

std::vector<std::string> strs(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.str());
  return out;
}

void check_witness(const Word& w, const LocalSentence& ls, const FiniteStructure& m) {
  REQUIRE(oracle::naive_satisfies(m, ls.body));
  REQUIRE(reduct(m, word_signature(ls.alphabet)) == word_to_structure(w, ls.alphabet));
}

}  // namespace

TEST_CASE("sigma_word golden membership", "[search]") {
  LocalSentence ls = example_sentence("sigma_word");
  for (const char* w : {"λ", "a", "aba", "ababba", "ababbabbba"}) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = decide_membership(parse_word(w), ls);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    INFO(w);
    CHECK(r.status() == MembershipStatus::Accepted);
    CHECK(secs < 10);
    REQUIRE(r.witness);
    check_witness(parse_word(w), ls, *r.witness);
  }
  for (const char* w : {"b", "aa", "ab", "abba", "ababa", "ababb", "abababa", "ababbabbb", "ababbbabba", "aababba"}) {
    auto r = decide_membership(parse_word(w), ls);
    INFO(w);
    CHECK(r.status() == MembershipStatus::Rejected);
    CHECK(r.exhausted);
    CHECK_FALSE(r.witness);
  }
}

TEST_CASE("enumeration", "[search]") {
  LocalSentence sigma = example_sentence("sigma_word");
  CHECK(strs(enumerate_language(sigma, 3).words) == std::vector<std::string>{"λ", "a", "aba"});
  CHECK(strs(enumerate_language(sigma, 6).words) == std::vector<std::string>{"λ", "a", "aba", "ababba"});

  auto none = enumerate_language(example_sentence("no_words"), 5);
  CHECK(none.words.empty());
  CHECK(none.complete());
  auto all = enumerate_language(example_sentence("all_words"), 4);
  CHECK(all.words == all_words({"a", "b"}, 4));

  CHECK(strs(enumerate_language(example_sentence("anbn"), 6).words) ==
        std::vector<std::string>{"λ", "ab", "aabb", "aaabbb"});
  CHECK(strs(enumerate_language(example_sentence("remark_psi"), 3).words) ==
        std::vector<std::string>{"2", "02", "12", "22", "002", "012", "022", "112", "122", "222"});
  CHECK(strs(enumerate_language(example_sentence("even_a"), 3).words) ==
        std::vector<std::string>{"λ", "b", "aa", "bb", "aab", "aba", "baa", "bbb"});
}

TEST_CASE("language comparison", "[search]") {
  LocalSentence sigma = example_sentence("sigma_word");
  CHECK(language_equal_upto(sigma, sigma, 5).equal);
  auto cmp = language_equal_upto(sigma, example_sentence("all_words"), 5);
  CHECK_FALSE(cmp.equal);
  REQUIRE(cmp.counterexample);
  CHECK(cmp.counterexample->str() == "b");
}

TEST_CASE("argument checks", "[search]") {
  LocalSentence sigma = example_sentence("sigma_word");
  CHECK_THROWS_AS(decide_membership(parse_word("abc"), sigma), AlphabetMismatchError);
  LocalSentence broken = sigma;
  broken.alphabet = {"a", "b", "c"};
  CHECK_THROWS_AS(decide_membership(parse_word("a"), broken), InvalidArgument);
}

TEST_CASE("empty word and constants", "[search]") {
  CHECK(decide_membership(Word{}, example_sentence("all_words")).accepted);
  CHECK_FALSE(decide_membership(Word{}, example_sentence("no_words")).accepted);
  auto r = decide_membership(Word{}, example_sentence("ends_with_a"));
  CHECK(r.status() == MembershipStatus::Rejected);
}

TEST_CASE("budget exhaustion is reported separately", "[search]") {
  LocalSentence sigma = example_sentence("sigma_word");
  auto r = decide_membership(parse_word("ababbabbb"), sigma, 3);
  CHECK(r.status() == MembershipStatus::BudgetExhausted);
  CHECK_FALSE(r.exhausted);
  CHECK(r.nodes_explored <= 3);
}

TEST_CASE("budget monotonicity", "[search]") {
  LocalSentence sigma = example_sentence("sigma_word");
  for (const auto& w : all_words({"a", "b"}, 6)) {
    MembershipStatus prev = MembershipStatus::BudgetExhausted;
    for (long long budget : {1LL, 4LL, 16LL, 64LL, 256LL, kDefaultBudget}) {
      MembershipStatus s = decide_membership(w, sigma, budget).status();
      if (prev != MembershipStatus::BudgetExhausted) REQUIRE(s == prev);
      prev = s;
    }
    REQUIRE(prev != MembershipStatus::BudgetExhausted);
  }
}

TEST_CASE("witnesses are sound, including shuffled ones", "[search]") {
  for (const auto& name : example_names()) {
    LocalSentence ls = example_sentence(name);
    for (const auto& w : all_words(ls.alphabet, ls.alphabet.size() > 2 ? 4 : 5)) {
      auto r = decide_membership(w, ls);
      REQUIRE(r.status() != MembershipStatus::BudgetExhausted);
      if (!r.accepted) continue;
      INFO(name << " " << w.str());
      check_witness(w, ls, *r.witness);
      SearchOptions so;
      so.shuffle_seed = 17;
      auto s = decide_membership(w, ls, so);
      REQUIRE(s.accepted);
      check_witness(w, ls, *s.witness);
    }
  }
}

TEST_CASE("agreement with unpruned search on words up to length 4", "[search]") {
  for (const auto& name : example_names()) {
    LocalSentence ls = example_sentence(name);
    for (const auto& w : all_words(ls.alphabet, 4)) {
      auto r = decide_membership(w, ls);
      REQUIRE(r.exhausted);
      INFO(name << " " << w.str());
      auto brute = oracle::exhaustive_member(w, ls, 3e5);
      if (brute) REQUIRE(*brute == r.accepted);
      auto ref = oracle::reference_search(w, ls);
      REQUIRE(ref.complete);
      REQUIRE(ref.accepted == r.accepted);
    }
  }
}

TEST_CASE("reference search agrees with exhaustive expansion on tiny cases", "[search]") {
  for (const auto& name : example_names()) {
    LocalSentence ls = example_sentence(name);
    for (const auto& w : all_words(ls.alphabet, 3)) {
      auto brute = oracle::exhaustive_member(w, ls, 3e5);
      if (!brute) continue;
      INFO(name << " " << w.str());
      REQUIRE(oracle::reference_search(w, ls).accepted == *brute);
    }
  }
}

TEST_CASE("accepted witnesses generate accepted words", "[search]") {
  for (const auto& name : example_names()) {
    LocalSentence ls = example_sentence(name);
    for (const auto& w : enumerate_language(ls, ls.alphabet.size() > 2 ? 4 : 5).words) {
      FiniteStructure m = *decide_membership(w, ls).witness;
      int n = m.size();
      for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> x;
        for (int e = 0; e < n; ++e)
          if (mask >> e & 1) x.push_back(e);
        Word sub = structure_to_word(generated_substructure(m, x), ls.alphabet);
        INFO(name << " " << w.str() << " -> " << sub.str());
        REQUIRE(decide_membership(sub, ls).accepted);
      }
    }
  }
}
