#include "loclang/examples.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "loclang/error.hpp"

namespace loclang {

namespace {

const char* const kSigmaWord = R"(name: sigma_word
alphabet: a b
bound: 2
(forall x y z . (x <= y | y <= x) & ((x <= y & y <= x) <-> x = y) & (x <= y & y <= z -> x <= z))
& (forall x . P_a(x) <-> !P_b(x))
& (forall x y . x < y & P_a(x) & P_a(y) -> P_b(f(x, y)))
& (forall x y . x >= y -> f(x, y) = x)
& (forall x y . !P_a(x) | !P_a(y) -> f(x, y) = x)
& (forall x . P_a(p(x)) & P_a(p'(x)))
& (forall x . !P_a(x) -> p(x) < p'(x))
& (forall x . P_a(x) -> p(x) = x & p'(x) = x)
& (forall x . !P_a(x) -> x = f(p(x), p'(x)))
& (forall x x' y in P_a . x < x' & x' < y -> f(x', y) < f(x, y) & f(x, y) < y)
& (forall x y y' in P_a . x <= y' & y' < y -> y' < f(x, y) & f(x, y) < y)
)";

const char* const kAllWords = R"(name: all_words
alphabet: a b
bound: 1
true
)";

const char* const kNoWords = R"(name: no_words
alphabet: a b
bound: 1
false
)";

const char* const kABeforeB = R"(name: a_before_b
alphabet: a b
bound: 1
forall x y . P_a(x) & P_b(y) -> x < y
)";

const char* const kAnBn = R"(name: anbn
alphabet: a b
bound: 1
(forall x y . P_a(x) & P_b(y) -> x < y)
& (forall x . (P_a(x) -> P_b(g(x)) & h(g(x)) = x)
            & (P_b(x) -> P_a(h(x)) & g(h(x)) = x)
            & (!P_a(x) -> g(x) = x)
            & (!P_b(x) -> h(x) = x))
)";

const char* const kEndsWithA = R"(name: ends_with_a
alphabet: a b
bound: 1
P_a(c) & (forall x . x <= c)
)";

const char* const kStartsWithB = R"(name: starts_with_b
alphabet: a b
bound: 1
P_b(d) & (forall x . d <= x)
)";

const char* const kSingleA = R"(name: single_a
alphabet: a b
bound: 1
P_a(c) & (forall x . P_a(x) -> x = c)
)";

const char* const kEvenA = R"(name: even_a
alphabet: a b
bound: 1
forall x . (P_a(x) -> P_a(m(x)) & m(m(x)) = x & m(x) != x) & (!P_a(x) -> m(x) = x)
)";

const std::map<std::string, const char*, std::less<>>& texts() {
  static const std::map<std::string, const char*, std::less<>> table = {
      {"sigma_word", kSigmaWord}, {"all_words", kAllWords},       {"no_words", kNoWords},
      {"a_before_b", kABeforeB},  {"anbn", kAnBn},                 {"ends_with_a", kEndsWithA},
      {"starts_with_b", kStartsWithB}, {"single_a", kSingleA},    {"even_a", kEvenA},
  };
  return table;
}

std::set<std::string> used_names(const LocalSentence& ls) {
  std::set<std::string> used = all_variable_names(ls.body.as_formula());
  for (const auto& s : ls.signature.symbols()) used.insert(s.name);
  for (const auto& a : ls.alphabet) used.insert(letter_predicate(a));
  return used;
}

Formula before(const std::string& first, const std::string& second) {
  return forall({"x", "y"}, implies(conj({rel(first, {Term::var("x")}), rel(second, {Term::var("y")})}),
                                    lt(Term::var("x"), Term::var("y"))));
}

}  // namespace

std::vector<std::string> example_names() {
  return {"sigma_word", "remark_psi", "all_words", "no_words",  "a_before_b",
          "anbn",       "ends_with_a", "starts_with_b", "single_a", "even_a"};
}

std::string example_text(std::string_view name) {
  if (name == "remark_psi") return render_local_sentence(example_sentence(name));
  auto it = texts().find(name);
  if (it == texts().end()) throw InvalidArgument("unknown example sentence '" + std::string(name) + "'");
  return it->second;
}

LocalSentence example_sentence(std::string_view name) {
  if (name == "remark_psi") {
    LocalSentence base = make_local(f_true(), {"0", "1", "2"}, 1, "true_012");
    LocalSentence psi = remark_psi(base);
    psi.name = "remark_psi";
    return psi;
  }
  auto it = texts().find(name);
  if (it == texts().end()) throw InvalidArgument("unknown example sentence '" + std::string(name) + "'");
  return parse_local_sentence(it->second);
}

LocalSentence remark_psi(const LocalSentence& phi) {
  std::set<std::string> alpha(phi.alphabet.begin(), phi.alphabet.end());
  if (alpha != std::set<std::string>{"0", "1", "2"})
    throw AlphabetMismatchError("remark_psi needs a sentence over the alphabet {0,1,2}");
  std::set<std::string> used = used_names(phi);
  std::string c = fresh_name("c", used);
  Formula body = conj({phi.body.as_formula(), before("P_0", "P_1"), before("P_1", "P_2"), before("P_0", "P_2"),
                       rel("P_2", {Term::constant(c)})});
  std::optional<int> bound;
  if (phi.declared_bound) bound = phi.signature.functions().empty() ? *phi.declared_bound : *phi.declared_bound + 1;
  return make_local(body, phi.alphabet, bound, phi.name.empty() ? "" : "remark_psi(" + phi.name + ")",
                    phi.signature);
}

LocalSentence word_set_sentence(const std::vector<Word>& words, const Alphabet& alphabet, std::string name) {
  if (words.empty()) throw InvalidArgument("word_set_sentence needs at least one word");
  std::size_t m = 0;
  for (const auto& w : words) {
    if (w.empty()) throw InvalidArgument("word_set_sentence only describes nonempty words");
    check_word(w, alphabet);
    m = std::max(m, w.size());
  }
  std::vector<Term> e;
  for (std::size_t j = 1; j <= m; ++j) e.push_back(Term::constant("e" + std::to_string(j)));

  std::vector<Formula> cover;
  for (const auto& t : e) cover.push_back(eq(Term::var("x"), t));

  std::vector<Formula> shapes;
  for (const auto& w : words) {
    std::vector<Formula> parts;
    std::size_t len = w.size();
    for (std::size_t j = 0; j + 1 < len; ++j) parts.push_back(lt(e[j], e[j + 1]));
    for (std::size_t j = len; j < m; ++j) parts.push_back(eq(e[len - 1], e[j]));
    for (std::size_t j = 0; j < len; ++j) parts.push_back(rel(letter_predicate(w[j]), {e[j]}));
    shapes.push_back(conj(std::move(parts)));
  }
  Formula body = conj({forall({"x"}, disj(std::move(cover))), disj(std::move(shapes))});
  Signature extra = word_signature(alphabet);
  return make_local(body, alphabet, 1, std::move(name), extra);
}

LocalSentence with_greatest_element(const LocalSentence& phi) {
  std::set<std::string> used = used_names(phi);
  std::string c = fresh_name("c", used);
  Formula body = conj({phi.body.as_formula(), forall({"x"}, le(Term::var("x"), Term::constant(c)))});
  std::optional<int> bound;
  if (phi.declared_bound) bound = *phi.declared_bound + 1;
  return make_local(body, phi.alphabet, bound, phi.name, phi.signature);
}

}  // namespace loclang
