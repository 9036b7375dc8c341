#include "loclang/local_sentence.hpp"

#include <fstream>
#include <sstream>

#include "loclang/error.hpp"
#include "loclang/normal_form.hpp"

namespace loclang {

std::string letter_predicate(std::string_view letter) { return "P_" + std::string(letter); }

void check_alphabet(const Alphabet& alphabet) {
  std::set<std::string> seen;
  for (const auto& a : alphabet) {
    if (a.empty() || !is_identifier(letter_predicate(a)))
      throw LetterError("letter '" + a + "' cannot name a letter predicate");
    if (!seen.insert(a).second) throw LetterError("letter '" + a + "' listed twice");
  }
}

Signature word_signature(const Alphabet& alphabet) {
  check_alphabet(alphabet);
  Signature sig;
  sig.add_relation(std::string(kOrderSymbol), 2);
  for (const auto& a : alphabet) sig.add_relation(letter_predicate(a), 1);
  return sig;
}

Signature LocalSentence::expansion_signature() const {
  Signature out;
  Signature word = word_signature(alphabet);
  for (const auto& s : signature.symbols())
    if (!word.contains(s)) out.add(s);
  return out;
}

LocalSentence make_local(UniversalSentence body, Alphabet alphabet, std::optional<int> bound, std::string name,
                         const Signature& extra) {
  if (!is_quantifier_free(body.matrix)) throw InvalidArgument("matrix of a universal sentence must be quantifier-free");
  check_alphabet(alphabet);
  LocalSentence ls;
  ls.name = std::move(name);
  ls.signature = signature_of(body).merged(extra);
  ls.body = std::move(body);
  ls.alphabet = std::move(alphabet);
  ls.declared_bound = bound;
  return ls;
}

LocalSentence make_local(const Formula& sentence, Alphabet alphabet, std::optional<int> bound, std::string name,
                         const Signature& extra) {
  return make_local(to_universal_prenex(sentence), std::move(alphabet), bound, std::move(name), extra);
}

LocalSentence parse_local_sentence(std::string_view text) {
  SentenceDocument doc = parse_document(text);
  if (!doc.alphabet) throw SyntaxError("missing 'alphabet:' header", 1, 1);
  Signature extra = doc.declared.value_or(Signature{}).merged(word_signature(*doc.alphabet));
  return make_local(doc.body, *doc.alphabet, doc.bound, doc.name, extra);
}

LocalSentence load_local_sentence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open sentence file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_local_sentence(os.str());
}

SentenceDocument to_document(const LocalSentence& ls) {
  SentenceDocument doc;
  doc.name = ls.name;
  doc.alphabet = ls.alphabet;
  doc.bound = ls.declared_bound;
  doc.declared = ls.signature;
  doc.body = ls.body.as_formula();
  return doc;
}

std::string render_local_sentence(const LocalSentence& ls) { return render_document(to_document(ls)); }

void save_local_sentence(const LocalSentence& ls, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write sentence file '" + path + "'");
  out << render_local_sentence(ls);
}

std::vector<std::string> validate(const LocalSentence& ls) {
  std::vector<std::string> diags;
  try {
    check_alphabet(ls.alphabet);
  } catch (const LetterError& e) {
    diags.emplace_back(e.what());
    return diags;
  }
  auto need = [&](const Symbol& s) {
    const Symbol* have = ls.signature.find(s.name);
    if (have == nullptr)
      diags.push_back(s.name + " missing from signature");
    else if (!(*have == s))
      diags.push_back(s.name + " must be a " + std::string(to_string(s.kind)) + " of arity " +
                      std::to_string(s.arity));
  };
  Signature word = word_signature(ls.alphabet);
  for (const auto& s : word.symbols()) need(s);
  if (ls.declared_bound && *ls.declared_bound < 1) diags.push_back("declared bound must be at least 1");
  if (!is_quantifier_free(ls.body.matrix)) diags.push_back("matrix contains a quantifier");
  std::set<std::string> prefix(ls.body.prefix.begin(), ls.body.prefix.end());
  if (prefix.size() != ls.body.prefix.size()) diags.push_back("prefix binds a variable twice");
  for (const auto& v : free_variables(ls.body.matrix))
    if (!prefix.count(v)) diags.push_back("variable '" + v + "' is not bound by the prefix");
  for (const auto& v : prefix)
    if (ls.signature.contains_name(v)) diags.push_back("variable '" + v + "' also names a symbol");
  try {
    if (!ls.signature.includes(signature_of(ls.body))) diags.push_back("signature does not cover the body");
  } catch (const ArityConflictError& e) {
    diags.emplace_back(e.what());
  }
  return diags;
}

}  // namespace loclang
