#include "loclang/combinators.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "loclang/audit.hpp"
#include "loclang/error.hpp"
#include "loclang/examples.hpp"
#include "loclang/search.hpp"

namespace loclang {

namespace {

using Renaming = std::map<std::string, std::string>;

/// Body and signature of a sentence while it is being rewritten.
struct Part {
  UniversalSentence body;
  Signature signature;
  Alphabet alphabet;
  std::string name;
  std::optional<int> bound;
};

Part part_of(const LocalSentence& ls) { return {ls.body, ls.signature, ls.alphabet, ls.name, ls.declared_bound}; }

Signature rename_signature(const Signature& sig, const Renaming& r) {
  Signature out;
  for (const auto& s : sig.symbols()) {
    auto it = r.find(s.name);
    out.add({it == r.end() ? s.name : it->second, s.kind, s.arity});
  }
  return out;
}

Part renamed(Part p, const Renaming& r) {
  p.body.matrix = rename_symbols(p.body.matrix, r);
  p.signature = rename_signature(p.signature, r);
  return p;
}

void add_names(const Part& p, std::set<std::string>& out) {
  for (const auto& v : all_variable_names(p.body.as_formula())) out.insert(v);
  for (const auto& s : p.signature.symbols()) out.insert(s.name);
  for (const auto& a : p.alphabet) out.insert(letter_predicate(a));
}

std::set<std::string> names_of(const LocalSentence& ls) {
  std::set<std::string> out;
  add_names(part_of(ls), out);
  return out;
}

std::set<std::string> as_set(const Alphabet& a) { return {a.begin(), a.end()}; }

void require_same_alphabet(const Alphabet& a, const Alphabet& b, const std::string& what) {
  if (as_set(a) != as_set(b)) throw AlphabetMismatchError(what + ": alphabets differ");
}

Term v(const std::string& name) { return Term::var(name); }

std::vector<Term> apply_args(const std::vector<std::string>& vars, int arity) {
  return var_terms(std::vector<std::string>(vars.begin(), vars.begin() + arity));
}

Formula pred(const std::string& p, const Term& t) { return rel(p, {t}); }

/// ∀x̄ [guard(x̄) -> f(x̄) = min(x̄)] where guard says some argument is (not) in P.
Formula trivialized_off(const Symbol& f, const std::string& p, bool off_means_not_in) {
  auto xs = numbered_vars("x", f.arity);
  std::vector<Formula> outside;
  for (const auto& x : xs) {
    Formula in = pred(p, v(x));
    outside.push_back(off_means_not_in ? neg(in) : in);
  }
  return forall(xs, implies(disj(std::move(outside)), eq(Term::apply(f.name, var_terms(xs)), Term::min(var_terms(xs)))));
}

/// ∀x̄ f(x̄) = min(x̄).
Formula trivialized(const Symbol& f) {
  auto xs = numbered_vars("x", f.arity);
  return forall(xs, eq(Term::apply(f.name, var_terms(xs)), Term::min(var_terms(xs))));
}

/// ∀x̄ ∈ (¬)P [(¬)P(f(x̄))].
Formula stays_in(const Symbol& f, const std::string& p, bool negated) {
  auto xs = numbered_vars("x", f.arity);
  Formula image = pred(p, Term::apply(f.name, var_terms(xs)));
  return forall(xs, relativize(xs, p, negated, negated ? neg(image) : image));
}

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f.kind == Formula::Kind::And) {
    for (const auto& c : f.children) flatten_and(c, out);
  } else {
    out.push_back(f);
  }
}

/// Prefix variables occurring free in `f`, in prefix order; the first prefix
/// variable when there are none.
std::vector<std::string> used_prefix(const Formula& f, const std::vector<std::string>& prefix) {
  std::set<std::string> fv = free_variables(f);
  std::vector<std::string> out;
  for (const auto& x : prefix)
    if (fv.count(x)) out.push_back(x);
  if (out.empty() && !prefix.empty()) out.push_back(prefix.front());
  return out;
}

/// ∀x̄ ∈ (¬)P [matrix], one relativized conjunct per top-level conjunct of the
/// matrix, each guarding the variables it uses.
Formula relativized_body(const UniversalSentence& u, const std::string& p, bool negated) {
  std::vector<Formula> conjuncts, out;
  flatten_and(u.matrix, conjuncts);
  for (auto& c : conjuncts) {
    auto vars = used_prefix(c, u.prefix);
    out.push_back(forall(vars, relativize(vars, p, negated, std::move(c))));
  }
  return conj(std::move(out));
}

/// Matrix of `u` with its prefix variables renamed to `targets` (same length or longer).
Formula matrix_over(const UniversalSentence& u, const std::vector<std::string>& targets) {
  std::set<std::string> used = all_variable_names(u.as_formula());
  for (const auto& t : targets) used.insert(t);
  Renaming to_temp, to_target;
  for (std::size_t i = 0; i < u.prefix.size(); ++i) {
    std::string tmp = fresh_name("_v" + std::to_string(i), used);
    to_temp[u.prefix[i]] = tmp;
    to_target[tmp] = targets[i];
  }
  return rename_free_variables(rename_free_variables(u.matrix, to_temp), to_target);
}

std::optional<int> combined_bound(Construction c, const std::vector<std::optional<int>>& inputs) {
  std::vector<int> known;
  for (const auto& b : inputs) {
    if (!b) return std::nullopt;
    known.push_back(*b);
  }
  return declared_bound_for(c, known);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

void note_letter(Alphabet& alphabet, const std::string& letter) {
  if (std::find(alphabet.begin(), alphabet.end(), letter) == alphabet.end()) alphabet.push_back(letter);
}

struct MappingLine {
  std::string letter;
  std::string image;
};

std::vector<MappingLine> mapping_lines(std::string_view text) {
  std::vector<MappingLine> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto arrow = t.find("->");
    if (arrow == std::string::npos) throw SyntaxError("expected 'letter -> image'", number, 1);
    MappingLine m{trim(std::string_view(t).substr(0, arrow)), trim(std::string_view(t).substr(arrow + 2))};
    if (m.letter.empty()) throw SyntaxError("missing letter before '->'", number, 1);
    out.push_back(std::move(m));
  }
  return out;
}

/// A constant-free sentence with an empty prefix is closed; if it rejects λ it
/// has no models at all.
bool denotes_empty(const LocalSentence& ls) {
  return ls.body.prefix.empty() && !ls.has_constants() && !decide_membership(Word{}, ls).accepted;
}

LocalSentence empty_language(const Alphabet& alphabet, std::optional<int> bound, std::string name) {
  return make_local(f_false(), alphabet, bound, std::move(name), word_signature(alphabet));
}

}  // namespace

void AlphabeticMorphism::check() const {
  check_alphabet(source);
  check_alphabet(target);
  std::set<std::string> tgt = as_set(target);
  for (const auto& c : source) {
    auto it = images.find(c);
    if (it == images.end()) throw InvalidArgument("morphism does not map letter '" + c + "'");
    if (it->second && !tgt.count(*it->second))
      throw InvalidArgument("image '" + *it->second + "' of '" + c + "' is not a target letter");
  }
  std::set<std::string> src = as_set(source);
  for (const auto& [c, _] : images)
    if (!src.count(c)) throw InvalidArgument("morphism maps '" + c + "', which is not a source letter");
}

bool AlphabeticMorphism::is_erasing() const {
  return std::any_of(images.begin(), images.end(), [](const auto& kv) { return !kv.second.has_value(); });
}

bool AlphabeticMorphism::is_canonical_erasing() const {
  return std::all_of(images.begin(), images.end(),
                     [](const auto& kv) { return !kv.second.has_value() || *kv.second == kv.first; });
}

std::vector<std::string> AlphabeticMorphism::erased() const {
  std::vector<std::string> out;
  for (const auto& c : source)
    if (!images.at(c)) out.push_back(c);
  return out;
}

std::vector<std::string> AlphabeticMorphism::preimage(const std::string& c) const {
  std::vector<std::string> out;
  for (const auto& d : source) {
    const auto& img = images.at(d);
    if (img && *img == c) out.push_back(d);
  }
  return out;
}

Word AlphabeticMorphism::apply(const Word& w) const {
  Word out;
  for (const auto& c : w.letters) {
    auto it = images.find(c);
    if (it == images.end()) throw LetterError("letter '" + c + "' is not in the source alphabet");
    if (it->second) out.letters.push_back(*it->second);
  }
  return out;
}

AlphabeticMorphism parse_morphism(std::string_view text, Alphabet source, Alphabet target) {
  AlphabeticMorphism h;
  bool collect_source = source.empty(), collect_target = target.empty();
  h.source = std::move(source);
  h.target = std::move(target);
  for (const auto& m : mapping_lines(text)) {
    if (h.images.count(m.letter)) throw InvalidArgument("letter '" + m.letter + "' mapped twice");
    if (collect_source) note_letter(h.source, m.letter);
    if (m.image.empty() || m.image == "λ" || m.image == "-") {
      h.images[m.letter] = std::nullopt;
    } else {
      h.images[m.letter] = m.image;
      if (collect_target) note_letter(h.target, m.image);
    }
  }
  h.check();
  return h;
}

void SubstitutionSpec::check() const {
  check_alphabet(source);
  check_alphabet(target);
  for (const auto& a : source) {
    auto it = images.find(a);
    if (it == images.end()) throw InvalidArgument("substitution does not map letter '" + a + "'");
    require_same_alphabet(it->second.alphabet, target, "image of '" + a + "'");
  }
  if (images.size() != source.size()) throw InvalidArgument("substitution maps letters outside its source alphabet");
}

SubstitutionSpec parse_substitution(std::string_view text, Alphabet source, Alphabet target,
                                    const std::string& base_dir) {
  SubstitutionSpec spec;
  bool collect_source = source.empty(), collect_target = target.empty();
  spec.source = std::move(source);
  spec.target = std::move(target);
  std::vector<std::pair<std::string, std::vector<Word>>> word_sets;
  for (const auto& m : mapping_lines(text)) {
    if (spec.images.count(m.letter)) throw InvalidArgument("letter '" + m.letter + "' mapped twice");
    if (collect_source) note_letter(spec.source, m.letter);
    if (!m.image.empty() && m.image.front() == '@') {
      LocalSentence ls = load_local_sentence(base_dir + "/" + trim(m.image.substr(1)));
      if (collect_target)
        for (const auto& c : ls.alphabet) note_letter(spec.target, c);
      spec.images.emplace(m.letter, std::move(ls));
      continue;
    }
    std::vector<Word> words;
    std::string rest = m.image;
    std::size_t start = 0;
    while (true) {
      auto bar = rest.find('|', start);
      Word w = parse_word(trim(std::string_view(rest).substr(start, bar == std::string::npos ? bar : bar - start)));
      if (w.empty()) throw InvalidArgument("image of '" + m.letter + "' contains the empty word");
      if (collect_target)
        for (const auto& c : w.letters) note_letter(spec.target, c);
      words.push_back(std::move(w));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    word_sets.emplace_back(m.letter, std::move(words));
  }
  for (auto& [letter, words] : word_sets)
    spec.images.emplace(letter, word_set_sentence(words, spec.target, "words_" + letter));
  spec.check();
  return spec;
}

Formula linear_order_axiom() {
  Term x = v("x"), y = v("y"), z = v("z");
  return forall({"x", "y", "z"}, conj({neg(lt(x, x)), implies(conj({lt(x, y), lt(y, z)}), lt(x, z)),
                                       disj({lt(x, y), eq(x, y), lt(y, x)})}));
}

Formula partition_axiom(const std::vector<std::string>& predicates) {
  Term x = v("x");
  std::vector<Formula> some, disjoint;
  for (std::size_t i = 0; i < predicates.size(); ++i) {
    some.push_back(pred(predicates[i], x));
    for (std::size_t j = i + 1; j < predicates.size(); ++j)
      disjoint.push_back(neg(conj({pred(predicates[i], x), pred(predicates[j], x)})));
  }
  std::vector<Formula> parts{disj(std::move(some))};
  for (auto& d : disjoint) parts.push_back(std::move(d));
  return forall({"x"}, conj(std::move(parts)));
}

std::pair<LocalSentence, LocalSentence> rename_apart(const LocalSentence& phi1, const LocalSentence& phi2,
                                                     const Signature& keep) {
  std::set<std::string> first = names_of(phi1);
  std::set<std::string> used = first;
  for (const auto& n : names_of(phi2)) used.insert(n);
  Renaming r;
  for (const auto& s : phi2.signature.symbols())
    if (!keep.contains_name(s.name) && first.count(s.name)) r[s.name] = fresh_name(s.name, used);
  LocalSentence out = phi2;
  if (!r.empty()) {
    out.body.matrix = rename_symbols(phi2.body.matrix, r);
    out.signature = rename_signature(phi2.signature, r);
  }
  return {phi1, out};
}

LocalSentence union_sentence(const LocalSentence& phi1, const LocalSentence& phi2) {
  require_same_alphabet(phi1.alphabet, phi2.alphabet, "union");
  auto [a, b] = rename_apart(phi1, phi2, word_signature(phi1.alphabet));
  std::vector<Formula> left{a.body.as_formula()}, right{b.body.as_formula()};
  for (const auto& g : b.signature.functions()) left.push_back(trivialized(g));
  for (const auto& g : a.signature.functions()) right.push_back(trivialized(g));
  Formula body = disj({conj(std::move(left)), conj(std::move(right))});

  std::optional<int> bound;
  if (a.declared_bound && b.declared_bound)
    bound = declared_bound_for(Construction::Union, {*a.declared_bound + (b.has_constants() ? 1 : 0),
                                                     *b.declared_bound + (a.has_constants() ? 1 : 0)});
  return make_local(body, phi1.alphabet, bound, "union(" + a.name + ", " + b.name + ")",
                    a.signature.merged(b.signature));
}

LocalSentence concat_sentence(const LocalSentence& phi_in, const LocalSentence& psi_in,
                              bool add_greatest_element_guard) {
  require_same_alphabet(phi_in.alphabet, psi_in.alphabet, "concatenation");
  if (denotes_empty(phi_in) || denotes_empty(psi_in)) {
    std::optional<int> left = phi_in.declared_bound;
    if (left && add_greatest_element_guard) ++*left;
    return empty_language(phi_in.alphabet, combined_bound(Construction::Concat, {left, psi_in.declared_bound}),
                          "concat(" + phi_in.name + ", " + psi_in.name + ")");
  }
  LocalSentence guarded = add_greatest_element_guard ? with_greatest_element(phi_in) : phi_in;
  Signature word = word_signature(phi_in.alphabet);
  auto [phi, psi] = rename_apart(guarded, psi_in, word);
  std::set<std::string> used = names_of(phi);
  for (const auto& n : names_of(psi)) used.insert(n);
  std::string p = fresh_name("P", used);

  std::vector<std::string> letters;
  for (const auto& a : phi.alphabet) letters.push_back(letter_predicate(a));

  std::vector<Formula> parts{linear_order_axiom(), partition_axiom(letters)};
  parts.push_back(forall({"x", "y"}, implies(conj({pred(p, v("x")), neg(pred(p, v("y")))}), lt(v("x"), v("y")))));
  parts.push_back(relativized_body(phi.body, p, false));
  for (const auto& f : phi.signature.functions()) {
    parts.push_back(stays_in(f, p, false));
    parts.push_back(trivialized_off(f, p, true));
  }
  for (const auto& c : phi.signature.constants()) parts.push_back(pred(p, Term::constant(c.name)));
  parts.push_back(relativized_body(psi.body, p, true));
  for (const auto& f : psi.signature.functions()) {
    parts.push_back(stays_in(f, p, true));
    parts.push_back(trivialized_off(f, p, false));
  }
  for (const auto& c : psi.signature.constants()) parts.push_back(neg(pred(p, Term::constant(c.name))));

  Signature sig = phi.signature.merged(psi.signature).merged(word);
  sig.add_relation(p, 1);
  auto bound = combined_bound(Construction::Concat, {phi.declared_bound, psi.declared_bound});
  return make_local(conj(std::move(parts)), phi_in.alphabet, bound, "concat(" + phi.name + ", " + psi.name + ")",
                    sig);
}

LocalSentence substitution_sentence(const LocalSentence& phi_in, const SubstitutionSpec& spec, long long budget) {
  spec.check();
  require_same_alphabet(phi_in.alphabet, spec.source, "substitution source");
  for (const auto& a : spec.source) {
    MembershipResult r = decide_membership(Word{}, spec.images.at(a), budget);
    if (r.accepted) throw InvalidArgument("image language of '" + a + "' contains the empty word");
    if (!r.exhausted) throw InvalidArgument("could not decide whether the image of '" + a + "' contains λ");
  }
  if (denotes_empty(phi_in)) {
    std::vector<std::optional<int>> bounds{phi_in.declared_bound};
    for (const auto& [a, img] : spec.images) bounds.push_back(img.declared_bound);
    return empty_language(spec.target, combined_bound(Construction::Substitution, bounds), "subst(" + phi_in.name + ")");
  }
  Signature gamma = word_signature(spec.target);
  std::set<std::string> used;
  add_names(part_of(phi_in), used);
  for (const auto& [_, ls] : spec.images) add_names(part_of(ls), used);
  for (const auto& s : gamma.symbols()) used.insert(s.name);

  // φ: letter predicates become Q_a; other clashes with Λ_Γ are renamed.
  Renaming main_r;
  std::map<std::string, std::string> q;
  for (const auto& a : phi_in.alphabet) q[a] = main_r[letter_predicate(a)] = fresh_name("Q_" + a, used);
  for (const auto& s : phi_in.signature.symbols())
    if (!main_r.count(s.name) && s.name != kOrderSymbol && gamma.contains_name(s.name))
      main_r[s.name] = fresh_name(s.name, used);
  Part main = renamed(part_of(phi_in), main_r);

  std::set<std::string> taken;
  for (const auto& s : main.signature.symbols()) taken.insert(s.name);

  // φ_i: renamed apart outside Λ_Γ, constants lifted to unary functions.
  struct Image {
    UniversalSentence body;
    std::vector<Symbol> lifted;     // former constants, now unary functions
    std::vector<Symbol> functions;  // own functions
    std::vector<Symbol> relations;  // own relations outside Λ_Γ
    Signature signature;
    std::optional<int> bound;
  };
  std::vector<Image> images;
  for (const auto& a : spec.source) {
    Part pi = part_of(spec.images.at(a));
    Renaming r;
    for (const auto& s : pi.signature.symbols())
      if (!gamma.contains(s) && taken.count(s.name)) r[s.name] = fresh_name(s.name, used);
    pi = renamed(pi, r);
    Image img;
    img.bound = pi.bound;
    for (const auto& s : pi.signature.symbols()) {
      if (gamma.contains(s)) continue;
      taken.insert(s.name);
      switch (s.kind) {
        case SymbolKind::Constant: img.lifted.push_back({s.name, SymbolKind::Function, 1}); break;
        case SymbolKind::Function: img.functions.push_back(s); break;
        case SymbolKind::Relation: img.relations.push_back(s); break;
      }
    }
    img.body = pi.body;
    for (const auto& s : pi.signature.symbols())
      img.signature.add(s.kind == SymbolKind::Constant ? Symbol{s.name, SymbolKind::Function, 1} : s);
    images.push_back(std::move(img));
  }

  std::string I = fresh_name("I", used);
  std::string P = fresh_name("P", used);
  auto Iof = [&](const Term& t) { return Term::apply(I, {t}); };

  std::vector<Formula> parts{linear_order_axiom()};
  {
    Term x = v("x"), y = v("y");
    parts.push_back(forall({"x", "y"}, conj({le(Iof(y), y), implies(le(y, x), le(Iof(y), Iof(x))),
                                              implies(conj({le(Iof(y), x), le(x, y)}), eq(Iof(x), Iof(y)))})));
    parts.push_back(forall({"x"}, iff(eq(Iof(x), x), pred(P, x))));
  }
  for (const auto& c : main.signature.constants()) parts.push_back(pred(P, Term::constant(c.name)));
  for (const auto& r : main.signature.relations()) {
    if (r.name == kOrderSymbol) continue;
    auto xs = numbered_vars("x", r.arity);
    std::vector<Formula> inside;
    for (const auto& x : xs) inside.push_back(pred(P, v(x)));
    parts.push_back(forall(xs, implies(rel(r.name, var_terms(xs)), conj(std::move(inside)))));
  }
  {
    std::vector<std::string> qs;
    for (const auto& a : spec.source) qs.push_back(q.at(a));
    std::vector<Formula> some, disjoint;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      some.push_back(pred(qs[i], v("x")));
      for (std::size_t j = i + 1; j < qs.size(); ++j)
        disjoint.push_back(neg(conj({pred(qs[i], v("x")), pred(qs[j], v("x"))})));
    }
    parts.push_back(forall({"x"}, implies(pred(P, v("x")), conj({disj(std::move(some)), conj(std::move(disjoint))}))));
  }
  for (const auto& f : main.signature.functions()) {
    parts.push_back(stays_in(f, P, false));
    parts.push_back(trivialized_off(f, P, true));
  }
  parts.push_back(relativized_body(main.body, P, false));

  auto all_functions = [](const Image& img) {
    std::vector<Symbol> out = img.lifted;
    out.insert(out.end(), img.functions.begin(), img.functions.end());
    return out;
  };
  for (const auto& img : images) {
    for (const auto& f : all_functions(img)) {
      if (f.arity < 2) continue;
      auto xs = numbered_vars("x", f.arity);
      std::vector<Formula> differ;
      for (int i = 0; i < f.arity; ++i)
        for (int k = i + 1; k < f.arity; ++k) differ.push_back(neg(eq(Iof(v(xs[i])), Iof(v(xs[k])))));
      parts.push_back(forall(xs, implies(disj(std::move(differ)),
                                         eq(Term::apply(f.name, var_terms(xs)), Term::min(var_terms(xs))))));
    }
  }
  for (const auto& img : images) {
    for (const auto& f : all_functions(img)) {
      auto ys = numbered_vars("y", f.arity);
      std::vector<Formula> same;
      for (const auto& y : ys) same.push_back(eq(Iof(v(y)), Iof(v("x"))));
      std::vector<std::string> vars{"x"};
      vars.insert(vars.end(), ys.begin(), ys.end());
      parts.push_back(forall(vars, implies(conj(std::move(same)),
                                           eq(Iof(Term::apply(f.name, var_terms(ys))), Iof(v("x"))))));
    }
  }

  int width = 1;
  for (const auto& img : images) {
    width = std::max(width, static_cast<int>(img.body.prefix.size()));
    for (const auto& s : img.signature.symbols()) width = std::max(width, s.arity);
  }
  auto ys = numbered_vars("y", width);
  Term y1 = v(ys[0]);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Image& img = images[i];
    Formula local = matrix_over(img.body, ys);
    for (const auto& e : img.lifted) local = replace_constant(local, e.name, Term::apply(e.name, {y1}));
    std::vector<Formula> rhs;
    flatten_and(local, rhs);
    for (std::size_t j = 0; j < images.size(); ++j) {
      if (j == i) continue;
      for (const auto& e : images[j].lifted) rhs.push_back(eq(Term::apply(e.name, {y1}), Iof(v("x"))));
      for (const auto& f : images[j].functions) rhs.push_back(eq(Term::apply(f.name, apply_args(ys, f.arity)), y1));
      for (const auto& r : images[j].relations) rhs.push_back(neg(rel(r.name, apply_args(ys, r.arity))));
    }
    for (const auto& e : img.lifted)
      rhs.push_back(eq(Term::apply(e.name, {y1}), Term::apply(e.name, {v("x")})));
    Formula in_block = pred(q.at(spec.source[i]), Iof(v("x")));
    for (auto& c : rhs) {
      std::set<std::string> fv = free_variables(c);
      std::vector<std::string> vars{"x"};
      std::vector<Formula> guard{};
      for (const auto& y : ys) {
        if (!fv.count(y)) continue;
        vars.push_back(y);
        guard.push_back(eq(Iof(v(y)), Iof(v("x"))));
      }
      guard.push_back(in_block);
      parts.push_back(forall(vars, implies(conj(std::move(guard)), std::move(c))));
    }
  }

  Signature sig = main.signature.merged(gamma);
  for (const auto& img : images) sig = sig.merged(img.signature);
  sig.add_function(I, 1);
  sig.add_relation(P, 1);

  std::vector<std::optional<int>> bounds{main.bound};
  for (const auto& img : images) bounds.push_back(img.bound);
  auto bound = combined_bound(Construction::Substitution, bounds);
  return make_local(conj(std::move(parts)), spec.target, bound, "subst(" + phi_in.name + ")", sig);
}

LocalSentence morphism_sentence(const LocalSentence& phi, const AlphabeticMorphism& h,
                                std::optional<std::string> marker) {
  h.check();
  if (h.is_erasing()) throw InvalidArgument("morphism_sentence needs a non-erasing morphism");
  Alphabet source = h.source, target = h.target;
  if (marker) {
    if (as_set(source).count(*marker) || as_set(target).count(*marker))
      throw InvalidArgument("marker letter '" + *marker + "' must lie outside both alphabets");
    source.push_back(*marker);
    target.push_back(*marker);
  }
  require_same_alphabet(phi.alphabet, source, "morphism source");
  if (denotes_empty(phi))
    return empty_language(target, combined_bound(Construction::Morphism, {phi.declared_bound}), "morph(" + phi.name + ")");
  auto image = [&](const std::string& c) { return marker && c == *marker ? c : *h.images.at(c); };

  Signature lambda_target = word_signature(target);
  std::set<std::string> used = names_of(phi);
  for (const auto& s : lambda_target.symbols()) used.insert(s.name);
  Renaming r;
  std::vector<std::string> qs;
  for (const auto& c : source) qs.push_back(r[letter_predicate(c)] = fresh_name("Q_" + c, used));
  for (const auto& s : phi.signature.symbols())
    if (!r.count(s.name) && s.name != kOrderSymbol && lambda_target.contains_name(s.name))
      r[s.name] = fresh_name(s.name, used);
  Part p = renamed(part_of(phi), r);

  std::vector<Formula> transfer;
  for (std::size_t i = 0; i < source.size(); ++i)
    transfer.push_back(implies(pred(qs[i], v("x")), pred(letter_predicate(image(source[i])), v("x"))));
  std::vector<std::string> letters;
  for (const auto& c : target) letters.push_back(letter_predicate(c));

  Formula body = conj({p.body.as_formula(), forall({"x"}, conj(std::move(transfer))), partition_axiom(letters),
                       partition_axiom(qs)});
  Signature sig = p.signature.merged(lambda_target);
  auto bound = combined_bound(Construction::Morphism, {phi.declared_bound});
  return make_local(body, target, bound, "morph(" + phi.name + ")", sig);
}

LocalSentence inverse_morphism_sentence(const LocalSentence& phi, const AlphabeticMorphism& h,
                                        const std::string& marker) {
  h.check();
  if (as_set(h.source).count(marker) || as_set(h.target).count(marker))
    throw InvalidArgument("marker letter '" + marker + "' must lie outside both alphabets");
  Alphabet gamma = h.target;
  gamma.push_back(marker);
  require_same_alphabet(phi.alphabet, gamma, "inverse morphism target");
  Alphabet sigma = h.source;
  sigma.push_back(marker);

  Signature lambda_sigma = word_signature(sigma);
  std::set<std::string> used = names_of(phi);
  for (const auto& s : lambda_sigma.symbols()) used.insert(s.name);
  Renaming r;
  std::map<std::string, std::string> q;
  for (const auto& c : gamma) q[c] = r[letter_predicate(c)] = fresh_name("Q_" + c, used);
  for (const auto& s : phi.signature.symbols())
    if (!r.count(s.name) && s.name != kOrderSymbol && lambda_sigma.contains_name(s.name))
      r[s.name] = fresh_name(s.name, used);
  Part p = renamed(part_of(phi), r);
  std::string P = fresh_name("P", used);
  std::string A = fresh_name("A", used);
  const std::string pm = letter_predicate(marker);

  std::vector<std::string> letters;
  for (const auto& c : sigma) letters.push_back(letter_predicate(c));
  std::vector<Formula> parts{linear_order_axiom(), partition_axiom(letters)};

  std::vector<std::string> prefix = p.body.prefix;
  if (prefix.empty()) prefix.push_back(fresh_name("x", used));
  Term x1 = v(prefix[0]);
  std::vector<Formula> inner;
  flatten_and(p.body.matrix, inner);
  for (const auto& c : h.target) {
    std::vector<Formula> from;
    for (const auto& d : h.preimage(c)) from.push_back(pred(letter_predicate(d), x1));
    inner.push_back(iff(pred(q.at(c), x1), disj(std::move(from))));
  }
  inner.push_back(iff(pred(q.at(marker), x1), pred(pm, x1)));
  parts.push_back(relativized_body({prefix, conj(std::move(inner))}, P, false));

  for (const auto& g : p.signature.functions()) {
    parts.push_back(stays_in(g, P, false));
    auto xs = numbered_vars("x", g.arity);
    std::vector<Formula> outside;
    for (const auto& x : xs) outside.push_back(neg(pred(P, v(x))));
    parts.push_back(forall(xs, implies(disj(std::move(outside)), eq(Term::apply(g.name, var_terms(xs)), v(xs[0])))));
  }
  {
    std::vector<std::string> erased;
    for (const auto& c : h.erased()) erased.push_back(letter_predicate(c));
    std::vector<Formula> cover, disjoint, inside;
    for (std::size_t i = 0; i < erased.size(); ++i) {
      cover.push_back(pred(erased[i], v("x")));
      inside.push_back(implies(pred(erased[i], v("x")), neg(pred(P, v("x")))));
      for (std::size_t j = i + 1; j < erased.size(); ++j)
        disjoint.push_back(neg(conj({pred(erased[i], v("x")), pred(erased[j], v("x"))})));
    }
    Formula off = neg(pred(P, v("x")));
    std::vector<Formula> partition{implies(off, disj(std::move(cover)))};
    if (!disjoint.empty()) partition.push_back(implies(off, conj(std::move(disjoint))));
    for (auto& f : inside) partition.push_back(std::move(f));
    parts.push_back(forall({"x"}, conj(std::move(partition))));
  }
  for (const auto& c : p.signature.constants()) parts.push_back(pred(P, Term::constant(c.name)));
  parts.push_back(forall({"x", "y"}, implies(conj({neg(pred(pm, v("y"))), pred(pm, v("x"))}), lt(v("y"), v("x")))));
  parts.push_back(pred(pm, Term::constant(A)));

  Signature sig = p.signature.merged(lambda_sigma);
  sig.add_relation(P, 1);
  sig.add_constant(A);
  auto bound = combined_bound(Construction::InverseMorphism, {phi.declared_bound});
  return make_local(conj(std::move(parts)), sigma, bound, "invmorph(" + phi.name + ")", sig);
}

}  // namespace loclang
