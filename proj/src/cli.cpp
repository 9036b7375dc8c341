#include "loclang/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "loclang/audit.hpp"
#include "loclang/closure.hpp"
#include "loclang/combinators.hpp"
#include "loclang/dsl.hpp"
#include "loclang/error.hpp"
#include "loclang/examples.hpp"
#include "loclang/lang_tools.hpp"
#include "loclang/search.hpp"
#include "loclang/structure_json.hpp"

#ifndef LOCLANG_SENTENCE_DIR
#define LOCLANG_SENTENCE_DIR ""
#endif

namespace loclang::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

LocalSentence resolve_sentence(const std::string& arg) {
  if (fs::exists(arg)) return load_local_sentence(arg);
  std::vector<std::string> dirs;
  if (const char* env = std::getenv("LOCLANG_SENTENCE_DIR"); env && *env) dirs.emplace_back(env);
  if (*LOCLANG_SENTENCE_DIR) dirs.emplace_back(LOCLANG_SENTENCE_DIR);
  for (const auto& d : dirs) {
    fs::path p = fs::path(d) / arg;
    if (fs::exists(p)) return load_local_sentence(p.string());
  }
  std::string stem = fs::path(arg).stem().string();
  for (const auto& name : example_names())
    if (name == stem) return example_sentence(name);
  throw InvalidArgument("no sentence file or shipped example named '" + arg + "'");
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Alphabet split_letters(const std::string& text) {
  Alphabet out;
  std::string cur;
  for (char c : text + " ") {
    if (c == ' ' || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

Alphabet without(const Alphabet& a, const std::string& letter) {
  Alphabet out;
  for (const auto& c : a)
    if (c != letter) out.push_back(c);
  return out;
}

/// "0,2,5-9" → {0, 2, 5, 6, 7, 8, 9}.
std::vector<int> parse_subset(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      auto dash = item.find('-');
      if (dash == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        int lo = std::stoi(item.substr(0, dash)), hi = std::stoi(item.substr(dash + 1));
        for (int i = lo; i <= hi; ++i) out.push_back(i);
      }
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad subset element '" + item + "'");
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

json words_json(const std::vector<Word>& words) {
  json a = json::array();
  for (const auto& w : words) a.push_back(w.str());
  return a;
}

json membership_json(const Word& w, const LocalSentence& ls, const MembershipResult& r) {
  json j;
  j["sentence"] = ls.name;
  j["word"] = w.str();
  j["status"] = to_string(r.status());
  j["accepted"] = r.accepted;
  j["exhausted"] = r.exhausted;
  j["nodes_explored"] = r.nodes_explored;
  j["witness"] = r.witness ? structure_to_json(*r.witness) : json();
  return j;
}

json trace_json(const ClosureTrace& t) {
  json stages = json::array();
  for (const auto& s : t.stages) stages.push_back(s);
  json j;
  j["stages"] = std::move(stages);
  j["steps"] = t.steps();
  j["result"] = t.result();
  return j;
}

std::string set_text(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

struct Common {
  bool json = false;
  long long budget = kDefaultBudget;
  int max_size = 7;
  std::uint64_t seed = 0;
};

int cmd_check(const std::string& path, const Common& c, std::ostream& out) {
  LocalSentence ls = resolve_sentence(path);
  auto diags = validate(ls);
  if (c.json) {
    json j;
    j["sentence"] = ls.name;
    j["valid"] = diags.empty();
    j["diagnostics"] = diags;
    j["alphabet"] = ls.alphabet;
    j["bound"] = ls.declared_bound ? json(*ls.declared_bound) : json();
    j["signature"] = ls.signature.to_string();
    j["prefix_length"] = ls.body.prefix.size();
    j["text"] = render_local_sentence(ls);
    out << j.dump(2) << "\n";
  } else {
    out << (diags.empty() ? "VALID" : "INVALID") << "\n";
    for (const auto& d : diags) out << "  " << d << "\n";
    out << render_local_sentence(ls);
  }
  return diags.empty() ? kOk : kNegative;
}

int cmd_member(const std::string& path, const std::string& word, bool witness, const Common& c, std::ostream& out) {
  LocalSentence ls = resolve_sentence(path);
  Word w = parse_word(word);
  SearchOptions so;
  so.budget = c.budget;
  MembershipResult r = decide_membership(w, ls, so);
  if (c.json) {
    out << membership_json(w, ls, r).dump(2) << "\n";
  } else {
    out << to_string(r.status()) << "\n";
    if (witness && r.witness) out << structure_to_json_text(*r.witness, 2) << "\n";
  }
  switch (r.status()) {
    case MembershipStatus::Accepted: return kOk;
    case MembershipStatus::Rejected: return kNegative;
    case MembershipStatus::BudgetExhausted: return kInconclusive;
  }
  return kError;
}

int cmd_enum(const std::string& path, int max_len, const Common& c, std::ostream& out) {
  LocalSentence ls = resolve_sentence(path);
  Enumeration e = enumerate_language(ls, max_len, c.budget);
  if (c.json) {
    json j;
    j["sentence"] = ls.name;
    j["max_len"] = max_len;
    j["words"] = words_json(e.words);
    j["undecided"] = words_json(e.undecided);
    j["complete"] = e.complete();
    j["nodes_explored"] = e.nodes_explored;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& w : e.words) out << w.str() << "\n";
    for (const auto& w : e.undecided) out << "# undecided: " << w.str() << "\n";
  }
  return e.complete() ? kOk : kInconclusive;
}

struct CombineArgs {
  std::string op, left, right, map, marker, out, target, name;
  bool guard = false;
};

int cmd_combine(const CombineArgs& a, const Common& c, std::ostream& out) {
  LocalSentence left = resolve_sentence(a.left);
  auto need = [&](const std::string& value, const char* flag) {
    if (value.empty()) throw InvalidArgument("--op " + a.op + " needs " + flag);
  };
  LocalSentence result;
  if (a.op == "union" || a.op == "concat") {
    need(a.right, "--right");
    LocalSentence right = resolve_sentence(a.right);
    result = a.op == "union" ? union_sentence(left, right) : concat_sentence(left, right, a.guard);
  } else if (a.op == "subst") {
    need(a.map, "--map");
    std::string base = fs::path(a.map).parent_path().string();
    SubstitutionSpec spec =
        parse_substitution(read_file(a.map), left.alphabet, split_letters(a.target), base.empty() ? "." : base);
    result = substitution_sentence(left, spec, c.budget);
  } else if (a.op == "morph") {
    need(a.map, "--map");
    Alphabet source = a.marker.empty() ? left.alphabet : without(left.alphabet, a.marker);
    AlphabeticMorphism h = parse_morphism(read_file(a.map), source, split_letters(a.target));
    result = morphism_sentence(left, h, a.marker.empty() ? std::nullopt : std::optional<std::string>(a.marker));
  } else if (a.op == "invmorph") {
    need(a.map, "--map");
    need(a.marker, "--marker");
    AlphabeticMorphism h = parse_morphism(read_file(a.map), {}, without(left.alphabet, a.marker));
    result = inverse_morphism_sentence(left, h, a.marker);
  } else {
    throw InvalidArgument("unknown --op '" + a.op + "'");
  }
  if (!a.name.empty()) result.name = a.name;
  if (!a.out.empty()) {
    save_local_sentence(result, a.out);
    if (c.json) {
      json j;
      j["sentence"] = result.name;
      j["path"] = a.out;
      j["bound"] = result.declared_bound ? json(*result.declared_bound) : json();
      out << j.dump(2) << "\n";
    } else {
      out << "wrote " << a.out << "\n";
    }
  } else {
    out << render_local_sentence(result);
  }
  return kOk;
}

int cmd_closure(const std::string& path, const std::string& model, const std::string& word,
                const std::string& subset, const Common& c, std::ostream& out) {
  std::optional<LocalSentence> ls;
  FiniteStructure m;
  if (!model.empty()) {
    m = structure_from_json_text(read_file(model));
    if (!path.empty()) ls = resolve_sentence(path);
  } else {
    if (path.empty() || word.empty()) throw InvalidArgument("closure needs --model, or --sentence with --word");
    ls = resolve_sentence(path);
    SearchOptions so;
    so.budget = c.budget;
    MembershipResult r = decide_membership(parse_word(word), *ls, so);
    if (!r.accepted) {
      out << to_string(r.status()) << "\n";
      return r.exhausted ? kNegative : kInconclusive;
    }
    m = *r.witness;
  }
  std::vector<int> x = parse_subset(subset);
  for (int e : x)
    if (e < 0 || e >= m.size()) throw InvalidArgument("subset element " + std::to_string(e) + " out of range");
  ClosureTrace t = closure(m, x);
  std::optional<std::string> induced;
  if (ls) {
    FiniteStructure sub = induced_substructure(m, t.result());
    induced = structure_to_word(sub, ls->alphabet).str();
  }
  if (c.json) {
    json j = trace_json(t);
    j["induced_word"] = induced ? json(*induced) : json();
    out << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < t.stages.size(); ++i) out << "stage " << i << ": " << set_text(t.stages[i]) << "\n";
    out << "steps: " << t.steps() << "\n";
    if (induced) out << "induced word: " << *induced << "\n";
  }
  return kOk;
}

int cmd_audit(const std::string& path, int extra, int samples, const Common& c, std::ostream& out) {
  LocalSentence ls = resolve_sentence(path);
  AuditOptions o;
  o.max_size = c.max_size;
  o.budget = c.budget;
  o.seed = c.seed;
  o.extra_models_per_word = extra;
  o.sampled_subsets = samples;
  LocalityAudit a = audit_locality(ls, o);
  if (c.json) {
    json j = json::array({a.closure_bound.to_json(), a.substructure.to_json()});
    out << j.dump(2) << "\n";
  } else {
    out << a.closure_bound.summary() << a.substructure.summary();
  }
  Verdict worst = a.closure_bound.verdict;
  if (a.substructure.verdict == Verdict::Falsified || worst == Verdict::Consistent) worst = a.substructure.verdict;
  if (worst == Verdict::Falsified) return kNegative;
  return worst == Verdict::Inconclusive ? kInconclusive : kOk;
}

int cmd_antidyck(const std::vector<std::string>& tokens, const Common& c, std::ostream& out) {
  std::string text;
  for (const auto& t : tokens) text += t;
  ParenWord w = parse_paren_word(text);
  bool reduce = antidyck_member(w), fifo = fifo_member(w);
  if (reduce != fifo) throw Error("reduction and queue recognizers disagree on " + render_paren_word(w));
  if (c.json) {
    json j;
    j["word"] = render_paren_word(w);
    j["member"] = reduce;
    out << j.dump(2) << "\n";
  } else {
    out << (reduce ? "MEMBER" : "NOT MEMBER") << "\n";
  }
  return reduce ? kOk : kNegative;
}

int cmd_sigma(int n, const std::string& u, const std::string& v, std::size_t horizon, const Common& c,
              std::ostream& out) {
  if (v.empty()) {
    if (n < 0) throw InvalidArgument("sigma needs --n, or --v for a divergence check");
    Word w = sigma_prefix(static_cast<std::size_t>(n));
    if (c.json) {
      json j;
      j["n"] = n;
      j["prefix"] = w.str();
      out << j.dump(2) << "\n";
    } else {
      out << w.str() << "\n";
    }
    return kOk;
  }
  Word uw = parse_word(u), vw = parse_word(v);
  auto hit = ultimately_periodic_divergence(uw, vw, horizon);
  if (c.json) {
    json j;
    j["u"] = uw.str();
    j["v"] = vw.str();
    j["horizon"] = horizon;
    j["divergence"] = hit ? json(*hit) : json();
    out << j.dump(2) << "\n";
  } else if (hit) {
    out << "DIVERGES AT " << *hit << "\n";
  } else {
    out << "NO DIVERGENCE WITHIN " << horizon << "\n";
  }
  return hit ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local sentences over words: membership, enumeration, constructions and audits", "loclang"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool sizes) {
    sub->add_flag("--json", common.json, "Machine-readable output");
    sub->add_option("--budget", common.budget, "Search nodes per membership call")->capture_default_str();
    if (sizes) {
      sub->add_option("--max-size", common.max_size, "Largest word length audited")->capture_default_str();
      sub->add_option("--seed", common.seed, "Seed for witness shuffling and subset sampling")->capture_default_str();
    }
  };

  std::string sentence, word, model, subset, u, v;
  int max_len = 4, n = -1, extra = 2, samples = 1000;
  std::size_t horizon = 60;
  bool witness = false;
  CombineArgs ca;
  std::vector<std::string> parens;

  auto* check = app.add_subcommand("check", "Parse and validate a sentence file");
  check->add_option("--sentence,sentence", sentence, "Sentence file or example name")->required();
  add_common(check, false);

  auto* member = app.add_subcommand("member", "Decide membership of a word");
  member->add_option("--sentence", sentence, "Sentence file or example name")->required();
  member->add_option("--word", word, "Word, one letter per character; λ or - for the empty word")->required();
  member->add_flag("--witness", witness, "Print the expansion found");
  add_common(member, false);

  auto* enumerate = app.add_subcommand("enum", "List accepted words up to a length");
  enumerate->add_option("--sentence", sentence, "Sentence file or example name")->required();
  enumerate->add_option("--max-len", max_len, "Longest word length")->capture_default_str();
  add_common(enumerate, false);

  auto* combine = app.add_subcommand("combine", "Build the sentence of a language operation");
  combine->add_option("--op", ca.op, "union, concat, subst, morph or invmorph")
      ->required()
      ->check(CLI::IsMember({"union", "concat", "subst", "morph", "invmorph"}));
  combine->add_option("--left", ca.left, "First operand")->required();
  combine->add_option("--right", ca.right, "Second operand (union, concat)");
  combine->add_option("--map", ca.map, "Morphism or substitution file");
  combine->add_option("--target", ca.target, "Target alphabet, space or comma separated");
  combine->add_flag("--guard", ca.guard, "Require a greatest element in the left operand (concat)");
  combine->add_option("--marker", ca.marker, "Marker letter (morph, invmorph)");
  combine->add_option("--name", ca.name, "Name of the output sentence");
  combine->add_option("--out", ca.out, "Write the sentence to this file");
  add_common(combine, false);

  auto* clos = app.add_subcommand("closure", "Closure stages of a subset of a model");
  clos->add_option("--sentence", sentence, "Sentence whose witness is used");
  clos->add_option("--word", word, "Word whose witness is used");
  clos->add_option("--model", model, "Structure JSON file");
  clos->add_option("--subset", subset, "Elements, e.g. 0,2,5-9")->required();
  add_common(clos, false);

  auto* audit = app.add_subcommand("audit", "Search small models for locality counterexamples");
  audit->add_option("--sentence,sentence", sentence, "Sentence file or example name")->required();
  audit->add_option("--extra-models", extra, "Shuffled witnesses per accepted word")->capture_default_str();
  audit->add_option("--samples", samples, "Subsets sampled per model when not exhaustive")->capture_default_str();
  add_common(audit, true);

  auto* anti = app.add_subcommand("antidyck", "Antidyck membership of a parenthesis word");
  anti->add_option("word", parens, "Letters y1 y2 Y1 Y2; λ for the empty word");
  add_common(anti, false);

  auto* sigma = app.add_subcommand("sigma", "Prefixes of abab²ab³… and periodic divergence");
  sigma->add_option("--n", n, "Prefix length");
  sigma->add_option("--u", u, "Prefix of the ultimately periodic word");
  sigma->add_option("--v", v, "Period of the ultimately periodic word");
  sigma->add_option("--horizon", horizon, "Positions compared")->capture_default_str();
  add_common(sigma, false);

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  if (cargv.empty()) cargv.push_back("loclang");
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*check) return cmd_check(sentence, common, out);
    if (*member) return cmd_member(sentence, word, witness, common, out);
    if (*enumerate) return cmd_enum(sentence, max_len, common, out);
    if (*combine) return cmd_combine(ca, common, out);
    if (*clos) return cmd_closure(sentence, model, word, subset, common, out);
    if (*audit) return cmd_audit(sentence, extra, samples, common, out);
    if (*anti) return cmd_antidyck(parens, common, out);
    if (*sigma) return cmd_sigma(n, u, v, horizon, common, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace loclang::cli
