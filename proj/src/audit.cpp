#include "loclang/audit.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

#include "loclang/closure.hpp"
#include "loclang/error.hpp"
#include "loclang/evaluator.hpp"
#include "loclang/structure_json.hpp"

namespace loclang {

std::string_view to_string(Construction c) {
  switch (c) {
    case Construction::Union: return "union";
    case Construction::Concat: return "concat";
    case Construction::Substitution: return "substitution";
    case Construction::Morphism: return "morphism";
    case Construction::InverseMorphism: return "inverse_morphism";
  }
  return "?";
}

std::optional<Construction> parse_construction(std::string_view tag) {
  for (auto c : {Construction::Union, Construction::Concat, Construction::Substitution, Construction::Morphism,
                 Construction::InverseMorphism})
    if (to_string(c) == tag) return c;
  return std::nullopt;
}

int declared_bound_for(Construction c, const std::vector<int>& bounds) {
  auto need = [&](std::size_t n) {
    if (bounds.size() != n)
      throw InvalidArgument(std::string(to_string(c)) + " takes " + std::to_string(n) + " bound(s)");
  };
  switch (c) {
    case Construction::Union:
    case Construction::Concat: need(2); return std::max(bounds[0], bounds[1]);
    case Construction::Substitution:
      if (bounds.size() < 2) throw InvalidArgument("substitution takes n_φ and at least one image bound");
      return 1 + bounds[0] + *std::max_element(bounds.begin() + 1, bounds.end());
    case Construction::Morphism: need(1); return bounds[0];
    case Construction::InverseMorphism: need(1); return bounds[0] + 1;
  }
  throw InvalidArgument("unknown construction");
}

int declared_bound_for(std::string_view tag, const std::vector<int>& bounds) {
  auto c = parse_construction(tag);
  if (!c) throw InvalidArgument("unknown construction '" + std::string(tag) + "'");
  return declared_bound_for(*c, bounds);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Falsified: return "falsified";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(ViolationKind k) {
  return k == ViolationKind::StepsExceeded ? "steps-exceeded" : "substructure-not-model";
}

nlohmann::ordered_json AuditReport::to_json() const {
  nlohmann::ordered_json j;
  j["sentence"] = sentence;
  j["kind"] = kind;
  j["models_checked"] = models_checked;
  j["subsets_checked"] = subsets_checked;
  j["max_steps_observed"] = max_steps_observed;
  j["declared_bound"] = declared_bound ? nlohmann::ordered_json(*declared_bound) : nlohmann::ordered_json();
  j["violation_count"] = violation_count;
  j["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : violations) {
    nlohmann::ordered_json e;
    e["word"] = v.word.str();
    e["subset"] = v.subset;
    e["kind"] = to_string(v.kind);
    e["steps"] = v.steps;
    e["model"] = structure_to_json(v.model);
    j["violations"].push_back(std::move(e));
  }
  j["undecided"] = nlohmann::ordered_json::array();
  for (const auto& w : undecided) j["undecided"].push_back(w.str());
  j["verdict"] = to_string(verdict);
  j["note"] = kNote;
  return j;
}

std::string AuditReport::summary() const {
  std::ostringstream os;
  os << kind << " audit of " << (sentence.empty() ? "(unnamed)" : sentence) << ": " << to_string(verdict) << "\n";
  os << "  models checked: " << models_checked << ", subsets checked: " << subsets_checked << "\n";
  os << "  max closure steps observed: " << max_steps_observed << ", declared bound: "
     << (declared_bound ? std::to_string(*declared_bound) : "unknown") << "\n";
  os << "  violations: " << violation_count << "\n";
  for (const auto& v : violations) {
    os << "    " << to_string(v.kind) << " on " << v.word.str() << " X={";
    for (std::size_t i = 0; i < v.subset.size(); ++i) os << (i ? "," : "") << v.subset[i];
    os << "} steps=" << v.steps << "\n";
  }
  if (!undecided.empty()) os << "  words left undecided by the budget: " << undecided.size() << "\n";
  os << "  note: " << kNote << "\n";
  return os.str();
}

namespace {

struct Model {
  Word word;
  FiniteStructure structure;
};

std::vector<Model> collect_models(const LocalSentence& ls, const AuditOptions& options, std::vector<Word>& undecided) {
  std::vector<Model> models;
  std::uint64_t index = 0;
  for (const auto& w : all_words(ls.alphabet, options.max_size)) {
    ++index;
    MembershipResult r = decide_membership(w, ls, options.budget);
    if (!r.accepted) {
      if (!r.exhausted) undecided.push_back(w);
      continue;
    }
    std::vector<FiniteStructure> found{*r.witness};
    for (int k = 1; k <= options.extra_models_per_word; ++k) {
      SearchOptions so;
      so.budget = options.budget;
      so.shuffle_seed = options.seed * 1000003ULL + index * 7919ULL + static_cast<std::uint64_t>(k);
      MembershipResult extra = decide_membership(w, ls, so);
      if (extra.accepted && std::find(found.begin(), found.end(), *extra.witness) == found.end())
        found.push_back(*extra.witness);
    }
    for (auto& m : found) models.push_back({w, std::move(m)});
  }
  return models;
}

std::vector<std::vector<int>> subsets_of(int n, const AuditOptions& options, std::uint64_t salt) {
  std::vector<std::vector<int>> out;
  auto from_mask = [n](std::uint64_t mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1U) s.push_back(i);
    return s;
  };
  if (n < 63 && (std::uint64_t{1} << n) <= static_cast<std::uint64_t>(options.sampled_subsets)) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) out.push_back(from_mask(mask));
    return out;
  }
  std::mt19937_64 rng(options.seed ^ (salt * 0x9E3779B97F4A7C15ULL));
  for (int i = 0; i < options.sampled_subsets; ++i) {
    std::uint64_t mask = rng();
    if (n < 64) mask &= (std::uint64_t{1} << n) - 1;
    out.push_back(from_mask(mask));
  }
  return out;
}

AuditReport blank(const LocalSentence& ls, std::string kind) {
  AuditReport r;
  r.sentence = ls.name;
  r.kind = std::move(kind);
  r.declared_bound = ls.declared_bound;
  return r;
}

void record(AuditReport& r, const AuditOptions& options, Violation v) {
  ++r.violation_count;
  if (r.violations.size() < options.max_reported_violations) r.violations.push_back(std::move(v));
}

void finish(AuditReport& r) {
  if (r.violation_count > 0)
    r.verdict = Verdict::Falsified;
  else if (!r.undecided.empty())
    r.verdict = Verdict::Inconclusive;
  else
    r.verdict = Verdict::Consistent;
}

}  // namespace

LocalityAudit audit_locality(const LocalSentence& ls, const AuditOptions& options) {
  auto diags = validate(ls);
  if (!diags.empty()) throw InvalidArgument("invalid local sentence: " + diags.front());
  LocalityAudit out{blank(ls, "closure_bound"), blank(ls, "substructure")};
  std::vector<Word> undecided;
  std::vector<Model> models = collect_models(ls, options, undecided);
  CompiledSentence compiled(ls.body);

  std::uint64_t salt = 0;
  for (const auto& model : models) {
    const FiniteStructure& m = model.structure;
    std::unordered_map<std::uint64_t, bool> checked;
    for (const auto& x : subsets_of(m.size(), options, ++salt)) {
      ClosureTrace trace = closure(m, x);
      int steps = trace.steps();
      out.closure_bound.max_steps_observed = std::max(out.closure_bound.max_steps_observed, steps);
      out.substructure.max_steps_observed = out.closure_bound.max_steps_observed;
      if (ls.declared_bound && steps > *ls.declared_bound)
        record(out.closure_bound, options, {model.word, m, x, ViolationKind::StepsExceeded, steps});

      std::uint64_t key = element_mask(trace.result());
      auto it = checked.find(key);
      if (it == checked.end()) {
        FiniteStructure sub = induced_substructure(m, trace.result());
        it = checked.emplace(key, compiled.check(sub).holds).first;
      }
      if (!it->second) record(out.substructure, options, {model.word, m, x, ViolationKind::SubstructureNotModel, steps});
      ++out.closure_bound.subsets_checked;
      ++out.substructure.subsets_checked;
    }
  }
  for (AuditReport* r : {&out.closure_bound, &out.substructure}) {
    r->models_checked = static_cast<long long>(models.size());
    r->undecided = undecided;
    finish(*r);
  }
  return out;
}

AuditReport audit_closure_bound(const LocalSentence& ls, const AuditOptions& options) {
  return audit_locality(ls, options).closure_bound;
}

AuditReport audit_closure_bound(const LocalSentence& ls, int max_size, long long budget) {
  AuditOptions o;
  o.max_size = max_size;
  o.budget = budget;
  return audit_closure_bound(ls, o);
}

AuditReport audit_substructure_closure(const LocalSentence& ls, const AuditOptions& options) {
  return audit_locality(ls, options).substructure;
}

AuditReport audit_substructure_closure(const LocalSentence& ls, int max_size, long long budget) {
  AuditOptions o;
  o.max_size = max_size;
  o.budget = budget;
  return audit_substructure_closure(ls, o);
}

}  // namespace loclang
