#include "catch.hpp"
#include "loclang/audit.hpp"
#include "loclang/error.hpp"
#include "loclang/examples.hpp"

using namespace loclang;

namespace {

// s is the successor with s(max) = max: the closure of {min} walks the whole word.
LocalSentence successor_sentence() {
  return parse_local_sentence(
      "name: successor\nalphabet: a\nbound: 1\n"
      "forall x y . x <= s(x) & (x < y -> s(x) <= y) & (s(x) = x -> y <= x)\n");
}

}  // namespace

TEST_CASE("declared bounds of constructions", "[audit]") {
  CHECK(declared_bound_for(Construction::Union, {2, 3}) == 3);
  CHECK(declared_bound_for(Construction::Concat, {2, 3}) == 3);
  CHECK(declared_bound_for(Construction::Substitution, {1, 2, 3}) == 5);
  CHECK(declared_bound_for(Construction::Morphism, {2}) == 2);
  CHECK(declared_bound_for(Construction::InverseMorphism, {2}) == 3);
  CHECK(declared_bound_for("inverse_morphism", {1}) == 2);
  CHECK_THROWS_AS(declared_bound_for("intersection", {1, 1}), InvalidArgument);
  CHECK_THROWS_AS(declared_bound_for(Construction::Union, {1}), InvalidArgument);
  CHECK_THROWS_AS(declared_bound_for(Construction::Substitution, {1}), InvalidArgument);
  for (auto c : {Construction::Union, Construction::Concat, Construction::Substitution, Construction::Morphism,
                 Construction::InverseMorphism})
    CHECK(parse_construction(to_string(c)) == c);
}

TEST_CASE("sigma_word stays within two closure steps", "[audit]") {
  AuditOptions o;
  o.max_size = 7;
  LocalityAudit a = audit_locality(example_sentence("sigma_word"), o);
  CHECK(a.closure_bound.verdict == Verdict::Consistent);
  CHECK(a.closure_bound.max_steps_observed <= 2);
  CHECK(a.closure_bound.max_steps_observed >= 1);
  CHECK(a.closure_bound.models_checked > 0);
  CHECK(a.closure_bound.declared_bound == 2);
  CHECK(a.substructure.verdict == Verdict::Consistent);
  CHECK(a.substructure.violation_count == 0);
  CHECK(a.substructure.subsets_checked > 0);
}

TEST_CASE("sentences without functions need no closure steps", "[audit]") {
  AuditReport r = audit_closure_bound(example_sentence("a_before_b"), 6, kDefaultBudget);
  CHECK(r.max_steps_observed == 0);
  CHECK(r.verdict == Verdict::Consistent);
}

TEST_CASE("an unbounded successor function is falsified", "[audit]") {
  AuditOptions o;
  o.max_size = 5;
  AuditReport r = audit_closure_bound(successor_sentence(), o);
  CHECK(r.verdict == Verdict::Falsified);
  CHECK(r.max_steps_observed == 4);
  REQUIRE_FALSE(r.violations.empty());
  const Violation& v = r.violations.front();
  CHECK(v.kind == ViolationKind::StepsExceeded);
  CHECK(v.steps > 1);
  CHECK(r.violations.size() <= o.max_reported_violations);
  CHECK(r.violation_count >= static_cast<long long>(r.violations.size()));

  AuditReport sub = audit_substructure_closure(successor_sentence(), o);
  CHECK(sub.verdict == Verdict::Consistent);
}

TEST_CASE("no declared bound and no models", "[audit]") {
  LocalSentence free = parse_local_sentence("alphabet: a\nforall x . g(x) = x\n");
  CHECK(audit_closure_bound(free, 4, kDefaultBudget).verdict == Verdict::Consistent);
  AuditReport none = audit_closure_bound(example_sentence("no_words"), 5, kDefaultBudget);
  CHECK(none.models_checked == 0);
  CHECK(none.verdict == Verdict::Consistent);
}

TEST_CASE("tiny budgets are inconclusive", "[audit]") {
  AuditReport r = audit_closure_bound(example_sentence("sigma_word"), 7, 2);
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK_FALSE(r.undecided.empty());
}

TEST_CASE("audits are deterministic for a seed", "[audit]") {
  AuditOptions o;
  o.max_size = 6;
  o.seed = 9;
  o.sampled_subsets = 20;
  LocalSentence ls = example_sentence("anbn");
  CHECK(audit_locality(ls, o).closure_bound.to_json() == audit_locality(ls, o).closure_bound.to_json());
  CHECK(audit_locality(ls, o).substructure.to_json() == audit_locality(ls, o).substructure.to_json());
}

TEST_CASE("report json", "[audit]") {
  AuditReport r = audit_closure_bound(successor_sentence(), 4, kDefaultBudget);
  auto j = r.to_json();
  for (const char* k : {"sentence", "kind", "models_checked", "subsets_checked", "max_steps_observed", "declared_bound",
                        "violation_count", "violations", "undecided", "verdict", "note"})
    CHECK(j.contains(k));
  CHECK(j["kind"] == "closure_bound");
  CHECK(j["verdict"] == "falsified");
  CHECK(j["note"] == std::string(AuditReport::kNote));
  CHECK(j["violations"][0].contains("model"));
  CHECK_FALSE(r.summary().empty());
}
