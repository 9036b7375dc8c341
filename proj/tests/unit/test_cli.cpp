#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "catch.hpp"
#include "loclang/cli.hpp"
#include "loclang/examples.hpp"

using namespace loclang;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "loclang");
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sentence_path(const std::string& name) {
  return std::string(LOCLANG_SOURCE_DIR) + "/sentences/" + name + ".lfs";
}

nlohmann::json load_schema(const std::string& name) {
  std::ifstream in(std::string(LOCLANG_SCHEMA_DIR) + "/" + name + ".json");
  REQUIRE(in);
  return nlohmann::json::parse(in);
}

// Required keys and primitive types only; full validation runs in the Python tests.
void check_against(const nlohmann::json& value, const nlohmann::json& schema) {
  if (schema.contains("type")) {
    std::string t = schema["type"].is_string() ? schema["type"].get<std::string>() : "";
    if (t == "object") CHECK(value.is_object());
    if (t == "array") CHECK(value.is_array());
    if (t == "boolean") CHECK(value.is_boolean());
    if (t == "integer") CHECK(value.is_number_integer());
    if (t == "string") CHECK(value.is_string());
  }
  if (value.is_object() && schema.contains("required"))
    for (const auto& k : schema["required"]) {
      INFO(k);
      CHECK(value.contains(k.get<std::string>()));
    }
  if (value.is_object() && schema.contains("properties"))
    for (const auto& [k, sub] : schema["properties"].items())
      if (value.contains(k)) check_against(value[k], sub);
  if (value.is_array() && schema.contains("items") && schema["items"].is_object())
    for (const auto& item : value) check_against(item, schema["items"]);
}

}  // namespace

TEST_CASE("shipped sentence files match the examples", "[cli]") {
  for (const auto& name : example_names()) {
    LocalSentence f = cli::resolve_sentence(sentence_path(name));
    LocalSentence e = example_sentence(name);
    INFO(name);
    CHECK(f.body == e.body);
    CHECK(f.alphabet == e.alphabet);
    CHECK(f.declared_bound == e.declared_bound);
    CHECK(cli::resolve_sentence(name).body == e.body);
  }
  CHECK_THROWS(cli::resolve_sentence("definitely_not_here.lfs"));
}

TEST_CASE("member", "[cli]") {
  Run r = run({"member", "--sentence", sentence_path("sigma_word"), "--word", "ababba"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "ACCEPTED\n");
  r = run({"member", "--sentence", "sigma_word.lfs", "--word", "abba"});
  CHECK(r.code == cli::kNegative);
  CHECK(r.out == "REJECTED\n");
  r = run({"member", "--sentence", "sigma_word", "--word", "ababbabbb", "--budget", "2"});
  CHECK(r.code == cli::kInconclusive);
  CHECK(r.out == "BUDGET_EXHAUSTED\n");
  r = run({"member", "--sentence", "sigma_word", "--word", "abc"});
  CHECK(r.code == cli::kError);
  CHECK(r.err.rfind("error: ", 0) == 0);
  r = run({"member", "--sentence", "sigma_word", "--word", "aba", "--witness"});
  CHECK(r.out.find("\"size\"") != std::string::npos);
}

TEST_CASE("enum", "[cli]") {
  Run r = run({"enum", "--sentence", "sigma_word.lfs", "--max-len", "3"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "λ\na\naba\n");
  r = run({"enum", "--sentence", "sigma_word", "--max-len", "9", "--budget", "1"});
  CHECK(r.code == cli::kInconclusive);
  CHECK(r.out.find("# undecided: ") != std::string::npos);
}

TEST_CASE("check", "[cli]") {
  Run r = run({"check", sentence_path("anbn")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.rfind("VALID\n", 0) == 0);
  fs::path bad = fs::temp_directory_path() / "loclang_cli_bad.lfs";
  std::ofstream(bad) << "alphabet: a\nconstants: x\nrelations: P_a/1\nforall x . P_a(x)\n";
  r = run({"check", bad.string()});
  CHECK(r.code == cli::kNegative);
  CHECK(r.out.rfind("INVALID\n", 0) == 0);
  CHECK(r.out.find("also names a symbol") != std::string::npos);
  std::ofstream(bad) << "alphabet: a\nforall x . f(x\n";
  r = run({"check", bad.string()});
  CHECK(r.code == cli::kError);
  CHECK(r.err.find("expected ')'") != std::string::npos);
  CHECK(r.err.find("line ") != std::string::npos);
}

TEST_CASE("combine", "[cli]") {
  fs::path dir = fs::temp_directory_path() / "loclang_cli_combine";
  fs::create_directories(dir);
  fs::path out = dir / "u.lfs";
  Run r = run({"combine", "--op", "union", "--left", "anbn", "--right", "a_before_b", "--out", out.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "wrote " + out.string() + "\n");
  r = run({"enum", "--sentence", out.string(), "--max-len", "2"});
  CHECK(r.out == "λ\na\nb\naa\nab\nbb\n");

  std::ofstream(dir / "h.txt") << "a -> c\nb -> c\n";
  r = run({"combine", "--op", "morph", "--left", "sigma_word", "--map", (dir / "h.txt").string(), "--out",
           (dir / "m.lfs").string()});
  CHECK(r.code == cli::kOk);
  CHECK(run({"enum", "--sentence", (dir / "m.lfs").string(), "--max-len", "3"}).out == "λ\nc\nccc\n");

  std::ofstream(dir / "s.txt") << "a -> b | aa\nb -> ab\n";
  r = run({"combine", "--op", "subst", "--left", "single_a", "--map", (dir / "s.txt").string(), "--target", "a,b"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("alphabet: a b\n") != std::string::npos);
  CHECK(r.out.find("bound: 3\n") != std::string::npos);

  r = run({"combine", "--op", "invmorph", "--left", "single_a", "--map", (dir / "h.txt").string()});
  CHECK(r.code == cli::kError);
  r = run({"combine", "--op", "concat", "--left", "anbn"});
  CHECK(r.code == cli::kError);
  r = run({"combine", "--op", "intersect", "--left", "anbn", "--right", "anbn"});
  CHECK(r.code == cli::kError);
}

TEST_CASE("closure", "[cli]") {
  Run r = run({"closure", "--sentence", "sigma_word", "--word", "ababba", "--subset", "0"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("stage 0: {0}") != std::string::npos);
  CHECK(r.out.find("induced word: a") != std::string::npos);
  r = run({"closure", "--sentence", "sigma_word", "--word", "ababba", "--subset", "0-5"});
  CHECK(r.out.find("steps: 0") != std::string::npos);
  CHECK(r.out.find("induced word: ababba") != std::string::npos);
  r = run({"closure", "--sentence", "sigma_word", "--word", "ab", "--subset", "0"});
  CHECK(r.code == cli::kNegative);
  r = run({"closure", "--sentence", "sigma_word", "--word", "a", "--subset", "4"});
  CHECK(r.code == cli::kError);
  r = run({"closure", "--subset", "0"});
  CHECK(r.code == cli::kError);
}

TEST_CASE("audit", "[cli]") {
  Run r = run({"audit", "sigma_word", "--max-size", "5"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("consistent") != std::string::npos);
  r = run({"audit", "sigma_word", "--max-size", "6", "--budget", "1"});
  CHECK(r.code == cli::kInconclusive);
}

TEST_CASE("antidyck and sigma", "[cli]") {
  Run r = run({"antidyck", "y1", "y2", "Y1", "Y2"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "MEMBER\n");
  r = run({"antidyck", "y1", "y2", "Y2", "Y1"});
  CHECK(r.code == cli::kNegative);
  CHECK(r.out == "NOT MEMBER\n");
  CHECK(run({"antidyck"}).out == "MEMBER\n");
  CHECK(run({"antidyck", "y3"}).code == cli::kError);

  r = run({"sigma", "--n", "10"});
  CHECK(r.out == "ababbabbba\n");
  r = run({"sigma", "--v", "ab"});
  CHECK(r.out == "DIVERGES AT 4\n");
  CHECK(r.code == cli::kOk);
  CHECK(run({"sigma"}).code == cli::kError);
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(run({}).code == cli::kError);
  CHECK(run({"frobnicate"}).code == cli::kError);
  CHECK(run({"member", "--sentence", "sigma_word"}).code == cli::kError);
  CHECK(run({"enum", "--sentence", "sigma_word", "--max-len", "x"}).code == cli::kError);
  Run h = run({"--help"});
  CHECK(h.code == cli::kOk);
  CHECK(h.out.find("member") != std::string::npos);
}

TEST_CASE("json output follows the schemas", "[cli]") {
  Run r = run({"member", "--sentence", "sigma_word", "--word", "aba", "--json"});
  auto j = nlohmann::json::parse(r.out);
  check_against(j, load_schema("membership_result"));
  CHECK(j["status"] == "ACCEPTED");
  check_against(j["witness"], load_schema("structure"));

  r = run({"enum", "--sentence", "anbn", "--max-len", "4", "--json"});
  j = nlohmann::json::parse(r.out);
  check_against(j, load_schema("enumeration"));
  CHECK(j["words"] == nlohmann::json::array({"λ", "ab", "aabb"}));

  r = run({"audit", "anbn", "--max-size", "4", "--json"});
  j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 2);
  for (const auto& report : j) check_against(report, load_schema("audit_report"));
}
