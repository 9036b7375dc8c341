#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "loclang/audit.hpp"
#include "loclang/closure.hpp"
#include "loclang/combinators.hpp"
#include "loclang/error.hpp"
#include "loclang/examples.hpp"
#include "loclang/lang_tools.hpp"
#include "loclang/search.hpp"
#include "loclang/structure_json.hpp"

namespace py = pybind11;
using namespace loclang;

namespace {

py::object to_python(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::ordered_json from_python(const py::object& o) {
  return nlohmann::ordered_json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

std::vector<std::string> word_strings(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.str());
  return out;
}

py::dict membership(const LocalSentence& ls, const std::string& word, long long budget, std::optional<std::uint64_t> seed) {
  SearchOptions so;
  so.budget = budget;
  so.shuffle_seed = seed;
  Word w = parse_word(word);
  MembershipResult r = decide_membership(w, ls, so);
  py::dict d;
  d["sentence"] = ls.name;
  d["word"] = w.str();
  d["status"] = std::string(to_string(r.status()));
  d["accepted"] = r.accepted;
  d["exhausted"] = r.exhausted;
  d["nodes_explored"] = r.nodes_explored;
  d["witness"] = r.witness ? to_python(structure_to_json(*r.witness)) : py::object(py::none());
  return d;
}

py::dict enumeration(const LocalSentence& ls, int max_len, long long budget) {
  Enumeration e = enumerate_language(ls, max_len, budget);
  py::dict d;
  d["sentence"] = ls.name;
  d["max_len"] = max_len;
  d["words"] = word_strings(e.words);
  d["undecided"] = word_strings(e.undecided);
  d["complete"] = e.complete();
  d["nodes_explored"] = e.nodes_explored;
  return d;
}

py::list audit(const LocalSentence& ls, int max_size, long long budget, std::uint64_t seed, int extra, int samples) {
  AuditOptions o;
  o.max_size = max_size;
  o.budget = budget;
  o.seed = seed;
  o.extra_models_per_word = extra;
  o.sampled_subsets = samples;
  LocalityAudit a = audit_locality(ls, o);
  py::list out;
  out.append(to_python(a.closure_bound.to_json()));
  out.append(to_python(a.substructure.to_json()));
  return out;
}

py::dict closure_of(const py::object& structure, const std::vector<int>& subset) {
  FiniteStructure m = structure_from_json(from_python(structure));
  for (int e : subset)
    if (e < 0 || e >= m.size()) throw InvalidArgument("subset element " + std::to_string(e) + " out of range");
  ClosureTrace t = closure(m, subset);
  py::dict d;
  d["stages"] = t.stages;
  d["steps"] = t.steps();
  d["result"] = t.result();
  return d;
}

}  // namespace

PYBIND11_MODULE(_loclang, m) {
  m.doc() = "Local sentences over words: membership, enumeration, constructions and audits";

  auto& error = py::register_exception<Error>(m, "LoclangError", PyExc_ValueError);
  py::register_exception<SyntaxError>(m, "DslSyntaxError", error.ptr());
  py::register_exception<AlphabetMismatchError>(m, "AlphabetMismatchError", error.ptr());

  py::class_<LocalSentence>(m, "Sentence")
      .def_readwrite("name", &LocalSentence::name)
      .def_readonly("alphabet", &LocalSentence::alphabet)
      .def_readonly("bound", &LocalSentence::declared_bound)
      .def_property_readonly("signature", [](const LocalSentence& ls) { return ls.signature.to_string(); })
      .def_property_readonly("has_constants", &LocalSentence::has_constants)
      .def_property_readonly("text", &render_local_sentence)
      .def("validate", &validate)
      .def("save", &save_local_sentence, py::arg("path"))
      .def("__repr__", [](const LocalSentence& ls) { return "<Sentence " + ls.name + ">"; });

  m.def("parse_sentence", &parse_local_sentence, py::arg("text"));
  m.def("load_sentence", &load_local_sentence, py::arg("path"));
  m.def("example_names", &example_names);
  m.def("example", [](const std::string& name) { return example_sentence(name); }, py::arg("name"));
  m.def("example_text", [](const std::string& name) { return example_text(name); }, py::arg("name"));

  m.def("member", &membership, py::arg("sentence"), py::arg("word"), py::arg("budget") = kDefaultBudget,
        py::arg("seed") = py::none());
  m.def("enumerate", &enumeration, py::arg("sentence"), py::arg("max_len") = 8, py::arg("budget") = kDefaultBudget);

  m.def("union", &union_sentence, py::arg("left"), py::arg("right"));
  m.def("concat", &concat_sentence, py::arg("left"), py::arg("right"), py::arg("guard") = false);
  m.def(
      "substitute",
      [](const LocalSentence& phi, const std::string& spec, const Alphabet& target, const std::string& base_dir) {
        return substitution_sentence(phi, parse_substitution(spec, phi.alphabet, target, base_dir));
      },
      py::arg("sentence"), py::arg("spec"), py::arg("target") = Alphabet{}, py::arg("base_dir") = ".");
  m.def(
      "morphism",
      [](const LocalSentence& phi, const std::string& spec, std::optional<std::string> marker) {
        Alphabet source;
        for (const auto& c : phi.alphabet)
          if (!marker || c != *marker) source.push_back(c);
        return morphism_sentence(phi, parse_morphism(spec, source), marker);
      },
      py::arg("sentence"), py::arg("spec"), py::arg("marker") = py::none());
  m.def(
      "inverse_morphism",
      [](const LocalSentence& phi, const std::string& spec, const std::string& marker) {
        Alphabet target;
        for (const auto& c : phi.alphabet)
          if (c != marker) target.push_back(c);
        return inverse_morphism_sentence(phi, parse_morphism(spec, {}, target), marker);
      },
      py::arg("sentence"), py::arg("spec"), py::arg("marker"));
  m.def("declared_bound_for", py::overload_cast<std::string_view, const std::vector<int>&>(&declared_bound_for),
        py::arg("construction"), py::arg("bounds"));

  m.def("audit", &audit, py::arg("sentence"), py::arg("max_size") = 7, py::arg("budget") = kDefaultBudget,
        py::arg("seed") = 0, py::arg("extra_models") = 2, py::arg("samples") = 1000);
  m.def("closure", &closure_of, py::arg("structure"), py::arg("subset"));

  m.def("antidyck_member", [](const std::string& w) { return antidyck_member(parse_paren_word(w)); }, py::arg("word"));
  m.def("fifo_member", [](const std::string& w) { return fifo_member(parse_paren_word(w)); }, py::arg("word"));
  m.def("sigma_prefix", [](std::size_t n) { return sigma_prefix(n).str(); }, py::arg("n"));
  m.def(
      "periodic_divergence",
      [](const std::string& u, const std::string& v, std::size_t horizon) {
        return ultimately_periodic_divergence(parse_word(u), parse_word(v), horizon);
      },
      py::arg("u"), py::arg("v"), py::arg("horizon") = 60);
}
