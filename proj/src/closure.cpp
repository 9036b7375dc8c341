#include "loclang/closure.hpp"

#include <algorithm>

#include "loclang/error.hpp"

namespace loclang {

namespace {

std::vector<int> normalized(const FiniteStructure& m, const std::vector<int>& x) {
  std::vector<int> out = x;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (int e : out)
    if (e < 0 || e >= m.size()) throw StructureError("element " + std::to_string(e) + " outside the universe");
  return out;
}

}  // namespace

std::vector<int> closure_step(const FiniteStructure& m, const std::vector<int>& x) {
  int n = m.size();
  std::vector<char> in(n, 0);
  for (int e : normalized(m, x)) in[e] = 1;
  std::vector<char> next = in;
  std::vector<int> cur;
  for (int e = 0; e < n; ++e)
    if (in[e]) cur.push_back(e);
  const auto& layout = m.layout();
  int args[kMaxArity];
  for (int s = 0; s < layout.symbol_count(); ++s) {
    const auto& slot = layout.slot(s);
    if (slot.kind == SymbolKind::Constant) {
      next[m.cells()[slot.offset]] = 1;
      continue;
    }
    if (slot.kind != SymbolKind::Function || cur.empty()) continue;
    std::vector<std::size_t> pos(slot.arity, 0);
    while (true) {
      for (int i = 0; i < slot.arity; ++i) args[i] = cur[pos[i]];
      next[m.cells()[layout.cell(s, args)]] = 1;
      int i = slot.arity - 1;
      while (i >= 0 && ++pos[i] == cur.size()) pos[i--] = 0;
      if (i < 0) break;
    }
  }
  std::vector<int> out;
  for (int e = 0; e < n; ++e)
    if (next[e]) out.push_back(e);
  return out;
}

ClosureTrace closure(const FiniteStructure& m, const std::vector<int>& x) {
  ClosureTrace trace;
  trace.stages.push_back(normalized(m, x));
  while (true) {
    std::vector<int> next = closure_step(m, trace.stages.back());
    if (next == trace.stages.back()) return trace;
    trace.stages.push_back(std::move(next));
  }
}

FiniteStructure generated_substructure(const FiniteStructure& m, const std::vector<int>& x) {
  return induced_substructure(m, closure(m, x).result());
}

// --------------------------------------------------------- indiscernibles

namespace {

struct TermSpec {
  enum class Kind { Var, Param, Const, Apply } kind;
  int index;  // variable, element, or symbol
  std::vector<int> args;
  int depth;
};

std::string term_text(const std::vector<TermSpec>& terms, int t, const Signature& sig) {
  const TermSpec& s = terms[t];
  switch (s.kind) {
    case TermSpec::Kind::Var: return "x" + std::to_string(s.index + 1);
    case TermSpec::Kind::Param: return "#" + std::to_string(s.index);
    case TermSpec::Kind::Const: return sig.symbols()[s.index].name;
    case TermSpec::Kind::Apply: {
      std::string out = sig.symbols()[s.index].name + "(";
      for (std::size_t i = 0; i < s.args.size(); ++i) {
        if (i) out += ", ";
        out += term_text(terms, s.args[i], sig);
      }
      return out + ")";
    }
  }
  return "?";
}

std::vector<TermSpec> build_terms(const FiniteStructure& m, int length, const std::vector<int>& params, int k) {
  const Signature& sig = m.signature();
  std::vector<TermSpec> terms;
  for (int i = 0; i < length; ++i) terms.push_back({TermSpec::Kind::Var, i, {}, 0});
  for (int e : params) terms.push_back({TermSpec::Kind::Param, e, {}, 0});
  for (int s = 0; s < static_cast<int>(sig.size()); ++s)
    if (sig.symbols()[s].kind == SymbolKind::Constant) terms.push_back({TermSpec::Kind::Const, s, {}, 0});
  constexpr std::size_t kLimit = 20000;
  for (int d = 1; d <= k; ++d) {
    std::size_t existing = terms.size();
    for (int s = 0; s < static_cast<int>(sig.size()); ++s) {
      const Symbol& sym = sig.symbols()[s];
      if (sym.kind != SymbolKind::Function || existing == 0) continue;
      std::vector<int> pos(sym.arity, 0);
      while (true) {
        int deepest = 0;
        for (int p : pos) deepest = std::max(deepest, terms[p].depth);
        if (deepest == d - 1) {
          terms.push_back({TermSpec::Kind::Apply, s, pos, d});
          if (terms.size() > kLimit) throw InvalidArgument("too many terms for the requested complexity");
        }
        int i = sym.arity - 1;
        while (i >= 0 && ++pos[i] == static_cast<int>(existing)) pos[i--] = 0;
        if (i < 0) break;
      }
    }
  }
  return terms;
}

std::vector<int> term_values(const FiniteStructure& m, const std::vector<TermSpec>& terms, const std::vector<int>& tuple) {
  std::vector<int> vals(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const TermSpec& s = terms[t];
    switch (s.kind) {
      case TermSpec::Kind::Var: vals[t] = tuple[s.index]; break;
      case TermSpec::Kind::Param: vals[t] = s.index; break;
      case TermSpec::Kind::Const: vals[t] = m.cells()[m.layout().slot(s.index).offset]; break;
      case TermSpec::Kind::Apply: {
        int args[kMaxArity];
        for (std::size_t i = 0; i < s.args.size(); ++i) args[i] = vals[s.args[i]];
        vals[t] = m.cells()[m.layout().cell(s.index, args)];
        break;
      }
    }
  }
  return vals;
}

// First atom on which the two value vectors disagree, or empty.
std::string separating_atom(const FiniteStructure& m, const std::vector<TermSpec>& terms, const std::vector<int>& a,
                            const std::vector<int>& b) {
  const Signature& sig = m.signature();
  std::size_t count = terms.size();
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if ((a[i] == a[j]) != (b[i] == b[j]))
        return term_text(terms, static_cast<int>(i), sig) + " = " + term_text(terms, static_cast<int>(j), sig);
  int args_a[kMaxArity], args_b[kMaxArity];
  for (int s = 0; s < static_cast<int>(sig.size()); ++s) {
    const Symbol& sym = sig.symbols()[s];
    if (sym.kind != SymbolKind::Relation) continue;
    std::vector<std::size_t> pos(sym.arity, 0);
    while (true) {
      for (int i = 0; i < sym.arity; ++i) {
        args_a[i] = a[pos[i]];
        args_b[i] = b[pos[i]];
      }
      bool ta = m.cells()[m.layout().cell(s, args_a)] != 0;
      bool tb = m.cells()[m.layout().cell(s, args_b)] != 0;
      if (ta != tb) {
        std::string out = sym.name + "(";
        for (int i = 0; i < sym.arity; ++i) {
          if (i) out += ", ";
          out += term_text(terms, static_cast<int>(pos[i]), sig);
        }
        return out + ")";
      }
      int i = sym.arity - 1;
      while (i >= 0 && ++pos[i] == count) pos[i--] = 0;
      if (i < 0) break;
    }
  }
  return {};
}

}  // namespace

IndiscernibilityResult is_indiscernible_above(const FiniteStructure& m, const std::vector<int>& x,
                                              const std::vector<int>& p, int k, int max_length) {
  if (k < 0) throw InvalidArgument("complexity must be non-negative");
  std::vector<int> xs = normalized(m, x);
  std::vector<int> ps = normalized(m, p);
  if (m.signature().contains({std::string(kOrderSymbol), SymbolKind::Relation, 2})) {
    for (int a : xs)
      for (int b : xs)
        if (a != b && m.holds(kOrderSymbol, {a, b}) == m.holds(kOrderSymbol, {b, a}))
          throw InvalidArgument("X is not linearly ordered by <");
    std::sort(xs.begin(), xs.end(), [&](int a, int b) { return m.holds(kOrderSymbol, {a, b}); });
  }
  IndiscernibilityResult result;
  int longest = std::min<int>(max_length, static_cast<int>(xs.size()));
  for (int len = 1; len <= longest; ++len) {
    std::vector<TermSpec> terms = build_terms(m, len, ps, k);
    std::vector<int> pick(len);
    for (int i = 0; i < len; ++i) pick[i] = i;
    std::vector<int> reference_tuple, reference_values;
    while (true) {
      std::vector<int> tuple(len);
      for (int i = 0; i < len; ++i) tuple[i] = xs[pick[i]];
      std::vector<int> vals = term_values(m, terms, tuple);
      if (reference_tuple.empty()) {
        reference_tuple = tuple;
        reference_values = std::move(vals);
      } else if (std::string atom = separating_atom(m, terms, reference_values, vals); !atom.empty()) {
        result.indiscernible = false;
        result.first = reference_tuple;
        result.second = tuple;
        result.atom = atom;
        return result;
      }
      int i = len - 1;
      while (i >= 0 && pick[i] == static_cast<int>(xs.size()) - len + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < len; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return result;
}

}  // namespace loclang
