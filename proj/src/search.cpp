#include "loclang/search.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

#include "loclang/compiled.hpp"
#include "loclang/error.hpp"
#include "loclang/evaluator.hpp"
#include "loclang/normal_form.hpp"

namespace loclang {

std::string_view to_string(MembershipStatus status) {
  switch (status) {
    case MembershipStatus::Accepted: return "ACCEPTED";
    case MembershipStatus::Rejected: return "REJECTED";
    case MembershipStatus::BudgetExhausted: return "BUDGET_EXHAUSTED";
  }
  return "?";
}

namespace {

constexpr long long kMaxInstances = 50'000'000;

enum class Outcome { Found, Failed, Aborted };

struct Block {
  Program program;
  int arity;
};

class Solver {
 public:
  Solver(const Layout& layout, std::vector<int> cells, std::vector<Block> blocks, const SearchOptions& options,
         long long& nodes)
      : layout_(layout), cells_(std::move(cells)), blocks_(std::move(blocks)), options_(options), nodes_(nodes) {
    int count = layout_.cell_count();
    domain_.assign(count, 0);
    for (int c = 0; c < count; ++c) {
      int d = layout_.domain_size(c);
      domain_[c] = cells_[c] >= 0 ? bit(cells_[c]) : (d >= 64 ? ~std::uint64_t{0} : (bit(d) - 1));
    }
    watchers_.resize(count);
    active_.assign(count, 0);
    if (options_.shuffle_seed) rng_.seed(*options_.shuffle_seed);
  }

  Outcome run() {
    if (!initialize()) return Outcome::Failed;
    if (!propagate()) return Outcome::Failed;
    Outcome r = dfs();
    if (r == Outcome::Found) complete_cells();
    return r;
  }

  const std::vector<int>& cells() const { return cells_; }

 private:
  enum class Status : unsigned char { Unknown, Satisfied };

  struct Instance {
    int block;
    long long index;
    int w[2];
    Status status;
  };

  enum class Undo : unsigned char { Cell, Domain, Satisfied, Watch, WatchPush };

  struct Entry {
    Undo kind;
    int a;
    int b;
    int c;
    std::uint64_t mask;
  };

  static std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

  Truth evaluate(const Instance& inst, Unknowns& unknown) {
    const Block& b = blocks_[inst.block];
    decode_instance(inst.index, b.arity, layout_.size(), env_);
    unknown.clear();
    return b.program.eval(env_, cells_.data(), unknown);
  }

  bool initialize() {
    long long total = 0;
    for (const auto& b : blocks_) {
      total += instance_count(b.arity, layout_.size());
      if (total > kMaxInstances) throw InvalidArgument("sentence has too many ground instances for this word length");
    }
    Unknowns unknown;
    for (int bi = 0; bi < static_cast<int>(blocks_.size()); ++bi) {
      long long count = instance_count(blocks_[bi].arity, layout_.size());
      for (long long i = 0; i < count; ++i) {
        Instance inst{bi, i, {-1, -1}, Status::Unknown};
        Truth t = evaluate(inst, unknown);
        if (t == Truth::False) return false;
        if (t == Truth::True) continue;
        int id = static_cast<int>(instances_.size());
        inst.w[0] = unknown.cells[0];
        inst.w[1] = unknown.count > 1 ? unknown.cells[1] : -1;
        instances_.push_back(inst);
        stamp_.push_back(0);
        for (int w : inst.w)
          if (w >= 0) {
            watchers_[w].push_back(id);
            ++active_[w];
          }
        ++unknown_count_;
        if (unknown.count == 1 && !forward_check(id, unknown.cells[0])) return false;
      }
    }
    return true;
  }

  // Removes the values of `cell` under which instance `id` is false.
  bool forward_check(int id, int cell) {
    std::uint64_t mask = domain_[cell], keep = 0;
    Unknowns unknown;
    for (std::uint64_t m = mask; m; m &= m - 1) {
      int v = std::countr_zero(m);
      cells_[cell] = v;
      if (evaluate(instances_[id], unknown) != Truth::False) keep |= bit(v);
    }
    cells_[cell] = -1;
    if (keep == mask) return true;
    trail_.push_back({Undo::Domain, cell, 0, 0, mask});
    domain_[cell] = keep;
    if (keep == 0) return false;
    if (std::has_single_bit(keep)) singletons_.push_back(cell);
    return true;
  }

  void assign(int cell, int value) {
    trail_.push_back({Undo::Cell, cell, cells_[cell], 0, domain_[cell]});
    cells_[cell] = value;
    domain_[cell] = bit(value);
    to_wake_.push_back(cell);
  }

  void set_watches(int id, int w0, int w1) {
    Instance& inst = instances_[id];
    if (inst.w[0] == w0 && inst.w[1] == w1) return;
    trail_.push_back({Undo::Watch, id, inst.w[0], inst.w[1], 0});
    for (int w : inst.w)
      if (w >= 0) --active_[w];
    int fresh[2] = {w0, w1};
    for (int w : fresh) {
      if (w < 0) continue;
      ++active_[w];
      if (w != inst.w[0] && w != inst.w[1]) {
        watchers_[w].push_back(id);
        trail_.push_back({Undo::WatchPush, w, 0, 0, 0});
      }
    }
    inst.w[0] = w0;
    inst.w[1] = w1;
  }

  void satisfy(int id) {
    Instance& inst = instances_[id];
    trail_.push_back({Undo::Satisfied, id, 0, 0, 0});
    inst.status = Status::Satisfied;
    for (int w : inst.w)
      if (w >= 0) --active_[w];
    --unknown_count_;
  }

  // Revisits the instances watching a newly assigned cell.
  bool wake(int cell) {
    ++clock_;
    Unknowns unknown;
    std::size_t size = watchers_[cell].size();
    for (std::size_t k = 0; k < size; ++k) {
      int id = watchers_[cell][k];
      Instance& inst = instances_[id];
      if (inst.status != Status::Unknown || (inst.w[0] != cell && inst.w[1] != cell) || stamp_[id] == clock_) continue;
      stamp_[id] = clock_;
      Truth t = evaluate(inst, unknown);
      if (t == Truth::False) return false;
      if (t == Truth::True) {
        satisfy(id);
        continue;
      }
      set_watches(id, unknown.cells[0], unknown.count > 1 ? unknown.cells[1] : -1);
      if (unknown.count == 1 && !forward_check(id, unknown.cells[0])) return false;
    }
    return true;
  }

  bool propagate() {
    while (!to_wake_.empty() || !singletons_.empty()) {
      if (!to_wake_.empty()) {
        int cell = to_wake_.back();
        to_wake_.pop_back();
        if (!wake(cell)) {
          to_wake_.clear();
          singletons_.clear();
          return false;
        }
        continue;
      }
      int cell = singletons_.back();
      singletons_.pop_back();
      if (cells_[cell] < 0) assign(cell, std::countr_zero(domain_[cell]));
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      Entry e = trail_.back();
      trail_.pop_back();
      switch (e.kind) {
        case Undo::Cell:
          cells_[e.a] = e.b;
          domain_[e.a] = e.mask;
          break;
        case Undo::Domain: domain_[e.a] = e.mask; break;
        case Undo::Satisfied: {
          Instance& inst = instances_[e.a];
          inst.status = Status::Unknown;
          for (int w : inst.w)
            if (w >= 0) ++active_[w];
          ++unknown_count_;
          break;
        }
        case Undo::Watch: {
          Instance& inst = instances_[e.a];
          for (int w : inst.w)
            if (w >= 0) --active_[w];
          inst.w[0] = e.b;
          inst.w[1] = e.c;
          for (int w : inst.w)
            if (w >= 0) ++active_[w];
          break;
        }
        case Undo::WatchPush: watchers_[e.a].pop_back(); break;
      }
    }
  }

  int select() const {
    int best = -1, best_size = 65, best_active = -1;
    for (int c = 0; c < layout_.cell_count(); ++c) {
      if (cells_[c] >= 0 || active_[c] == 0) continue;
      int size = std::popcount(domain_[c]);
      if (size < best_size || (size == best_size && active_[c] > best_active)) {
        best = c;
        best_size = size;
        best_active = active_[c];
      }
    }
    return best;
  }

  Outcome dfs() {
    if (unknown_count_ == 0) return Outcome::Found;
    int cell = select();
    if (cell < 0) throw std::logic_error("open instances without an unassigned watched cell");
    std::vector<int> values;
    for (std::uint64_t m = domain_[cell]; m; m &= m - 1) values.push_back(std::countr_zero(m));
    if (options_.shuffle_seed) std::shuffle(values.begin(), values.end(), rng_);
    for (int v : values) {
      if (nodes_ >= options_.budget) return Outcome::Aborted;
      ++nodes_;
      std::size_t mark = trail_.size();
      assign(cell, v);
      if (propagate()) {
        Outcome r = dfs();
        if (r != Outcome::Failed) return r;
      }
      undo(mark);
    }
    return Outcome::Failed;
  }

  void complete_cells() {
    for (int c = 0; c < layout_.cell_count(); ++c) {
      if (cells_[c] >= 0) continue;
      std::uint64_t m = domain_[c];
      if (options_.shuffle_seed) {
        int k = static_cast<int>(rng_() % static_cast<std::uint64_t>(std::popcount(m)));
        while (k--) m &= m - 1;
      }
      cells_[c] = std::countr_zero(m);
    }
  }

  const Layout& layout_;
  std::vector<int> cells_;
  std::vector<std::uint64_t> domain_;
  std::vector<Block> blocks_;
  const SearchOptions& options_;
  long long& nodes_;
  std::vector<Instance> instances_;
  std::vector<unsigned> stamp_;
  unsigned clock_ = 0;
  std::vector<std::vector<int>> watchers_;
  std::vector<int> active_;
  long long unknown_count_ = 0;
  std::vector<Entry> trail_;
  std::vector<int> to_wake_;
  std::vector<int> singletons_;
  int env_[64] = {};
  std::mt19937_64 rng_;
};

}  // namespace

MembershipResult decide_membership(const Word& w, const LocalSentence& ls, long long budget) {
  SearchOptions options;
  options.budget = budget;
  return decide_membership(w, ls, options);
}

MembershipResult decide_membership(const Word& w, const LocalSentence& ls, const SearchOptions& options) {
  if (auto diags = validate(ls); !diags.empty()) throw InvalidArgument("invalid local sentence: " + diags.front());
  for (const auto& letter : w.letters)
    if (std::find(ls.alphabet.begin(), ls.alphabet.end(), letter) == ls.alphabet.end())
      throw AlphabetMismatchError("letter '" + letter + "' is not in the sentence's alphabet");
  if (w.size() > 64) throw InvalidArgument("words longer than 64 letters are not supported");
  if (ls.body.prefix.size() > 64) throw InvalidArgument("too many prefix variables");

  MembershipResult result;
  int n = static_cast<int>(w.size());
  FiniteStructure word = word_to_structure(w, ls.alphabet);
  if (n == 0) {
    result.exhausted = true;
    if (ls.has_constants()) return result;
    FiniteStructure empty(ls.signature, 0);
    if (satisfies(empty, ls.body)) {
      result.accepted = true;
      result.witness = std::move(empty);
    }
    return result;
  }

  Layout layout(ls.signature, n);
  std::vector<int> cells(layout.cell_count(), -1);
  for (int s = 0; s < layout.symbol_count(); ++s) {
    const Symbol& sym = ls.signature.symbols()[s];
    auto src = word.signature().index_of(sym.name);
    if (!src) continue;
    const auto& from = word.layout().slot(*src);
    long long count = instance_count(sym.arity, n);
    for (long long i = 0; i < count; ++i) cells[layout.slot(s).offset + i] = word.cells()[from.offset + i];
  }

  ScopeNode scope = miniscope(to_nnf(ls.body.matrix));
  for (const auto& alternative : scope_cases(scope, options.max_cases)) {
    std::vector<Block> blocks;
    for (const auto& b : alternative) {
      if (b.vars.size() > 64) throw InvalidArgument("block with too many variables");
      blocks.push_back({Program(b.formula, b.vars, layout), static_cast<int>(b.vars.size())});
    }
    Solver solver(layout, cells, std::move(blocks), options, result.nodes_explored);
    Outcome r = solver.run();
    if (r == Outcome::Aborted) return result;
    if (r == Outcome::Found) {
      FiniteStructure m(layout, solver.cells());
      if (!satisfies(m, ls.body) || !(reduct(m, word.signature()) == word))
        throw std::logic_error("search produced a witness that does not verify");
      result.accepted = true;
      result.exhausted = true;
      result.witness = std::move(m);
      return result;
    }
  }
  result.exhausted = true;
  return result;
}

std::vector<Word> all_words(const Alphabet& alphabet, int max_len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len && !alphabet.empty(); ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& a : alphabet) {
        Word w = out[i];
        w.letters.push_back(a);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

Enumeration enumerate_language(const LocalSentence& ls, int max_len, long long budget) {
  Enumeration e;
  for (const auto& w : all_words(ls.alphabet, max_len)) {
    MembershipResult r = decide_membership(w, ls, budget);
    e.nodes_explored += r.nodes_explored;
    if (r.accepted)
      e.words.push_back(w);
    else if (!r.exhausted)
      e.undecided.push_back(w);
  }
  return e;
}

LanguageComparison language_equal_upto(const LocalSentence& a, const LocalSentence& b, int max_len,
                                       long long budget) {
  std::set<std::string> sa(a.alphabet.begin(), a.alphabet.end()), sb(b.alphabet.begin(), b.alphabet.end());
  if (sa != sb) throw AlphabetMismatchError("the two sentences have different alphabets");
  LanguageComparison out;
  for (const auto& w : all_words(a.alphabet, max_len)) {
    MembershipResult ra = decide_membership(w, a, budget);
    MembershipResult rb = decide_membership(w, b, budget);
    if (!ra.exhausted || !rb.exhausted) {
      out.complete = false;
      continue;
    }
    if (ra.accepted != rb.accepted) {
      out.equal = false;
      out.counterexample = w;
      return out;
    }
  }
  return out;
}

}  // namespace loclang
