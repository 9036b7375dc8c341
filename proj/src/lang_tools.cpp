#include "loclang/lang_tools.hpp"

#include <deque>

#include "loclang/error.hpp"

namespace loclang {

ParenWord parse_paren_word(std::string_view text) {
  ParenWord out;
  if (text == "λ") return out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == ',') {
      ++i;
      continue;
    }
    if ((c != 'y' && c != 'Y') || i + 1 >= text.size() || (text[i + 1] != '1' && text[i + 1] != '2'))
      throw LetterError("expected one of y1 y2 Y1 Y2 at offset " + std::to_string(i));
    out.push_back({text[i + 1] - '0', c == 'Y'});
    i += 2;
  }
  return out;
}

std::string render_paren_word(const ParenWord& w) {
  if (w.empty()) return "λ";
  std::string out;
  for (const auto& p : w) {
    if (!out.empty()) out += ' ';
    out += p.close ? 'Y' : 'y';
    out += static_cast<char>('0' + p.sort);
  }
  return out;
}

std::optional<ParenWord> antidyck_reduce_step(const ParenWord& w) {
  if (w.empty() || w.front().close) return std::nullopt;
  for (std::size_t j = 1; j < w.size(); ++j) {
    if (!w[j].close) continue;
    if (w[j].sort != w.front().sort) return std::nullopt;
    ParenWord out;
    out.reserve(w.size() - 2);
    out.insert(out.end(), w.begin() + 1, w.begin() + static_cast<std::ptrdiff_t>(j));
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(j) + 1, w.end());
    return out;
  }
  return std::nullopt;
}

bool antidyck_member(const ParenWord& w) {
  ParenWord cur = w;
  while (!cur.empty()) {
    auto next = antidyck_reduce_step(cur);
    if (!next) return false;
    cur = std::move(*next);
  }
  return true;
}

bool fifo_member(const ParenWord& w) {
  std::deque<int> queue;
  for (const auto& p : w) {
    if (!p.close) {
      queue.push_back(p.sort);
    } else {
      if (queue.empty() || queue.front() != p.sort) return false;
      queue.pop_front();
    }
  }
  return queue.empty();
}

std::vector<ParenWord> all_paren_words(int n) {
  static const Paren kLetters[4] = {{1, false}, {2, false}, {1, true}, {2, true}};
  std::vector<ParenWord> out{ParenWord{}};
  for (int len = 0; len < n; ++len) {
    std::vector<ParenWord> next;
    next.reserve(out.size() * 4);
    for (const auto& w : out)
      for (const auto& p : kLetters) {
        next.push_back(w);
        next.back().push_back(p);
      }
    out = std::move(next);
  }
  return out;
}

char sigma_letter(std::size_t i) {
  // Blocks a·b^k for k = 1, 2, ... have length k + 1.
  std::size_t k = 1;
  while (i >= k + 1) {
    i -= k + 1;
    ++k;
  }
  return i == 0 ? 'a' : 'b';
}

Word sigma_prefix(std::size_t n) {
  Word w;
  w.letters.reserve(n);
  for (std::size_t k = 1; w.size() < n; ++k) {
    w.letters.emplace_back("a");
    for (std::size_t j = 0; j < k && w.size() < n; ++j) w.letters.emplace_back("b");
  }
  return w;
}

std::optional<std::size_t> ultimately_periodic_divergence(const Word& u, const Word& v, std::size_t horizon) {
  if (v.empty()) throw InvalidArgument("the period v must be nonempty");
  if (horizon < u.size()) throw InvalidArgument("horizon must be at least |u|");
  for (std::size_t i = 0; i < horizon; ++i) {
    const std::string& letter = i < u.size() ? u[i] : v[(i - u.size()) % v.size()];
    if (letter.size() != 1 || letter[0] != sigma_letter(i)) return i;
  }
  return std::nullopt;
}

}  // namespace loclang
