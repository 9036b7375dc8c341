#include "loclang/dsl.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <sstream>

#include "loclang/error.hpp"
#include "loclang/normal_form.hpp"

namespace loclang {

namespace {

constexpr std::array<std::string_view, 6> kKeywords = {"forall", "exists", "in", "true", "false", "min"};

enum class Tok {
  Ident, LParen, RParen, Comma, Dot, And, Or, Arrow, Iff, Bang,
  Eq, Neq, Lt, Le, Gt, Ge, End
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Bang: return "'!'";
    case Tok::Eq: return "'='";
    case Tok::Neq: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '\'';
}

class Lexer {
 public:
  Lexer(std::string_view src, int first_line) : src_(src), line_(first_line) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      int l = line_, c = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, {}, l, c});
        return out;
      }
      char ch = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
        out.push_back({Tok::Ident, std::string(src_.substr(start, pos_ - start)), l, c});
        continue;
      }
      auto emit = [&](Tok t, int len) {
        out.push_back({t, std::string(src_.substr(pos_, len)), l, c});
        for (int i = 0; i < len; ++i) advance();
      };
      switch (ch) {
        case '(': emit(Tok::LParen, 1); break;
        case ')': emit(Tok::RParen, 1); break;
        case ',': emit(Tok::Comma, 1); break;
        case '.': emit(Tok::Dot, 1); break;
        case '&': emit(Tok::And, 1); break;
        case '|': emit(Tok::Or, 1); break;
        case '=': emit(Tok::Eq, 1); break;
        case '-':
          if (peek(1) == '>') { emit(Tok::Arrow, 2); break; }
          throw SyntaxError("unexpected '-'", l, c);
        case '!':
          if (peek(1) == '=') emit(Tok::Neq, 2); else emit(Tok::Bang, 1);
          break;
        case '<':
          if (peek(1) == '-' && peek(2) == '>') emit(Tok::Iff, 3);
          else if (peek(1) == '=') emit(Tok::Le, 2);
          else emit(Tok::Lt, 1);
          break;
        case '>':
          if (peek(1) == '=') emit(Tok::Ge, 2); else emit(Tok::Gt, 1);
          break;
        default:
          throw SyntaxError(std::string("unexpected character '") + ch + "'", l, c);
      }
    }
  }

 private:
  char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char ch = src_[pos_];
      if (ch == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula sentence() {
    Formula f = formula();
    if (cur().kind != Tok::End) fail("expected end of input, found " + found());
    return f;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t k) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok t) const { return cur().kind == t; }
  bool at_keyword(std::string_view kw) const { return at(Tok::Ident) && cur().text == kw; }

  std::string found() const {
    if (at(Tok::End)) return "end of input";
    return "'" + cur().text + "'";
  }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, cur().line, cur().column); }

  Token expect(Tok t) {
    if (!at(t)) fail("expected " + std::string(describe(t)) + ", found " + found());
    return toks_[pos_++];
  }

  std::string symbol_name() {
    Token t = expect(Tok::Ident);
    if (is_keyword(t.text)) throw SyntaxError("keyword '" + t.text + "' used as a name", t.line, t.column);
    return t.text;
  }

  Formula formula() {
    Formula lhs = disjunction();
    if (at(Tok::Arrow)) {
      ++pos_;
      return implies(std::move(lhs), formula());
    }
    if (at(Tok::Iff)) {
      ++pos_;
      return iff(std::move(lhs), formula());
    }
    return lhs;
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (at(Tok::Or)) {
      ++pos_;
      parts.push_back(conjunction());
    }
    return disj(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (at(Tok::And)) {
      ++pos_;
      parts.push_back(unary());
    }
    return conj(std::move(parts));
  }

  Formula unary() {
    if (at(Tok::Bang)) {
      ++pos_;
      return neg(unary());
    }
    if (at_keyword("forall") || at_keyword("exists")) return quantified();
    return primary();
  }

  Formula quantified() {
    bool universal = cur().text == "forall";
    ++pos_;
    std::vector<std::string> vars;
    while (at(Tok::Ident) && !at_keyword("in")) vars.push_back(symbol_name());
    if (vars.empty()) fail("expected a variable after quantifier, found " + found());
    std::optional<std::string> guard;
    bool negated = false;
    if (at_keyword("in")) {
      ++pos_;
      if (at(Tok::Bang)) {
        negated = true;
        ++pos_;
      }
      guard = symbol_name();
    }
    expect(Tok::Dot);
    for (const auto& v : vars) scope_.push_back(v);
    Formula body = formula();
    scope_.resize(scope_.size() - vars.size());
    if (guard) {
      if (universal) {
        body = relativize(vars, *guard, negated, std::move(body));
      } else {
        std::vector<Formula> parts;
        for (const auto& v : vars) {
          Formula g = rel(*guard, {Term::var(v)});
          parts.push_back(negated ? neg(std::move(g)) : std::move(g));
        }
        parts.push_back(std::move(body));
        body = conj(std::move(parts));
      }
    }
    return universal ? forall(vars, std::move(body)) : exists(vars, std::move(body));
  }

  Formula primary() {
    if (at_keyword("true")) {
      ++pos_;
      return f_true();
    }
    if (at_keyword("false")) {
      ++pos_;
      return f_false();
    }
    if (at(Tok::LParen)) {
      ++pos_;
      Formula f = formula();
      expect(Tok::RParen);
      return f;
    }
    return atom();
  }

  static bool comparison(Tok t) {
    return t == Tok::Eq || t == Tok::Neq || t == Tok::Lt || t == Tok::Le || t == Tok::Gt || t == Tok::Ge;
  }

  Formula atom() {
    if (!at(Tok::Ident)) fail("expected a formula, found " + found());
    Token head = cur();
    bool relation_form = !is_keyword(head.text) && ahead(1).kind == Tok::LParen;
    if (relation_form) {
      std::size_t save = pos_;
      ++pos_;
      std::vector<Term> args = arguments();
      if (!comparison(cur().kind)) return rel(head.text, std::move(args));
      pos_ = save;
    }
    Term lhs = term();
    if (!comparison(cur().kind)) {
      throw SyntaxError("expected a comparison after term '" + render_term(lhs) + "'", head.line, head.column);
    }
    Tok op = cur().kind;
    ++pos_;
    Term rhs = term();
    switch (op) {
      case Tok::Eq: return eq(std::move(lhs), std::move(rhs));
      case Tok::Neq: return neg(eq(std::move(lhs), std::move(rhs)));
      case Tok::Lt: return lt(std::move(lhs), std::move(rhs));
      case Tok::Le: return le(std::move(lhs), std::move(rhs));
      case Tok::Gt: return lt(std::move(rhs), std::move(lhs));
      default: return le(std::move(rhs), std::move(lhs));
    }
  }

  std::vector<Term> arguments() {
    expect(Tok::LParen);
    std::vector<Term> args{term()};
    while (at(Tok::Comma)) {
      ++pos_;
      args.push_back(term());
    }
    expect(Tok::RParen);
    return args;
  }

  Term term() {
    if (at_keyword("min")) {
      ++pos_;
      return Term::min(arguments());
    }
    std::string name = symbol_name();
    if (at(Tok::LParen)) return Term::apply(name, arguments());
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (*it == name) return Term::var(name);
    return Term::constant(name);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

// ---------------------------------------------------------------- headers

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string w;
  while (is >> w) {
    if (!w.empty() && w.back() == ',') w.pop_back();
    if (!w.empty()) out.push_back(w);
  }
  return out;
}

const std::array<std::string_view, 6> kHeaderKeys = {"name", "alphabet", "bound", "constants", "functions", "relations"};

std::optional<std::pair<std::string, std::string>> header_line(std::string_view line) {
  std::string t = trim(line);
  auto colon = t.find(':');
  if (colon == std::string::npos) return std::nullopt;
  std::string key = trim(std::string_view(t).substr(0, colon));
  for (auto k : kHeaderKeys)
    if (key == k) return std::make_pair(key, trim(std::string_view(t).substr(colon + 1)));
  return std::nullopt;
}

Symbol parse_symbol_decl(const std::string& word, SymbolKind kind, int line) {
  if (kind == SymbolKind::Constant) return {word, kind, 0};
  auto slash = word.rfind('/');
  if (slash == std::string::npos) throw SyntaxError("expected name/arity, found '" + word + "'", line, 1);
  int arity = 0;
  auto tail = std::string_view(word).substr(slash + 1);
  auto [p, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), arity);
  if (ec != std::errc() || p != tail.data() + tail.size())
    throw SyntaxError("bad arity in '" + word + "'", line, 1);
  return {word.substr(0, slash), kind, arity};
}

void check_declared(const Signature& used, const Signature& declared) {
  for (const auto& s : used.symbols()) {
    const Symbol* d = declared.find(s.name);
    if (d == nullptr)
      throw UnknownSymbolError("symbol '" + s.name + "' is not in the declared signature " + declared.to_string());
    if (!(*d == s))
      throw ArityConflictError("symbol '" + s.name + "' used as " + std::string(to_string(s.kind)) + "/" +
                               std::to_string(s.arity) + " but declared as " + std::string(to_string(d->kind)) +
                               "/" + std::to_string(d->arity));
  }
}

// ------------------------------------------------------------------ render

int precedence(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return 0;
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Not: return 4;
    default: return 5;
  }
}

void render(const Formula& f, std::string& out);

void render_child(const Formula& child, bool wrap, std::string& out) {
  if (wrap) out += '(';
  render(child, out);
  if (wrap) out += ')';
}

void render(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True: out += "true"; return;
    case K::False: out += "false"; return;
    case K::Equal:
      out += render_term(f.terms[0]) + " = " + render_term(f.terms[1]);
      return;
    case K::Relation:
      if (f.name == kOrderSymbol && f.terms.size() == 2) {
        out += render_term(f.terms[0]) + " < " + render_term(f.terms[1]);
        return;
      }
      out += f.name + "(";
      for (std::size_t i = 0; i < f.terms.size(); ++i) {
        if (i) out += ", ";
        out += render_term(f.terms[i]);
      }
      out += ')';
      return;
    case K::Not: {
      const Formula& c = f.children.front();
      if (c.kind == K::Equal) {
        out += render_term(c.terms[0]) + " != " + render_term(c.terms[1]);
        return;
      }
      out += '!';
      render_child(c, precedence(c) < 4, out);
      return;
    }
    case K::And:
    case K::Or: {
      const char* op = f.kind == K::And ? " & " : " | ";
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += op;
        render_child(f.children[i], precedence(f.children[i]) <= precedence(f), out);
      }
      return;
    }
    case K::Implies:
      render_child(f.children[0], precedence(f.children[0]) <= 1, out);
      out += " -> ";
      render_child(f.children[1], precedence(f.children[1]) < 1, out);
      return;
    case K::Forall:
    case K::Exists: {
      out += f.kind == K::Forall ? "forall" : "exists";
      const Formula* body = &f;
      while (body->kind == f.kind) {
        out += ' ';
        out += body->name;
        body = &body->children.front();
      }
      out += " . ";
      render(*body, out);
      return;
    }
  }
}

}  // namespace

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords)
    if (k == word) return true;
  return false;
}

SyntaxError::SyntaxError(const std::string& message, int line, int column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

SentenceDocument parse_document(std::string_view text) {
  SentenceDocument doc;
  Signature declared;
  bool has_declared = false;
  std::size_t pos = 0;
  int line = 1;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    std::string t = trim(raw);
    if (!t.empty() && t.front() != '#') {
      auto header = header_line(raw);
      if (!header) break;
      const auto& [key, value] = *header;
      if (key == "name") {
        doc.name = value;
      } else if (key == "alphabet") {
        doc.alphabet = split_words(value);
      } else if (key == "bound") {
        if (value == "unknown" || value.empty()) {
          doc.bound.reset();
        } else {
          int b = 0;
          auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), b);
          if (ec != std::errc() || p != value.data() + value.size() || b < 1)
            throw SyntaxError("bound must be a positive integer or 'unknown'", line, 1);
          doc.bound = b;
        }
      } else {
        SymbolKind kind = key == "constants"   ? SymbolKind::Constant
                          : key == "functions" ? SymbolKind::Function
                                               : SymbolKind::Relation;
        has_declared = true;
        for (const auto& w : split_words(value)) declared.add(parse_symbol_decl(w, kind, line));
      }
    }
    if (eol == std::string_view::npos) {
      pos = text.size();
      break;
    }
    pos = eol + 1;
    ++line;
  }
  Parser parser(Lexer(text.substr(std::min(pos, text.size())), line).run());
  doc.body = parser.sentence();
  if (has_declared) {
    check_declared(signature_of(doc.body), declared);
    doc.declared = declared;
  }
  return doc;
}

Formula parse_sentence(std::string_view text) { return parse_document(text).body; }

std::string render_term(const Term& t) {
  std::string out;
  switch (t.kind) {
    case Term::Kind::Variable:
    case Term::Kind::Constant: return t.name;
    case Term::Kind::Apply: out = t.name; break;
    case Term::Kind::Min: out = "min"; break;
  }
  out += '(';
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ", ";
    out += render_term(t.args[i]);
  }
  out += ')';
  return out;
}

std::string render_sentence(const Formula& f) {
  std::string out;
  render(f, out);
  return out;
}

std::string render_document(const SentenceDocument& doc) {
  std::string out;
  if (!doc.name.empty()) out += "name: " + doc.name + "\n";
  if (doc.alphabet) {
    out += "alphabet:";
    for (const auto& a : *doc.alphabet) out += " " + a;
    out += "\n";
  }
  out += "bound: " + (doc.bound ? std::to_string(*doc.bound) : std::string("unknown")) + "\n";
  if (doc.declared) {
    auto line = [&](const char* key, const std::vector<Symbol>& syms) {
      if (syms.empty()) return;
      out += key;
      for (const auto& s : syms) {
        out += " " + s.name;
        if (s.kind != SymbolKind::Constant) out += "/" + std::to_string(s.arity);
      }
      out += "\n";
    };
    line("constants:", doc.declared->constants());
    line("functions:", doc.declared->functions());
    line("relations:", doc.declared->relations());
  }
  out += render_sentence(doc.body);
  out += "\n";
  return out;
}

}  // namespace loclang
