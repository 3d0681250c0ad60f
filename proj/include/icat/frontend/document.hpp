#pragma once

// The spec format: a sequence of declarations, each either a one-line set
//
//   set X = {a, b, <a, b>}
//
// or a block
//
//   kind name [: head atoms [-> atom]]
//     key atoms [-> atom]
//     ...
//   end
//
// Atoms are leaf names or tuples written <a, b> or with angle brackets.
// `#` starts a comment.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icat/atom.hpp"
#include "icat/error.hpp"

namespace icat::frontend {

struct Location {
  int line = 0;
  int col = 0;
  std::string str() const { return std::to_string(line) + ":" + std::to_string(col); }
};

// Items and an optional value: `a b c -> d`.
struct Row {
  std::vector<Atom> items;
  std::optional<Atom> value;
  Location at;

  const std::string& key() const { return items.front().str(); }
  friend bool operator==(const Row& a, const Row& b) { return a.items == b.items && a.value == b.value; }
};

struct Decl {
  std::string kind;
  std::string name;
  Location at;
  std::vector<Atom> elements;  // set declarations
  std::optional<Row> head;     // after ':'
  std::vector<Row> rows;

  friend bool operator==(const Decl& a, const Decl& b) {
    return a.kind == b.kind && a.name == b.name && a.elements == b.elements && a.head == b.head &&
           a.rows == b.rows;
  }
};

struct SpecDocument {
  std::vector<Decl> decls;

  const Decl* find(std::string_view name) const {
    for (const auto& d : decls)
      if (d.name == name) return &d;
    return nullptr;
  }
  friend bool operator==(const SpecDocument&, const SpecDocument&) = default;
};

inline const std::vector<std::string>& block_kinds() {
  static const std::vector<std::string> kinds{
      "map",     "category",         "monoidal",    "monoidal_functor", "monoidal_nat", "functor", "nat",
      "enriched", "enriched_functor", "enriched_nat", "family",           "multicat"};
  return kinds;
}

template <class E>
E located(const Location& at, const std::string& msg) {
  return E(at.str() + ": " + msg);
}

namespace detail {

enum class Tok { Name, Open, Close, Comma, Arrow, Equals, Colon, LBrace, RBrace, End };

struct Token {
  Tok kind;
  std::string text;
  Location at;
};

inline bool starts_with(std::string_view s, std::size_t i, std::string_view p) { return s.substr(i, p.size()) == p; }

inline constexpr std::string_view kArrowGlyph = "\xE2\x86\x92";  // →

// Splits one line into tokens; `#` ends the line.
inline std::vector<Token> lex_line(std::string_view s, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto loc = [&](std::size_t at) { return Location{line, static_cast<int>(at) + 1}; };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') break;
    auto single = [&](Tok k, std::size_t len) {
      out.push_back({k, std::string(s.substr(i, len)), loc(i)});
      i += len;
    };
    if (starts_with(s, i, "->")) { single(Tok::Arrow, 2); continue; }
    if (starts_with(s, i, kArrowGlyph)) { single(Tok::Arrow, kArrowGlyph.size()); continue; }
    if (starts_with(s, i, kOpenAngle)) { single(Tok::Open, kOpenAngle.size()); continue; }
    if (starts_with(s, i, kCloseAngle)) { single(Tok::Close, kCloseAngle.size()); continue; }
    switch (c) {
      case '<': single(Tok::Open, 1); continue;
      case '>': single(Tok::Close, 1); continue;
      case ',': single(Tok::Comma, 1); continue;
      case '=': single(Tok::Equals, 1); continue;
      case ':': single(Tok::Colon, 1); continue;
      case '{': single(Tok::LBrace, 1); continue;
      case '}': single(Tok::RBrace, 1); continue;
      default: break;
    }
    std::size_t j = i;
    while (j < s.size()) {
      unsigned char d = static_cast<unsigned char>(s[j]);
      if (starts_with(s, j, "->") || starts_with(s, j, kArrowGlyph) || starts_with(s, j, kOpenAngle) ||
          starts_with(s, j, kCloseAngle))
        break;
      bool ok = d >= 0x80 || (d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') || (d >= '0' && d <= '9') ||
                d == '_' || d == '.' || d == '-';
      if (!ok) break;
      ++j;
    }
    if (j == i) throw SyntaxError(line, static_cast<int>(i) + 1, "unexpected character '" + std::string(1, s[i]) + "'");
    out.push_back({Tok::Name, std::string(s.substr(i, j - i)), loc(i)});
    i = j;
  }
  out.push_back({Tok::End, "end of line", loc(s.size())});
  return out;
}

class LineParser {
 public:
  explicit LineParser(std::vector<Token> toks) : t_(std::move(toks)) {}

  const Token& peek() const { return t_[p_]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() { return t_[p_ < t_.size() - 1 ? p_++ : p_]; }

  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw SyntaxError(t.at.line, t.at.col, msg + ", found '" + t.text + "'");
  }

  Atom atom() {
    if (at(Tok::Name)) {
      const Token& t = next();
      try {
        return leaf(t.text);
      } catch (const MalformedData&) {
        throw SyntaxError(t.at.line, t.at.col, "invalid atom '" + t.text + "'");
      }
    }
    if (!at(Tok::Open)) fail("expected an atom");
    next();
    std::vector<Atom> parts;
    if (!at(Tok::Close)) {
      parts.push_back(atom());
      while (at(Tok::Comma)) {
        next();
        parts.push_back(atom());
      }
    }
    expect(Tok::Close, "',' or closing bracket");
    return tup(std::move(parts));
  }

  // atoms [-> atom] up to the end of the line.
  Row row() {
    Row r;
    r.at = peek().at;
    while (at(Tok::Name) || at(Tok::Open)) r.items.push_back(atom());
    if (r.items.empty()) fail("expected an atom");
    if (at(Tok::Arrow)) {
      next();
      r.value = atom();
    }
    expect(Tok::End, "end of line");
    return r;
  }

 private:
  std::vector<Token> t_;
  std::size_t p_ = 0;
};

}  // namespace detail

// Syntax only; names are not resolved.
inline SpecDocument parse_document(std::string_view text) {
  SpecDocument doc;
  Decl* open = nullptr;
  int line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view s = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line;
    detail::LineParser p(detail::lex_line(s, line));
    if (p.at(detail::Tok::End)) continue;

    if (open) {
      if (p.peek().kind == detail::Tok::Name && p.peek().text == "end") {
        p.next();
        p.expect(detail::Tok::End, "end of line after 'end'");
        open = nullptr;
        continue;
      }
      open->rows.push_back(p.row());
      continue;
    }

    const detail::Token& kw = p.expect(detail::Tok::Name, "a declaration");
    Decl d;
    d.kind = kw.text;
    d.at = kw.at;
    const detail::Token& name = p.expect(detail::Tok::Name, "a declaration name");
    d.name = name.text;
    if (d.kind == "set") {
      p.expect(detail::Tok::Equals, "'='");
      p.expect(detail::Tok::LBrace, "'{'");
      if (!p.at(detail::Tok::RBrace)) {
        d.elements.push_back(p.atom());
        while (p.at(detail::Tok::Comma)) {
          p.next();
          d.elements.push_back(p.atom());
        }
      }
      p.expect(detail::Tok::RBrace, "',' or '}'");
      p.expect(detail::Tok::End, "end of line");
      doc.decls.push_back(std::move(d));
      continue;
    }
    bool known = false;
    for (const auto& k : block_kinds()) known |= k == d.kind;
    if (!known) throw SyntaxError(kw.at.line, kw.at.col, "unknown declaration kind '" + d.kind + "'");
    if (p.at(detail::Tok::Colon)) {
      p.next();
      d.head = p.row();
    } else {
      p.expect(detail::Tok::End, "':' or end of line");
    }
    doc.decls.push_back(std::move(d));
    open = &doc.decls.back();
  }
  if (open) throw SyntaxError(line, 1, "block '" + open->name + "' is missing 'end'");
  return doc;
}

inline std::string print_row(const Row& r) {
  std::string s;
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    if (i) s += ' ';
    s += r.items[i].str();
  }
  if (r.value) s += " -> " + r.value->str();
  return s;
}

// Canonical text; parse_document(print_document(d)) == d.
inline std::string print_document(const SpecDocument& doc) {
  std::string out;
  for (std::size_t i = 0; i < doc.decls.size(); ++i) {
    const Decl& d = doc.decls[i];
    if (i) out += '\n';
    if (d.kind == "set") {
      out += "set " + d.name + " = {" + join_atoms(d.elements) + "}\n";
      continue;
    }
    out += d.kind + " " + d.name;
    if (d.head) out += " : " + print_row(*d.head);
    out += '\n';
    for (const Row& r : d.rows) out += "  " + print_row(r) + '\n';
    out += "end\n";
  }
  return out;
}

}  // namespace icat::frontend
