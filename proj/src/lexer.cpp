#include "lexer.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>

namespace causal::detail {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, k = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t s = 0; s < n; ++s, ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (k < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[k]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (k < text.size() && text[k] != '\n') advance(1);
      continue;
    }
    SourcePos pos{line, col};
    if (std::isalpha(c) || c == '_') {
      std::size_t e = k;
      while (e < text.size() && (std::isalnum(static_cast<unsigned char>(text[e])) || text[e] == '_')) ++e;
      out.push_back({Tok::name, std::string(text.substr(k, e - k)), pos});
      advance(e - k);
      continue;
    }
    if (std::isdigit(c) || (c == '.' && k + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[k + 1])))) {
      std::size_t e = k;
      auto digits = [&] {
        while (e < text.size() && std::isdigit(static_cast<unsigned char>(text[e]))) ++e;
      };
      digits();
      if (e < text.size() && text[e] == '.') {
        ++e;
        digits();
      }
      if (e < text.size() && (text[e] == 'e' || text[e] == 'E')) {
        std::size_t save = e++;
        if (e < text.size() && (text[e] == '+' || text[e] == '-')) ++e;
        if (e < text.size() && std::isdigit(static_cast<unsigned char>(text[e])))
          digits();
        else
          e = save;
      }
      out.push_back({Tok::number, std::string(text.substr(k, e - k)), pos});
      advance(e - k);
      continue;
    }
    if (c == '-' && k + 1 < text.size() && text[k + 1] == '>') {
      out.push_back({Tok::punct, "->", pos});
      advance(2);
      continue;
    }
    if (std::string_view(":|{}(),=").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Tok::punct, std::string(1, static_cast<char>(c)), pos});
      advance(1);
      continue;
    }
    out.push_back({Tok::invalid, std::string(1, static_cast<char>(c)), pos});
    advance(1);
  }
  out.push_back({Tok::end, "", {line, col}});
  return out;
}

const Token& Cursor::peek(std::size_t ahead) const {
  return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::name: return "'" + t.text + "'";
    case Tok::number: return "number " + t.text;
    case Tok::punct: return "'" + t.text + "'";
    case Tok::invalid: return "character '" + t.text + "'";
  }
  return "?";
}

void Cursor::fail(std::string message, std::vector<std::string> expected) const {
  throw ParseError(peek().pos, std::move(message), std::move(expected));
}

const Token& Cursor::expect_punct(std::string_view p) {
  if (!at_punct(p)) fail("unexpected " + describe(peek()), {"'" + std::string(p) + "'"});
  return next();
}

const Token& Cursor::expect_name(std::string_view what) {
  if (peek().kind != Tok::name) fail("unexpected " + describe(peek()), {std::string(what)});
  return next();
}

const Token& Cursor::expect_keyword(std::string_view kw) {
  if (!at_name(kw)) fail("unexpected " + describe(peek()), {"'" + std::string(kw) + "'"});
  return next();
}

double Cursor::expect_number() {
  if (peek().kind != Tok::number) fail("unexpected " + describe(peek()), {"number"});
  const Token& t = next();
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(t.text.c_str(), &end);
  if (errno != 0 || end != t.text.c_str() + t.text.size())
    throw ParseError(t.pos, "malformed number " + t.text);
  return v;
}

std::size_t Cursor::expect_int() {
  if (peek().kind != Tok::number) fail("unexpected " + describe(peek()), {"integer"});
  const Token& t = next();
  if (t.text.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(t.pos, "expected an integer, got " + t.text, {"integer"});
  if (t.text.size() > 9) throw ParseError(t.pos, "integer " + t.text + " is too large");
  return std::stoul(t.text);
}

}  // namespace causal::detail
