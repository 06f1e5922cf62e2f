#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "causal/model_file.hpp"

namespace causal::detail {

enum class Tok { name, number, punct, invalid, end };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

/// NAME = [A-Za-z_][A-Za-z0-9_]*, numbers in decimal or exponent form,
/// punctuation : | { } ( ) , = ->. `#` comments run to end of line. Other
/// characters become `invalid` tokens so the parser reports what it expected.
std::vector<Token> tokenize(std::string_view text);

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_punct(std::string_view p) const { return peek().kind == Tok::punct && peek().text == p; }
  bool at_name(std::string_view n) const { return peek().kind == Tok::name && peek().text == n; }
  bool at_end() const { return peek().kind == Tok::end; }

  [[noreturn]] void fail(std::string message, std::vector<std::string> expected) const;
  const Token& expect_punct(std::string_view p);
  const Token& expect_name(std::string_view what = "identifier");
  const Token& expect_keyword(std::string_view kw);
  double expect_number();
  std::size_t expect_int();

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string describe(const Token& t);

}  // namespace causal::detail
