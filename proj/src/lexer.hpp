//===- lexer.hpp - Tokenizer shared by the rule and program front ends ---===//

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace errchain::detail {

enum class TokenKind { Ident, Integer, String, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text; // identifier, punctuation or decoded string contents
  std::int64_t number = 0;
  int line = 1;
  int column = 1;
};

/// Splits `text` into tokens. `#` starts a comment running to end of line.
/// Throws ParseError on malformed input.
std::vector<Token> tokenize(std::string_view text, const std::string &source);

/// Cursor over a token vector with the usual expect/accept helpers.
class TokenCursor {
public:
  TokenCursor(std::vector<Token> tokens, std::string source)
      : tokens_(std::move(tokens)), source_(std::move(source)) {}

  const Token &peek(std::size_t ahead = 0) const;
  const Token &next();
  bool at_end() const { return peek().kind == TokenKind::End; }

  bool is_punct(std::string_view p, std::size_t ahead = 0) const;
  bool is_ident(std::string_view word, std::size_t ahead = 0) const;
  bool accept_punct(std::string_view p);

  const Token &expect_punct(std::string_view p);
  const Token &expect_ident(std::string_view what);
  const Token &expect_kind(TokenKind kind, std::string_view what);

  [[noreturn]] void fail(const Token &at, const std::string &message) const;
  const std::string &source() const { return source_; }

private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string source_;
};

inline bool starts_upper(std::string_view s) {
  return !s.empty() && s.front() >= 'A' && s.front() <= 'Z';
}

} // namespace errchain::detail
