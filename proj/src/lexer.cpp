//===- lexer.cpp ----------------------------------------------------------===//

#include "lexer.hpp"

#include "errchain/errors.hpp"

#include <array>
#include <cctype>
#include <limits>

namespace errchain::detail {

namespace {

constexpr std::array<std::string_view, 3> kTwoCharPunct = {":=", "=>", "=="};
constexpr std::string_view kOneCharPunct = "{}()[];,:|*+?/=.";

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

} // namespace

std::vector<Token> tokenize(std::string_view text, const std::string &source) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n')
        advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }

    Token tok;
    tok.line = line;
    tok.column = column;

    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j]))
        ++j;
      tok.kind = TokenKind::Ident;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (digit(c) ||
               (c == '-' && i + 1 < text.size() && digit(text[i + 1]))) {
      std::size_t j = i + 1;
      while (j < text.size() && digit(text[j]))
        ++j;
      tok.kind = TokenKind::Integer;
      tok.text = std::string(text.substr(i, j - i));
      try {
        tok.number = std::stoll(tok.text);
      } catch (const std::out_of_range &) {
        throw ParseError(source, line, column, "integer literal out of range");
      }
      advance(j - i);
    } else if (c == '"') {
      std::string value;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < text.size()) {
        char d = text[j];
        if (d == '"') {
          closed = true;
          break;
        }
        if (d == '\n')
          break;
        if (d == '\\' && j + 1 < text.size()) {
          char e = text[j + 1];
          switch (e) {
          case 'n':
            value += '\n';
            break;
          case 't':
            value += '\t';
            break;
          case '"':
          case '\\':
            value += e;
            break;
          default:
            throw ParseError(source, line, column + static_cast<int>(j - i),
                             std::string("unknown escape \\") + e);
          }
          j += 2;
          continue;
        }
        value += d;
        ++j;
      }
      if (!closed)
        throw ParseError(source, line, column, "unterminated string literal");
      tok.kind = TokenKind::String;
      tok.text = std::move(value);
      advance(j + 1 - i);
    } else {
      std::string_view rest = text.substr(i);
      bool matched = false;
      for (auto p : kTwoCharPunct) {
        if (rest.substr(0, 2) == p) {
          tok.kind = TokenKind::Punct;
          tok.text = std::string(p);
          advance(2);
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (kOneCharPunct.find(c) == std::string_view::npos)
          throw ParseError(source, line, column,
                           std::string("unexpected character '") + c + "'");
        tok.kind = TokenKind::Punct;
        tok.text = std::string(1, c);
        advance(1);
      }
    }
    out.push_back(std::move(tok));
  }

  Token end;
  end.kind = TokenKind::End;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

const Token &TokenCursor::peek(std::size_t ahead) const {
  std::size_t idx = pos_ + ahead;
  if (idx >= tokens_.size())
    return tokens_.back();
  return tokens_[idx];
}

const Token &TokenCursor::next() {
  const Token &tok = peek();
  if (pos_ < tokens_.size() - 1)
    ++pos_;
  return tok;
}

bool TokenCursor::is_punct(std::string_view p, std::size_t ahead) const {
  const Token &tok = peek(ahead);
  return tok.kind == TokenKind::Punct && tok.text == p;
}

bool TokenCursor::is_ident(std::string_view word, std::size_t ahead) const {
  const Token &tok = peek(ahead);
  return tok.kind == TokenKind::Ident && tok.text == word;
}

bool TokenCursor::accept_punct(std::string_view p) {
  if (!is_punct(p))
    return false;
  next();
  return true;
}

const Token &TokenCursor::expect_punct(std::string_view p) {
  if (!is_punct(p))
    fail(peek(), "expected '" + std::string(p) + "'");
  return next();
}

const Token &TokenCursor::expect_ident(std::string_view what) {
  return expect_kind(TokenKind::Ident, what);
}

const Token &TokenCursor::expect_kind(TokenKind kind, std::string_view what) {
  if (peek().kind != kind)
    fail(peek(), "expected " + std::string(what));
  return next();
}

void TokenCursor::fail(const Token &at, const std::string &message) const {
  std::string found;
  switch (at.kind) {
  case TokenKind::End:
    found = "end of input";
    break;
  case TokenKind::String:
    found = "string literal";
    break;
  default:
    found = "'" + at.text + "'";
  }
  throw ParseError(source_, at.line, at.column, message + ", found " + found);
}

} // namespace errchain::detail
