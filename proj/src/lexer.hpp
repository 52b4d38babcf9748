#pragma once

#include <secview/error.hpp>

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

namespace secview::detail {

enum class Tok { Ident, Int, String, LParen, RParen, LBrace, RBrace, Comma, Dot, If, Colon, Question, At, Op, Pipe, Semi, End };

struct Token {
  Tok kind = Tok::End;
  std::string text; // identifier, operator spelling, string contents, digits
  std::size_t line = 1;
  std::size_t col = 1;
};

// Hand-rolled scanner shared by the query language and program text readers.
// `%` starts a comment that runs to the end of the line.
class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const noexcept { return cur_; }
  Token next() {
    Token t = cur_;
    advance();
    return t;
  }
  bool at(Tok k) const noexcept { return cur_.kind == k; }
  bool at_op(std::string_view op) const noexcept { return cur_.kind == Tok::Op && cur_.text == op; }
  bool at_ident(std::string_view id) const noexcept { return cur_.kind == Tok::Ident && cur_.text == id; }

  Token expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what);
    return next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string got = cur_.kind == Tok::End ? "end of input" : "'" + cur_.text + "'";
    throw ParseError(msg + ", got " + got, cur_.line, cur_.col);
  }

private:
  char ch(std::size_t off = 0) const noexcept { return pos_ + off < src_.size() ? src_[pos_ + off] : '\0'; }

  void bump() {
    if (ch() == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(ch()))) bump();
      if (ch() == '%') {
        while (pos_ < src_.size() && ch() != '\n') bump();
        continue;
      }
      return;
    }
  }

  void advance() {
    skip_space();
    cur_ = Token{};
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= src_.size()) return;
    char c = ch();
    auto single = [&](Tok k) {
      cur_.kind = k;
      cur_.text = std::string(1, c);
      bump();
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      cur_.kind = Tok::Ident;
      while (std::isalnum(static_cast<unsigned char>(ch())) || ch() == '_') {
        cur_.text += ch();
        bump();
      }
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && std::isdigit(static_cast<unsigned char>(ch(1))))) {
      cur_.kind = Tok::Int;
      cur_.text += c;
      bump();
      while (std::isdigit(static_cast<unsigned char>(ch()))) {
        cur_.text += ch();
        bump();
      }
      return;
    }
    if (c == '"') {
      cur_.kind = Tok::String;
      bump();
      while (pos_ < src_.size() && ch() != '"') {
        if (ch() == '\\' && pos_ + 1 < src_.size()) bump();
        cur_.text += ch();
        bump();
      }
      if (ch() != '"') throw ParseError("unterminated string", cur_.line, cur_.col);
      bump();
      return;
    }
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '{': return single(Tok::LBrace);
      case '}': return single(Tok::RBrace);
      case ',': return single(Tok::Comma);
      case '.': return single(Tok::Dot);
      case '?': return single(Tok::Question);
      case '@': return single(Tok::At);
      case '|': return single(Tok::Pipe);
      case ';': return single(Tok::Semi);
      case ':':
        if (ch(1) == '-') {
          cur_.kind = Tok::If;
          cur_.text = ":-";
          bump();
          bump();
          return;
        }
        return single(Tok::Colon);
      case '=':
        cur_.kind = Tok::Op;
        cur_.text = "=";
        bump();
        if (ch() == '=') bump();
        return;
      case '!':
        if (ch(1) == '=') {
          cur_.kind = Tok::Op;
          cur_.text = "!=";
          bump();
          bump();
          return;
        }
        break;
      case '<':
      case '>': {
        cur_.kind = Tok::Op;
        cur_.text = std::string(1, c);
        bump();
        if (ch() == '=') {
          cur_.text += '=';
          bump();
        } else if (c == '<' && ch() == '>') {
          cur_.text = "!=";
          bump();
        }
        return;
      }
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token cur_;
};

} // namespace secview::detail
