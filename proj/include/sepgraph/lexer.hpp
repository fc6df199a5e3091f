#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sepgraph {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

enum class TokenKind { Ident, Symbol };

struct Token {
  TokenKind kind;
  std::string text;
  int line = 1;
  int column = 1;
  bool glued = false;  // no whitespace between this token and the previous one
};

// Identifiers are runs of [A-Za-z0-9_@.'$]; symbols are "->" and single
// characters from "{};=:*+-()/,". '#' starts a comment.
std::vector<Token> tokenize_line(std::string_view line, int line_number);

bool is_ident_char(char c);
bool is_integer(std::string_view s);

}  // namespace sepgraph
