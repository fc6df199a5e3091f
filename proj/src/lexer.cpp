#include "sepgraph/lexer.hpp"

#include <cctype>

namespace sepgraph {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@' || c == '.' ||
         c == '\'' || c == '$';
}

bool is_integer(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::vector<Token> tokenize_line(std::string_view line, int line_number) {
  std::vector<Token> out;
  std::size_t i = 0;
  bool glued = false;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      glued = false;
      ++i;
      continue;
    }
    const int col = static_cast<int>(i) + 1;
    if (is_ident_char(c)) {
      std::size_t j = i;
      while (j < line.size() && is_ident_char(line[j])) ++j;
      out.push_back({TokenKind::Ident, std::string(line.substr(i, j - i)), line_number, col, glued});
      i = j;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({TokenKind::Symbol, "->", line_number, col, glued});
      i += 2;
    } else if (std::string_view("{};=:*+-()/,").find(c) != std::string_view::npos) {
      out.push_back({TokenKind::Symbol, std::string(1, c), line_number, col, glued});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_number, col);
    }
    glued = true;
  }
  return out;
}

}  // namespace sepgraph
