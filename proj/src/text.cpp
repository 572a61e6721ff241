#include "cylalg/text.hpp"

#include <cctype>
#include <limits>

#include "cylalg/error.hpp"

namespace cylalg {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
            message),
      line_(line),
      column_(column) {}

namespace text {

void Scanner::advance() {
  if (pos_ >= source_.size()) return;
  if (source_[pos_] == '\n') {
    ++line_;
    column_ = 1;
  } else {
    ++column_;
  }
  ++pos_;
}

void Scanner::skip_space() {
  while (pos_ < source_.size() && std::isspace(static_cast<unsigned char>(source_[pos_]))) {
    advance();
  }
}

bool Scanner::at_end() {
  skip_space();
  return pos_ >= source_.size();
}

char Scanner::peek() {
  skip_space();
  return pos_ < source_.size() ? source_[pos_] : '\0';
}

bool Scanner::accept(char c) {
  if (peek() != c) return false;
  advance();
  return true;
}

void Scanner::expect(char c) {
  if (!accept(c)) {
    if (at_end()) fail(std::string("expected '") + c + "' but reached end of input");
    fail(std::string("expected '") + c + "' but found '" + source_[pos_] + "'");
  }
}

std::string Scanner::digits() {
  skip_space();
  std::string out;
  while (pos_ < source_.size() && std::isdigit(static_cast<unsigned char>(source_[pos_]))) {
    out.push_back(source_[pos_]);
    advance();
  }
  if (out.empty()) {
    if (pos_ >= source_.size()) fail("expected a number but reached end of input");
    fail(std::string("expected a number but found '") + source_[pos_] + "'");
  }
  return out;
}

std::uint64_t Scanner::label_value() {
  const Mark at = mark();
  const std::string d = digits();
  std::uint64_t value = 0;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (char c : d) {
    const auto digit = static_cast<std::uint64_t>(c - '0');
    if (value > (kMax - digit) / 10) fail_at(at, "label " + d + " is out of range");
    value = value * 10 + digit;
  }
  return value;
}

std::string Scanner::identifier() {
  skip_space();
  auto is_head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_body = [&](char c) {
    return is_head(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-';
  };
  if (pos_ >= source_.size() || !is_head(source_[pos_])) fail("expected a name");
  std::string out;
  while (pos_ < source_.size() && is_body(source_[pos_])) {
    out.push_back(source_[pos_]);
    advance();
  }
  return out;
}

std::string_view Scanner::rest() {
  skip_space();
  std::string_view r = source_.substr(pos_);
  while (!r.empty() && std::isspace(static_cast<unsigned char>(r.back()))) r.remove_suffix(1);
  pos_ = source_.size();
  return r;
}

void Scanner::fail(const std::string& message) const {
  throw ParseError(message, line_, column_);
}

void Scanner::fail_at(const Mark& at, const std::string& message) {
  throw ParseError(message, at.line, at.column);
}

std::vector<std::string> split_command_line(std::string_view line) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::string word;
    bool quoted_any = false;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
      if (line[i] == '"') {
        quoted_any = true;
        ++i;
        while (i < line.size() && line[i] != '"') {
          if (line[i] == '\\' && i + 1 < line.size()) ++i;
          word.push_back(line[i++]);
        }
        if (i >= line.size()) throw ParseError("unterminated quote", 1, i + 1);
        ++i;
      } else {
        word.push_back(line[i++]);
      }
    }
    if (!word.empty() || quoted_any) words.push_back(std::move(word));
  }
  return words;
}

std::string quote_word(std::string_view word) {
  bool plain = !word.empty();
  for (char c : word) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == '\\' || c == '#') {
      plain = false;
    }
  }
  if (plain) return std::string(word);
  std::string out = "\"";
  for (char c : word) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace text
}  // namespace cylalg
