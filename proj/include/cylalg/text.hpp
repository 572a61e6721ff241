#pragma once

// Character-level scanning shared by the tuple, expression, state and
// record parsers.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cylalg::text {

class Scanner {
 public:
  explicit Scanner(std::string_view source) : source_(source) {}

  void skip_space();
  bool at_end();
  /// Next non-space character, or '\0' at end of input.
  char peek();
  bool accept(char c);
  void expect(char c);
  /// Reads one or more decimal digits.
  std::string digits();
  std::uint64_t label_value();
  /// Reads [A-Za-z_][A-Za-z0-9_.-]*.
  std::string identifier();
  /// Rest of the input, trimmed.
  std::string_view rest();

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

  [[noreturn]] void fail(const std::string& message) const;

  struct Mark {
    std::size_t pos, line, column;
  };
  Mark mark() const noexcept { return {pos_, line_, column_}; }
  [[noreturn]] static void fail_at(const Mark& at, const std::string& message);

 private:
  void advance();

  std::string_view source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

/// Splits a command line into words; double quotes group, backslash escapes
/// inside quotes.
std::vector<std::string> split_command_line(std::string_view line);
/// Inverse of split_command_line for a single word.
std::string quote_word(std::string_view word);

}  // namespace cylalg::text
