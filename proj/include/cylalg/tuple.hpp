#pragma once

// Labels, finite tuples and finitely described points of the sequence space.
// Coordinates are 1-indexed throughout.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cylalg {

namespace text {
class Scanner;
}

/// One coordinate value. Any finite set of labels has a label outside it.
struct Label {
  std::uint64_t value = 0;

  auto operator<=>(const Label&) const = default;
};

/// Finite sequence of labels naming the cylinder of all sequences that start
/// with it. The empty tuple names the whole space.
class Tuple {
 public:
  Tuple() = default;
  Tuple(std::initializer_list<std::uint64_t> values);
  explicit Tuple(std::vector<Label> entries) : entries_(std::move(entries)) {}

  std::size_t length() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  /// Coordinate i, 1 <= i <= length().
  Label at(std::size_t i) const;
  const std::vector<Label>& entries() const noexcept { return entries_; }

  /// Coordinates 1..n.
  Tuple prefix(std::size_t n) const;
  /// Coordinates n+1..length().
  Tuple drop(std::size_t n) const;
  Tuple concat(const Tuple& tail) const;
  /// Extends to length n by appending `fill`; no-op when already that long.
  Tuple padded(std::size_t n, Label fill) const;

  auto operator<=>(const Tuple&) const = default;

 private:
  std::vector<Label> entries_;
};

/// a agrees with b on coordinates 1..length(b).
bool extends(const Tuple& a, const Tuple& b);
bool properly_extends(const Tuple& a, const Tuple& b);

enum class Compatibility { AExtendsB, BProperlyExtendsA, Disjoint };
Compatibility compatibility(const Tuple& a, const Tuple& b);

/// The sequence prefix, tail, tail, tail, ...
struct SequenceDesc {
  Tuple prefix;
  Label tail;

  Label coordinate(std::size_t i) const;
  /// Coordinates 1..n, completing from the tail as needed.
  Tuple initial(std::size_t n) const;
  /// Same point with trailing tail-valued prefix entries removed.
  SequenceDesc canonical() const;

  // Equality is equality of the described points.
  friend bool operator==(const SequenceDesc& x, const SequenceDesc& y);
  friend std::strong_ordering operator<=>(const SequenceDesc& x, const SequenceDesc& y);
};

bool member(const SequenceDesc& x, const Tuple& a);

std::string to_string(const Tuple& t);
std::string to_string(const SequenceDesc& x);
std::ostream& operator<<(std::ostream& os, const Tuple& t);
std::ostream& operator<<(std::ostream& os, const SequenceDesc& x);

/// `(1,5,2)`; `()` is the empty tuple.
Tuple read_tuple(text::Scanner& in);
Tuple parse_tuple(std::string_view source);
/// `(1,2)/0`, or `(1,2)` with tail 0.
SequenceDesc read_sequence(text::Scanner& in);
SequenceDesc parse_sequence(std::string_view source);

}  // namespace cylalg
