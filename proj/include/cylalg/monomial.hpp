#pragma once

// The *-semigroup of prefix-rewriting partial isometries. V(a,b) sends the
// basis vector of a sequence starting with a to the basis vector of the same
// sequence with that initial segment replaced by b. P(a) = V(a,a).

#include <compare>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "cylalg/tuple.hpp"

namespace cylalg {

class Monomial {
 public:
  /// The zero operator.
  Monomial() = default;

  static Monomial zero() { return Monomial(); }
  /// Throws PreconditionError unless length(domain) == length(range).
  static Monomial isometry(Tuple domain, Tuple range);
  static Monomial projection(Tuple a);

  bool is_zero() const noexcept { return zero_; }
  bool is_projection() const noexcept { return !zero_ && domain_ == range_; }
  const Tuple& domain() const noexcept { return domain_; }
  const Tuple& range() const noexcept { return range_; }
  std::size_t length() const noexcept { return domain_.length(); }

  auto operator<=>(const Monomial&) const = default;

 private:
  bool zero_ = true;
  Tuple domain_;
  Tuple range_;
};

/// Operator composition `left ∘ right`; `right` acts first.
Monomial multiply(const Monomial& left, const Monomial& right);
inline Monomial operator*(const Monomial& left, const Monomial& right) {
  return multiply(left, right);
}

Monomial adjoint(const Monomial& m);

/// Product of a non-empty word, leftmost factor outermost.
Monomial normal_form(std::span<const Monomial> word);

/// Image of the basis vector of x, or nullopt when it is sent to 0.
std::optional<SequenceDesc> act(const Monomial& m, const SequenceDesc& x);

/// `0`, `P((1))` or `V((1);(2))`.
std::string to_string(const Monomial& m);
std::ostream& operator<<(std::ostream& os, const Monomial& m);

}  // namespace cylalg
