#include "cylalg/monomial.hpp"

#include <ostream>

#include "cylalg/error.hpp"

namespace cylalg {

Monomial Monomial::isometry(Tuple domain, Tuple range) {
  if (domain.length() != range.length()) {
    throw PreconditionError("V" + to_string(domain) + ";" + to_string(range) +
                            ": tuple length mismatch");
  }
  Monomial m;
  m.zero_ = false;
  m.domain_ = std::move(domain);
  m.range_ = std::move(range);
  return m;
}

Monomial Monomial::projection(Tuple a) {
  Tuple copy = a;
  return isometry(std::move(a), std::move(copy));
}

// With left = V(a,b) and right = V(c,d), the right factor lands in X_d and
// the left one needs X_a.
Monomial multiply(const Monomial& left, const Monomial& right) {
  if (left.is_zero() || right.is_zero()) return Monomial::zero();
  const Tuple& a = left.domain();
  const Tuple& b = left.range();
  const Tuple& c = right.domain();
  const Tuple& d = right.range();
  switch (compatibility(d, a)) {
    case Compatibility::AExtendsB: {
      // d = a·s
      return Monomial::isometry(c, b.concat(d.drop(a.length())));
    }
    case Compatibility::BProperlyExtendsA: {
      // a = d·u
      return Monomial::isometry(c.concat(a.drop(d.length())), b);
    }
    case Compatibility::Disjoint:
      break;
  }
  return Monomial::zero();
}

Monomial adjoint(const Monomial& m) {
  if (m.is_zero()) return m;
  return Monomial::isometry(m.range(), m.domain());
}

Monomial normal_form(std::span<const Monomial> word) {
  if (word.empty()) throw PreconditionError("normal_form of an empty word");
  Monomial acc = word.front();
  for (std::size_t i = 1; i < word.size(); ++i) acc = multiply(acc, word[i]);
  return acc;
}

std::optional<SequenceDesc> act(const Monomial& m, const SequenceDesc& x) {
  if (m.is_zero() || !member(x, m.domain())) return std::nullopt;
  const std::size_t n = m.length();
  Tuple expanded = x.prefix.padded(n, x.tail);
  return SequenceDesc{m.range().concat(expanded.drop(n)), x.tail};
}

std::string to_string(const Monomial& m) {
  if (m.is_zero()) return "0";
  if (m.is_projection()) return "P(" + to_string(m.domain()) + ")";
  return "V(" + to_string(m.domain()) + ";" + to_string(m.range()) + ")";
}

std::ostream& operator<<(std::ostream& os, const Monomial& m) { return os << to_string(m); }

}  // namespace cylalg
