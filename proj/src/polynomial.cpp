#include "cylalg/polynomial.hpp"

#include <algorithm>
#include <ostream>

#include "cylalg/error.hpp"

namespace cylalg {

Polynomial::Polynomial(const Monomial& m, const Scalar& coefficient) { add_term(m, coefficient); }

Polynomial Polynomial::constant(const Scalar& c) {
  return Polynomial(Monomial::projection(Tuple()), c);
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

void Polynomial::add_term(const Monomial& m, const Scalar& coefficient) {
  if (m.is_zero() || coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (inserted) return;
  it->second += coefficient;
  if (it->second.is_zero()) terms_.erase(it);
}

std::size_t Polynomial::max_tuple_length() const {
  std::size_t n = 0;
  for (const auto& [m, c] : terms_) n = std::max(n, m.length());
  return n;
}

bool Polynomial::is_multiple_of(const Monomial& m, Scalar* coefficient) const {
  if (terms_.size() != 1 || terms_.begin()->first != m) return false;
  if (coefficient) *coefficient = terms_.begin()->second;
  return true;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coefficient] : terms_) coefficient *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b); }

Polynomial multiply(const Polynomial& p, const Polynomial& q) {
  Polynomial out;
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) out.add_term(multiply(mp, mq), cp * cq);
  }
  return out;
}

Polynomial adjoint(const Polynomial& p) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) out.add_term(adjoint(m), c.conj());
  return out;
}

// Only diagonal monomials can return chi_x to itself.
Scalar g_eval(const Polynomial& p, const SequenceDesc& x) {
  Scalar total;
  for (const auto& [m, c] : p.terms()) {
    if (m.is_projection() && member(x, m.domain())) total += c;
  }
  return total;
}

Scalar g_on_cylinder(const Polynomial& p, const Tuple& t) {
  if (t.length() < p.max_tuple_length()) {
    throw PreconditionError("g_on_cylinder: " + to_string(t) + " is shorter than the longest tuple (" +
                            std::to_string(p.max_tuple_length()) + ") of the polynomial");
  }
  Scalar total;
  for (const auto& [m, c] : p.terms()) {
    if (m.is_projection() && extends(t, m.domain())) total += c;
  }
  return total;
}

Polynomial compress(const Polynomial& p, const Tuple& alpha) {
  const Polynomial proj(Monomial::projection(alpha));
  return proj * p * proj;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Scalar shown = c;
    bool negative = false;
    if (c.is_real() && sgn(c.re()) < 0) {
      negative = true;
      shown = -c;
    } else if (sgn(c.re()) == 0 && sgn(c.im()) < 0) {
      negative = true;
      shown = -c;
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (shown != Scalar(1)) out += to_string(shown) + " ";
    out += to_string(m);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_string(p); }

}  // namespace cylalg
