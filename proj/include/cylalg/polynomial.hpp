#pragma once

// Finite linear combinations of monomials with exact complex-rational
// coefficients, and the diagonal evaluation g_p(x) = <p chi_x, chi_x>.

#include <iosfwd>
#include <map>
#include <string>

#include "cylalg/monomial.hpp"
#include "cylalg/scalar.hpp"

namespace cylalg {

/// Canonical form: no Zero monomial keys and no zero coefficients.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Scalar>;

  Polynomial() = default;
  explicit Polynomial(const Monomial& m, const Scalar& coefficient = Scalar(1));
  /// c times the unit P(()).
  static Polynomial constant(const Scalar& c);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Scalar coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Scalar& coefficient);

  /// Longest tuple occurring in any term; 0 for the zero polynomial.
  std::size_t max_tuple_length() const;
  /// True when the polynomial equals c·m for a single monomial m.
  bool is_multiple_of(const Monomial& m, Scalar* coefficient = nullptr) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

 private:
  Terms terms_;
};

Polynomial multiply(const Polynomial& p, const Polynomial& q);
Polynomial adjoint(const Polynomial& p);

Scalar g_eval(const Polynomial& p, const SequenceDesc& x);
/// Constant value of g_p on the cylinder of t. Throws PreconditionError when
/// t is shorter than some tuple of p, where constancy is not guaranteed.
Scalar g_on_cylinder(const Polynomial& p, const Tuple& t);
/// P(alpha) · p · P(alpha).
Polynomial compress(const Polynomial& p, const Tuple& alpha);

/// Terms in monomial order: `2 P((1)) - 1/2 i V((1);(2))`; `0` when empty.
std::string to_string(const Polynomial& p);
std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace cylalg
