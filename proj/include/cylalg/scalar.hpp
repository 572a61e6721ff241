#pragma once

// Exact complex-rational coefficients.

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace cylalg {

using Rational = mpq_class;

/// Parses `p` or `p/q` (optional leading '-'); result is canonicalized.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  Scalar(Rational re, Rational im);

  static Scalar imaginary_unit() { return Scalar(Rational(0), Rational(1)); }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  Scalar conj() const { return Scalar(re_, -im_); }
  /// |z|^2, exact.
  Rational norm() const { return re_ * re_ + im_ * im_; }
  /// Throws PreconditionError on zero.
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
  Scalar operator-() const { return Scalar(-re_, -im_); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// `3/2`, `-1/2 i`, or `(1/2 + 3 i)` when both parts are nonzero. The output
/// reads back through the expression parser.
std::string to_string(const Scalar& s);
std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace cylalg
