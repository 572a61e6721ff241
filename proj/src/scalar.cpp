#include "cylalg/scalar.hpp"

#include <ostream>

#include "cylalg/error.hpp"
#include "cylalg/text.hpp"

namespace cylalg {

Rational parse_rational(std::string_view source) {
  text::Scanner in(source);
  const bool negative = in.accept('-');
  std::string literal = in.digits();
  if (in.accept('/')) {
    const auto at = in.mark();
    const std::string den = in.digits();
    if (den.find_first_not_of('0') == std::string::npos) {
      text::Scanner::fail_at(at, "zero denominator");
    }
    literal += "/" + den;
  }
  if (!in.at_end()) in.fail("unexpected trailing input after rational");
  Rational r(literal, 10);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

Scalar::Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of zero scalar");
  const Rational n = norm();
  return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string to_string(const Scalar& s) {
  if (s.is_real()) return to_string(s.re());
  if (sgn(s.re()) == 0) return to_string(s.im()) + " i";
  const Rational mag = abs(s.im());
  return "(" + to_string(s.re()) + (sgn(s.im()) < 0 ? " - " : " + ") + to_string(mag) + " i)";
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_string(s); }

}  // namespace cylalg
