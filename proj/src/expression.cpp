#include "cylalg/expression.hpp"

#include <cctype>

#include "cylalg/error.hpp"
#include "cylalg/text.hpp"

namespace cylalg {

ExprPtr scalar_expr(const Scalar& s) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Scalar;
  e->scalar = s;
  return e;
}

ExprPtr projection_expr(const Tuple& t) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Projection;
  e->domain = t;
  return e;
}

ExprPtr isometry_expr(const Tuple& domain, const Tuple& range) {
  if (domain.length() != range.length()) {
    throw PreconditionError("V(" + to_string(domain) + ";" + to_string(range) +
                            "): tuple length mismatch");
  }
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Isometry;
  e->domain = domain;
  e->range = range;
  return e;
}

ExprPtr monomial_expr(const Monomial& m) {
  if (m.is_zero()) return scalar_expr(Scalar());
  if (m.is_projection()) return projection_expr(m.domain());
  return isometry_expr(m.domain(), m.range());
}

ExprPtr adjoint_expr(ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Adjoint;
  e->children.push_back(std::move(operand));
  return e;
}

ExprPtr product_expr(std::vector<ExprPtr> factors) {
  if (factors.empty()) throw PreconditionError("empty product expression");
  if (factors.size() == 1) return factors.front();
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Product;
  e->children = std::move(factors);
  return e;
}

ExprPtr sum_expr(std::vector<ExprPtr> terms, std::vector<bool> negated) {
  if (terms.empty() || terms.size() != negated.size()) {
    throw PreconditionError("malformed sum expression");
  }
  if (terms.size() == 1 && !negated.front()) return terms.front();
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Sum;
  e->children = std::move(terms);
  e->negated = std::move(negated);
  return e;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view source) : in_(source) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (!in_.at_end()) in_.fail(std::string("unexpected '") + in_.peek() + "'");
    return e;
  }

 private:
  static bool starts_atom(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'i' || c == 'P' || c == 'V' ||
           c == '(';
  }

  ExprPtr expr() {
    std::vector<ExprPtr> terms;
    std::vector<bool> negated;
    negated.push_back(in_.accept('-'));
    terms.push_back(term());
    while (true) {
      if (in_.accept('+')) {
        negated.push_back(false);
      } else if (in_.accept('-')) {
        negated.push_back(true);
      } else {
        break;
      }
      terms.push_back(term());
    }
    return sum_expr(std::move(terms), std::move(negated));
  }

  ExprPtr term() {
    std::vector<ExprPtr> factors;
    factors.push_back(factor());
    while (true) {
      if (in_.accept('*')) {
        factors.push_back(factor());
      } else if (starts_atom(in_.peek())) {
        factors.push_back(factor());
      } else {
        break;
      }
    }
    return product_expr(std::move(factors));
  }

  ExprPtr factor() {
    ExprPtr e = atom();
    while (in_.accept('\'')) e = adjoint_expr(std::move(e));
    return e;
  }

  ExprPtr atom() {
    const char c = in_.peek();
    const auto at = in_.mark();
    if (c == '\0') in_.fail("unexpected end of expression");
    if (std::isdigit(static_cast<unsigned char>(c))) return scalar_literal();
    if (c == 'i') {
      in_.accept('i');
      return scalar_expr(Scalar::imaginary_unit());
    }
    if (c == 'P') {
      in_.accept('P');
      in_.expect('(');
      Tuple t = read_tuple(in_);
      in_.expect(')');
      return projection_expr(t);
    }
    if (c == 'V') {
      in_.accept('V');
      in_.expect('(');
      Tuple domain = read_tuple(in_);
      in_.expect(';');
      Tuple range = read_tuple(in_);
      in_.expect(')');
      if (domain.length() != range.length()) {
        text::Scanner::fail_at(at, "tuple length mismatch in V(" + to_string(domain) + ";" +
                                       to_string(range) + ")");
      }
      return isometry_expr(domain, range);
    }
    if (in_.accept('(')) {
      ExprPtr e = expr();
      in_.expect(')');
      return e;
    }
    in_.fail(std::string("unexpected '") + c + "'");
  }

  ExprPtr scalar_literal() {
    const auto at = in_.mark();
    std::string literal = in_.digits();
    if (in_.accept('/')) literal += "/" + in_.digits();
    Rational value;
    try {
      value = parse_rational(literal);
    } catch (const ParseError& e) {
      text::Scanner::fail_at(at, e.what());
    }
    if (in_.accept('i')) return scalar_expr(Scalar(Rational(0), value));
    return scalar_expr(Scalar(value));
  }

  text::Scanner in_;
};

enum Precedence { kSum = 0, kProduct = 1, kPostfix = 2 };

void print(const Expr& e, int context, std::string& out);

void print_scalar(const Scalar& s, int context, std::string& out) {
  const std::string text = to_string(s);
  const bool wrap = context > kSum && text.front() == '-';
  if (wrap) out += '(';
  out += text;
  if (wrap) out += ')';
}

void print(const Expr& e, int context, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::Scalar:
      print_scalar(e.scalar, context, out);
      return;
    case Expr::Kind::Projection:
      out += "P(" + to_string(e.domain) + ")";
      return;
    case Expr::Kind::Isometry:
      out += "V(" + to_string(e.domain) + ";" + to_string(e.range) + ")";
      return;
    case Expr::Kind::Adjoint: {
      const Expr& child = *e.children.front();
      const bool atomic = child.kind == Expr::Kind::Projection ||
                          child.kind == Expr::Kind::Isometry || child.kind == Expr::Kind::Adjoint;
      if (atomic) {
        print(child, kPostfix, out);
      } else {
        out += '(';
        print(child, kSum, out);
        out += ')';
      }
      out += '\'';
      return;
    }
    case Expr::Kind::Product: {
      const bool wrap = context >= kProduct;
      if (wrap) out += '(';
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += ' ';
        print(*e.children[i], kProduct, out);
      }
      if (wrap) out += ')';
      return;
    }
    case Expr::Kind::Sum: {
      const bool wrap = context >= kProduct;
      if (wrap) out += '(';
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += e.negated[i] ? " - " : " + ";
        else if (e.negated[i]) out += '-';
        // Terms are products at most; nested sums keep their parentheses.
        const Expr& child = *e.children[i];
        if (child.kind == Expr::Kind::Sum) {
          out += '(';
          print(child, kSum, out);
          out += ')';
        } else if (child.kind == Expr::Kind::Product) {
          for (std::size_t j = 0; j < child.children.size(); ++j) {
            if (j) out += ' ';
            print(*child.children[j], kProduct, out);
          }
        } else {
          print(child, kProduct, out);
        }
      }
      if (wrap) out += ')';
      return;
    }
  }
}

void flatten_word(const Expr& e, std::vector<Monomial>& out) {
  switch (e.kind) {
    case Expr::Kind::Product:
      for (const auto& c : e.children) flatten_word(*c, out);
      return;
    case Expr::Kind::Projection:
      out.push_back(Monomial::projection(e.domain));
      return;
    case Expr::Kind::Isometry:
      out.push_back(Monomial::isometry(e.domain, e.range));
      return;
    case Expr::Kind::Adjoint: {
      std::vector<Monomial> inner;
      flatten_word(*e.children.front(), inner);
      if (inner.size() != 1) throw PreconditionError("adjoint of a product inside a word");
      out.push_back(adjoint(inner.front()));
      return;
    }
    case Expr::Kind::Scalar:
    case Expr::Kind::Sum:
      break;
  }
  throw PreconditionError("a word is a product of P(...), V(...;...) and their adjoints");
}

}  // namespace

ExprPtr parse_expression(std::string_view source) { return Parser(source).parse(); }

Polynomial evaluate(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Scalar:
      return Polynomial::constant(e.scalar);
    case Expr::Kind::Projection:
      return Polynomial(Monomial::projection(e.domain));
    case Expr::Kind::Isometry:
      return Polynomial(Monomial::isometry(e.domain, e.range));
    case Expr::Kind::Adjoint:
      return adjoint(evaluate(*e.children.front()));
    case Expr::Kind::Product: {
      Polynomial acc = evaluate(*e.children.front());
      for (std::size_t i = 1; i < e.children.size(); ++i) acc = acc * evaluate(*e.children[i]);
      return acc;
    }
    case Expr::Kind::Sum: {
      Polynomial acc;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (e.negated[i]) acc -= evaluate(*e.children[i]);
        else acc += evaluate(*e.children[i]);
      }
      return acc;
    }
  }
  return {};
}

ExprPtr polynomial_expr(const Polynomial& p) { return parse_expression(to_string(p)); }

std::vector<Monomial> as_word(const Expr& e) {
  std::vector<Monomial> out;
  flatten_word(e, out);
  return out;
}

std::string word_to_string(const std::vector<Monomial>& word) {
  std::string out;
  for (const auto& m : word) {
    if (!out.empty()) out += ' ';
    out += to_string(m);
  }
  return out;
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, kSum, out);
  return out;
}

}  // namespace cylalg
