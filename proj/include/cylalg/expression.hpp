#pragma once

// Expression trees over tuple literals, P(t), V(t;u), adjoint, product, sum
// and exact scalars. Certificates are expression trees as well, so anything
// a certificate claims can be re-evaluated from its text alone.
//
// Grammar (whitespace insignificant):
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (['*'] factor)*
//   factor := atom {'\''}
//   atom   := scalar | 'P' '(' tuple ')' | 'V' '(' tuple ';' tuple ')' | '(' expr ')'
//   scalar := int ['/' int] ['i'] | 'i'
//   tuple  := '(' [int (',' int)*] ')'

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cylalg/polynomial.hpp"

namespace cylalg {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Scalar, Projection, Isometry, Adjoint, Product, Sum };

  Kind kind = Kind::Scalar;
  Scalar scalar;
  Tuple domain;  // Projection, Isometry
  Tuple range;   // Isometry
  std::vector<ExprPtr> children;
  std::vector<bool> negated;  // Sum: sign of each child
};

ExprPtr scalar_expr(const Scalar& s);
ExprPtr projection_expr(const Tuple& t);
/// Throws PreconditionError on a length mismatch.
ExprPtr isometry_expr(const Tuple& domain, const Tuple& range);
ExprPtr monomial_expr(const Monomial& m);
ExprPtr adjoint_expr(ExprPtr operand);
ExprPtr product_expr(std::vector<ExprPtr> factors);
ExprPtr sum_expr(std::vector<ExprPtr> terms, std::vector<bool> negated);

/// Throws ParseError with line and column.
ExprPtr parse_expression(std::string_view source);

Polynomial evaluate(const Expr& e);
/// Expression whose evaluation is exactly p.
ExprPtr polynomial_expr(const Polynomial& p);

/// Factors of a product of monomial atoms (P, V, and their adjoints).
/// Throws PreconditionError for anything else.
std::vector<Monomial> as_word(const Expr& e);
std::string word_to_string(const std::vector<Monomial>& word);

/// Prints in the grammar above; parse_expression reads it back to a tree
/// with the same evaluation (and the same printed form).
std::string to_string(const Expr& e);

}  // namespace cylalg
