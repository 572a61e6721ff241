#include "cylalg/lemma1.hpp"

#include <sstream>

#include "cylalg/error.hpp"
#include "cylalg/text.hpp"

namespace cylalg {

namespace {

Scalar parse_scalar_text(std::string_view source) {
  const Polynomial p = evaluate(*parse_expression(source));
  if (p.is_zero()) return Scalar();
  Scalar c;
  if (!p.is_multiple_of(Monomial::projection(Tuple()), &c)) {
    throw ParseError("'" + std::string(source) + "' is not a scalar", 1, 1);
  }
  return c;
}

}  // namespace

ExprPtr witness_expression(const Polynomial& q, const Tuple& alpha, const Scalar& scalar) {
  const ExprPtr qe = polynomial_expr(q);
  return product_expr({scalar_expr(scalar.inverse()), projection_expr(alpha), adjoint_expr(qe), qe,
                       projection_expr(alpha)});
}

ExprPtr first_ideal_expression(const GeneratorRecord& g, const ExprPtr& witness) {
  return product_expr({isometry_expr(g.a, g.b), projection_expr(g.a), witness,
                       projection_expr(g.a), adjoint_expr(isometry_expr(g.a, g.b))});
}

ExprPtr second_ideal_expression(const GeneratorRecord& g, const ExprPtr& witness) {
  return product_expr({projection_expr(g.b), witness, projection_expr(g.b)});
}

IdealWitness ideal_projection_witness(const Registry& reg, const Polynomial& q,
                                      const SequenceDesc& x) {
  IdealWitness w;
  w.factor = q;
  w.source = adjoint(q) * q;
  w.point = x;
  if (g_eval(w.source, x).is_zero()) {
    throw PreconditionError("g of q*q vanishes at " + to_string(x) +
                            "; supply a point where it is positive");
  }
  w.n = q.max_tuple_length() + 1;

  // The fresh coordinate avoids the generators' values at n (none are that
  // long) and every label protected at coordinate n.
  std::set<Label> avoid;
  for (const auto& [m, c] : q.terms()) {
    if (w.n <= m.length()) {
      avoid.insert(m.domain().at(w.n));
      avoid.insert(m.range().at(w.n));
    }
  }
  for (const auto& record : reg.log()) {
    if (const auto* p = std::get_if<ProtectionRecord>(&record)) {
      for (const Tuple& c : p->tuples) {
        if (w.n <= c.length()) avoid.insert(c.at(w.n));
      }
    }
  }
  w.alpha = x.initial(w.n - 1).concat(Tuple(std::vector<Label>{least_label_avoiding(avoid)}));

  w.scalar = g_on_cylinder(w.source, w.alpha);
  if (w.scalar.is_zero()) throw VerificationError("g is not constant on the cylinder of x");
  if (compress(w.source, w.alpha) != Polynomial(Monomial::projection(w.alpha), w.scalar)) {
    throw VerificationError("compression to " + to_string(w.alpha) + " is not scalar");
  }
  w.certificate = witness_expression(q, w.alpha, w.scalar);
  if (evaluate(*w.certificate) != Polynomial(Monomial::projection(w.alpha))) {
    throw VerificationError("ideal witness certificate does not evaluate to P_alpha");
  }
  return w;
}

PrimenessCertificate primeness_witness(Registry& reg, const IdealWitness& w1,
                                       const IdealWitness& w2) {
  PrimenessCertificate cert;
  cert.first = w1;
  cert.second = w2;
  cert.generator = reg.link(w1.alpha, w2.alpha);
  cert.first_ideal = first_ideal_expression(cert.generator, w1.certificate);
  cert.second_ideal = second_ideal_expression(cert.generator, w2.certificate);
  cert.product = product_expr({cert.first_ideal, cert.second_ideal});
  const Polynomial target(Monomial::projection(cert.generator.b));
  if (evaluate(*cert.first_ideal) != target || evaluate(*cert.second_ideal) != target ||
      evaluate(*cert.product) != target) {
    throw VerificationError("primeness certificate does not evaluate to P_b");
  }
  return cert;
}

std::string to_string(const PrimenessCertificate& cert) {
  std::ostringstream os;
  os << "cylalg-certificate 1\n";
  os << "q1 " << to_string(cert.first.factor) << "\n";
  os << "x1 " << to_string(cert.first.point) << "\n";
  os << "alpha " << to_string(cert.first.alpha) << "\n";
  os << "scalar1 " << to_string(cert.first.scalar) << "\n";
  os << "q2 " << to_string(cert.second.factor) << "\n";
  os << "x2 " << to_string(cert.second.point) << "\n";
  os << "beta " << to_string(cert.second.alpha) << "\n";
  os << "scalar2 " << to_string(cert.second.scalar) << "\n";
  os << to_string(cert.generator) << "\n";
  os << "first-ideal " << to_string(*cert.first_ideal) << "\n";
  os << "second-ideal " << to_string(*cert.second_ideal) << "\n";
  os << "product " << to_string(*cert.product) << "\n";
  os << "result " << to_string(evaluate(*cert.product)) << "\n";
  return os.str();
}

CertificateText parse_certificate(std::string_view source) {
  CertificateText cert;
  std::istringstream lines{std::string(source)};
  std::string line;
  std::size_t line_no = 0;
  std::set<std::string> seen;
  while (std::getline(lines, line)) {
    ++line_no;
    text::Scanner in(line);
    if (in.at_end()) continue;
    try {
      const std::string key = in.identifier();
      if (!seen.insert(key).second) in.fail("duplicate line '" + key + "'");
      if (seen.size() == 1) {
        if (key != "cylalg-certificate" || in.label_value() != 1) {
          in.fail("expected 'cylalg-certificate 1'");
        }
      } else if (key == "q1") {
        cert.q1 = std::string(in.rest());
      } else if (key == "q2") {
        cert.q2 = std::string(in.rest());
      } else if (key == "x1") {
        cert.x1 = read_sequence(in);
      } else if (key == "x2") {
        cert.x2 = read_sequence(in);
      } else if (key == "alpha") {
        cert.alpha = read_tuple(in);
      } else if (key == "beta") {
        cert.beta = read_tuple(in);
      } else if (key == "scalar1") {
        cert.scalar1 = parse_scalar_text(in.rest());
      } else if (key == "scalar2") {
        cert.scalar2 = parse_scalar_text(in.rest());
      } else if (key == "generator") {
        cert.generator = std::get<GeneratorRecord>(parse_record(line));
        in.rest();
      } else if (key == "product") {
        cert.product = std::string(in.rest());
      } else if (key == "result") {
        cert.result = std::string(in.rest());
      } else if (key == "first-ideal" || key == "second-ideal") {
        in.rest();  // informational; verification rebuilds these
      } else {
        in.fail("unknown certificate line '" + key + "'");
      }
      if (!in.at_end()) in.fail("unexpected trailing input");
    } catch (const ParseError& e) {
      throw ParseError(std::string("certificate: ") + e.what(), line_no, e.column());
    }
  }
  for (const char* k : {"q1", "x1", "alpha", "scalar1", "q2", "x2", "beta", "scalar2",
                        "generator", "product", "result"}) {
    if (!seen.contains(k)) throw ParseError(std::string("certificate lacks '") + k + "'", line_no, 1);
  }
  return cert;
}

void verify_certificate(const CertificateText& cert, const Registry* reg) {
  auto fail = [](const std::string& why) { throw VerificationError("certificate rejected: " + why); };
  try {
    const struct {
      const std::string& q;
      const SequenceDesc& x;
      const Tuple& alpha;
      const Scalar& scalar;
      const char* name;
    } witnesses[2] = {{cert.q1, cert.x1, cert.alpha, cert.scalar1, "first witness"},
                      {cert.q2, cert.x2, cert.beta, cert.scalar2, "second witness"}};
    std::vector<Polynomial> factors;
    for (const auto& w : witnesses) {
      const Polynomial q = evaluate(*parse_expression(w.q));
      const Polynomial source = adjoint(q) * q;
      if (g_eval(source, w.x).is_zero()) fail(std::string(w.name) + ": g vanishes at its point");
      const std::size_t n = q.max_tuple_length() + 1;
      if (w.alpha.length() != n || w.alpha.prefix(n - 1) != w.x.initial(n - 1)) {
        fail(std::string(w.name) + ": cylinder does not start with the point's first n-1 labels");
      }
      if (w.scalar.is_zero()) fail(std::string(w.name) + ": zero scalar");
      if (compress(source, w.alpha) != Polynomial(Monomial::projection(w.alpha), w.scalar)) {
        fail(std::string(w.name) + ": compression is not the stated multiple of P_alpha");
      }
      factors.push_back(q);
    }

    const GeneratorRecord& g = cert.generator;
    if (g.requested_first != cert.alpha || g.requested_second != cert.beta) {
      fail("generator was not requested for (alpha, beta)");
    }
    if (g.n != std::max(cert.alpha.length(), cert.beta.length()) + 1 || g.a.length() != g.n ||
        g.b.length() != g.n) {
      fail("generator lengths are wrong");
    }
    if (!properly_extends(g.a, cert.alpha) || !properly_extends(g.b, cert.beta)) {
      fail("generator tuples do not properly extend alpha and beta");
    }
    if (g.a.at(g.n) != g.label || g.b.at(g.n) != g.label) fail("generator fresh label mismatch");

    const ExprPtr expected = product_expr(
        {first_ideal_expression(g, witness_expression(factors[0], cert.alpha, cert.scalar1)),
         second_ideal_expression(g, witness_expression(factors[1], cert.beta, cert.scalar2))});
    const ExprPtr stated = parse_expression(cert.product);
    if (to_string(*stated) != to_string(*parse_expression(to_string(*expected)))) {
      fail("product expression is not the ideal-intersection word for these witnesses");
    }
    const Polynomial target(Monomial::projection(g.b));
    if (evaluate(*stated) != target) fail("product does not evaluate to P_b");
    if (evaluate(*parse_expression(cert.result)) != target) fail("stated result is not P_b");

    if (reg) {
      const GeneratorRecord* issued = reg->find_generator(g.a, g.b);
      if (!issued || *issued != g) fail("generator is not a record of the session registry");
    }
  } catch (const ParseError& e) {
    fail(e.what());
  } catch (const PreconditionError& e) {
    fail(e.what());
  }
}

}  // namespace cylalg
