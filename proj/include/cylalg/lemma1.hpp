#pragma once

// Primeness witnesses. From a positive element q*q with g_{q*q}(x) > 0, find
// a cylinder alpha on which the compression P_alpha q*q P_alpha is a nonzero
// multiple of P_alpha, so P_alpha lies in the ideal generated by q*q. Two
// such projections are then joined by a freshly issued generator, exhibiting
// P_{b_sigma} in both ideals.

#include <optional>
#include <string>
#include <string_view>

#include "cylalg/expression.hpp"
#include "cylalg/registry.hpp"

namespace cylalg {

struct IdealWitness {
  Polynomial factor;  // q
  Polynomial source;  // q* q
  SequenceDesc point;
  std::size_t n = 0;
  Tuple alpha;
  Scalar scalar;
  /// Evaluates to P_alpha: scalar^-1 · P_alpha (q' q) P_alpha.
  ExprPtr certificate;
};

/// Throws PreconditionError when g_{q*q}(x) is zero.
IdealWitness ideal_projection_witness(const Registry& reg, const Polynomial& q,
                                      const SequenceDesc& x);

struct PrimenessCertificate {
  IdealWitness first;
  IdealWitness second;
  GeneratorRecord generator;
  /// V_s P_{a_s} (w1) P_{a_s} V_s*, an element of the first ideal.
  ExprPtr first_ideal;
  /// P_{b_s} (w2) P_{b_s}, an element of the second ideal.
  ExprPtr second_ideal;
  /// first_ideal · second_ideal; evaluates to P_{b_s}.
  ExprPtr product;
};

/// Links the two witnessed projections (one registry append) and builds the
/// certificate. Throws VerificationError if its own evaluation disagrees.
PrimenessCertificate primeness_witness(Registry& reg, const IdealWitness& w1,
                                       const IdealWitness& w2);

/// The certificate expressions implied by the witness data alone.
ExprPtr witness_expression(const Polynomial& q, const Tuple& alpha, const Scalar& scalar);
ExprPtr first_ideal_expression(const GeneratorRecord& g, const ExprPtr& witness);
ExprPtr second_ideal_expression(const GeneratorRecord& g, const ExprPtr& witness);

std::string to_string(const PrimenessCertificate& cert);

/// Certificate fields as read back from text, with nothing recomputed.
struct CertificateText {
  std::string q1, q2;
  SequenceDesc x1, x2;
  Tuple alpha, beta;
  Scalar scalar1, scalar2;
  GeneratorRecord generator;
  std::string product;
  std::string result;
};
CertificateText parse_certificate(std::string_view text);

/// Re-derives every claim of a certificate using only parsing and
/// monomial/polynomial arithmetic. When a registry is given the generator
/// must also be one of its records. Throws VerificationError.
void verify_certificate(const CertificateText& cert, const Registry* reg = nullptr);

}  // namespace cylalg
