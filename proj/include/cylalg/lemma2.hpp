#pragma once

// The state-vanishing argument, executed on concrete words. For a word that
// contains the vanishing projection P_a, walk leftwards from the leftmost
// occurrence of P_a and maintain a tuple b of length n with
//   (1) P_b A = A for the running product A,
//   (2) b(n) differs from a_t(n), b_t(n) for every generator issued before
//       the protection with n <= n_t,
//   (3) b(n) differs from c(n) for every protected c with n <= length(c).
// Property (3) with enough protection horizon gives rho(P_b) = 0, and then
// |rho(A)|^2 <= rho(P_b) rho(A*A) = 0.

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cylalg/error.hpp"
#include "cylalg/registry.hpp"

namespace cylalg {

enum class CaseTag { Base, LeftmostPa, UFactor, LongCase, ShortEarlierContradiction, ShortLater };

std::string to_string(CaseTag tag);
/// Throws ParseError for unknown names.
CaseTag parse_case_tag(std::string_view name);

struct TraceStep {
  /// 0-based index of the factor in the word.
  std::size_t position = 0;
  CaseTag tag = CaseTag::Base;
  Tuple b;
  std::size_t n = 0;
  /// Generator stage for LongCase / ShortLater / ShortEarlierContradiction.
  std::optional<Stage> kappa;
  /// The factor was V_kappa*.
  bool adjoint = false;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Lemma2Trace {
  Stage protection = 0;
  Tuple a;
  std::vector<Monomial> word;
  std::vector<TraceStep> steps;
  Tuple final_b;
  std::size_t final_n = 0;

  friend bool operator==(const Lemma2Trace&, const Lemma2Trace&) = default;
};

/// The word's product is the zero operator.
struct ZeroReport {
  /// Factor at which the running product vanished.
  std::size_t position = 0;
  /// Case that applied at that factor.
  CaseTag tag = CaseTag::UFactor;
  std::vector<TraceStep> steps;
};

using Lemma2Outcome = std::variant<Lemma2Trace, ZeroReport>;

/// Throws PreconditionError when `a` is not the protection's vanishing tuple,
/// when no factor equals P_a, or when a non-projection factor is not a
/// registered generator or its adjoint.
Lemma2Outcome lemma2_witness(const Registry& reg, const ProtectionRecord& prot, const Tuple& a,
                             std::span<const Monomial> word);

/// Independent re-check of a trace against the registry: replays every step
/// from its case tag and checks (1)-(3) for the final pair by direct scan.
/// Throws VerificationError.
void verify_lemma2_trace(const Registry& reg, const Lemma2Trace& trace);

/// Thrown by vanishing_check when some n exceeds the protection horizon.
class HorizonError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// rho(normal_form(word)). When a trace exists the value must be exactly 0;
/// a nonzero value throws VerificationError.
Scalar vanishing_check(const DiagonalState& rho, const Registry& reg,
                       const ProtectionRecord& prot, const Tuple& a,
                       std::span<const Monomial> word);

/// Line-oriented text form:
///   cylalg-trace 1
///   protection <stage>
///   a <tuple>
///   word <monomials>
///   step <position> <tag> b=<tuple> n=<n> [kappa=<stage>] [adjoint]
///   final b=<tuple> n=<n>
std::string to_string(const Lemma2Trace& trace);
Lemma2Trace parse_trace(std::string_view text);
std::string to_string(const ZeroReport& report);

}  // namespace cylalg
