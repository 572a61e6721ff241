#pragma once

// Online avoidance allocation of linking generators. Each generator is issued
// on request for a pair of tuples; its fresh last coordinate avoids every
// earlier generator's and every protected tuple's value at that coordinate.
// Stages count records of both kinds in request order.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cylalg/monomial.hpp"
#include "cylalg/state.hpp"

namespace cylalg {

using Stage = std::size_t;

struct GeneratorRecord {
  Stage stage = 0;
  std::size_t n = 0;
  Tuple requested_first;
  Tuple requested_second;
  Tuple a;
  Tuple b;
  Label label;

  /// V(a, b)
  Monomial generator() const { return Monomial::isometry(a, b); }
  friend bool operator==(const GeneratorRecord&, const GeneratorRecord&) = default;
};

struct ProtectionRecord {
  Stage stage = 0;
  std::vector<Tuple> tuples;
  /// Set when the tuples came from a state's support up to `horizon`.
  std::optional<DiagonalState> source;
  std::size_t horizon = 0;

  friend bool operator==(const ProtectionRecord&, const ProtectionRecord&) = default;
};

using Record = std::variant<GeneratorRecord, ProtectionRecord>;

struct AuditViolation {
  Stage stage = 0;
  std::size_t coordinate = 0;
  std::string condition;
  std::string detail;
};

struct AuditReport {
  std::optional<AuditViolation> violation;

  bool ok() const noexcept { return !violation.has_value(); }
  std::string describe() const;
};

class Registry {
 public:
  GeneratorRecord link(const Tuple& first, const Tuple& second);
  ProtectionRecord register_protection(const DiagonalState& rho, std::size_t horizon);
  /// Protects an explicit finite set of tuples.
  ProtectionRecord protect(std::vector<Tuple> tuples);

  /// (r) with r the least label outside the coordinate-1 values of every
  /// generator issued before `prot` and of every tuple `prot` protects.
  Tuple vanishing_tuple(const ProtectionRecord& prot) const;

  /// Re-checks conditions (i)-(iii) of every generator against the log before it.
  AuditReport audit() const;

  /// Labels at coordinate n forbidden to a generator issued at stage `before`.
  std::set<Label> avoided_labels(std::size_t n, Stage before) const;

  const std::vector<Record>& log() const noexcept { return log_; }
  std::size_t size() const noexcept { return log_.size(); }
  Stage next_stage() const noexcept { return log_.size(); }

  /// Throws PreconditionError if `stage` is not a protection record.
  const ProtectionRecord& protection(Stage stage) const;
  /// The generator equal to V(a, b), if any.
  const GeneratorRecord* find_generator(const Tuple& a, const Tuple& b) const;
  std::vector<GeneratorRecord> generators() const;

  /// Appends a record verbatim, without enforcing any condition beyond its
  /// stage being next. Used when loading sessions; audit() catches bad input.
  void append_unchecked(Record record);

  friend bool operator==(const Registry&, const Registry&) = default;

 private:
  std::vector<Record> log_;
};

/// Least label not in `used`.
Label least_label_avoiding(const std::set<Label>& used);

std::string to_string(const GeneratorRecord& g);
std::string to_string(const ProtectionRecord& p);
std::string to_string(const Record& r);
/// Inverse of to_string(const Record&).
Record parse_record(std::string_view line);

}  // namespace cylalg
