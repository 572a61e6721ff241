#pragma once

// Finitely supported mixtures of basis vector states,
// rho(p) = sum_i w_i <p chi_{x_i}, chi_{x_i}>.

#include <string>
#include <string_view>
#include <vector>

#include "cylalg/polynomial.hpp"

namespace cylalg {

struct WeightedPoint {
  SequenceDesc point;
  Rational weight;
};

class DiagonalState {
 public:
  /// The empty mixture (the zero functional; protects nothing).
  DiagonalState() = default;
  /// Throws PreconditionError unless weights are positive, sum to 1 and the
  /// points are distinct.
  explicit DiagonalState(std::vector<WeightedPoint> support);

  const std::vector<WeightedPoint>& support() const noexcept { return support_; }
  bool empty() const noexcept { return support_.empty(); }

  friend bool operator==(const DiagonalState& a, const DiagonalState& b);

 private:
  std::vector<WeightedPoint> support_;
};

Scalar state_eval(const DiagonalState& rho, const Polynomial& p);

/// All b with 1 <= length(b) <= max_len and rho(P_b) != 0, sorted.
std::vector<Tuple> support_set(const DiagonalState& rho, std::size_t max_len);

/// `1/2 @ (1) / 0; 1/2 @ (2,3) / 7`; an empty string is the empty mixture.
DiagonalState parse_state(std::string_view spec);
std::string to_string(const DiagonalState& rho);

}  // namespace cylalg
