#pragma once

// Random instance generators, an independent point-action oracle and the
// randomized property suites. Shared by the unit tests, the acceptance
// binary and `cylalg selftest`.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cylalg/polynomial.hpp"
#include "cylalg/state.hpp"

namespace cylalg::check {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

struct Bounds {
  std::size_t max_len = 5;
  std::uint64_t max_label = 8;
};

Tuple random_tuple(Rng& rng, std::size_t min_len, std::size_t max_len, std::uint64_t max_label);
/// Random nonzero V(a,b); a projection about a third of the time.
Monomial random_monomial(Rng& rng, const Bounds& bounds);
/// 1..max_factors factors, biased so that products are often nonzero.
std::vector<Monomial> random_word(Rng& rng, std::size_t max_factors, const Bounds& bounds);
Scalar random_scalar(Rng& rng);
Polynomial random_polynomial(Rng& rng, std::size_t max_terms, const Bounds& bounds);
DiagonalState random_state(Rng& rng, std::size_t max_points, const Bounds& bounds);
/// Point whose prefix starts with `start`, extended by up to `extra` random
/// labels, with the given tail.
SequenceDesc random_point(Rng& rng, const Tuple& start, std::size_t extra,
                          std::uint64_t max_label, Label tail);

/// Applies the word right to left by rewriting an explicit coordinate
/// window; shares no code with Monomial::act or multiply.
std::optional<SequenceDesc> oracle_apply(const std::vector<Monomial>& word, const SequenceDesc& x);

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;
  double seconds = 0;
};

/// Normal forms are Zero or one V(a,b) and agree with the point oracle on 5
/// points per word.
SuiteResult closure_and_action(std::uint64_t seed, std::size_t words);
/// Associativity, involution anti-homomorphism, V V* V = V, projection laws.
SuiteResult algebra_laws(std::uint64_t seed, std::size_t words);
/// g-constancy on long cylinders and scalar compression to fresh cylinders.
SuiteResult constancy_and_compression(std::uint64_t seed, std::size_t polys);
/// Interleaved link / register_protection followed by audit and the linking
/// identity.
SuiteResult oracle_invariants(std::uint64_t seed, std::size_t calls);
/// Registered states vanish on every word containing the vanishing projection.
SuiteResult lemma2_end_to_end(std::uint64_t seed, std::size_t states, std::size_t links,
                              std::size_t words_per_state);
/// Certificate chain for random pairs of positive elements, re-verified from text.
SuiteResult primeness_pipeline(std::uint64_t seed, std::size_t pairs);
/// Fragment matrices of q*q are positive semidefinite and Gram.
SuiteResult fragment_psd(std::uint64_t seed, std::size_t samples);

}  // namespace cylalg::check
