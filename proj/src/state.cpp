#include "cylalg/state.hpp"

#include <algorithm>
#include <set>

#include "cylalg/error.hpp"
#include "cylalg/text.hpp"

namespace cylalg {

DiagonalState::DiagonalState(std::vector<WeightedPoint> support) : support_(std::move(support)) {
  if (support_.empty()) return;
  Rational total = 0;
  std::set<SequenceDesc> seen;
  for (auto& wp : support_) {
    wp.weight.canonicalize();
    if (sgn(wp.weight) <= 0) {
      throw PreconditionError("state weight " + to_string(wp.weight) + " is not positive");
    }
    if (!seen.insert(wp.point).second) {
      throw PreconditionError("state support point " + to_string(wp.point) + " is repeated");
    }
    total += wp.weight;
  }
  if (total != 1) throw PreconditionError("state weights sum to " + to_string(total) + ", not 1");
}

bool operator==(const DiagonalState& a, const DiagonalState& b) {
  return std::equal(a.support_.begin(), a.support_.end(), b.support_.begin(), b.support_.end(),
                    [](const WeightedPoint& x, const WeightedPoint& y) {
                      return x.point == y.point && x.weight == y.weight;
                    });
}

Scalar state_eval(const DiagonalState& rho, const Polynomial& p) {
  Scalar total;
  for (const auto& [x, w] : rho.support()) total += Scalar(w) * g_eval(p, x);
  return total;
}

// Projections of one length are orthogonal, so rho(P_b) != 0 exactly when b
// is an initial segment of some support point.
std::vector<Tuple> support_set(const DiagonalState& rho, std::size_t max_len) {
  if (max_len == 0) throw PreconditionError("support_set needs max_len >= 1");
  std::set<Tuple> found;
  for (const auto& wp : rho.support()) {
    for (std::size_t n = 1; n <= max_len; ++n) found.insert(wp.point.initial(n));
  }
  return {found.begin(), found.end()};
}

DiagonalState parse_state(std::string_view spec) {
  text::Scanner in(spec);
  std::vector<WeightedPoint> support;
  if (in.at_end()) return DiagonalState();
  do {
    const auto at = in.mark();
    std::string literal = in.digits();
    if (in.accept('/')) literal += "/" + in.digits();
    Rational w;
    try {
      w = parse_rational(literal);
    } catch (const ParseError& e) {
      text::Scanner::fail_at(at, e.what());
    }
    in.expect('@');
    SequenceDesc x = read_sequence(in);
    support.push_back({std::move(x), std::move(w)});
  } while (in.accept(';'));
  if (!in.at_end()) in.fail("expected ';' between state items");
  return DiagonalState(std::move(support));
}

std::string to_string(const DiagonalState& rho) {
  std::string out;
  for (const auto& [x, w] : rho.support()) {
    if (!out.empty()) out += "; ";
    out += to_string(w) + " @ " + to_string(x.prefix) + " / " + std::to_string(x.tail.value);
  }
  return out;
}

}  // namespace cylalg
