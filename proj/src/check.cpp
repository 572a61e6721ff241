#include "cylalg/check.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <variant>

#include "cylalg/error.hpp"
#include "cylalg/expression.hpp"
#include "cylalg/fragment.hpp"
#include "cylalg/lemma1.hpp"
#include "cylalg/lemma2.hpp"
#include "cylalg/registry.hpp"

namespace cylalg::check {

std::uint64_t Rng::below(std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
}

namespace {

Label random_label(Rng& rng, std::uint64_t max_label) {
  // Small labels twice as often, so random tuples share prefixes.
  if (rng.chance(1, 2)) return Label{rng.below(std::min<std::uint64_t>(max_label, 2) + 1)};
  return Label{rng.below(max_label + 1)};
}

Tuple random_tuple_of(Rng& rng, std::size_t len, std::uint64_t max_label) {
  std::vector<Label> entries(len);
  for (auto& l : entries) l = random_label(rng, max_label);
  return Tuple(std::move(entries));
}

// Tuple of length <= max_len that is a prefix or an extension of `seed`.
Tuple related_tuple(Rng& rng, const Tuple& seed, std::size_t max_len, std::uint64_t max_label) {
  if (rng.chance(1, 2) || seed.length() >= max_len) {
    return seed.prefix(rng.below(std::min(seed.length(), max_len) + 1));
  }
  const std::size_t extra = 1 + rng.below(max_len - seed.length());
  return seed.concat(random_tuple_of(rng, extra, max_label));
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

SuiteResult run_suite(std::string name, const std::function<void(SuiteResult&)>& body) {
  SuiteResult result;
  result.name = std::move(name);
  Timer timer;
  try {
    body(result);
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds = timer.seconds();
  return result;
}

// Records the first failure only.
void expect(SuiteResult& r, bool ok, const std::function<std::string()>& detail) {
  if (ok || !r.passed) return;
  r.passed = false;
  r.detail = detail();
}

std::string describe(const std::optional<SequenceDesc>& x) {
  return x ? to_string(*x) : std::string("none");
}

}  // namespace

Tuple random_tuple(Rng& rng, std::size_t min_len, std::size_t max_len, std::uint64_t max_label) {
  const std::size_t len = min_len + rng.below(max_len - min_len + 1);
  return random_tuple_of(rng, len, max_label);
}

Monomial random_monomial(Rng& rng, const Bounds& bounds) {
  const std::size_t len = rng.chance(1, 20) ? 0 : 1 + rng.below(bounds.max_len);
  Tuple a = random_tuple_of(rng, len, bounds.max_label);
  if (rng.chance(1, 3)) return Monomial::projection(std::move(a));
  return Monomial::isometry(std::move(a), random_tuple_of(rng, len, bounds.max_label));
}

std::vector<Monomial> random_word(Rng& rng, std::size_t max_factors, const Bounds& bounds) {
  const std::size_t count = 1 + rng.below(max_factors);
  std::vector<Monomial> reversed;
  Monomial running;
  for (std::size_t i = 0; i < count; ++i) {
    Monomial m;
    if (i > 0 && !running.is_zero() && rng.chance(3, 4)) {
      Tuple domain = related_tuple(rng, running.range(), bounds.max_len, bounds.max_label);
      if (rng.chance(1, 3)) {
        m = Monomial::projection(std::move(domain));
      } else {
        Tuple range = random_tuple_of(rng, domain.length(), bounds.max_label);
        m = Monomial::isometry(std::move(domain), std::move(range));
      }
    } else {
      m = random_monomial(rng, bounds);
    }
    running = i == 0 ? m : multiply(m, running);
    reversed.push_back(std::move(m));
  }
  return {reversed.rbegin(), reversed.rend()};
}

Scalar random_scalar(Rng& rng) {
  auto part = [&rng] {
    return Rational(rng.between(-3, 3), static_cast<unsigned long>(rng.between(1, 3)));
  };
  Scalar s;
  do {
    s = rng.chance(1, 2) ? Scalar(part()) : Scalar(part(), part());
  } while (s.is_zero());
  return s;
}

Polynomial random_polynomial(Rng& rng, std::size_t max_terms, const Bounds& bounds) {
  Polynomial p;
  while (p.is_zero()) {
    const std::size_t terms = 1 + rng.below(max_terms);
    std::vector<Monomial> picked;
    for (std::size_t i = 0; i < terms; ++i) {
      Monomial m = !picked.empty() && rng.chance(1, 3)
                       ? Monomial::projection(related_tuple(rng, rng.pick(picked).domain(),
                                                            bounds.max_len, bounds.max_label))
                       : random_monomial(rng, bounds);
      picked.push_back(m);
      p.add_term(m, random_scalar(rng));
    }
  }
  return p;
}

DiagonalState random_state(Rng& rng, std::size_t max_points, const Bounds& bounds) {
  const std::size_t count = 1 + rng.below(max_points);
  std::vector<SequenceDesc> points;
  while (points.size() < count) {
    SequenceDesc x{random_tuple(rng, 1, bounds.max_len, bounds.max_label),
                   Label{rng.below(bounds.max_label + 1)}};
    if (std::find(points.begin(), points.end(), x) == points.end()) points.push_back(x);
  }
  std::vector<Rational> raw;
  Rational total = 0;
  for (std::size_t i = 0; i < count; ++i) {
    raw.emplace_back(1 + static_cast<long>(rng.below(4)));
    total += raw.back();
  }
  std::vector<WeightedPoint> support;
  for (std::size_t i = 0; i < count; ++i) {
    Rational w = raw[i] / total;
    w.canonicalize();
    support.push_back({points[i], w});
  }
  return DiagonalState(std::move(support));
}

SequenceDesc random_point(Rng& rng, const Tuple& start, std::size_t extra,
                          std::uint64_t max_label, Label tail) {
  const std::size_t k = rng.below(extra + 1);
  return SequenceDesc{start.concat(random_tuple_of(rng, k, max_label)), tail};
}

std::optional<SequenceDesc> oracle_apply(const std::vector<Monomial>& word, const SequenceDesc& x) {
  std::size_t width = x.prefix.length();
  for (const auto& m : word) width = std::max(width, m.domain().length());
  std::vector<std::uint64_t> cells(width);
  for (std::size_t i = 0; i < width; ++i) cells[i] = x.coordinate(i + 1).value;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (it->is_zero()) return std::nullopt;
    const auto& from = it->domain().entries();
    const auto& to = it->range().entries();
    for (std::size_t i = 0; i < from.size(); ++i) {
      if (cells[i] != from[i].value) return std::nullopt;
    }
    for (std::size_t i = 0; i < to.size(); ++i) cells[i] = to[i].value;
  }
  std::vector<Label> labels;
  labels.reserve(width);
  for (auto v : cells) labels.push_back(Label{v});
  return SequenceDesc{Tuple(std::move(labels)), x.tail};
}

SuiteResult closure_and_action(std::uint64_t seed, std::size_t words) {
  return run_suite("semigroup closure and point-action oracle", [&](SuiteResult& r) {
    Rng rng(seed);
    const Bounds bounds{5, 8};
    std::size_t nonzero = 0, defined_points = 0;
    for (std::size_t w = 0; w < words && r.passed; ++w) {
      const auto word = random_word(rng, 8, bounds);
      const Monomial nf = normal_form(word);
      ++r.cases;
      if (!nf.is_zero()) ++nonzero;
      expect(r, nf.is_zero() || nf.domain().length() == nf.range().length(),
             [&] { return "unequal lengths in " + to_string(nf); });
      const Label tail{bounds.max_label + 1 + rng.below(4)};
      for (int k = 0; k < 5; ++k) {
        Tuple start;
        if (k == 0 && !nf.is_zero()) start = nf.domain();
        else if (k <= 1) start = word.back().domain();
        else start = random_tuple(rng, 0, bounds.max_len, bounds.max_label);
        const SequenceDesc x = random_point(rng, start, 2, bounds.max_label, tail);
        const auto stepwise = oracle_apply(word, x);
        const auto direct = oracle_apply({nf}, x);
        if (direct) ++defined_points;
        expect(r, stepwise == direct, [&] {
          return "word " + word_to_string(word) + " at " + to_string(x) + ": factors give " +
                 describe(stepwise) + ", normal form " + to_string(nf) + " gives " +
                 describe(direct);
        });
        expect(r, act(nf, x) == direct,
               [&] { return "act disagrees with the oracle for " + to_string(nf); });
      }
    }
    r.detail = r.passed ? std::to_string(nonzero) + " nonzero words, " +
                              std::to_string(defined_points) + " points inside the domain"
                        : r.detail;
  });
}

SuiteResult algebra_laws(std::uint64_t seed, std::size_t words) {
  return run_suite("associativity, involution and partial isometry laws", [&](SuiteResult& r) {
    Rng rng(seed);
    const Bounds bounds{5, 8};
    for (std::size_t w = 0; w < words && r.passed; ++w) {
      const auto word = random_word(rng, 8, bounds);
      const Monomial nf = normal_form(word);
      ++r.cases;
      const Monomial& m1 = rng.pick(word);
      const Monomial m2 = rng.chance(1, 2) ? nf : rng.pick(word);
      const Monomial& m3 = rng.pick(word);
      expect(r, (m1 * m2) * m3 == m1 * (m2 * m3), [&] {
        return "associativity fails for " + to_string(m1) + ", " + to_string(m2) + ", " +
               to_string(m3);
      });
      expect(r, adjoint(m1 * m2) == adjoint(m2) * adjoint(m1),
             [&] { return "involution fails for " + to_string(m1) + ", " + to_string(m2); });
      expect(r, adjoint(adjoint(nf)) == nf, [&] { return "adjoint not involutive"; });
      if (!nf.is_zero()) {
        expect(r, nf * adjoint(nf) * nf == nf,
               [&] { return "V V* V != V for " + to_string(nf); });
        expect(r, adjoint(nf) * nf == Monomial::projection(nf.domain()),
               [&] { return "V* V is not the domain projection for " + to_string(nf); });
        const Monomial p = Monomial::projection(nf.domain());
        const Monomial q = Monomial::projection(m3.domain());
        expect(r, p * p == p && adjoint(p) == p, [&] { return "projection law fails"; });
        Monomial expected;
        switch (compatibility(p.domain(), q.domain())) {
          case Compatibility::AExtendsB: expected = p; break;
          case Compatibility::BProperlyExtendsA: expected = q; break;
          case Compatibility::Disjoint: break;
        }
        expect(r, p * q == expected && q * p == expected, [&] {
          return "projection product of " + to_string(p) + " and " + to_string(q);
        });
      }
      if (w % 20 == 0) {
        const Bounds small{3, 4};
        const Polynomial a = random_polynomial(rng, 3, small);
        const Polynomial b = random_polynomial(rng, 3, small);
        const Polynomial c = random_polynomial(rng, 3, small);
        expect(r, (a * b) * c == a * (b * c), [&] { return "polynomial associativity"; });
        expect(r, a * (b + c) == a * b + a * c && (a + b) * c == a * c + b * c,
               [&] { return "distributivity"; });
        expect(r, adjoint(a * b) == adjoint(b) * adjoint(a) && adjoint(adjoint(a)) == a,
               [&] { return "polynomial involution"; });
      }
    }
  });
}

SuiteResult constancy_and_compression(std::uint64_t seed, std::size_t polys) {
  return run_suite("g-constancy and fresh compression", [&](SuiteResult& r) {
    Rng rng(seed);
    const Bounds bounds{4, 8};
    std::size_t nonzero_scalars = 0;
    for (std::size_t i = 0; i < polys && r.passed; ++i) {
      const Polynomial p = random_polynomial(rng, 6, bounds);
      ++r.cases;
      const std::size_t longest = p.max_tuple_length();

      // Constancy on an arbitrary long enough cylinder.
      const Tuple t = random_point(rng, rng.pick(std::vector<Monomial>{p.terms().begin()->first})
                                            .domain(),
                                   2, bounds.max_label, Label{0})
                          .initial(longest + rng.below(2));
      const Scalar gt = g_on_cylinder(p, t);
      for (int k = 0; k < 3; ++k) {
        const SequenceDesc y =
            random_point(rng, t, 3, bounds.max_label + 2, Label{rng.below(bounds.max_label + 3)});
        expect(r, g_eval(p, y) == gt, [&] {
          return "g not constant on " + to_string(t) + " for " + to_string(p) + " at " +
                 to_string(y);
        });
      }

      // Fresh cylinder alpha = alpha'·(r). Either n exceeds every tuple length,
      // or n equals the longest and r avoids every coordinate-n value.
      const bool beyond = longest == 0 || i % 2 == 0;
      const std::size_t n = beyond ? longest + 1 : longest;
      std::vector<Monomial> terms;
      for (const auto& [m, c] : p.terms()) terms.push_back(m);
      const SequenceDesc x = random_point(rng, rng.pick(terms).domain(), n, bounds.max_label,
                                          Label{rng.below(bounds.max_label + 1)});
      std::set<Label> avoid;
      for (const auto& m : terms) {
        if (n <= m.length()) {
          avoid.insert(m.domain().at(n));
          avoid.insert(m.range().at(n));
        }
      }
      const Tuple alpha = x.initial(n - 1).concat(Tuple(std::vector<Label>{least_label_avoiding(avoid)}));
      const Scalar scalar = g_on_cylinder(p, alpha);
      if (!scalar.is_zero()) ++nonzero_scalars;
      expect(r, compress(p, alpha) == Polynomial(Monomial::projection(alpha), scalar), [&] {
        return "compress(" + to_string(p) + ", " + to_string(alpha) + ") = " +
               to_string(compress(p, alpha)) + " is not " + to_string(scalar) + " P_alpha";
      });
      for (int k = 0; k < 3; ++k) {
        const SequenceDesc y = random_point(rng, alpha, 3, bounds.max_label + 2, Label{1});
        expect(r, g_eval(p, y) == scalar, [&] { return "g not constant on fresh cylinder"; });
      }
      // Matrix elements between distinct points of the fresh cylinder.
      Fragment f;
      f.level = n + 1;
      f.padding = Label{bounds.max_label + 1};
      for (std::uint64_t u = 0; u < 4; ++u) f.index.push_back(alpha.concat(Tuple{u}));
      const ScalarMatrix m = fragment_matrix(p, f);
      for (std::size_t row = 0; row < f.size(); ++row) {
        for (std::size_t col = 0; col < f.size(); ++col) {
          const Scalar expected = row == col ? scalar : Scalar();
          expect(r, m.at(row, col) == expected, [&] {
            return "matrix element (" + to_string(f.index[row]) + ", " + to_string(f.index[col]) +
                   ") of " + to_string(p) + " is " + to_string(m.at(row, col));
          });
        }
      }
    }
    if (r.passed) r.detail = std::to_string(nonzero_scalars) + " nonzero compressions";
  });
}

namespace {

struct LinkRequest {
  Tuple first, second;
};
struct ProtectRequest {
  DiagonalState rho;
  std::size_t horizon;
};
using Request = std::variant<LinkRequest, ProtectRequest>;

Tuple request_tuple(Rng& rng, const Registry& reg, std::size_t max_len, std::uint64_t max_label,
                    const std::vector<Tuple>& hints) {
  const auto gens = reg.generators();
  if (!gens.empty() && rng.chance(1, 3)) {
    const auto& g = rng.pick(gens);
    const Tuple& base = rng.chance(1, 2) ? g.a : g.b;
    return base.prefix(rng.below(std::min(base.length(), max_len) + 1));
  }
  if (!hints.empty() && rng.chance(1, 2)) {
    return related_tuple(rng, rng.pick(hints), max_len, max_label);
  }
  return random_tuple(rng, 0, max_len, max_label);
}

void apply_request(Registry& reg, const Request& req) {
  if (const auto* l = std::get_if<LinkRequest>(&req)) {
    reg.link(l->first, l->second);
  } else {
    const auto& p = std::get<ProtectRequest>(req);
    reg.register_protection(p.rho, p.horizon);
  }
}

}  // namespace

SuiteResult oracle_invariants(std::uint64_t seed, std::size_t calls) {
  return run_suite("avoidance oracle invariants", [&](SuiteResult& r) {
    Rng rng(seed);
    const Bounds bounds{4, 8};
    Registry reg;
    std::vector<Request> requests;
    for (std::size_t i = 0; i < calls; ++i) {
      Request req;
      if (rng.chance(1, 4)) {
        req = ProtectRequest{random_state(rng, 4, bounds), 1 + rng.below(5)};
      } else {
        req = LinkRequest{request_tuple(rng, reg, 4, bounds.max_label, {}),
                          request_tuple(rng, reg, 4, bounds.max_label, {})};
      }
      apply_request(reg, req);
      requests.push_back(std::move(req));
      ++r.cases;
      if (i % 250 == 249) {
        const auto report = reg.audit();
        expect(r, report.ok(), [&] { return report.describe(); });
      }
    }
    const auto report = reg.audit();
    expect(r, report.ok(), [&] { return report.describe(); });
    for (const auto& g : reg.generators()) {
      const Monomial v = g.generator();
      const std::vector<Monomial> word{v, Monomial::projection(g.a), adjoint(v)};
      expect(r, normal_form(word) == Monomial::projection(g.b),
             [&] { return "V P_a V* != P_b at stage " + std::to_string(g.stage); });
      expect(r, properly_extends(g.a, g.requested_first) &&
                    properly_extends(g.b, g.requested_second),
             [&] { return "domination fails at stage " + std::to_string(g.stage); });
    }
    Registry replayed;
    for (const auto& req : requests) apply_request(replayed, req);
    expect(r, replayed == reg, [] { return "replaying the requests gives a different log"; });
  });
}

namespace {

// Word containing P_a, built right to left and biased towards nonzero
// products.
std::vector<Monomial> lemma2_word(Rng& rng, const Registry& reg, const Tuple& a,
                                  const std::vector<Tuple>& hints) {
  const auto gens = reg.generators();
  const std::size_t length = 1 + rng.below(6);
  const std::size_t pa_position = rng.chance(1, 2) ? length - 1 : rng.below(length);
  const Monomial pa = Monomial::projection(a);
  auto candidate = [&]() -> Monomial {
    const auto roll = rng.below(20);
    if (roll < 9 && !gens.empty()) {
      const Monomial v = rng.pick(gens).generator();
      return rng.chance(1, 2) ? v : adjoint(v);
    }
    if (roll < 16) {
      Tuple seed = hints.empty() ? a : rng.pick(hints);
      if (!gens.empty() && rng.chance(1, 2)) {
        const auto& g = rng.pick(gens);
        seed = rng.chance(1, 2) ? g.a : g.b;
      }
      Tuple t = related_tuple(rng, seed, 6, 8);
      if (t.empty()) t = seed;
      if (t.empty()) t = a;
      return Monomial::projection(std::move(t));
    }
    return pa;
  };
  std::vector<Monomial> reversed;
  Monomial running;
  for (std::size_t i = length; i-- > 0;) {
    Monomial m;
    if (i == pa_position) {
      m = pa;
    } else {
      const bool want_nonzero = rng.chance(4, 5);
      if (want_nonzero && !reversed.empty() && rng.chance(1, 2)) {
        std::vector<Monomial> fitting;
        for (const auto& g : gens) {
          const Monomial v = g.generator();
          if (!multiply(v, running).is_zero()) fitting.push_back(v);
          if (!multiply(adjoint(v), running).is_zero()) fitting.push_back(adjoint(v));
        }
        if (!fitting.empty()) {
          m = rng.pick(fitting);
          running = multiply(m, running);
          reversed.push_back(std::move(m));
          continue;
        }
      }
      for (int tries = 0; tries < 8; ++tries) {
        m = candidate();
        if (!want_nonzero || reversed.empty() || !multiply(m, running).is_zero()) break;
      }
    }
    running = reversed.empty() ? m : multiply(m, running);
    reversed.push_back(std::move(m));
  }
  return {reversed.rbegin(), reversed.rend()};
}

}  // namespace

SuiteResult lemma2_end_to_end(std::uint64_t seed, std::size_t states, std::size_t links,
                              std::size_t words_per_state) {
  return run_suite("state vanishing on the ideal of P_a", [&](SuiteResult& r) {
    Rng rng(seed);
    const Bounds bounds{4, 8};
    constexpr std::size_t kHorizon = 5;
    std::size_t traces = 0, zeros = 0, combos = 0, adjoints = 0;
    std::map<CaseTag, std::size_t> tags;
    for (std::size_t s = 0; s < states && r.passed; ++s) {
      Registry reg;
      const std::size_t before = 3 + rng.below(8);
      for (std::size_t i = 0; i < before; ++i) {
        reg.link(request_tuple(rng, reg, 4, bounds.max_label, {}),
                 request_tuple(rng, reg, 4, bounds.max_label, {}));
      }
      const DiagonalState rho = random_state(rng, 4, bounds);
      const ProtectionRecord prot = reg.register_protection(rho, kHorizon);
      const Tuple a = reg.vanishing_tuple(prot);
      expect(r, state_eval(rho, Polynomial(Monomial::projection(a))).is_zero(),
             [&] { return "rho(P_a) != 0"; });

      std::vector<Tuple> hints{a};
      for (const auto& wp : rho.support()) hints.push_back(wp.point.initial(1 + rng.below(3)));
      for (std::size_t i = 0; i < links; ++i) {
        reg.link(request_tuple(rng, reg, 4, bounds.max_label, hints),
                 request_tuple(rng, reg, 4, bounds.max_label, hints));
      }
      const auto report = reg.audit();
      expect(r, report.ok(), [&] { return report.describe(); });

      std::vector<Polynomial> vanishing_terms;
      for (std::size_t w = 0; w < words_per_state && r.passed; ++w) {
        const auto word = lemma2_word(rng, reg, a, hints);
        ++r.cases;
        const Monomial product = normal_form(word);
        const Lemma2Outcome outcome = lemma2_witness(reg, prot, a, word);
        if (const auto* trace = std::get_if<Lemma2Trace>(&outcome)) {
          ++traces;
          for (const auto& step : trace->steps) {
            ++tags[step.tag];
            if (step.adjoint) ++adjoints;
          }
          verify_lemma2_trace(reg, *trace);
          expect(r, !product.is_zero(), [&] { return "trace for a zero word"; });
          const Scalar value = vanishing_check(rho, reg, prot, a, word);
          expect(r, value.is_zero() && state_eval(rho, Polynomial(product)).is_zero(), [&] {
            return "rho(" + word_to_string(word) + ") = " + to_string(value);
          });
          if (vanishing_terms.size() < 64) vanishing_terms.push_back(Polynomial(product));
        } else {
          ++zeros;
          ++tags[std::get<ZeroReport>(outcome).tag];
          expect(r, product.is_zero(), [&] {
            return "zero report for nonzero word " + word_to_string(word);
          });
        }
      }
      // Linear combinations of such words.
      for (std::size_t c = 0; c < 50 && !vanishing_terms.empty(); ++c) {
        Polynomial combo;
        const std::size_t count = 2 + rng.below(3);
        for (std::size_t k = 0; k < count; ++k) combo += rng.pick(vanishing_terms) * random_scalar(rng);
        ++combos;
        expect(r, state_eval(rho, combo).is_zero(),
               [&] { return "rho does not vanish on " + to_string(combo); });
      }
      // Without the P_a hypothesis the state is visible.
      const Tuple support_prefix = rho.support().front().point.initial(1);
      expect(r, !state_eval(rho, Polynomial(Monomial::projection(support_prefix))).is_zero(),
             [&] { return "rho vanishes on a support projection"; });
    }
    if (r.passed) {
      r.detail = std::to_string(traces) + " traces, " + std::to_string(zeros) + " zero words, " +
                 std::to_string(combos) + " combinations; steps";
      for (const auto& [tag, count] : tags) r.detail += " " + to_string(tag) + "=" + std::to_string(count);
      r.detail += " adjoint=" + std::to_string(adjoints);
    }
  });
}

SuiteResult primeness_pipeline(std::uint64_t seed, std::size_t pairs) {
  return run_suite("primeness certificates", [&](SuiteResult& r) {
    Rng rng(seed);
    const Bounds bounds{3, 8};
    Registry reg;
    auto witness = [&]() {
      while (true) {
        const Polynomial q = random_polynomial(rng, 3, bounds);
        std::vector<Monomial> terms;
        for (const auto& [m, c] : q.terms()) terms.push_back(m);
        const SequenceDesc x = random_point(rng, rng.pick(terms).domain(), 2, bounds.max_label,
                                            Label{rng.below(10)});
        if (!g_eval(adjoint(q) * q, x).is_zero()) return ideal_projection_witness(reg, q, x);
      }
    };
    for (std::size_t i = 0; i < pairs && r.passed; ++i) {
      if (rng.chance(1, 3)) reg.register_protection(random_state(rng, 3, bounds), 1 + rng.below(4));
      const IdealWitness w1 = witness();
      const IdealWitness w2 = rng.chance(1, 10) ? w1 : witness();
      const PrimenessCertificate cert = primeness_witness(reg, w1, w2);
      ++r.cases;
      const CertificateText text = parse_certificate(to_string(cert));
      verify_certificate(text, &reg);
      expect(r, evaluate(*parse_expression(text.product)) ==
                    Polynomial(Monomial::projection(cert.generator.b)),
             [] { return "product does not normalize to P_b"; });
      if (i % 10 == 0) {
        CertificateText tampered = text;
        tampered.scalar1 += Scalar(1);
        bool rejected = false;
        try {
          verify_certificate(tampered, &reg);
        } catch (const VerificationError&) {
          rejected = true;
        }
        expect(r, rejected, [] { return "tampered certificate accepted"; });
      }
    }
    const auto report = reg.audit();
    expect(r, report.ok(), [&] { return report.describe(); });
  });
}

SuiteResult fragment_psd(std::uint64_t seed, std::size_t samples) {
  return run_suite("fragment positivity of q*q", [&](SuiteResult& r) {
    Rng rng(seed);
    const Bounds bounds{3, 6};
    std::size_t largest = 0;
    for (std::size_t i = 0; i < samples && r.passed; ++i) {
      const Polynomial q = random_polynomial(rng, 4, bounds);
      const Polynomial qq = adjoint(q) * q;
      const std::size_t level = std::max<std::size_t>(1, q.max_tuple_length());
      const std::vector<Polynomial> polys{q, qq};
      const Fragment f = closed_fragment(polys, level);
      largest = std::max(largest, f.size());
      const ScalarMatrix mq = fragment_matrix(q, f);
      const ScalarMatrix mqq = fragment_matrix(qq, f);
      ++r.cases;
      expect(r, mqq == mq.adjoint() * mq, [&] { return "fragment of q*q is not M(q)* M(q)"; });
      expect(r, is_positive_semidefinite(mqq),
             [&] { return "fragment of q*q is not PSD for q = " + to_string(q); });
      if (!qq.is_zero()) {
        const ScalarMatrix negated = fragment_matrix(qq * Scalar(-1), f);
        expect(r, !is_positive_semidefinite(negated), [&] { return "-q*q passed as PSD"; });
      }
    }
    if (r.passed) r.detail = "largest fragment " + std::to_string(largest);
  });
}

}  // namespace cylalg::check
