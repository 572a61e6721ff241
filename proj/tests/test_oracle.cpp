#include <doctest.h>

#include "cylalg/check.hpp"
#include "cylalg/error.hpp"
#include "cylalg/registry.hpp"

using namespace cylalg;

namespace {

// Conditions (i)-(iii) for the generator at log position k, by direct scan.
bool fresh_by_scan(const Registry& reg, std::size_t k) {
  const auto& g = std::get<GeneratorRecord>(reg.log()[k]);
  const std::size_t n = g.n;
  if (n != std::max(g.requested_first.length(), g.requested_second.length()) + 1) return false;
  if (g.a.length() != n || g.b.length() != n) return false;
  if (!properly_extends(g.a, g.requested_first) || !properly_extends(g.b, g.requested_second)) {
    return false;
  }
  const Label r = g.a.at(n);
  if (g.b.at(n) != r) return false;
  for (std::size_t j = 0; j < k; ++j) {
    if (const auto* h = std::get_if<GeneratorRecord>(&reg.log()[j])) {
      if (n <= h->n && (h->a.at(n) == r || h->b.at(n) == r)) return false;
    } else {
      for (const auto& c : std::get<ProtectionRecord>(reg.log()[j]).tuples) {
        if (n <= c.length() && c.at(n) == r) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("link examples") {
  Registry reg;
  const auto g = reg.link(Tuple{1}, Tuple{2, 7});
  CHECK(g.n == 3);
  CHECK(g.a == Tuple{1, 0, 0});
  CHECK(g.b == Tuple{2, 7, 0});
  CHECK(g.label == Label{0});
  CHECK(fresh_by_scan(reg, 0));

  const auto h = reg.link(Tuple{4}, Tuple{4});
  CHECK(h.a == h.b);
  CHECK(h.generator().is_projection());
  CHECK(properly_extends(h.a, Tuple{4}));

  // Coordinate 3 now carries 0 from the first generator.
  const auto k = reg.link(Tuple{5, 5}, Tuple{6});
  CHECK(k.n == 3);
  CHECK(k.a.at(3) != Label{0});
  CHECK(fresh_by_scan(reg, 2));
}

TEST_CASE("linking identity") {
  Registry reg;
  reg.link(Tuple{1}, Tuple{2, 7});
  reg.link(Tuple{}, Tuple{3});
  for (const auto& g : reg.generators()) {
    const std::vector<Monomial> word{Monomial::isometry(g.a, g.b), Monomial::projection(g.a),
                                     Monomial::isometry(g.b, g.a)};
    CHECK(normal_form(word) == Monomial::projection(g.b));
  }
}

TEST_CASE("register_protection examples") {
  Registry reg;
  const auto rho = parse_state("1 @ (1,2)/0");
  const auto p = reg.register_protection(rho, 2);
  CHECK(p.tuples == std::vector<Tuple>{Tuple{1}, Tuple{1, 2}});
  CHECK(p.horizon == 2);
  CHECK(reg.avoided_labels(1, reg.next_stage()).count(Label{1}) == 1);
  CHECK(reg.avoided_labels(2, reg.next_stage()).count(Label{2}) == 1);
  // A later link with n = 2 must avoid 2 at coordinate 2.
  const auto g = reg.link(Tuple{2}, Tuple{3});
  CHECK(g.n == 2);
  CHECK(g.label != Label{2});
  const auto h = reg.link(Tuple{}, Tuple{});
  CHECK(h.n == 1);
  CHECK(h.label != Label{1});

  const auto empty = reg.register_protection(DiagonalState(), 3);
  CHECK(empty.tuples.empty());
}

TEST_CASE("vanishing_tuple examples") {
  {
    Registry reg;
    const auto p = reg.protect({Tuple{1}, Tuple{1, 2}});
    CHECK(reg.vanishing_tuple(p) == Tuple{0});
  }
  {
    Registry reg;
    const auto g = reg.link(Tuple{1, 5}, Tuple{0, 5});
    CHECK(g.a == Tuple{1, 5, 0});
    const auto p = reg.protect({});
    CHECK(reg.vanishing_tuple(p) == Tuple{2});
  }
  {
    Registry reg;
    const auto p = reg.protect({});
    CHECK(reg.vanishing_tuple(p) == Tuple{0});
  }
  {
    // Generators issued after the protection do not matter.
    Registry reg;
    const auto p = reg.protect({Tuple{1}});
    reg.link(Tuple{0}, Tuple{3});
    CHECK(reg.vanishing_tuple(p) == Tuple{0});
  }
  {
    Registry reg;
    const auto p = reg.protect({});
    Registry other;
    other.link(Tuple{1}, Tuple{2});
    CHECK_THROWS_AS(other.vanishing_tuple(p), PreconditionError);
  }
}

TEST_CASE("audit") {
  CHECK(Registry().audit().ok());

  Registry reg;
  reg.protect({Tuple{1}, Tuple{1, 2, 3}});
  reg.link(Tuple{1}, Tuple{1});
  CHECK(reg.audit().ok());

  // A hand-made record reusing the protected label 3 at coordinate 3.
  Registry bad = reg;
  GeneratorRecord g;
  g.stage = bad.next_stage();
  g.n = 3;
  g.requested_first = Tuple{4, 4};
  g.requested_second = Tuple{5};
  g.a = Tuple{4, 4, 3};
  g.b = Tuple{5, 3, 3};
  g.label = Label{3};
  bad.append_unchecked(g);
  const auto report = bad.audit();
  REQUIRE_FALSE(report.ok());
  CHECK(report.violation->stage == 2);
  CHECK(report.violation->coordinate == 3);
  CHECK(report.describe().find("stage=2") != std::string::npos);

  GeneratorRecord late = g;
  late.stage = 7;
  CHECK_THROWS_AS(bad.append_unchecked(late), PreconditionError);
}

TEST_CASE("interleaved requests keep the conditions and replay identically") {
  check::Rng rng(4);
  const check::Bounds bounds{3, 5};
  Registry reg, twin;
  for (int k = 0; k < 300; ++k) {
    if (rng.chance(1, 4)) {
      const auto rho = check::random_state(rng, 3, bounds);
      const std::size_t horizon = 1 + rng.below(4);
      reg.register_protection(rho, horizon);
      twin.register_protection(rho, horizon);
    } else {
      const Tuple a = check::random_tuple(rng, 0, 3, 5);
      const Tuple b = check::random_tuple(rng, 0, 3, 5);
      reg.link(a, b);
      twin.link(a, b);
    }
  }
  CHECK(reg.audit().ok());
  CHECK(reg == twin);
  for (std::size_t k = 0; k < reg.size(); ++k) {
    if (std::holds_alternative<GeneratorRecord>(reg.log()[k])) CHECK(fresh_by_scan(reg, k));
  }
}

TEST_CASE("record text round-trips") {
  Registry reg;
  reg.link(Tuple{1}, Tuple{2, 7});
  reg.register_protection(parse_state("1/2 @ (1,2)/0; 1/2 @ (3)/1"), 2);
  reg.protect({Tuple{}, Tuple{4}});
  CHECK(to_string(reg.log()[0]) ==
        "generator stage=0 n=3 label=0 first=(1) second=(2,7) a=(1,0,0) b=(2,7,0)");
  for (const auto& r : reg.log()) CHECK(parse_record(to_string(r)) == r);
  CHECK_THROWS_AS(parse_record("generator stage=0"), ParseError);
  CHECK_THROWS_AS(parse_record("widget stage=0"), ParseError);
}
