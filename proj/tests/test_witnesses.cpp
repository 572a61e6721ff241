#include <doctest.h>

#include "cylalg/error.hpp"
#include "cylalg/lemma1.hpp"
#include "cylalg/lemma2.hpp"

using namespace cylalg;

namespace {

Monomial P(Tuple a) { return Monomial::projection(std::move(a)); }
Polynomial poly(std::string_view text) { return evaluate(*parse_expression(text)); }

std::string replace_line(const std::string& text, const std::string& key, const std::string& line) {
  std::string out;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    const std::string current = text.substr(start, end - start);
    out += current.starts_with(key + " ") ? line : current;
    out += '\n';
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

bool rejected(const std::string& text, const Registry* reg) {
  try {
    verify_certificate(parse_certificate(text), reg);
    return false;
  } catch (const VerificationError&) {
    return true;
  } catch (const ParseError&) {
    return true;
  }
}

}  // namespace

TEST_CASE("ideal projection witness examples") {
  Registry reg;
  const auto w = ideal_projection_witness(reg, poly("P((1))"), parse_sequence("(1)/0"));
  CHECK(w.n == 2);
  CHECK(w.alpha == Tuple{1, 0});
  CHECK(w.scalar == Scalar(1));
  CHECK(evaluate(*w.certificate) == Polynomial(P(w.alpha)));

  const auto v = ideal_projection_witness(reg, poly("V((1);(2))"), parse_sequence("(1)/0"));
  CHECK(v.source == Polynomial(P(Tuple{1})));
  CHECK(v.alpha == Tuple{1, 0});
  CHECK(v.scalar == Scalar(1));

  CHECK_THROWS_AS(ideal_projection_witness(reg, poly("P((1))"), parse_sequence("(2)/0")),
                  PreconditionError);
}

TEST_CASE("witness label avoids protected values at coordinate n") {
  Registry reg;
  reg.protect({Tuple{1, 0}, Tuple{1, 1}});
  const auto w = ideal_projection_witness(reg, poly("P((1))"), parse_sequence("(1)/0"));
  CHECK(w.alpha == Tuple{1, 2});
  // The generator tuples' coordinate-n values are avoided too.
  const auto u = ideal_projection_witness(reg, poly("2 P((3)) + V((3,0);(3,1))"),
                                          parse_sequence("(3,0)/0"));
  CHECK(u.n == 3);
  CHECK(u.alpha == Tuple{3, 0, 0});
  CHECK(u.scalar == Scalar(4) + Scalar(1));
  CHECK(compress(u.source, u.alpha) == Polynomial(P(u.alpha), u.scalar));
}

TEST_CASE("primeness certificate") {
  Registry reg;
  const auto w1 = ideal_projection_witness(reg, poly("P((1))"), parse_sequence("(1)/0"));
  const auto w2 = ideal_projection_witness(reg, poly("P((2))"), parse_sequence("(2)/0"));
  const auto cert = primeness_witness(reg, w1, w2);
  CHECK(extends(cert.generator.b, w2.alpha));
  CHECK(extends(cert.generator.b, Tuple{2, w2.alpha.at(2).value}));
  CHECK(evaluate(*cert.product) == Polynomial(P(cert.generator.b)));
  CHECK(reg.audit().ok());

  const std::string text = to_string(cert);
  CHECK(text.starts_with("cylalg-certificate 1\n"));
  const auto parsed = parse_certificate(text);
  CHECK_NOTHROW(verify_certificate(parsed, &reg));
  CHECK_NOTHROW(verify_certificate(parsed, nullptr));

  // Cross-checking against a registry that never issued the generator.
  Registry other;
  CHECK_THROWS_AS(verify_certificate(parsed, &other), VerificationError);

  CHECK(rejected(replace_line(text, "scalar1", "scalar1 2"), nullptr));
  CHECK(rejected(replace_line(text, "alpha", "alpha (1,7)"), nullptr));
  CHECK(rejected(replace_line(text, "x1", "x1 (2)/0"), nullptr));
  CHECK(rejected(replace_line(text, "q2", "q2 P((2)) + P((3))"), nullptr));
  CHECK(rejected(replace_line(text, "result", "result P((2))"), nullptr));
  CHECK(rejected(replace_line(text, "product", "product P((2))"), nullptr));
  CHECK(rejected(replace_line(text, "generator",
                              "generator stage=0 n=3 label=5 first=(1,0) second=(2,0) "
                              "a=(1,0,5) b=(2,0,5)"),
                 &reg));
  CHECK(rejected(text.substr(0, text.size() / 2), nullptr));
}

TEST_CASE("primeness with the same witness twice") {
  Registry reg;
  const auto w = ideal_projection_witness(reg, poly("P((1)) + V((1);(2))"), parse_sequence("(1,4)/4"));
  const auto cert = primeness_witness(reg, w, w);
  CHECK_NOTHROW(verify_certificate(parse_certificate(to_string(cert)), &reg));
  CHECK(reg.audit().ok());
}

TEST_CASE("lemma2: base case") {
  Registry reg;
  const auto prot = reg.protect({Tuple{1}});
  const Tuple a = reg.vanishing_tuple(prot);
  REQUIRE(a == Tuple{0});
  const std::vector<Monomial> word{P(a)};
  const auto out = lemma2_witness(reg, prot, a, word);
  REQUIRE(std::holds_alternative<Lemma2Trace>(out));
  const auto& trace = std::get<Lemma2Trace>(out);
  REQUIRE(trace.steps.size() == 1);
  CHECK(trace.steps[0].tag == CaseTag::Base);
  CHECK(trace.final_b == a);
  CHECK(trace.final_n == 1);
  CHECK_NOTHROW(verify_lemma2_trace(reg, trace));
}

TEST_CASE("lemma2: later short generator") {
  Registry reg;
  const auto prot = reg.protect({});
  const Tuple a = reg.vanishing_tuple(prot);
  const auto k = reg.link(Tuple{0}, Tuple{5});
  REQUIRE(k.a == Tuple{0, 0});
  const std::vector<Monomial> word{k.generator(), P(a)};
  const auto out = lemma2_witness(reg, prot, a, word);
  REQUIRE(std::holds_alternative<Lemma2Trace>(out));
  const auto& trace = std::get<Lemma2Trace>(out);
  REQUIRE(trace.steps.size() == 2);
  CHECK(trace.steps[1].tag == CaseTag::ShortLater);
  CHECK(trace.steps[1].kappa == k.stage);
  CHECK(trace.final_b == k.b);
  CHECK(trace.final_n == k.n);
  CHECK_NOTHROW(verify_lemma2_trace(reg, trace));
  CHECK(parse_trace(to_string(trace)) == trace);
}

TEST_CASE("lemma2: adjoint of a later generator") {
  Registry reg;
  const auto prot = reg.protect({});
  const Tuple a = reg.vanishing_tuple(prot);
  const auto k = reg.link(Tuple{5}, Tuple{0});
  const std::vector<Monomial> word{adjoint(k.generator()), P(a)};
  const auto out = lemma2_witness(reg, prot, a, word);
  REQUIRE(std::holds_alternative<Lemma2Trace>(out));
  const auto& trace = std::get<Lemma2Trace>(out);
  CHECK(trace.steps[1].adjoint);
  CHECK(trace.final_b == k.a);
  CHECK_NOTHROW(verify_lemma2_trace(reg, trace));
  CHECK(to_string(trace).find(" adjoint") != std::string::npos);
}

TEST_CASE("lemma2: earlier generator gives a zero product") {
  Registry reg;
  const auto k = reg.link(Tuple{0}, Tuple{5});
  const auto prot = reg.protect({});
  const Tuple a = reg.vanishing_tuple(prot);
  CHECK(a == Tuple{1});
  const std::vector<Monomial> word{k.generator(), P(a)};
  const auto out = lemma2_witness(reg, prot, a, word);
  REQUIRE(std::holds_alternative<ZeroReport>(out));
  CHECK(std::get<ZeroReport>(out).position == 0);
  CHECK(normal_form(word).is_zero());
}

TEST_CASE("lemma2: long case and projections") {
  Registry reg;
  const auto prot = reg.protect({});
  const Tuple a = reg.vanishing_tuple(prot);
  const auto kappa = reg.link(Tuple{1}, Tuple{2});
  const auto lambda = reg.link(Tuple{0}, Tuple{1, 0});
  REQUIRE(extends(lambda.b, kappa.a));
  const std::vector<Monomial> word{P(Tuple{2}), kappa.generator(), lambda.generator(),
                                   P(Tuple{0, 0}), P(a)};
  const auto out = lemma2_witness(reg, prot, a, word);
  REQUIRE(std::holds_alternative<Lemma2Trace>(out));
  const auto& trace = std::get<Lemma2Trace>(out);
  std::vector<CaseTag> tags;
  for (const auto& s : trace.steps) tags.push_back(s.tag);
  CHECK(tags == std::vector<CaseTag>{CaseTag::Base, CaseTag::UFactor, CaseTag::ShortLater,
                                     CaseTag::LongCase, CaseTag::UFactor});
  CHECK(trace.final_b == Tuple{2, 0, 0});
  CHECK(trace.final_n == 3);
  CHECK_NOTHROW(verify_lemma2_trace(reg, trace));

  // Tampering with a step is caught.
  Lemma2Trace bad = trace;
  bad.steps[3].b = Tuple{2, 0, 1};
  CHECK_THROWS_AS(verify_lemma2_trace(reg, bad), VerificationError);
  Lemma2Trace wrong_tag = trace;
  wrong_tag.steps[2].tag = CaseTag::LongCase;
  CHECK_THROWS_AS(verify_lemma2_trace(reg, wrong_tag), VerificationError);
}

TEST_CASE("lemma2: the leftmost P_a starts the walk") {
  Registry reg;
  const auto prot = reg.protect({});
  const Tuple a = reg.vanishing_tuple(prot);
  const auto k = reg.link(Tuple{0}, Tuple{5});
  const std::vector<Monomial> word{P(a), adjoint(k.generator()), k.generator(), P(a)};
  const auto out = lemma2_witness(reg, prot, a, word);
  REQUIRE(std::holds_alternative<Lemma2Trace>(out));
  const auto& trace = std::get<Lemma2Trace>(out);
  CHECK(trace.steps.front().tag == CaseTag::LeftmostPa);
  CHECK(trace.steps.front().position == 0);
  CHECK(trace.steps.size() == 1);
}

TEST_CASE("lemma2 preconditions") {
  Registry reg;
  const auto prot = reg.protect({});
  const Tuple a = reg.vanishing_tuple(prot);
  const std::vector<Monomial> no_pa{P(Tuple{3})};
  CHECK_THROWS_AS(lemma2_witness(reg, prot, a, no_pa), PreconditionError);
  const std::vector<Monomial> stranger{Monomial::isometry(Tuple{0}, Tuple{9}), P(a)};
  CHECK_THROWS_AS(lemma2_witness(reg, prot, a, stranger), PreconditionError);
  const std::vector<Monomial> pa{P(a)};
  CHECK_THROWS_AS(lemma2_witness(reg, prot, Tuple{4}, pa), PreconditionError);
}

TEST_CASE("vanishing_check") {
  Registry reg;
  reg.link(Tuple{1}, Tuple{3});
  const auto rho = parse_state("1/2 @ (1,2)/0; 1/4 @ (0)/3; 1/4 @ (2,2,2)/1");
  const auto prot = reg.register_protection(rho, 3);
  const Tuple a = reg.vanishing_tuple(prot);
  CHECK(a == Tuple{4});
  const auto k = reg.link(a, Tuple{0});
  const auto l = reg.link(k.a, Tuple{7});
  const std::vector<Monomial> pa{P(a)};
  CHECK(vanishing_check(rho, reg, prot, a, pa) == Scalar());
  const std::vector<Monomial> word{k.generator(), P(a), adjoint(l.generator())};
  REQUIRE_FALSE(normal_form(word).is_zero());
  CHECK(vanishing_check(rho, reg, prot, a, word) == Scalar());
  CHECK(std::holds_alternative<Lemma2Trace>(lemma2_witness(reg, prot, a, word)));
  // Without the P_a factor the state is visible.
  CHECK(state_eval(rho, Polynomial(P(Tuple{1}))) == Scalar(Rational(1, 2)));
}

TEST_CASE("vanishing_check reports an insufficient horizon") {
  Registry reg;
  const auto rho = parse_state("1 @ (1)/1");
  const auto prot = reg.register_protection(rho, 1);
  const Tuple a = reg.vanishing_tuple(prot);
  const auto k = reg.link(a, Tuple{2});
  const std::vector<Monomial> word{k.generator(), P(a)};
  CHECK_THROWS_AS(vanishing_check(rho, reg, prot, a, word), HorizonError);
}

TEST_CASE("trace text") {
  CHECK(to_string(CaseTag::ShortEarlierContradiction) == "ShortEarlier-Contradiction");
  CHECK(parse_case_tag("LongCase") == CaseTag::LongCase);
  CHECK_THROWS_AS(parse_case_tag("Elsewhere"), ParseError);
  CHECK_THROWS_AS(parse_trace("cylalg-trace 2\n"), ParseError);
  CHECK_THROWS_AS(parse_trace("cylalg-trace 1\nprotection 0\n"), ParseError);
}
