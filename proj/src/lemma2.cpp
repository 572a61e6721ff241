#include "cylalg/lemma2.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "cylalg/error.hpp"
#include "cylalg/expression.hpp"
#include "cylalg/text.hpp"

namespace cylalg {

namespace {

constexpr std::array<std::pair<CaseTag, std::string_view>, 6> kTagNames{{
    {CaseTag::Base, "Base"},
    {CaseTag::LeftmostPa, "LeftmostPa"},
    {CaseTag::UFactor, "UFactor"},
    {CaseTag::LongCase, "LongCase"},
    {CaseTag::ShortEarlierContradiction, "ShortEarlier-Contradiction"},
    {CaseTag::ShortLater, "ShortLater"},
}};

// A factor of a word: either a projection (tag U) or a registered generator,
// possibly adjointed. `from`/`to` are the domain and range of the factor.
struct Factor {
  bool projection = false;
  const GeneratorRecord* generator = nullptr;
  bool adjoint = false;
  Tuple from;
  Tuple to;
};

Factor classify(const Registry& reg, const Monomial& m, std::size_t position) {
  if (m.is_zero()) {
    throw PreconditionError("factor " + std::to_string(position) + " is the zero operator");
  }
  Factor f;
  f.from = m.domain();
  f.to = m.range();
  if (m.is_projection()) {
    f.projection = true;
    return f;
  }
  if (const auto* g = reg.find_generator(m.domain(), m.range())) {
    f.generator = g;
    return f;
  }
  if (const auto* g = reg.find_generator(m.range(), m.domain())) {
    f.generator = g;
    f.adjoint = true;
    return f;
  }
  throw PreconditionError("factor " + std::to_string(position) + " " + to_string(m) +
                          " is neither a projection nor a registered generator or its adjoint");
}

std::size_t leftmost_occurrence(std::span<const Monomial> word, const Tuple& a) {
  const Monomial pa = Monomial::projection(a);
  auto it = std::find(word.begin(), word.end(), pa);
  if (it == word.end()) {
    throw PreconditionError("the word has no factor equal to " + to_string(pa));
  }
  return static_cast<std::size_t>(it - word.begin());
}

void require_vanishing_tuple(const Registry& reg, const ProtectionRecord& prot, const Tuple& a) {
  const Tuple expected = reg.vanishing_tuple(prot);
  if (a != expected) {
    throw PreconditionError(to_string(a) + " is not the vanishing tuple " + to_string(expected) +
                            " of protection stage " + std::to_string(prot.stage));
  }
}

// Direct scan of properties (1)-(3). Returns an empty string when they hold.
std::string check_claim(const Registry& reg, const ProtectionRecord& prot, const Tuple& b,
                        std::size_t n, const Monomial& product) {
  if (b.length() != n) return "b has length " + std::to_string(b.length()) + ", not n";
  if (multiply(Monomial::projection(b), product) != product) {
    return "(1) fails: P_b A != A for b = " + to_string(b);
  }
  const Label bn = b.at(n);
  for (const auto& record : reg.log()) {
    const auto* g = std::get_if<GeneratorRecord>(&record);
    if (!g || g->stage >= prot.stage || n > g->n) continue;
    if (g->a.at(n) == bn || g->b.at(n) == bn) {
      return "(2) fails against generator stage " + std::to_string(g->stage) + " at coordinate " +
             std::to_string(n);
    }
  }
  for (const Tuple& c : prot.tuples) {
    if (n <= c.length() && c.at(n) == bn) {
      return "(3) fails against protected " + to_string(c) + " at coordinate " + std::to_string(n);
    }
  }
  return {};
}

}  // namespace

std::string to_string(CaseTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return std::string(name);
  }
  return "?";
}

CaseTag parse_case_tag(std::string_view name) {
  for (const auto& [t, n] : kTagNames) {
    if (n == name) return t;
  }
  throw ParseError("unknown case tag '" + std::string(name) + "'", 1, 1);
}

Lemma2Outcome lemma2_witness(const Registry& reg, const ProtectionRecord& prot, const Tuple& a,
                             std::span<const Monomial> word) {
  require_vanishing_tuple(reg, prot, a);
  std::vector<Factor> factors;
  factors.reserve(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) factors.push_back(classify(reg, word[i], i));
  const std::size_t start = leftmost_occurrence(word, a);

  std::vector<TraceStep> steps;
  const CaseTag first_tag = start + 1 == word.size() ? CaseTag::Base : CaseTag::LeftmostPa;
  steps.push_back(TraceStep{start, first_tag, a, 1, std::nullopt, false});
  Monomial running = normal_form(word.subspan(start));
  if (running.is_zero()) return ZeroReport{start, first_tag, std::move(steps)};

  Tuple b = a;
  std::size_t n = 1;
  for (std::size_t i = start; i-- > 0;) {
    const Factor& f = factors[i];
    const Monomial product = multiply(word[i], running);
    TraceStep step{i, CaseTag::UFactor, b, n, std::nullopt, f.adjoint};
    if (!f.projection) {
      const GeneratorRecord& g = *f.generator;
      step.kappa = g.stage;
      if (n > g.n) {
        step.tag = CaseTag::LongCase;
        // Nonzero product forces b to start with the factor's domain.
        if (extends(b, f.from)) step.b = f.to.concat(b.drop(g.n));
      } else if (g.stage < prot.stage) {
        step.tag = CaseTag::ShortEarlierContradiction;
      } else {
        step.tag = CaseTag::ShortLater;
        step.b = f.to;
        step.n = g.n;
      }
    }
    if (product.is_zero()) return ZeroReport{i, step.tag, std::move(steps)};
    if (step.tag == CaseTag::ShortEarlierContradiction) {
      throw VerificationError("nonzero product in the earlier-generator case at factor " +
                              std::to_string(i));
    }
    if (step.tag == CaseTag::LongCase && !extends(b, f.from)) {
      throw VerificationError("nonzero product although " + to_string(b) +
                              " does not extend the domain of factor " + std::to_string(i));
    }
    b = step.b;
    n = step.n;
    running = product;
    steps.push_back(std::move(step));
  }

  if (auto failure = check_claim(reg, prot, b, n, running); !failure.empty()) {
    throw VerificationError("vanishing claim failed: " + failure);
  }
  Lemma2Trace trace;
  trace.protection = prot.stage;
  trace.a = a;
  trace.word.assign(word.begin(), word.end());
  trace.steps = std::move(steps);
  trace.final_b = b;
  trace.final_n = n;
  return trace;
}

void verify_lemma2_trace(const Registry& reg, const Lemma2Trace& trace) {
  auto fail = [](const std::string& why) { throw VerificationError("trace rejected: " + why); };
  const ProtectionRecord* prot = nullptr;
  try {
    prot = &reg.protection(trace.protection);
    require_vanishing_tuple(reg, *prot, trace.a);
  } catch (const PreconditionError& e) {
    fail(e.what());
  }
  if (trace.word.empty() || trace.steps.empty()) fail("empty word or trace");

  const Monomial pa = Monomial::projection(trace.a);
  std::size_t start = trace.word.size();
  for (std::size_t i = 0; i < trace.word.size(); ++i) {
    if (trace.word[i] == pa) {
      start = i;
      break;
    }
  }
  if (start == trace.word.size()) fail("word does not contain P_a");
  if (trace.steps.size() != start + 1) fail("trace does not cover every factor left of P_a");

  const TraceStep& first = trace.steps.front();
  const CaseTag first_tag = start + 1 == trace.word.size() ? CaseTag::Base : CaseTag::LeftmostPa;
  if (first.position != start || first.tag != first_tag || first.b != trace.a || first.n != 1) {
    fail("first step must be " + to_string(first_tag) + " at the leftmost P_a with (a, 1)");
  }

  for (std::size_t k = 1; k < trace.steps.size(); ++k) {
    const TraceStep& prev = trace.steps[k - 1];
    const TraceStep& step = trace.steps[k];
    const std::string where = "step at factor " + std::to_string(step.position);
    if (step.position + 1 != prev.position) fail(where + " is out of order");
    const Monomial& m = trace.word[step.position];
    switch (step.tag) {
      case CaseTag::UFactor:
        if (!m.is_projection()) fail(where + ": U case on a non-projection");
        if (step.b != prev.b || step.n != prev.n) fail(where + ": U case must keep (b, n)");
        break;
      case CaseTag::LongCase:
      case CaseTag::ShortLater: {
        if (!step.kappa || *step.kappa >= reg.size() ||
            !std::holds_alternative<GeneratorRecord>(reg.log()[*step.kappa])) {
          fail(where + ": no generator at the stated stage");
        }
        const auto& g = std::get<GeneratorRecord>(reg.log()[*step.kappa]);
        const Monomial v = step.adjoint ? adjoint(g.generator()) : g.generator();
        if (v != m) fail(where + ": factor is not the stated generator");
        if (step.tag == CaseTag::LongCase) {
          if (!(prev.n > g.n)) fail(where + ": long case needs n > n_kappa");
          if (!extends(prev.b, m.domain())) fail(where + ": b does not extend the factor domain");
          if (step.b != m.range().concat(prev.b.drop(g.n)) || step.n != prev.n) {
            fail(where + ": wrong rewritten tuple");
          }
        } else {
          if (prev.n > g.n) fail(where + ": short case needs n <= n_kappa");
          if (g.stage <= trace.protection) fail(where + ": short case needs a later generator");
          if (step.b != m.range() || step.n != g.n) fail(where + ": wrong range tuple");
        }
        break;
      }
      case CaseTag::Base:
      case CaseTag::LeftmostPa:
      case CaseTag::ShortEarlierContradiction:
        fail(where + ": tag " + to_string(step.tag) + " cannot occur here");
    }
  }

  const TraceStep& last = trace.steps.back();
  if (last.b != trace.final_b || last.n != trace.final_n) fail("final pair differs from last step");
  const Monomial product = normal_form(trace.word);
  if (product.is_zero()) fail("word is zero; no trace applies");
  if (auto failure = check_claim(reg, *prot, trace.final_b, trace.final_n, product);
      !failure.empty()) {
    fail(failure);
  }
}

Scalar vanishing_check(const DiagonalState& rho, const Registry& reg,
                       const ProtectionRecord& prot, const Tuple& a,
                       std::span<const Monomial> word) {
  const Lemma2Outcome outcome = lemma2_witness(reg, prot, a, word);
  const Monomial product = normal_form(word);
  const Scalar value = state_eval(rho, Polynomial(product));
  const auto* trace = std::get_if<Lemma2Trace>(&outcome);
  if (!trace) return value;

  std::size_t needed = 0;
  for (const auto& s : trace->steps) needed = std::max(needed, s.n);
  if (prot.source) {
    if (*prot.source != rho) {
      throw PreconditionError("state differs from the one registered at stage " +
                              std::to_string(prot.stage));
    }
    if (prot.horizon < needed) {
      throw HorizonError("protection horizon " + std::to_string(prot.horizon) +
                         " is below the arising n = " + std::to_string(needed));
    }
  } else {
    const auto support = support_set(rho, std::max<std::size_t>(needed, 1));
    for (const Tuple& t : support) {
      if (!std::binary_search(prot.tuples.begin(), prot.tuples.end(), t)) {
        throw HorizonError("support prefix " + to_string(t) + " is not protected");
      }
    }
  }
  if (!value.is_zero()) {
    throw VerificationError("state value " + to_string(value) +
                            " is nonzero although a trace exists");
  }
  return value;
}

std::string to_string(const Lemma2Trace& trace) {
  std::ostringstream os;
  os << "cylalg-trace 1\n";
  os << "protection " << trace.protection << "\n";
  os << "a " << to_string(trace.a) << "\n";
  os << "word " << word_to_string(trace.word) << "\n";
  for (const auto& s : trace.steps) {
    os << "step " << s.position << " " << to_string(s.tag) << " b=" << to_string(s.b)
       << " n=" << s.n;
    if (s.kappa) os << " kappa=" << *s.kappa;
    if (s.adjoint) os << " adjoint";
    os << "\n";
  }
  os << "final b=" << to_string(trace.final_b) << " n=" << trace.final_n << "\n";
  return os.str();
}

std::string to_string(const ZeroReport& report) {
  return "zero position=" + std::to_string(report.position) + " case=" + to_string(report.tag) +
         "\n";
}

Lemma2Trace parse_trace(std::string_view source) {
  Lemma2Trace trace;
  std::istringstream lines{std::string(source)};
  std::string line;
  std::size_t line_no = 0;
  bool header = false, have_final = false;
  auto rethrow = [&](const ParseError& e) -> void {
    throw ParseError(std::string("trace ") + e.what(), line_no, e.column());
  };
  while (std::getline(lines, line)) {
    ++line_no;
    text::Scanner in(line);
    if (in.at_end()) continue;
    try {
      const std::string key = in.identifier();
      if (!header) {
        if (key != "cylalg-trace" || in.label_value() != 1) in.fail("expected 'cylalg-trace 1'");
        header = true;
      } else if (key == "protection") {
        trace.protection = static_cast<Stage>(in.label_value());
      } else if (key == "a") {
        trace.a = read_tuple(in);
      } else if (key == "word") {
        trace.word = as_word(*parse_expression(in.rest()));
      } else if (key == "step") {
        TraceStep s;
        s.position = static_cast<std::size_t>(in.label_value());
        s.tag = parse_case_tag(in.identifier());
        while (!in.at_end()) {
          const std::string field = in.identifier();
          if (field == "adjoint") {
            s.adjoint = true;
            continue;
          }
          in.expect('=');
          if (field == "b") s.b = read_tuple(in);
          else if (field == "n") s.n = static_cast<std::size_t>(in.label_value());
          else if (field == "kappa") s.kappa = static_cast<Stage>(in.label_value());
          else in.fail("unknown step field " + field);
        }
        trace.steps.push_back(std::move(s));
      } else if (key == "final") {
        for (int k = 0; k < 2; ++k) {
          const std::string field = in.identifier();
          in.expect('=');
          if (field == "b") trace.final_b = read_tuple(in);
          else if (field == "n") trace.final_n = static_cast<std::size_t>(in.label_value());
          else in.fail("unknown final field " + field);
        }
        have_final = true;
      } else {
        in.fail("unknown trace line '" + key + "'");
      }
      if (!in.at_end()) in.fail("unexpected trailing input");
    } catch (const ParseError& e) {
      rethrow(e);
    } catch (const PreconditionError& e) {
      throw ParseError(std::string("trace: ") + e.what(), line_no, 1);
    }
  }
  if (!header || !have_final) throw ParseError("incomplete trace", line_no, 1);
  return trace;
}

}  // namespace cylalg
