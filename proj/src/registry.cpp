#include "cylalg/registry.hpp"

#include <algorithm>
#include <map>

#include "cylalg/error.hpp"
#include "cylalg/text.hpp"

namespace cylalg {

Label least_label_avoiding(const std::set<Label>& used) {
  Label candidate{0};
  for (const Label& l : used) {
    if (l < candidate) continue;
    if (l != candidate) break;
    ++candidate.value;
  }
  return candidate;
}

std::set<Label> Registry::avoided_labels(std::size_t n, Stage before) const {
  std::set<Label> out;
  const std::size_t end = std::min(before, log_.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (const auto* g = std::get_if<GeneratorRecord>(&log_[i])) {
      if (n <= g->n) {
        out.insert(g->a.at(n));
        out.insert(g->b.at(n));
      }
    } else {
      for (const Tuple& c : std::get<ProtectionRecord>(log_[i]).tuples) {
        if (n <= c.length()) out.insert(c.at(n));
      }
    }
  }
  return out;
}

GeneratorRecord Registry::link(const Tuple& first, const Tuple& second) {
  GeneratorRecord g;
  g.stage = next_stage();
  g.n = std::max(first.length(), second.length()) + 1;
  g.requested_first = first;
  g.requested_second = second;
  g.label = least_label_avoiding(avoided_labels(g.n, g.stage));
  // Intermediate coordinates take the fresh label as well.
  g.a = first.padded(g.n, g.label);
  g.b = second.padded(g.n, g.label);
  log_.emplace_back(g);
  return g;
}

ProtectionRecord Registry::register_protection(const DiagonalState& rho, std::size_t horizon) {
  ProtectionRecord p;
  p.stage = next_stage();
  p.tuples = support_set(rho, horizon);
  p.source = rho;
  p.horizon = horizon;
  log_.emplace_back(p);
  return p;
}

ProtectionRecord Registry::protect(std::vector<Tuple> tuples) {
  ProtectionRecord p;
  p.stage = next_stage();
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  p.tuples = std::move(tuples);
  log_.emplace_back(p);
  return p;
}

const ProtectionRecord& Registry::protection(Stage stage) const {
  if (stage >= log_.size() || !std::holds_alternative<ProtectionRecord>(log_[stage])) {
    throw PreconditionError("stage " + std::to_string(stage) + " is not a protection record");
  }
  return std::get<ProtectionRecord>(log_[stage]);
}

Tuple Registry::vanishing_tuple(const ProtectionRecord& prot) const {
  if (prot.stage >= log_.size() || !std::holds_alternative<ProtectionRecord>(log_[prot.stage]) ||
      std::get<ProtectionRecord>(log_[prot.stage]) != prot) {
    throw PreconditionError("protection record does not belong to this registry");
  }
  std::set<Label> used;
  for (std::size_t i = 0; i < prot.stage; ++i) {
    if (const auto* g = std::get_if<GeneratorRecord>(&log_[i])) {
      used.insert(g->a.at(1));
      used.insert(g->b.at(1));
    }
  }
  for (const Tuple& c : prot.tuples) {
    if (!c.empty()) used.insert(c.at(1));
  }
  return Tuple(std::vector<Label>{least_label_avoiding(used)});
}

const GeneratorRecord* Registry::find_generator(const Tuple& a, const Tuple& b) const {
  for (const auto& r : log_) {
    if (const auto* g = std::get_if<GeneratorRecord>(&r); g && g->a == a && g->b == b) return g;
  }
  return nullptr;
}

std::vector<GeneratorRecord> Registry::generators() const {
  std::vector<GeneratorRecord> out;
  for (const auto& r : log_) {
    if (const auto* g = std::get_if<GeneratorRecord>(&r)) out.push_back(*g);
  }
  return out;
}

void Registry::append_unchecked(Record record) {
  const Stage stage = std::visit([](const auto& r) { return r.stage; }, record);
  if (stage != next_stage()) {
    throw PreconditionError("record stage " + std::to_string(stage) + " out of order; expected " +
                            std::to_string(next_stage()));
  }
  log_.push_back(std::move(record));
}

AuditReport Registry::audit() const {
  auto fail = [](Stage stage, std::size_t coordinate, std::string condition, std::string detail) {
    return AuditReport{AuditViolation{stage, coordinate, std::move(condition), std::move(detail)}};
  };
  for (std::size_t i = 0; i < log_.size(); ++i) {
    const Stage stage = std::visit([](const auto& r) { return r.stage; }, log_[i]);
    if (stage != i) return fail(i, 0, "order", "record carries stage " + std::to_string(stage));
    const auto* g = std::get_if<GeneratorRecord>(&log_[i]);
    if (!g) continue;
    const std::size_t expected_n =
        std::max(g->requested_first.length(), g->requested_second.length()) + 1;
    if (g->n != expected_n) {
      return fail(i, g->n, "(i)", "n = " + std::to_string(g->n) + " but the request needs " +
                                      std::to_string(expected_n));
    }
    if (g->a.length() != g->n || g->b.length() != g->n) {
      return fail(i, g->n, "(i)", "a or b does not have length n");
    }
    if (!properly_extends(g->a, g->requested_first)) {
      return fail(i, g->requested_first.length() + 1, "(ii)",
                  to_string(g->a) + " does not properly extend " + to_string(g->requested_first));
    }
    if (!properly_extends(g->b, g->requested_second)) {
      return fail(i, g->requested_second.length() + 1, "(ii)",
                  to_string(g->b) + " does not properly extend " + to_string(g->requested_second));
    }
    if (g->a.at(g->n) != g->label || g->b.at(g->n) != g->label) {
      return fail(i, g->n, "(iii)", "last coordinates differ from the recorded fresh label");
    }
    const std::size_t n = g->n;
    for (std::size_t j = 0; j < i; ++j) {
      if (const auto* h = std::get_if<GeneratorRecord>(&log_[j])) {
        if (n <= h->n && (h->a.at(n) == g->label || h->b.at(n) == g->label)) {
          return fail(i, n, "(iii)",
                      "label " + std::to_string(g->label.value) + " is used by generator stage " +
                          std::to_string(j));
        }
        continue;
      }
      for (const Tuple& c : std::get<ProtectionRecord>(log_[j]).tuples) {
        if (n <= c.length() && c.at(n) == g->label) {
          return fail(i, n, "(iii)",
                      "label " + std::to_string(g->label.value) + " is protected by " +
                          to_string(c) + " at stage " + std::to_string(j));
        }
      }
    }
  }
  return {};
}

std::string AuditReport::describe() const {
  if (ok()) return "audit ok";
  const auto& v = *violation;
  return "audit violation stage=" + std::to_string(v.stage) +
         " coordinate=" + std::to_string(v.coordinate) + " condition=" + v.condition + ": " +
         v.detail;
}

std::string to_string(const GeneratorRecord& g) {
  return "generator stage=" + std::to_string(g.stage) + " n=" + std::to_string(g.n) +
         " label=" + std::to_string(g.label.value) + " first=" + to_string(g.requested_first) +
         " second=" + to_string(g.requested_second) + " a=" + to_string(g.a) +
         " b=" + to_string(g.b);
}

std::string to_string(const ProtectionRecord& p) {
  std::string out = "protection stage=" + std::to_string(p.stage);
  if (p.source) out += " horizon=" + std::to_string(p.horizon);
  out += " tuples=";
  for (std::size_t i = 0; i < p.tuples.size(); ++i) {
    if (i) out += ";";
    out += to_string(p.tuples[i]);
  }
  if (p.source) out += " state=" + to_string(*p.source);
  return out;
}

std::string to_string(const Record& r) {
  return std::visit([](const auto& rec) { return to_string(rec); }, r);
}

namespace {

std::size_t read_count(text::Scanner& in) { return static_cast<std::size_t>(in.label_value()); }

std::string read_key(text::Scanner& in) {
  std::string key = in.identifier();
  in.expect('=');
  return key;
}

}  // namespace

Record parse_record(std::string_view line) {
  text::Scanner in(line);
  const std::string kind = in.identifier();
  if (kind == "generator") {
    GeneratorRecord g;
    std::map<std::string, bool> seen;
    while (!in.at_end()) {
      const auto at = in.mark();
      const std::string key = read_key(in);
      if (seen[key]) text::Scanner::fail_at(at, "duplicate field " + key);
      seen[key] = true;
      if (key == "stage") g.stage = read_count(in);
      else if (key == "n") g.n = read_count(in);
      else if (key == "label") g.label = Label{in.label_value()};
      else if (key == "first") g.requested_first = read_tuple(in);
      else if (key == "second") g.requested_second = read_tuple(in);
      else if (key == "a") g.a = read_tuple(in);
      else if (key == "b") g.b = read_tuple(in);
      else text::Scanner::fail_at(at, "unknown generator field " + key);
    }
    for (const char* k : {"stage", "n", "label", "first", "second", "a", "b"}) {
      if (!seen[k]) in.fail(std::string("generator record lacks field ") + k);
    }
    return g;
  }
  if (kind == "protection") {
    ProtectionRecord p;
    bool have_stage = false, have_tuples = false, have_horizon = false;
    while (!in.at_end()) {
      const auto at = in.mark();
      const std::string key = read_key(in);
      if (key == "stage") {
        p.stage = read_count(in);
        have_stage = true;
      } else if (key == "horizon") {
        p.horizon = read_count(in);
        have_horizon = true;
      } else if (key == "tuples") {
        have_tuples = true;
        if (in.peek() == '(') {
          do {
            p.tuples.push_back(read_tuple(in));
          } while (in.accept(';'));
        }
      } else if (key == "state") {
        p.source = parse_state(in.rest());
      } else {
        text::Scanner::fail_at(at, "unknown protection field " + key);
      }
    }
    if (!have_stage || !have_tuples) in.fail("protection record lacks stage or tuples");
    if (p.source.has_value() != have_horizon) in.fail("protection state and horizon go together");
    return p;
  }
  throw ParseError("unknown record kind '" + kind + "'", 1, 1);
}

}  // namespace cylalg
