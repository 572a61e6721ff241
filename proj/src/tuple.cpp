#include "cylalg/tuple.hpp"

#include <algorithm>
#include <ostream>

#include "cylalg/error.hpp"
#include "cylalg/text.hpp"

namespace cylalg {

Tuple::Tuple(std::initializer_list<std::uint64_t> values) {
  entries_.reserve(values.size());
  for (auto v : values) entries_.push_back(Label{v});
}

Label Tuple::at(std::size_t i) const {
  if (i == 0 || i > entries_.size()) {
    throw PreconditionError("coordinate " + std::to_string(i) + " outside tuple " +
                            to_string(*this));
  }
  return entries_[i - 1];
}

Tuple Tuple::prefix(std::size_t n) const {
  n = std::min(n, entries_.size());
  return Tuple(std::vector<Label>(entries_.begin(), entries_.begin() + static_cast<long>(n)));
}

Tuple Tuple::drop(std::size_t n) const {
  n = std::min(n, entries_.size());
  return Tuple(std::vector<Label>(entries_.begin() + static_cast<long>(n), entries_.end()));
}

Tuple Tuple::concat(const Tuple& tail) const {
  std::vector<Label> out = entries_;
  out.insert(out.end(), tail.entries_.begin(), tail.entries_.end());
  return Tuple(std::move(out));
}

Tuple Tuple::padded(std::size_t n, Label fill) const {
  std::vector<Label> out = entries_;
  if (out.size() < n) out.resize(n, fill);
  return Tuple(std::move(out));
}

bool extends(const Tuple& a, const Tuple& b) {
  if (a.length() < b.length()) return false;
  return std::equal(b.entries().begin(), b.entries().end(), a.entries().begin());
}

bool properly_extends(const Tuple& a, const Tuple& b) {
  return a.length() > b.length() && extends(a, b);
}

Compatibility compatibility(const Tuple& a, const Tuple& b) {
  if (extends(a, b)) return Compatibility::AExtendsB;
  if (extends(b, a)) return Compatibility::BProperlyExtendsA;
  return Compatibility::Disjoint;
}

Label SequenceDesc::coordinate(std::size_t i) const {
  if (i == 0) throw PreconditionError("coordinates start at 1");
  return i <= prefix.length() ? prefix.at(i) : tail;
}

Tuple SequenceDesc::initial(std::size_t n) const { return prefix.prefix(n).padded(n, tail); }

SequenceDesc SequenceDesc::canonical() const {
  std::vector<Label> entries = prefix.entries();
  while (!entries.empty() && entries.back() == tail) entries.pop_back();
  return SequenceDesc{Tuple(std::move(entries)), tail};
}

bool operator==(const SequenceDesc& x, const SequenceDesc& y) {
  const SequenceDesc cx = x.canonical();
  const SequenceDesc cy = y.canonical();
  return cx.tail == cy.tail && cx.prefix == cy.prefix;
}

std::strong_ordering operator<=>(const SequenceDesc& x, const SequenceDesc& y) {
  const SequenceDesc cx = x.canonical();
  const SequenceDesc cy = y.canonical();
  if (auto c = cx.prefix <=> cy.prefix; c != 0) return c;
  return cx.tail <=> cy.tail;
}

bool member(const SequenceDesc& x, const Tuple& a) {
  for (std::size_t i = 1; i <= a.length(); ++i) {
    if (x.coordinate(i) != a.at(i)) return false;
  }
  return true;
}

std::string to_string(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.length(); ++i) {
    if (i) out += ',';
    out += std::to_string(t.entries()[i].value);
  }
  out += ')';
  return out;
}

std::string to_string(const SequenceDesc& x) {
  return to_string(x.prefix) + "/" + std::to_string(x.tail.value);
}

std::ostream& operator<<(std::ostream& os, const Tuple& t) { return os << to_string(t); }
std::ostream& operator<<(std::ostream& os, const SequenceDesc& x) { return os << to_string(x); }

Tuple read_tuple(text::Scanner& in) {
  in.expect('(');
  std::vector<Label> entries;
  if (in.accept(')')) return Tuple(std::move(entries));
  do {
    entries.push_back(Label{in.label_value()});
  } while (in.accept(','));
  in.expect(')');
  return Tuple(std::move(entries));
}

Tuple parse_tuple(std::string_view source) {
  text::Scanner in(source);
  Tuple t = read_tuple(in);
  if (!in.at_end()) in.fail("unexpected trailing input after tuple");
  return t;
}

SequenceDesc read_sequence(text::Scanner& in) {
  SequenceDesc x;
  x.prefix = read_tuple(in);
  if (in.accept('/')) x.tail = Label{in.label_value()};
  return x;
}

SequenceDesc parse_sequence(std::string_view source) {
  text::Scanner in(source);
  SequenceDesc x = read_sequence(in);
  if (!in.at_end()) in.fail("unexpected trailing input after sequence");
  return x;
}

}  // namespace cylalg
