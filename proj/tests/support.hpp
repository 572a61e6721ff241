#pragma once

// Reference models used as oracles. They work on concrete finite windows of
// sequences and on explicit matrices, and share no rewriting code with the
// library.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cylalg/polynomial.hpp"

namespace support {

// A sequence given by its first `window` coordinates; every later
// coordinate equals `tail`.
struct Point {
  std::vector<std::uint64_t> head;
  std::uint64_t tail = 0;
};

inline std::uint64_t coord(const Point& x, std::size_t i) {  // 1-based
  return i <= x.head.size() ? x.head[i - 1] : x.tail;
}

inline Point point(const cylalg::SequenceDesc& s, std::size_t window) {
  Point x;
  x.tail = s.tail.value;
  for (std::size_t i = 1; i <= window; ++i) {
    x.head.push_back(i <= s.prefix.length() ? s.prefix.at(i).value : s.tail.value);
  }
  return x;
}

inline std::vector<std::uint64_t> labels(const cylalg::Tuple& t) {
  std::vector<std::uint64_t> v;
  for (auto l : t.entries()) v.push_back(l.value);
  return v;
}

inline bool in_cylinder(const Point& x, const std::vector<std::uint64_t>& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (coord(x, i + 1) != a[i]) return false;
  }
  return true;
}

// V(a;b) on a concrete sequence: strip a, prepend b.
inline std::optional<Point> rewrite(const cylalg::Monomial& m, const Point& x) {
  if (m.is_zero()) return std::nullopt;
  const auto a = labels(m.domain());
  const auto b = labels(m.range());
  if (!in_cylinder(x, a)) return std::nullopt;
  Point y;
  y.tail = x.tail;
  y.head = b;
  for (std::size_t i = a.size() + 1; i <= x.head.size(); ++i) y.head.push_back(coord(x, i));
  return y;
}

inline bool same(const Point& x, const Point& y) {
  const std::size_t n = std::max(x.head.size(), y.head.size());
  if (x.tail != y.tail) return false;
  for (std::size_t i = 1; i <= n; ++i) {
    if (coord(x, i) != coord(y, i)) return false;
  }
  return true;
}

// <p chi_x, chi_y> summed term by term on concrete sequences.
inline cylalg::Scalar matrix_element(const cylalg::Polynomial& p, const Point& y, const Point& x) {
  cylalg::Scalar total;
  for (const auto& [m, c] : p.terms()) {
    const auto image = rewrite(m, x);
    if (image && same(*image, y)) total += c;
  }
  return total;
}

}  // namespace support
