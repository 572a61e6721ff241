#include "cylalg/fragment.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "cylalg/error.hpp"

namespace cylalg {

namespace {

Label least_unused_label(std::span<const Polynomial> polys) {
  std::set<Label> used;
  for (const auto& p : polys) {
    for (const auto& [m, c] : p.terms()) {
      for (const Label& l : m.domain().entries()) used.insert(l);
      for (const Label& l : m.range().entries()) used.insert(l);
    }
  }
  Label candidate{0};
  for (const Label& l : used) {
    if (l != candidate) break;
    ++candidate.value;
  }
  return candidate;
}

}  // namespace

Fragment closed_fragment(std::span<const Polynomial> polys, std::size_t level) {
  std::vector<Monomial> moves;
  for (const auto& p : polys) {
    if (p.max_tuple_length() > level) {
      throw PreconditionError("fragment level " + std::to_string(level) +
                              " is below the longest tuple (" +
                              std::to_string(p.max_tuple_length()) + ")");
    }
    for (const auto& [m, c] : p.terms()) {
      moves.push_back(m);
      moves.push_back(adjoint(m));
    }
  }
  Fragment f;
  f.level = level;
  f.padding = least_unused_label(polys);

  std::set<Tuple> seen;
  std::deque<Tuple> pending;
  auto visit = [&](Tuple t) {
    if (seen.insert(t).second) pending.push_back(std::move(t));
  };
  for (const auto& m : moves) visit(m.domain().padded(level, f.padding));
  while (!pending.empty()) {
    const Tuple t = pending.front();
    pending.pop_front();
    const SequenceDesc x{t, f.padding};
    for (const auto& m : moves) {
      if (auto y = act(m, x)) visit(y->initial(level));
    }
  }
  f.index.assign(seen.begin(), seen.end());
  return f;
}

ScalarMatrix ScalarMatrix::adjoint() const {
  ScalarMatrix out(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < n_; ++c) out.at(c, r) = at(r, c).conj();
  }
  return out;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.n_ != b.n_) throw PreconditionError("matrix size mismatch");
  ScalarMatrix out(a.n_);
  for (std::size_t r = 0; r < a.n_; ++r) {
    for (std::size_t k = 0; k < a.n_; ++k) {
      if (a.at(r, k).is_zero()) continue;
      for (std::size_t c = 0; c < a.n_; ++c) out.at(r, c) += a.at(r, k) * b.at(k, c);
    }
  }
  return out;
}

ScalarMatrix fragment_matrix(const Polynomial& p, const Fragment& fragment) {
  std::map<Tuple, std::size_t> position;
  for (std::size_t i = 0; i < fragment.index.size(); ++i) position.emplace(fragment.index[i], i);
  ScalarMatrix out(fragment.size());
  for (std::size_t col = 0; col < fragment.size(); ++col) {
    const SequenceDesc y{fragment.index[col], fragment.padding};
    for (const auto& [m, c] : p.terms()) {
      auto image = act(m, y);
      if (!image) continue;
      auto it = position.find(image->initial(fragment.level));
      // Image outside the fragment: the index set is not closed under p.
      if (it == position.end()) continue;
      out.at(it->second, col) += c;
    }
  }
  return out;
}

FragmentMatrix fragment_matrix(const Polynomial& p, std::size_t level) {
  Fragment f = closed_fragment(std::span<const Polynomial>(&p, 1), level);
  ScalarMatrix m = fragment_matrix(p, f);
  return {std::move(f), std::move(m)};
}

bool is_hermitian(const ScalarMatrix& m) {
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = r; c < m.size(); ++c) {
      if (m.at(r, c) != m.at(c, r).conj()) return false;
    }
  }
  return true;
}

bool is_positive_semidefinite(const ScalarMatrix& m) {
  if (!is_hermitian(m)) return false;
  ScalarMatrix a = m;
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Scalar pivot = a.at(k, k);
    if (sgn(pivot.re()) < 0) return false;
    if (pivot.is_zero()) {
      for (std::size_t j = k + 1; j < n; ++j) {
        if (!a.at(k, j).is_zero()) return false;
      }
      continue;
    }
    const Scalar inv = pivot.inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a.at(i, k).is_zero()) continue;
      const Scalar factor = a.at(i, k) * inv;
      for (std::size_t j = k + 1; j < n; ++j) a.at(i, j) -= factor * a.at(k, j);
    }
  }
  return true;
}

std::string to_string(const FragmentMatrix& fm) {
  std::string out = "level " + std::to_string(fm.fragment.level) + " pad " +
                    std::to_string(fm.fragment.padding.value) + " index";
  for (const auto& t : fm.fragment.index) out += " " + to_string(t);
  out += "\n";
  for (std::size_t r = 0; r < fm.matrix.size(); ++r) {
    for (std::size_t c = 0; c < fm.matrix.size(); ++c) {
      if (c) out += "  ";
      out += to_string(fm.matrix.at(r, c));
    }
    out += "\n";
  }
  return out;
}

}  // namespace cylalg
