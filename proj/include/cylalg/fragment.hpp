#pragma once

// Finite matrices of polynomials restricted to a family of level-n cylinder
// points. Used as an independent finite-dimensional check of algebra
// identities and of positivity.

#include <span>
#include <string>
#include <vector>

#include "cylalg/polynomial.hpp"

namespace cylalg {

/// Points t·pad·pad·... for each index tuple t (all of length `level`).
struct Fragment {
  std::size_t level = 0;
  Label padding;
  std::vector<Tuple> index;

  std::size_t size() const noexcept { return index.size(); }
};

/// Index set generated by the (padded) tuples of `polys`, closed under every
/// term monomial and its adjoint. Throws PreconditionError when level is
/// below some tuple length.
Fragment closed_fragment(std::span<const Polynomial> polys, std::size_t level);

class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  explicit ScalarMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  Scalar& at(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const Scalar& at(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

  ScalarMatrix adjoint() const;
  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
  friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Scalar> data_;
};

/// Entry (z, y) is <p chi_y, chi_z> for fragment points y, z. The index set
/// must be closed under p's monomials for the restriction to be faithful.
ScalarMatrix fragment_matrix(const Polynomial& p, const Fragment& fragment);

struct FragmentMatrix {
  Fragment fragment;
  ScalarMatrix matrix;
};
FragmentMatrix fragment_matrix(const Polynomial& p, std::size_t level);

bool is_hermitian(const ScalarMatrix& m);
/// Exact test by symmetric Gaussian elimination: every pivot is >= 0 and a
/// zero pivot has a zero row.
bool is_positive_semidefinite(const ScalarMatrix& m);

/// Header line `level L pad P index (..) (..) ...`, then one row per line,
/// entries separated by two spaces.
std::string to_string(const FragmentMatrix& fm);

}  // namespace cylalg
