#pragma once

// Exact linear algebra over a field scalar (Rational in practice).
//
// Every routine here decides zero-ness with `== Scalar(0)`, so it is only
// meaningful for exact scalar types. Outputs are canonical: the echelon form
// is the unique reduced row echelon form, kernel vectors are indexed by free
// columns in increasing order, and column-space bases keep the first
// maximal independent subset of the input in its original order.

#include "crnkit/errors.hpp"
#include "crnkit/rational.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace crnkit {

template <typename Scalar>
struct Echelon {
  Matrix<Scalar> reduced;
  std::vector<Eigen::Index> pivot_columns;
};

template <typename Derived>
Echelon<typename Derived::Scalar> reduced_row_echelon(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Echelon<Scalar> out{input, {}};
  Matrix<Scalar>& r = out.reduced;
  const Scalar zero(0);
  Eigen::Index pivot_row = 0;
  for (Eigen::Index col = 0; col < r.cols() && pivot_row < r.rows(); ++col) {
    Eigen::Index found = pivot_row;
    while (found < r.rows() && r(found, col) == zero) ++found;
    if (found == r.rows()) continue;
    if (found != pivot_row) r.row(found).swap(r.row(pivot_row));

    const Scalar inv = Scalar(1) / r(pivot_row, col);
    r.row(pivot_row) *= inv;
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
      if (i == pivot_row || r(i, col) == zero) continue;
      const Scalar factor = r(i, col);
      r.row(i) -= factor * r.row(pivot_row);
    }
    out.pivot_columns.push_back(col);
    ++pivot_row;
  }
  return out;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  return static_cast<Eigen::Index>(reduced_row_echelon(m).pivot_columns.size());
}

/// Basis of the right null space. One vector per free column f, with a 1 in
/// position f, zeros in the other free positions, and the negated echelon
/// entries in pivot positions.
template <typename Derived>
std::vector<Vector<typename Derived::Scalar>> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto ech = reduced_row_echelon(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto c : ech.pivot_columns) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<Vector<Scalar>> basis;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vector<Scalar> v = Vector<Scalar>::Zero(m.cols());
    v[free] = Scalar(1);
    for (std::size_t r = 0; r < ech.pivot_columns.size(); ++r)
      v[ech.pivot_columns[r]] = -ech.reduced(static_cast<Eigen::Index>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One exact solution of A x = b, or nullopt when the system is
/// inconsistent. Free variables are set to zero, so the result is unique
/// whenever A has full column rank.
template <typename DerivedA, typename DerivedB>
std::optional<Vector<typename DerivedA::Scalar>> solve_linear(const Eigen::MatrixBase<DerivedA>& a,
                                                              const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (a.rows() != b.size())
    throw DimensionMismatch("solve_linear: matrix has " + std::to_string(a.rows()) +
                            " rows but right-hand side has " + std::to_string(b.size()) +
                            " entries");
  Matrix<Scalar> augmented(a.rows(), a.cols() + 1);
  augmented.leftCols(a.cols()) = a;
  augmented.col(a.cols()) = b;
  const auto ech = reduced_row_echelon(augmented);
  if (!ech.pivot_columns.empty() && ech.pivot_columns.back() == a.cols()) return std::nullopt;

  Vector<Scalar> x = Vector<Scalar>::Zero(a.cols());
  for (std::size_t r = 0; r < ech.pivot_columns.size(); ++r)
    x[ech.pivot_columns[r]] = ech.reduced(static_cast<Eigen::Index>(r), a.cols());
  return x;
}

/// Stacks equal-length vectors as the columns of a dim x k matrix.
template <typename Scalar>
Matrix<Scalar> columns_matrix(std::span<const Vector<Scalar>> vectors, Eigen::Index dim) {
  Matrix<Scalar> m(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != dim)
      throw DimensionMismatch("vector " + std::to_string(j) + " has dimension " +
                              std::to_string(vectors[j].size()) + ", expected " +
                              std::to_string(dim));
    m.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  return m;
}

template <typename Scalar>
Eigen::Index rank_of(std::span<const Vector<Scalar>> vectors, Eigen::Index dim) {
  if (vectors.empty()) return 0;
  return rank(columns_matrix(vectors, dim));
}

/// The first maximal linearly independent subset of `vectors`, in input
/// order. Spans the same space as the input.
template <typename Scalar>
std::vector<Vector<Scalar>> column_space_basis(std::span<const Vector<Scalar>> vectors,
                                               Eigen::Index dim) {
  if (vectors.empty()) return {};
  const auto ech = reduced_row_echelon(columns_matrix(vectors, dim));
  std::vector<Vector<Scalar>> basis;
  basis.reserve(ech.pivot_columns.size());
  for (auto c : ech.pivot_columns) basis.push_back(vectors[static_cast<std::size_t>(c)]);
  return basis;
}

/// True iff {p_j - p_0 : j >= 1} is linearly independent.
template <typename Scalar>
bool is_affinely_independent(std::span<const Vector<Scalar>> points) {
  if (points.empty()) throw DomainError("is_affinely_independent: empty point set");
  const Eigen::Index dim = points.front().size();
  std::vector<Vector<Scalar>> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t j = 1; j < points.size(); ++j) {
    if (points[j].size() != dim) throw DimensionMismatch("is_affinely_independent: mixed dimensions");
    diffs.push_back(points[j] - points.front());
  }
  return rank_of<Scalar>(diffs, dim) == static_cast<Eigen::Index>(diffs.size());
}

/// True iff the sum of the spanned subspaces is direct, i.e. the dimension
/// of the span of the union equals the sum of the individual dimensions.
template <typename Scalar>
bool are_subspaces_independent(std::span<const std::vector<Vector<Scalar>>> bases) {
  Eigen::Index dim = -1;
  std::vector<Vector<Scalar>> all;
  Eigen::Index total = 0;
  for (const auto& basis : bases) {
    for (const auto& v : basis) {
      if (dim < 0) dim = v.size();
      if (v.size() != dim) throw DimensionMismatch("are_subspaces_independent: mixed dimensions");
      all.push_back(v);
    }
  }
  if (dim < 0) return true;
  for (const auto& basis : bases) total += rank_of<Scalar>(basis, dim);
  return rank_of<Scalar>(all, dim) == total;
}

}  // namespace crnkit
