#pragma once

// Small hand-built algebras shared by the test suites.

#include <random>

#include "gradings/algebra.hpp"

namespace fixture {

using namespace gradings;

/// M_n(Q) with basis E_ij at index i * n + j.
inline StructureAlgebra matrix_algebra(std::size_t n) {
  MultilinearOp mul{"mul", 2, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) mul.add({i * n + j, j * n + k}, i * n + k, 1);
  AlgebraFlags f;
  f.associative = true;
  return build_algebra("M" + std::to_string(n), n * n, {mul}, f);
}

/// sl_2 with basis (e, h, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
inline StructureAlgebra sl2(bool flip_he = false) {
  MultilinearOp br{"bracket", 2, {}};
  const long s = flip_he ? -2 : 2;
  br.add({1, 0}, 0, s);
  br.add({0, 1}, 0, -s);
  br.add({1, 2}, 2, -2);
  br.add({2, 1}, 2, 2);
  br.add({0, 2}, 1, 1);
  br.add({2, 0}, 1, -1);
  AlgebraFlags f;
  f.lie = true;
  return build_algebra("sl2", 3, {br}, f);
}

/// Columns: E_ij (i != j) in row-major order, then E_ii - E_{i+1,i+1}.
inline RatMatrix sl_basis(std::size_t n) {
  std::vector<RatVector> cols;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) {
        RatVector v(n * n);
        v[i * n + j] = 1;
        cols.push_back(v);
      }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    RatVector v(n * n);
    v[i * n + i] = 1;
    v[(i + 1) * n + i + 1] = -1;
    cols.push_back(v);
  }
  return RatMatrix::from_columns(n * n, cols);
}

inline StructureAlgebra sl(std::size_t n) {
  AlgebraFlags f;
  f.lie = true;
  return subalgebra(commutator_algebra(matrix_algebra(n)), sl_basis(n), "sl" + std::to_string(n), f);
}

/// so_n(Q): skew-symmetric matrices E_ij - E_ji, i < j.
inline StructureAlgebra so(std::size_t n) {
  std::vector<RatVector> cols;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      RatVector v(n * n);
      v[i * n + j] = 1;
      v[j * n + i] = -1;
      cols.push_back(v);
    }
  AlgebraFlags f;
  f.lie = true;
  return subalgebra(commutator_algebra(matrix_algebra(n)), RatMatrix::from_columns(n * n, cols),
                    "so" + std::to_string(n), f);
}

inline StructureAlgebra direct_sum(const StructureAlgebra& a, const StructureAlgebra& b) {
  const std::size_t na = a.dim();
  std::vector<MultilinearOp> ops;
  for (std::size_t k = 0; k < a.ops().size(); ++k) {
    MultilinearOp op{a.ops()[k].name, a.ops()[k].arity, {}};
    for (const auto& [t, v] : a.ops()[k].entries)
      for (const auto& [j, c] : v) op.add(t, j, c);
    for (const auto& [t, v] : b.ops()[k].entries) {
      IndexTuple s = t;
      for (auto& i : s) i += na;
      for (const auto& [j, c] : v) op.add(s, j + na, c);
    }
    ops.push_back(op);
  }
  return build_algebra(a.name() + "+" + b.name(), na + b.dim(), ops, a.flags());
}

inline Rational small_rational(std::mt19937_64& rng, long range) {
  Rational q(static_cast<long>(rng() % (2 * range + 1)) - range, static_cast<long>(rng() % 3) + 1);
  q.canonicalize();
  return q;
}

/// Random invertible matrix: unit upper triangular times unit lower triangular.
inline RatMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  RatMatrix u = RatMatrix::identity(n), l = RatMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng() % 2) u(i, j) = static_cast<long>(rng() % 5) - 2;
      if (rng() % 2) l(j, i) = static_cast<long>(rng() % 5) - 2;
    }
  return u * l;
}

}  // namespace fixture
