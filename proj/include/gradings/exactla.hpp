#pragma once

// Exact linear algebra over Q and Z.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gradings/errors.hpp"

namespace gradings {

using Rational = mpq_class;
using Integer = mpz_class;
using RatVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw ShapeError("ragged row list");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_columns(std::size_t rows, const std::vector<std::vector<T>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw ShapeError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  std::vector<std::vector<T>> columns() const {
    std::vector<std::vector<T>> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(col(j));
    return out;
  }
  const std::vector<T>& data() const noexcept { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw ShapeError("matrix-vector shape mismatch");
    std::vector<T> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (a(i, k) != 0 && v[k] != 0) out[i] += a(i, k) * v[k];
    return out;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix sum shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix difference shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;

RatMatrix to_rational(const IntMatrix& m);
RatMatrix hstack(const RatMatrix& a, const RatMatrix& b);
RatMatrix commutator(const RatMatrix& a, const RatMatrix& b);
Rational trace(const RatMatrix& m);
RatMatrix matrix_power(const RatMatrix& m, std::size_t k);
bool is_nilpotent(const RatMatrix& m);
/// Row-major flattening; used to treat endomorphisms as vectors.
RatVector flatten(const RatMatrix& m);
RatMatrix unflatten(const RatVector& v, std::size_t rows, std::size_t cols);

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

// ---------------------------------------------------------------- elimination

struct RrefResult {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const RatMatrix& a);
std::size_t rank(const RatMatrix& a);
Rational determinant(const RatMatrix& a);
RatMatrix inverse(const RatMatrix& a);

/// Canonical basis (reduced column-echelon form) of the column span.
RatMatrix column_space(const RatMatrix& a);
/// Canonical basis of {x : a x = 0}, reduced column-echelon form.
RatMatrix nullspace(const RatMatrix& a);

struct SolveResult {
  bool consistent = false;
  RatMatrix particular;  // cols x B.cols
  RatMatrix nullspace;   // cols x k, canonical
};

/// Affine solution set of A X = B.
SolveResult rational_solve(const RatMatrix& a, const RatMatrix& b);

/// Incremental sparse Gaussian elimination for large homogeneous systems.
/// Rows are kept in reduced echelon form as they are inserted.
class SparseEliminator {
 public:
  using Row = std::vector<std::pair<std::size_t, Rational>>;

  explicit SparseEliminator(std::size_t unknowns) : unknowns_(unknowns) {}

  /// Adds the equation sum coeff_j x_j = 0. Entries need not be sorted or unique.
  void add(const std::map<std::size_t, Rational>& equation);
  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t unknowns() const noexcept { return unknowns_; }
  /// Canonical basis of the solution space, one vector per column.
  RatMatrix solution_basis() const;

 private:
  std::size_t unknowns_;
  std::map<std::size_t, Row> rows_;  // pivot column -> normalized row
};

// ---------------------------------------------------------------- subspaces

/// A subspace of Q^n held in reduced column-echelon form, so equality is
/// syntactic and coordinates can be read off the pivot positions.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(ambient, 0) {}
  static Subspace span(const RatMatrix& columns);
  static Subspace span(std::size_t ambient, const std::vector<RatVector>& vectors);
  static Subspace whole(std::size_t ambient);

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.cols(); }
  const RatMatrix& basis() const noexcept { return basis_; }
  RatVector vector(std::size_t k) const { return basis_.col(k); }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(const RatVector& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in this basis; throws ValidationError when v is outside.
  RatVector coordinates(const RatVector& v) const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  RatMatrix basis_;
  std::vector<std::size_t> pivots_;
};

// ---------------------------------------------------------------- integer forms

struct SnfResult {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
  std::vector<Integer> diagonal() const;
};

/// U * M * V = S with U, V unimodular and d1 | d2 | ... nonnegative.
SnfResult smith_normal_form(const IntMatrix& m);

/// Row Hermite normal form of the row lattice; zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& rows);

/// Integer determinant by fraction-free elimination.
Integer int_determinant(const IntMatrix& m);

/// Inverse of a unimodular integer matrix; throws ValidationError otherwise.
IntMatrix int_inverse(const IntMatrix& m);

/// Basis (as rows) of the lattice {x in Z^n : m x = 0}, in Hermite normal form.
IntMatrix integer_kernel(const IntMatrix& m);

// ---------------------------------------------------------------- spectra

/// Coefficients c_0 .. c_n (low to high) of det(x I - M).
RatVector characteristic_polynomial(const RatMatrix& m);

/// Rational roots with multiplicities; the second member is false when the
/// polynomial does not split over Q.
struct RationalRoots {
  std::vector<std::pair<Rational, std::size_t>> roots;  // ascending
  bool splits = false;
};
RationalRoots rational_roots(const RatVector& poly);

struct EigenSpace {
  RatVector weight;
  Subspace space;
};

/// Joint eigenspace decomposition of commuting Q-diagonalizable matrices,
/// sorted by weight.
std::vector<EigenSpace> simultaneous_eigenspaces(const std::vector<RatMatrix>& ops);
/// Same, with the ambient dimension given explicitly (needed when ops is empty).
std::vector<EigenSpace> simultaneous_eigenspaces(std::size_t dim, const std::vector<RatMatrix>& ops);

/// Semisimple summand of the Jordan-Chevalley decomposition.
RatMatrix semisimple_part(const RatMatrix& m);

/// Semisimple summand over Q without requiring rational eigenvalues.
RatMatrix rational_semisimple_part(const RatMatrix& m);

/// True when m is diagonalizable with all eigenvalues in Q.
bool is_split_semisimple(const RatMatrix& m);

}  // namespace gradings
