#include "gradings/catalog.hpp"

#include <array>

namespace gradings {

namespace {

RatMatrix sl_basis(std::size_t n) {
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

RatVector mat(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, long>>& entries) {
  RatVector v(n * n);
  for (const auto& [i, j, c] : entries) v[i * n + j] += c;
  return v;
}

// X -> A X B on M_n coordinates, with A = ar + i ai and B = br + i bi.
std::pair<RatMatrix, RatMatrix> sandwich(const RatMatrix& ar, const RatMatrix& ai, const RatMatrix& br,
                                         const RatMatrix& bi) {
  const std::size_t n = ar.rows();
  RatMatrix re(n * n, n * n), im(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          re(i * n + j, k * n + l) = ar(i, k) * br(l, j) - ai(i, k) * bi(l, j);
          im(i * n + j, k * n + l) = ar(i, k) * bi(l, j) + ai(i, k) * br(l, j);
        }
  return {re, im};
}

// Restricts a map on M_n coordinates to sl_n coordinates.
RatMatrix restrict_to_sl(std::size_t n, const RatMatrix& m) {
  RatMatrix b = sl_basis(n);
  std::vector<RatVector> cols;
  for (std::size_t j = 0; j < b.cols(); ++j) cols.push_back(sl_coordinates(n, m * b.col(j)));
  return RatMatrix::from_columns(b.cols(), cols);
}

WeylGenerator sl_weyl(const std::string& name, std::size_t n, const RatMatrix& ar, const RatMatrix& ai,
                      const RatMatrix& br, const RatMatrix& bi) {
  auto [re, im] = sandwich(ar, ai, br, bi);
  return {name, restrict_to_sl(n, re), restrict_to_sl(n, im)};
}

WeylGenerator neg_transpose(std::size_t n) {
  RatMatrix m(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(j * n + i, i * n + j) = -1;
  RatMatrix r = restrict_to_sl(n, m);
  return {"neg-transpose", r, RatMatrix(r.rows(), r.cols())};
}

WeylGenerator transposition(std::size_t n, std::size_t k) {
  RatMatrix p = RatMatrix::identity(n);
  p(k, k) = p(k + 1, k + 1) = 0;
  p(k, k + 1) = p(k + 1, k) = 1;
  RatMatrix z(n, n);
  return sl_weyl("swap-" + std::to_string(k) + "-" + std::to_string(k + 1), n, p, z, p, z);
}

// Simple-root coordinates of eps_i - eps_j.
IntVector root_coords(std::size_t n, std::size_t i, std::size_t j) {
  IntVector v(n - 1);
  if (i < j)
    for (std::size_t k = i; k < j; ++k) v[k] = 1;
  else
    for (std::size_t k = j; k < i; ++k) v[k] = -1;
  return v;
}

FgAbGroup z2(std::size_t k) { return FgAbGroup::elementary(2, k); }

// ---------------------------------------------------------------- entries

CatalogEntry cartan(std::size_t n) {
  CatalogEntry e;
  e.name = "cartan-sl" + std::to_string(n);
  e.description = "Cartan grading of sl" + std::to_string(n) + " by the root lattice Z^" + std::to_string(n - 1);
  e.algebra = sl_algebra(n);
  FgAbGroup g = FgAbGroup::free(n - 1);
  std::vector<GroupElement> degs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) degs.push_back(g.element(root_coords(n, i, j)));
  for (std::size_t i = 0; i + 1 < n; ++i) degs.push_back(g.zero());
  e.grading = validate_grading(e.algebra, g, degs);
  e.weyl.push_back(neg_transpose(n));
  if (n >= 3)
    for (std::size_t k = 0; k + 1 < n; ++k) e.weyl.push_back(transposition(n, k));
  e.expected = {n - 1, {}, n - 1, true, n - 1};
  return e;
}

CatalogEntry pauli() {
  CatalogEntry e;
  e.name = "pauli-m2";
  e.description = "Pauli Z_2^2-grading of M2(Q)";
  e.algebra = matrix_algebra(2);
  RatMatrix p = RatMatrix::from_columns(4, {mat(2, {{0, 0, 1}, {1, 1, 1}}), mat(2, {{0, 0, 1}, {1, 1, -1}}),
                                            mat(2, {{0, 1, 1}, {1, 0, 1}}), mat(2, {{0, 1, 1}, {1, 0, -1}})});
  FgAbGroup g = z2(2);
  e.grading = validate_grading(e.algebra, g, {g.element({0, 0}), g.element({1, 0}), g.element({0, 1}), g.element({1, 1})}, p);
  RatMatrix a = RatMatrix::from_rows({{1, 1}, {1, -1}});
  RatMatrix ainv = Rational(1, 2) * a;
  RatMatrix z(2, 2);
  auto [re1, im1] = sandwich(a, z, ainv, z);
  e.weyl.push_back({"int-hadamard", re1, im1});
  RatMatrix d1 = RatMatrix::from_rows({{1, 0}, {0, 0}}), di = RatMatrix::from_rows({{0, 0}, {0, 1}});
  auto [re2, im2] = sandwich(d1, di, d1, Rational(-1) * di);
  e.weyl.push_back({"int-diag-1-i", re2, im2});
  e.expected = {0, {2, 2}, 0, true, 1};
  return e;
}

// Split quaternions: index 0 = 1, 1 = i, 2 = j, 3 = k; i^2 = j^2 = 1, ij = -ji = k.
struct QProduct {
  int sign;
  std::size_t index;
};
constexpr std::array<std::array<QProduct, 4>, 4> kQuat{{
    {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
    {{{1, 1}, {1, 0}, {1, 3}, {1, 2}}},
    {{{1, 2}, {-1, 3}, {1, 0}, {-1, 1}}},
    {{{1, 3}, {-1, 2}, {1, 1}, {-1, 0}}},
}};
constexpr std::array<std::array<long, 2>, 4> kQuatDeg{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};

std::size_t m2h(std::size_t i, std::size_t j, std::size_t d) { return (i * 2 + j) * 4 + d; }

StructureAlgebra m2_quaternions() {
  MultilinearOp mul{"mul", 2, {}}, star{"star", 1, {}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t d = 0; d < 4; ++d)
          for (std::size_t f = 0; f < 4; ++f) mul.add({m2h(i, j, d), m2h(j, l, f)}, m2h(i, l, kQuat[d][f].index), kQuat[d][f].sign);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t d = 0; d < 4; ++d) star.add({m2h(i, j, d)}, m2h(j, i, d), d == 0 ? 1 : -1);
  AlgebraFlags f;
  f.associative = true;
  return build_algebra("M2(H)", 16, {mul, star}, f);
}

// Pauli basis of M2: I, diag(1,-1), [[0,1],[1,0]], [[0,1],[-1,0]] with Z_2^2 degrees.
const std::array<RatVector, 4>& pauli_matrices() {
  static const std::array<RatVector, 4> p{mat(2, {{0, 0, 1}, {1, 1, 1}}), mat(2, {{0, 0, 1}, {1, 1, -1}}),
                                          mat(2, {{0, 1, 1}, {1, 0, 1}}), mat(2, {{0, 1, 1}, {1, 0, -1}})};
  return p;
}

RatVector tensor(const RatVector& p, std::size_t d) {
  RatVector v(16);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) v[m2h(i, j, d)] = p[i * 2 + j];
  return v;
}

CatalogEntry b2_assoc() {
  CatalogEntry e;
  e.name = "b2-assoc";
  e.description = "Z_2^3-grading of M2(H) with its involution, and a Z_2^4 refinement";
  e.algebra = m2_quaternions();
  FgAbGroup g3 = z2(3), g4 = z2(4);
  std::vector<GroupElement> degs;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t d = 0; d < 4; ++d)
        degs.push_back(g3.element({static_cast<long>((i + j) % 2), kQuatDeg[d][0], kQuatDeg[d][1]}));
  e.grading = validate_grading(e.algebra, g3, degs);
  std::vector<RatVector> cols;
  std::vector<GroupElement> fine;
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t d = 0; d < 4; ++d) {
      cols.push_back(tensor(pauli_matrices()[p], d));
      fine.push_back(g4.element({kQuatDeg[p][0], kQuatDeg[p][1], kQuatDeg[d][0], kQuatDeg[d][1]}));
    }
  e.refinement = validate_grading(e.algebra, g4, fine, RatMatrix::from_columns(16, cols));
  e.expected = {0, {2, 2, 2}, 0, true, 2};
  return e;
}

CatalogEntry b2_skew() {
  CatalogEntry e;
  e.name = "b2-skew";
  e.description = "Z_2^3-grading of the skew elements of M2(H) (type B2), and a Z_2^4 refinement";
  StructureAlgebra assoc = m2_quaternions();
  std::vector<RatVector> basis;
  std::vector<std::array<long, 3>> deg3;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t d = 1; d < 4; ++d) {
      RatVector v(16);
      v[m2h(i, i, d)] = 1;
      basis.push_back(v);
      deg3.push_back({0, kQuatDeg[d][0], kQuatDeg[d][1]});
    }
  for (std::size_t d = 0; d < 4; ++d) {
    RatVector v(16);
    v[m2h(0, 1, d)] = 1;
    v[m2h(1, 0, d)] = d == 0 ? -1 : 1;  // E12 x d - E21 x bar(d)
    basis.push_back(v);
    deg3.push_back({1, kQuatDeg[d][0], kQuatDeg[d][1]});
  }
  RatMatrix b = RatMatrix::from_columns(16, basis);
  AlgebraFlags lie;
  lie.lie = true;
  e.algebra = subalgebra(commutator_algebra(assoc, 0), b, "b2-skew", lie);
  FgAbGroup g3 = z2(3), g4 = z2(4);
  std::vector<GroupElement> degs;
  for (const auto& d : deg3) degs.push_back(g3.element({d[0], d[1], d[2]}));
  e.grading = validate_grading(e.algebra, g3, degs);

  // Skew elements among P x d: P symmetric with d pure, or P = k' with d = 1.
  std::vector<RatVector> cols;
  std::vector<GroupElement> fine;
  auto add = [&](std::size_t p, std::size_t d) {
    auto sol = rational_solve(b, RatMatrix::from_columns(16, {tensor(pauli_matrices()[p], d)}));
    if (!sol.consistent) throw VerificationFailure("refined basis vector is not skew");
    cols.push_back(sol.particular.col(0));
    fine.push_back(g4.element({kQuatDeg[p][0], kQuatDeg[p][1], kQuatDeg[d][0], kQuatDeg[d][1]}));
  };
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t d = 1; d < 4; ++d) add(p, d);
  add(3, 0);
  e.refinement = validate_grading(e.algebra, g4, fine, RatMatrix::from_columns(10, cols));
  e.expected = {0, {2, 2, 2}, 0, true, 0};
  return e;
}

CatalogEntry a3_fine() {
  CatalogEntry e;
  e.name = "a3-fine";
  e.description = "fine Z_2^4-grading of sl4 (coordinates: Z_2 x simple-root coordinates mod 2)";
  const std::size_t n = 4;
  e.algebra = sl_algebra(n);
  FgAbGroup g = z2(4);
  std::vector<RatVector> cols;
  std::vector<GroupElement> degs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      IntVector r = root_coords(n, i, j);
      for (long c : {0L, 1L}) {
        cols.push_back(sl_coordinates(n, mat(n, {{i, j, 1}, {j, i, c == 0 ? -1 : 1}})));
        degs.push_back(g.element({c, r[0], r[1], r[2]}));
      }
    }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    cols.push_back(sl_coordinates(n, mat(n, {{i, i, 1}, {i + 1, i + 1, -1}})));
    degs.push_back(g.element({1, 0, 0, 0}));
  }
  e.grading = validate_grading(e.algebra, g, degs, RatMatrix::from_columns(15, cols));
  RatMatrix ar = RatMatrix::identity(n), ai(n, n), bi(n, n);
  ar(0, 0) = 0;
  ai(0, 0) = 1;
  bi(0, 0) = -1;
  e.weyl.push_back(sl_weyl("int-diag-i-1-1-1", n, ar, ai, ar, bi));
  for (std::size_t k = 0; k + 1 < n; ++k) e.weyl.push_back(transposition(n, k));
  e.distinguished = {g.element({0, 1, 0, 1}), g.element({1, 1, 0, 1})};
  e.expected = {0, {2, 2, 2, 2}, 0, true, 0};
  return e;
}

CatalogEntry sl3_involution() {
  CatalogEntry e;
  e.name = "sl3-involution";
  e.description = "Z_2-grading of sl3 by X -> -S X^T S, S antidiagonal";
  const std::size_t n = 3;
  e.algebra = sl_algebra(n);
  std::vector<RatVector> m{
      mat(n, {{0, 1, 1}, {1, 2, -1}}), mat(n, {{1, 0, 1}, {2, 1, -1}}), mat(n, {{0, 0, 1}, {2, 2, -1}}),
      mat(n, {{0, 1, 1}, {1, 2, 1}}),  mat(n, {{1, 0, 1}, {2, 1, 1}}),  mat(n, {{0, 2, 1}}),
      mat(n, {{2, 0, 1}}),             mat(n, {{0, 0, 1}, {1, 1, -2}, {2, 2, 1}}),
  };
  std::vector<RatVector> cols;
  for (const auto& v : m) cols.push_back(sl_coordinates(n, v));
  FgAbGroup g = FgAbGroup::cyclic(2);
  std::vector<GroupElement> degs;
  for (std::size_t i = 0; i < 8; ++i) degs.push_back(g.element({i < 3 ? 0 : 1}));
  e.grading = validate_grading(e.algebra, g, degs, RatMatrix::from_columns(8, cols));
  e.expected = {0, {2}, 1, false, 3};
  return e;
}

}  // namespace

StructureAlgebra matrix_algebra(std::size_t n) {
  MultilinearOp mul{"mul", 2, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) mul.add({i * n + j, j * n + k}, i * n + k, 1);
  AlgebraFlags f;
  f.associative = true;
  return build_algebra("M" + std::to_string(n), n * n, {mul}, f);
}

StructureAlgebra sl_algebra(std::size_t n) {
  AlgebraFlags f;
  f.lie = true;
  return subalgebra(commutator_algebra(matrix_algebra(n)), sl_basis(n), "sl" + std::to_string(n), f);
}

RatVector sl_coordinates(std::size_t n, const RatVector& m) {
  if (m.size() != n * n) throw ShapeError("sl_coordinates expects an n x n matrix");
  RatVector out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out.push_back(m[i * n + j]);
  Rational partial = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    partial += m[i * n + i];
    out.push_back(partial);
  }
  if (partial + m[(n - 1) * n + n - 1] != 0) throw ValidationError("matrix is not traceless");
  return out;
}

std::vector<std::string> catalog_names() {
  return {"cartan-sl2", "cartan-sl3", "cartan-sl4", "pauli-m2", "b2-skew", "b2-assoc", "a3-fine", "sl3-involution"};
}

CatalogEntry catalog(const std::string& name) {
  if (name == "cartan-sl2") return cartan(2);
  if (name == "cartan-sl3") return cartan(3);
  if (name == "cartan-sl4") return cartan(4);
  if (name == "pauli-m2") return pauli();
  if (name == "b2-skew") return b2_skew();
  if (name == "b2-assoc") return b2_assoc();
  if (name == "a3-fine") return a3_fine();
  if (name == "sl3-involution") return sl3_involution();
  throw ReferenceError("unknown catalog entry '" + name + "'");
}

}  // namespace gradings
