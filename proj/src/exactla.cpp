#include "gradings/exactla.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace gradings {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("hstack row mismatch");
  RatMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

RatMatrix commutator(const RatMatrix& a, const RatMatrix& b) { return a * b - b * a; }

Rational trace(const RatMatrix& m) {
  if (!m.square()) throw ShapeError("trace of non-square matrix");
  Rational t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

RatMatrix matrix_power(const RatMatrix& m, std::size_t k) {
  RatMatrix out = RatMatrix::identity(m.rows());
  for (std::size_t i = 0; i < k; ++i) out = out * m;
  return out;
}

bool is_nilpotent(const RatMatrix& m) {
  if (!m.square()) throw ShapeError("nilpotency of non-square matrix");
  return matrix_power(m, m.rows()).is_zero();
}

RatVector flatten(const RatMatrix& m) { return m.data(); }

RatMatrix unflatten(const RatVector& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw ShapeError("unflatten size mismatch");
  RatMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
  return m;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw ParseError("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal '" + text + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- elimination

RrefResult rref(const RatMatrix& a) {
  RrefResult res{a, {}};
  RatMatrix& m = res.reduced;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
    }
    res.pivots.push_back(c);
    ++r;
  }
  return res;
}

std::size_t rank(const RatMatrix& a) { return rref(a).pivots.size(); }

Rational determinant(const RatMatrix& a) {
  if (!a.square()) throw ShapeError("determinant of non-square matrix");
  RatMatrix m = a;
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& a) {
  if (!a.square()) throw ShapeError("inverse of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return RatMatrix();
  RrefResult r = rref(hstack(a, RatMatrix::identity(n)));
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) throw ValidationError("matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

RatMatrix column_space(const RatMatrix& a) {
  RrefResult r = rref(a.transpose());
  RatMatrix out(a.rows(), r.pivots.size());
  for (std::size_t k = 0; k < r.pivots.size(); ++k)
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, k) = r.reduced(k, i);
  return out;
}

RatMatrix nullspace(const RatMatrix& a) {
  RrefResult r = rref(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<RatVector> vecs;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(n);
    v[f] = 1;
    for (std::size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.reduced(k, f);
    vecs.push_back(std::move(v));
  }
  return column_space(RatMatrix::from_columns(n, vecs));
}

SolveResult rational_solve(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("rational_solve: A and B row counts differ");
  const std::size_t n = a.cols();
  SolveResult out;
  RrefResult r = rref(hstack(a, b));
  for (auto p : r.pivots)
    if (p >= n) {
      out.consistent = false;
      out.nullspace = nullspace(a);
      return out;
    }
  out.consistent = true;
  out.particular = RatMatrix(n, b.cols());
  for (std::size_t k = 0; k < r.pivots.size(); ++k)
    for (std::size_t j = 0; j < b.cols(); ++j) out.particular(r.pivots[k], j) = r.reduced(k, n + j);
  out.nullspace = nullspace(a);
  return out;
}

namespace {

using SRow = SparseEliminator::Row;

// dst -= f * src, both sorted by column.
void sparse_axpy(SRow& dst, const Rational& f, const SRow& src) {
  SRow out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(std::move(dst[i++]));
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, -f * src[j].second);
      ++j;
    } else {
      Rational v = dst[i].second - f * src[j].second;
      if (v != 0) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

const Rational* sparse_find(const SRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  if (it != row.end() && it->first == col) return &it->second;
  return nullptr;
}

}  // namespace

void SparseEliminator::add(const std::map<std::size_t, Rational>& equation) {
  SRow row;
  for (const auto& [c, v] : equation) {
    if (c >= unknowns_) throw ShapeError("equation references unknown out of range");
    if (v != 0) row.emplace_back(c, v);
  }
  // Reduce against existing pivots; pivot rows are mutually reduced, so one
  // pass over the pivot columns present suffices.
  std::vector<std::size_t> hits;
  for (const auto& [c, v] : row)
    if (rows_.count(c)) hits.push_back(c);
  for (auto c : hits) {
    const Rational* coeff = sparse_find(row, c);
    if (!coeff) continue;
    Rational f = *coeff;
    sparse_axpy(row, f, rows_.at(c));
  }
  if (row.empty()) return;
  const std::size_t pivot = row.front().first;
  Rational inv = 1 / row.front().second;
  for (auto& e : row) e.second *= inv;
  for (auto& [pc, prow] : rows_) {
    const Rational* coeff = sparse_find(prow, pivot);
    if (!coeff) continue;
    Rational f = *coeff;
    sparse_axpy(prow, f, row);
  }
  rows_.emplace(pivot, std::move(row));
}

RatMatrix SparseEliminator::solution_basis() const {
  std::vector<RatVector> vecs;
  for (std::size_t f = 0; f < unknowns_; ++f) {
    if (rows_.count(f)) continue;
    RatVector v(unknowns_);
    v[f] = 1;
    for (const auto& [pc, prow] : rows_) {
      const Rational* coeff = sparse_find(prow, f);
      if (coeff) v[pc] = -*coeff;
    }
    vecs.push_back(std::move(v));
  }
  return column_space(RatMatrix::from_columns(unknowns_, vecs));
}

// ---------------------------------------------------------------- subspaces

Subspace Subspace::span(const RatMatrix& columns) {
  Subspace s;
  s.ambient_ = columns.rows();
  RrefResult r = rref(columns.transpose());
  s.basis_ = RatMatrix(columns.rows(), r.pivots.size());
  for (std::size_t k = 0; k < r.pivots.size(); ++k)
    for (std::size_t i = 0; i < columns.rows(); ++i) s.basis_(i, k) = r.reduced(k, i);
  s.pivots_ = r.pivots;
  return s;
}

Subspace Subspace::span(std::size_t ambient, const std::vector<RatVector>& vectors) {
  return span(RatMatrix::from_columns(ambient, vectors));
}

Subspace Subspace::whole(std::size_t ambient) { return span(RatMatrix::identity(ambient)); }

RatVector Subspace::coordinates(const RatVector& v) const {
  if (v.size() != ambient_) throw ShapeError("vector/subspace dimension mismatch");
  RatVector c(dim());
  RatVector rebuilt(ambient_);
  for (std::size_t k = 0; k < dim(); ++k) {
    c[k] = v[pivots_[k]];
    if (c[k] == 0) continue;
    for (std::size_t i = 0; i < ambient_; ++i)
      if (basis_(i, k) != 0) rebuilt[i] += c[k] * basis_(i, k);
  }
  if (rebuilt != v) throw ValidationError("vector is not in the subspace");
  return c;
}

bool Subspace::contains(const RatVector& v) const {
  try {
    coordinates(v);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

bool Subspace::contains(const Subspace& other) const {
  for (std::size_t k = 0; k < other.dim(); ++k)
    if (!contains(other.vector(k))) return false;
  return true;
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw ShapeError("subspace sum ambient mismatch");
  return span(hstack(basis_, other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw ShapeError("subspace intersection ambient mismatch");
  if (dim() == 0 || other.dim() == 0) return Subspace(ambient_);
  RatMatrix joint = hstack(basis_, Rational(-1) * other.basis_);
  RatMatrix ker = nullspace(joint);
  std::vector<RatVector> vecs;
  for (std::size_t k = 0; k < ker.cols(); ++k) {
    RatVector coeffs(dim());
    for (std::size_t i = 0; i < dim(); ++i) coeffs[i] = ker(i, k);
    vecs.push_back(basis_ * coeffs);
  }
  return span(ambient_, vecs);
}

// ---------------------------------------------------------------- integer forms

std::vector<Integer> SnfResult::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row_dst -= q * row_src
void row_sub(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) -= q * m(src, j);
}
void col_sub(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, src) != 0) m(i, dst) -= q * m(i, src);
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& input) {
  const std::size_t rows = input.rows(), cols = input.cols();
  SnfResult res{input, IntMatrix::identity(rows), IntMatrix::identity(cols)};
  IntMatrix& S = res.S;
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (S(i, j) == 0) continue;
          Integer a = abs(S(i, j));
          if (!found || a < best) {
            found = true;
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (!found) break;
      swap_rows(S, t, pi);
      swap_rows(res.U, t, pi);
      swap_cols(S, t, pj);
      swap_cols(res.V, t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (S(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        row_sub(S, i, t, q);
        row_sub(res.U, i, t, q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (S(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        col_sub(S, j, t, q);
        col_sub(res.V, j, t, q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (S(i, j) % S(t, t) != 0) {
            row_sub(S, t, i, Integer(-1));
            row_sub(res.U, t, i, Integer(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (S(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) S(t, j) = -S(t, j);
      for (std::size_t j = 0; j < rows; ++j) res.U(t, j) = -res.U(t, j);
    }
  }
  return res;
}

IntMatrix hermite_normal_form(const IntMatrix& input) {
  IntMatrix m = input;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (m(i, c) != 0 && (best == rows || abs(m(i, c)) < abs(m(best, c)))) best = i;
      if (best == rows) break;
      swap_rows(m, r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m(i, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
        row_sub(m, i, r, q);
        if (m(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m(r, c) == 0) continue;
    if (m(r, c) < 0)
      for (std::size_t j = 0; j < cols; ++j) m(r, j) = -m(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
      if (q != 0) row_sub(m, i, r, q);
    }
    ++r;
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(i, j);
  return out;
}

Integer int_determinant(const IntMatrix& m) {
  Rational d = determinant(to_rational(m));
  return d.get_num();
}

IntMatrix int_inverse(const IntMatrix& m) {
  if (!m.square()) throw ShapeError("int_inverse needs a square matrix");
  RatMatrix inv = inverse(to_rational(m));
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (inv(i, j).get_den() != 1) throw ValidationError("matrix is not unimodular");
      out(i, j) = inv(i, j).get_num();
    }
  return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  SnfResult r = smith_normal_form(m);
  std::size_t rk = 0;
  for (const auto& d : r.diagonal())
    if (d != 0) ++rk;
  IntMatrix rows(m.cols() - rk, m.cols());
  for (std::size_t j = rk; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) rows(j - rk, i) = r.V(i, j);
  return hermite_normal_form(rows);
}

// ---------------------------------------------------------------- polynomials

namespace {

using Poly = RatVector;  // low to high

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  trim(d);
  return d;
}

// Returns remainder of a / b.
Poly poly_rem(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

Poly poly_quot(Poly a, const Poly& b) {
  trim(a);
  Poly q;
  if (a.size() < b.size()) return q;
  q.assign(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  trim(q);
  return q;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

Rational eval(const Poly& p, const Rational& x) {
  Rational v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

int sign_changes(const std::vector<Poly>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    int s = sgn(eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

RatVector characteristic_polynomial(const RatMatrix& a) {
  if (!a.square()) throw ShapeError("characteristic polynomial of non-square matrix");
  const std::size_t n = a.rows();
  RatVector c(n + 1);
  c[n] = 1;
  RatMatrix mk(n, n);
  const RatMatrix id = RatMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk + c[n - k + 1] * id;
    c[n - k] = -trace(a * mk) / Rational(static_cast<long>(k));
  }
  return c;
}

RationalRoots rational_roots(const RatVector& input) {
  Poly p = input;
  trim(p);
  if (p.empty()) throw ValidationError("rational_roots of the zero polynomial");
  RationalRoots out;
  const std::size_t degree = p.size() - 1;
  std::map<Rational, std::size_t> found;
  std::size_t zero_mult = 0;
  while (!p.empty() && p.front() == 0) {
    p.erase(p.begin());
    ++zero_mult;
  }
  if (zero_mult) found[Rational(0)] = zero_mult;

  if (p.size() > 1) {
    Poly squarefree = poly_quot(p, poly_gcd(p, derivative(p)));
    // Clear denominators to a primitive integer polynomial.
    Integer lcm_den = 1;
    for (const auto& c : squarefree) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> ints;
    for (const auto& c : squarefree) {
      Rational scaled = c * Rational(lcm_den);
      ints.push_back(scaled.get_num());
    }
    const std::size_t d = ints.size() - 1;
    const Integer lead = ints.back();
    // Q(y) = lead^(d-1) q(y / lead) is monic with integer coefficients.
    Poly monic(d + 1);
    Integer pw = 1;
    for (std::size_t i = d; i-- > 0;) {
      monic[i] = Rational(ints[i] * pw);
      pw *= lead;
    }
    monic[d] = 1;
    Integer bound = 0;
    for (std::size_t i = 0; i < d; ++i) {
      Integer a = abs(monic[i].get_num());
      if (a > bound) bound = a;
    }
    bound += 1;
    std::vector<Poly> sturm{monic, derivative(monic)};
    while (sturm.back().size() > 1) {
      Poly r = poly_rem(sturm[sturm.size() - 2], sturm.back());
      if (r.empty()) break;
      for (auto& c : r) c = -c;
      sturm.push_back(std::move(r));
    }
    const Rational half(1, 2);
    std::function<void(const Integer&, const Integer&)> search = [&](const Integer& lo, const Integer& hi) {
      // Real roots in (lo + 1/2, hi + 1/2).
      int count = sign_changes(sturm, Rational(lo) + half) - sign_changes(sturm, Rational(hi) + half);
      if (count <= 0) return;
      if (hi - lo == 1) {
        if (eval(monic, Rational(hi)) == 0) {
          Rational x(hi, lead);
          x.canonicalize();
          found[x] = 0;
        }
        return;
      }
      Integer mid;
      mpz_fdiv_q_2exp(mid.get_mpz_t(), Integer(lo + hi).get_mpz_t(), 1);
      search(lo, mid);
      search(mid, hi);
    };
    search(Integer(-bound - 1), bound);
    for (auto& [x, mult] : found) {
      if (x == 0) continue;
      Poly rest = p;
      Poly lin{-x, Rational(1)};
      while (rest.size() > 1 && eval(rest, x) == 0) {
        rest = poly_quot(rest, lin);
        ++mult;
      }
    }
  }
  std::size_t total = 0;
  for (const auto& [x, m] : found) {
    out.roots.emplace_back(x, m);
    total += m;
  }
  out.splits = (total == degree);
  return out;
}

namespace {

RatMatrix shifted(const RatMatrix& m, const Rational& lambda) {
  RatMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) -= lambda;
  return out;
}

RationalRoots split_roots(const RatMatrix& m) {
  RationalRoots r = rational_roots(characteristic_polynomial(m));
  if (!r.splits) throw NonSplitError("characteristic polynomial has an irreducible factor of degree > 1 over Q");
  return r;
}

}  // namespace

std::vector<EigenSpace> simultaneous_eigenspaces(const std::vector<RatMatrix>& ops) {
  if (ops.empty()) throw ShapeError("simultaneous_eigenspaces needs at least one matrix or an explicit dimension");
  return simultaneous_eigenspaces(ops.front().rows(), ops);
}

std::vector<EigenSpace> simultaneous_eigenspaces(std::size_t n, const std::vector<RatMatrix>& ops) {
  for (const auto& m : ops)
    if (!m.square() || m.rows() != n) throw ShapeError("simultaneous_eigenspaces: matrices must be square of equal size");
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (!commutator(ops[i], ops[j]).is_zero())
        throw NotCommutingError("matrices " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");

  std::vector<EigenSpace> blocks{{RatVector{}, Subspace::whole(n)}};
  for (const auto& m : ops) {
    std::vector<EigenSpace> next;
    for (const auto& blk : blocks) {
      const RatMatrix& V = blk.space.basis();
      // Matrix of m restricted to the invariant block.
      RatMatrix image = m * V;
      RatMatrix C(V.cols(), V.cols());
      for (std::size_t j = 0; j < V.cols(); ++j) {
        RatVector c = blk.space.coordinates(image.col(j));
        for (std::size_t i = 0; i < V.cols(); ++i) C(i, j) = c[i];
      }
      RationalRoots roots = split_roots(C);
      std::size_t covered = 0;
      for (const auto& [lambda, mult] : roots.roots) {
        RatMatrix ker = nullspace(shifted(C, lambda));
        covered += ker.cols();
        RatVector w = blk.weight;
        w.push_back(lambda);
        next.push_back({std::move(w), Subspace::span(V * ker)});
      }
      if (covered != V.cols()) throw NotDiagonalizableError("minimal polynomial has a repeated root");
    }
    blocks = std::move(next);
  }
  std::sort(blocks.begin(), blocks.end(), [](const EigenSpace& a, const EigenSpace& b) { return a.weight < b.weight; });
  return blocks;
}

RatMatrix semisimple_part(const RatMatrix& m) {
  if (!m.square()) throw ShapeError("semisimple_part of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return m;
  RationalRoots roots = split_roots(m);
  RatMatrix P(n, 0);
  std::vector<Rational> diag;
  for (const auto& [lambda, mult] : roots.roots) {
    RatMatrix ker = nullspace(matrix_power(shifted(m, lambda), mult));
    P = hstack(P, ker);
    for (std::size_t k = 0; k < ker.cols(); ++k) diag.push_back(lambda);
  }
  RatMatrix D(n, n);
  for (std::size_t i = 0; i < n; ++i) D(i, i) = diag[i];
  return P * D * inverse(P);
}

RatMatrix rational_semisimple_part(const RatMatrix& m) {
  if (!m.square()) throw ShapeError("rational_semisimple_part of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return m;
  Poly f = characteristic_polynomial(m);
  Poly g = poly_quot(f, poly_gcd(f, derivative(f)));
  Poly dg = derivative(g);
  auto apply = [n](const Poly& p, const RatMatrix& x) {
    RatMatrix out(n, n);
    for (std::size_t k = p.size(); k-- > 0;) {
      out = out * x;
      for (std::size_t i = 0; i < n; ++i) out(i, i) += p[k];
    }
    return out;
  };
  // Newton iteration s <- s - g(s) g'(s)^{-1}; g'(s) is invertible because g is squarefree.
  RatMatrix s = m;
  for (std::size_t it = 0; it <= n + 1; ++it) {
    RatMatrix gs = apply(g, s);
    if (gs.is_zero()) return s;
    s = s - gs * inverse(apply(dg, s));
  }
  throw VerificationFailure("Jordan-Chevalley iteration did not converge");
}

bool is_split_semisimple(const RatMatrix& m) {
  if (!m.square()) throw ShapeError("is_split_semisimple of non-square matrix");
  if (m.rows() == 0) return true;
  RationalRoots roots = rational_roots(characteristic_polynomial(m));
  if (!roots.splits) return false;
  std::size_t covered = 0;
  for (const auto& [lambda, mult] : roots.roots) covered += nullspace(shifted(m, lambda)).cols();
  return covered == m.rows();
}

}  // namespace gradings
