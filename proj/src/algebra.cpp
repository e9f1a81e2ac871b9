#include "gradings/algebra.hpp"

#include <functional>

namespace gradings {

namespace {

std::string tuple_str(const IndexTuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

void axpy(SparseVec& dst, const Rational& f, const SparseVec& src) {
  if (f == 0) return;
  for (const auto& [k, v] : src) {
    Rational& slot = dst[k];
    slot += f * v;
    if (slot == 0) dst.erase(k);
  }
}

// Binary product of sparse vectors through op.
SparseVec product(const MultilinearOp& op, const SparseVec& x, const SparseVec& y) {
  SparseVec out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) axpy(out, a * b, op.on_basis({i, j}));
  return out;
}

SparseVec unit(std::size_t i) { return SparseVec{{i, Rational(1)}}; }

void for_each_tuple(std::size_t n, std::size_t k, const std::function<void(const IndexTuple&)>& f) {
  IndexTuple t(k, 0);
  if (n == 0 && k > 0) return;
  while (true) {
    f(t);
    std::size_t p = k;
    while (p-- > 0) {
      if (++t[p] < n) break;
      t[p] = 0;
    }
    if (p == static_cast<std::size_t>(-1)) return;
  }
}

void verify_lie(const StructureAlgebra& a) {
  if (a.ops().size() != 1 || a.ops()[0].arity != 2)
    throw FlagViolation("lie flag requires exactly one binary operation");
  const auto& op = a.ops()[0];
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      SparseVec s = op.on_basis({i, j});
      axpy(s, 1, op.on_basis({j, i}));
      if (!s.empty()) throw FlagViolation("antisymmetry fails at [e" + std::to_string(i) + ", e" + std::to_string(j) + "]");
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        SparseVec s = product(op, op.on_basis({i, j}), unit(k));
        axpy(s, 1, product(op, op.on_basis({j, k}), unit(i)));
        axpy(s, 1, product(op, op.on_basis({k, i}), unit(j)));
        if (!s.empty())
          throw FlagViolation("Jacobi identity fails on (e" + std::to_string(i) + ", e" + std::to_string(j) + ", e" +
                              std::to_string(k) + ")");
      }
}

void verify_associative(const StructureAlgebra& a) {
  bool any = false;
  const std::size_t n = a.dim();
  for (const auto& op : a.ops()) {
    if (op.arity != 2) continue;
    any = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const SparseVec& ij = op.on_basis({i, j});
        for (std::size_t k = 0; k < n; ++k) {
          SparseVec lhs = product(op, ij, unit(k));
          SparseVec rhs = product(op, unit(i), op.on_basis({j, k}));
          if (lhs != rhs)
            throw FlagViolation("associativity of " + op.name + " fails on (e" + std::to_string(i) + ", e" +
                                std::to_string(j) + ", e" + std::to_string(k) + ")");
        }
      }
  }
  if (!any) throw FlagViolation("associative flag requires a binary operation");
}

}  // namespace

// ---------------------------------------------------------------- MultilinearOp

void MultilinearOp::add(const IndexTuple& inputs, std::size_t output, const Rational& coeff) {
  if (inputs.size() != arity)
    throw ShapeError("operation " + name + " has arity " + std::to_string(arity) + ", entry " + tuple_str(inputs));
  if (coeff == 0) return;
  SparseVec& v = entries[inputs];
  Rational& slot = v[output];
  slot += coeff;
  if (slot == 0) v.erase(output);
  if (v.empty()) entries.erase(inputs);
}

const SparseVec& MultilinearOp::on_basis(const IndexTuple& inputs) const {
  static const SparseVec empty;
  auto it = entries.find(inputs);
  return it == entries.end() ? empty : it->second;
}

RatVector MultilinearOp::apply(const std::vector<RatVector>& args, std::size_t dim) const {
  if (args.size() != arity) throw ShapeError("operation " + name + " applied to wrong number of arguments");
  RatVector out(dim);
  for (const auto& [tuple, vec] : entries) {
    Rational c = 1;
    for (std::size_t p = 0; p < arity && c != 0; ++p) c *= args[p][tuple[p]];
    if (c == 0) continue;
    for (const auto& [j, v] : vec) out[j] += c * v;
  }
  return out;
}

// ---------------------------------------------------------------- StructureAlgebra

void StructureAlgebra::require_lie(const std::string& context) const {
  if (!flags_.lie) throw FlagViolation(context + " needs a Lie algebra; " + name_ + " has no lie flag");
}

RatVector StructureAlgebra::bracket(const RatVector& x, const RatVector& y) const {
  require_lie("bracket");
  return ops_[0].apply({x, y}, dim_);
}

RatMatrix StructureAlgebra::ad(const RatVector& x) const {
  require_lie("ad");
  RatMatrix m(dim_, dim_);
  for (const auto& [t, v] : ops_[0].entries) {
    const Rational& xi = x[t[0]];
    if (xi == 0) continue;
    for (const auto& [r, c] : v) m(r, t[1]) += xi * c;
  }
  return m;
}

RatMatrix StructureAlgebra::ad_basis(std::size_t i) const {
  RatVector e(dim_);
  e[i] = 1;
  return ad(e);
}

StructureAlgebra StructureAlgebra::change_basis(const RatMatrix& p, const std::string& new_name) const {
  if (p.rows() != dim_ || p.cols() != dim_) throw ShapeError("basis change must be " + std::to_string(dim_) + " square");
  RatMatrix pinv = inverse(p);
  auto cols = p.columns();
  std::vector<MultilinearOp> ops;
  for (const auto& op : ops_) {
    MultilinearOp out{op.name, op.arity, {}};
    for_each_tuple(dim_, op.arity, [&](const IndexTuple& t) {
      std::vector<RatVector> args;
      for (auto i : t) args.push_back(cols[i]);
      RatVector v = op.apply(args, dim_);
      bool zero = true;
      for (const auto& x : v)
        if (x != 0) zero = false;
      if (zero) return;
      RatVector w = pinv * v;
      for (std::size_t j = 0; j < dim_; ++j) out.add(t, j, w[j]);
    });
    ops.push_back(std::move(out));
  }
  return StructureAlgebra(new_name.empty() ? name_ : new_name, dim_, std::move(ops), flags_);
}

StructureAlgebra build_algebra(std::string name, std::size_t dim, std::vector<MultilinearOp> ops, AlgebraFlags flags) {
  for (const auto& op : ops) {
    if (op.arity == 0) throw ValidationError("operation " + op.name + " has arity 0");
    for (const auto& [t, v] : op.entries) {
      if (t.size() != op.arity) throw ValidationError("operation " + op.name + ": entry " + tuple_str(t) + " has wrong arity");
      for (auto i : t)
        if (i >= dim) throw ValidationError("operation " + op.name + ": index " + std::to_string(i) + " out of range");
      for (const auto& [j, c] : v)
        if (j >= dim) throw ValidationError("operation " + op.name + ": output index " + std::to_string(j) + " out of range");
    }
  }
  StructureAlgebra a(name, dim, std::move(ops), flags);
  if (flags.lie) verify_lie(a);
  if (flags.associative) verify_associative(a);
  if (flags.lie && !flags.aut_reductive && killing_form(a).semisimple) {
    flags.aut_reductive = true;
    a = StructureAlgebra(a.name(), a.dim(), a.ops(), flags);
  }
  return a;
}

StructureAlgebra subalgebra(const StructureAlgebra& a, const RatMatrix& basis, const std::string& name,
                            AlgebraFlags flags) {
  if (basis.rows() != a.dim()) throw ShapeError("subalgebra basis has wrong ambient dimension");
  const std::size_t m = basis.cols();
  Subspace s = Subspace::span(basis);
  if (s.dim() != m) throw ValidationError("subalgebra basis is linearly dependent");
  // Coordinates in `basis` = T^{-1} * coordinates in the canonical basis.
  RatMatrix t(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    RatVector c = s.coordinates(basis.col(j));
    for (std::size_t i = 0; i < m; ++i) t(i, j) = c[i];
  }
  RatMatrix tinv = inverse(t);
  auto cols = basis.columns();
  std::vector<MultilinearOp> ops;
  for (const auto& op : a.ops()) {
    MultilinearOp out{op.name, op.arity, {}};
    for_each_tuple(m, op.arity, [&](const IndexTuple& tup) {
      std::vector<RatVector> args;
      for (auto i : tup) args.push_back(cols[i]);
      RatVector v = op.apply(args, a.dim());
      RatVector c;
      try {
        c = tinv * s.coordinates(v);
      } catch (const ValidationError&) {
        throw ValidationError("subspace is not closed under " + op.name + " at " + tuple_str(tup));
      }
      for (std::size_t j = 0; j < m; ++j) out.add(tup, j, c[j]);
    });
    ops.push_back(std::move(out));
  }
  return build_algebra(name, m, std::move(ops), flags);
}

StructureAlgebra commutator_algebra(const StructureAlgebra& a, std::size_t op_index, const std::string& name) {
  const auto& op = a.ops().at(op_index);
  if (op.arity != 2) throw ValidationError("commutator needs a binary operation");
  MultilinearOp br{"bracket", 2, {}};
  for (const auto& [t, v] : op.entries)
    for (const auto& [j, c] : v) {
      br.add({t[0], t[1]}, j, c);
      br.add({t[1], t[0]}, j, -c);
    }
  AlgebraFlags f;
  f.lie = true;
  return build_algebra(name.empty() ? a.name() + "^-" : name, a.dim(), {br}, f);
}

// ---------------------------------------------------------------- derivations

std::vector<RatMatrix> solve_derivations(const StructureAlgebra& a, const std::vector<Subspace>& preserved,
                                         const std::vector<std::vector<char>>& allowed) {
  const std::size_t n = a.dim();
  std::vector<long> index(n * n, -1);
  std::vector<std::size_t> unknown;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (allowed.empty() || allowed[r][c]) {
        index[r * n + c] = static_cast<long>(unknown.size());
        unknown.push_back(r * n + c);
      }
  SparseEliminator elim(unknown.size());
  auto term = [&](std::map<std::size_t, Rational>& eq, std::size_t r, std::size_t c, const Rational& v) {
    long k = index[r * n + c];
    if (k < 0 || v == 0) return;
    Rational& slot = eq[static_cast<std::size_t>(k)];
    slot += v;
    if (slot == 0) eq.erase(static_cast<std::size_t>(k));
  };

  for (const auto& op : a.ops()) {
    const std::size_t k = op.arity;
    // For each position p: tuple with position p removed -> (index at p, value).
    std::vector<std::map<IndexTuple, std::vector<std::pair<std::size_t, const SparseVec*>>>> by_pos(k);
    for (const auto& [t, v] : op.entries)
      for (std::size_t p = 0; p < k; ++p) {
        IndexTuple key = t;
        key.erase(key.begin() + static_cast<long>(p));
        by_pos[p][key].emplace_back(t[p], &v);
      }
    for_each_tuple(n, k, [&](const IndexTuple& t) {
      // D(op(e_t)) - sum_p op(..., D e_{t_p}, ...) = 0, one equation per output row r.
      std::vector<std::map<std::size_t, Rational>> eqs(n);
      for (const auto& [c, v] : op.on_basis(t))
        for (std::size_t r = 0; r < n; ++r) term(eqs[r], r, c, v);
      for (std::size_t p = 0; p < k; ++p) {
        IndexTuple key = t;
        key.erase(key.begin() + static_cast<long>(p));
        auto it = by_pos[p].find(key);
        if (it == by_pos[p].end()) continue;
        for (const auto& [c, out] : it->second)
          for (const auto& [r, val] : *out) term(eqs[r], c, t[p], -val);
      }
      for (auto& eq : eqs)
        if (!eq.empty()) elim.add(eq);
    });
  }

  for (const auto& w : preserved) {
    if (w.ambient() != n) throw ShapeError("preserved subspace has wrong ambient dimension");
    if (w.dim() == 0 || w.dim() == n) continue;
    RatMatrix ann = nullspace(w.basis().transpose()).transpose();  // rows annihilate W
    for (std::size_t i = 0; i < ann.rows(); ++i)
      for (std::size_t b = 0; b < w.dim(); ++b) {
        std::map<std::size_t, Rational> eq;
        for (std::size_t r = 0; r < n; ++r) {
          if (ann(i, r) == 0) continue;
          for (std::size_t c = 0; c < n; ++c)
            if (w.basis()(c, b) != 0) term(eq, r, c, ann(i, r) * w.basis()(c, b));
        }
        if (!eq.empty()) elim.add(eq);
      }
  }

  RatMatrix sol = elim.solution_basis();
  std::vector<RatMatrix> out;
  for (std::size_t j = 0; j < sol.cols(); ++j) {
    RatMatrix d(n, n);
    for (std::size_t k = 0; k < unknown.size(); ++k) d(unknown[k] / n, unknown[k] % n) = sol(k, j);
    out.push_back(std::move(d));
  }
  return out;
}

RatVector DerivationAlgebra::coordinates(const RatMatrix& d) const { return space.coordinates(flatten(d)); }

RatMatrix DerivationAlgebra::element(const RatVector& coords) const {
  if (basis.empty()) return RatMatrix();
  RatMatrix out(basis[0].rows(), basis[0].cols());
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) out = out + coords[i] * basis[i];
  return out;
}

DerivationAlgebra make_derivation_algebra(std::vector<RatMatrix> derivations, const std::string& name) {
  DerivationAlgebra d;
  const std::size_t n = derivations.empty() ? 0 : derivations[0].rows();
  std::vector<RatVector> flat;
  for (const auto& m : derivations) flat.push_back(flatten(m));
  d.space = Subspace::span(n * n, flat);
  for (std::size_t k = 0; k < d.space.dim(); ++k) d.basis.push_back(unflatten(d.space.vector(k), n, n));
  MultilinearOp br{"bracket", 2, {}};
  for (std::size_t i = 0; i < d.dim(); ++i)
    for (std::size_t j = i + 1; j < d.dim(); ++j) {
      RatVector c = d.coordinates(commutator(d.basis[i], d.basis[j]));
      for (std::size_t k = 0; k < c.size(); ++k) {
        br.add({i, j}, k, c[k]);
        br.add({j, i}, k, -c[k]);
      }
    }
  AlgebraFlags f;
  f.lie = true;
  d.lie = build_algebra(name, d.dim(), {br}, f);
  return d;
}

DerivationAlgebra derivation_algebra(const StructureAlgebra& a, const std::vector<Subspace>& preserved) {
  return make_derivation_algebra(solve_derivations(a, preserved), "Der(" + a.name() + ")");
}

// ---------------------------------------------------------------- Lie invariants

Subspace centralizer(const StructureAlgebra& a, const Subspace& s) {
  a.require_lie("centralizer");
  const std::size_t n = a.dim();
  RatMatrix rows(n * s.dim(), n);
  for (std::size_t k = 0; k < s.dim(); ++k) {
    RatMatrix ad = a.ad(s.vector(k));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) rows(k * n + r, c) = ad(r, c);
  }
  if (s.dim() == 0) return Subspace::whole(n);
  return Subspace::span(nullspace(rows));
}

KillingReport killing_form(const StructureAlgebra& a) {
  a.require_lie("killing_form");
  const std::size_t n = a.dim();
  std::vector<RatMatrix> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(a.ad_basis(i));
  KillingReport k;
  k.gram = RatMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational t = 0;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
          if (ads[i](p, q) != 0 && ads[j](q, p) != 0) t += ads[i](p, q) * ads[j](q, p);
      k.gram(i, j) = t;
      k.gram(j, i) = t;
    }
  k.nondegenerate = rank(k.gram) == n;
  k.semisimple = k.nondegenerate;
  return k;
}

bool is_simple(const StructureAlgebra& a) {
  a.require_lie("is_simple");
  if (!killing_form(a).nondegenerate) throw PreconditionError("is_simple needs a nondegenerate Killing form");
  const std::size_t n = a.dim();
  if (n == 0) return false;
  // T ad_i - ad_i T = 0 for every basis element, unknown T(r, m) at r * n + m.
  SparseEliminator elim(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    RatMatrix ad = a.ad_basis(i);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        std::map<std::size_t, Rational> eq;
        for (std::size_t m = 0; m < n; ++m) {
          if (ad(m, c) != 0) eq[r * n + m] += ad(m, c);
          if (ad(r, m) != 0) eq[m * n + c] -= ad(r, m);
        }
        for (auto it = eq.begin(); it != eq.end();) it = it->second == 0 ? eq.erase(it) : std::next(it);
        if (!eq.empty()) elim.add(eq);
      }
  }
  return elim.unknowns() - elim.rank() == 1;
}

}  // namespace gradings
