#include "gradings/lieroot.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace gradings {

namespace {

constexpr long kStringBound = 8;

RatVector add(const RatVector& a, const RatVector& b) {
  RatVector out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

RatVector scaled(const Rational& s, const RatVector& a) {
  RatVector out(a);
  for (auto& x : out) x *= s;
  return out;
}

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

std::string vec_str(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

Subspace span_of(std::size_t n, const std::vector<RatVector>& vs) { return Subspace::span(n, vs); }

std::vector<RatVector> basis_vectors(const Subspace& s) {
  std::vector<RatVector> out;
  for (std::size_t k = 0; k < s.dim(); ++k) out.push_back(s.vector(k));
  return out;
}

Subspace brackets(const StructureAlgebra& l, const Subspace& a, const Subspace& b) {
  std::vector<RatVector> out;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out.push_back(l.bracket(a.vector(i), b.vector(j)));
  return span_of(l.dim(), out);
}

// Cartan numbers by root strings, indexed by position in a sorted root list.
struct StringData {
  std::vector<std::vector<long>> c;  // c[b][a] = <beta_b, alpha_a^vee>
  bool unbroken = true;
  bool closed = true;
  std::string witness;
};

StringData root_strings(const std::vector<RatVector>& roots, const std::map<RatVector, std::size_t>& index) {
  StringData sd;
  const std::size_t m = roots.size();
  sd.c.assign(m, std::vector<long>(m, 0));
  auto in_closure = [&](const RatVector& v) { return is_zero(v) || index.count(v) > 0; };
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t a = 0; a < m; ++a) {
      const RatVector& alpha = roots[a];
      const RatVector& beta = roots[b];
      long p = 0, q = 0;
      while (p < kStringBound && in_closure(add(beta, scaled(-(p + 1), alpha)))) ++p;
      while (q < kStringBound && in_closure(add(beta, scaled(q + 1, alpha)))) ++q;
      for (long j = -kStringBound - 1; j <= kStringBound + 1; ++j) {
        if (j >= -p && j <= q) continue;
        if (in_closure(add(beta, scaled(j, alpha)))) {
          if (sd.unbroken)
            sd.witness = "the string of " + vec_str(alpha) + " through " + vec_str(beta) + " is broken";
          sd.unbroken = false;
        }
      }
      sd.c[b][a] = p - q;
      if (!index.count(add(beta, scaled(-(p - q), alpha)))) {
        if (sd.closed && sd.unbroken)
          sd.witness = "reflection of " + vec_str(beta) + " in " + vec_str(alpha) + " is not a root";
        sd.closed = false;
      }
    }
  return sd;
}

// Relative squared lengths from |b|^2 / |a|^2 = <b, a^vee> / <a, b^vee>,
// propagated inside each connected component.
std::vector<Rational> relative_lengths(const std::vector<std::vector<long>>& c) {
  const std::size_t m = c.size();
  std::vector<Rational> len(m, 0);
  for (std::size_t s = 0; s < m; ++s) {
    if (len[s] != 0) continue;
    len[s] = 1;
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < m; ++b)
        if (len[b] == 0 && c[b][a] != 0 && c[a][b] != 0) {
          len[b] = len[a] * Rational(c[b][a]) / Rational(c[a][b]);
          stack.push_back(b);
        }
    }
  }
  return len;
}

// ---------------------------------------------------------------- standard types

struct StandardType {
  std::string label;
  std::vector<RatVector> simple;  // Euclidean coordinates
  std::size_t roots = 0;
};

RatVector unit_diff(std::size_t dim, std::size_t i, std::size_t j) {
  RatVector v(dim, 0);
  v[i] = 1;
  v[j] = -1;
  return v;
}

std::vector<StandardType> standard_types(std::size_t r) {
  std::vector<StandardType> out;
  {
    StandardType t{"A" + std::to_string(r), {}, r * (r + 1)};
    for (std::size_t i = 0; i < r; ++i) t.simple.push_back(unit_diff(r + 1, i, i + 1));
    out.push_back(t);
  }
  if (r >= 2) {
    StandardType b{"B" + std::to_string(r), {}, 2 * r * r};
    StandardType c{"C" + std::to_string(r), {}, 2 * r * r};
    for (std::size_t i = 0; i + 1 < r; ++i) {
      b.simple.push_back(unit_diff(r, i, i + 1));
      c.simple.push_back(unit_diff(r, i, i + 1));
    }
    RatVector last(r, 0);
    last[r - 1] = 1;
    b.simple.push_back(last);
    last[r - 1] = 2;
    c.simple.push_back(last);
    out.push_back(b);
    if (r >= 3) out.push_back(c);
  }
  if (r >= 4) {
    StandardType d{"D" + std::to_string(r), {}, 2 * r * (r - 1)};
    for (std::size_t i = 0; i + 1 < r; ++i) d.simple.push_back(unit_diff(r, i, i + 1));
    RatVector last(r, 0);
    last[r - 2] = 1;
    last[r - 1] = 1;
    d.simple.push_back(last);
    out.push_back(d);
  }
  if (r == 2) out.push_back({"G2", {{1, -1, 0}, {-2, 1, 1}}, 12});
  if (r == 4) {
    Rational h(1, 2);
    out.push_back({"F4", {{0, 1, -1, 0}, {0, 0, 1, -1}, {0, 0, 0, 1}, {h, -h, -h, -h}}, 48});
  }
  if (r >= 6 && r <= 8) {
    Rational h(1, 2);
    std::vector<RatVector> e8 = {{h, -h, -h, -h, -h, -h, -h, h}, {1, 1, 0, 0, 0, 0, 0, 0}};
    for (std::size_t i = 0; i < 6; ++i) e8.push_back(unit_diff(8, i + 1, i));
    const std::size_t counts[] = {72, 126, 240};
    out.push_back({"E" + std::to_string(r), std::vector<RatVector>(e8.begin(), e8.begin() + r), counts[r - 6]});
  }
  return out;
}

IntMatrix euclidean_cartan(const std::vector<RatVector>& simple) {
  auto dot = [](const RatVector& a, const RatVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  IntMatrix c(simple.size(), simple.size());
  for (std::size_t i = 0; i < simple.size(); ++i)
    for (std::size_t j = 0; j < simple.size(); ++j) {
      Rational v = 2 * dot(simple[i], simple[j]) / dot(simple[j], simple[j]);
      c(i, j) = v.get_num();
    }
  return c;
}

bool permutation_match(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t k = 0; k < n; ++k) {
      if (used[k]) continue;
      bool fits = true;
      for (std::size_t j = 0; j < i && fits; ++j)
        fits = a(i, j) == b(k, perm[j]) && a(j, i) == b(perm[j], k);
      if (!fits) continue;
      used[k] = 1;
      perm[i] = k;
      if (go(i + 1)) return true;
      used[k] = 0;
    }
    return false;
  };
  return go(0);
}

std::size_t expected_root_count(const std::string& label) {
  std::size_t r = std::stoul(label.substr(label[0] == 'B' && label[1] == 'C' ? 2 : 1));
  if (label.rfind("BC", 0) == 0) return 2 * r * r + 2 * r;
  for (const auto& t : standard_types(r))
    if (t.label == label) return t.roots;
  return 0;
}

// Connected components of a Cartan matrix, as index lists.
std::vector<std::vector<std::size_t>> cartan_components(const IntMatrix& c) {
  const std::size_t n = c.rows();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    out.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = static_cast<int>(out.size() - 1);
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      out.back().push_back(i);
      for (std::size_t j = 0; j < n; ++j)
        if (comp[j] < 0 && c(i, j) != 0) {
          comp[j] = comp[s];
          stack.push_back(j);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

IntMatrix submatrix(const IntMatrix& c, const std::vector<std::size_t>& idx) {
  IntMatrix out(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = c(idx[i], idx[j]);
  return out;
}

RatMatrix solve_inner(const Grading& gamma, const RatMatrix& t) {
  const StructureAlgebra& a = gamma.algebra();
  const std::size_t n = a.dim();
  RatMatrix m(n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    RatVector col = flatten(a.ad_basis(i));
    for (std::size_t r = 0; r < n * n; ++r) m(r, i) = col[r];
  }
  RatVector rhs = flatten(t);
  SolveResult s = rational_solve(m, RatMatrix::from_columns(n * n, {rhs}));
  if (!s.consistent) throw VerificationFailure("a toral derivation of the identity component is not inner");
  return gamma.basis_change() * s.particular;
}

Subspace highest_weight_vectors(const StructureAlgebra& l, const Subspace& space, const std::vector<RatVector>& raising) {
  if (space.dim() == 0 || raising.empty()) return space;
  const std::size_t n = l.dim();
  RatMatrix rows(n * raising.size(), space.dim());
  for (std::size_t k = 0; k < raising.size(); ++k) {
    RatMatrix img = l.ad(raising[k]) * space.basis();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < space.dim(); ++c) rows(k * n + r, c) = img(r, c);
  }
  RatMatrix kernel = nullspace(rows);
  if (kernel.cols() == 0) return Subspace(n);
  return Subspace::span(space.basis() * kernel);
}

Subspace generated_module(const StructureAlgebra& l, const Subspace& g, const Subspace& start) {
  Subspace s = start;
  while (true) {
    std::vector<RatVector> vs = basis_vectors(s);
    for (std::size_t i = 0; i < g.dim(); ++i) {
      RatMatrix ad = l.ad(g.vector(i));
      for (std::size_t k = 0; k < s.dim(); ++k) vs.push_back(ad * s.vector(k));
    }
    Subspace next = span_of(l.dim(), vs);
    if (next.dim() == s.dim()) return s;
    s = next;
  }
}

IntVector unit(std::size_t r, std::size_t i) {
  IntVector v(r, 0);
  v[i] = 1;
  return v;
}

long height(const IntVector& c) {
  Integer s = 0;
  for (const auto& x : c) s += x;
  return s.get_si();
}

bool nonnegative(const IntVector& c) {
  return std::all_of(c.begin(), c.end(), [](const Integer& x) { return x >= 0; });
}

}  // namespace

// ---------------------------------------------------------------- weights

Subspace WeightDecomposition::space(const RatVector& w) const {
  for (const auto& s : spaces)
    if (s.weight == w) return s.space;
  return Subspace(spaces.empty() ? cartan.ambient() : spaces.front().space.ambient());
}

WeightDecomposition weight_decomposition(const StructureAlgebra& l, const Subspace& h) {
  l.require_lie("weight_decomposition");
  WeightDecomposition wd;
  wd.cartan = h;
  std::vector<RatMatrix> ops;
  for (std::size_t i = 0; i < h.dim(); ++i) ops.push_back(l.ad(h.vector(i)));
  for (auto& es : simultaneous_eigenspaces(l.dim(), ops)) {
    if (!is_zero(es.weight)) wd.roots.push_back(es.weight);
    wd.spaces.push_back({es.weight, es.space});
  }
  std::sort(wd.roots.begin(), wd.roots.end());
  for (const auto& a : wd.spaces)
    for (const auto& b : wd.spaces) {
      Subspace target = wd.space(add(a.weight, b.weight));
      for (std::size_t i = 0; i < a.space.dim(); ++i)
        for (std::size_t j = 0; j < b.space.dim(); ++j)
          if (!target.contains(l.bracket(a.space.vector(i), b.space.vector(j))))
            throw VerificationFailure("bracket of weight spaces " + vec_str(a.weight) + " and " + vec_str(b.weight) +
                                      " leaves the weight space of their sum");
    }
  return wd;
}

// ---------------------------------------------------------------- root systems

std::size_t RootSystemReport::index_of(const RatVector& root) const {
  auto it = std::lower_bound(roots.begin(), roots.end(), root);
  if (it == roots.end() || *it != root) throw ReferenceError("not a root: " + vec_str(root));
  return static_cast<std::size_t>(it - roots.begin());
}

long cartan_number(const std::vector<RatVector>& roots, const RatVector& beta, const RatVector& alpha) {
  std::set<RatVector> s(roots.begin(), roots.end());
  auto in_closure = [&](const RatVector& v) { return is_zero(v) || s.count(v) > 0; };
  long p = 0, q = 0;
  while (p < kStringBound && in_closure(add(beta, scaled(-(p + 1), alpha)))) ++p;
  while (q < kStringBound && in_closure(add(beta, scaled(q + 1, alpha)))) ++q;
  return p - q;
}

std::string classify_cartan_matrix(const IntMatrix& c) {
  const std::size_t r = c.rows();
  if (r == 0 || cartan_components(c).size() != 1) return "";
  for (const auto& t : standard_types(r))
    if (permutation_match(c, euclidean_cartan(t.simple))) return t.label;
  return "";
}

RootSystemReport analyze_root_system(const std::vector<RatVector>& input, std::uint64_t seed) {
  RootSystemReport rep;
  rep.roots = input;
  std::sort(rep.roots.begin(), rep.roots.end());
  rep.roots.erase(std::unique(rep.roots.begin(), rep.roots.end()), rep.roots.end());
  const auto& roots = rep.roots;
  const std::size_t m = roots.size();
  if (m == 0) {
    rep.witness = "no roots";
    return rep;
  }
  const std::size_t k = roots.front().size();
  std::map<RatVector, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) {
    if (is_zero(roots[i])) {
      rep.witness = "zero is listed as a root";
      return rep;
    }
    index[roots[i]] = i;
  }

  rep.spanning = rank(RatMatrix::from_rows(roots)) == k;
  StringData sd = root_strings(roots, index);
  rep.strings_unbroken = sd.unbroken;
  rep.reflection_closed = sd.closed;
  const auto& c = sd.c;

  // <., alpha^vee> must be an integral linear functional with the usual
  // pairing constraints.
  rep.integral = true;
  std::string integral_witness;
  auto fail_integral = [&](const std::string& w) {
    if (rep.integral) integral_witness = w;
    rep.integral = false;
  };
  for (std::size_t a = 0; a < m; ++a) {
    if (c[a][a] != 2) fail_integral("<a, a^vee> != 2 for a = " + vec_str(roots[a]));
    for (std::size_t b = 0; b < m; ++b) {
      long x = c[b][a], y = c[a][b];
      if ((x == 0) != (y == 0) || x * y < 0 || x * y > 4)
        fail_integral("inconsistent Cartan numbers for " + vec_str(roots[a]) + ", " + vec_str(roots[b]));
    }
  }
  for (std::size_t b1 = 0; b1 < m && rep.integral; ++b1)
    for (std::size_t b2 = 0; b2 < m; ++b2) {
      auto it = index.find(add(roots[b1], roots[b2]));
      if (it == index.end()) continue;
      for (std::size_t a = 0; a < m; ++a)
        if (c[it->second][a] != c[b1][a] + c[b2][a])
          fail_integral("<., a^vee> is not additive at a = " + vec_str(roots[a]));
    }

  rep.reduced = true;
  for (const auto& r : roots)
    if (index.count(scaled(2, r))) rep.reduced = false;

  {
    std::vector<char> seen(m, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < m; ++b)
        if (!seen[b] && c[b][a] != 0) {
          seen[b] = 1;
          ++count;
          stack.push_back(b);
        }
    }
    rep.irreducible = count == m;
  }

  rep.verified = rep.spanning && rep.strings_unbroken && rep.reflection_closed && rep.integral;
  if (!rep.spanning) rep.witness = "roots do not span the dual of H";
  else if (!rep.strings_unbroken || !rep.reflection_closed) rep.witness = sd.witness;
  else if (!rep.integral) rep.witness = integral_witness;
  if (!rep.verified) return rep;

  // Simple system from a generic functional.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(-97, 97);
  std::vector<Rational> f(k);
  std::vector<Rational> value(m);
  while (true) {
    for (auto& x : f) x = coef(rng);
    bool generic = true;
    for (std::size_t i = 0; i < m && generic; ++i) {
      value[i] = 0;
      for (std::size_t j = 0; j < k; ++j) value[i] += f[j] * roots[i][j];
      generic = value[i] != 0;
    }
    if (generic) break;
  }
  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < m; ++i)
    if (value[i] > 0) positive.push_back(i);
  std::vector<std::size_t> simple;
  for (std::size_t i : positive) {
    bool decomposable = false;
    for (std::size_t j : positive) {
      auto it = index.find(add(roots[i], scaled(-1, roots[j])));
      if (it != index.end() && value[it->second] > 0) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(i);
  }
  rep.rank = simple.size();
  for (std::size_t i : simple) rep.simple_roots.push_back(roots[i]);
  if (rep.rank != k) {
    rep.verified = false;
    rep.witness = "indecomposable positive roots are not a basis";
    return rep;
  }
  RatMatrix delta = RatMatrix::from_columns(k, rep.simple_roots);
  RatMatrix inv = inverse(delta);
  for (std::size_t i = 0; i < m; ++i) {
    RatVector x = inv * roots[i];
    IntVector z(k);
    bool pos = true, neg = true;
    for (std::size_t j = 0; j < k; ++j) {
      if (x[j].get_den() != 1) {
        rep.verified = false;
        rep.witness = "root " + vec_str(roots[i]) + " is not an integral combination of simple roots";
        return rep;
      }
      z[j] = x[j].get_num();
      pos = pos && z[j] >= 0;
      neg = neg && z[j] <= 0;
    }
    if (!pos && !neg) {
      rep.verified = false;
      rep.witness = "root " + vec_str(roots[i]) + " has mixed signs in the simple roots";
      return rep;
    }
    rep.coordinates.push_back(z);
  }
  rep.cartan_matrix = IntMatrix(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) rep.cartan_matrix(i, j) = c[simple[i]][simple[j]];

  // Type, one irreducible component at a time.
  std::vector<std::string> labels;
  for (const auto& comp : cartan_components(rep.cartan_matrix)) {
    std::string label = classify_cartan_matrix(submatrix(rep.cartan_matrix, comp));
    std::size_t count = 0;
    bool comp_reduced = true;
    for (std::size_t i = 0; i < m; ++i) {
      bool inside = true;
      for (std::size_t j = 0; j < k; ++j)
        if (rep.coordinates[i][j] != 0 && !std::binary_search(comp.begin(), comp.end(), j)) inside = false;
      if (!inside) continue;
      ++count;
      if (index.count(scaled(2, roots[i]))) comp_reduced = false;
    }
    const std::size_t r = comp.size();
    if (!comp_reduced) {
      std::string b = r == 1 ? "A1" : "B" + std::to_string(r);
      label = label == b ? "BC" + std::to_string(r) : "";
    }
    if (label.empty() || expected_root_count(label) != count) {
      rep.verified = false;
      rep.witness = "unrecognized component of rank " + std::to_string(r);
      return rep;
    }
    labels.push_back(label);
  }
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 0; i < labels.size(); ++i) rep.type += (i ? "+" : "") + labels[i];
  return rep;
}

// ---------------------------------------------------------------- gradings

bool is_non_special(const Grading& gamma, std::uint64_t seed) {
  const StructureAlgebra& l = gamma.original();
  l.require_lie("is_non_special");
  if (!killing_form(l).nondegenerate) throw PreconditionError("is_non_special needs a semisimple Lie algebra");
  bool nonzero = gamma.component_dim(gamma.group().zero()) > 0;
  ToralData td = toral_rank(gamma, seed);
  if (nonzero != (td.trank >= 1))
    throw VerificationFailure("identity component dimension " +
                              std::to_string(gamma.component_dim(gamma.group().zero())) +
                              " disagrees with toral rank " + std::to_string(td.trank));
  return nonzero;
}

RootSystemResult extract_root_system(const Grading& gamma, std::uint64_t seed) {
  if (!is_non_special(gamma, seed)) throw PreconditionError("the grading is special: its identity component is zero");
  ToralData td = toral_rank(gamma, seed);
  if (!td.split) throw NonSplitError("no split maximal torus in the identity component");
  const StructureAlgebra& l = gamma.original();
  std::vector<RatVector> hs;
  for (const auto& t : td.torus) hs.push_back(solve_inner(gamma, t).col(0));
  Subspace h = span_of(l.dim(), hs);

  RootSystemResult out;
  out.weights = weight_decomposition(l, h);
  Subspace le = gamma.component(gamma.group().zero());
  if (!(le.intersect(out.weights.space(RatVector(h.dim(), 0))) == h))
    throw AxiomFailure("the identity component meets L(0) in more than H");
  out.report = analyze_root_system(out.weights.roots, seed);
  if (out.report.type.empty()) throw AxiomFailure("weights do not form a root system: " + out.report.witness);
  if (!out.report.irreducible && is_simple(l)) throw AxiomFailure("a simple algebra gave a reducible root system");
  return out;
}

PhiGradingCheck verify_phi_grading(const StructureAlgebra& l, const Subspace& g, const Subspace& h,
                                   std::uint64_t seed) {
  PhiGradingCheck out;
  if (!g.contains(h)) {
    out.witness = "(i) H is not contained in g";
    return out;
  }
  WeightDecomposition wd;
  try {
    wd = weight_decomposition(l, h);
  } catch (const Error& e) {
    out.witness = std::string("(ii) no weight decomposition: ") + e.what();
    return out;
  }
  StructureAlgebra sub;
  try {
    sub = subalgebra(l, g.basis(), "g", AlgebraFlags{true, false, false});
  } catch (const Error& e) {
    out.witness = std::string("(i) g is not a subalgebra: ") + e.what();
    return out;
  }
  if (!killing_form(sub).nondegenerate || !is_simple(sub)) {
    out.witness = "(i) g is not simple";
    return out;
  }
  const RatVector zero(h.dim(), 0);
  std::size_t total = 0;
  std::vector<RatVector> sub_roots;
  for (const auto& ws : wd.spaces) {
    std::size_t d = g.intersect(ws.space).dim();
    total += d;
    if (d > 0 && !is_zero(ws.weight)) sub_roots.push_back(ws.weight);
  }
  if (total != g.dim()) {
    out.witness = "(i) g is not a sum of H-weight spaces";
    return out;
  }
  if (!(g.intersect(wd.space(zero)) == h)) {
    out.witness = "(i) H is not a Cartan subalgebra of g";
    return out;
  }
  RootSystemReport rg = analyze_root_system(sub_roots, seed);
  RootSystemReport rl = analyze_root_system(wd.roots, seed);
  if (rg.type.empty() || !rg.reduced || !rg.irreducible) {
    out.witness = "(i) the roots of g do not form a reduced irreducible root system";
    return out;
  }
  if (rl.type.empty()) {
    out.witness = "(ii) the weights of L do not form a root system: " + rl.witness;
    return out;
  }
  out.type = rl.type;
  out.sub_type = rg.type;
  if (rl.reduced) {
    if (sub_roots != rl.roots) {
      out.witness = "(i) the root system of g is not the set of weights of L";
      return out;
    }
  } else {
    const std::size_t r = rl.rank;
    const std::size_t n = sub_roots.size();
    bool inside = std::includes(rl.roots.begin(), rl.roots.end(), sub_roots.begin(), sub_roots.end());
    if (rl.type != "BC" + std::to_string(r) || rg.rank != r || !inside || (n != 2 * r * r && n != 2 * r * (r - 1))) {
      out.witness = "(i) g is not of type B, C or D inside " + rl.type;
      return out;
    }
  }
  std::vector<RatVector> spans;
  for (const auto& a : wd.roots) {
    Subspace s = brackets(l, wd.space(a), wd.space(scaled(-1, a)));
    for (std::size_t k = 0; k < s.dim(); ++k) spans.push_back(s.vector(k));
  }
  if (!(span_of(l.dim(), spans) == wd.space(zero))) {
    out.witness = "(iii) L(0) is not spanned by the brackets [L(a), L(-a)]";
    return out;
  }
  out.ok = true;
  return out;
}

RootGradedDecomposition root_graded_structure(const Grading& gamma, const Grading& fine,
                                              const std::optional<std::vector<GroupElement>>& section,
                                              std::uint64_t seed) {
  const StructureAlgebra& l = gamma.original();
  l.require_lie("root_graded_structure");
  const std::size_t n = l.dim();
  if (!killing_form(l).nondegenerate || !is_simple(l))
    throw PreconditionError("root_graded_structure needs a simple Lie algebra");
  if (gamma.component_dim(gamma.group().zero()) == 0)
    throw PreconditionError("the grading is special: its identity component is zero");
  if (!is_refinement(fine, gamma)) throw NotARefinement("the second grading does not refine the first");

  RootGradedDecomposition out;
  out.h = fine.component(fine.group().zero());
  Subspace le = gamma.component(gamma.group().zero());
  if (out.h.dim() == 0 || !le.contains(out.h))
    throw IdentityComponentNotCartan("the identity component of the refinement is not inside L_e");
  try {
    out.weights = weight_decomposition(l, out.h);
  } catch (const NonSplitError& e) {
    throw IdentityComponentNotCartan(std::string("ad H is not split: ") + e.what());
  } catch (const NotDiagonalizableError& e) {
    throw IdentityComponentNotCartan(std::string("ad H is not diagonalizable: ") + e.what());
  } catch (const NotCommutingError& e) {
    throw IdentityComponentNotCartan(std::string("H is not abelian: ") + e.what());
  }
  const RatVector zero(out.h.dim(), 0);
  if (!(le.intersect(out.weights.space(zero)) == out.h))
    throw IdentityComponentNotCartan("H is not self-centralizing in L_e");
  out.phi = analyze_root_system(out.weights.roots, seed);
  if (out.phi.type.empty()) throw VerificationFailure("weights do not form a root system: " + out.phi.witness);
  const std::size_t r = out.phi.rank;

  // pi and delta from containment of components.
  out.uab = universal_abelian_group(fine);
  const UabResult& u = out.uab;
  const FgAbGroup lattice = FgAbGroup::free(r);
  std::vector<GroupElement> pi_values, delta_values;
  std::vector<IntVector> pi_coords;
  for (const auto& s : u.support) {
    Subspace comp = fine.component(s);
    std::optional<IntVector> coords;
    for (const auto& ws : out.weights.spaces)
      if (ws.space.contains(comp))
        coords = is_zero(ws.weight) ? IntVector(r, 0) : out.phi.coordinates[out.phi.index_of(ws.weight)];
    if (!coords) throw VerificationFailure("component " + s.to_string() + " is not inside one weight space");
    pi_coords.push_back(*coords);
    pi_values.push_back(lattice.element(*coords));
    std::optional<GroupElement> g;
    for (const auto& t : gamma.support())
      if (gamma.component(t).contains(comp)) g = t;
    delta_values.push_back(*g);
  }
  out.pi = uab_hom(u, lattice, pi_values);
  out.delta = uab_hom(u, gamma.group(), delta_values);
  TorsionSplit ts = torsion_and_free(u.group);
  if (!out.pi.is_surjective() || !(out.pi.kernel() == ts.torsion))
    throw VerificationFailure("pi is not surjective with kernel t(U)");

  if (section) {
    if (section->size() != r) throw SectionInvalid("need one section element per simple root");
    for (std::size_t i = 0; i < r; ++i) {
      const GroupElement& x = (*section)[i];
      if (!(x.group() == u.group)) throw SectionInvalid("section element " + x.to_string() + " is not in U");
      if (out.pi(x) != lattice.element(unit(r, i)))
        throw SectionInvalid("section element " + x.to_string() + " does not lie over simple root " +
                             std::to_string(i));
    }
    out.section = *section;
  } else {
    for (std::size_t i = 0; i < r; ++i) {
      std::size_t k = 0;
      while (k < u.support.size() && pi_coords[k] != unit(r, i)) ++k;
      if (k == u.support.size()) throw VerificationFailure("no component lies over a simple root");
      out.section.push_back(u.iota[k]);
    }
  }
  auto lift = [&](const IntVector& coords) {
    GroupElement x = u.group.zero();
    for (std::size_t i = 0; i < r; ++i) x = x + coords[i] * out.section[i];
    return x;
  };

  std::vector<RatVector> gv;
  for (std::size_t k = 0; k < u.support.size(); ++k)
    if (u.iota[k] == lift(pi_coords[k])) {
      Subspace comp = fine.component(u.support[k]);
      for (std::size_t j = 0; j < comp.dim(); ++j) gv.push_back(comp.vector(j));
    }
  out.g = span_of(n, gv);
  out.check = verify_phi_grading(l, out.g, out.h, seed);
  if (!out.check.ok) throw VerificationFailure("not a root grading: " + out.check.witness);

  // Roots of g, heights and lengths in the simple roots of Phi.
  std::vector<std::size_t> g_roots;
  std::vector<RatVector> g_root_vectors;
  for (std::size_t i = 0; i < out.phi.roots.size(); ++i)
    if (out.g.intersect(out.weights.space(out.phi.roots[i])).dim() > 0) {
      g_roots.push_back(i);
      g_root_vectors.push_back(out.phi.roots[i]);
    }
  out.g_roots = analyze_root_system(g_root_vectors, seed);
  if (!out.phi.reduced && out.g_roots.type != (r == 1 ? "A1" : "B" + std::to_string(r)))
    throw VerificationFailure("grading subalgebra of a BC system is of type " + out.g_roots.type);
  {
    std::map<RatVector, std::size_t> idx;
    for (std::size_t i = 0; i < g_root_vectors.size(); ++i) idx[g_root_vectors[i]] = i;
    std::vector<Rational> len = relative_lengths(root_strings(g_root_vectors, idx).c);
    Rational shortest = *std::min_element(len.begin(), len.end());
    bool simply_laced = std::all_of(len.begin(), len.end(), [&](const Rational& x) { return x == shortest; });
    std::size_t top = g_roots[0], top_short = g_roots[0];
    long best = -1, best_short = -1;
    for (std::size_t j = 0; j < g_roots.size(); ++j) {
      const IntVector& c = out.phi.coordinates[g_roots[j]];
      long ht = height(c);
      if (!nonnegative(c)) continue;
      if (ht > best) best = ht, top = g_roots[j];
      if (len[j] == shortest && ht > best_short) best_short = ht, top_short = g_roots[j];
    }
    out.a.label = "A";
    out.a.highest_weight = out.phi.roots[top];
    out.b.label = "B";
    out.c.label = "C";
    if (!out.phi.reduced) {
      out.b.highest_weight = scaled(2, out.phi.roots[top_short]);
      if (r >= 2) out.c.highest_weight = out.phi.roots[top_short];
      else out.c_merged_into_a = true;
    } else if (!simply_laced) {
      out.c.highest_weight = out.phi.roots[top_short];
    }
  }

  std::vector<RatVector> raising;
  for (std::size_t i : g_roots)
    if (nonnegative(out.phi.coordinates[i])) {
      Subspace s = out.g.intersect(out.weights.space(out.phi.roots[i]));
      for (std::size_t j = 0; j < s.dim(); ++j) raising.push_back(s.vector(j));
    }

  auto fill = [&](IsotypicPiece& p) {
    p.highest = Subspace(n);
    p.space = Subspace(n);
    if (p.highest_weight.empty()) return;
    p.highest = highest_weight_vectors(l, out.weights.space(p.highest_weight), raising);
    p.multiplicity = p.highest.dim();
    if (p.multiplicity == 0) return;
    p.space = generated_module(l, out.g, p.highest);
    if (p.space.dim() % p.multiplicity != 0)
      throw VerificationFailure("isotypic piece " + p.label + " has dimension not divisible by its multiplicity");
    p.module_dim = p.space.dim() / p.multiplicity;
    IntVector coords = out.phi.coordinates[out.phi.index_of(p.highest_weight)];
    GroupElement base = lift(coords);
    std::size_t total = 0;
    for (std::size_t k = 0; k < u.support.size(); ++k) {
      if (pi_coords[k] != coords) continue;
      std::size_t d = p.highest.intersect(fine.component(u.support[k])).dim();
      if (d == 0) continue;
      GroupElement t = u.iota[k] - base;
      p.degrees.push_back({t, out.delta(t), d});
      total += d;
    }
    if (total != p.multiplicity)
      throw VerificationFailure("highest-weight space of piece " + p.label + " is not graded");
  };
  fill(out.a);
  fill(out.b);
  fill(out.c);
  out.d = centralizer(l, out.g);

  // Direct sum.
  std::size_t sum = out.a.space.dim() + out.b.space.dim() + out.c.space.dim() + out.d.dim();
  Subspace all = out.a.space + out.b.space + out.c.space + out.d;
  if (sum != n || all.dim() != n)
    throw VerificationFailure("isotypic pieces do not decompose L (dimensions sum to " + std::to_string(sum) + ")");

  // Identity component of the coordinate algebra.
  for (const IsotypicPiece* p : {&out.a, &out.b, &out.c})
    for (const auto& md : p->degrees) {
      if (md.gdeg.is_zero()) out.identity_dim += md.dim;
      if (md.gdeg.order() == 0) throw VerificationFailure("coordinate algebra degree outside t(G)");
    }
  Subspace g_top = out.g.intersect(out.weights.space(out.a.highest_weight));
  IntVector top_coords = out.phi.coordinates[out.phi.index_of(out.a.highest_weight)];
  bool has_one = false;
  for (std::size_t k = 0; k < u.support.size(); ++k)
    if (u.iota[k] == lift(top_coords) && out.a.highest.intersect(fine.component(u.support[k])).contains(g_top))
      has_one = true;
  if (out.identity_dim != 1 || !has_one)
    throw VerificationFailure("identity component of the coordinate algebra has dimension " +
                              std::to_string(out.identity_dim));

  Subspace l0 = out.weights.space(zero);
  std::size_t l0_total = 0;
  for (const auto& t : gamma.support()) {
    std::size_t d = l0.intersect(gamma.component(t)).dim();
    if (d > 0 && t.order() == 0) throw VerificationFailure("L(0) has degree " + t.to_string() + " outside t(G)");
    l0_total += d;
  }
  if (l0_total != l0.dim()) throw VerificationFailure("L(0) is not a graded subspace");
  if (out.d.intersect(le).dim() != 0) throw VerificationFailure("the grading on D is not special");
  if (brackets(l, l0, l0).intersect(le).dim() != 0)
    throw VerificationFailure("the grading on [L(0), L(0)] is not special");
  return out;
}

}  // namespace gradings
