#include "gradings/afine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace gradings {

namespace {

// The span of the columns of h is a nilpotent subalgebra of `lie`.
bool is_nilpotent(const StructureAlgebra& lie, const RatMatrix& h) {
  const std::size_t m = lie.dim();
  auto hs = h.columns();
  Subspace cur = Subspace::span(m, hs);
  while (cur.dim() > 0) {
    std::vector<RatVector> next;
    for (const auto& x : hs)
      for (const auto& y : cur.basis().columns()) next.push_back(lie.bracket(x, y));
    Subspace nxt = Subspace::span(m, next);
    if (nxt.dim() == cur.dim()) return false;
    cur = nxt;
  }
  return true;
}

// H (columns) is nilpotent and self-normalizing in `lie`.
bool is_cartan(const StructureAlgebra& lie, const RatMatrix& h) {
  if (!is_nilpotent(lie, h)) return false;
  auto hs = h.columns();
  RatMatrix ann = nullspace(h.transpose()).transpose();
  if (ann.rows() == 0) return true;
  std::vector<std::vector<Rational>> rows;
  for (const auto& x : hs) {
    RatMatrix c = ann * lie.ad(x);
    for (std::size_t i = 0; i < c.rows(); ++i) {
      auto r = c.row(i);
      for (auto& v : r) v = -v;  // [y, x] = -ad(x) y
      rows.push_back(r);
    }
  }
  return nullspace(RatMatrix::from_rows(rows)).cols() == hs.size();
}

std::vector<RatMatrix> semisimple_span(const DerivationAlgebra& d_e, const std::vector<RatMatrix>& cartan, std::size_t n,
                                       bool over_q) {
  std::vector<RatVector> flat;
  for (const auto& c : cartan) flat.push_back(flatten(over_q ? rational_semisimple_part(c) : semisimple_part(c)));
  Subspace t = Subspace::span(n * n, flat);
  std::vector<RatMatrix> torus;
  for (const auto& v : t.basis().columns()) {
    if (!d_e.space.contains(v)) throw VerificationFailure("semisimple part is not in D_e");
    torus.push_back(unflatten(v, n, n));
  }
  for (std::size_t i = 0; i < torus.size(); ++i)
    for (std::size_t j = i + 1; j < torus.size(); ++j)
      if (!commutator(torus[i], torus[j]).is_zero()) throw VerificationFailure("toral elements do not commute");
  return torus;
}

// G x Z^r with coordinates (free of G, Z^r, torsion of G).
FgAbGroup extend_free(const FgAbGroup& g, std::size_t r) { return FgAbGroup(g.free_rank() + r, g.invariants()); }

GroupElement extend_element(const FgAbGroup& ext, const GroupElement& x, const IntVector& lambda) {
  const auto& g = x.group();
  IntVector c;
  for (std::size_t i = 0; i < g.free_rank(); ++i) c.push_back(x.coords()[i]);
  c.insert(c.end(), lambda.begin(), lambda.end());
  for (std::size_t i = g.free_rank(); i < g.ngens(); ++i) c.push_back(x.coords()[i]);
  return ext.element(c);
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

namespace {

// Greedy split torus: add split semisimple parts of elements of the
// centralizer until the centralizer is nilpotent (then it is a Cartan
// subalgebra and the torus is maximal). Throws NonSplitError on failure.
void grow_split_torus(ToralData& td, std::size_t n, std::mt19937_64& rng) {
  const auto& lie = td.d_e.lie;
  const std::size_t m = lie.dim();
  std::uniform_int_distribution<long> coef(-3, 3);
  std::vector<RatVector> torus_flat;
  while (true) {
    RatMatrix c;
    if (torus_flat.empty()) {
      c = RatMatrix::identity(m);
    } else {
      std::vector<std::vector<Rational>> rows;
      for (const auto& t : torus_flat) {
        RatMatrix a = lie.ad(td.d_e.coordinates(unflatten(t, n, n)));
        for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
      }
      c = nullspace(RatMatrix::from_rows(rows));
    }
    if (is_nilpotent(lie, c)) {
      if (!is_cartan(lie, c)) throw VerificationFailure("centralizer of the torus is not a Cartan subalgebra");
      std::vector<RatMatrix> cartan;
      for (const auto& h : c.columns()) cartan.push_back(td.d_e.element(h));
      td.torus = semisimple_span(td.d_e, cartan, n, false);
      td.cartan = std::move(cartan);
      return;
    }
    // Candidates: basis of the centralizer in seeded order, pairwise sums
    // and differences, then sparse random combinations.
    auto basis = c.columns();
    std::shuffle(basis.begin(), basis.end(), rng);
    std::vector<RatVector> cands = basis;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j)
        for (int sgn : {1, -1}) {
          RatVector v(m);
          for (std::size_t k = 0; k < m; ++k) v[k] = basis[i][k] + sgn * basis[j][k];
          cands.push_back(v);
        }
    for (std::size_t r = 0; r < 8 * basis.size(); ++r) {
      RatVector v(m);
      for (const auto& b : basis) {
        long k = coef(rng);
        if (k == 0) continue;
        for (std::size_t i = 0; i < m; ++i) v[i] += k * b[i];
      }
      cands.push_back(v);
    }
    Subspace span_t = Subspace::span(n * n, torus_flat);
    bool grown = false;
    for (const auto& x : cands) {
      RatMatrix s;
      try {
        s = semisimple_part(td.d_e.element(x));
      } catch (const NonSplitError&) {
        continue;
      }
      RatVector f = flatten(s);
      if (span_t.contains(f)) continue;
      if (!td.d_e.space.contains(f)) throw VerificationFailure("semisimple part is not in D_e");
      torus_flat.push_back(f);
      grown = true;
      break;
    }
    if (!grown) throw NonSplitError("no split semisimple element found in the centralizer of the torus");
  }
}

// Cartan subalgebra as the nilspace of ad of a regular element (minimal
// nilspace over pseudorandom samples), with semisimple parts taken over Q.
void rational_torus(ToralData& td, std::size_t n, std::mt19937_64& rng) {
  const auto& lie = td.d_e.lie;
  const std::size_t m = lie.dim();
  std::uniform_int_distribution<long> coef(-9, 9);
  for (std::size_t attempt = 0; attempt < 16; ++attempt) {
    std::vector<RatMatrix> nilspaces;
    for (std::size_t k = 0; k < 4 + m / 2; ++k) {
      RatVector x(m);
      for (auto& v : x) v = coef(rng);
      nilspaces.push_back(nullspace(matrix_power(lie.ad(x), m)));
    }
    auto best = std::min_element(nilspaces.begin(), nilspaces.end(),
                                 [](const RatMatrix& a, const RatMatrix& b) { return a.cols() < b.cols(); });
    if (!is_cartan(lie, *best)) continue;
    std::vector<RatMatrix> cartan;
    for (const auto& h : best->columns()) cartan.push_back(td.d_e.element(h));
    td.torus = semisimple_span(td.d_e, cartan, n, true);
    td.cartan = std::move(cartan);
    return;
  }
  throw VerificationFailure("no Cartan subalgebra of D_e found among sampled elements");
}

}  // namespace

ToralData toral_rank(const Grading& gamma, std::uint64_t seed) {
  ToralData td;
  td.d_e = identity_derivations(gamma);
  const std::size_t n = gamma.dim();
  td.split = true;
  if (td.d_e.dim() == 0) return td;
  std::mt19937_64 rng(seed);
  try {
    grow_split_torus(td, n, rng);
  } catch (const NonSplitError&) {
    td.split = false;
    rational_torus(td, n, rng);
  }
  td.trank = td.torus.size();
  return td;
}

AlmostFineReport is_almost_fine(const Grading& gamma, std::uint64_t seed) {
  AlmostFineReport r;
  r.uab_rank = universal_abelian_group(gamma).group.free_rank();
  ToralData td = toral_rank(gamma, seed);
  r.trank = td.trank;
  r.almost_fine = r.uab_rank == r.trank;
  if (gamma.original().flags().aut_reductive) {
    r.d_e_dim = td.d_e.dim();
    if ((r.uab_rank == *r.d_e_dim) != r.almost_fine)
      throw VerificationFailure("reductive shortcut disagrees with the toral rank test");
  }
  return r;
}

RefinementResult canonical_refinement(const Grading& gamma, std::uint64_t seed) {
  RefinementResult res;
  ToralData td = toral_rank(gamma, seed);
  if (!td.split) throw NonSplitError("no split maximal torus found for the canonical refinement");
  const std::size_t n = gamma.dim(), r = td.trank;
  res.torus = td.torus;
  res.trank = r;

  struct Piece {
    GroupElement g;
    RatVector weight;
    RatVector vec;
  };
  std::vector<Piece> pieces;
  for (const auto& g : gamma.support()) {
    const auto& idx = gamma.indices(g);
    std::vector<RatMatrix> blocks;
    for (const auto& t : td.torus) {
      RatMatrix b(idx.size(), idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = t(idx[i], idx[j]);
      blocks.push_back(b);
    }
    for (const auto& es : simultaneous_eigenspaces(idx.size(), blocks))
      for (const auto& v : es.space.basis().columns()) {
        RatVector full(n);
        for (std::size_t i = 0; i < idx.size(); ++i) full[idx[i]] = v[i];
        pieces.push_back({g, es.weight, full});
      }
  }

  // Weight lattice: integer normal form of the span of the observed weights.
  Integer den = 1;
  for (const auto& p : pieces)
    for (const auto& w : p.weight) den = lcm(den, Integer(w.get_den()));
  std::vector<std::vector<Integer>> wrows;
  for (const auto& p : pieces) {
    std::vector<Integer> row;
    for (const auto& w : p.weight) row.push_back(Integer(w * den));
    wrows.push_back(row);
  }
  std::vector<RatVector> lattice;
  if (r > 0) {
    IntMatrix h = hermite_normal_form(IntMatrix::from_rows(wrows));
    for (std::size_t i = 0; i < h.rows(); ++i) {
      RatVector row(r);
      bool nz = false;
      for (std::size_t j = 0; j < r; ++j) {
        row[j] = Rational(h(i, j), den);
        row[j].canonicalize();
        nz = nz || h(i, j) != 0;
      }
      if (nz) lattice.push_back(row);
    }
    if (lattice.size() != r) throw VerificationFailure("torus weights do not span");
  }
  res.lattice = lattice;

  FgAbGroup ext = extend_free(gamma.group(), r);
  RatMatrix lt = RatMatrix::from_columns(r, lattice);  // columns are lattice basis vectors
  std::vector<GroupElement> degs;
  std::vector<RatVector> cols;
  for (const auto& p : pieces) {
    IntVector lambda(r);
    if (r > 0) {
      auto sol = rational_solve(lt, RatMatrix::from_columns(r, {p.weight}));
      for (std::size_t j = 0; j < r; ++j) {
        const Rational& c = sol.particular(j, 0);
        if (c.get_den() != 1) throw VerificationFailure("weight outside its lattice");
        lambda[j] = c.get_num();
      }
    }
    degs.push_back(extend_element(ext, p.g, lambda));
    cols.push_back(p.vec);
  }
  RatMatrix q = RatMatrix::from_columns(n, cols);
  res.refined = validate_grading(gamma.original(), ext, degs, gamma.basis_change() * q);

  const FgAbGroup& g = gamma.group();
  IntMatrix proj(g.ngens(), ext.ngens());
  for (std::size_t i = 0; i < g.free_rank(); ++i) proj(i, i) = 1;
  for (std::size_t i = g.free_rank(); i < g.ngens(); ++i) proj(i, i + r) = 1;
  res.projection = GroupHom(ext, g, proj);

  if (!is_refinement(res.refined, gamma)) throw VerificationFailure("canonical refinement is not a refinement");
  AlmostFineReport af = is_almost_fine(res.refined, seed);
  if (!af.almost_fine || af.trank != r)
    throw VerificationFailure("canonical refinement is not almost fine with the same toral rank");
  return res;
}

GroupHom weyl_action(const WeylGenerator& w, const Grading& gamma) {
  GradedMapReport rep = check_graded_map(w.re, w.im, gamma, gamma);
  if (rep.kind == MapKind::Neither) throw ValidationError("Weyl generator " + w.name + " is not an equivalence: " + rep.witness);
  if (rep.uab_map) return *rep.uab_map;
  return GroupHom::identity(universal_abelian_group(gamma).group);
}

CoarseningReport enumerate_af_coarsenings(const Grading& delta, const CoarseningOptions& opts) {
  CoarseningReport rep;
  rep.uab = universal_abelian_group(delta);
  const FgAbGroup& u = rep.uab.group;
  Grading du = universal_regrading(delta, rep.uab);
  rep.sigma = graded_derivations(du).sigma;
  rep.reductive_criterion = delta.original().flags().aut_reductive;

  std::vector<GroupElement> diffs;
  if (opts.universal_only) {
    std::set<GroupElement> d;
    for (const auto& a : rep.uab.iota)
      for (const auto& b : rep.uab.iota) d.insert(a - b);
    diffs.assign(d.begin(), d.end());
  }
  auto keep = [&](const Subgroup& e) {
    if (rep.reductive_criterion)
      for (const auto& s : rep.sigma)
        if (!s.is_zero() && e.contains(s)) return false;
    if (opts.universal_only) {
      std::vector<GroupElement> inside;
      for (const auto& d : diffs)
        if (e.contains(d)) inside.push_back(d);
      if (!(Subgroup(u, inside) == e)) return false;
    }
    return true;
  };
  Subgroup tu = torsion_and_free(u).torsion;
  for (const auto& e : enumerate_subgroups(tu, keep, opts.cap)) {
    Quotient q = quotient_by(u, e);
    Grading c = induce(du, q.map);
    AlmostFineReport cert = is_almost_fine(c, opts.seed);
    if (!rep.reductive_criterion && !cert.almost_fine) continue;
    rep.coarsenings.push_back({e, c, cert, 0, false});
  }

  UnionFind uf(rep.coarsenings.size());
  for (const auto& w : opts.weyl) {
    GroupHom act = weyl_action(w, delta);
    for (std::size_t i = 0; i < rep.coarsenings.size(); ++i) {
      std::vector<GroupElement> img;
      for (const auto& x : rep.coarsenings[i].kernel.generators()) img.push_back(act(x));
      Subgroup target(u, img);
      auto it = std::find_if(rep.coarsenings.begin(), rep.coarsenings.end(),
                             [&](const AfCoarsening& c) { return c.kernel == target; });
      if (it == rep.coarsenings.end())
        throw VerificationFailure("Weyl generator " + w.name + " moves a kernel outside the enumerated set");
      uf.unite(i, static_cast<std::size_t>(it - rep.coarsenings.begin()));
    }
  }
  std::map<std::size_t, std::size_t> ids;
  for (std::size_t i = 0; i < rep.coarsenings.size(); ++i) {
    auto root = uf.find(i);
    auto [it, fresh] = ids.emplace(root, ids.size());
    rep.coarsenings[i].orbit = it->second;
    rep.coarsenings[i].representative = fresh;
  }
  rep.orbits = ids.size();
  return rep;
}

bool is_admissible(const GroupHom& alpha, const UabResult& u) {
  if (!(alpha.domain() == u.group)) throw ShapeError("admissibility: hom domain is not U_ab");
  GroupHom pi = torsion_and_free(u.group).to_free;
  std::set<std::pair<GroupElement, GroupElement>> seen;
  for (const auto& s : u.iota)
    if (!seen.emplace(alpha(s), pi(s)).second) return false;
  return true;
}

std::vector<ClassificationEntry> classify_gradings(const std::vector<ClassificationSource>& sources,
                                                   const FgAbGroup& g, std::size_t cap, std::uint64_t seed) {
  if (!g.is_finite()) throw PreconditionError("classification needs a finite group");
  std::vector<ClassificationEntry> out;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const auto& src = sources[i];
    if (!is_almost_fine(src.grading, seed).almost_fine)
      throw PreconditionError("source " + src.name + " is not almost fine");
    UabResult u = universal_abelian_group(src.grading);
    Grading du = universal_regrading(src.grading, u);
    std::vector<GroupHom> weyl;
    for (const auto& w : src.weyl) weyl.push_back(weyl_action(w, src.grading));

    std::vector<GroupHom> adm;
    for (auto& a : enumerate_homs(u.group, g, cap))
      if (is_admissible(a, u)) adm.push_back(std::move(a));
    std::sort(adm.begin(), adm.end());
    std::vector<char> seen(adm.size(), 0);
    auto index_of = [&](const GroupHom& a) {
      auto it = std::lower_bound(adm.begin(), adm.end(), a);
      if (it == adm.end() || !(*it == a)) throw VerificationFailure("Weyl action leaves the admissible homs");
      return static_cast<std::size_t>(it - adm.begin());
    };
    for (std::size_t k = 0; k < adm.size(); ++k) {
      if (seen[k]) continue;
      std::vector<std::size_t> queue{k};
      seen[k] = 1;
      for (std::size_t q = 0; q < queue.size(); ++q)
        for (const auto& w : weyl) {
          std::size_t j = index_of(adm[queue[q]].compose(w));
          if (!seen[j]) {
            seen[j] = 1;
            queue.push_back(j);
          }
        }
      out.push_back({i, adm[k], induce(du, adm[k]), out.size(), queue.size()});
    }
  }
  return out;
}

}  // namespace gradings
