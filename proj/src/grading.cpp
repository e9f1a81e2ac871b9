#include "gradings/grading.hpp"

#include <set>

namespace gradings {

namespace {

std::string tuple_str(const IndexTuple& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", e" : "e") + std::to_string(t[i]);
  return s;
}

std::vector<std::vector<char>> mask_for(const Grading& gamma, const GroupElement& g) {
  const std::size_t n = gamma.dim();
  std::vector<std::vector<char>> allowed(n, std::vector<char>(n, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) allowed[r][c] = gamma.degrees()[r] == g + gamma.degrees()[c];
  return allowed;
}

}  // namespace

// ---------------------------------------------------------------- Grading

const std::vector<std::size_t>& Grading::indices(const GroupElement& g) const {
  static const std::vector<std::size_t> empty;
  auto it = indices_.find(g);
  return it == indices_.end() ? empty : it->second;
}

Subspace Grading::component(const GroupElement& g) const {
  std::vector<RatVector> cols;
  for (auto i : indices(g)) cols.push_back(basis_change_.col(i));
  return Subspace::span(dim(), cols);
}

std::string Grading::degree_table() const {
  std::string s;
  for (const auto& g : support_) {
    s += g.to_string() + ": dim " + std::to_string(component_dim(g)) + "\n";
  }
  return s;
}

Grading validate_grading(const StructureAlgebra& a, const FgAbGroup& g, const std::vector<GroupElement>& degrees,
                         const RatMatrix& basis_change) {
  const std::size_t n = a.dim();
  if (degrees.size() != n)
    throw ShapeError("grading has " + std::to_string(degrees.size()) + " degrees for an algebra of dimension " +
                          std::to_string(n));
  Grading out;
  out.original_ = a;
  out.basis_change_ = basis_change.rows() == 0 && basis_change.cols() == 0 ? RatMatrix::identity(n) : basis_change;
  if (out.basis_change_.rows() != n || out.basis_change_.cols() != n)
    throw ShapeError("basis change must be " + std::to_string(n) + "x" + std::to_string(n));
  if (rank(out.basis_change_) != n) throw ValidationError("basis change is singular");
  out.algebra_ = out.basis_change_ == RatMatrix::identity(n) ? a : a.change_basis(out.basis_change_);
  out.group_ = g;
  for (const auto& d : degrees) {
    if (!(d.group() == g)) throw ShapeError("degree " + d.to_string() + " is not an element of " + g.to_string());
    out.degrees_.push_back(d);
  }
  for (const auto& op : out.algebra_.ops())
    for (const auto& [t, v] : op.entries) {
      GroupElement sum = g.zero();
      for (auto i : t) sum = sum + out.degrees_[i];
      for (const auto& [j, c] : v)
        if (out.degrees_[j] != sum)
          throw IncompatibleDegrees(op.name + "(" + tuple_str(t) + ") has coefficient " + c.get_str() + " on e" +
                                    std::to_string(j) + " of degree " + out.degrees_[j].to_string() + ", expected " +
                                    sum.to_string());
    }
  for (std::size_t i = 0; i < n; ++i) out.indices_[out.degrees_[i]].push_back(i);
  for (const auto& [d, idx] : out.indices_) out.support_.push_back(d);
  return out;
}

Grading regrade(const Grading& gamma, const FgAbGroup& g, const std::vector<GroupElement>& degrees) {
  return validate_grading(gamma.original(), g, degrees, gamma.basis_change());
}

// ---------------------------------------------------------------- universal group

GroupElement UabResult::iota_of(const GroupElement& s) const {
  auto it = std::lower_bound(support.begin(), support.end(), s);
  if (it == support.end() || *it != s) throw ValidationError(s.to_string() + " is not in the support");
  return iota[static_cast<std::size_t>(it - support.begin())];
}

UabResult universal_abelian_group(const Grading& gamma) {
  UabResult u;
  u.support = gamma.support();
  const std::size_t m = u.support.size();
  auto index_of = [&](const GroupElement& s) {
    return static_cast<std::size_t>(std::lower_bound(u.support.begin(), u.support.end(), s) - u.support.begin());
  };
  std::set<IntVector> relations;
  for (const auto& op : gamma.algebra().ops())
    for (const auto& [t, v] : op.entries) {
      if (v.empty()) continue;
      IntVector rel(m);
      for (auto i : t) rel[index_of(gamma.degrees()[i])] += 1;
      rel[index_of(gamma.degrees()[v.begin()->first])] -= 1;
      relations.insert(rel);
    }
  u.relations = IntMatrix(m, relations.size());
  std::size_t k = 0;
  for (const auto& rel : relations) {
    for (std::size_t i = 0; i < m; ++i) u.relations(i, k) = rel[i];
    ++k;
  }
  Presentation p = group_from_presentation(m, u.relations);
  u.group = p.group;
  for (std::size_t i = 0; i < m; ++i) {
    IntVector e(m);
    e[i] = 1;
    u.iota.push_back(p.project(e));
  }
  // alpha sends canonical generator k to the image of its lift.
  std::vector<GroupElement> images;
  for (std::size_t c = 0; c < p.group.ngens(); ++c) {
    GroupElement x = gamma.group().zero();
    for (std::size_t i = 0; i < m; ++i)
      if (p.lift(i, c) != 0) x = x + p.lift(i, c) * u.support[i];
    images.push_back(x);
  }
  u.alpha = GroupHom::from_images(u.group, gamma.group(), images);
  for (std::size_t i = 0; i < m; ++i)
    if (u.alpha(u.iota[i]) != u.support[i])
      throw VerificationFailure("alpha(iota(s)) != s for s = " + u.support[i].to_string());
  return u;
}

GroupHom uab_hom(const UabResult& u, const FgAbGroup& target, const std::vector<GroupElement>& values) {
  if (values.size() != u.support.size()) throw ShapeError("uab_hom needs one value per support element");
  // The presentation is recomputed deterministically, so its canonical
  // generators agree with those of u.
  Presentation p = group_from_presentation(u.support.size(), u.relations);
  std::vector<GroupElement> images;
  for (std::size_t c = 0; c < u.group.ngens(); ++c) {
    GroupElement x = target.zero();
    for (std::size_t i = 0; i < u.support.size(); ++i)
      if (p.lift(i, c) != 0) x = x + p.lift(i, c) * values[i];
    images.push_back(x);
  }
  GroupHom h = GroupHom::from_images(u.group, target, images);
  for (std::size_t i = 0; i < u.support.size(); ++i)
    if (h(u.iota[i]) != values[i])
      throw ValidationError("values do not extend to a homomorphism at " + u.support[i].to_string());
  return h;
}

Grading universal_regrading(const Grading& gamma, const UabResult& u) {
  std::vector<GroupElement> degs;
  for (const auto& d : gamma.degrees()) degs.push_back(u.iota_of(d));
  return regrade(gamma, u.group, degs);
}

Grading induce(const Grading& gamma, const GroupHom& alpha) {
  if (!(alpha.domain() == gamma.group())) throw ShapeError("induce: hom domain is not the grading group");
  std::vector<GroupElement> degs;
  for (const auto& d : gamma.degrees()) degs.push_back(alpha(d));
  return regrade(gamma, alpha.codomain(), degs);
}

bool is_refinement(const Grading& fine, const Grading& coarse) {
  if (fine.dim() != coarse.dim()) return false;
  for (const auto& s : fine.support()) {
    Subspace c = fine.component(s);
    // Some component of `coarse` must contain all of c.
    bool found = false;
    for (const auto& t : coarse.support())
      if (coarse.component(t).contains(c)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool is_proper_refinement(const Grading& fine, const Grading& coarse) {
  return is_refinement(fine, coarse) && fine.support().size() > coarse.support().size();
}

// ---------------------------------------------------------------- derivations

std::size_t GradedDerivations::dim(const GroupElement& g) const {
  auto it = parts.find(g);
  return it == parts.end() ? 0 : it->second.size();
}

GradedDerivations graded_derivations(const Grading& gamma) {
  GradedDerivations gd;
  const auto& a = gamma.algebra();
  gd.der = derivation_algebra(a);
  std::set<GroupElement> diffs;
  for (const auto& s : gamma.support())
    for (const auto& t : gamma.support()) diffs.insert(s - t);
  std::size_t total = 0;
  std::vector<RatVector> all;
  for (const auto& g : diffs) {
    auto part = solve_derivations(a, {}, mask_for(gamma, g));
    if (part.empty()) continue;
    total += part.size();
    for (const auto& d : part) all.push_back(flatten(d));
    gd.sigma.push_back(g);
    gd.parts[g] = std::move(part);
  }
  if (total != gd.der.dim() || Subspace::span(a.dim() * a.dim(), all) != gd.der.space)
    throw VerificationFailure("graded derivation components do not add up to Der");
  auto e = gamma.group().zero();
  gd.d_e = make_derivation_algebra(gd.parts.count(e) ? gd.parts[e] : std::vector<RatMatrix>{}, "D_e");
  return gd;
}

DerivationAlgebra identity_derivations(const Grading& gamma) {
  auto part = solve_derivations(gamma.algebra(), {}, mask_for(gamma, gamma.group().zero()));
  return make_derivation_algebra(std::move(part), "D_e");
}

// ---------------------------------------------------------------- graded maps

std::string to_string(MapKind k) {
  switch (k) {
    case MapKind::Isomorphism: return "isomorphism";
    case MapKind::Equivalence: return "equivalence";
    case MapKind::Neither: return "neither";
  }
  return "";
}

namespace {

// op(phi x_1, ..., phi x_k) with phi = re + i im, returned as (real, imaginary).
std::pair<RatVector, RatVector> apply_complex(const MultilinearOp& op, const std::vector<RatVector>& re_args,
                                              const std::vector<RatVector>& im_args, std::size_t n) {
  const std::size_t k = op.arity;
  RatVector re(n), im(n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<RatVector> args;
    std::size_t imag = 0;
    bool zero = false;
    for (std::size_t p = 0; p < k; ++p) {
      bool use_im = mask >> p & 1;
      imag += use_im;
      const RatVector& v = use_im ? im_args[p] : re_args[p];
      bool nz = false;
      for (const auto& x : v)
        if (x != 0) nz = true;
      if (!nz) zero = true;
      args.push_back(v);
    }
    if (zero) continue;
    RatVector val = op.apply(args, n);
    // i^imag
    RatVector& dst = imag % 2 == 0 ? re : im;
    const int sign = (imag % 4 == 0 || imag % 4 == 1) ? 1 : -1;
    for (std::size_t j = 0; j < n; ++j)
      if (val[j] != 0) dst[j] += sign * val[j];
  }
  return {re, im};
}

bool columns_in(const RatMatrix& m, const Subspace& s) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!s.contains(m.col(j))) return false;
  return true;
}

}  // namespace

GradedMapReport check_graded_map(const RatMatrix& re, const RatMatrix& im, const Grading& from, const Grading& to) {
  const auto& a = from.original();
  const std::size_t n = a.dim();
  if (to.dim() != n || re.rows() != n || re.cols() != n || im.rows() != n || im.cols() != n)
    throw ShapeError("graded map and gradings must share the algebra dimension");
  // Invertibility over Q(i): the real form [[R, -J], [J, R]] has full rank.
  RatMatrix big(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      big(i, j) = re(i, j);
      big(i, n + j) = -im(i, j);
      big(n + i, j) = im(i, j);
      big(n + i, n + j) = re(i, j);
    }
  if (rank(big) != 2 * n) throw NotAutomorphism("map is not invertible");
  auto re_cols = re.columns(), im_cols = im.columns();
  for (const auto& op : a.ops()) {
    IndexTuple t(op.arity, 0);
    while (true) {
      std::vector<RatVector> ra, ia;
      RatVector basis_val(n);
      for (auto i : t) {
        ra.push_back(re_cols[i]);
        ia.push_back(im_cols[i]);
      }
      const SparseVec& v = op.on_basis(t);
      for (const auto& [j, c] : v) basis_val[j] = c;
      RatVector lre = re * basis_val, lim = im * basis_val;
      auto [rre, rim] = apply_complex(op, ra, ia, n);
      if (lre != rre || lim != rim) throw NotAutomorphism("phi does not commute with " + op.name + " on (" + tuple_str(t) + ")");
      std::size_t p = op.arity;
      while (p-- > 0) {
        if (++t[p] < n) break;
        t[p] = 0;
      }
      if (p == static_cast<std::size_t>(-1)) break;
    }
  }

  GradedMapReport rep;
  bool same_degree = from.group() == to.group();
  for (const auto& s : from.support()) {
    Subspace src = from.component(s);
    RatMatrix r = re * src.basis(), j = im * src.basis();
    bool found = false;
    for (const auto& t : to.support()) {
      Subspace dst = to.component(t);
      if (dst.dim() != src.dim()) continue;
      if (columns_in(r, dst) && columns_in(j, dst)) {
        rep.gamma.emplace(s, t);
        if (!(same_degree && s == t)) same_degree = false;
        found = true;
        break;
      }
    }
    if (!found) {
      rep.kind = MapKind::Neither;
      rep.gamma.clear();
      rep.witness = "component of degree " + s.to_string() + " is not mapped onto a component";
      return rep;
    }
  }
  if (from.support().size() != to.support().size()) {
    rep.kind = MapKind::Neither;
    rep.witness = "supports have different sizes";
    return rep;
  }
  if (same_degree) {
    rep.kind = MapKind::Isomorphism;
    return rep;
  }
  rep.kind = MapKind::Equivalence;
  // Induced map of universal groups: iota(s) -> iota'(gamma(s)).
  UabResult u = universal_abelian_group(from), v = universal_abelian_group(to);
  std::vector<GroupElement> values;
  for (const auto& s : u.support) values.push_back(v.iota_of(rep.gamma.at(s)));
  GroupHom w = uab_hom(u, v.group, values);
  rep.uab_map = w;
  return rep;
}

GradedMapReport check_graded_map(const RatMatrix& phi, const Grading& from, const Grading& to) {
  return check_graded_map(phi, RatMatrix(phi.rows(), phi.cols()), from, to);
}

}  // namespace gradings
