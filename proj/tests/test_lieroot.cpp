#include <gtest/gtest.h>

#include <map>
#include <set>

#include "fixtures.hpp"
#include "gradings/catalog.hpp"
#include "gradings/lieroot.hpp"

using namespace gradings;

namespace {

const CatalogEntry& entry(const std::string& name) {
  static std::map<std::string, CatalogEntry> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, catalog(name)).first;
  return it->second;
}

Grading trivial_grading(const StructureAlgebra& a) {
  FgAbGroup t = FgAbGroup::trivial();
  return validate_grading(a, t, std::vector<GroupElement>(a.dim(), t.zero()));
}

RatMatrix as_matrix(std::size_t n, const RatVector& sl_coords) {
  return unflatten(fixture::sl_basis(n) * sl_coords, n, n);
}

// ad X on sl_n coordinates computed with matrix commutators.
RatMatrix ad_matrix(std::size_t n, const RatMatrix& x) {
  RatMatrix basis = fixture::sl_basis(n);
  std::vector<RatVector> cols;
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    RatMatrix y = unflatten(basis.col(j), n, n);
    cols.push_back(sl_coordinates(n, flatten(x * y - y * x)));
  }
  return RatMatrix::from_columns(basis.cols(), cols);
}

RatVector unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  RatVector v(n * n);
  v[i * n + j] = 1;
  return v;
}

// (alpha, beta) from the Killing form on H, as a check independent of
// root strings: returns 2 (beta, alpha) / (alpha, alpha).
Rational killing_cartan_number(const StructureAlgebra& l, const Subspace& h, const RatVector& beta,
                               const RatVector& alpha) {
  const std::size_t k = h.dim();
  RatMatrix gram(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) gram(i, j) = trace(l.ad(h.vector(i)) * l.ad(h.vector(j)));
  RatMatrix inv = inverse(gram);
  auto form = [&](const RatVector& a, const RatVector& b) {
    RatVector t = inv * b;
    Rational s = 0;
    for (std::size_t i = 0; i < k; ++i) s += a[i] * t[i];
    return s;
  };
  return 2 * form(beta, alpha) / form(alpha, alpha);
}

// Closure of a set of vectors under the reflections they define, using the
// Euclidean inner product.
std::vector<RatVector> weyl_closure(std::vector<RatVector> roots) {
  auto dot = [](const RatVector& a, const RatVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  std::set<RatVector> all(roots.begin(), roots.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<RatVector> cur(all.begin(), all.end());
    for (const auto& a : cur)
      for (const auto& b : cur) {
        Rational c = 2 * dot(b, a) / dot(a, a);
        RatVector r = b;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * a[i];
        if (all.insert(r).second) grew = true;
      }
  }
  return {all.begin(), all.end()};
}

RatVector e(std::size_t dim, std::size_t i, long c = 1) {
  RatVector v(dim, 0);
  v[i] = c;
  return v;
}

RatVector diff(std::size_t dim, std::size_t i, std::size_t j) {
  RatVector v(dim, 0);
  v[i] = 1;
  v[j] = -1;
  return v;
}

// Every bracket of weight vectors lands in the weight space of the sum.
void expect_bracket_compatible(const StructureAlgebra& l, const WeightDecomposition& wd) {
  for (const auto& a : wd.spaces)
    for (const auto& b : wd.spaces) {
      RatVector sum = a.weight;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b.weight[i];
      Subspace target = wd.space(sum);
      for (std::size_t i = 0; i < a.space.dim(); ++i)
        for (std::size_t j = 0; j < b.space.dim(); ++j)
          EXPECT_TRUE(target.contains(l.bracket(a.space.vector(i), b.space.vector(j))));
    }
}

}  // namespace

// ---------------------------------------------------------------- abstract root systems

TEST(RootSystem, StandardTypesFromWeylClosure) {
  Rational h(1, 2);
  struct Case {
    std::string type;
    std::vector<RatVector> generators;
    std::size_t count;
  };
  std::vector<Case> cases = {
      {"A1", {e(1, 0)}, 2},
      {"A2", {diff(3, 0, 1), diff(3, 1, 2)}, 6},
      {"B2", {diff(2, 0, 1), e(2, 1)}, 8},
      {"G2", {{1, -1, 0}, {-2, 1, 1}}, 12},
      {"B3", {diff(3, 0, 1), diff(3, 1, 2), e(3, 2)}, 18},
      {"C3", {diff(3, 0, 1), diff(3, 1, 2), e(3, 2, 2)}, 18},
      {"A3", {diff(4, 0, 1), diff(4, 1, 2), diff(4, 2, 3)}, 12},
      {"D4", {diff(4, 0, 1), diff(4, 1, 2), diff(4, 2, 3), {0, 0, 1, 1}}, 24},
      {"F4", {{0, 1, -1, 0}, {0, 0, 1, -1}, {0, 0, 0, 1}, {h, -h, -h, -h}}, 48},
  };
  for (const auto& c : cases) {
    auto roots = weyl_closure(c.generators);
    // A2 and A3 live in a hyperplane; project to coordinates that span.
    if (c.type == "A2" || c.type == "A3" || c.type == "G2")
      for (auto& r : roots) r.pop_back();
    ASSERT_EQ(roots.size(), c.count) << c.type;
    RootSystemReport rep = analyze_root_system(roots);
    EXPECT_TRUE(rep.verified) << c.type << ": " << rep.witness;
    EXPECT_TRUE(rep.reduced);
    EXPECT_TRUE(rep.irreducible);
    EXPECT_EQ(rep.type, c.type);
    EXPECT_EQ(rep.rank, c.generators.size());
  }
}

TEST(RootSystem, BcAndReducible) {
  auto b2 = weyl_closure({diff(2, 0, 1), e(2, 1)});
  std::vector<RatVector> bc2 = b2;
  for (std::size_t i = 0; i < 2; ++i) {
    bc2.push_back(e(2, i, 2));
    bc2.push_back(e(2, i, -2));
  }
  RootSystemReport rep = analyze_root_system(bc2);
  EXPECT_TRUE(rep.verified);
  EXPECT_FALSE(rep.reduced);
  EXPECT_EQ(rep.type, "BC2");
  EXPECT_EQ(rep.roots.size(), 12u);

  RootSystemReport bc1 = analyze_root_system({{1}, {-1}, {2}, {-2}});
  EXPECT_EQ(bc1.type, "BC1");
  EXPECT_EQ(bc1.simple_roots.size(), 1u);
  EXPECT_EQ(abs(bc1.simple_roots[0][0]), 1);

  RootSystemReport a1a1 = analyze_root_system({e(2, 0), e(2, 0, -1), e(2, 1), e(2, 1, -1)});
  EXPECT_TRUE(a1a1.verified);
  EXPECT_FALSE(a1a1.irreducible);
  EXPECT_EQ(a1a1.type, "A1+A1");
}

TEST(RootSystem, FailuresHaveWitnesses) {
  auto a2 = weyl_closure({diff(3, 0, 1), diff(3, 1, 2)});
  for (auto& r : a2) r.pop_back();
  std::vector<RatVector> missing(a2.begin() + 1, a2.end());
  RootSystemReport rep = analyze_root_system(missing);
  EXPECT_FALSE(rep.verified);
  EXPECT_TRUE(rep.type.empty());
  EXPECT_FALSE(rep.witness.empty());

  RootSystemReport broken = analyze_root_system({{1}, {-1}, {3}, {-3}});
  EXPECT_FALSE(broken.strings_unbroken && broken.reflection_closed);
  EXPECT_TRUE(broken.type.empty());

  RootSystemReport flat = analyze_root_system({{1, 0}, {-1, 0}});
  EXPECT_FALSE(flat.spanning);
}

TEST(RootSystem, TypeIsIndependentOfCoordinatesAndSeed) {
  auto b3 = weyl_closure({diff(3, 0, 1), diff(3, 1, 2), e(3, 2)});
  RatMatrix t = RatMatrix::from_rows({{2, 1, 0}, {-1, 3, 5}, {0, 1, 1}});
  std::vector<RatVector> moved;
  for (const auto& r : b3) moved.push_back(t * r);
  for (std::uint64_t seed : {1u, 7u, 12345u}) {
    RootSystemReport rep = analyze_root_system(moved, seed);
    EXPECT_EQ(rep.type, "B3");
    // Every root is an integral combination of the simple roots, one sign.
    for (std::size_t i = 0; i < rep.roots.size(); ++i) {
      RatVector back(3, 0);
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) back[k] += Rational(rep.coordinates[i][j]) * rep.simple_roots[j][k];
      EXPECT_EQ(back, rep.roots[i]);
    }
  }
}

TEST(RootSystem, CartanMatrixClassification) {
  EXPECT_EQ(classify_cartan_matrix(IntMatrix::from_rows({{2, -1}, {-1, 2}})), "A2");
  EXPECT_EQ(classify_cartan_matrix(IntMatrix::from_rows({{2, -1}, {-2, 2}})), "B2");
  EXPECT_EQ(classify_cartan_matrix(IntMatrix::from_rows({{2, -3}, {-1, 2}})), "G2");
  EXPECT_EQ(classify_cartan_matrix(IntMatrix::from_rows({{2, 0}, {0, 2}})), "");
  // B3 and C3 differ by transposition.
  IntMatrix b3 = IntMatrix::from_rows({{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}});
  std::string x = classify_cartan_matrix(b3), y = classify_cartan_matrix(b3.transpose());
  EXPECT_NE(x, y);
  EXPECT_TRUE((x == "B3" && y == "C3") || (x == "C3" && y == "B3"));
  EXPECT_EQ(classify_cartan_matrix(IntMatrix::from_rows(
                {{2, -1, 0, 0, 0, 0}, {-1, 2, -1, 0, 0, 0}, {0, -1, 2, -1, 0, -1},
                 {0, 0, -1, 2, -1, 0}, {0, 0, 0, -1, 2, 0}, {0, 0, -1, 0, 0, 2}})),
            "E6");
}

// ---------------------------------------------------------------- gradings

TEST(NonSpecial, Examples) {
  EXPECT_FALSE(is_non_special(entry("b2-skew").grading));
  EXPECT_FALSE(is_non_special(entry("a3-fine").grading));
  EXPECT_TRUE(is_non_special(entry("cartan-sl3").grading));
  const Grading& inv = entry("sl3-involution").grading;
  EXPECT_TRUE(is_non_special(inv));
  EXPECT_EQ(inv.component_dim(inv.group().zero()), 3u);
  EXPECT_THROW(is_non_special(trivial_grading(fixture::matrix_algebra(2))), FlagViolation);
}

TEST(ExtractRootSystem, CartanGradingsAgainstMatrixEigenvalues) {
  for (std::size_t n : {2, 3, 4}) {
    const Grading& gamma = entry("cartan-sl" + std::to_string(n)).grading;
    RootSystemResult res = extract_root_system(gamma);
    const StructureAlgebra& l = gamma.original();
    EXPECT_EQ(res.report.type, "A" + std::to_string(n - 1));
    EXPECT_EQ(res.report.roots.size(), n * (n - 1));
    ASSERT_EQ(res.weights.cartan.dim(), n - 1);
    // Oracle: H consists of diagonal matrices and E_ij has weight h_i - h_j.
    std::vector<RatMatrix> hs;
    for (std::size_t k = 0; k < n - 1; ++k) {
      hs.push_back(as_matrix(n, res.weights.cartan.vector(k)));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) EXPECT_EQ(hs.back()(i, j), 0);
    }
    std::set<RatVector> oracle;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        RatVector w;
        for (const auto& h : hs) w.push_back(h(i, i) - h(j, j));
        oracle.insert(w);
        Subspace s = res.weights.space(w);
        EXPECT_EQ(s.dim(), 1u);
        EXPECT_TRUE(s.contains(sl_coordinates(n, unit_matrix(n, i, j))));
      }
    EXPECT_EQ(std::set<RatVector>(res.report.roots.begin(), res.report.roots.end()), oracle);
    expect_bracket_compatible(l, res.weights);
  }
}

TEST(ExtractRootSystem, InvolutionIsBc1AgainstAdSpectrum) {
  const Grading& gamma = entry("sl3-involution").grading;
  RootSystemResult res = extract_root_system(gamma);
  EXPECT_EQ(res.report.type, "BC1");
  EXPECT_FALSE(res.report.reduced);
  ASSERT_EQ(res.weights.cartan.dim(), 1u);
  RatMatrix h = as_matrix(3, res.weights.cartan.vector(0));
  // Eigenvalues of h are (a, 0, -a) with a^2 = -(sum of principal 2x2 minors).
  Rational minors = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0) + h(0, 0) * h(2, 2) - h(0, 2) * h(2, 0) +
                    h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1);
  Rational a = res.report.simple_roots[0][0];
  if (a < 0) a = -a;
  EXPECT_EQ(a * a, -minors);
  std::map<Rational, std::size_t> expected = {{-2 * a, 1}, {-a, 2}, {a, 2}, {2 * a, 1}};
  RatMatrix ad = ad_matrix(3, h);
  for (const auto& [w, d] : expected) {
    Subspace s = res.weights.space({w});
    EXPECT_EQ(s.dim(), d) << to_string(w);
    for (std::size_t k = 0; k < s.dim(); ++k) {
      RatVector x = s.vector(k);
      RatVector wx = x;
      for (auto& c : wx) c *= w;
      EXPECT_EQ(ad * x, wx);
    }
  }
  EXPECT_EQ(res.weights.space({0}).dim(), 2u);
  // H is the identity component's part of L(0).
  Subspace le = gamma.component(gamma.group().zero());
  EXPECT_EQ(le.intersect(res.weights.space({0})), res.weights.cartan);
  expect_bracket_compatible(gamma.original(), res.weights);
}

TEST(ExtractRootSystem, B2AlgebraFromTrivialAndCartanGradings) {
  const StructureAlgebra& l = entry("b2-skew").algebra;
  Grading trivial = trivial_grading(l);
  RootSystemResult res = extract_root_system(trivial);
  EXPECT_EQ(res.report.type, "B2");
  EXPECT_EQ(res.report.roots.size(), 8u);
  for (const auto& r : res.report.roots) EXPECT_EQ(res.weights.space(r).dim(), 1u);

  RefinementResult cartan = canonical_refinement(trivial);
  RootSystemResult res2 = extract_root_system(cartan.refined);
  EXPECT_EQ(res2.report.type, "B2");
  EXPECT_EQ(res2.weights.cartan, cartan.refined.component(cartan.refined.group().zero()));
}

TEST(ExtractRootSystem, CartanNumbersMatchKillingForm) {
  std::vector<Grading> gradings = {entry("cartan-sl3").grading, entry("sl3-involution").grading,
                                   trivial_grading(entry("b2-skew").algebra)};
  for (const auto& gamma : gradings) {
    RootSystemResult res = extract_root_system(gamma);
    for (const auto& a : res.report.roots)
      for (const auto& b : res.report.roots)
        EXPECT_EQ(Rational(cartan_number(res.report.roots, b, a)),
                  killing_cartan_number(gamma.original(), res.weights.cartan, b, a));
  }
}

TEST(ExtractRootSystem, SpecialGradingRefused) {
  EXPECT_THROW(extract_root_system(entry("a3-fine").grading), PreconditionError);
  EXPECT_THROW(extract_root_system(entry("b2-skew").grading), PreconditionError);
}

// ---------------------------------------------------------------- Phi-gradings

TEST(PhiGrading, Sl3) {
  const Grading& cartan = entry("cartan-sl3").grading;
  const StructureAlgebra& l = cartan.original();
  Subspace h = cartan.component(cartan.group().zero());
  PhiGradingCheck full = verify_phi_grading(l, Subspace::whole(8), h);
  EXPECT_TRUE(full.ok) << full.witness;
  EXPECT_EQ(full.type, "A2");

  const Grading& inv = entry("sl3-involution").grading;
  RootSystemResult res = extract_root_system(inv);
  Subspace even = inv.component(inv.group().zero());
  PhiGradingCheck bc = verify_phi_grading(l, even, res.weights.cartan);
  EXPECT_TRUE(bc.ok) << bc.witness;
  EXPECT_EQ(bc.type, "BC1");
  EXPECT_EQ(bc.sub_type, "A1");

  // gl_2 in the upper-left corner contains the diagonal Cartan but is not simple.
  std::vector<RatVector> gl2 = {sl_coordinates(3, unit_matrix(3, 0, 1)), sl_coordinates(3, unit_matrix(3, 1, 0))};
  for (std::size_t k = 0; k < h.dim(); ++k) gl2.push_back(h.vector(k));
  PhiGradingCheck bad = verify_phi_grading(l, Subspace::span(8, gl2), h);
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.witness.substr(0, 3), "(i)");

  // sl_2 in the corner: weights of L are {+-1, +-2} and the corner carries
  // the long roots, a grading subalgebra of type C1.
  Subspace sl2 = Subspace::span(8, {gl2[0], gl2[1], l.bracket(gl2[0], gl2[1])});
  Subspace h1 = Subspace::span(8, {l.bracket(gl2[0], gl2[1])});
  PhiGradingCheck corner = verify_phi_grading(l, sl2, h1);
  EXPECT_TRUE(corner.ok) << corner.witness;
  EXPECT_EQ(corner.type, "BC1");
}

TEST(PhiGrading, ZeroWeightSpaceTooLarge) {
  // In sl2 + sl2 the second summand is all of weight zero for the first
  // Cartan, so L(0) is not spanned by brackets of opposite root spaces.
  StructureAlgebra l = fixture::direct_sum(fixture::sl2(), fixture::sl2());
  Subspace g = Subspace::span(6, {e(6, 0), e(6, 1), e(6, 2)});
  PhiGradingCheck c = verify_phi_grading(l, g, Subspace::span(6, {e(6, 1)}));
  EXPECT_FALSE(c.ok);
  EXPECT_EQ(c.witness.substr(0, 5), "(iii)");
}

// ---------------------------------------------------------------- root-graded structure

TEST(RootGraded, CartanSl3IsSelfGraded) {
  const Grading& gamma = entry("cartan-sl3").grading;
  RootGradedDecomposition d = root_graded_structure(gamma, gamma);
  EXPECT_EQ(d.g, Subspace::whole(8));
  EXPECT_EQ(d.a.multiplicity, 1u);
  EXPECT_EQ(d.a.module_dim, 8u);
  EXPECT_EQ(d.b.multiplicity, 0u);
  EXPECT_EQ(d.c.multiplicity, 0u);
  EXPECT_EQ(d.d.dim(), 0u);
  EXPECT_EQ(d.identity_dim, 1u);
  EXPECT_TRUE(d.check.ok);
  ASSERT_EQ(d.a.degrees.size(), 1u);
  EXPECT_TRUE(d.a.degrees[0].tdeg.is_zero());
}

TEST(RootGraded, InvolutionAgainstWeightBookkeeping) {
  const Grading& gamma = entry("sl3-involution").grading;
  RefinementResult ref = canonical_refinement(gamma);
  RootGradedDecomposition d = root_graded_structure(gamma, ref.refined);
  EXPECT_EQ(d.phi.type, "BC1");
  EXPECT_EQ(d.g_roots.type, "A1");
  EXPECT_EQ(d.g.dim(), 3u);
  EXPECT_TRUE(d.c_merged_into_a);

  // Oracle: with g of type B1 the adjoint (weights 1, 0, -1 in units of
  // the short root) and the 5-dimensional module (2, ..., -2) give
  // dim L(2a) = |B|, dim L(a) = |A| + |B|, dim L(0) = |A| + |B| + |D|.
  const RatVector alpha = d.phi.simple_roots[0];
  RatVector two_alpha = {2 * alpha[0]};
  std::size_t nb = d.weights.space(two_alpha).dim();
  std::size_t na = d.weights.space(alpha).dim() - nb;
  std::size_t nd = d.weights.space({0}).dim() - na - nb;
  EXPECT_EQ(d.a.multiplicity, na);
  EXPECT_EQ(d.b.multiplicity, nb);
  EXPECT_EQ(d.d.dim(), nd);
  EXPECT_EQ(d.a.module_dim, 3u);
  EXPECT_EQ(d.b.module_dim, 5u);
  EXPECT_EQ(3 * d.a.multiplicity + 5 * d.b.multiplicity + d.d.dim(), 8u);
  EXPECT_EQ(d.identity_dim, 1u);
  EXPECT_TRUE(d.check.ok) << d.check.witness;

  // g is the even part and the B piece sits in odd degree.
  EXPECT_EQ(d.g, gamma.component(gamma.group().zero()));
  ASSERT_EQ(d.b.degrees.size(), 1u);
  EXPECT_FALSE(d.b.degrees[0].gdeg.is_zero());
  EXPECT_FALSE(d.b.degrees[0].tdeg.is_zero());
  EXPECT_EQ(d.delta(d.b.degrees[0].tdeg), d.b.degrees[0].gdeg);
}

TEST(RootGraded, InvolutionWithOddSection) {
  const Grading& gamma = entry("sl3-involution").grading;
  RefinementResult ref = canonical_refinement(gamma);
  RootGradedDecomposition base = root_graded_structure(gamma, ref.refined);
  const UabResult& u = base.uab;
  std::optional<GroupElement> odd;
  for (const auto& x : u.iota)
    if (base.pi(x) == base.pi(base.section[0]) && !base.delta(x).is_zero()) odd = x;
  ASSERT_TRUE(odd.has_value());
  RootGradedDecomposition d = root_graded_structure(gamma, ref.refined, std::vector<GroupElement>{*odd});
  EXPECT_EQ(d.g.dim(), 3u);
  EXPECT_NE(d.g, base.g);
  EXPECT_EQ(3 * d.a.multiplicity + 5 * d.b.multiplicity + d.d.dim(), 8u);
  EXPECT_EQ(d.identity_dim, 1u);
}

TEST(RootGraded, Errors) {
  const Grading& inv = entry("sl3-involution").grading;
  EXPECT_THROW(root_graded_structure(inv, entry("cartan-sl3").grading), NotARefinement);
  EXPECT_THROW(root_graded_structure(inv, inv), IdentityComponentNotCartan);
  RefinementResult ref = canonical_refinement(inv);
  UabResult u = universal_abelian_group(ref.refined);
  EXPECT_THROW(root_graded_structure(inv, ref.refined, std::vector<GroupElement>{u.group.zero()}), SectionInvalid);
  EXPECT_THROW(root_graded_structure(inv, ref.refined, std::vector<GroupElement>{}), SectionInvalid);
  EXPECT_THROW(root_graded_structure(entry("a3-fine").grading, entry("a3-fine").grading), PreconditionError);
}

TEST(RootGraded, B2TrivialGradingWithCartanRefinement) {
  Grading trivial = trivial_grading(entry("b2-skew").algebra);
  RefinementResult cartan = canonical_refinement(trivial);
  RootGradedDecomposition d = root_graded_structure(trivial, cartan.refined);
  EXPECT_EQ(d.phi.type, "B2");
  EXPECT_EQ(d.g, Subspace::whole(10));
  // The adjoint module of B2 has no highest-weight vector of the highest
  // short root, so the C piece is zero.
  EXPECT_FALSE(d.c.highest_weight.empty());
  EXPECT_EQ(d.c.multiplicity, 0u);
  EXPECT_EQ(d.a.multiplicity, 1u);
  EXPECT_EQ(d.a.module_dim, 10u);
  EXPECT_EQ(d.d.dim(), 0u);
  EXPECT_EQ(d.identity_dim, 1u);
  EXPECT_TRUE(d.pi.is_surjective());
}
