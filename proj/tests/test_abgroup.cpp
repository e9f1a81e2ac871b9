#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gradings/abgroup.hpp"
#include "oracles.hpp"

using namespace gradings;

namespace {

IntMatrix ints(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Integer>> r;
  for (const auto& row : rows) {
    std::vector<Integer> x;
    for (long v : row) x.emplace_back(v);
    r.push_back(x);
  }
  return IntMatrix::from_rows(r);
}

FgAbGroup grp(std::size_t r, std::vector<long> inv) {
  std::vector<Integer> d;
  for (long x : inv) d.emplace_back(x);
  return FgAbGroup(r, d);
}


}  // namespace

TEST(FgAbGroup, CanonicalFormAndElements) {
  EXPECT_THROW(grp(0, {1}), ValidationError);
  EXPECT_THROW(grp(0, {4, 2}), ValidationError);
  FgAbGroup g = grp(1, {2, 6});
  EXPECT_EQ(g.ngens(), 3u);
  EXPECT_EQ(g.to_string(), "Z x Z_2 x Z_6");
  EXPECT_EQ(g.element({5, -1, 13}).coords(), (IntVector{5, 1, 1}));
  EXPECT_EQ(g.element({0, 1, 3}).order(), 2);
  EXPECT_EQ(g.element({0, 0, 4}).order(), 3);
  EXPECT_EQ(g.element({1, 0, 0}).order(), 0);
  EXPECT_EQ(grp(0, {2, 4}).elements().size(), 8u);
}

TEST(GroupFromPresentation, CyclicOfOrderTwo) {
  auto p = group_from_presentation(1, ints({{2}}));
  EXPECT_EQ(p.group, grp(0, {2}));
}

TEST(GroupFromPresentation, CartanGradingOfSl2) {
  // Generators s_{-1}, s_0, s_1; relations s_0 + s_1 - s_1, s_0 + s_{-1} - s_{-1},
  // s_1 + s_{-1} - s_0, s_0 + s_0 - s_0 (columns).
  IntMatrix rel = ints({{0, 0, 1, 0}, {1, 1, -1, 1}, {0, 0, 1, 0}});
  auto p = group_from_presentation(3, rel);
  // Oracle: free rank = n - rank, torsion = invariant factors above 1.
  auto inv = oracle::invariant_factors(rel);
  std::size_t rk = 0;
  std::vector<Integer> tors;
  for (const auto& d : inv) {
    if (d != 0) ++rk;
    if (d > 1) tors.push_back(d);
  }
  EXPECT_EQ(p.group.free_rank(), 3 - rk);
  EXPECT_EQ(p.group.invariants(), tors);
  EXPECT_EQ(p.group, FgAbGroup::free(1));
  // s_1 maps to a generator.
  auto s1 = p.project({0, 0, 1});
  EXPECT_TRUE(s1.coords() == IntVector{1} || s1.coords() == IntVector{-1});
}

TEST(GroupFromPresentation, ElementaryAbelianOfRankFour) {
  IntMatrix rel = ints({{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}});
  auto p = group_from_presentation(4, rel);
  EXPECT_EQ(p.group.free_rank(), 0u);
  EXPECT_EQ(p.group.invariants(), (std::vector<Integer>{2, 2, 2, 2}));
}

TEST(GroupFromPresentation, RandomKernelIsRelationLattice) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 4, m = rng() % 5;
    IntMatrix rel = oracle::random_int_matrix(rng, n, m, -6, 6);
    auto p = group_from_presentation(n, rel);
    // Relations die.
    for (std::size_t j = 0; j < m; ++j) EXPECT_TRUE(p.project(rel.col(j)).is_zero());
    // Lifts of generators project back to the generators (surjectivity).
    for (std::size_t k = 0; k < p.group.ngens(); ++k) EXPECT_EQ(p.project(p.lift.col(k)), p.group.generator(k));
    // Kernel is exactly the relation lattice: compare indices via the oracle.
    if (n <= 4 && m <= 4) {
      auto inv = oracle::invariant_factors(rel);
      std::size_t rk = 0;
      Integer tors = 1;
      for (const auto& d : inv)
        if (d != 0) {
          ++rk;
          tors *= d;
        }
      EXPECT_EQ(p.group.free_rank(), n - rk);
      EXPECT_EQ(p.group.torsion_order(), tors);
    }
  }
}

TEST(TorsionAndFree, Examples) {
  auto z2 = torsion_and_free(FgAbGroup::free(2));
  EXPECT_TRUE(z2.torsion.is_trivial());
  EXPECT_EQ(z2.to_free.matrix(), IntMatrix::identity(2));
  FgAbGroup g = grp(1, {6});
  auto s = torsion_and_free(g);
  EXPECT_EQ(s.torsion.order(), 6);
  EXPECT_EQ(s.torsion.structure().group, grp(0, {6}));
  EXPECT_EQ(s.to_free.kernel(), s.torsion);
  EXPECT_TRUE(s.to_free.is_surjective());
}

TEST(QuotientBy, Examples) {
  FgAbGroup z = FgAbGroup::free(1);
  auto q1 = quotient_by(z, Subgroup(z, {z.element({2})}));
  EXPECT_EQ(q1.group, grp(0, {2}));

  FgAbGroup z24 = FgAbGroup::elementary(2, 4);
  auto q2 = quotient_by(z24, Subgroup(z24, {z24.element({1, 1, 0, 1})}));
  EXPECT_EQ(q2.group, FgAbGroup::elementary(2, 3));
  EXPECT_TRUE(q2.map(z24.element({1, 1, 0, 1})).is_zero());

  FgAbGroup g = grp(1, {4});
  auto q3 = quotient_by(g, Subgroup(g, {g.element({0, 2})}));
  EXPECT_EQ(q3.group, grp(1, {2}));
  EXPECT_THROW(quotient_by(z, Subgroup(g, {})), NotASubgroup);
}

TEST(QuotientBy, OrdersMultiplyAndKernelIsE) {
  std::mt19937_64 rng(17);
  std::vector<FgAbGroup> groups{grp(0, {2, 4}), grp(0, {3, 6}), grp(0, {2, 2, 2}), grp(0, {12}), grp(0, {2, 6, 12})};
  for (int trial = 0; trial < 200; ++trial) {
    const FgAbGroup& g = groups[rng() % groups.size()];
    std::vector<GroupElement> gens;
    for (std::size_t k = 0, n = rng() % 3; k < n; ++k) {
      IntVector v(g.ngens());
      for (auto& x : v) x = static_cast<long>(rng() % 12);
      gens.push_back(g.element(v));
    }
    Subgroup e(g, gens);
    auto q = quotient_by(g, e);
    EXPECT_EQ(q.group.order() * e.order(), g.order());
    EXPECT_EQ(q.map.kernel(), e);
    EXPECT_TRUE(q.map.is_surjective());
  }
}

TEST(Subgroup, SumIntersectionAndStructure) {
  std::mt19937_64 rng(3);
  FgAbGroup g = grp(0, {2, 4, 8});
  auto all = g.elements();
  for (int trial = 0; trial < 200; ++trial) {
    Subgroup a(g, {all[rng() % all.size()], all[rng() % all.size()]});
    Subgroup b(g, {all[rng() % all.size()]});
    EXPECT_EQ((a + b).order() * a.intersect(b).order(), a.order() * b.order());
    // Membership agrees with the element-set oracle.
    std::set<IntVector> members;
    for (const auto& x : all)
      if (a.contains(x)) members.insert(x.coords());
    EXPECT_EQ(Integer(static_cast<long>(members.size())), a.order());
    auto st = a.structure();
    EXPECT_EQ(st.group.order(), a.order());
    EXPECT_TRUE(st.embedding.is_injective());
    EXPECT_EQ(st.embedding.image(), a);
  }
}

TEST(Subgroup, StructureWithFreePart) {
  FgAbGroup g = grp(2, {6});
  Subgroup h(g, {g.element({2, 0, 0}), g.element({0, 0, 2}), g.element({1, 1, 3})});
  auto st = h.structure();
  EXPECT_EQ(st.group.free_rank(), 2u);
  EXPECT_EQ(st.embedding.image(), h);
  EXPECT_TRUE(st.embedding.is_injective());
}

TEST(EnumerateSubgroups, SmallExamples) {
  EXPECT_EQ(enumerate_subgroups(Subgroup::whole(grp(0, {2}))).size(), 2u);
  EXPECT_EQ(enumerate_subgroups(Subgroup::whole(FgAbGroup::elementary(2, 2))).size(), 5u);
  EXPECT_EQ(enumerate_subgroups(Subgroup::whole(FgAbGroup::elementary(2, 4))).size(), 67u);
  FgAbGroup g = grp(1, {6});
  EXPECT_EQ(enumerate_subgroups(torsion_and_free(g).torsion).size(), 4u);
  EXPECT_THROW(enumerate_subgroups(Subgroup::whole(g)), PreconditionError);
  EXPECT_THROW(enumerate_subgroups(Subgroup::whole(FgAbGroup::elementary(2, 4)), {}, 8), CapExceeded);
}

TEST(EnumerateSubgroups, CanonicalOrderAndNoDuplicates) {
  auto subs = enumerate_subgroups(Subgroup::whole(grp(0, {2, 4})));
  for (std::size_t i = 0; i + 1 < subs.size(); ++i) {
    EXPECT_LE(subs[i].order(), subs[i + 1].order());
    EXPECT_FALSE(subs[i] == subs[i + 1]);
  }
  EXPECT_TRUE(subs.front().is_trivial());
  EXPECT_EQ(subs.back(), Subgroup::whole(grp(0, {2, 4})));
}

TEST(EnumerateSubgroups, PredicateFilters) {
  FgAbGroup g = FgAbGroup::elementary(2, 3);
  auto bad = g.element({1, 1, 1});
  auto subs = enumerate_subgroups(Subgroup::whole(g), [&](const Subgroup& s) { return !s.contains(bad); });
  // 16 subgroups in all; those containing v correspond to the 5 subgroups of Z_2^3 / <v>.
  EXPECT_EQ(subs.size(), 11u);
}

TEST(EnumerateSubgroups, MatchesClosedSubsetBruteForceUpToOrder16) {
  for (long n = 1; n <= 16; ++n)
    for (const auto& t : oracle::abelian_groups_of_order(n)) {
      FgAbGroup g = grp(0, t.invariants);
      EXPECT_EQ(enumerate_subgroups(Subgroup::whole(g)).size(), oracle::brute_force_subgroup_count(g)) << g.to_string();
    }
}

TEST(EnumerateSubgroups, MatchesBirkhoffCountsUpToOrder64) {
  std::size_t groups = 0;
  for (long n = 1; n <= 64; ++n)
    for (const auto& t : oracle::abelian_groups_of_order(n)) {
      FgAbGroup g = grp(0, t.invariants);
      Integer expected = 1;
      for (const auto& [p, part] : t.primary) expected *= oracle::count_p_subgroups(part, p);
      EXPECT_EQ(Integer(static_cast<long>(enumerate_subgroups(Subgroup::whole(g)).size())), expected)
          << g.to_string();
      ++groups;
    }
  EXPECT_EQ(groups, 117u);  // abelian groups of order at most 64
}

TEST(EnumerateHoms, SmallExamples) {
  EXPECT_EQ(enumerate_homs(FgAbGroup::free(1), grp(0, {2})).size(), 2u);
  EXPECT_EQ(enumerate_homs(grp(0, {2}), grp(0, {3})).size(), 1u);
  EXPECT_EQ(enumerate_homs(FgAbGroup::elementary(2, 2), FgAbGroup::elementary(2, 2)).size(), 16u);
  EXPECT_THROW(enumerate_homs(FgAbGroup::free(3), FgAbGroup::elementary(2, 4), 100), CapExceeded);
}

TEST(EnumerateHoms, CountsMatchGcdFormula) {
  std::vector<FgAbGroup> gs{FgAbGroup::free(1), grp(0, {2}), grp(0, {4}), grp(0, {2, 6}), grp(1, {3}), grp(0, {3, 3})};
  std::vector<FgAbGroup> hs{grp(0, {2}), grp(0, {2, 2}), grp(0, {6}), grp(0, {2, 4}), grp(0, {3, 9})};
  for (const auto& g : gs)
    for (const auto& h : hs) {
      // |Hom(Z, H)| = |H| and |Hom(Z_m, Z_n)| = gcd(m, n).
      Integer expected = 1;
      for (std::size_t i = 0; i < g.ngens(); ++i)
        for (const auto& e : h.invariants()) expected *= g.modulus(i) == 0 ? e : gcd(g.modulus(i), e);
      auto homs = enumerate_homs(g, h);
      EXPECT_EQ(Integer(static_cast<long>(homs.size())), expected) << g.to_string() << " -> " << h.to_string();
      std::set<std::vector<Integer>> distinct;
      for (const auto& f : homs) distinct.insert(f.matrix().data());
      EXPECT_EQ(distinct.size(), homs.size());
    }
}

TEST(GroupHom, WellDefinednessAndComposition) {
  FgAbGroup z2 = grp(0, {2}), z4 = grp(0, {4});
  EXPECT_THROW(GroupHom(z2, z4, ints({{1}})), ValidationError);
  GroupHom f(z2, z4, ints({{2}}));
  GroupHom g(z4, z2, ints({{1}}));
  EXPECT_TRUE(g.compose(f).matrix().is_zero());
  EXPECT_EQ(f.kernel().order(), 1);
  EXPECT_EQ(g.kernel().order(), 2);
  EXPECT_TRUE(g.is_surjective());
}

TEST(GroupHom, PresentingByKernelReproducesImage) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 3, m = 1 + rng() % 3;
    IntMatrix mat = oracle::random_int_matrix(rng, m, n, -4, 4);
    FgAbGroup dom = FgAbGroup::free(n), cod = FgAbGroup::free(m);
    GroupHom f(dom, cod, mat);
    auto ker = f.kernel();
    auto p = group_from_presentation(n, ker.lattice().transpose());
    auto img = f.image().structure().group;
    EXPECT_EQ(p.group, img);
  }
}
