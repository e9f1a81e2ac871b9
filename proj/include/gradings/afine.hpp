#pragma once

// Toral rank, almost fine gradings, canonical refinements, almost fine
// coarsenings and classification up to isomorphism.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gradings/grading.hpp"

namespace gradings {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Matrices are in the homogeneous basis of the grading.
struct ToralData {
  DerivationAlgebra d_e;
  std::vector<RatMatrix> cartan;  // a Cartan subalgebra of D_e
  std::vector<RatMatrix> torus;   // basis of its semisimple parts
  std::size_t trank = 0;
  bool split = true;  // torus diagonalizable over Q
};

/// Grows a torus t in D_e by split semisimple parts of elements of its
/// centralizer until the centralizer is nilpotent; that centralizer is a
/// Cartan subalgebra and t is maximal. The seed orders the candidates.
/// When no split torus is found, falls back to the Cartan subalgebra of a
/// regular element with semisimple parts over Q (split = false); trank is
/// the same over the algebraic closure either way.
ToralData toral_rank(const Grading& gamma, std::uint64_t seed = kDefaultSeed);

struct AlmostFineReport {
  bool almost_fine = false;
  std::size_t uab_rank = 0;
  std::size_t trank = 0;
  std::optional<std::size_t> d_e_dim;  // set when the algebra is aut_reductive
};
AlmostFineReport is_almost_fine(const Grading& gamma, std::uint64_t seed = kDefaultSeed);

struct RefinementResult {
  Grading refined;                  // over G x Z^trank
  GroupHom projection;              // G x Z^trank -> G
  std::vector<RatMatrix> torus;     // the torus used, homogeneous basis of gamma
  std::vector<RatVector> lattice;   // basis of the weight lattice (rows, in torus coordinates)
  std::size_t trank = 0;
};

/// Eigenspaces of each component under a maximal toral subalgebra of D_e.
RefinementResult canonical_refinement(const Grading& gamma, std::uint64_t seed = kDefaultSeed);

struct CoarseningOptions {
  bool universal_only = false;
  std::size_t cap = 10000;
  std::vector<WeylGenerator> weyl;
  std::uint64_t seed = kDefaultSeed;
};

struct AfCoarsening {
  Subgroup kernel;  // E in U_ab(delta)
  Grading coarsening;
  AlmostFineReport certificate;
  std::size_t orbit = 0;
  bool representative = false;  // first member of its orbit
};

struct CoarseningReport {
  UabResult uab;
  std::vector<GroupElement> sigma;  // support of the U-grading on Der, in U
  bool reductive_criterion = false;
  std::vector<AfCoarsening> coarsenings;
  std::size_t orbits = 0;
};

/// Subgroups E of t(U) giving almost fine coarsenings U -> U/E of a fine
/// grading delta. With aut_reductive the test is E meet Sigma in {e};
/// otherwise each candidate is tested directly.
CoarseningReport enumerate_af_coarsenings(const Grading& delta, const CoarseningOptions& opts = {});

/// (alpha, U -> U / t(U)) is injective on the support.
bool is_admissible(const GroupHom& alpha, const UabResult& u);

struct ClassificationSource {
  std::string name;
  Grading grading;
  std::vector<WeylGenerator> weyl;
};

struct ClassificationEntry {
  std::size_t source = 0;
  GroupHom alpha;  // U_ab(source) -> G
  Grading induced;
  std::size_t orbit = 0;
  std::size_t orbit_size = 0;
};

/// One entry per orbit of admissible homs under precomposition with the
/// supplied Weyl generators. Sources must be almost fine and G finite.
std::vector<ClassificationEntry> classify_gradings(const std::vector<ClassificationSource>& sources,
                                                   const FgAbGroup& g, std::size_t cap = 1000000,
                                                   std::uint64_t seed = kDefaultSeed);

/// The automorphism of U_ab(gamma) induced by a Weyl generator.
GroupHom weyl_action(const WeylGenerator& w, const Grading& gamma);

}  // namespace gradings
