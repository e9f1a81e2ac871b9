#pragma once

// Root systems of non-special gradings on semisimple Lie algebras and the
// associated root-graded structure.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gradings/afine.hpp"

namespace gradings {

struct WeightSpace {
  RatVector weight;  // values on the basis of H
  Subspace space;
};

/// Weight spaces of ad H on L. Weights are coordinate vectors of linear
/// functionals with respect to the columns of cartan.basis().
struct WeightDecomposition {
  Subspace cartan;
  std::vector<WeightSpace> spaces;  // sorted by weight
  std::vector<RatVector> roots;     // nonzero weights, sorted

  /// L(w); the zero subspace when w is not a weight.
  Subspace space(const RatVector& w) const;
};

/// Throws NonSplitError / NotDiagonalizableError when ad H is not
/// diagonalizable over Q, VerificationFailure when [L(a), L(b)] is not in L(a+b).
WeightDecomposition weight_decomposition(const StructureAlgebra& l, const Subspace& h);

struct RootSystemReport {
  std::vector<RatVector> roots;
  bool spanning = false;
  bool strings_unbroken = false;
  bool reflection_closed = false;
  bool integral = false;
  bool irreducible = false;
  bool reduced = false;
  bool verified = false;  // all of the above except `reduced`
  std::string type;       // "A2", "BC1", ...; empty unless verified
  std::size_t rank = 0;
  std::vector<RatVector> simple_roots;
  std::vector<IntVector> coordinates;  // of roots[i] in the simple roots
  IntMatrix cartan_matrix;             // (i, j) = <alpha_i, alpha_j^vee>
  std::string witness;                 // first failed axiom

  std::size_t index_of(const RatVector& root) const;  // throws ReferenceError
};

/// The Cartan number <beta, alpha^vee> = p - q read off the alpha-string
/// through beta in roots + {0}.
long cartan_number(const std::vector<RatVector>& roots, const RatVector& beta, const RatVector& alpha);

/// Combinatorial axiom check, simple system from a seeded generic functional,
/// and type by Cartan-matrix matching.
RootSystemReport analyze_root_system(const std::vector<RatVector>& roots, std::uint64_t seed = kDefaultSeed);

/// Type label of an indecomposable Cartan matrix, empty when not recognized.
std::string classify_cartan_matrix(const IntMatrix& c);

/// L_e != 0; also computes trank >= 1 and throws VerificationFailure if the
/// two disagree. Requires a nondegenerate Killing form.
bool is_non_special(const Grading& gamma, std::uint64_t seed = kDefaultSeed);

struct RootSystemResult {
  WeightDecomposition weights;
  RootSystemReport report;
};

/// H is a maximal split torus of L_e, obtained from the toral data of gamma.
RootSystemResult extract_root_system(const Grading& gamma, std::uint64_t seed = kDefaultSeed);

struct PhiGradingCheck {
  bool ok = false;
  std::string witness;
  std::string type;      // of the weights of L
  std::string sub_type;  // of the roots of g
};

/// Conditions (i)-(iii) for g to be a grading subalgebra of l with Cartan h.
PhiGradingCheck verify_phi_grading(const StructureAlgebra& l, const Subspace& g, const Subspace& h,
                                   std::uint64_t seed = kDefaultSeed);

struct MultiplicityDegree {
  GroupElement tdeg;  // in t(U)
  GroupElement gdeg;  // delta(tdeg) in G
  std::size_t dim = 0;
};

/// One isotypic component M (x) X of L under the grading subalgebra.
struct IsotypicPiece {
  std::string label;     // "A", "B", "C"
  RatVector highest_weight;
  Subspace highest;      // highest-weight vectors of that weight
  Subspace space;        // the g-submodule they generate
  std::size_t module_dim = 0;
  std::size_t multiplicity = 0;
  std::vector<MultiplicityDegree> degrees;
};

struct RootGradedDecomposition {
  RootSystemReport phi;
  WeightDecomposition weights;
  UabResult uab;
  GroupHom pi;     // U -> Z^rank, coordinates in the simple roots
  GroupHom delta;  // U -> G
  std::vector<GroupElement> section;  // u_alpha per simple root
  Subspace g;
  Subspace h;
  RootSystemReport g_roots;
  IsotypicPiece a, b, c;
  bool c_merged_into_a = false;  // BC_1: the natural module is the adjoint one
  Subspace d;
  std::size_t identity_dim = 0;  // of the coordinate algebra
  PhiGradingCheck check;
};

/// `fine` must refine gamma with identity component a Cartan subalgebra of
/// L_e. The default section takes, per simple root, the first support
/// element of `fine` lying over it.
RootGradedDecomposition root_graded_structure(const Grading& gamma, const Grading& fine,
                                              const std::optional<std::vector<GroupElement>>& section = {},
                                              std::uint64_t seed = kDefaultSeed);

}  // namespace gradings
