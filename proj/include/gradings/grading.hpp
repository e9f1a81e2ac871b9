#pragma once

// Group gradings on structure algebras, with a homogeneous basis.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradings/abgroup.hpp"
#include "gradings/algebra.hpp"

namespace gradings {

/// A G-grading. The columns of `basis_change` are a homogeneous basis
/// (in the coordinates of `original`); `algebra` is the same algebra
/// written in that basis, and `degrees[i]` is the degree of basis vector i.
class Grading {
 public:
  Grading() = default;

  const StructureAlgebra& original() const noexcept { return original_; }
  const StructureAlgebra& algebra() const noexcept { return algebra_; }
  const RatMatrix& basis_change() const noexcept { return basis_change_; }
  const FgAbGroup& group() const noexcept { return group_; }
  const std::vector<GroupElement>& degrees() const noexcept { return degrees_; }
  std::size_t dim() const noexcept { return degrees_.size(); }

  /// Sorted support.
  const std::vector<GroupElement>& support() const noexcept { return support_; }
  bool in_support(const GroupElement& g) const { return indices_.count(g) > 0; }
  /// Homogeneous basis indices of degree g (empty outside the support).
  const std::vector<std::size_t>& indices(const GroupElement& g) const;
  /// Component of degree g in the coordinates of the original algebra.
  Subspace component(const GroupElement& g) const;
  std::size_t component_dim(const GroupElement& g) const { return indices(g).size(); }

  std::string degree_table() const;

 private:
  friend Grading validate_grading(const StructureAlgebra&, const FgAbGroup&, const std::vector<GroupElement>&,
                                  const RatMatrix&);
  StructureAlgebra original_;
  StructureAlgebra algebra_;
  RatMatrix basis_change_;
  FgAbGroup group_;
  std::vector<GroupElement> degrees_;
  std::vector<GroupElement> support_;
  std::map<GroupElement, std::vector<std::size_t>> indices_;
};

/// Checks deg(j) = deg(i_1) + ... + deg(i_k) on every nonzero structure
/// constant in the homogeneous basis; throws IncompatibleDegrees with a witness.
/// An empty basis change means the standard basis.
Grading validate_grading(const StructureAlgebra& a, const FgAbGroup& g, const std::vector<GroupElement>& degrees,
                         const RatMatrix& basis_change = RatMatrix());

/// Same algebra and homogeneous basis, new degrees.
Grading regrade(const Grading& gamma, const FgAbGroup& g, const std::vector<GroupElement>& degrees);

struct UabResult {
  FgAbGroup group;
  std::vector<GroupElement> support;  // S, sorted, in G
  std::vector<GroupElement> iota;     // iota[k] is the image of support[k]
  GroupHom alpha;                     // U -> G
  IntMatrix relations;                // one column per relation, rows indexed by S

  GroupElement iota_of(const GroupElement& s) const;
};

UabResult universal_abelian_group(const Grading& gamma);

/// The homomorphism U_ab -> target sending iota(s_i) to values[i]; throws
/// ValidationError when the values violate a relation.
GroupHom uab_hom(const UabResult& u, const FgAbGroup& target, const std::vector<GroupElement>& values);

/// The grading with degrees iota(deg) in U_ab.
Grading universal_regrading(const Grading& gamma, const UabResult& u);

/// The grading induced by alpha: G -> H.
Grading induce(const Grading& gamma, const GroupHom& alpha);

/// True when every component of `fine` lies in a component of `coarse`.
bool is_refinement(const Grading& fine, const Grading& coarse);
bool is_proper_refinement(const Grading& fine, const Grading& coarse);

struct GradedDerivations {
  DerivationAlgebra der;                                  // Der(A), homogeneous basis coordinates
  std::map<GroupElement, std::vector<RatMatrix>> parts;   // g -> basis of D_g
  std::vector<GroupElement> sigma;                        // degrees with D_g != 0
  DerivationAlgebra d_e;

  std::size_t dim(const GroupElement& g) const;
};

/// D_g = {d in Der : d(A_h) in A_{g+h}} for all g; checks that the D_g
/// add up to Der(A).
GradedDerivations graded_derivations(const Grading& gamma);

/// D_e only, which is far cheaper than the full decomposition.
DerivationAlgebra identity_derivations(const Grading& gamma);

enum class MapKind { Isomorphism, Equivalence, Neither };
std::string to_string(MapKind k);

struct GradedMapReport {
  MapKind kind = MapKind::Neither;
  std::map<GroupElement, GroupElement> gamma;  // support bijection
  std::optional<GroupHom> uab_map;             // U_ab(from) -> U_ab(to)
  std::string witness;
};

/// An equivalence re + i*im of a grading with itself, in the original
/// coordinates of the algebra.
struct WeylGenerator {
  std::string name;
  RatMatrix re;
  RatMatrix im;
};

/// phi = re + i*im, in the original coordinates of both gradings, which must
/// share the algebra. Throws NotAutomorphism when phi is not an automorphism.
GradedMapReport check_graded_map(const RatMatrix& re, const RatMatrix& im, const Grading& from, const Grading& to);
GradedMapReport check_graded_map(const RatMatrix& phi, const Grading& from, const Grading& to);

}  // namespace gradings
