#pragma once

// Finitely generated abelian groups in invariant-factor form.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gradings/exactla.hpp"

namespace gradings {

class GroupElement;

/// Z^r + Z_{d_1} + ... + Z_{d_k} with d_1 | d_2 | ... and every d_i >= 2.
/// Coordinates: free part first, then torsion.
class FgAbGroup {
 public:
  FgAbGroup();
  FgAbGroup(std::size_t free_rank, std::vector<Integer> invariants);

  static FgAbGroup free(std::size_t rank) { return FgAbGroup(rank, {}); }
  static FgAbGroup cyclic(long n);
  /// (Z_p)^k.
  static FgAbGroup elementary(long p, std::size_t k);
  static FgAbGroup trivial() { return FgAbGroup(); }

  std::size_t free_rank() const noexcept { return data_->free_rank; }
  const std::vector<Integer>& invariants() const noexcept { return data_->invariants; }
  std::size_t torsion_rank() const noexcept { return data_->invariants.size(); }
  /// Number of canonical generators, r + k.
  std::size_t ngens() const noexcept { return free_rank() + torsion_rank(); }
  bool is_finite() const noexcept { return free_rank() == 0; }
  /// Order of the group; throws PreconditionError when infinite.
  Integer order() const;
  Integer torsion_order() const;
  /// Modulus of coordinate i: 0 for free coordinates.
  Integer modulus(std::size_t i) const;

  IntVector reduce(IntVector coords) const;
  GroupElement element(IntVector coords) const;
  GroupElement zero() const;
  GroupElement generator(std::size_t i) const;
  /// All elements in mixed-radix order (finite groups only).
  std::vector<GroupElement> elements() const;

  /// Relation lattice of the canonical generators, one row per torsion factor.
  IntMatrix relation_rows() const;

  std::string to_string() const;

  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.data_ == b.data_ ||
           (a.free_rank() == b.free_rank() && a.invariants() == b.invariants());
  }

 private:
  struct Data {
    std::size_t free_rank = 0;
    std::vector<Integer> invariants;
  };
  std::shared_ptr<const Data> data_;
};

class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(FgAbGroup group, IntVector coords);

  const FgAbGroup& group() const noexcept { return group_; }
  const IntVector& coords() const noexcept { return coords_; }
  bool is_zero() const;
  /// Order of the element; 0 when it has infinite order.
  Integer order() const;

  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-(const GroupElement& o) const;
  GroupElement operator-() const;
  friend GroupElement operator*(const Integer& n, const GroupElement& g);

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.coords_ < b.coords_; }

  std::string to_string() const;

 private:
  FgAbGroup group_;
  IntVector coords_;
};

class Subgroup;

/// Homomorphism given by its matrix on canonical generators
/// (codomain.ngens rows, domain.ngens columns).
class GroupHom {
 public:
  GroupHom() = default;
  /// Throws ValidationError when the matrix does not respect the domain relations.
  GroupHom(FgAbGroup domain, FgAbGroup codomain, const IntMatrix& matrix);

  static GroupHom identity(const FgAbGroup& g);
  static GroupHom zero(const FgAbGroup& domain, const FgAbGroup& codomain);
  /// The homomorphism sending canonical generator i to images[i].
  static GroupHom from_images(const FgAbGroup& domain, const FgAbGroup& codomain,
                              const std::vector<GroupElement>& images);

  const FgAbGroup& domain() const noexcept { return domain_; }
  const FgAbGroup& codomain() const noexcept { return codomain_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  GroupElement operator()(const GroupElement& x) const;
  /// this after other.
  GroupHom compose(const GroupHom& other) const;

  Subgroup kernel() const;
  Subgroup image() const;
  bool is_injective() const;
  bool is_surjective() const;

  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.matrix_ == b.matrix_;
  }
  friend bool operator<(const GroupHom& a, const GroupHom& b) { return a.matrix_.data() < b.matrix_.data(); }

 private:
  FgAbGroup domain_;
  FgAbGroup codomain_;
  IntMatrix matrix_;
};

/// A subgroup held as the Hermite normal form of its preimage lattice in
/// Z^{ngens}, which contains the relation lattice of the owner. Equal
/// subgroups have identical lattices.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(FgAbGroup owner, const std::vector<GroupElement>& generators);

  static Subgroup trivial(const FgAbGroup& g) { return Subgroup(g, {}); }
  static Subgroup whole(const FgAbGroup& g);

  const FgAbGroup& owner() const noexcept { return owner_; }
  const IntMatrix& lattice() const noexcept { return lattice_; }
  /// Nonzero reduced rows of the lattice, as elements.
  std::vector<GroupElement> generators() const;

  bool contains(const GroupElement& x) const;
  bool contains(const Subgroup& other) const;
  bool is_trivial() const;
  bool is_finite() const;
  Integer order() const;

  /// Abstract structure of the subgroup with an embedding into the owner.
  struct Structure {
    FgAbGroup group;
    GroupHom embedding;
  };
  Structure structure() const;

  Subgroup operator+(const Subgroup& other) const;
  Subgroup intersect(const Subgroup& other) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.owner_ == b.owner_ && a.lattice_ == b.lattice_;
  }
  /// Canonical order: by order, then lexicographically by lattice.
  friend bool operator<(const Subgroup& a, const Subgroup& b);

  std::string to_string() const;

 private:
  friend class GroupHom;
  static Subgroup from_lattice(FgAbGroup owner, const IntMatrix& rows);

  FgAbGroup owner_;
  IntMatrix lattice_;
};

/// Z^n modulo the column span of `relations` (n rows).
struct Presentation {
  FgAbGroup group;
  IntMatrix projection;  // group.ngens x n
  IntMatrix lift;        // n x group.ngens, columns are preimages of generators
  GroupElement project(const IntVector& v) const;
};
Presentation group_from_presentation(std::size_t num_generators, const IntMatrix& relations);

struct TorsionSplit {
  Subgroup torsion;
  GroupHom to_free;  // G -> G / t(G), a free group
};
TorsionSplit torsion_and_free(const FgAbGroup& g);

struct Quotient {
  FgAbGroup group;
  GroupHom map;
};
Quotient quotient_by(const FgAbGroup& g, const Subgroup& e);

/// Complete, canonically sorted list of subgroups of a finite subgroup H
/// passing the predicate. Throws CapExceeded when |H| > cap.
std::vector<Subgroup> enumerate_subgroups(const Subgroup& h,
                                          const std::function<bool(const Subgroup&)>& keep = {},
                                          std::size_t cap = 10000);

/// All homomorphisms G -> H for finite H. Throws CapExceeded when the
/// number of candidate generator images exceeds cap.
std::vector<GroupHom> enumerate_homs(const FgAbGroup& g, const FgAbGroup& h, std::size_t cap = 1000000);

}  // namespace gradings
