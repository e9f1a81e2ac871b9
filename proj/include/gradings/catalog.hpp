#pragma once

// Built-in examples.

#include <optional>
#include <string>
#include <vector>

#include "gradings/grading.hpp"

namespace gradings {

struct ExpectedFacts {
  std::size_t uab_free_rank = 0;
  std::vector<Integer> uab_invariants;
  std::size_t trank = 0;
  bool almost_fine = false;
  std::size_t identity_dim = 0;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  StructureAlgebra algebra;
  Grading grading;
  std::vector<WeylGenerator> weyl;
  ExpectedFacts expected;
  /// A proper refinement shipped with the example (b2-skew, b2-assoc).
  std::optional<Grading> refinement;
  /// Elements singled out by the example (a3-fine: the two values of g).
  std::vector<GroupElement> distinguished;
};

std::vector<std::string> catalog_names();
/// Throws ReferenceError for unknown names.
CatalogEntry catalog(const std::string& name);

/// sl_n with basis E_ij (i != j, row-major) then H_i = E_ii - E_{i+1,i+1}.
StructureAlgebra sl_algebra(std::size_t n);
/// M_n with basis E_ij at index i * n + j.
StructureAlgebra matrix_algebra(std::size_t n);
/// Coordinates of an n x n traceless matrix (row-major) in the sl_n basis.
RatVector sl_coordinates(std::size_t n, const RatVector& matrix);

}  // namespace gradings
