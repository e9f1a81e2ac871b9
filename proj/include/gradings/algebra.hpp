#pragma once

// Finite-dimensional algebras given by structure tensors.

#include <map>
#include <string>
#include <vector>

#include "gradings/exactla.hpp"

namespace gradings {

using SparseVec = std::map<std::size_t, Rational>;
using IndexTuple = std::vector<std::size_t>;

/// op(e_{i_1}, ..., e_{i_k}) = sum_j c_j e_j, stored only for nonzero outputs.
struct MultilinearOp {
  std::string name;
  std::size_t arity = 2;
  std::map<IndexTuple, SparseVec> entries;

  void add(const IndexTuple& inputs, std::size_t output, const Rational& coeff);
  /// Value on basis vectors (empty map when zero).
  const SparseVec& on_basis(const IndexTuple& inputs) const;
  RatVector apply(const std::vector<RatVector>& args, std::size_t dim) const;
};

struct AlgebraFlags {
  bool lie = false;
  bool associative = false;
  /// User assertion that Aut(A) is reductive; set automatically for
  /// semisimple Lie algebras.
  bool aut_reductive = false;
};

class StructureAlgebra {
 public:
  StructureAlgebra() = default;
  StructureAlgebra(std::string name, std::size_t dim, std::vector<MultilinearOp> ops, AlgebraFlags flags)
      : name_(std::move(name)), dim_(dim), ops_(std::move(ops)), flags_(flags) {}

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<MultilinearOp>& ops() const noexcept { return ops_; }
  const AlgebraFlags& flags() const noexcept { return flags_; }
  bool is_lie() const noexcept { return flags_.lie; }

  /// Throws FlagViolation unless the algebra carries the lie flag.
  void require_lie(const std::string& context) const;
  RatVector bracket(const RatVector& x, const RatVector& y) const;
  /// Matrix of y -> [x, y].
  RatMatrix ad(const RatVector& x) const;
  RatMatrix ad_basis(std::size_t i) const;

  /// Same algebra in the basis given by the columns of p.
  StructureAlgebra change_basis(const RatMatrix& p, const std::string& new_name = "") const;

 private:
  std::string name_;
  std::size_t dim_ = 0;
  std::vector<MultilinearOp> ops_;
  AlgebraFlags flags_;
};

/// Validates indices and verifies every asserted flag exactly; sets
/// aut_reductive when the algebra is a semisimple Lie algebra.
StructureAlgebra build_algebra(std::string name, std::size_t dim, std::vector<MultilinearOp> ops, AlgebraFlags flags);

/// Algebra on the subspace spanned by the columns of `basis`, which must be
/// closed under every operation. Flags are re-verified.
StructureAlgebra subalgebra(const StructureAlgebra& a, const RatMatrix& basis, const std::string& name,
                            AlgebraFlags flags);

/// The Lie algebra (x, y) -> op(x, y) - op(y, x) of binary operation `op_index`.
StructureAlgebra commutator_algebra(const StructureAlgebra& a, std::size_t op_index = 0, const std::string& name = "");

/// Leibniz system solver. `allowed(r, c)` restricts the unknown entries
/// D(r, c) (entry r of D e_c); an empty mask allows all. Returns a basis of
/// solutions as n x n matrices.
std::vector<RatMatrix> solve_derivations(const StructureAlgebra& a, const std::vector<Subspace>& preserved,
                                         const std::vector<std::vector<char>>& allowed = {});

struct DerivationAlgebra {
  std::vector<RatMatrix> basis;
  /// Span of the flattened basis in Q^{n*n}.
  Subspace space;
  /// Commutator structure on `basis`.
  StructureAlgebra lie;

  std::size_t dim() const noexcept { return basis.size(); }
  RatVector coordinates(const RatMatrix& d) const;
  RatMatrix element(const RatVector& coords) const;
};

DerivationAlgebra make_derivation_algebra(std::vector<RatMatrix> derivations, const std::string& name);
DerivationAlgebra derivation_algebra(const StructureAlgebra& a, const std::vector<Subspace>& preserved = {});

/// {x : [x, s] = 0 for all s in S}.
Subspace centralizer(const StructureAlgebra& a, const Subspace& s);

struct KillingReport {
  RatMatrix gram;
  bool nondegenerate = false;
  bool semisimple = false;
};
KillingReport killing_form(const StructureAlgebra& a);

/// Absolute simplicity of a semisimple Lie algebra: the centroid (maps
/// commuting with every ad x) is one-dimensional.
bool is_simple(const StructureAlgebra& a);

}  // namespace gradings
