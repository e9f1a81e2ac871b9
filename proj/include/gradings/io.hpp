#pragma once

// JSON formats for algebras, groups, gradings, homomorphisms and workspaces.

#include <string>
#include <vector>

#include <json.hpp>

#include "gradings/grading.hpp"

namespace gradings {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);
Json to_json(const Integer& z);
Json to_json(const RatMatrix& m);
Json to_json(const IntMatrix& m);
Json to_json(const FgAbGroup& g);
Json to_json(const GroupElement& x);
Json to_json(const GroupHom& h);
Json to_json(const Subspace& s);
Json to_json(const StructureAlgebra& a);
/// Grading file format with the algebra given by name.
Json to_json(const Grading& gamma, const std::string& algebra_name);

// Parsers take `where`, a path used in diagnostics such as
// "input.json: gradings[0].degrees[3]".
Rational rational_from_json(const Json& j, const std::string& where);
Integer integer_from_json(const Json& j, const std::string& where);
RatMatrix matrix_from_json(const Json& j, const std::string& where);
IntMatrix int_matrix_from_json(const Json& j, const std::string& where);
FgAbGroup group_from_json(const Json& j, const std::string& where);
GroupElement element_from_json(const FgAbGroup& g, const Json& j, const std::string& where);
StructureAlgebra algebra_from_json(const Json& j, const std::string& where);

struct NamedGrading {
  std::string name;
  std::string algebra;
  Grading grading;
};

struct NamedHom {
  std::string name;
  GroupHom hom;
};

struct NamedWeyl {
  std::string grading;
  WeylGenerator generator;
};

/// Algebras, gradings, homomorphisms, Weyl generators and assertions read
/// from one or more files. Names are unique across files.
struct Workspace {
  std::vector<std::pair<std::string, StructureAlgebra>> algebras;
  std::vector<NamedGrading> gradings;
  std::vector<NamedHom> homs;
  std::vector<NamedWeyl> weyl;
  Json assertions = Json::array();

  const StructureAlgebra& algebra(const std::string& name) const;
  /// Empty name selects the first grading.
  const NamedGrading& grading(const std::string& name) const;
  const NamedHom& hom(const std::string& name) const;
  std::vector<WeylGenerator> weyl_for(const std::string& grading) const;
};

/// Accepts a workspace document, a bare algebra (has "operations") or a
/// bare grading (has "degrees"). Throws ParseError, ReferenceError or
/// ValidationError with the offending location.
void merge_workspace(Workspace& ws, const Json& doc, const std::string& source);
Workspace parse_workspace_text(const std::string& text, const std::string& source);
/// "-" reads standard input.
Workspace parse_workspace(const std::vector<std::string>& paths);

Json to_json(const Workspace& ws);

}  // namespace gradings
