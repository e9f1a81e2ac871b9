#include "gradings/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace gradings {

namespace {

std::string at(const std::string& where, const std::string& key) { return where + "." + key; }
std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const std::string& key, const std::string& where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) throw ParseError(at(where, key) + ": expected an array");
  return a;
}

std::string string_field(const Json& j, const std::string& key, const std::string& where) {
  const Json& s = field(j, key, where);
  if (!s.is_string()) throw ParseError(at(where, key) + ": expected a string");
  return s.get<std::string>();
}

std::size_t index_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ParseError(where + ": expected a nonnegative integer index");
  return j.get<std::size_t>();
}

template <class F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const IncompatibleDegrees& e) {
    throw ValidationError(where + ": " + e.what());
  } catch (const ShapeError& e) {
    throw ValidationError(where + ": " + e.what());
  } catch (const FlagViolation& e) {
    throw ValidationError(where + ": " + e.what());
  } catch (const NotASubgroup& e) {
    throw ValidationError(where + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------- writers

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const FgAbGroup& g) {
  Json inv = Json::array();
  for (const auto& d : g.invariants()) inv.push_back(to_json(d));
  return Json{{"free_rank", g.free_rank()}, {"invariants", inv}};
}

Json to_json(const GroupElement& x) {
  Json out = Json::array();
  for (const auto& c : x.coords()) out.push_back(to_json(c));
  return out;
}

Json to_json(const GroupHom& h) {
  return Json{{"domain", to_json(h.domain())}, {"codomain", to_json(h.codomain())}, {"matrix", to_json(h.matrix())}};
}

Json to_json(const Subspace& s) {
  Json cols = Json::array();
  for (std::size_t k = 0; k < s.dim(); ++k) {
    Json v = Json::array();
    for (const auto& x : s.vector(k)) v.push_back(to_json(x));
    cols.push_back(v);
  }
  return cols;
}

Json to_json(const StructureAlgebra& a) {
  Json ops = Json::array();
  for (const auto& op : a.ops()) {
    Json entries = Json::array();
    for (const auto& [inputs, out] : op.entries)
      for (const auto& [j, c] : out) {
        Json e = Json::array();
        for (auto i : inputs) e.push_back(i);
        e.push_back(j);
        e.push_back(to_json(c));
        entries.push_back(e);
      }
    ops.push_back(Json{{"name", op.name}, {"arity", op.arity}, {"entries", entries}});
  }
  const AlgebraFlags& f = a.flags();
  return Json{{"name", a.name()},
              {"dimension", a.dim()},
              {"flags", {{"lie", f.lie}, {"associative", f.associative}, {"aut_reductive", f.aut_reductive}}},
              {"operations", ops}};
}

Json to_json(const Grading& gamma, const std::string& algebra_name) {
  Json degrees = Json::array();
  for (const auto& d : gamma.degrees()) degrees.push_back(to_json(d));
  Json out{{"algebra", algebra_name}, {"group", to_json(gamma.group())}, {"degrees", degrees}};
  if (!(gamma.basis_change() == RatMatrix::identity(gamma.dim()))) out["basis_change"] = to_json(gamma.basis_change());
  return out;
}

// ---------------------------------------------------------------- parsers

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ParseError(where + ": expected a fraction string such as \"-3/4\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) == 0) return z;
  }
  throw ParseError(where + ": expected an integer");
}

RatMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a matrix as a list of rows");
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) throw ParseError(at(where, i) + ": expected a row");
    RatVector row;
    for (std::size_t k = 0; k < j[i].size(); ++k) row.push_back(rational_from_json(j[i][k], at(at(where, i), k)));
    if (!rows.empty() && row.size() != rows.front().size()) throw ParseError(at(where, i) + ": ragged matrix");
    rows.push_back(row);
  }
  return RatMatrix::from_rows(rows);
}

IntMatrix int_matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a matrix as a list of rows");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) throw ParseError(at(where, i) + ": expected a row");
    IntVector row;
    for (std::size_t k = 0; k < j[i].size(); ++k) row.push_back(integer_from_json(j[i][k], at(at(where, i), k)));
    if (!rows.empty() && row.size() != rows.front().size()) throw ParseError(at(where, i) + ": ragged matrix");
    rows.push_back(row);
  }
  return IntMatrix::from_rows(rows);
}

FgAbGroup group_from_json(const Json& j, const std::string& where) {
  const Json& fr = field(j, "free_rank", where);
  std::size_t free_rank = index_from_json(fr, at(where, "free_rank"));
  std::vector<Integer> inv;
  const Json& ij = array_field(j, "invariants", where);
  for (std::size_t i = 0; i < ij.size(); ++i) {
    Integer d = integer_from_json(ij[i], at(at(where, "invariants"), i));
    if (d < 2) throw ValidationError(at(at(where, "invariants"), i) + ": invariants must be at least 2");
    if (i > 0 && d % inv.back() != 0)
      throw ValidationError(at(where, "invariants") + ": invariants must form a divisibility chain");
    inv.push_back(d);
  }
  return FgAbGroup(free_rank, inv);
}

GroupElement element_from_json(const FgAbGroup& g, const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an integer vector");
  if (j.size() != g.ngens())
    throw ValidationError(where + ": element has " + std::to_string(j.size()) + " coordinates, group " +
                          g.to_string() + " needs " + std::to_string(g.ngens()));
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from_json(j[i], at(where, i)));
  return g.element(v);
}

StructureAlgebra algebra_from_json(const Json& j, const std::string& where) {
  std::string name = string_field(j, "name", where);
  std::size_t dim = index_from_json(field(j, "dimension", where), at(where, "dimension"));
  AlgebraFlags flags;
  if (j.contains("flags")) {
    const Json& f = j["flags"];
    if (!f.is_object()) throw ParseError(at(where, "flags") + ": expected an object");
    for (const auto& [key, value] : f.items()) {
      if (!value.is_boolean()) throw ParseError(at(at(where, "flags"), key) + ": expected a boolean");
      if (key == "lie") flags.lie = value.get<bool>();
      else if (key == "associative") flags.associative = value.get<bool>();
      else if (key == "aut_reductive") flags.aut_reductive = value.get<bool>();
      else throw ParseError(at(at(where, "flags"), key) + ": unknown flag");
    }
  }
  std::vector<MultilinearOp> ops;
  const Json& oj = array_field(j, "operations", where);
  for (std::size_t k = 0; k < oj.size(); ++k) {
    const std::string ow = at(at(where, "operations"), k);
    MultilinearOp op;
    op.name = string_field(oj[k], "name", ow);
    op.arity = index_from_json(field(oj[k], "arity", ow), at(ow, "arity"));
    if (op.arity == 0) throw ValidationError(at(ow, "arity") + ": arity must be positive");
    const Json& ej = array_field(oj[k], "entries", ow);
    for (std::size_t e = 0; e < ej.size(); ++e) {
      const std::string ew = at(at(ow, "entries"), e);
      if (!ej[e].is_array() || ej[e].size() != op.arity + 2)
        throw ParseError(ew + ": expected " + std::to_string(op.arity) + " inputs, an output index and a coefficient");
      IndexTuple inputs;
      for (std::size_t i = 0; i < op.arity; ++i) inputs.push_back(index_from_json(ej[e][i], at(ew, i)));
      std::size_t out = index_from_json(ej[e][op.arity], at(ew, op.arity));
      for (std::size_t i : inputs)
        if (i >= dim) throw ValidationError(ew + ": index " + std::to_string(i) + " out of range");
      if (out >= dim) throw ValidationError(ew + ": index " + std::to_string(out) + " out of range");
      op.add(inputs, out, rational_from_json(ej[e][op.arity + 1], at(ew, op.arity + 1)));
    }
    ops.push_back(op);
  }
  return located(where, [&] { return build_algebra(name, dim, ops, flags); });
}

// ---------------------------------------------------------------- workspaces

const StructureAlgebra& Workspace::algebra(const std::string& name) const {
  for (const auto& [n, a] : algebras)
    if (n == name) return a;
  throw ReferenceError("unknown algebra '" + name + "'");
}

const NamedGrading& Workspace::grading(const std::string& name) const {
  if (gradings.empty()) throw ReferenceError("the input declares no gradings");
  if (name.empty()) return gradings.front();
  for (const auto& g : gradings)
    if (g.name == name) return g;
  throw ReferenceError("unknown grading '" + name + "'");
}

const NamedHom& Workspace::hom(const std::string& name) const {
  if (homs.empty()) throw ReferenceError("the input declares no homomorphisms");
  if (name.empty()) return homs.front();
  for (const auto& h : homs)
    if (h.name == name) return h;
  throw ReferenceError("unknown homomorphism '" + name + "'");
}

std::vector<WeylGenerator> Workspace::weyl_for(const std::string& grading) const {
  std::vector<WeylGenerator> out;
  for (const auto& w : weyl)
    if (w.grading == grading) out.push_back(w.generator);
  return out;
}

namespace {

void add_algebra(Workspace& ws, const Json& j, const std::string& where) {
  StructureAlgebra a = algebra_from_json(j, where);
  for (const auto& [n, _] : ws.algebras)
    if (n == a.name()) throw ValidationError(at(where, "name") + ": duplicate algebra '" + n + "'");
  ws.algebras.emplace_back(a.name(), a);
}

void add_grading(Workspace& ws, const Json& j, const std::string& where, const std::string& default_name) {
  std::string name = j.contains("name") ? string_field(j, "name", where) : default_name;
  for (const auto& g : ws.gradings)
    if (g.name == name) throw ValidationError(where + ": duplicate grading '" + name + "'");
  const Json& aj = field(j, "algebra", where);
  std::string algebra_name;
  if (aj.is_string()) {
    algebra_name = aj.get<std::string>();
    try {
      ws.algebra(algebra_name);
    } catch (const ReferenceError&) {
      throw ReferenceError(at(where, "algebra") + ": unknown algebra '" + algebra_name + "'");
    }
  } else {
    add_algebra(ws, aj, at(where, "algebra"));
    algebra_name = ws.algebras.back().first;
  }
  const StructureAlgebra& a = ws.algebra(algebra_name);
  FgAbGroup g = group_from_json(field(j, "group", where), at(where, "group"));
  const Json& dj = array_field(j, "degrees", where);
  if (dj.size() != a.dim())
    throw ValidationError(at(where, "degrees") + ": " + std::to_string(dj.size()) + " degrees for an algebra of dimension " +
                          std::to_string(a.dim()));
  std::vector<GroupElement> degrees;
  for (std::size_t i = 0; i < dj.size(); ++i) degrees.push_back(element_from_json(g, dj[i], at(at(where, "degrees"), i)));
  RatMatrix p;
  if (j.contains("basis_change")) {
    p = matrix_from_json(j["basis_change"], at(where, "basis_change"));
    if (p.rows() != a.dim() || p.cols() != a.dim())
      throw ValidationError(at(where, "basis_change") + ": expected a square matrix of size " + std::to_string(a.dim()));
  }
  Grading gamma = located(where, [&] { return validate_grading(a, g, degrees, p); });
  ws.gradings.push_back({name, algebra_name, gamma});
}

void add_hom(Workspace& ws, const Json& j, const std::string& where) {
  std::string name = string_field(j, "name", where);
  FgAbGroup d = group_from_json(field(j, "domain", where), at(where, "domain"));
  FgAbGroup c = group_from_json(field(j, "codomain", where), at(where, "codomain"));
  IntMatrix m = int_matrix_from_json(field(j, "matrix", where), at(where, "matrix"));
  GroupHom h = located(at(where, "matrix"), [&] { return GroupHom(d, c, m); });
  ws.homs.push_back({name, h});
}

void add_weyl(Workspace& ws, const Json& j, const std::string& where) {
  NamedWeyl w;
  w.grading = string_field(j, "grading", where);
  const NamedGrading* g = nullptr;
  for (const auto& x : ws.gradings)
    if (x.name == w.grading) g = &x;
  if (!g) throw ReferenceError(at(where, "grading") + ": unknown grading '" + w.grading + "'");
  w.generator.name = j.contains("name") ? string_field(j, "name", where) : "w" + std::to_string(ws.weyl.size());
  w.generator.re = matrix_from_json(field(j, "re", where), at(where, "re"));
  const std::size_t n = g->grading.dim();
  w.generator.im = j.contains("im") ? matrix_from_json(j["im"], at(where, "im")) : RatMatrix(n, n);
  for (const auto* m : {&w.generator.re, &w.generator.im})
    if (m->rows() != n || m->cols() != n)
      throw ValidationError(where + ": Weyl generator matrices must be " + std::to_string(n) + " x " + std::to_string(n));
  ws.weyl.push_back(w);
}

}  // namespace

void merge_workspace(Workspace& ws, const Json& doc, const std::string& source) {
  if (!doc.is_object()) throw ParseError(source + ": expected a JSON object at top level");
  if (doc.contains("operations")) {
    add_algebra(ws, doc, source);
    return;
  }
  if (doc.contains("degrees")) {
    add_grading(ws, doc, source, "grading" + std::to_string(ws.gradings.size()));
    return;
  }
  for (const auto& [key, _] : doc.items())
    if (key != "algebras" && key != "gradings" && key != "homs" && key != "weyl" && key != "assertions")
      throw ParseError(source + ": unknown top-level field '" + key + "'");
  if (doc.contains("algebras")) {
    const Json& a = array_field(doc, "algebras", source);
    for (std::size_t i = 0; i < a.size(); ++i) add_algebra(ws, a[i], at(at(source, "algebras"), i));
  }
  if (doc.contains("gradings")) {
    const Json& g = array_field(doc, "gradings", source);
    for (std::size_t i = 0; i < g.size(); ++i)
      add_grading(ws, g[i], at(at(source, "gradings"), i), "grading" + std::to_string(ws.gradings.size()));
  }
  if (doc.contains("homs")) {
    const Json& h = array_field(doc, "homs", source);
    for (std::size_t i = 0; i < h.size(); ++i) add_hom(ws, h[i], at(at(source, "homs"), i));
  }
  if (doc.contains("weyl")) {
    const Json& w = array_field(doc, "weyl", source);
    for (std::size_t i = 0; i < w.size(); ++i) add_weyl(ws, w[i], at(at(source, "weyl"), i));
  }
  if (doc.contains("assertions")) {
    const Json& a = array_field(doc, "assertions", source);
    for (const auto& x : a) ws.assertions.push_back(x);
  }
}

Workspace parse_workspace_text(const std::string& text, const std::string& source) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
  Workspace ws;
  merge_workspace(ws, doc, source);
  return ws;
}

Workspace parse_workspace(const std::vector<std::string>& paths) {
  Workspace ws;
  for (const auto& path : paths) {
    std::string text;
    if (path == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
      std::ifstream in(path);
      if (!in) throw ParseError(path + ": cannot open file");
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    const std::string source = path == "-" ? "<stdin>" : path;
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ParseError(source + ": " + e.what());
    }
    merge_workspace(ws, doc, source);
  }
  return ws;
}

Json to_json(const Workspace& ws) {
  Json algebras = Json::array(), gradings = Json::array(), homs = Json::array(), weyl = Json::array();
  for (const auto& [_, a] : ws.algebras) algebras.push_back(to_json(a));
  for (const auto& g : ws.gradings) {
    Json j{{"name", g.name}};
    j.update(to_json(g.grading, g.algebra));
    gradings.push_back(j);
  }
  for (const auto& h : ws.homs) {
    Json j{{"name", h.name}};
    j.update(to_json(h.hom));
    homs.push_back(j);
  }
  for (const auto& w : ws.weyl) {
    Json j{{"name", w.generator.name}, {"grading", w.grading}, {"re", to_json(w.generator.re)}};
    if (!w.generator.im.is_zero()) j["im"] = to_json(w.generator.im);
    weyl.push_back(j);
  }
  Json out{{"algebras", algebras}, {"gradings", gradings}};
  if (!homs.empty()) out["homs"] = homs;
  if (!weyl.empty()) out["weyl"] = weyl;
  if (!ws.assertions.empty()) out["assertions"] = ws.assertions;
  return out;
}

}  // namespace gradings
