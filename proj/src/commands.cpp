#include "gradings/commands.hpp"

#include <sstream>

#include "gradings/catalog.hpp"
#include "gradings/lieroot.hpp"

namespace gradings {

namespace {

Json components_json(const Grading& g) {
  Json out = Json::array();
  for (const auto& s : g.support()) out.push_back(Json{{"degree", to_json(s)}, {"dim", g.component_dim(s)}});
  return out;
}

std::string components_text(const Grading& g) {
  std::ostringstream os;
  for (const auto& s : g.support()) os << "  " << s.to_string() << "  dim " << g.component_dim(s) << "\n";
  return os.str();
}

Json summary_json(const std::string& name, const Grading& g) {
  return Json{{"grading", name},
              {"group", to_json(g.group())},
              {"dimension", g.dim()},
              {"support_size", g.support().size()},
              {"identity_dim", g.component_dim(g.group().zero())},
              {"components", components_json(g)}};
}

std::string summary_text(const std::string& name, const Grading& g) {
  std::ostringstream os;
  os << "grading " << name << " by " << g.group().to_string() << " on " << g.original().name() << " (dim " << g.dim()
     << "), " << g.support().size() << " components, identity component dim "
     << g.component_dim(g.group().zero()) << "\n";
  return os.str();
}

Json int_vector_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

std::string int_vector_text(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

std::vector<const NamedGrading*> selected(const Workspace& ws, const CommandOptions& opts, bool all_by_default) {
  std::vector<const NamedGrading*> out;
  if (opts.gradings.empty()) {
    if (all_by_default) {
      for (const auto& g : ws.gradings) out.push_back(&g);
      if (out.empty()) throw ReferenceError("the input declares no gradings");
    } else {
      out.push_back(&ws.grading(""));
    }
  } else {
    for (const auto& name : opts.gradings) out.push_back(&ws.grading(name));
  }
  return out;
}

// ---------------------------------------------------------------- commands

Report cmd_validate(const Workspace& ws, const CommandOptions& opts) {
  Report r;
  r.json = Json::array();
  std::vector<std::string> failures;
  for (const NamedGrading* ng : selected(ws, opts, true)) {
    const Grading& g = ng->grading;
    Json j = summary_json(ng->name, g);
    r.text += summary_text(ng->name, g) + components_text(g);
    Json checks = Json::array();
    for (const auto& a : ws.assertions) {
      if (!a.is_object() || a.value("grading", "") != ng->name) continue;
      auto check = [&](const std::string& key, const Json& actual) {
        if (!a.contains(key)) return;
        bool ok = a[key] == actual;
        checks.push_back(Json{{"assertion", key}, {"expected", a[key]}, {"actual", actual}, {"ok", ok}});
        r.text += "  assert " + key + " = " + a[key].dump() + ": " + (ok ? "ok" : "FAILED, got " + actual.dump()) + "\n";
        if (!ok) failures.push_back(ng->name + "." + key);
      };
      if (a.contains("uab_free_rank") || a.contains("uab_invariants")) {
        UabResult u = universal_abelian_group(g);
        Json inv = Json::array();
        for (const auto& d : u.group.invariants()) inv.push_back(to_json(d));
        check("uab_free_rank", u.group.free_rank());
        check("uab_invariants", inv);
      }
      if (a.contains("trank") || a.contains("almost_fine")) {
        AlmostFineReport af = is_almost_fine(g, opts.seed);
        check("trank", af.trank);
        check("almost_fine", af.almost_fine);
      }
      check("identity_dim", g.component_dim(g.group().zero()));
    }
    if (!checks.empty()) j["assertions"] = checks;
    r.json.push_back(j);
  }
  if (!failures.empty()) {
    std::string list;
    for (const auto& f : failures) list += (list.empty() ? "" : ", ") + f;
    throw ValidationError("assertions failed: " + list);
  }
  return r;
}

Report cmd_ugroup(const Workspace& ws, const CommandOptions& opts) {
  const NamedGrading& ng = *selected(ws, opts, false).front();
  UabResult u = universal_abelian_group(ng.grading);
  Report r;
  Json support = Json::array();
  std::ostringstream os;
  os << "U_ab(" << ng.name << ") = " << u.group.to_string() << "\n";
  for (std::size_t k = 0; k < u.support.size(); ++k) {
    support.push_back(Json{{"degree", to_json(u.support[k])}, {"iota", to_json(u.iota[k])}});
    os << "  " << u.support[k].to_string() << " -> " << u.iota[k].to_string() << "\n";
  }
  r.text = os.str();
  r.json = Json{{"grading", ng.name}, {"group", to_json(u.group)}, {"support", support}, {"alpha", to_json(u.alpha)}};
  return r;
}

Report cmd_der(const Workspace& ws, const CommandOptions& opts) {
  const NamedGrading& ng = *selected(ws, opts, false).front();
  GradedDerivations gd = graded_derivations(ng.grading);
  Report r;
  Json parts = Json::array();
  std::ostringstream os;
  os << "Der(" << ng.grading.original().name() << ") has dimension " << gd.der.dim() << ", D_e has dimension "
     << gd.d_e.dim() << "\n";
  for (const auto& s : gd.sigma) {
    parts.push_back(Json{{"degree", to_json(s)}, {"dim", gd.dim(s)}});
    os << "  D_" << s.to_string() << "  dim " << gd.dim(s) << "\n";
  }
  r.text = os.str();
  r.json = Json{{"grading", ng.name}, {"dim", gd.der.dim()}, {"identity_dim", gd.d_e.dim()}, {"parts", parts}};
  return r;
}

Report cmd_trank(const Workspace& ws, const CommandOptions& opts) {
  const NamedGrading& ng = *selected(ws, opts, false).front();
  ToralData td = toral_rank(ng.grading, opts.seed);
  Report r;
  r.text = "trank(" + ng.name + ") = " + std::to_string(td.trank) + (td.split ? "" : " (torus not split over Q)") +
           ", dim D_e = " + std::to_string(td.d_e.dim()) + "\n";
  r.json = Json{{"grading", ng.name}, {"trank", td.trank}, {"split", td.split}, {"d_e_dim", td.d_e.dim()}};
  return r;
}

Report cmd_almost_fine(const Workspace& ws, const CommandOptions& opts) {
  const NamedGrading& ng = *selected(ws, opts, false).front();
  AlmostFineReport af = is_almost_fine(ng.grading, opts.seed);
  Report r;
  r.text = "almost fine: " + std::string(yes_no(af.almost_fine)) + " (rank U_ab = " + std::to_string(af.uab_rank) +
           (af.almost_fine ? " = " : " != ") + "trank = " + std::to_string(af.trank) + ")\n";
  r.json = Json{{"grading", ng.name}, {"almost_fine", af.almost_fine}, {"uab_rank", af.uab_rank}, {"trank", af.trank}};
  if (af.d_e_dim) r.json["d_e_dim"] = *af.d_e_dim;
  return r;
}

Report cmd_refine(const Workspace& ws, const CommandOptions& opts) {
  const NamedGrading& ng = *selected(ws, opts, false).front();
  RefinementResult res = canonical_refinement(ng.grading, opts.seed);
  Report r;
  r.text = "canonical refinement of " + ng.name + " (trank " + std::to_string(res.trank) + ")\n" +
           summary_text(ng.name + "-canonical", res.refined) + components_text(res.refined);
  Json grading{{"name", ng.name + "-canonical"}};
  grading.update(to_json(res.refined, ng.algebra));
  r.json = Json{{"grading", ng.name},
                {"trank", res.trank},
                {"projection", to_json(res.projection)},
                {"refined", grading},
                {"components", components_json(res.refined)}};
  return r;
}

Report cmd_coarsen(const Workspace& ws, const CommandOptions& opts) {
  const NamedGrading& ng = *selected(ws, opts, false).front();
  CoarseningOptions co;
  co.universal_only = opts.universal_only;
  if (opts.cap) co.cap = opts.cap;
  co.weyl = ws.weyl_for(ng.name);
  co.seed = opts.seed;
  CoarseningReport rep = enumerate_af_coarsenings(ng.grading, co);
  Report r;
  std::ostringstream os;
  os << "U_ab(" << ng.name << ") = " << rep.uab.group.to_string() << ", criterion "
     << (rep.reductive_criterion ? "E meets Sigma trivially" : "direct test") << "\n"
     << rep.coarsenings.size() << " almost fine coarsenings in " << rep.orbits << " orbits under "
     << co.weyl.size() << " Weyl generators\n";
  Json list = Json::array();
  for (const auto& c : rep.coarsenings) {
    Json gens = Json::array();
    for (const auto& x : c.kernel.generators()) gens.push_back(to_json(x));
    list.push_back(Json{{"kernel", gens},
                        {"kernel_order", to_json(c.kernel.order())},
                        {"group", to_json(c.coarsening.group())},
                        {"support_size", c.coarsening.support().size()},
                        {"certificate", {{"almost_fine", c.certificate.almost_fine},
                                         {"uab_rank", c.certificate.uab_rank},
                                         {"trank", c.certificate.trank}}},
                        {"orbit", c.orbit},
                        {"representative", c.representative}});
    os << "  E = " << c.kernel.to_string() << "  -> " << c.coarsening.group().to_string() << ", "
       << c.coarsening.support().size() << " components, rank " << c.certificate.uab_rank << " = trank "
       << c.certificate.trank << ", orbit " << c.orbit << (c.representative ? " *" : "") << "\n";
  }
  Json sigma = Json::array();
  for (const auto& s : rep.sigma) sigma.push_back(to_json(s));
  r.text = os.str();
  r.json = Json{{"grading", ng.name},
                {"uab", to_json(rep.uab.group)},
                {"reductive_criterion", rep.reductive_criterion},
                {"sigma", sigma},
                {"orbits", rep.orbits},
                {"coarsenings", list}};
  return r;
}

Report cmd_induce(const Workspace& ws, const CommandOptions& opts) {
  const NamedGrading& ng = *selected(ws, opts, false).front();
  const NamedHom& h = ws.hom(opts.hom);
  if (!(h.hom.domain() == ng.grading.group()))
    throw ValidationError("homomorphism '" + h.name + "' has domain " + h.hom.domain().to_string() + ", grading '" +
                          ng.name + "' is by " + ng.grading.group().to_string());
  Grading out = induce(ng.grading, h.hom);
  Report r;
  r.text = summary_text(ng.name + "-" + h.name, out) + components_text(out);
  Json grading{{"name", ng.name + "-" + h.name}};
  grading.update(to_json(out, ng.algebra));
  r.json = Json{{"grading", ng.name}, {"hom", h.name}, {"induced", grading}, {"components", components_json(out)}};
  return r;
}

Report cmd_admissible(const Workspace& ws, const CommandOptions& opts) {
  const NamedGrading& ng = *selected(ws, opts, false).front();
  const NamedHom& h = ws.hom(opts.hom);
  UabResult u = universal_abelian_group(ng.grading);
  if (!(h.hom.domain() == u.group))
    throw ValidationError("homomorphism '" + h.name + "' must have domain U_ab = " + u.group.to_string());
  bool ok = is_admissible(h.hom, u);
  Report r;
  r.text = "admissible: " + std::string(yes_no(ok)) + "\n";
  r.json = Json{{"grading", ng.name}, {"hom", h.name}, {"admissible", ok}};
  return r;
}

Report cmd_classify(const Workspace& ws, const CommandOptions& opts) {
  if (opts.group.empty()) throw ValidationError("classify needs --group");
  FgAbGroup g = parse_group_spec(opts.group);
  std::vector<ClassificationSource> sources;
  for (const NamedGrading* ng : selected(ws, opts, true))
    sources.push_back({ng->name, ng->grading, ws.weyl_for(ng->name)});
  auto entries = classify_gradings(sources, g, opts.cap ? opts.cap : 1000000, opts.seed);
  Report r;
  std::ostringstream os;
  os << entries.size() << (opts.assert_weyl_complete ? " isomorphism classes" : " orbits under the supplied Weyl generators")
     << " of " << g.to_string() << "-gradings\n";
  if (!opts.assert_weyl_complete) os << "(classes may be split when the Weyl generators are incomplete)\n";
  Json list = Json::array();
  for (const auto& e : entries) {
    list.push_back(Json{{"source", sources[e.source].name},
                        {"alpha", to_json(e.alpha.matrix())},
                        {"orbit", e.orbit},
                        {"orbit_size", e.orbit_size},
                        {"components", components_json(e.induced)}});
    os << "  #" << e.orbit << " from " << sources[e.source].name << ", orbit size " << e.orbit_size << ":";
    for (const auto& s : e.induced.support()) os << " " << s.to_string() << ":" << e.induced.component_dim(s);
    os << "\n";
  }
  r.text = os.str();
  r.json = Json{{"group", to_json(g)}, {"complete", opts.assert_weyl_complete}, {"entries", list}};
  return r;
}

Report cmd_rootsys(const Workspace& ws, const CommandOptions& opts) {
  const NamedGrading& ng = *selected(ws, opts, false).front();
  RootSystemResult res = extract_root_system(ng.grading, opts.seed);
  const RootSystemReport& rep = res.report;
  Report r;
  std::ostringstream os;
  os << "root system of " << ng.name << ": " << rep.type << " (rank " << rep.rank << ", " << rep.roots.size()
     << " roots, dim H = " << res.weights.cartan.dim() << ")\n";
  Json roots = Json::array();
  for (std::size_t i = 0; i < rep.roots.size(); ++i) {
    std::size_t d = res.weights.space(rep.roots[i]).dim();
    roots.push_back(Json{{"coordinates", int_vector_json(rep.coordinates[i])}, {"dim", d}});
    os << "  " << int_vector_text(rep.coordinates[i]) << "  dim " << d << "\n";
  }
  std::size_t zero_dim = res.weights.space(RatVector(res.weights.cartan.dim(), 0)).dim();
  os << "  L(0) dim " << zero_dim << "\n";
  os << "  checks: strings " << yes_no(rep.strings_unbroken) << ", reflections " << yes_no(rep.reflection_closed)
     << ", integral " << yes_no(rep.integral) << ", irreducible " << yes_no(rep.irreducible) << "\n";
  r.text = os.str();
  r.json = Json{{"grading", ng.name},
                {"type", rep.type},
                {"rank", rep.rank},
                {"reduced", rep.reduced},
                {"cartan_dim", res.weights.cartan.dim()},
                {"zero_weight_dim", zero_dim},
                {"roots", roots},
                {"cartan_matrix", to_json(rep.cartan_matrix)},
                {"checks",
                 {{"spanning", rep.spanning},
                  {"strings_unbroken", rep.strings_unbroken},
                  {"reflection_closed", rep.reflection_closed},
                  {"integral", rep.integral},
                  {"irreducible", rep.irreducible}}}};
  return r;
}

Report cmd_root_graded(const Workspace& ws, const CommandOptions& opts) {
  const NamedGrading& ng = *selected(ws, opts, false).front();
  Grading fine = opts.refinement.empty() ? canonical_refinement(ng.grading, opts.seed).refined
                                         : ws.grading(opts.refinement).grading;
  RootGradedDecomposition d = root_graded_structure(ng.grading, fine, std::nullopt, opts.seed);
  Report r;
  std::ostringstream os;
  os << ng.name << " is " << d.phi.type << "-graded with grading subalgebra of type " << d.g_roots.type << " (dim "
     << d.g.dim() << ")\n";
  Json pieces = Json::array();
  for (const IsotypicPiece* p : {&d.a, &d.b, &d.c}) {
    Json degs = Json::array();
    for (const auto& md : p->degrees)
      degs.push_back(Json{{"t_degree", to_json(md.tdeg)}, {"degree", to_json(md.gdeg)}, {"dim", md.dim}});
    Json hw = nullptr;
    if (!p->highest_weight.empty())
      hw = int_vector_json(d.phi.coordinates[d.phi.index_of(p->highest_weight)]);
    pieces.push_back(Json{{"label", p->label},
                          {"highest_weight", hw},
                          {"module_dim", p->module_dim},
                          {"multiplicity", p->multiplicity},
                          {"degrees", degs}});
    if (p->multiplicity == 0) continue;
    os << "  " << p->label << ": module dim " << p->module_dim << " x multiplicity " << p->multiplicity;
    for (const auto& md : p->degrees) os << "  [" << md.gdeg.to_string() << ": " << md.dim << "]";
    os << "\n";
  }
  if (d.c_merged_into_a) os << "  C: merged into A (the natural module of B1 is the adjoint module)\n";
  os << "  D: dim " << d.d.dim() << "\n  identity component of the coordinate algebra: dim " << d.identity_dim << "\n";
  r.text = os.str();
  Json section = Json::array();
  for (const auto& u : d.section) section.push_back(to_json(u));
  r.json = Json{{"grading", ng.name},
                {"type", d.phi.type},
                {"subalgebra_type", d.g_roots.type},
                {"subalgebra_dim", d.g.dim()},
                {"uab", to_json(d.uab.group)},
                {"section", section},
                {"pieces", pieces},
                {"c_merged_into_a", d.c_merged_into_a},
                {"d_dim", d.d.dim()},
                {"identity_dim", d.identity_dim},
                {"conditions_verified", d.check.ok}};
  return r;
}

}  // namespace

std::vector<std::string> command_names() {
  return {"validate", "ugroup", "der", "trank", "almost-fine", "refine-canonical", "coarsen-enum",
          "induce", "admissible", "classify", "rootsys", "root-graded", "catalog"};
}

Report run_command(const std::string& command, const Workspace& ws, const CommandOptions& opts) {
  if (command == "validate") return cmd_validate(ws, opts);
  if (command == "ugroup") return cmd_ugroup(ws, opts);
  if (command == "der") return cmd_der(ws, opts);
  if (command == "trank") return cmd_trank(ws, opts);
  if (command == "almost-fine") return cmd_almost_fine(ws, opts);
  if (command == "refine-canonical") return cmd_refine(ws, opts);
  if (command == "coarsen-enum") return cmd_coarsen(ws, opts);
  if (command == "induce") return cmd_induce(ws, opts);
  if (command == "admissible") return cmd_admissible(ws, opts);
  if (command == "classify") return cmd_classify(ws, opts);
  if (command == "rootsys") return cmd_rootsys(ws, opts);
  if (command == "root-graded") return cmd_root_graded(ws, opts);
  throw ReferenceError("unknown command '" + command + "'");
}

Report catalog_command(const std::string& name) {
  Report r;
  if (name.empty()) {
    r.json = Json::array();
    for (const auto& n : catalog_names()) {
      CatalogEntry e = catalog(n);
      r.json.push_back(Json{{"name", n}, {"description", e.description}});
      r.text += n + "  " + e.description + "\n";
    }
    return r;
  }
  CatalogEntry e = catalog(name);
  Workspace ws;
  const std::string alg = e.algebra.name();
  ws.algebras.emplace_back(alg, e.algebra);
  ws.gradings.push_back({e.name, alg, e.grading});
  if (e.refinement) ws.gradings.push_back({e.name + "-refinement", alg, *e.refinement});
  for (const auto& w : e.weyl) ws.weyl.push_back({e.name, w});
  Json inv = Json::array();
  for (const auto& d : e.expected.uab_invariants) inv.push_back(to_json(d));
  ws.assertions.push_back(Json{{"grading", e.name},
                               {"uab_free_rank", e.expected.uab_free_rank},
                               {"uab_invariants", inv},
                               {"trank", e.expected.trank},
                               {"almost_fine", e.expected.almost_fine},
                               {"identity_dim", e.expected.identity_dim}});
  r.json = to_json(ws);
  r.text = r.json.dump(2) + "\n";
  return r;
}

FgAbGroup parse_group_spec(const std::string& text) {
  std::size_t start = text.find_first_not_of(" \t\n");
  if (start != std::string::npos && text[start] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("--group: ") + e.what());
    }
    return group_from_json(j, "--group");
  }
  std::size_t free_rank = 0;
  std::string torsion = text;
  auto plus = text.find('+');
  if (plus != std::string::npos) {
    std::string f = text.substr(plus + 1);
    torsion = text.substr(0, plus);
    if (f.rfind("Z^", 0) != 0) throw ParseError("--group: expected '+Z^r' after the invariants");
    try {
      free_rank = std::stoul(f.substr(2));
    } catch (const std::exception&) {
      throw ParseError("--group: bad free rank '" + f + "'");
    }
  }
  Json inv = Json::array();
  std::stringstream ss(torsion);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      long v = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      inv.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("--group: bad invariant '" + item + "'");
    }
  }
  return group_from_json(Json{{"free_rank", free_rank}, {"invariants", inv}}, "--group");
}

}  // namespace gradings
