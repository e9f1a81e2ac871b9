#include <gtest/gtest.h>

#include <map>

#include "gradings/catalog.hpp"
#include "gradings/commands.hpp"

using namespace gradings;

namespace {

const char* kSl2 = R"({
  "algebras": [{"name": "sl2", "dimension": 3, "flags": {"lie": true},
                "operations": [{"name": "bracket", "arity": 2,
                                "entries": [[0, 1, 2, "1"], [0, 2, 0, "-2"], [1, 0, 2, "-1"],
                                            [1, 2, 1, "2"], [2, 0, 0, "2"], [2, 1, 1, "-2"]]}]}],
  "gradings": [{"name": "cartan", "algebra": "sl2", "group": {"free_rank": 1, "invariants": []},
                "degrees": [[1], [-1], [0]]}],
  "homs": [{"name": "mod2", "domain": {"free_rank": 1, "invariants": []},
            "codomain": {"free_rank": 0, "invariants": [2]}, "matrix": [[1]]}]
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return s.replace(pos, from.size(), to);
}

template <class E>
std::string message_of(const std::string& text) {
  try {
    parse_workspace_text(text, "ws.json");
  } catch (const E& e) {
    return e.what();
  }
  ADD_FAILURE() << "expected an error";
  return {};
}

Workspace catalog_workspace(const std::string& name) {
  return parse_workspace_text(catalog_command(name).json.dump(), name);
}

}  // namespace

TEST(ParseWorkspace, ValidSl2) {
  Workspace ws = parse_workspace_text(kSl2, "ws.json");
  ASSERT_EQ(ws.algebras.size(), 1u);
  ASSERT_EQ(ws.gradings.size(), 1u);
  EXPECT_EQ(ws.algebra("sl2").dim(), 3u);
  EXPECT_EQ(ws.grading("").grading.support().size(), 3u);
  EXPECT_EQ(ws.hom("mod2").hom.codomain().order(), 2);
}

TEST(ParseWorkspace, DanglingAlgebraReference) {
  std::string msg = message_of<ReferenceError>(replace(kSl2, R"("algebra": "sl2")", R"("algebra": "sl3")"));
  EXPECT_NE(msg.find("gradings[0].algebra"), std::string::npos) << msg;
  EXPECT_NE(msg.find("sl3"), std::string::npos) << msg;
}

TEST(ParseWorkspace, IncompatibleDegreeTableNamesTheProduct) {
  std::string msg = message_of<ValidationError>(replace(kSl2, "[[1], [-1], [0]]", "[[1], [1], [0]]"));
  EXPECT_NE(msg.find("gradings[0]"), std::string::npos) << msg;
  EXPECT_NE(msg.find("bracket(e0, e1)"), std::string::npos) << msg;
}

TEST(ParseWorkspace, SyntaxAndSchemaErrors) {
  std::string msg = message_of<ParseError>("{\n  \"algebras\": [,]\n}");
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  msg = message_of<ParseError>(replace(kSl2, R"("homs")", R"("homz")"));
  EXPECT_NE(msg.find("homz"), std::string::npos) << msg;
  msg = message_of<ValidationError>(replace(kSl2, "[[1], [-1], [0]]", "[[1], [-1]]"));
  EXPECT_NE(msg.find("degrees"), std::string::npos) << msg;
  msg = message_of<ValidationError>(replace(kSl2, R"("matrix": [[1]])", R"("matrix": [[1, 0]])"));
  EXPECT_NE(msg.find("homs[0].matrix"), std::string::npos) << msg;
}

TEST(ParseWorkspace, DuplicateNamesAcrossFiles) {
  Workspace ws = parse_workspace_text(kSl2, "a.json");
  Json again = Json::parse(kSl2);
  again.erase("algebras");
  again.erase("homs");
  EXPECT_THROW(merge_workspace(ws, again, "b.json"), ValidationError);
  again["gradings"][0]["name"] = "cartan2";
  merge_workspace(ws, again, "b.json");
  EXPECT_EQ(ws.gradings.size(), 2u);
}

TEST(ParseWorkspace, BareAlgebraAndGradingDocuments) {
  Json doc = Json::parse(kSl2);
  Workspace ws;
  merge_workspace(ws, doc["algebras"][0], "alg.json");
  merge_workspace(ws, doc["gradings"][0], "grading.json");
  EXPECT_EQ(ws.grading("cartan").grading.dim(), 3u);
}

TEST(Catalog, WorkspaceRoundTripAndAssertions) {
  for (const auto& name : catalog_names()) {
    Report r = catalog_command(name);
    Workspace ws = parse_workspace_text(r.json.dump(), name);
    EXPECT_EQ(to_json(ws), r.json) << name;
    EXPECT_NO_THROW(run_command("validate", ws, {})) << name;
  }
}

TEST(Catalog, ExpectedSizes) {
  Workspace b2 = catalog_workspace("b2-skew");
  EXPECT_EQ(b2.grading("b2-skew").grading.dim(), 10u);
  EXPECT_EQ(b2.grading("b2-skew").grading.group().order(), 8);
  Workspace a3 = catalog_workspace("a3-fine");
  EXPECT_EQ(a3.grading("a3-fine").grading.dim(), 15u);
  EXPECT_EQ(a3.grading("a3-fine").grading.group().order(), 16);
  Workspace c2 = catalog_workspace("cartan-sl2");
  EXPECT_EQ(c2.grading("").grading.group().free_rank(), 1u);
  EXPECT_THROW(catalog_command("no-such-entry"), Error);
}

TEST(Catalog, FailedAssertionIsAValidationError) {
  Json doc = catalog_command("cartan-sl2").json;
  doc["assertions"][0]["trank"] = 2;
  Workspace ws = parse_workspace_text(doc.dump(), "x");
  try {
    run_command("validate", ws, {});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("cartan-sl2.trank"), std::string::npos);
    EXPECT_EQ(e.exit_code(), 1);
  }
}

TEST(Commands, DocumentedExamples) {
  Report af = run_command("almost-fine", catalog_workspace("a3-fine"), {});
  EXPECT_EQ(af.json["almost_fine"], true);
  EXPECT_EQ(af.json["uab_rank"], 0);
  EXPECT_EQ(af.json["trank"], 0);
  EXPECT_EQ(af.text, "almost fine: true (rank U_ab = 0 = trank = 0)\n");

  EXPECT_EQ(run_command("trank", catalog_workspace("b2-skew"), {}).json["trank"], 0);
  EXPECT_EQ(run_command("rootsys", catalog_workspace("sl3-involution"), {}).json["type"], "BC1");
}

TEST(Commands, DeterministicForFixedSeed) {
  for (const std::string command : {"refine-canonical", "rootsys", "root-graded", "coarsen-enum"}) {
    Workspace ws = catalog_workspace(command == "coarsen-enum" ? "a3-fine" : "sl3-involution");
    CommandOptions opts;
    opts.seed = 77;
    EXPECT_EQ(run_command(command, ws, opts).json.dump(), run_command(command, ws, opts).json.dump()) << command;
    EXPECT_EQ(run_command(command, ws, opts).text, run_command(command, ws, opts).text) << command;
  }
}

TEST(Commands, InduceAgainstReducedDegrees) {
  Workspace ws = parse_workspace_text(kSl2, "ws.json");
  CommandOptions opts;
  opts.hom = "mod2";
  Report r = run_command("induce", ws, opts);
  // Degrees 1, -1, 0 reduce mod 2 to 1, 1, 0.
  std::map<std::string, int> dims;
  for (const auto& c : r.json["components"]) dims[c["degree"].dump()] = c["dim"];
  EXPECT_EQ(dims, (std::map<std::string, int>{{"[0]", 1}, {"[1]", 2}}));

  EXPECT_THROW(run_command("induce", ws, CommandOptions{{}, {}, "nope"}), ReferenceError);
}

TEST(Commands, Admissible) {
  Workspace ws = parse_workspace_text(kSl2, "ws.json");
  CommandOptions opts;
  opts.hom = "mod2";
  Report r = run_command("admissible", ws, opts);
  EXPECT_TRUE(r.json["admissible"].is_boolean());
  EXPECT_EQ(r.json["admissible"], is_admissible(ws.hom("mod2").hom, universal_abelian_group(ws.grading("").grading)));
}

TEST(Commands, ClassifyNeedsGroupAndReportsOrbits) {
  Workspace ws = catalog_workspace("cartan-sl2");
  EXPECT_THROW(run_command("classify", ws, {}), ValidationError);
  CommandOptions opts;
  opts.group = "2";
  Report r = run_command("classify", ws, opts);
  // Z_2-gradings of sl2 induced from the Cartan grading: trivial and the one with a 2-dim odd part.
  EXPECT_EQ(r.json["entries"].size(), 2u);
  EXPECT_NE(r.text.find("orbits under the supplied Weyl generators"), std::string::npos);
  opts.assert_weyl_complete = true;
  EXPECT_NE(run_command("classify", ws, opts).text.find("isomorphism classes"), std::string::npos);
}

TEST(Commands, UnknownCommandAndMissingGrading) {
  Workspace ws = catalog_workspace("cartan-sl2");
  EXPECT_THROW(run_command("frobnicate", ws, {}), ReferenceError);
  EXPECT_THROW(run_command("trank", ws, CommandOptions{{"missing"}}), ReferenceError);
  EXPECT_EQ(command_names().size(), 13u);
}

TEST(Commands, ExitCodeFamilies) {
  EXPECT_EQ(NonSplitError("x").exit_code(), 2);
  EXPECT_EQ(CapExceeded("x").exit_code(), 3);
  EXPECT_EQ(AxiomFailure("x").exit_code(), 4);
  Workspace ws = catalog_workspace("cartan-sl3");
  CommandOptions opts;
  opts.group = "2,2";
  opts.cap = 3;
  try {
    run_command("classify", ws, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.exit_code(), 3) << e.what();
  }
}

TEST(GroupSpec, Forms) {
  EXPECT_EQ(parse_group_spec("2,2"), FgAbGroup::elementary(2, 2));
  EXPECT_EQ(parse_group_spec("2+Z^1"), parse_group_spec(R"({"free_rank": 1, "invariants": [2]})"));
  EXPECT_EQ(parse_group_spec("+Z^2").free_rank(), 2u);
  EXPECT_THROW(parse_group_spec("2,x"), ParseError);
  EXPECT_THROW(parse_group_spec("2+Q^1"), ParseError);
  EXPECT_THROW(parse_group_spec("{bad"), ParseError);
}
