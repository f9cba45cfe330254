#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "symtwo_cli/cli.hpp"

using nlohmann::json;
using namespace symtwo;
using namespace symtwo::cli;

namespace {

std::string job_file(const std::string& name) {
  std::ifstream in(std::string(SYMTWO_JOBS_DIR) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string first_error(const Outcome& o) {
  const json& errors = o.report.at("errors");
  return errors.empty() ? "" : errors[0].at("kind").get<std::string>();
}

struct ErrorCase {
  const char* command;
  std::string job;
  const char* kind;
  int exit_code;
};

}  // namespace

TEST(CliExitCodes, LibraryErrorKinds) {
  EXPECT_EQ(exit_code_for(ErrorKind::syntax), kInputError);
  EXPECT_EQ(exit_code_for(ErrorKind::not_normalized), kInputError);
  EXPECT_EQ(exit_code_for(ErrorKind::division_failure), kInputError);
  EXPECT_EQ(exit_code_for(ErrorKind::nonzero_residual), kNegative);
  EXPECT_EQ(exit_code_for(ErrorKind::precision), kPrecision);
  EXPECT_EQ(exit_code_for(ErrorKind::zero_series), kPrecision);
  EXPECT_EQ(exit_code_for(ErrorKind::precision_exhausted), kPrecision);
  EXPECT_EQ(exit_code_for(ErrorKind::inconclusive), kPrecision);
}

// Each documented failure, driven end to end through a job document.
TEST(CliExitCodes, EveryErrorIsReachable) {
  const ErrorCase cases[] = {
      {"closedness", R"j({"w": {"a": "z1^^2", "b": "0", "c": "1"}})j", "SyntaxError", 2},
      {"closedness", R"j({"w": {"a": "z1^z2", "b": "0", "c": "1"}})j", "ExponentNotScalar", 2},
      {"closedness", R"j({"w": {"a": "z1^(1/2)", "b": "0", "c": "1"}})j", "NotAUnit", 2},
      {"closedness", R"j({"w": {"a": "1/z2", "b": "0", "c": "1"}})j", "DivisionByNonUnit", 2},
      {"closedness", R"j({"w": {"a": "exp(1)", "b": "0", "c": "1"}})j", "NotRepresentable", 2},
      {"split", R"j({"w": {"a": "1", "b": "0", "c": "1"}, "pullback": {"z1": "z1+z2", "z2": "2*z1+2*z2"}})j",
       "SingularJacobian", 2},
      {"split", R"j({"w": {"a": "1", "b": "0", "c": "1"}, "pullback": {"z1": "1+z1", "z2": "z2"}})j", "ValuationError", 2},
      {"classify", R"j({"w": {"a": "z1", "b": "0", "c": "-1"}, "components": [{"h": "z1", "expect": 3}]})j",
       "DivisionFailure", 2},
      {"classify", R"j({"w": {"a": "1", "b": "0", "c": "z2^2-z1^3"}, "components": ["z2^2-z1^3"]})j",
       "UnsupportedComponent", 2},
      {"normal-form", R"j({"w": {"scale": "1", "u": "z1", "r": "z1^2"}})j", "NotALeafPresentation", 2},
      {"normal-form", job_file("degenerate_base_point.json"), "DegenerateBasePoint", 2},
      {"theorem26", R"j({"m": 1, "w": {"scale": "z2", "u": "z1", "r": "z1*(1+z1*z2)"}})j", "NotNormalized", 2},
      {"theorem26", R"j({"truncation": 4, "m": 8, "w": {"scale": "1", "u": "z1", "r": "z1*(1+z1^8*z2)"}})j",
       "PrecisionExhausted", 3},
      {"normal-form", R"j({"w": {"scale": "1", "u": "z1", "r": "z1"}})j", "ZeroSeries", 3},
      {"split", R"j({"w": {"a": "z2-z1^2", "b": "0", "c": "-1"}})j", "Inconclusive", 3},
      {"monodromy", R"j({"w": {"scale": "exp(z2^2)", "u": "z1", "r": "z1*(1+z2)"}})j", "NonzeroResidual", 1},
      {"split", "{not json", "InvalidInput", 2},
      {"split", R"j({"w": {"a": "1", "b": "0", "c": "1"}, "colour": 1})j", "InvalidInput", 2},
      {"split", R"j({"truncation": 3, "w": {"a": "1", "b": "0", "c": "1"}})j", "InvalidInput", 2},
      {"split", R"j({"truncation": 65, "w": {"a": "1", "b": "0", "c": "1"}})j", "InvalidInput", 2},
      {"split", R"j({})j", "InvalidInput", 2},
      {"decompose", R"j({"w": {"a": "1", "b": "1", "c": "0"}})j", "InvalidInput", 2},
      {"frobnicate", R"j({"w": {"a": "1", "b": "1", "c": "0"}})j", "InvalidInput", 2},
  };
  for (const ErrorCase& c : cases) {
    Outcome o = run_job(c.command, c.job);
    EXPECT_EQ(first_error(o), c.kind) << c.command << " " << c.job << "\n" << o.report.dump(2);
    EXPECT_EQ(o.exit_code, c.exit_code) << c.command << " " << c.job;
    EXPECT_EQ(o.report.at("exit_code"), c.exit_code);
  }
}

TEST(CliExitCodes, SyntaxErrorCarriesOffset) {
  Outcome o = run_job("closedness", R"j({"w": {"a": "1+*z1", "b": "0", "c": "1"}})j");
  ASSERT_EQ(first_error(o), "SyntaxError");
  EXPECT_EQ(o.report["errors"][0]["offset"], 2);
}

TEST(CliExitCodes, NegativeAnswers) {
  Outcome ns = run_job("split", job_file("non_split.json"));
  EXPECT_EQ(ns.exit_code, kNegative);
  EXPECT_EQ(ns.report["results"]["split"]["verdict"], "not_split");
  EXPECT_EQ(ns.report["results"]["split"]["witness"], "z1");
  EXPECT_EQ(ns.report["results"]["split"]["multiplicity"], 1);
  EXPECT_EQ(ns.report["results"]["split"]["suggested_cover_degree"], 2);
  EXPECT_EQ(ns.report["status"], "negative");

  Outcome nc = run_job("closedness", job_file("not_closed.json"));
  EXPECT_EQ(nc.exit_code, kNegative);
  EXPECT_EQ(nc.report["results"]["closedness"]["verdict"], "no");

  Outcome nsep = run_job("decompose", R"j({"w": {"a": "0", "b": "exp(z1*z2)", "c": "0"}})j");
  EXPECT_EQ(nsep.exit_code, kNegative);
  EXPECT_EQ(nsep.report["results"]["decompose"]["verdict"], "not_separable");

  Outcome rs = run_job("classify", R"j({"w": {"a": "z1", "b": "0", "c": "-1"}, "components": ["z1"]})j");
  EXPECT_EQ(rs.exit_code, kNegative);
  EXPECT_EQ(rs.report["results"]["components"][0]["geometry"], "undecided");
  EXPECT_EQ(rs.report["results"]["components"][0]["parity"], "N");
  EXPECT_EQ(rs.report["results"]["components"][0]["note"].get<std::string>().rfind("RequiresSplit", 0), 0u);

  Outcome nr = run_job("theorem26", R"j({"m": 0, "w": {"scale": "exp(z2^2)", "u": "z1", "r": "z1*(1+z2)"}})j");
  EXPECT_EQ(nr.exit_code, kNegative);
  EXPECT_FALSE(nr.report["results"]["theorem26"]["residual_zero"].get<bool>());
}

TEST(CliCommands, EssentialExample) {
  Outcome o = run_job("theorem26", job_file("essential.json"));
  ASSERT_EQ(o.exit_code, kOk) << o.report.dump(2);
  const json& t = o.report["results"]["theorem26"];
  EXPECT_EQ(t["m"], 1);
  EXPECT_EQ(t["k"], 0);
  EXPECT_EQ(t["alpha"], "0");
  EXPECT_EQ(t["f"]["coefficients"], json({{"-1", "1"}}));
  EXPECT_EQ(t["g"]["coefficients"], json({{"-1", "-1"}}));
  EXPECT_TRUE(t["residual_zero"].get<bool>());
  EXPECT_TRUE(o.report["results"]["normal_form"]["chart_verified"].get<bool>());
}

TEST(CliCommands, MonodromyExamples) {
  Outcome half = run_job("monodromy", job_file("monodromy_half.json"));
  ASSERT_EQ(half.exit_code, kOk) << half.report.dump(2);
  EXPECT_EQ(half.report["results"]["monodromy"]["alpha"], "1/2");
  EXPECT_EQ(half.report["results"]["monodromy"]["c"], "-1");
  EXPECT_EQ(half.report["results"]["monodromy"]["order"], "finite");
  EXPECT_EQ(half.report["results"]["monodromy"]["n"], 2);

  Outcome root2 = run_job("monodromy", job_file("monodromy_sqrt2.json"));
  ASSERT_EQ(root2.exit_code, kOk);
  EXPECT_EQ(root2.report["results"]["monodromy"]["order"], "infinite");
  EXPECT_TRUE(root2.report["results"]["monodromy"]["heuristic"].get<bool>());
  EXPECT_FALSE(root2.report["warnings"].empty());
}

TEST(CliCommands, MeromorphicPipeline) {
  Outcome o = run_job("classify", job_file("meromorphic.json"));
  ASSERT_EQ(o.exit_code, kOk) << o.report.dump(2);
  const json& leaf = o.report["results"]["leaf"];
  EXPECT_EQ(leaf["singularity"], "meromorphic");
  EXPECT_EQ(leaf["monodromy"]["order"], "trivial");
  EXPECT_FALSE(leaf["first_kind"].get<bool>());
  EXPECT_TRUE(leaf["in_breakdown"].get<bool>());
}

TEST(CliCommands, CoverSplitsNonSplitExample) {
  Outcome o = run_job("split", job_file("non_split_cover.json"));
  ASSERT_EQ(o.exit_code, kOk) << o.report.dump(2);
  const json& s = o.report["results"]["split"];
  EXPECT_EQ(s["verdict"], "split");
  EXPECT_TRUE(s["product_matches"].get<bool>());
  EXPECT_TRUE(s["factors"][0]["closed"].get<bool>());
  EXPECT_TRUE(s["factors"][1]["closed"].get<bool>());
}

TEST(CliCommands, AnalyzeCommonLeaf) {
  Outcome o = run_job("analyze", job_file("common_leaf.json"));
  ASSERT_EQ(o.exit_code, kOk) << o.report.dump(2);
  const json& r = o.report["results"];
  for (const char* key : {"coefficients", "discriminant", "rank", "closedness", "split", "core_discriminant"}) {
    EXPECT_TRUE(r.contains(key)) << key;
  }
}

TEST(CliCommands, ClassifyComponents) {
  Outcome o = run_job("classify", job_file("common_leaf.json"));
  ASSERT_EQ(o.exit_code, kOk) << o.report.dump(2);
  const json& comps = o.report["results"]["components"];
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0]["component"], "z1");
  EXPECT_EQ(comps[0]["geometry"], "C");
  EXPECT_EQ(comps[0]["parity"], "S");
}

TEST(CliCommands, DecomposeSeparable) {
  Outcome o = run_job("decompose", R"j({"w": {"a": "0", "b": "(1+z1)*exp(z2)", "c": "0"}})j");
  ASSERT_EQ(o.exit_code, kOk) << o.report.dump(2);
  EXPECT_EQ(o.report["results"]["decompose"]["verdict"], "separable");
  EXPECT_TRUE(o.report["results"]["decompose"]["brioschi_zero"].get<bool>());
}

TEST(CliReport, DeterministicAndRoundTrips) {
  for (const char* name : {"essential.json", "meromorphic.json", "non_split.json", "monodromy_half.json"}) {
    std::string job = job_file(name);
    std::string a = print_report(run_job("classify", job).report, Format::json);
    std::string b = print_report(run_job("classify", job).report, Format::json);
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(print_report(json::parse(a), Format::json), a) << name;
  }
}

TEST(CliReport, EchoesInputAndKeepsSchema) {
  Outcome o = run_job("closedness", job_file("not_closed.json"));
  EXPECT_EQ(o.report["input"], json::parse(job_file("not_closed.json")));
  for (const char* key : {"command", "input", "results", "warnings", "errors", "exit_code", "status"}) {
    EXPECT_TRUE(o.report.contains(key)) << key;
  }
}

TEST(CliReport, TextFormatFlattensPaths) {
  Outcome o = run_job("split", job_file("non_split.json"));
  std::string text = print_report(o.report, Format::text);
  EXPECT_NE(text.find("results.split.witness"), std::string::npos);
  EXPECT_NE(text.find("exit_code"), std::string::npos);
  EXPECT_EQ(text.find('{'), std::string::npos);
}

TEST(CliRun, ReadsStandardInput) {
  std::istringstream in(job_file("essential.json"));
  std::ostringstream out;
  int code = run({"theorem26"}, in, out);
  EXPECT_EQ(code, kOk);
  EXPECT_EQ(json::parse(out.str())["exit_code"], 0);
}

TEST(CliRun, ReadsFileAndTextFormat) {
  std::istringstream in;
  std::ostringstream out;
  int code = run({"split", "--input", std::string(SYMTWO_JOBS_DIR) + "/non_split.json", "--format", "text"}, in, out);
  EXPECT_EQ(code, kNegative);
  EXPECT_NE(out.str().find("not_split"), std::string::npos);
}

TEST(CliRun, BadArgumentsAreInputErrors) {
  std::istringstream in;
  std::ostringstream out;
  EXPECT_EQ(run({"frobnicate"}, in, out), kInputError);
  EXPECT_EQ(json::parse(out.str())["errors"][0]["kind"], "InvalidInput");

  std::ostringstream out2;
  EXPECT_EQ(run({"split", "--input", "/nonexistent/job.json"}, in, out2), kInputError);
}
