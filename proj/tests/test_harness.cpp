#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "writ/harness.hpp"
#include "writ/mutations.hpp"
#include "writ/parser.hpp"

using namespace writ;

namespace {

Term T(const std::string& s) { return parse_term(s); }
const char* kRec3 = "rec[Nat] 0 (fn n:Nat => fn p:Nat => succ p) 3";

AnalysisOptions with(Instantiation inst) {
  AnalysisOptions o;
  o.inst = std::move(inst);
  return o;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("writ-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                                     "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
};

}  // namespace

TEST(VerifyExactCost, Pass) {
  EXPECT_TRUE(verify_exact_cost(system_t_list(), T("add 2 3")).passed());
  const VerifyReport r = verify_exact_cost(system_t(), T(kRec3));
  EXPECT_TRUE(r.passed()) << r.details;
  EXPECT_EQ(r.predicted, 10u);
  EXPECT_EQ(r.observed, 10u);
}

TEST(VerifyExactCost, DoubleChargedRecFails) {
  const VerifyReport r = verify_exact_cost(system_t(), T(kRec3), with(mutant_rec_double_charge()));
  EXPECT_EQ(r.status, VerifyReport::Status::Fail);
}

TEST(VerifyModulus, Pass) {
  const VerifyReport r = verify_modulus(system_t(), T("fn f:Nat->Nat => f (f 2)"), OracleSpec::identity(), {100, 7});
  EXPECT_TRUE(r.passed()) << r.details;
  EXPECT_EQ(r.trials, 100u);
  EXPECT_EQ(r.seed, 7u);
  const VerifyReport c = verify_modulus(system_t(), T("fn f:Nat->Nat => 7"), OracleSpec::constant(2));
  EXPECT_TRUE(c.passed()) << c.details;
}

TEST(VerifyModulus, SilentOracleFails) {
  const OracleSpec g = OracleSpec::identity();
  const VerifyReport r = verify_modulus(system_t(), T("fn f:Nat->Nat => f 0"), g, {}, with(mutant_alpha_silent(g)));
  EXPECT_EQ(r.status, VerifyReport::Status::Fail);
}

TEST(VerifyBound, Pass) {
  EXPECT_TRUE(verify_bound(system_t_list(), T("fold[Nat] 0 (fn n:Nat => fn p:Nat => succ p) [7,7]")).passed());
  const VerifyReport r = verify_bound(system_t_list(), T("[1,2,3]"));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.predicted, 0u);
}

TEST(VerifyBound, UnchargedFoldFails) {
  const VerifyReport r =
      verify_bound(system_t_list(), T("fold[Nat] 0 (fn n:Nat => fn p:Nat => succ p) [7,7]"), with(mutant_fold_uncharged()));
  EXPECT_EQ(r.status, VerifyReport::Status::Fail);
}

TEST(VerifyMajorant, Pass) {
  EXPECT_TRUE(verify_majorant(system_t_list(), T("add 2 3")).passed());
  EXPECT_TRUE(verify_majorant(system_t_list(), T("rec[Nat] 1 (fn n:Nat => fn p:Nat => add p p) 3")).passed());
}

TEST(VerifyMajorant, FlatSuccessorFails) {
  const VerifyReport r = verify_majorant(system_t(), T("succ (succ 0)"), with(mutant_succ_flat()));
  EXPECT_EQ(r.status, VerifyReport::Status::Fail);
}

TEST(VerifySpector, Instances) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"fn f:Nat->Nat => 5", "fn x:Nat => 0"},
      {"fn f:Nat->Nat => 0", "fn x:Nat => 4"},
      {"fn f:Nat->Nat => f 0", "fn x:Nat => 0"},
  };
  for (const auto& [w, b] : cases) {
    const VerifyReport r = verify_spector(T(w), T(b));
    EXPECT_TRUE(r.passed()) << w << " / " << b << ": " << r.details;
  }
}

TEST(VerifySpector, MatchesInstance) {
  const Term inst = spector_instance(T("fn f:Nat->Nat => 5"), T("fn x:Nat => 0"));
  auto parts = match_spector_instance(inst);
  ASSERT_TRUE(parts);
  EXPECT_EQ(parts->first, T("fn f:Nat->Nat => 5"));
  EXPECT_FALSE(match_spector_instance(T("add 1 2")));
}

TEST(ParseAnalyses, SplitsOutsideParentheses) {
  const auto reqs = parse_analyses({"analyses: cost, modulus(table:0=9/1=3), majorant", "other"});
  ASSERT_EQ(reqs.size(), 3u);
  EXPECT_EQ(reqs[1].name, "modulus");
  EXPECT_EQ(reqs[1].argument, "table:0=9/1=3");
  EXPECT_EQ(reqs[2].name, "majorant");
}

TEST(RunCorpus, Empty) {
  TempDir d;
  EXPECT_TRUE(run_corpus(d.path.string()).empty());
}

TEST(RunCorpus, IllTypedEntryIsIsolated) {
  TempDir d;
  d.write("a.wt", "-- analyses: cost,majorant\nadd 2 3\n");
  d.write("b.wt", "-- analyses: cost\n0 0\n");
  d.write("c.wt", "-- analyses: cost\n(fn x:Nat => x) 0\n");
  const auto reports = run_corpus(d.path.string());
  ASSERT_EQ(reports.size(), 4u);
  EXPECT_TRUE(reports[0].passed());
  EXPECT_TRUE(reports[1].passed());
  EXPECT_EQ(reports[2].term_id, "b");
  EXPECT_EQ(reports[2].status, VerifyReport::Status::Error);
  EXPECT_TRUE(reports[3].passed());
}

TEST(RunCorpus, ShippedTermsPass) {
  const auto reports = run_corpus(WRIT_CORPUS_DIR);
  ASSERT_FALSE(reports.empty());
  for (const auto& r : reports) EXPECT_TRUE(r.passed()) << r.term_id << " " << r.analysis << ": " << r.details;
}

TEST(Mutants, EachInstantiationHasOne) {
  const auto ms = all_mutants(OracleSpec::identity());
  std::set<std::string> analyses;
  for (const auto& m : ms) analyses.insert(m.analysis);
  EXPECT_EQ(analyses, (std::set<std::string>{"cost", "modulus", "bound", "majorant"}));
}
