#include <gtest/gtest.h>

#include "writ/error.hpp"
#include "writ/evaluator.hpp"
#include "writ/parser.hpp"

using namespace writ;

namespace {

EvalResult run(const std::string& src) {
  const Term t = parse_term(src);
  return eval(signature_for(t), t);
}

}  // namespace

TEST(Eval, ValueTakesNoSteps) {
  const EvalResult r = run("5");
  EXPECT_EQ(r.value, numeral(5));
  EXPECT_EQ(r.steps, 0u);
  EXPECT_TRUE(r.queries.empty());
}

TEST(Eval, SingleBeta) {
  const EvalResult r = run("(fn x:Nat => x) 0");
  EXPECT_EQ(r.value, numeral(0));
  EXPECT_EQ(r.steps, 1u);
}

TEST(Eval, RecursorCountsTenSteps) {
  const EvalResult r = run("rec[Nat] 0 (fn n:Nat => fn p:Nat => succ p) 3");
  EXPECT_EQ(r.value, numeral(3));
  EXPECT_EQ(r.steps, 10u);
}

TEST(Eval, BuiltinIsOneStep) {
  const EvalResult r = run("add 2 3");
  EXPECT_EQ(r.value, numeral(5));
  EXPECT_EQ(r.steps, 1u);
}

TEST(Eval, Fold) {
  const EvalResult r = run("fold[Nat] 0 add [7,7]");
  EXPECT_EQ(r.value, numeral(14));
  EXPECT_EQ(r.steps, 5u);
  const EvalResult s = run("fold[Nat] 0 (fn n:Nat => fn p:Nat => succ p) [7,7]");
  EXPECT_EQ(s.value, numeral(2));
  EXPECT_EQ(s.steps, 7u);
}

TEST(Eval, FuelExhaustion) {
  const Term t = parse_term("rec[Nat] 0 (fn n:Nat => fn p:Nat => succ p) 1000");
  EXPECT_THROW(eval(system_t(), t, Fuel{100}), FuelExhausted);
}

TEST(Eval, RejectsIllTyped) { EXPECT_THROW(eval(system_t(), parse_term("0 0")), TypeError); }

TEST(EvalWithOracle, SingleQuery) {
  const EvalResult r = eval_with_oracle(system_t(), parse_term("alpha 3"), OracleSpec::identity());
  EXPECT_EQ(r.value, numeral(3));
  EXPECT_EQ(r.steps, 1u);
  EXPECT_EQ(r.queries, (std::vector<std::uint64_t>{3}));
}

TEST(EvalWithOracle, NestedQueries) {
  const EvalResult r =
      eval_with_oracle(system_t(), parse_term("(fn f:Nat->Nat => f (f 2)) alpha"), OracleSpec::identity());
  EXPECT_EQ(r.value, numeral(2));
  EXPECT_EQ(r.queries, (std::vector<std::uint64_t>{2, 2}));
}

TEST(EvalWithOracle, UnusedOracle) {
  for (const auto& g : {OracleSpec::identity(), OracleSpec::constant(5), OracleSpec::table({{0, 9}})}) {
    const EvalResult r = eval_with_oracle(system_t(), parse_term("(fn f:Nat->Nat => 7) alpha"), g);
    EXPECT_EQ(r.value, numeral(7));
    EXPECT_TRUE(r.queries.empty());
  }
}
