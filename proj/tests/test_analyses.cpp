#include <gtest/gtest.h>

#include "writ/analyses.hpp"
#include "writ/error.hpp"
#include "writ/parser.hpp"

using namespace writ;

namespace {

using Args = std::span<const SemVal>;

SemVal constant_fn(std::uint64_t cost, std::uint64_t value) {
  return SemVal::fun([cost, value](const SemVal&) {
    return SemVal::pair(SemVal::eff(cost), SemVal::base(value));
  });
}

SemVal call(const Instantiation& inst, const std::string& f, std::vector<SemVal> args, std::optional<Ty> index = {}) {
  Budget b;
  return inst.func_interp(Symbol{f, index})(args, b);
}

}  // namespace

TEST(Continuity, RecAtZero) {
  const SemVal r = call(continuity_inst(OracleSpec::identity()), "rec",
                        {SemVal::base(4), constant_fn(0, 0), SemVal::base(0)}, Ty::nat());
  EXPECT_TRUE(carrier_list(r.first().carrier()).empty());
  EXPECT_EQ(r.second().nat(), 4u);
}

TEST(Continuity, Alpha) {
  const SemVal r = call(continuity_inst(OracleSpec::identity()), "alpha", {SemVal::base(4)});
  EXPECT_EQ(carrier_list(r.first().carrier()), (std::vector<std::uint64_t>{4}));
  EXPECT_EQ(r.second().nat(), 4u);
}

TEST(Modulus, Constant) {
  const ModulusReport m = modulus(parse_term("fn f:Nat->Nat => 7"), OracleSpec::constant(3));
  EXPECT_EQ(m.phi, 0u);
  EXPECT_TRUE(m.support.empty());
  EXPECT_EQ(m.value, 7u);
}

TEST(Modulus, SingleQuery) {
  const ModulusReport m = modulus(parse_term("fn f:Nat->Nat => f 0"), OracleSpec::identity());
  EXPECT_EQ(m.phi, 1u);
  EXPECT_EQ(m.support, (std::vector<std::uint64_t>{0}));
  EXPECT_EQ(m.value, 0u);
}

TEST(Modulus, NestedQuery) {
  const ModulusReport m = modulus(parse_term("fn f:Nat->Nat => f (f 2)"), OracleSpec::identity());
  EXPECT_EQ(m.phi, 3u);
  EXPECT_EQ(m.support, (std::vector<std::uint64_t>{2, 2}));
  EXPECT_EQ(m.value, 2u);
}

TEST(Modulus, RejectsWrongType) {
  EXPECT_THROW(modulus(parse_term("fn x:Nat => x"), OracleSpec::identity()), TypeMismatch);
}

TEST(ExactCost, RuleInterpretations) {
  const Instantiation inst = cost_exact_inst();
  const SemVal f0 = call(inst, "fold", {SemVal::base(3), constant_fn(0, 0), SemVal::base_list({})}, Ty::nat());
  EXPECT_EQ(carrier_nat(f0.first().carrier()), 1u);
  EXPECT_EQ(f0.second().nat(), 3u);
  const SemVal r0 = call(inst, "rec", {SemVal::base(8), constant_fn(0, 0), SemVal::base(0)}, Ty::nat());
  EXPECT_EQ(carrier_nat(r0.first().carrier()), 1u);
  EXPECT_EQ(r0.second().nat(), 8u);
}

TEST(ExactCost, BarTestBranch) {
  // omega = (2, 0) is below |a| = 1, so bar returns (4 + 2) (+) g a.
  const SemVal omega = SemVal::fun([](const SemVal&) {
    return SemVal::pair(SemVal::eff(std::uint64_t{2}), SemVal::base(0));
  });
  const SemVal g = SemVal::fun([](const SemVal& a) {
    return SemVal::pair(SemVal::eff(std::uint64_t{5}), SemVal::base(a.list().size()));
  });
  const SemVal r = call(cost_exact_inst(), "bar", {omega, g, constant_fn(0, 0), SemVal::base_list({9})});
  EXPECT_EQ(carrier_nat(r.first().carrier()), 11u);
  EXPECT_EQ(r.second().nat(), 1u);
}

TEST(ExactCost, Examples) {
  EXPECT_EQ(exact_cost(parse_term("5")).predicted, 0u);
  EXPECT_EQ(exact_cost(parse_term("(fn x:Nat => x) 0")).predicted, 1u);
  EXPECT_EQ(exact_cost(parse_term("rec[Nat] 0 (fn n:Nat => fn p:Nat => succ p) 3")).predicted, 10u);
}

TEST(Spector, ClosedFormConstantFive) {
  const SemVal omega = constant_fn(1, 5), g = constant_fn(1, 0);
  EXPECT_EQ(spector_bound(omega, g), 6u);
  EXPECT_EQ(spector_closed_form(omega, g), 78u);
  const SemVal phi = spector_phi(omega, g, {});
  EXPECT_EQ(carrier_nat(phi.first().carrier()), 78u);
  EXPECT_EQ(phi.second().nat(), 6u);
}

TEST(Spector, ClosedFormConstantZero) {
  const SemVal omega = constant_fn(2, 0), g = constant_fn(3, 7);
  EXPECT_EQ(spector_bound(omega, g), 1u);
  EXPECT_EQ(spector_closed_form(omega, g), 10u + 5u + 2u * 2u + 3u);
}

TEST(Spector, DivergentControl) {
  const SemVal omega = SemVal::fun([](const SemVal& f) {
    return SemVal::pair(SemVal::eff(std::uint64_t{1}), SemVal::base(1'000'000'000));
  });
  EXPECT_THROW(spector_closed_form(omega, constant_fn(1, 0), Fuel{1000}), FuelExhausted);
}

TEST(Bounded, Values) {
  const CostReport n = bounded_cost(parse_term("5"));
  EXPECT_EQ(n.predicted, 0u);
  EXPECT_EQ(n.semantic.nat(), 1u);
  const CostReport l = bounded_cost(parse_term("[1,2,3]"));
  EXPECT_EQ(l.predicted, 0u);
  EXPECT_EQ(l.semantic.nat(), 3u);
}

TEST(Bounded, Dominates) {
  const CostReport f = bounded_cost(parse_term("fold[Nat] 0 (fn n:Nat => fn p:Nat => succ p) [7,7]"));
  EXPECT_GE(f.predicted, 7u);
  EXPECT_GE(f.semantic.nat(), 1u);
  const CostReport a = bounded_cost(parse_term("add 2 3"));
  EXPECT_GE(a.predicted, 1u);
  EXPECT_GE(a.semantic.nat(), 1u);
}

TEST(Bounded, JoinOnNat) { EXPECT_EQ(join(SemVal::base(3), SemVal::base(5)).nat(), 5u); }

TEST(Bounded, RecursorUnsupported) {
  EXPECT_THROW(bounded_cost(parse_term("rec[Nat] 0 add 2")), UnsupportedSymbol);
}

TEST(Majorant, MonotoneMajorant) {
  const auto g = [](std::uint64_t i) { return SemVal::base(i); };
  EXPECT_EQ(monotone_majorant(g, 3).nat(), 3u);
  const auto zig = [](std::uint64_t i) { return SemVal::base(i % 2 ? 10 : 1); };
  for (std::uint64_t m = 0; m < 6; ++m) EXPECT_GE(monotone_majorant(zig, m).nat(), zig(m).nat());
}

TEST(Majorant, RecConstant) {
  const SemVal step = SemVal::fun([](const SemVal&) {
    return SemVal::pair(SemVal::eff(std::monostate{}), SemVal::fun([](const SemVal& p) {
                          return SemVal::pair(SemVal::eff(std::monostate{}), p);
                        }));
  });
  const SemVal r = call(majorizability_inst(), "rec", {SemVal::base(5), step, SemVal::base(3)}, Ty::nat());
  EXPECT_EQ(r.second().nat(), 5u);
}

TEST(Majorant, Examples) {
  EXPECT_EQ(majorant(parse_term("5")).nat(), 5u);
  EXPECT_EQ(majorant(parse_term("add 2 3")).nat(), 5u);
  EXPECT_GE(majorant(parse_term("rec[Nat] 1 (fn n:Nat => fn p:Nat => add p p) 3")).nat(), 8u);
}

TEST(Majorant, ListsUnsupported) { EXPECT_THROW(majorant(parse_term("len [1,2]")), UnsupportedSymbol); }
