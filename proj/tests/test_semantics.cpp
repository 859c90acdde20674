#include <gtest/gtest.h>

#include "writ/analyses.hpp"
#include "writ/error.hpp"
#include "writ/parser.hpp"

using namespace writ;

namespace {

SemVal denote_src(const Instantiation& inst, const std::string& src, const Signature& sig) {
  return denote(sig, inst, {}, translate(sig, parse_term(src)));
}

}  // namespace

TEST(EffectTriples, Laws) {
  const EffectTriple c = EffectTriple::cost();
  EXPECT_EQ(carrier_nat(c.eps), 0u);
  EXPECT_EQ(carrier_nat(c.inc(std::uint64_t{4})), 5u);
  EXPECT_EQ(carrier_nat(c.com(std::uint64_t{1}, std::uint64_t{2}, std::uint64_t{3})), 6u);
  const EffectTriple q = EffectTriple::queries();
  EXPECT_TRUE(carrier_list(q.eps).empty());
  EXPECT_EQ(carrier_list(q.inc(std::vector<std::uint64_t>{3, 1})), (std::vector<std::uint64_t>{3, 1}));
  EXPECT_EQ(carrier_list(q.com(std::vector<std::uint64_t>{1}, std::vector<std::uint64_t>{}, std::vector<std::uint64_t>{2, 3})),
            (std::vector<std::uint64_t>{1, 2, 3}));
  const EffectTriple u = EffectTriple::unit();
  EXPECT_TRUE(std::holds_alternative<std::monostate>(u.com(u.eps, u.inc(u.eps), u.eps)));
}

TEST(Denote, CostOfNumeral) {
  const SemVal r = denote_src(cost_exact_inst(), "5", system_t());
  EXPECT_EQ(carrier_nat(r.first().carrier()), 0u);
  EXPECT_EQ(r.second().nat(), 5u);
}

TEST(Denote, ContinuityOfOracleCall) {
  const Signature sig = with_oracle(system_t(), OracleSpec::identity());
  const SemVal r = denote_src(continuity_inst(OracleSpec::identity()), "alpha 3", sig);
  EXPECT_EQ(carrier_list(r.first().carrier()), (std::vector<std::uint64_t>{3}));
  EXPECT_EQ(r.second().nat(), 3u);
}

TEST(Denote, MajorizabilityOfAdd) {
  const SemVal r = denote_src(majorizability_inst(), "add 2 3", system_t_list());
  EXPECT_TRUE(std::holds_alternative<std::monostate>(r.first().carrier()));
  EXPECT_EQ(r.second().nat(), 5u);
}

TEST(Denote, MissingInterpretation) {
  EXPECT_THROW(denote_src(continuity_inst(OracleSpec::identity()), "bar (fn f:Nat->Nat => 0) len (fn a:List => fn k:Nat->Nat => k 0) nil", bar_rec()),
               MissingInterpretation);
}

TEST(Compose, Cost) {
  const Instantiation inst = cost_exact_inst();
  const SemVal f = SemVal::pair(SemVal::eff(std::uint64_t{2}), SemVal::fun([](const SemVal& a) {
                                  return SemVal::pair(SemVal::eff(std::uint64_t{3}), SemVal::base(a.nat() + 1));
                                }));
  const SemVal r = compose(inst, f, SemVal::pair(SemVal::eff(std::uint64_t{4}), SemVal::base(5)));
  EXPECT_EQ(carrier_nat(r.first().carrier()), 9u);
  EXPECT_EQ(r.second().nat(), 6u);
}

TEST(Compose, Continuity) {
  const OracleSpec g = OracleSpec::table({{7, 40}});
  const Instantiation inst = continuity_inst(g);
  const SemVal f = SemVal::pair(SemVal::eff(std::vector<std::uint64_t>{}), SemVal::fun([g](const SemVal& n) {
                                  return SemVal::pair(SemVal::eff(std::vector<std::uint64_t>{n.nat()}),
                                                      SemVal::base(g(n.nat())));
                                }));
  const SemVal r = compose(inst, f, SemVal::pair(SemVal::eff(std::vector<std::uint64_t>{}), SemVal::base(7)));
  EXPECT_EQ(carrier_list(r.first().carrier()), (std::vector<std::uint64_t>{7}));
  EXPECT_EQ(r.second().nat(), 40u);
}

TEST(Compose, NeutralIdentity) {
  for (const Instantiation& inst :
       {cost_exact_inst(), continuity_inst(OracleSpec::identity()), majorizability_inst()}) {
    const auto eps = inst.effect.eps;
    const SemVal id = SemVal::pair(SemVal::eff(eps), SemVal::fun([eps](const SemVal& a) {
                                     return SemVal::pair(SemVal::eff(eps), a);
                                   }));
    const SemVal r = compose(inst, id, SemVal::pair(SemVal::eff(eps), SemVal::base(11)));
    EXPECT_EQ(carrier_to_string(r.first().carrier()), carrier_to_string(eps)) << inst.name;
    EXPECT_EQ(r.second().nat(), 11u);
  }
}

TEST(Join, Pointwise) {
  EXPECT_EQ(join(SemVal::base(3), SemVal::base(5)).nat(), 5u);
  const SemVal f = SemVal::fun([](const SemVal& a) { return SemVal::pair(SemVal::eff(std::uint64_t{1}), a); });
  const SemVal g = SemVal::fun([](const SemVal&) { return SemVal::pair(SemVal::eff(std::uint64_t{4}), SemVal::base(2)); });
  const SemVal h = join(f, g)(SemVal::base(7));
  EXPECT_EQ(carrier_nat(h.first().carrier()), 4u);
  EXPECT_EQ(h.second().nat(), 7u);
}

TEST(PureDenote, Examples) {
  EXPECT_EQ(pure_denote(system_t(), {}, parse_term("rec[Nat] 0 (fn n:Nat => fn p:Nat => succ p) 3")).nat(), 3u);
  EXPECT_EQ(pure_denote(system_t(), {}, parse_term("(fn f:Nat->Nat => f 0) alpha"), OracleSpec::constant(5)).nat(), 5u);
  EXPECT_EQ(pure_denote(system_t_list(), {}, parse_term("add 2 3")).nat(), 5u);
  EXPECT_EQ(pure_denote(system_t_list(), {}, parse_term("fold[List] nil (fn x:Nat => fn a:List => cons a x) [1,2]")).list(),
            (std::vector<std::uint64_t>{1, 2}));
}
