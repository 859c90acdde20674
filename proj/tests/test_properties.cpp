#include <gtest/gtest.h>

#include <random>

#include "gen.hpp"
#include "writ/analyses.hpp"
#include "writ/error.hpp"
#include "writ/harness.hpp"
#include "writ/parser.hpp"

using namespace writ;

namespace {

constexpr Fuel kFuel{200'000};

std::vector<Term> sample_terms(std::uint64_t seed, int count, bool lists = true) {
  gen::TermGen gen(seed, lists);
  std::vector<Term> out;
  while (static_cast<int>(out.size()) < count) {
    const Term t = gen.nat(4);
    try {
      eval(signature_for(t), t, kFuel);
      out.push_back(t);
    } catch (const ArithmeticOverflow&) {
    } catch (const FuelExhausted&) {
    }
  }
  return out;
}

}  // namespace

TEST(Properties, DeterministicEvaluation) {
  for (const Term& t : sample_terms(1, 200)) {
    const Signature sig = signature_for(t);
    const EvalResult a = eval(sig, t, kFuel), b = eval(sig, t, kFuel);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.steps, b.steps);
  }
}

TEST(Properties, TypePreservation) {
  gen::TermGen gen(2);
  for (int i = 0; i < 200; ++i) {
    const Term t = i % 2 ? gen.nat(4) : gen.list(4);
    const Signature sig = signature_for(t);
    const Ty ty = typecheck(sig, t);
    try {
      const EvalResult r = eval(sig, t, kFuel);
      EXPECT_TRUE(r.value.is_value());
      EXPECT_EQ(typecheck(sig, r.value), ty) << t.to_string();
    } catch (const ArithmeticOverflow&) {
    } catch (const FuelExhausted&) {
    }
  }
}

TEST(Properties, OracleIrrelevance) {
  const OracleSpec oracles[] = {OracleSpec::identity(), OracleSpec::constant(5), OracleSpec::table({{0, 9}, {1, 3}})};
  for (const Term& t : sample_terms(3, 100)) {
    const EvalResult plain = eval(signature_for(t), t, kFuel);
    for (const auto& g : oracles) {
      const EvalResult r = eval_with_oracle(signature_for(t), t, g, kFuel);
      EXPECT_EQ(r.value, plain.value);
      EXPECT_EQ(r.steps, plain.steps);
      EXPECT_TRUE(r.queries.empty());
    }
  }
}

TEST(Properties, RuleCompleteness) {
  const Signature sig = bar_rec();
  std::vector<std::shared_ptr<const FunctionDecl>> decls;
  for (const auto& name : sig.function_names()) decls.push_back(sig.function(Symbol{name, std::nullopt}));
  for (const char* fam : {"rec", "fold"})
    for (const Ty& ix : {Ty::nat(), Ty::list(), parse_type("Nat -> Nat")}) decls.push_back(sig.function(Symbol{fam, ix}));

  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const auto& f = decls[i % decls.size()];
    ASSERT_TRUE(f);
    std::vector<Term> args;
    Ty ty = f->type;
    for (std::size_t k = 0; k < f->arity; ++k) {
      args.push_back(sample_value(ty.dom(), rng));
      ty = ty.cod();
    }
    EXPECT_EQ(matching_rules(*f, args), 1u) << f->symbol.display();
  }
}

TEST(Properties, JoinAbsorption) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> d(0, 1000);
  for (int i = 0; i < 200; ++i) {
    const SemVal a = SemVal::base(d(rng)), b = SemVal::base(d(rng));
    EXPECT_EQ(join(a, a).nat(), a.nat());
    EXPECT_GE(join(a, b).nat(), a.nat());
    EXPECT_EQ(join(a, b).nat(), join(b, a).nat());
    EXPECT_EQ(join(a, join(a, b)).nat(), join(a, b).nat());
  }
}

TEST(Properties, MonotoneMajorantIsMonotone) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::uint64_t> d(0, 50);
  std::vector<std::uint64_t> table(64);
  for (auto& x : table) x = d(rng);
  const auto g = [&table](std::uint64_t i) { return SemVal::base(table[i]); };
  for (int i = 0; i < 100; ++i) {
    std::uint64_t m = d(rng), m2 = d(rng);
    if (m > m2) std::swap(m, m2);
    EXPECT_LE(monotone_majorant(g, m).nat(), monotone_majorant(g, m2).nat());
    EXPECT_GE(monotone_majorant(g, m).nat(), table[m]);
  }
}

TEST(Properties, SemanticAgreement) {
  const Instantiation inst = continuity_inst(OracleSpec::identity());
  for (const Term& t : sample_terms(7, 150)) {
    const Signature sig = signature_for(t);
    const SemVal pure = pure_denote(sig, {}, t);
    const SemVal r = denote(sig, inst, {}, translate(sig, t));
    EXPECT_EQ(pure.nat(), r.second().nat()) << t.to_string();
    EXPECT_TRUE(carrier_list(r.first().carrier()).empty());
  }
}

TEST(Properties, ExactCostMatchesSteps) {
  for (const Term& t : sample_terms(8, 200)) {
    const Signature sig = signature_for(t);
    EXPECT_EQ(exact_cost(sig, t).predicted, eval(sig, t, kFuel).steps) << t.to_string();
  }
}

TEST(Properties, BoundDominatesSteps) {
  for (const Term& t : sample_terms(9, 300)) {
    std::vector<std::string> syms;
    collect_symbols(t, syms);
    if (std::count(syms.begin(), syms.end(), "rec[Nat]")) continue;
    const Signature sig = signature_for(t);
    EXPECT_TRUE(verify_bound(sig, t).passed()) << t.to_string();
  }
}

TEST(Properties, MajorantDominatesValue) {
  for (const Term& t : sample_terms(10, 200, false)) EXPECT_TRUE(verify_majorant(signature_for(t), t).passed()) << t.to_string();
}

TEST(Properties, ComposeAgreement) {
  const Instantiation inst = cost_exact_inst();
  const char* fs[] = {"fn x:Nat => x", "fn x:Nat => add x 2", "fn x:Nat => rec[Nat] x (fn n:Nat => fn p:Nat => succ p) x",
                      "(fn y:Nat => fn x:Nat => mul x y) 3"};
  for (const char* f : fs) {
    for (const Term& s : sample_terms(11, 20)) {
      const Term fn = parse_term(f);
      const Term app = Term::app(fn, s);
      const Signature sig = signature_for(app);
      const SemVal whole = denote(sig, inst, {}, translate(sig, app));
      const SemVal parts = compose(inst, denote(sig, inst, {}, translate(sig, fn)), denote(sig, inst, {}, translate(sig, s)));
      EXPECT_EQ(carrier_nat(whole.first().carrier()), carrier_nat(parts.first().carrier()));
      EXPECT_EQ(whole.second().nat(), parts.second().nat());
    }
  }
}
