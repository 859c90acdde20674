#include <gtest/gtest.h>

#include "writ/error.hpp"
#include "writ/meta.hpp"
#include "writ/parser.hpp"

using namespace writ;

TEST(Lift, Arrow) {
  EXPECT_EQ(lift(parse_type("Nat -> Nat")),
            MetaType::arrow(MetaType::data("Nat"), MetaType::prod(MetaType::gamma(), MetaType::data("Nat"))));
  EXPECT_EQ(lift(parse_type("(Nat -> Nat) -> Nat")).to_string(), "(|Nat| -> gamma x |Nat|) -> gamma x |Nat|");
}

TEST(Translate, Variable) {
  const TyContext ctx = TyContext{}.extend("x", Ty::nat());
  EXPECT_EQ(translate(system_t(), ctx, Term::var("x")), MetaTerm::pair(MetaTerm::iota(), MetaTerm::var("x")));
}

TEST(Translate, NullaryConstructor) {
  EXPECT_EQ(translate(system_t(), Term::cons("zero")), MetaTerm::pair(MetaTerm::iota(), MetaTerm::cons("zero")));
}

TEST(Translate, Lambda) {
  const MetaTerm x = MetaTerm::pair(MetaTerm::iota(), MetaTerm::var("x"));
  const MetaTerm want = MetaTerm::pair(
      MetaTerm::iota(), MetaTerm::lam("x", MetaType::data("Nat"),
                                      MetaTerm::pair(MetaTerm::inc(MetaTerm::proj_l(x)), MetaTerm::proj_r(x))));
  EXPECT_EQ(translate(system_t(), parse_term("fn x:Nat => x")), want);
  EXPECT_EQ(want.to_string(), "(iota, \\x:|Nat|. (inc((iota, x).l), (iota, x).r))");
}

TEST(Translate, RejectsIllTyped) { EXPECT_THROW(translate(system_t(), parse_term("0 0")), TypeError); }

TEST(MetaTypecheck, Iota) { EXPECT_EQ(meta_typecheck(system_t(), MetaTerm::iota()), MetaType::gamma()); }

TEST(MetaTypecheck, ProjectionFromGamma) {
  EXPECT_THROW(meta_typecheck(system_t(), MetaTerm::proj_l(MetaTerm::iota())), MetaTypeMismatch);
}

TEST(MetaTypecheck, TranslationsAreWellTyped) {
  for (const char* src : {"5", "fn x:Nat => x", "rec[Nat] 0 (fn n:Nat => fn p:Nat => succ p) 3",
                          "fold[List] nil (fn x:Nat => fn a:List => cons a x) [1,2]",
                          "fn f:Nat->Nat => f (f 2)", "bar (fn f:Nat->Nat => 0) len (fn a:List => fn k:Nat->Nat => k 0) nil"}) {
    const Term t = parse_term(src);
    const Signature sig = signature_for(t);
    const MetaType want = MetaType::prod(MetaType::gamma(), lift(typecheck(sig, t)));
    EXPECT_EQ(meta_typecheck(sig, translate(sig, t)), want) << src;
  }
}

TEST(MetaTypecheck, DeepNumeralStaysFast) {
  const Term t = numeral(2000);
  EXPECT_EQ(meta_typecheck(system_t(), translate(system_t(), t)).to_string(), "gamma x |Nat|");
}

TEST(SharedPrinter, NamesRepeatedSubterms) {
  const std::string s = translate(system_t(), parse_term("(fn x:Nat => x) 0")).to_shared_string();
  EXPECT_NE(s.find("where @1 = (iota, x)"), std::string::npos) << s;
}
