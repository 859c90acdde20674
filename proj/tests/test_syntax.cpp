#include <gtest/gtest.h>

#include "writ/error.hpp"
#include "writ/parser.hpp"
#include "writ/signature.hpp"

using namespace writ;

namespace {

Ty type_of(const std::string& src, const Signature& sig = system_t_list()) { return typecheck(sig, parse_term(src)); }

}  // namespace

TEST(Typecheck, IdentityFunction) { EXPECT_EQ(type_of("fn x:Nat => x").to_string(), "Nat -> Nat"); }

TEST(Typecheck, Recursor) {
  EXPECT_EQ(type_of("rec[Nat]", system_t()), parse_type("Nat -> (Nat -> Nat -> Nat) -> Nat -> Nat"));
}

TEST(Typecheck, ApplyingANumeral) { EXPECT_THROW(type_of("0 0"), TypeMismatch); }

TEST(Typecheck, UnboundAndUndeclared) {
  EXPECT_THROW(type_of("x"), UnboundVariable);
  EXPECT_THROW(type_of("fold[Nat]", system_t()), UndeclaredSymbol);
}

TEST(Typecheck, Lists) {
  EXPECT_EQ(type_of("[1,2]"), Ty::list());
  EXPECT_EQ(type_of("fold[Nat] 0 add [7,7]"), Ty::nat());
}

TEST(Substitute, FreeVariable) { EXPECT_EQ(substitute(parse_term("x"), "x", numeral(0)), numeral(0)); }

TEST(Substitute, Shadowing) {
  const Term t = parse_term("fn x:Nat => x");
  EXPECT_EQ(substitute(t, "x", numeral(0)), t);
}

TEST(Substitute, UnderConstructor) { EXPECT_EQ(substitute(parse_term("succ x"), "x", numeral(2)), numeral(3)); }

TEST(MatchPattern, Successor) {
  const Pattern p = Pattern::cons("succ", {Pattern::var("z", Ty::nat())});
  const Term v[] = {numeral(3)};
  auto m = match_pattern(std::span(&p, 1), v);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->at("z"), numeral(2));
}

TEST(MatchPattern, ZeroAgainstOne) {
  const Pattern p = Pattern::cons("zero");
  const Term v[] = {numeral(1)};
  EXPECT_FALSE(match_pattern(std::span(&p, 1), v));
}

TEST(MatchPattern, ConsSplitsLastElement) {
  const Pattern p = Pattern::cons("cons", {Pattern::var("zs", Ty::list()), Pattern::var("z", Ty::nat())});
  const std::uint64_t xs[] = {1, 2};
  const Term v[] = {list_literal(xs)};
  auto m = match_pattern(std::span(&p, 1), v);
  ASSERT_TRUE(m);
  const std::uint64_t one[] = {1};
  EXPECT_EQ(m->at("zs"), list_literal(one));
  EXPECT_EQ(m->at("z"), numeral(2));
}

TEST(Values, Grammar) {
  EXPECT_TRUE(parse_term("3").is_value());
  EXPECT_TRUE(parse_term("fn x:Nat => x").is_value());
  EXPECT_TRUE(parse_term("add 2").is_value());
  EXPECT_FALSE(parse_term("add 2 3").is_value());
  EXPECT_FALSE(parse_term("(fn x:Nat => x) 0").is_value());
}

TEST(Parser, Errors) {
  EXPECT_THROW(parse_term("fn x => x"), ParseError);
  EXPECT_THROW(parse_term("(add 1"), ParseError);
  EXPECT_THROW(parse_term("[1, x]"), ParseError);
}

TEST(Parser, HeaderLines) {
  const SourceFile f = parse_source("-- analyses: cost,majorant\n-- note\n5\n");
  ASSERT_EQ(f.header.size(), 2u);
  EXPECT_EQ(f.header[0], "analyses: cost,majorant");
  EXPECT_EQ(f.term, numeral(5));
}

TEST(Parser, RoundTrip) {
  for (const char* src : {"fn x:Nat => add x 1", "rec[Nat -> Nat] (fn y:Nat => y) (fn n:Nat => fn k:Nat -> Nat => k) 2",
                          "fold[List] nil (fn x:Nat => fn a:List => cons a x) [1,2]"}) {
    const Term t = parse_term(src);
    EXPECT_EQ(parse_term(t.to_string()), t) << src;
  }
}
