#pragma once

// Random closed terms of the list fragment, for property tests.

#include <random>
#include <string>
#include <vector>

#include "writ/syntax.hpp"

namespace writ::gen {

class TermGen {
 public:
  explicit TermGen(std::uint64_t seed, bool lists = true) : rng_(seed), lists_(lists) {}

  Term nat(int depth) { return nat_in({}, depth); }
  Term list(int depth) { return list_in({}, depth); }

 private:
  using Scope = std::vector<std::string>;

  std::uint64_t pick(std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(0, hi)(rng_); }

  std::string fresh() { return "v" + std::to_string(counter_++); }

  Term nat_in(const Scope& s, int depth) {
    if (depth <= 0 || pick(4) == 0) {
      if (!s.empty() && pick(1)) return Term::var(s[pick(s.size() - 1)]);
      return numeral(pick(4));
    }
    const std::uint64_t choices = lists_ ? 9 : 5;
    switch (pick(choices)) {
      case 0:
        return Term::app(Term::cons("succ"), nat_in(s, depth - 1));
      case 1: {
        const std::string x = fresh();
        Scope inner = s;
        inner.push_back(x);
        return Term::app(Term::lam(x, Ty::nat(), nat_in(inner, depth - 1)), nat_in(s, depth - 1));
      }
      case 2:
      case 3: {
        const std::string n = fresh(), p = fresh();
        Scope inner = s;
        inner.push_back(n);
        inner.push_back(p);
        const Term step = Term::lam(n, Ty::nat(), Term::lam(p, Ty::nat(), nat_in(inner, depth - 1)));
        return Term::apps(Term::func(Symbol{"rec", Ty::nat()}), {nat_in(s, depth - 1), step, numeral(pick(3))});
      }
      case 4:
        return Term::apps(Term::func("add"), {nat_in(s, depth - 1), nat_in(s, depth - 1)});
      case 5:
        return Term::apps(Term::func("lt"), {nat_in(s, depth - 1), nat_in(s, depth - 1)});
      case 6:
        return Term::apps(Term::func("mul"), {nat_in(s, depth - 1), numeral(pick(3))});
      case 7:
        return Term::app(Term::func("len"), list_in(s, depth - 1));
      default: {
        const std::string x = fresh(), a = fresh();
        Scope inner = s;
        inner.push_back(x);
        inner.push_back(a);
        const Term step = Term::lam(x, Ty::nat(), Term::lam(a, Ty::nat(), nat_in(inner, depth - 1)));
        return Term::apps(Term::func(Symbol{"fold", Ty::nat()}), {nat_in(s, depth - 1), step, list_in(s, depth - 1)});
      }
    }
  }

  Term list_in(const Scope& s, int depth) {
    if (depth <= 0 || pick(2) == 0) {
      std::vector<std::uint64_t> xs(pick(3));
      for (auto& x : xs) x = pick(5);
      return list_literal(xs);
    }
    if (pick(1)) return Term::apps(Term::cons("cons"), {list_in(s, depth - 1), nat_in(s, depth - 1)});
    const std::string x = fresh(), a = fresh();
    Scope inner = s;
    inner.push_back(x);
    const Term body = Term::apps(Term::cons("cons"), {Term::var(a), nat_in(inner, depth - 1)});
    const Term step = Term::lam(x, Ty::nat(), Term::lam(a, Ty::list(), body));
    return Term::apps(Term::func(Symbol{"fold", Ty::list()}), {Term::cons("nil"), step, list_in(s, depth - 1)});
  }

  std::mt19937_64 rng_;
  bool lists_;
  int counter_ = 0;
};

}  // namespace writ::gen
