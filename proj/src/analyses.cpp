#include "writ/analyses.hpp"

#include <algorithm>
#include <set>

#include "writ/error.hpp"
#include "writ/meta.hpp"

namespace writ {

namespace {

using Args = std::span<const SemVal>;
using C = SemVal::Carrier;

constexpr std::uint64_t kMaxNat = std::uint64_t{1} << 62;

std::uint64_t nat_sum(std::uint64_t a, std::uint64_t b) {
  if (a > kMaxNat - std::min(b, kMaxNat)) throw ArithmeticOverflow();
  return a + b;
}

SemVal padded(const EffectTriple& eff, const std::vector<std::uint64_t>& xs) {
  const C step = step_effect(eff);
  return SemVal::fun([xs, step](const SemVal& i) {
    return SemVal::pair(SemVal::eff(step), SemVal::base(i.nat() < xs.size() ? xs[i.nat()] : 0));
  });
}

// Exact bar recursion: (4 + omega_0(a^)) (+) (g a  or  h a o (eps, lambda n. 1 (+) bar(a*n))).
struct ExactBar {
  EffectTriple eff;
  SemVal omega, g, h;
  Budget* budget;

  SemVal run(const std::vector<std::uint64_t>& a) const {
    budget->tick();
    const C one = step_effect(eff);
    const SemVal test = omega(padded(eff, a));
    const C pre = eff.com(seq(eff, seq(eff, one, one), seq(eff, one, one)), test.first().carrier(), eff.eps);
    if (test.second().nat() < a.size()) return charge(eff, pre, g(SemVal::base_list(a)));
    return charge(eff, pre, descend(a));
  }

  // h a o (eps, lambda n. 1 (+) bar(a*n))
  SemVal descend(const std::vector<std::uint64_t>& a) const {
    const ExactBar self = *this;
    const SemVal k = SemVal::fun([self, a](const SemVal& n) {
      auto next = a;
      next.push_back(n.nat());
      return charge(self.eff, step_effect(self.eff), self.run(next));
    });
    const SemVal ha = h(SemVal::base_list(a));
    const SemVal r = ha.second()(k);
    return SemVal::pair(SemVal::eff(eff.com(ha.first().carrier(), eff.eps, r.first().carrier())), r.second());
  }
};

SemVal compose_eff(const EffectTriple& eff, const SemVal& f, const SemVal& a) {
  const SemVal r = f.second()(a.second());
  return SemVal::pair(SemVal::eff(eff.com(f.first().carrier(), a.first().carrier(), r.first().carrier())),
                      r.second());
}

// Interpretations shared by every instantiation whose semantic domains are
// exact (naturals denote themselves, lists denote their elements).
FuncInterp exact_style(const EffectTriple& eff, const Symbol& sym, bool with_bar) {
  const std::string& f = sym.name;
  const C one = step_effect(eff);
  auto ret = [one](SemVal v) { return SemVal::pair(SemVal::eff(one), std::move(v)); };

  if (f == "rec")
    return [eff, one](Args a, Budget& b) {
      SemVal acc = SemVal::pair(SemVal::eff(one), a[0]);
      for (std::uint64_t i = 0; i < a[2].nat(); ++i) {
        b.tick();
        acc = charge(eff, one, compose_eff(eff, a[1](SemVal::base(i)), acc));
      }
      return acc;
    };
  if (f == "fold")
    return [eff, one](Args a, Budget& b) {
      SemVal acc = SemVal::pair(SemVal::eff(one), a[0]);
      for (std::uint64_t x : a[2].list()) {
        b.tick();
        acc = charge(eff, one, compose_eff(eff, a[1](SemVal::base(x)), acc));
      }
      return acc;
    };
  if (f == "add") return [ret](Args a, Budget&) { return ret(SemVal::base(nat_sum(a[0].nat(), a[1].nat()))); };
  if (f == "mul")
    return [ret](Args a, Budget&) {
      const auto m = a[0].nat(), n = a[1].nat();
      if (m != 0 && n > kMaxNat / m) throw ArithmeticOverflow();
      return ret(SemVal::base(m * n));
    };
  if (f == "lt") return [ret](Args a, Budget&) { return ret(SemVal::base(a[0].nat() < a[1].nat() ? 0 : 1)); };
  if (f == "len") return [ret](Args a, Budget&) { return ret(SemVal::base(a[0].list().size())); };
  if (f == "ext")
    return [ret](Args a, Budget&) {
      const auto& xs = a[0].list();
      const auto n = a[1].nat();
      return ret(SemVal::base(n < xs.size() ? xs[n] : 0));
    };
  if (!with_bar) return nullptr;
  if (f == "bar") return [eff](Args a, Budget& b) { return ExactBar{eff, a[0], a[1], a[2], &b}.run(a[3].list()); };
  if (f == "bar1")
    return [eff, one](Args a, Budget& b) {
      const ExactBar bar{eff, a[0], a[1], a[2], &b};
      if (a[4].nat() == 0) return charge(eff, one, a[1](a[3]));
      return charge(eff, one, bar.descend(a[3].list()));
    };
  return nullptr;
}

SemVal exact_constructor(const std::string& c, Args a) {
  if (c == "zero") return SemVal::base(0);
  if (c == "succ") return SemVal::base(nat_sum(a[0].nat(), 1));
  if (c == "nil") return SemVal::base_list({});
  if (c == "cons") {
    auto xs = a[0].list();
    xs.push_back(a[1].nat());
    return SemVal::base_list(std::move(xs));
  }
  throw MissingInterpretation(c, "exact");
}

}  // namespace

// ---------------------------------------------------------------------------
// Instantiations

Instantiation continuity_inst(OracleSpec g) {
  Instantiation inst;
  inst.name = "continuity";
  inst.effect = EffectTriple::queries();
  inst.cons_interp = exact_constructor;
  const EffectTriple eff = inst.effect;
  inst.func_interp = [eff, g](const Symbol& sym) -> FuncInterp {
    if (sym.name == "alpha")
      return [g](Args a, Budget&) {
        const auto n = a[0].nat();
        return SemVal::pair(SemVal::eff(std::vector<std::uint64_t>{n}), SemVal::base(g(n)));
      };
    return exact_style(eff, sym, false);
  };
  return inst;
}

Instantiation cost_exact_inst(std::optional<OracleSpec> g) {
  Instantiation inst;
  inst.name = "exact-cost";
  inst.effect = EffectTriple::cost();
  inst.cons_interp = exact_constructor;
  const EffectTriple eff = inst.effect;
  inst.func_interp = [eff, g](const Symbol& sym) -> FuncInterp {
    if (sym.name == "alpha") {
      if (!g) return nullptr;
      return [g](Args a, Budget&) {
        return SemVal::pair(SemVal::eff(std::uint64_t{1}), SemVal::base((*g)(a[0].nat())));
      };
    }
    return exact_style(eff, sym, true);
  };
  return inst;
}

Instantiation cost_bounded_inst() {
  Instantiation inst;
  inst.name = "bounded-cost";
  inst.effect = EffectTriple::cost();
  inst.cons_interp = [](const std::string& c, Args a) -> SemVal {
    if (c == "zero" || c == "succ") return SemVal::base(1);
    if (c == "nil") return SemVal::base(0);
    if (c == "cons") return SemVal::base(nat_sum(a[0].nat(), 1));
    throw MissingInterpretation(c, "bounded-cost");
  };
  const EffectTriple eff = inst.effect;
  inst.func_interp = [eff](const Symbol& sym) -> FuncInterp {
    const std::string& f = sym.name;
    auto unit_size = [](Args, Budget&) { return SemVal::pair(SemVal::eff(std::uint64_t{1}), SemVal::base(1)); };
    if (f == "add" || f == "mul" || f == "lt" || f == "len" || f == "ext") return unit_size;
    if (f == "fold")
      return [eff](Args a, Budget& b) {
        // fold(b,h,0) = (1,b); fold(b,h,n+1) = 1 (+) (pi0 r, b v pi1 r) with r = h 1 o fold(b,h,n)
        SemVal acc = SemVal::pair(SemVal::eff(std::uint64_t{1}), a[0]);
        for (std::uint64_t i = 0; i < a[2].nat(); ++i) {
          b.tick();
          const SemVal r = compose_eff(eff, a[1](SemVal::base(1)), acc);
          acc = SemVal::pair(SemVal::eff(nat_sum(carrier_nat(r.first().carrier()), 1)), join(a[0], r.second()));
        }
        return acc;
      };
    return nullptr;
  };
  return inst;
}

SemVal monotone_majorant(const std::function<SemVal(std::uint64_t)>& g, std::uint64_t m) {
  SemVal acc = g(0);
  for (std::uint64_t i = 1; i <= m; ++i) acc = join(acc, g(i));
  return acc;
}

Instantiation majorizability_inst() {
  Instantiation inst;
  inst.name = "majorizability";
  inst.effect = EffectTriple::unit();
  inst.cons_interp = [](const std::string& c, Args a) -> SemVal {
    if (c == "zero") return SemVal::base(0);
    if (c == "succ") return SemVal::base(nat_sum(a[0].nat(), 1));
    throw MissingInterpretation(c, "majorizability");
  };
  inst.func_interp = [](const Symbol& sym) -> FuncInterp {
    const std::string& f = sym.name;
    auto ret = [](SemVal v) { return SemVal::pair(SemVal::eff(std::monostate{}), std::move(v)); };
    if (f == "add") return [ret](Args a, Budget&) { return ret(SemVal::base(nat_sum(a[0].nat(), a[1].nat()))); };
    if (f == "mul")
      return [ret](Args a, Budget&) {
        const auto m = a[0].nat(), n = a[1].nat();
        if (m != 0 && n > kMaxNat / m) throw ArithmeticOverflow();
        return ret(SemVal::base(m * n));
      };
    if (f == "lt") return [ret](Args, Budget&) { return ret(SemVal::base(1)); };
    if (f == "rec")
      return [ret](Args a, Budget& b) {
        // R(a,f,0) = a; R(a,f,i+1) = f(i, R(a,f,i)); result max_{i<=n} R(a,f,i)
        const SemVal base = a[0], step = a[1];
        std::vector<SemVal> r{base};
        for (std::uint64_t i = 0; i < a[2].nat(); ++i) {
          b.tick();
          r.push_back(step(SemVal::base(i)).second()(r.back()).second());
        }
        return ret(monotone_majorant([&r](std::uint64_t i) { return r[i]; }, a[2].nat()));
      };
    return nullptr;
  };
  return inst;
}

// ---------------------------------------------------------------------------
// Analyses

namespace {

void check_supported(const Signature& sig, const Instantiation& inst, const Term& e, const std::string& analysis) {
  std::vector<const Term*> stack{&e};
  std::set<std::string> seen;
  while (!stack.empty()) {
    const Term* t = stack.back();
    stack.pop_back();
    switch (t->kind()) {
      case Term::Kind::Func: {
        const std::string key = t->symbol().display();
        if (!seen.insert(key).second) break;
        if (!sig.declares(t->symbol())) throw UndeclaredSymbol(key);
        if (!inst.func_interp || !inst.func_interp(t->symbol())) throw UnsupportedSymbol(key, analysis);
        break;
      }
      case Term::Kind::Lam:
        stack.push_back(&t->body());
        break;
      case Term::Kind::App:
        stack.push_back(&t->fun());
        stack.push_back(&t->arg());
        break;
      default:
        break;
    }
  }
}

bool mentions_list(const Ty& ty) { return ty.is_data() ? ty.name() == "List" : mentions_list(ty.dom()) || mentions_list(ty.cod()); }

void check_no_lists(const Term& e, const std::string& analysis) {
  std::vector<const Term*> stack{&e};
  while (!stack.empty()) {
    const Term* t = stack.back();
    stack.pop_back();
    switch (t->kind()) {
      case Term::Kind::Cons:
        if (t->symbol().name == "nil" || t->symbol().name == "cons") throw UnsupportedSymbol(t->symbol().name, analysis);
        break;
      case Term::Kind::Func:
        if (t->symbol().index && mentions_list(*t->symbol().index))
          throw UnsupportedSymbol(t->symbol().display(), analysis);
        break;
      case Term::Kind::Lam:
        if (mentions_list(t->binder_type()))
          throw UnsupportedSymbol("List (binder " + t->name() + ")", analysis);
        stack.push_back(&t->body());
        break;
      case Term::Kind::App:
        stack.push_back(&t->fun());
        stack.push_back(&t->arg());
        break;
      default:
        break;
    }
  }
}

SemVal run(const Signature& sig, const Instantiation& inst, const Term& e, const Fuel& fuel) {
  const MetaTerm mt = translate(sig, e);
  return denote(sig, inst, {}, mt, std::make_shared<Budget>(fuel.max_steps));
}

}  // namespace

ModulusReport modulus(const Signature& sig, const Term& e, const OracleSpec& g, const AnalysisOptions& opts) {
  const Ty want = Ty::arrow(Ty::arrow(Ty::nat(), Ty::nat()), Ty::nat());
  const Ty got = typecheck(sig, e);
  if (!(got == want)) throw TypeMismatch(want.to_string(), got.to_string(), "modulus input");
  const Instantiation inst = opts.inst ? *opts.inst : continuity_inst(g);
  check_supported(sig, inst, e, "modulus");
  std::vector<std::string> syms;
  collect_symbols(e, syms);
  if (std::find(syms.begin(), syms.end(), "alpha") != syms.end()) throw UnsupportedSymbol("alpha", "modulus");
  auto budget = std::make_shared<Budget>(opts.fuel.max_steps);
  const SemVal f = denote(sig, inst, {}, translate(sig, e), budget);
  const FuncInterp alpha = inst.func_interp(Symbol{"alpha", std::nullopt});
  if (!alpha) throw MissingInterpretation("alpha", inst.name);
  const SemVal oracle = SemVal::pair(SemVal::eff(inst.effect.eps), SemVal::fun([alpha, budget](const SemVal& n) {
                                       const SemVal args[] = {n};
                                       return alpha(args, *budget);
                                     }));
  const SemVal r = compose(inst, f, oracle);
  ModulusReport rep;
  rep.support = carrier_list(r.first().carrier());
  rep.value = r.second().nat();
  rep.phi = rep.support.empty() ? 0 : *std::max_element(rep.support.begin(), rep.support.end()) + 1;
  return rep;
}

ModulusReport modulus(const Term& e, const OracleSpec& g, const AnalysisOptions& opts) {
  return modulus(signature_for(e), e, g, opts);
}

CostReport exact_cost(const Signature& sig, const Term& e, const AnalysisOptions& opts) {
  const Instantiation inst = opts.inst ? *opts.inst : cost_exact_inst(sig.oracle());
  typecheck(sig, e);
  check_supported(sig, inst, e, "exact-cost");
  const SemVal r = run(sig, inst, e, opts.fuel);
  return CostReport{carrier_nat(r.first().carrier()), r.second(), CostReport::Mode::Exact};
}

CostReport exact_cost(const Term& e, const AnalysisOptions& opts) { return exact_cost(signature_for(e), e, opts); }

CostReport bounded_cost(const Signature& sig, const Term& e, const AnalysisOptions& opts) {
  const Instantiation inst = opts.inst ? *opts.inst : cost_bounded_inst();
  const Ty ty = typecheck(sig, e);
  if (!ty.is_data()) throw TypeMismatch("a datatype", ty.to_string(), "bounded-cost input");
  check_supported(sig, inst, e, "bounded-cost");
  const SemVal r = run(sig, inst, e, opts.fuel);
  return CostReport{carrier_nat(r.first().carrier()), r.second(), CostReport::Mode::Bound};
}

CostReport bounded_cost(const Term& e, const AnalysisOptions& opts) { return bounded_cost(signature_for(e), e, opts); }

SemVal majorant(const Signature& sig, const Term& e, const AnalysisOptions& opts) {
  const Instantiation inst = opts.inst ? *opts.inst : majorizability_inst();
  typecheck(sig, e);
  check_no_lists(e, "majorant");
  check_supported(sig, inst, e, "majorant");
  return run(sig, inst, e, opts.fuel).second();
}

SemVal majorant(const Term& e, const AnalysisOptions& opts) { return majorant(signature_for(e), e, opts); }

// ---------------------------------------------------------------------------
// Spector search

Term spector_term() {
  const Ty nat = Ty::nat(), list = Ty::list(), n2n = Ty::arrow(nat, nat);
  const Term h = Term::lam(
      "z'", list,
      Term::lam("p", n2n,
                Term::app(Term::cons("succ"),
                          Term::app(Term::var("p"),
                                    Term::app(Term::var("y"), Term::app(Term::func("len"), Term::var("z'")))))));
  const Term g = Term::lam("x'", list, Term::cons("zero"));
  const Term body = Term::apps(Term::func("bar"), {Term::var("x"), g, h, Term::var("z")});
  return Term::lam("x", Ty::arrow(n2n, nat), Term::lam("y", n2n, Term::lam("z", list, body)));
}

Term spector_instance(const Term& omega, const Term& beta) {
  return Term::apps(spector_term(), {omega, beta, Term::cons("nil")});
}

namespace {

SemVal segment(const SemVal& g, std::uint64_t n) {
  std::vector<std::uint64_t> xs;
  for (std::uint64_t i = 0; i < n; ++i) xs.push_back(g(SemVal::base(i)).second().nat());
  return padded(EffectTriple::cost(), xs);
}

}  // namespace

std::uint64_t spector_bound(const SemVal& omega, const SemVal& g, Fuel fuel) {
  Budget budget(fuel.max_steps);
  for (std::uint64_t n = 0;; ++n) {
    budget.tick();
    if (omega(segment(g, n)).second().nat() < n) return n;
  }
}

std::uint64_t spector_closed_form_k(const SemVal& omega, const SemVal& g, std::uint64_t k, Fuel fuel) {
  const std::uint64_t N = spector_bound(omega, g, fuel);
  std::uint64_t total = nat_sum((k + 6) * N, 5);
  for (std::uint64_t i = 0; i <= N; ++i) total = nat_sum(total, carrier_nat(omega(segment(g, i)).first().carrier()));
  for (std::uint64_t i = 0; i < N; ++i) total = nat_sum(total, carrier_nat(g(SemVal::base(i)).first().carrier()));
  return total;
}

std::uint64_t spector_closed_form(const SemVal& omega, const SemVal& g, Fuel fuel) {
  return spector_closed_form_k(omega, g, 4, fuel);
}

SemVal spector_phi(const SemVal& omega, const SemVal& g, const std::vector<std::uint64_t>& a, std::uint64_t k,
                   Fuel fuel) {
  const EffectTriple eff = EffectTriple::cost();
  const SemVal base = SemVal::fun([](const SemVal&) {
    return SemVal::pair(SemVal::eff(std::uint64_t{1}), SemVal::base(0));
  });
  const SemVal step = SemVal::fun([g, k](const SemVal& b) {
    const std::uint64_t len = b.list().size();
    return SemVal::pair(SemVal::eff(std::uint64_t{1}), SemVal::fun([g, k, len](const SemVal& f) {
                          const SemVal gl = g(SemVal::base(len));
                          const SemVal fg = f(gl.second());
                          const std::uint64_t cost =
                              nat_sum(nat_sum(k, carrier_nat(gl.first().carrier())), carrier_nat(fg.first().carrier()));
                          return SemVal::pair(SemVal::eff(cost), SemVal::base(nat_sum(fg.second().nat(), 1)));
                        }));
  });
  Budget budget(fuel.max_steps);
  return ExactBar{eff, omega, base, step, &budget}.run(a);
}

}  // namespace writ
