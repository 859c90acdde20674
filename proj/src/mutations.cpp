#include "writ/mutations.hpp"

namespace writ {

namespace {

using Args = std::span<const SemVal>;

Instantiation override_func(Instantiation inst, const std::string& name, FuncInterp f) {
  auto base = inst.func_interp;
  inst.func_interp = [base, name, f](const Symbol& sym) -> FuncInterp {
    if (sym.name == name) return f;
    return base(sym);
  };
  inst.name += "/mutant";
  return inst;
}

}  // namespace

Instantiation mutant_rec_double_charge() {
  Instantiation inst = cost_exact_inst();
  const EffectTriple eff = inst.effect;
  return override_func(std::move(inst), "rec", [eff](Args a, Budget& b) {
    SemVal acc = SemVal::pair(SemVal::eff(std::uint64_t{2}), a[0]);
    for (std::uint64_t i = 0; i < a[2].nat(); ++i) {
      b.tick();
      acc = charge(eff, std::uint64_t{2}, compose(Instantiation{"", eff, nullptr, nullptr}, a[1](SemVal::base(i)), acc));
    }
    return acc;
  });
}

Instantiation mutant_alpha_silent(OracleSpec g) {
  return override_func(continuity_inst(g), "alpha", [g](Args a, Budget&) {
    return SemVal::pair(SemVal::eff(std::vector<std::uint64_t>{}), SemVal::base(g(a[0].nat())));
  });
}

Instantiation mutant_fold_uncharged() {
  Instantiation inst = cost_bounded_inst();
  const EffectTriple eff = inst.effect;
  return override_func(std::move(inst), "fold", [eff](Args a, Budget& b) {
    SemVal acc = SemVal::pair(SemVal::eff(std::uint64_t{1}), a[0]);
    for (std::uint64_t i = 0; i < a[2].nat(); ++i) {
      b.tick();
      const SemVal r = compose(Instantiation{"", eff, nullptr, nullptr}, a[1](SemVal::base(1)), acc);
      acc = SemVal::pair(r.first(), join(a[0], r.second()));
    }
    return acc;
  });
}

Instantiation mutant_succ_flat() {
  Instantiation inst = majorizability_inst();
  auto base = inst.cons_interp;
  inst.cons_interp = [base](const std::string& c, Args a) {
    if (c == "succ") return a[0];
    return base(c, a);
  };
  inst.name += "/mutant";
  return inst;
}

std::vector<Mutant> all_mutants(const OracleSpec& g) {
  return {
      {"rec-double-charge", "cost", mutant_rec_double_charge()},
      {"alpha-silent", "modulus", mutant_alpha_silent(g)},
      {"fold-uncharged", "bound", mutant_fold_uncharged()},
      {"succ-flat", "majorant", mutant_succ_flat()},
  };
}

}  // namespace writ
