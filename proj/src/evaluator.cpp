#include "writ/evaluator.hpp"

#include "writ/error.hpp"

namespace writ {

namespace {

class Machine {
 public:
  Machine(const Signature& sig, Fuel fuel) : sig_(sig), fuel_(fuel) {}

  Term run(Term e) {
    while (true) {
      if (e.is_value()) return e;
      if (e.kind() != Term::Kind::App) throw Error("cannot evaluate open term " + e.to_string());
      if (e.fun().is_value() && e.arg().is_value()) {
        e = contract(e);
        continue;
      }
      // At least one side is not a value: evaluate both, then the redex.
      Term u = run(e.fun());
      Term v = run(e.arg());
      e = Term::app(std::move(u), std::move(v));
    }
  }

  std::uint64_t steps() const { return steps_; }
  std::vector<std::uint64_t>& queries() { return queries_; }

 private:
  void tick() {
    if (steps_ >= fuel_.max_steps) throw FuelExhausted(steps_);
    ++steps_;
  }

  // One beta step or one rule/builtin unfold of a redex whose function and
  // argument are both values.
  Term contract(const Term& redex) {
    const Term head = redex.head();
    if (head.kind() == Term::Kind::Lam) {
      tick();
      return substitute(redex.fun().body(), redex.fun().name(), redex.arg());
    }
    if (head.kind() != Term::Kind::Func) throw Error("stuck term " + redex.to_string());

    auto decl = sig_.function(head.symbol());
    if (!decl) throw UndeclaredSymbol(head.symbol().display());
    const auto args = redex.spine_args();
    if (args.size() != decl->arity) throw Error("stuck term " + redex.to_string());

    tick();
    if (decl->builtin) {
      if (head.symbol().name == "alpha") {
        if (auto n = as_numeral(args[0])) queries_.push_back(*n);
      }
      return decl->builtin->delta(args);
    }
    for (const auto& rule : decl->rules) {
      if (auto sigma = match_pattern(rule.lhs, args)) return substitute(rule.rhs, *sigma);
    }
    throw Error("no rule of " + head.symbol().display() + " matches " + redex.to_string());
  }

  const Signature& sig_;
  Fuel fuel_;
  std::uint64_t steps_ = 0;
  std::vector<std::uint64_t> queries_;
};

}  // namespace

EvalResult eval(const Signature& sig, const Term& e, Fuel fuel) {
  if (fuel.max_steps == 0) throw Error("fuel must be positive");
  typecheck(sig, e);
  Machine m(sig, fuel);
  Term v = m.run(e);
  return EvalResult{std::move(v), m.steps(), std::move(m.queries())};
}

EvalResult eval_with_oracle(const Signature& base, const Term& e, const OracleSpec& g, Fuel fuel) {
  return eval(with_oracle(base, g), e, fuel);
}

}  // namespace writ
