#include "writ/semantics.hpp"

#include <algorithm>
#include <unordered_map>

#include "writ/error.hpp"

namespace writ {

void Budget::tick() {
  if (used_ >= max_) throw FuelExhausted(used_);
  ++used_;
}

// ---------------------------------------------------------------------------
// SemVal

struct SemVal::Node {
  Kind kind;
  Carrier carrier;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> xs;
  std::optional<SemVal> a, b;
  Fn f;
};

SemVal::SemVal() : SemVal(eff(std::monostate{})) {}

SemVal SemVal::eff(Carrier c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Eff;
  n->carrier = std::move(c);
  return SemVal(std::move(n));
}
SemVal SemVal::base(std::uint64_t v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Base;
  n->n = v;
  return SemVal(std::move(n));
}
SemVal SemVal::base_list(std::vector<std::uint64_t> xs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::BaseList;
  n->xs = std::move(xs);
  return SemVal(std::move(n));
}
SemVal SemVal::pair(SemVal a, SemVal b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pair;
  n->a = std::move(a);
  n->b = std::move(b);
  return SemVal(std::move(n));
}
SemVal SemVal::fun(Fn f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Fun;
  n->f = std::move(f);
  return SemVal(std::move(n));
}

SemVal::Kind SemVal::kind() const { return node_->kind; }

namespace {
const char* kind_name(SemVal::Kind k) {
  switch (k) {
    case SemVal::Kind::Eff: return "effect";
    case SemVal::Kind::Base: return "natural";
    case SemVal::Kind::BaseList: return "list";
    case SemVal::Kind::Pair: return "pair";
    case SemVal::Kind::Fun: return "function";
  }
  return "?";
}

[[noreturn]] void shape(const char* wanted, SemVal::Kind got) {
  throw ShapeMismatch(std::string("expected a ") + wanted + ", got a " + kind_name(got));
}
}  // namespace

const SemVal::Carrier& SemVal::carrier() const {
  if (kind() != Kind::Eff) shape("effect", kind());
  return node_->carrier;
}
std::uint64_t SemVal::nat() const {
  if (kind() != Kind::Base) shape("natural", kind());
  return node_->n;
}
const std::vector<std::uint64_t>& SemVal::list() const {
  if (kind() != Kind::BaseList) shape("list", kind());
  return node_->xs;
}
const SemVal& SemVal::first() const {
  if (kind() != Kind::Pair) shape("pair", kind());
  return *node_->a;
}
const SemVal& SemVal::second() const {
  if (kind() != Kind::Pair) shape("pair", kind());
  return *node_->b;
}
SemVal SemVal::operator()(const SemVal& x) const {
  if (kind() != Kind::Fun) shape("function", kind());
  return node_->f(x);
}

std::string carrier_to_string(const SemVal::Carrier& c) {
  if (std::holds_alternative<std::monostate>(c)) return "*";
  if (auto n = std::get_if<std::uint64_t>(&c)) return std::to_string(*n);
  std::string s = "[";
  const auto& xs = std::get<std::vector<std::uint64_t>>(c);
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "]";
}

std::uint64_t carrier_nat(const SemVal::Carrier& c) {
  if (auto n = std::get_if<std::uint64_t>(&c)) return *n;
  throw ShapeMismatch("expected a natural-number effect, got " + carrier_to_string(c));
}

const std::vector<std::uint64_t>& carrier_list(const SemVal::Carrier& c) {
  if (auto xs = std::get_if<std::vector<std::uint64_t>>(&c)) return *xs;
  throw ShapeMismatch("expected a list effect, got " + carrier_to_string(c));
}

std::string SemVal::to_string() const {
  switch (kind()) {
    case Kind::Eff:
      return carrier_to_string(node_->carrier);
    case Kind::Base:
      return std::to_string(node_->n);
    case Kind::BaseList: {
      std::string s = "[";
      for (std::size_t i = 0; i < node_->xs.size(); ++i) s += (i ? "," : "") + std::to_string(node_->xs[i]);
      return s + "]";
    }
    case Kind::Pair:
      return "(" + node_->a->to_string() + ", " + node_->b->to_string() + ")";
    case Kind::Fun:
      return "<fun>";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Effect triples

namespace {
std::uint64_t add_checked(std::uint64_t a, std::uint64_t b) {
  if (a > UINT64_MAX - b) throw ArithmeticOverflow();
  return a + b;
}
}  // namespace

EffectTriple EffectTriple::unit() {
  return {Kind::Unit, std::monostate{}, [](const SemVal::Carrier&) -> SemVal::Carrier { return std::monostate{}; },
          [](const SemVal::Carrier&, const SemVal::Carrier&, const SemVal::Carrier&) -> SemVal::Carrier {
            return std::monostate{};
          }};
}

EffectTriple EffectTriple::cost() {
  return {Kind::Nat, std::uint64_t{0},
          [](const SemVal::Carrier& c) -> SemVal::Carrier { return add_checked(carrier_nat(c), 1); },
          [](const SemVal::Carrier& a, const SemVal::Carrier& b, const SemVal::Carrier& c) -> SemVal::Carrier {
            return add_checked(add_checked(carrier_nat(a), carrier_nat(b)), carrier_nat(c));
          }};
}

EffectTriple EffectTriple::queries() {
  return {Kind::NatList, std::vector<std::uint64_t>{}, [](const SemVal::Carrier& c) { return c; },
          [](const SemVal::Carrier& a, const SemVal::Carrier& b, const SemVal::Carrier& c) -> SemVal::Carrier {
            std::vector<std::uint64_t> out = carrier_list(a);
            const auto& y = carrier_list(b);
            const auto& z = carrier_list(c);
            out.insert(out.end(), y.begin(), y.end());
            out.insert(out.end(), z.begin(), z.end());
            return out;
          }};
}

SemVal compose(const Instantiation& inst, const SemVal& f, const SemVal& a) {
  const SemVal r = f.second()(a.second());
  return SemVal::pair(SemVal::eff(inst.effect.com(f.first().carrier(), a.first().carrier(), r.first().carrier())),
                      r.second());
}

SemVal charge(const EffectTriple& eff, const SemVal::Carrier& c, const SemVal& a) {
  return SemVal::pair(SemVal::eff(eff.com(c, eff.eps, a.first().carrier())), a.second());
}

SemVal::Carrier step_effect(const EffectTriple& eff) { return eff.inc(eff.eps); }

SemVal::Carrier seq(const EffectTriple& eff, const SemVal::Carrier& a, const SemVal::Carrier& b) {
  return eff.com(a, b, eff.eps);
}

SemVal join(const SemVal& a, const SemVal& b) {
  if (a.kind() != b.kind())
    throw ShapeMismatch(std::string("cannot join a ") + kind_name(a.kind()) + " with a " + kind_name(b.kind()));
  switch (a.kind()) {
    case SemVal::Kind::Eff: {
      const auto& x = a.carrier();
      const auto& y = b.carrier();
      if (std::holds_alternative<std::monostate>(x) && std::holds_alternative<std::monostate>(y)) return a;
      if (std::holds_alternative<std::uint64_t>(x) && std::holds_alternative<std::uint64_t>(y))
        return SemVal::eff(std::max(std::get<std::uint64_t>(x), std::get<std::uint64_t>(y)));
      throw ShapeMismatch("cannot join effects " + carrier_to_string(x) + " and " + carrier_to_string(y));
    }
    case SemVal::Kind::Base:
      return SemVal::base(std::max(a.nat(), b.nat()));
    case SemVal::Kind::BaseList:
      if (a.list() != b.list()) throw ShapeMismatch("cannot join distinct lists");
      return a;
    case SemVal::Kind::Pair:
      return SemVal::pair(join(a.first(), b.first()), join(a.second(), b.second()));
    case SemVal::Kind::Fun:
      return SemVal::fun([a, b](const SemVal& x) { return join(a(x), b(x)); });
  }
  throw ShapeMismatch("unknown semantic value");
}

// ---------------------------------------------------------------------------
// denote

namespace {

SemVal curry(std::size_t arity, std::function<SemVal(std::span<const SemVal>)> f,
             std::vector<SemVal> acc = {}) {
  if (acc.size() == arity) return f(acc);
  return SemVal::fun([arity, f, acc](const SemVal& x) {
    std::vector<SemVal> next = acc;
    next.push_back(x);
    return curry(arity, f, std::move(next));
  });
}

struct EnvNode {
  std::string name;
  SemVal value;
  std::shared_ptr<const EnvNode> next;
};
using Env = std::shared_ptr<const EnvNode>;

Env extend(Env env, std::string name, SemVal v) {
  return std::make_shared<const EnvNode>(EnvNode{std::move(name), std::move(v), std::move(env)});
}

const SemVal* find(const EnvNode* env, const std::string& name) {
  for (; env; env = env->next.get())
    if (env->name == name) return &env->value;
  return nullptr;
}

class Engine : public std::enable_shared_from_this<Engine> {
 public:
  Engine(const Signature& sig, const Instantiation& inst, std::shared_ptr<Budget> budget)
      : sig_(sig), inst_(inst), budget_(std::move(budget)) {}

  // Within one scope (fixed environment) every node is evaluated at most once.
  using Scope = std::unordered_map<const void*, SemVal>;

  SemVal eval(const Env& env, const MetaTerm& mt, Scope& scope) {
    const auto k = mt.kind();
    if (k == MetaTerm::Kind::Var) return var(env, mt);
    if (auto it = scope.find(mt.id()); it != scope.end()) return it->second;
    SemVal out = compute(env, mt, scope);
    scope.emplace(mt.id(), out);
    return out;
  }

 private:
  SemVal var(const Env& env, const MetaTerm& mt) {
    if (const SemVal* v = find(env.get(), mt.name())) return *v;
    throw MetaTypeMismatch("unbound metavariable '" + mt.name() + "'");
  }

  SemVal compute(const Env& env, const MetaTerm& mt, Scope& scope) {
    using K = MetaTerm::Kind;
    const EffectTriple& eff = inst_.effect;
    switch (mt.kind()) {
      case K::Iota:
        return SemVal::eff(eff.eps);
      case K::Inc:
        return SemVal::eff(eff.inc(eval(env, mt.child(0), scope).carrier()));
      case K::Com:
        return SemVal::eff(eff.com(eval(env, mt.child(0), scope).carrier(), eval(env, mt.child(1), scope).carrier(),
                                   eval(env, mt.child(2), scope).carrier()));
      case K::Var:
        return var(env, mt);
      case K::Cons:
        return constructor(mt.symbol().name);
      case K::Func:
        return function(mt.symbol());
      case K::Lam: {
        auto self = shared_from_this();
        const std::string name = mt.name();
        const MetaTerm body = mt.child(0);
        return SemVal::fun([self, env, name, body](const SemVal& x) {
          self->budget_->tick();
          Scope inner;
          return self->eval(extend(env, name, x), body, inner);
        });
      }
      case K::App: {
        const SemVal f = eval(env, mt.child(0), scope);
        const SemVal a = eval(env, mt.child(1), scope);
        return f(a);
      }
      case K::Pair:
        return SemVal::pair(eval(env, mt.child(0), scope), eval(env, mt.child(1), scope));
      case K::ProjL:
        return eval(env, mt.child(0), scope).first();
      case K::ProjR:
        return eval(env, mt.child(0), scope).second();
    }
    throw Error("unknown metaterm kind");
  }

  SemVal constructor(const std::string& name) {
    const ConstructorDecl* c = sig_.constructor(name);
    if (!c) throw UndeclaredSymbol(name);
    if (!inst_.cons_interp) throw MissingInterpretation(name, inst_.name);
    auto self = shared_from_this();
    return curry(c->args.size(), [self, name](std::span<const SemVal> args) {
      return self->inst_.cons_interp(name, args);
    });
  }

  SemVal function(const Symbol& sym) {
    auto d = sig_.function(sym);
    if (!d) throw UndeclaredSymbol(sym.display());
    FuncInterp fi = inst_.func_interp ? inst_.func_interp(sym) : nullptr;
    if (!fi) throw MissingInterpretation(sym.display(), inst_.name);
    auto budget = budget_;
    return curry(d->arity, [fi, budget](std::span<const SemVal> args) { return fi(args, *budget); });
  }

  const Signature sig_;
  const Instantiation inst_;
  std::shared_ptr<Budget> budget_;
};

}  // namespace

SemVal denote(const Signature& sig, const Instantiation& inst, const SemEnv& env, const MetaTerm& mt,
              std::shared_ptr<Budget> budget) {
  if (!budget) budget = std::make_shared<Budget>();
  auto engine = std::make_shared<Engine>(sig, inst, std::move(budget));
  Env e;
  for (const auto& [name, v] : env) e = extend(e, name, v);
  Engine::Scope scope;
  return engine->eval(e, mt, scope);
}

// ---------------------------------------------------------------------------
// Pure semantics

std::optional<SemVal> semantic_datum(const Term& v) {
  if (auto n = as_numeral(v)) return SemVal::base(*n);
  if (auto xs = as_list(v)) return SemVal::base_list(std::move(*xs));
  return std::nullopt;
}

namespace {

std::uint64_t capped(std::uint64_t n) {
  if (n > (std::uint64_t{1} << 62)) throw ArithmeticOverflow();
  return n;
}

SemVal pad(const std::vector<std::uint64_t>& xs) {
  return SemVal::fun([xs](const SemVal& i) { return SemVal::base(i.nat() < xs.size() ? xs[i.nat()] : 0); });
}

struct PureBar {
  SemVal omega, g, h;
  std::shared_ptr<Budget> budget;

  SemVal run(const std::vector<std::uint64_t>& a) const {
    budget->tick();
    if (omega(pad(a)).nat() < a.size()) return g(SemVal::base_list(a));
    const PureBar self = *this;
    return h(SemVal::base_list(a))(SemVal::fun([self, a](const SemVal& x) {
      auto next = a;
      next.push_back(x.nat());
      return self.run(next);
    }));
  }
};

class Pure : public std::enable_shared_from_this<Pure> {
 public:
  Pure(std::optional<OracleSpec> oracle, std::shared_ptr<Budget> budget)
      : oracle_(std::move(oracle)), budget_(std::move(budget)) {}

  SemVal eval(const Env& env, const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var:
        if (const SemVal* v = find(env.get(), t.name())) return *v;
        throw UnboundVariable(t.name());
      case Term::Kind::Lam: {
        auto budget = budget_;
        const std::string name = t.name();
        const Term body = t.body();
        auto self = shared_from_this();
        return SemVal::fun([self, budget, env, name, body](const SemVal& x) {
          budget->tick();
          return self->eval(extend(env, name, x), body);
        });
      }
      case Term::Kind::App: {
        if (auto d = semantic_datum(t)) return *d;
        const SemVal f = eval(env, t.fun());
        return f(eval(env, t.arg()));
      }
      case Term::Kind::Cons:
        if (auto d = semantic_datum(t)) return *d;
        return constructor(t.symbol().name);
      case Term::Kind::Func:
        return function(t.symbol());
    }
    throw Error("unknown term kind");
  }

 private:
  SemVal constructor(const std::string& name) {
    if (name == "succ") return SemVal::fun([](const SemVal& n) { return SemVal::base(capped(n.nat() + 1)); });
    if (name == "cons")
      return curry(2, [](std::span<const SemVal> a) {
        auto xs = a[0].list();
        xs.push_back(a[1].nat());
        return SemVal::base_list(std::move(xs));
      });
    throw MissingInterpretation(name, "pure");
  }

  SemVal function(const Symbol& sym) {
    auto budget = budget_;
    const std::string& f = sym.name;
    if (f == "rec")
      return curry(3, [budget](std::span<const SemVal> a) {
        SemVal acc = a[0];
        for (std::uint64_t i = 0; i < a[2].nat(); ++i) {
          budget->tick();
          acc = a[1](SemVal::base(i))(acc);
        }
        return acc;
      });
    if (f == "fold")
      return curry(3, [budget](std::span<const SemVal> a) {
        SemVal acc = a[0];
        for (std::uint64_t x : a[2].list()) {
          budget->tick();
          acc = a[1](SemVal::base(x))(acc);
        }
        return acc;
      });
    if (f == "add") return curry(2, [](std::span<const SemVal> a) { return SemVal::base(capped(a[0].nat() + a[1].nat())); });
    if (f == "mul")
      return curry(2, [](std::span<const SemVal> a) {
        const auto m = a[0].nat(), n = a[1].nat();
        if (m != 0 && n > (std::uint64_t{1} << 62) / m) throw ArithmeticOverflow();
        return SemVal::base(m * n);
      });
    if (f == "lt") return curry(2, [](std::span<const SemVal> a) { return SemVal::base(a[0].nat() < a[1].nat() ? 0 : 1); });
    if (f == "len") return curry(1, [](std::span<const SemVal> a) { return SemVal::base(a[0].list().size()); });
    if (f == "ext") return curry(1, [](std::span<const SemVal> a) { return pad(a[0].list()); });
    if (f == "bar")
      return curry(4, [budget](std::span<const SemVal> a) {
        return PureBar{a[0], a[1], a[2], budget}.run(a[3].list());
      });
    if (f == "bar1")
      return curry(5, [budget](std::span<const SemVal> a) {
        if (a[4].nat() == 0) return a[1](a[3]);
        const PureBar bar{a[0], a[1], a[2], budget};
        const auto xs = a[3].list();
        return a[2](a[3])(SemVal::fun([bar, xs](const SemVal& x) {
          auto next = xs;
          next.push_back(x.nat());
          return bar.run(next);
        }));
      });
    if (f == "alpha" && oracle_) {
      const OracleSpec g = *oracle_;
      return SemVal::fun([g](const SemVal& n) { return SemVal::base(g(n.nat())); });
    }
    throw MissingInterpretation(sym.display(), "pure");
  }

  std::optional<OracleSpec> oracle_;
  std::shared_ptr<Budget> budget_;
};

}  // namespace

SemVal pure_denote(const Signature& sig, const PureEnv& env, const Term& t, const std::optional<OracleSpec>& oracle,
                   std::shared_ptr<Budget> budget) {
  if (!budget) budget = std::make_shared<Budget>();
  auto engine = std::make_shared<Pure>(oracle ? oracle : sig.oracle(), std::move(budget));
  Env e;
  for (const auto& [name, v] : env) e = extend(e, name, v);
  return engine->eval(e, t);
}

}  // namespace writ
