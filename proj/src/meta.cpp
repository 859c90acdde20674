#include "writ/meta.hpp"

#include <functional>
#include <unordered_map>

#include "writ/error.hpp"

namespace writ {

// ---------------------------------------------------------------------------
// MetaType

struct MetaType::Node {
  Kind kind;
  std::string name;
  std::optional<MetaType> left, right;
};

MetaType MetaType::gamma() {
  static const MetaType g(std::make_shared<const Node>(Node{Kind::Gamma, "", std::nullopt, std::nullopt}));
  return g;
}
MetaType MetaType::data(std::string name) {
  return MetaType(std::make_shared<const Node>(Node{Kind::Data, std::move(name), std::nullopt, std::nullopt}));
}
MetaType MetaType::prod(MetaType a, MetaType b) {
  return MetaType(std::make_shared<const Node>(Node{Kind::Prod, "", std::move(a), std::move(b)}));
}
MetaType MetaType::arrow(MetaType a, MetaType b) {
  return MetaType(std::make_shared<const Node>(Node{Kind::Arrow, "", std::move(a), std::move(b)}));
}

MetaType::Kind MetaType::kind() const { return node_->kind; }
const std::string& MetaType::name() const { return node_->name; }
const MetaType& MetaType::left() const { return *node_->left; }
const MetaType& MetaType::right() const { return *node_->right; }

std::string MetaType::to_string() const {
  switch (kind()) {
    case Kind::Gamma:
      return "gamma";
    case Kind::Data:
      return "|" + name() + "|";
    case Kind::Prod: {
      auto side = [](const MetaType& t) {
        return t.kind() == Kind::Gamma || t.kind() == Kind::Data ? t.to_string() : "(" + t.to_string() + ")";
      };
      return side(left()) + " x " + side(right());
    }
    case Kind::Arrow: {
      std::string l = left().to_string();
      if (left().kind() == Kind::Arrow) l = "(" + l + ")";
      return l + " -> " + right().to_string();
    }
  }
  return "?";
}

bool operator==(const MetaType& a, const MetaType& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case MetaType::Kind::Gamma:
      return true;
    case MetaType::Kind::Data:
      return a.name() == b.name();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

MetaType lift(const Ty& ty) {
  if (ty.is_data()) return MetaType::data(ty.name());
  return MetaType::arrow(lift(ty.dom()), MetaType::prod(MetaType::gamma(), lift(ty.cod())));
}

// ---------------------------------------------------------------------------
// MetaTerm

struct MetaTerm::Node {
  Kind kind;
  std::string name;
  std::optional<Symbol> symbol;
  std::optional<MetaType> type;
  std::vector<MetaTerm> kids;
};

namespace {
const std::vector<MetaTerm> kNoKids;
}

MetaTerm MetaTerm::iota() {
  static const MetaTerm i(std::make_shared<const Node>(Node{Kind::Iota, "", std::nullopt, std::nullopt, {}}));
  return i;
}
MetaTerm MetaTerm::inc(MetaTerm t) {
  return MetaTerm(std::make_shared<const Node>(Node{Kind::Inc, "", std::nullopt, std::nullopt, {std::move(t)}}));
}
MetaTerm MetaTerm::com(MetaTerm r, MetaTerm s, MetaTerm t) {
  return MetaTerm(std::make_shared<const Node>(
      Node{Kind::Com, "", std::nullopt, std::nullopt, {std::move(r), std::move(s), std::move(t)}}));
}
MetaTerm MetaTerm::var(std::string name) {
  return MetaTerm(std::make_shared<const Node>(Node{Kind::Var, std::move(name), std::nullopt, std::nullopt, {}}));
}
MetaTerm MetaTerm::cons(std::string symbol) {
  return MetaTerm(std::make_shared<const Node>(
      Node{Kind::Cons, "", Symbol{std::move(symbol), std::nullopt}, std::nullopt, {}}));
}
MetaTerm MetaTerm::func(Symbol symbol) {
  return MetaTerm(std::make_shared<const Node>(Node{Kind::Func, "", std::move(symbol), std::nullopt, {}}));
}
MetaTerm MetaTerm::lam(std::string name, MetaType type, MetaTerm body) {
  return MetaTerm(
      std::make_shared<const Node>(Node{Kind::Lam, std::move(name), std::nullopt, std::move(type), {std::move(body)}}));
}
MetaTerm MetaTerm::app(MetaTerm f, MetaTerm a) {
  return MetaTerm(
      std::make_shared<const Node>(Node{Kind::App, "", std::nullopt, std::nullopt, {std::move(f), std::move(a)}}));
}
MetaTerm MetaTerm::pair(MetaTerm a, MetaTerm b) {
  return MetaTerm(
      std::make_shared<const Node>(Node{Kind::Pair, "", std::nullopt, std::nullopt, {std::move(a), std::move(b)}}));
}
MetaTerm MetaTerm::proj_l(MetaTerm t) {
  return MetaTerm(std::make_shared<const Node>(Node{Kind::ProjL, "", std::nullopt, std::nullopt, {std::move(t)}}));
}
MetaTerm MetaTerm::proj_r(MetaTerm t) {
  return MetaTerm(std::make_shared<const Node>(Node{Kind::ProjR, "", std::nullopt, std::nullopt, {std::move(t)}}));
}

MetaTerm::Kind MetaTerm::kind() const { return node_->kind; }
const std::string& MetaTerm::name() const { return node_->name; }
const Symbol& MetaTerm::symbol() const { return *node_->symbol; }
const MetaType& MetaTerm::binder_type() const { return *node_->type; }
const std::vector<MetaTerm>& MetaTerm::children() const { return node_ ? node_->kids : kNoKids; }

namespace {

using Abbrev = std::function<const std::string*(const MetaTerm&)>;

std::string render(const MetaTerm& t, const Abbrev& abbrev, bool top = false) {
  using Kind = MetaTerm::Kind;
  if (!top)
    if (const std::string* name = abbrev(t)) return *name;
  auto sub = [&](std::size_t i) { return render(t.child(i), abbrev); };
  auto atomic = [&](std::size_t i) {
    const MetaTerm& c = t.child(i);
    std::string s = sub(i);
    if (!abbrev(c) && (c.kind() == Kind::Lam || c.kind() == Kind::App)) s = "(" + s + ")";
    return s;
  };
  switch (t.kind()) {
    case Kind::Iota:
      return "iota";
    case Kind::Inc:
      return "inc(" + sub(0) + ")";
    case Kind::Com:
      return "com(" + sub(0) + ", " + sub(1) + ", " + sub(2) + ")";
    case Kind::Var:
      return t.name();
    case Kind::Cons:
    case Kind::Func:
      return "#" + t.symbol().display();
    case Kind::Lam:
      return "\\" + t.name() + ":" + t.binder_type().to_string() + ". " + sub(0);
    case Kind::App: {
      std::string f = sub(0);
      if (!abbrev(t.child(0)) && t.child(0).kind() == Kind::Lam) f = "(" + f + ")";
      return f + " " + atomic(1);
    }
    case Kind::Pair:
      return "(" + sub(0) + ", " + sub(1) + ")";
    case Kind::ProjL:
    case Kind::ProjR:
      return atomic(0) + (t.kind() == Kind::ProjL ? ".l" : ".r");
  }
  return "?";
}

}  // namespace

std::string MetaTerm::to_string() const {
  return render(*this, [](const MetaTerm&) -> const std::string* { return nullptr; });
}

std::string MetaTerm::to_shared_string() const {
  std::unordered_map<const void*, std::size_t> refs;
  std::vector<MetaTerm> order;
  std::function<void(const MetaTerm&)> visit = [&](const MetaTerm& t) {
    if (refs[t.id()]++ > 0) return;
    for (const auto& c : t.children()) visit(c);
    order.push_back(t);
  };
  visit(*this);

  std::unordered_map<const void*, std::string> names;
  std::vector<MetaTerm> defs;
  for (const auto& t : order) {
    const bool leaf = t.children().empty();
    if (refs[t.id()] > 1 && !leaf && t.id() != id()) {
      names[t.id()] = "@" + std::to_string(defs.size() + 1);
      defs.push_back(t);
    }
  }
  const Abbrev abbrev = [&names](const MetaTerm& t) -> const std::string* {
    auto it = names.find(t.id());
    return it == names.end() ? nullptr : &it->second;
  };
  std::string out = render(*this, abbrev, true);
  for (const auto& d : defs) out += "\n  where " + names[d.id()] + " = " + render(d, abbrev, true);
  return out;
}

bool operator==(const MetaTerm& a, const MetaTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.name() != b.name()) return false;
  if (a.node_->symbol != b.node_->symbol) return false;
  if (a.node_->type.has_value() != b.node_->type.has_value()) return false;
  if (a.node_->type && !(*a.node_->type == *b.node_->type)) return false;
  const auto& x = a.children();
  const auto& y = b.children();
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] == y[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Contexts

MetaContext MetaContext::extend(const std::string& name, MetaType type) const {
  MetaContext out = *this;
  for (auto& [n, t] : out.entries_) {
    if (n == name) {
      t = std::move(type);
      return out;
    }
  }
  out.entries_.emplace_back(name, std::move(type));
  return out;
}

const MetaType* MetaContext::lookup(const std::string& name) const {
  for (const auto& [n, t] : entries_)
    if (n == name) return &t;
  return nullptr;
}

MetaContext MetaContext::lift(const TyContext& ctx) {
  MetaContext out;
  for (const auto& [n, t] : ctx.entries()) out = out.extend(n, writ::lift(t));
  return out;
}

// ---------------------------------------------------------------------------
// Translation

namespace {

struct Curried {
  std::vector<Ty> args;
  Ty result;
};

Curried uncurry(const Ty& type, std::size_t arity) {
  std::vector<Ty> args;
  Ty t = type;
  for (std::size_t i = 0; i < arity; ++i) {
    args.push_back(t.dom());
    t = t.cod();
  }
  return {std::move(args), t};
}

std::string binder(std::size_t i) { return "$" + std::to_string(i + 1); }

// λ*x1..xn. body
MetaTerm lambda_star(const std::vector<Ty>& args, MetaTerm body) {
  for (std::size_t i = args.size(); i-- > 0;)
    body = MetaTerm::pair(MetaTerm::iota(), MetaTerm::lam(binder(i), lift(args[i]), std::move(body)));
  return body;
}

MetaTerm applied_to_binders(MetaTerm head, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) head = MetaTerm::app(std::move(head), MetaTerm::var(binder(i)));
  return head;
}

MetaTerm translate_rec(const Signature& sig, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return MetaTerm::pair(MetaTerm::iota(), MetaTerm::var(t.name()));
    case Term::Kind::Cons: {
      const ConstructorDecl* c = sig.constructor(t.symbol().name);
      if (!c) throw UndeclaredSymbol(t.symbol().name);
      MetaTerm body = MetaTerm::pair(MetaTerm::iota(), applied_to_binders(MetaTerm::cons(c->name), c->args.size()));
      return lambda_star(c->args, std::move(body));
    }
    case Term::Kind::Func: {
      auto d = sig.function(t.symbol());
      if (!d) throw UndeclaredSymbol(t.symbol().display());
      const Curried sh = uncurry(d->type, d->arity);
      return lambda_star(sh.args, applied_to_binders(MetaTerm::func(t.symbol()), d->arity));
    }
    case Term::Kind::Lam: {
      const MetaTerm body = translate_rec(sig, t.body());
      return MetaTerm::pair(
          MetaTerm::iota(),
          MetaTerm::lam(t.name(), lift(t.binder_type()),
                        MetaTerm::pair(MetaTerm::inc(MetaTerm::proj_l(body)), MetaTerm::proj_r(body))));
    }
    case Term::Kind::App: {
      const MetaTerm f = translate_rec(sig, t.fun());
      const MetaTerm a = translate_rec(sig, t.arg());
      const MetaTerm call = MetaTerm::app(MetaTerm::proj_r(f), MetaTerm::proj_r(a));
      return MetaTerm::pair(MetaTerm::com(MetaTerm::proj_l(f), MetaTerm::proj_l(a), MetaTerm::proj_l(call)),
                            MetaTerm::proj_r(call));
    }
  }
  throw Error("unknown term kind");
}

// Checks each shared (node, scope) pair once.
class MetaChecker {
 public:
  explicit MetaChecker(const Signature& sig) : sig_(sig) {}

  MetaType check(const MetaContext& ctx, const MetaTerm& mt) {
    Scope scope;
    return go(ctx, mt, scope);
  }

 private:
  using Scope = std::unordered_map<const void*, MetaType>;

  [[noreturn]] static void fail(const std::string& what, const MetaTerm& mt) {
    std::string shown = mt.to_shared_string();
    if (shown.size() > 120) shown = shown.substr(0, 117) + "...";
    throw MetaTypeMismatch(what + " in " + shown);
  }

  MetaType expect_gamma(const MetaContext& ctx, const MetaTerm& mt, Scope& scope) {
    MetaType t = go(ctx, mt, scope);
    if (t.kind() != MetaType::Kind::Gamma) fail("expected gamma, got " + t.to_string(), mt);
    return t;
  }

  MetaType go(const MetaContext& ctx, const MetaTerm& mt, Scope& scope) {
    if (auto it = scope.find(mt.id()); it != scope.end()) return it->second;
    MetaType out = compute(ctx, mt, scope);
    scope.emplace(mt.id(), out);
    return out;
  }

  MetaType compute(const MetaContext& ctx, const MetaTerm& mt, Scope& scope) {
    using K = MetaTerm::Kind;
    switch (mt.kind()) {
      case K::Iota:
        return MetaType::gamma();
      case K::Inc:
        return expect_gamma(ctx, mt.child(0), scope);
      case K::Com:
        for (const auto& k : mt.children()) expect_gamma(ctx, k, scope);
        return MetaType::gamma();
      case K::Var: {
        const MetaType* t = ctx.lookup(mt.name());
        if (!t) throw MetaTypeMismatch("unbound metavariable '" + mt.name() + "'");
        return *t;
      }
      case K::Cons: {
        const ConstructorDecl* c = sig_.constructor(mt.symbol().name);
        if (!c) throw UndeclaredSymbol(mt.symbol().name);
        MetaType t = MetaType::data(c->result.name());
        for (std::size_t i = c->args.size(); i-- > 0;) t = MetaType::arrow(lift(c->args[i]), std::move(t));
        return t;
      }
      case K::Func: {
        auto d = sig_.function(mt.symbol());
        if (!d) throw UndeclaredSymbol(mt.symbol().display());
        const Curried sh = uncurry(d->type, d->arity);
        MetaType t = MetaType::prod(MetaType::gamma(), lift(sh.result));
        for (std::size_t i = sh.args.size(); i-- > 0;) t = MetaType::arrow(lift(sh.args[i]), std::move(t));
        return t;
      }
      case K::Lam: {
        Scope inner;
        MetaType body = go(ctx.extend(mt.name(), mt.binder_type()), mt.child(0), inner);
        return MetaType::arrow(mt.binder_type(), std::move(body));
      }
      case K::App: {
        MetaType f = go(ctx, mt.child(0), scope);
        MetaType a = go(ctx, mt.child(1), scope);
        if (f.kind() != MetaType::Kind::Arrow) fail("applying a non-function of type " + f.to_string(), mt);
        if (!(f.left() == a)) fail("argument type " + a.to_string() + " does not match " + f.left().to_string(), mt);
        return f.right();
      }
      case K::Pair:
        return MetaType::prod(go(ctx, mt.child(0), scope), go(ctx, mt.child(1), scope));
      case K::ProjL:
      case K::ProjR: {
        MetaType t = go(ctx, mt.child(0), scope);
        if (t.kind() != MetaType::Kind::Prod) fail("projection from non-product type " + t.to_string(), mt);
        return mt.kind() == K::ProjL ? t.left() : t.right();
      }
    }
    throw Error("unknown metaterm kind");
  }

  const Signature& sig_;
};

}  // namespace

MetaTerm translate(const Signature& sig, const TyContext& ctx, const Term& t) {
  typecheck(sig, ctx, t);
  return translate_rec(sig, t);
}

MetaType meta_typecheck(const Signature& sig, const MetaContext& ctx, const MetaTerm& mt) {
  return MetaChecker(sig).check(ctx, mt);
}

}  // namespace writ
