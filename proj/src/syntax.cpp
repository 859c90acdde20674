#include "writ/syntax.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "writ/error.hpp"
#include "writ/signature.hpp"

namespace writ {

// ---------------------------------------------------------------------------
// Types

struct Ty::Node {
  Kind kind;
  std::string name;
  std::optional<Ty> dom;
  std::optional<Ty> cod;
};

Ty Ty::data(std::string name) {
  return Ty(std::make_shared<const Node>(Node{Kind::Data, std::move(name), std::nullopt, std::nullopt}));
}

Ty Ty::arrow(Ty dom, Ty cod) {
  return Ty(std::make_shared<const Node>(Node{Kind::Arrow, {}, std::move(dom), std::move(cod)}));
}

Ty Ty::nat() {
  static const Ty t = data("Nat");
  return t;
}

Ty Ty::list() {
  static const Ty t = data("List");
  return t;
}

Ty Ty::arrows(std::span<const Ty> args, Ty result) {
  for (auto it = args.rbegin(); it != args.rend(); ++it) result = arrow(*it, std::move(result));
  return result;
}

Ty::Kind Ty::kind() const { return node_->kind; }
const std::string& Ty::name() const { return node_->name; }
const Ty& Ty::dom() const { return *node_->dom; }
const Ty& Ty::cod() const { return *node_->cod; }

std::string Ty::to_string() const {
  if (is_data()) return name();
  std::string d = dom().to_string();
  if (dom().is_arrow()) d = "(" + d + ")";
  return d + " -> " + cod().to_string();
}

bool operator==(const Ty& a, const Ty& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_data()) return a.name() == b.name();
  return a.dom() == b.dom() && a.cod() == b.cod();
}

// ---------------------------------------------------------------------------
// Symbols

namespace {

struct ReservedSymbol {
  std::string_view name;
  std::size_t arity;
  bool constructor;
  bool indexed;
};

constexpr std::array<ReservedSymbol, 14> kReserved{{
    {"zero", 0, true, false},
    {"succ", 1, true, false},
    {"nil", 0, true, false},
    {"cons", 2, true, false},
    {"rec", 3, false, true},
    {"fold", 3, false, true},
    {"add", 2, false, false},
    {"mul", 2, false, false},
    {"lt", 2, false, false},
    {"len", 1, false, false},
    {"ext", 2, false, false},
    {"bar", 4, false, false},
    {"bar1", 5, false, false},
    {"alpha", 1, false, false},
}};

const ReservedSymbol* find_reserved(std::string_view name) {
  for (const auto& r : kReserved)
    if (r.name == name) return &r;
  return nullptr;
}

}  // namespace

std::string Symbol::display() const {
  if (!index) return name;
  return name + "[" + index->to_string() + "]";
}

std::optional<std::size_t> reserved_arity(std::string_view name) {
  if (const auto* r = find_reserved(name)) return r->arity;
  return std::nullopt;
}

bool is_constructor_name(std::string_view name) {
  const auto* r = find_reserved(name);
  return r && r->constructor;
}

bool is_function_name(std::string_view name) {
  const auto* r = find_reserved(name);
  return r && !r->constructor;
}

bool is_indexed_family(std::string_view name) {
  const auto* r = find_reserved(name);
  return r && r->indexed;
}

// ---------------------------------------------------------------------------
// Terms

struct Term::Node {
  Kind kind;
  std::string name;
  Symbol symbol;
  std::optional<Ty> type;
  std::optional<Term> a;  // Lam body or App function
  std::optional<Term> b;  // App argument
  std::optional<Term> head;  // App only
  std::vector<std::string> fv;
  std::size_t nargs = 0;
  bool value = false;
};

namespace {

std::vector<std::string> merge_fv(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  if (x.empty()) return y;
  if (y.empty()) return x;
  std::vector<std::string> out;
  out.reserve(x.size() + y.size());
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Term Term::var(std::string name) {
  Node n{Kind::Var, name, {}, {}, {}, {}, {}, {std::move(name)}, 0, false};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::cons(std::string name) {
  Node n{Kind::Cons, {}, Symbol{std::move(name), std::nullopt}, {}, {}, {}, {}, {}, 0, true};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::func(Symbol symbol) {
  const bool value = reserved_arity(symbol.name).value_or(0) > 0;
  Node n{Kind::Func, {}, std::move(symbol), {}, {}, {}, {}, {}, 0, value};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::lam(std::string name, Ty type, Term body) {
  std::vector<std::string> fv = body.free_vars();
  fv.erase(std::remove(fv.begin(), fv.end(), name), fv.end());
  const bool value = fv.empty();
  Node n{Kind::Lam, std::move(name), {}, std::move(type), std::move(body), {}, {}, std::move(fv), 0, value};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::app(Term fun, Term arg) {
  Node n{Kind::App, {}, {}, {}, {}, {}, {}, merge_fv(fun.free_vars(), arg.free_vars()), 0, false};
  n.head = fun.head();
  n.nargs = fun.spine_length() + 1;
  const Term& h = *n.head;
  if (fun.is_value() && arg.is_value()) {
    const std::size_t ar = h.kind() == Kind::Cons || h.kind() == Kind::Func
                               ? reserved_arity(h.symbol().name).value_or(0)
                               : 0;
    if (h.kind() == Kind::Cons) n.value = n.nargs <= ar;
    if (h.kind() == Kind::Func) n.value = n.nargs < ar;
  }
  n.a = std::move(fun);
  n.b = std::move(arg);
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::apps(Term head, std::span<const Term> args) {
  for (const auto& a : args) head = app(std::move(head), a);
  return head;
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Symbol& Term::symbol() const { return node_->symbol; }
const Ty& Term::binder_type() const { return *node_->type; }
const Term& Term::body() const { return *node_->a; }
const Term& Term::fun() const { return *node_->a; }
const Term& Term::arg() const { return *node_->b; }
const std::vector<std::string>& Term::free_vars() const { return node_->fv; }

bool Term::has_free(std::string_view name) const {
  return std::binary_search(node_->fv.begin(), node_->fv.end(), name,
                            [](const auto& x, const auto& y) { return std::string_view(x) < std::string_view(y); });
}

bool Term::is_value() const { return node_->value; }

Term Term::head() const { return kind() == Kind::App ? *node_->head : *this; }
std::size_t Term::spine_length() const { return node_->nargs; }

std::vector<Term> Term::spine_args() const {
  std::vector<Term> out(spine_length(), *this);
  const Term* t = this;
  for (std::size_t i = spine_length(); i > 0; --i) {
    out[i - 1] = t->arg();
    t = &t->fun();
  }
  return out;
}

bool operator==(const Term& x, const Term& y) {
  std::vector<std::pair<const Term*, const Term*>> todo{{&x, &y}};
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    if (a->same_node(*b)) continue;
    if (a->kind() != b->kind()) return false;
    switch (a->kind()) {
      case Term::Kind::Var:
        if (a->name() != b->name()) return false;
        break;
      case Term::Kind::Cons:
      case Term::Kind::Func:
        if (!(a->symbol() == b->symbol())) return false;
        break;
      case Term::Kind::Lam:
        if (a->name() != b->name() || !(a->binder_type() == b->binder_type())) return false;
        todo.emplace_back(&a->body(), &b->body());
        break;
      case Term::Kind::App:
        if (a->spine_length() != b->spine_length()) return false;
        todo.emplace_back(&a->fun(), &b->fun());
        todo.emplace_back(&a->arg(), &b->arg());
        break;
    }
  }
  return true;
}

Term numeral(std::uint64_t n) {
  static const Term zero = Term::cons("zero");
  static const Term succ = Term::cons("succ");
  Term t = zero;
  for (std::uint64_t i = 0; i < n; ++i) t = Term::app(succ, std::move(t));
  return t;
}

Term list_literal(std::span<const std::uint64_t> items) {
  static const Term nil = Term::cons("nil");
  static const Term cons = Term::cons("cons");
  Term t = nil;
  for (auto x : items) t = Term::apps(cons, {std::move(t), numeral(x)});
  return t;
}

std::optional<std::uint64_t> as_numeral(const Term& t) {
  std::uint64_t n = 0;
  const Term* cur = &t;
  while (true) {
    if (cur->kind() == Term::Kind::Cons && cur->symbol().name == "zero") return n;
    if (cur->kind() == Term::Kind::App && cur->spine_length() == 1 &&
        cur->fun().kind() == Term::Kind::Cons && cur->fun().symbol().name == "succ") {
      ++n;
      cur = &cur->arg();
      continue;
    }
    return std::nullopt;
  }
}

std::optional<std::vector<std::uint64_t>> as_list(const Term& t) {
  std::vector<std::uint64_t> rev;
  const Term* cur = &t;
  while (true) {
    if (cur->kind() == Term::Kind::Cons && cur->symbol().name == "nil") break;
    if (cur->kind() == Term::Kind::App && cur->spine_length() == 2) {
      const Term h = cur->head();
      if (h.kind() == Term::Kind::Cons && h.symbol().name == "cons") {
        auto x = as_numeral(cur->arg());
        if (!x) return std::nullopt;
        rev.push_back(*x);
        cur = &cur->fun().arg();
        continue;
      }
    }
    return std::nullopt;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

namespace {

// prec 0: anything; 1: function position; 2: argument position.
void print_term(const Term& t, int prec, std::string& out) {
  if (auto n = as_numeral(t)) {
    out += std::to_string(*n);
    return;
  }
  if (auto xs = as_list(t)) {
    out += '[';
    for (std::size_t i = 0; i < xs->size(); ++i) {
      if (i) out += ',';
      out += std::to_string((*xs)[i]);
    }
    out += ']';
    return;
  }
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.name();
      return;
    case Term::Kind::Cons:
    case Term::Kind::Func:
      out += t.symbol().display();
      return;
    case Term::Kind::Lam:
      if (prec > 0) out += '(';
      out += "fn " + t.name() + ":" + t.binder_type().to_string() + " => ";
      print_term(t.body(), 0, out);
      if (prec > 0) out += ')';
      return;
    case Term::Kind::App:
      if (prec > 1) out += '(';
      print_term(t.fun(), 1, out);
      out += ' ';
      print_term(t.arg(), 2, out);
      if (prec > 1) out += ')';
      return;
  }
}

}  // namespace

std::string Term::to_string() const {
  std::string out;
  print_term(*this, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Patterns

Pattern Pattern::var(std::string name, Ty type) {
  Pattern p;
  p.kind_ = Kind::Var;
  p.name_ = std::move(name);
  p.type_ = std::move(type);
  return p;
}

Pattern Pattern::cons(std::string symbol, std::vector<Pattern> args) {
  Pattern p;
  p.kind_ = Kind::Cons;
  p.name_ = std::move(symbol);
  p.args_ = std::move(args);
  return p;
}

Term Pattern::to_term() const {
  if (kind_ == Kind::Var) return Term::var(name_);
  std::vector<Term> args;
  for (const auto& a : args_) args.push_back(a.to_term());
  return Term::apps(Term::cons(name_), args);
}

void Pattern::collect_vars(std::vector<std::string>& out) const {
  if (kind_ == Kind::Var) {
    out.push_back(name_);
    return;
  }
  for (const auto& a : args_) a.collect_vars(out);
}

std::string Pattern::to_string() const {
  if (kind_ == Kind::Var) return name_;
  if (args_.empty()) return name_;
  std::string s = "(" + name_;
  for (const auto& a : args_) s += " " + a.to_string();
  return s + ")";
}

bool is_linear(std::span<const Pattern> patterns) {
  std::vector<std::string> vars;
  for (const auto& p : patterns) p.collect_vars(vars);
  std::sort(vars.begin(), vars.end());
  return std::adjacent_find(vars.begin(), vars.end()) == vars.end();
}

// ---------------------------------------------------------------------------
// Contexts

TyContext TyContext::extend(const std::string& name, Ty type) const {
  TyContext out = *this;
  auto it = std::find_if(out.entries_.begin(), out.entries_.end(),
                         [&](const auto& e) { return e.first == name; });
  if (it != out.entries_.end()) out.entries_.erase(it);
  out.entries_.emplace_back(name, std::move(type));
  return out;
}

const Ty* TyContext::lookup(std::string_view name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Substitution

Term substitute(const Term& t, const std::string& name, const Term& value) {
  if (!t.has_free(name)) return t;
  switch (t.kind()) {
    case Term::Kind::Var:
      return value;
    case Term::Kind::Lam:
      return Term::lam(t.name(), t.binder_type(), substitute(t.body(), name, value));
    case Term::Kind::App:
      return Term::app(substitute(t.fun(), name, value), substitute(t.arg(), name, value));
    default:
      return t;
  }
}

Term substitute(const Term& t, const Substitution& sigma) {
  if (t.closed() || sigma.empty()) return t;
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = sigma.find(t.name());
      return it == sigma.end() ? t : it->second;
    }
    case Term::Kind::Lam: {
      if (sigma.count(t.name())) {
        Substitution inner = sigma;
        inner.erase(t.name());
        return Term::lam(t.name(), t.binder_type(), substitute(t.body(), inner));
      }
      return Term::lam(t.name(), t.binder_type(), substitute(t.body(), sigma));
    }
    case Term::Kind::App:
      return Term::app(substitute(t.fun(), sigma), substitute(t.arg(), sigma));
    default:
      return t;
  }
}

// ---------------------------------------------------------------------------
// Matching

namespace {

bool match_one(const Pattern& p, const Term& v, Substitution& sigma) {
  if (p.kind() == Pattern::Kind::Var) {
    auto [it, inserted] = sigma.emplace(p.name(), v);
    return inserted || it->second == v;
  }
  const Term h = v.head();
  if (h.kind() != Term::Kind::Cons || h.symbol().name != p.name()) return false;
  if (v.spine_length() != p.args().size()) return false;
  const auto args = v.spine_args();
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!match_one(p.args()[i], args[i], sigma)) return false;
  return true;
}

}  // namespace

std::optional<Substitution> match_pattern(std::span<const Pattern> patterns, std::span<const Term> values) {
  if (patterns.size() != values.size()) return std::nullopt;
  Substitution sigma;
  for (std::size_t i = 0; i < patterns.size(); ++i)
    if (!match_one(patterns[i], values[i], sigma)) return std::nullopt;
  return sigma;
}

// ---------------------------------------------------------------------------
// Typing

namespace {

void check_type_declared(const Signature& sig, const Ty& ty) {
  if (ty.is_data()) {
    if (!sig.has_datatype(ty.name())) throw UndeclaredSymbol(ty.name());
    return;
  }
  check_type_declared(sig, ty.dom());
  check_type_declared(sig, ty.cod());
}

std::string location_of(const Term& t) {
  std::string s = t.to_string();
  if (s.size() > 72) s = s.substr(0, 69) + "...";
  return "`" + s + "`";
}

}  // namespace

Ty typecheck(const Signature& sig, const TyContext& ctx, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      const Ty* ty = ctx.lookup(t.name());
      if (!ty) throw UnboundVariable(t.name());
      return *ty;
    }
    case Term::Kind::Cons: {
      const ConstructorDecl* decl = sig.constructor(t.symbol().name);
      if (!decl) throw UndeclaredSymbol(t.symbol().display());
      return Ty::arrows(decl->args, decl->result);
    }
    case Term::Kind::Func: {
      if (t.symbol().index) check_type_declared(sig, *t.symbol().index);
      auto decl = sig.function(t.symbol());
      if (!decl) throw UndeclaredSymbol(t.symbol().display());
      return decl->type;
    }
    case Term::Kind::Lam: {
      check_type_declared(sig, t.binder_type());
      Ty body = typecheck(sig, ctx.extend(t.name(), t.binder_type()), t.body());
      return Ty::arrow(t.binder_type(), std::move(body));
    }
    case Term::Kind::App: {
      Ty f = typecheck(sig, ctx, t.fun());
      if (!f.is_arrow()) throw TypeMismatch("a function type", f.to_string(), location_of(t));
      Ty a = typecheck(sig, ctx, t.arg());
      if (!(a == f.dom())) throw TypeMismatch(f.dom().to_string(), a.to_string(), location_of(t));
      return f.cod();
    }
  }
  throw TypeError("unreachable term kind");
}

void collect_symbols(const Term& t, std::vector<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Cons:
    case Term::Kind::Func:
      out.push_back(t.symbol().display());
      return;
    case Term::Kind::Lam:
      collect_symbols(t.body(), out);
      return;
    case Term::Kind::App:
      collect_symbols(t.fun(), out);
      collect_symbols(t.arg(), out);
      return;
    default:
      return;
  }
}

}  // namespace writ
