#include "writ/signature.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "writ/error.hpp"

namespace writ {

namespace {

// Largest numeral a builtin may return.
constexpr std::uint64_t kMaxNumeral = std::uint64_t{1} << 24;

std::uint64_t numeral_arg(const Term& t) {
  auto n = as_numeral(t);
  if (!n) throw ShapeMismatch("expected a numeral, got " + t.to_string());
  return *n;
}

std::vector<std::uint64_t> list_arg(const Term& t) {
  auto xs = as_list(t);
  if (!xs) throw ShapeMismatch("expected a list of numerals, got " + t.to_string());
  return *xs;
}

Term checked_numeral(std::uint64_t n) {
  if (n > kMaxNumeral) throw ArithmeticOverflow();
  return numeral(n);
}

Ty nat_to_nat() { return Ty::arrow(Ty::nat(), Ty::nat()); }
Ty bar_omega_type() { return Ty::arrow(nat_to_nat(), Ty::nat()); }
Ty bar_base_type() { return Ty::arrow(Ty::list(), Ty::nat()); }
Ty bar_step_type() { return Ty::arrow(Ty::list(), Ty::arrow(nat_to_nat(), Ty::nat())); }

Term v(const char* name) { return Term::var(name); }

FunctionDecl make_builtin(std::string name, Ty type, std::size_t arity,
                          std::function<Term(std::span<const Term>)> delta) {
  return FunctionDecl{Symbol{std::move(name), std::nullopt}, std::move(type), arity, {},
                      Builtin{arity, std::move(delta)}};
}

FunctionDecl make_recursor(const char* family, const Ty& index, const Ty& scrutinee,
                           Pattern base_case, Pattern step_case, const char* pred, const char* hd) {
  const Symbol self{family, index};
  const Ty step = Ty::arrow(Ty::nat(), Ty::arrow(index, index));
  FunctionDecl d{self, Ty::arrows(std::vector<Ty>{index, step, scrutinee}, index), 3, {}, std::nullopt};
  d.rules.push_back(Rule{{Pattern::var("x", index), Pattern::var("y", step), std::move(base_case)}, v("x")});
  // y hd (self x y pred)
  Term recurse = Term::apps(Term::func(self), {v("x"), v("y"), v(pred)});
  d.rules.push_back(Rule{{Pattern::var("x", index), Pattern::var("y", step), std::move(step_case)},
                         Term::apps(v("y"), {v(hd), recurse})});
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// OracleSpec

std::uint64_t OracleSpec::operator()(std::uint64_t n) const {
  return std::visit(
      [n](const auto& r) -> std::uint64_t {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Identity>) {
          return n;
        } else if constexpr (std::is_same_v<T, Constant>) {
          return r.value;
        } else {
          auto it = r.pairs.find(n);
          return it == r.pairs.end() ? r.fallback : it->second;
        }
      },
      repr_);
}

OracleSpec OracleSpec::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("oracle file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error("oracle JSON must be an object with a string field \"kind\"");
  const std::string kind = j["kind"];
  try {
    if (kind == "identity") return identity();
    if (kind == "constant") return constant(j.at("value").get<std::uint64_t>());
    if (kind == "table") {
      std::map<std::uint64_t, std::uint64_t> pairs;
      for (const auto& p : j.value("pairs", nlohmann::json::array())) {
        if (!p.is_array() || p.size() != 2) throw Error("table pairs must be [input, output] arrays");
        pairs[p[0].get<std::uint64_t>()] = p[1].get<std::uint64_t>();
      }
      return table(std::move(pairs), j.value("default", std::uint64_t{0}));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed oracle JSON: ") + e.what());
  }
  throw Error("unknown oracle kind '" + kind + "'");
}

std::string OracleSpec::to_json() const {
  nlohmann::ordered_json j;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Identity>) {
          j["kind"] = "identity";
        } else if constexpr (std::is_same_v<T, Constant>) {
          j["kind"] = "constant";
          j["value"] = r.value;
        } else {
          j["kind"] = "table";
          j["pairs"] = nlohmann::ordered_json::array();
          for (auto [k, val] : r.pairs) j["pairs"].push_back({k, val});
          j["default"] = r.fallback;
        }
      },
      repr_);
  return j.dump();
}

OracleSpec OracleSpec::parse_inline(const std::string& text) {
  auto parse_nat = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw Error("bad number '" + s + "' in oracle '" + text + "'");
    return std::stoull(s);
  };
  if (text == "identity") return identity();
  if (text.rfind("constant:", 0) == 0) return constant(parse_nat(text.substr(9)));
  if (text.rfind("table:", 0) == 0) {
    std::map<std::uint64_t, std::uint64_t> pairs;
    std::uint64_t fallback = 0;
    std::stringstream ss(text.substr(6));
    std::string item;
    while (std::getline(ss, item, '/')) {
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) throw Error("bad table entry '" + item + "' in oracle '" + text + "'");
      const std::string key = item.substr(0, eq);
      const std::uint64_t val = parse_nat(item.substr(eq + 1));
      if (key == "default")
        fallback = val;
      else
        pairs[parse_nat(key)] = val;
    }
    return table(std::move(pairs), fallback);
  }
  throw Error("unknown oracle '" + text + "' (expected identity, constant:K or table:K=V/.../default=D)");
}

std::string OracleSpec::to_inline() const {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Identity>) {
          return "identity";
        } else if constexpr (std::is_same_v<T, Constant>) {
          return "constant:" + std::to_string(r.value);
        } else {
          std::string s = "table:";
          for (auto [k, val] : r.pairs) s += std::to_string(k) + "=" + std::to_string(val) + "/";
          return s + "default=" + std::to_string(r.fallback);
        }
      },
      repr_);
}

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(const Signature& other)
    : name_(other.name_),
      datatypes_(other.datatypes_),
      constructors_(other.constructors_),
      functions_(other.functions_),
      families_(other.families_),
      oracle_(other.oracle_) {}

Signature& Signature::operator=(const Signature& other) {
  if (this == &other) return *this;
  name_ = other.name_;
  datatypes_ = other.datatypes_;
  constructors_ = other.constructors_;
  functions_ = other.functions_;
  families_ = other.families_;
  oracle_ = other.oracle_;
  std::lock_guard lock(cache_mutex_);
  family_cache_.clear();
  return *this;
}

void Signature::declare_datatype(const std::string& name) { datatypes_.insert(name); }

void Signature::declare_constructor(ConstructorDecl decl) {
  if (constructors_.count(decl.name)) throw DuplicateSymbol(decl.name);
  const std::string name = decl.name;
  constructors_.emplace(name, std::move(decl));
}

void Signature::declare_function(FunctionDecl decl) {
  const std::string name = decl.symbol.display();
  if (functions_.count(name) || families_.count(name)) throw DuplicateSymbol(name);
  functions_.emplace(name, std::make_shared<const FunctionDecl>(std::move(decl)));
}

void Signature::declare_family(const std::string& name, FamilyGenerator generator) {
  if (functions_.count(name) || families_.count(name)) throw DuplicateSymbol(name);
  families_.emplace(name, std::move(generator));
}

const ConstructorDecl* Signature::constructor(const std::string& name) const {
  auto it = constructors_.find(name);
  return it == constructors_.end() ? nullptr : &it->second;
}

std::shared_ptr<const FunctionDecl> Signature::function(const Symbol& symbol) const {
  if (!symbol.index) {
    auto it = functions_.find(symbol.name);
    return it == functions_.end() ? nullptr : it->second;
  }
  auto fam = families_.find(symbol.name);
  if (fam == families_.end()) return nullptr;
  const std::string key = symbol.display();
  std::lock_guard lock(cache_mutex_);
  auto it = family_cache_.find(key);
  if (it != family_cache_.end()) return it->second;
  auto decl = std::make_shared<const FunctionDecl>(fam->second(*symbol.index));
  family_cache_.emplace(key, decl);
  return decl;
}

std::vector<std::string> Signature::function_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : functions_) out.push_back(name);
  return out;
}

std::vector<std::string> Signature::family_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : families_) out.push_back(name);
  return out;
}

// ---------------------------------------------------------------------------
// Built-in instances

Signature system_t() {
  Signature sig("system_t");
  sig.declare_datatype("Nat");
  sig.declare_constructor({"zero", {}, Ty::nat()});
  sig.declare_constructor({"succ", {Ty::nat()}, Ty::nat()});
  sig.declare_family("rec", [](const Ty& rho) {
    return make_recursor("rec", rho, Ty::nat(), Pattern::cons("zero"),
                         Pattern::cons("succ", {Pattern::var("z", Ty::nat())}), "z", "z");
  });
  return sig;
}

Signature system_t_list() {
  Signature sig = system_t();
  sig.rename("system_t_list");
  sig.declare_datatype("List");
  sig.declare_constructor({"nil", {}, Ty::list()});
  sig.declare_constructor({"cons", {Ty::list(), Ty::nat()}, Ty::list()});
  sig.declare_family("fold", [](const Ty& rho) {
    return make_recursor("fold", rho, Ty::list(), Pattern::cons("nil"),
                         Pattern::cons("cons", {Pattern::var("zs", Ty::list()), Pattern::var("z", Ty::nat())}),
                         "zs", "z");
  });
  const Ty binop = Ty::arrow(Ty::nat(), nat_to_nat());
  sig.declare_function(make_builtin("add", binop, 2, [](std::span<const Term> a) {
    const auto m = numeral_arg(a[0]), n = numeral_arg(a[1]);
    return checked_numeral(m + n);
  }));
  sig.declare_function(make_builtin("mul", binop, 2, [](std::span<const Term> a) {
    const auto m = numeral_arg(a[0]), n = numeral_arg(a[1]);
    if (m != 0 && n > kMaxNumeral / m) throw ArithmeticOverflow();
    return checked_numeral(m * n);
  }));
  sig.declare_function(make_builtin("lt", binop, 2, [](std::span<const Term> a) {
    return numeral(numeral_arg(a[0]) < numeral_arg(a[1]) ? 0 : 1);
  }));
  sig.declare_function(make_builtin("len", Ty::arrow(Ty::list(), Ty::nat()), 1, [](std::span<const Term> a) {
    return numeral(list_arg(a[0]).size());
  }));
  return sig;
}

Signature bar_rec() {
  Signature sig = system_t_list();
  sig.rename("bar_rec");
  sig.declare_function(make_builtin("ext", Ty::arrow(Ty::list(), nat_to_nat()), 2, [](std::span<const Term> a) {
    const auto xs = list_arg(a[0]);
    const auto n = numeral_arg(a[1]);
    return numeral(n < xs.size() ? xs[n] : 0);
  }));

  const Ty r1 = bar_omega_type(), r2 = bar_base_type(), r3 = bar_step_type();
  const Symbol bar{"bar", std::nullopt}, bar1{"bar1", std::nullopt};
  auto params = [&] {
    return std::vector<Pattern>{Pattern::var("f", r1), Pattern::var("g", r2), Pattern::var("h", r3),
                                Pattern::var("xs", Ty::list())};
  };

  // bar f g h xs ~> bar1 f g h xs (lt (f (ext xs)) (len xs))
  FunctionDecl bar_decl{bar, Ty::arrows(std::vector<Ty>{r1, r2, r3, Ty::list()}, Ty::nat()), 4, {}, std::nullopt};
  {
    Term test = Term::apps(Term::func("lt"), {Term::app(v("f"), Term::app(Term::func("ext"), v("xs"))),
                                              Term::app(Term::func("len"), v("xs"))});
    bar_decl.rules.push_back(
        Rule{params(), Term::apps(Term::func(bar1), {v("f"), v("g"), v("h"), v("xs"), test})});
  }
  sig.declare_function(std::move(bar_decl));

  // bar1 f g h xs 0 ~> g xs
  // bar1 f g h xs (s z) ~> h xs (fn x:Nat => bar f g h (cons xs x))
  FunctionDecl bar1_decl{bar1, Ty::arrows(std::vector<Ty>{r1, r2, r3, Ty::list(), Ty::nat()}, Ty::nat()), 5, {},
                         std::nullopt};
  {
    auto lhs = params();
    lhs.push_back(Pattern::cons("zero"));
    bar1_decl.rules.push_back(Rule{std::move(lhs), Term::app(v("g"), v("xs"))});
  }
  {
    auto lhs = params();
    lhs.push_back(Pattern::cons("succ", {Pattern::var("z", Ty::nat())}));
    Term extend = Term::apps(Term::cons("cons"), {v("xs"), v("x")});
    Term again = Term::lam("x", Ty::nat(), Term::apps(Term::func(bar), {v("f"), v("g"), v("h"), extend}));
    bar1_decl.rules.push_back(Rule{std::move(lhs), Term::apps(v("h"), {v("xs"), again})});
  }
  sig.declare_function(std::move(bar1_decl));
  return sig;
}

Signature with_oracle(Signature sig, OracleSpec g) {
  if (sig.declares(Symbol{"alpha", std::nullopt})) throw DuplicateSymbol("alpha");
  sig.declare_function(make_builtin("alpha", nat_to_nat(), 1, [g](std::span<const Term> a) {
    return checked_numeral(g(numeral_arg(a[0])));
  }));
  sig.set_oracle(std::move(g));
  sig.rename(sig.name() + "+alpha");
  return sig;
}

namespace {

void collect_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Cons:
    case Term::Kind::Func:
      out.insert(t.symbol().name);
      return;
    case Term::Kind::Lam:
      collect_names(t.body(), out);
      return;
    case Term::Kind::App:
      collect_names(t.fun(), out);
      collect_names(t.arg(), out);
      return;
    default:
      return;
  }
}

bool mentions_list_type(const Term& t) {
  std::function<bool(const Ty&)> in_ty = [&](const Ty& ty) {
    return ty.is_data() ? ty.name() == "List" : in_ty(ty.dom()) || in_ty(ty.cod());
  };
  switch (t.kind()) {
    case Term::Kind::Func:
      return t.symbol().index && in_ty(*t.symbol().index);
    case Term::Kind::Lam:
      return in_ty(t.binder_type()) || mentions_list_type(t.body());
    case Term::Kind::App:
      return mentions_list_type(t.fun()) || mentions_list_type(t.arg());
    default:
      return false;
  }
}

}  // namespace

Signature signature_for(const Term& t, const std::optional<OracleSpec>& oracle) {
  std::set<std::string> names;
  collect_names(t, names);
  auto uses = [&](std::initializer_list<const char*> xs) {
    return std::any_of(xs.begin(), xs.end(), [&](const char* x) { return names.count(x) != 0; });
  };
  Signature sig = uses({"ext", "bar", "bar1"})                                              ? bar_rec()
                  : uses({"nil", "cons", "fold", "add", "mul", "lt", "len"}) || mentions_list_type(t) ? system_t_list()
                                                                                             : system_t();
  if (oracle)
    sig = with_oracle(std::move(sig), *oracle);
  else if (names.count("alpha"))
    sig = with_oracle(std::move(sig), OracleSpec::identity());
  return sig;
}

Signature signature_by_name(const std::string& name) {
  if (name == "t" || name == "system_t") return system_t();
  if (name == "list" || name == "system_t_list") return system_t_list();
  if (name == "bar" || name == "bar_rec") return bar_rec();
  throw Error("unknown signature '" + name + "' (expected t, list or bar)");
}

}  // namespace writ
