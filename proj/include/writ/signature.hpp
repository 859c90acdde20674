#pragma once

// Language instances: datatypes, constructors and function symbols with
// their rewrite rules. Four instances are built in (System T, list-based T,
// bar recursion, and any of these extended with an oracle).

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "writ/syntax.hpp"

namespace writ {

/// f p1 .. pk ~> rhs
struct Rule {
  std::vector<Pattern> lhs;
  Term rhs;
};

/// A countable rule family implemented natively. One application counts as
/// one rewrite step. delta receives exactly `arity` closed values.
struct Builtin {
  std::size_t arity = 0;
  std::function<Term(std::span<const Term>)> delta;
};

struct ConstructorDecl {
  std::string name;
  std::vector<Ty> args;
  Ty result;
};

struct FunctionDecl {
  Symbol symbol;
  Ty type;
  std::size_t arity = 0;
  std::vector<Rule> rules;
  std::optional<Builtin> builtin;
};

// ---------------------------------------------------------------------------
// Oracles

/// A total function N -> N used to interpret the oracle symbol alpha.
class OracleSpec {
 public:
  struct Table {
    std::map<std::uint64_t, std::uint64_t> pairs;
    std::uint64_t fallback = 0;
  };
  struct Identity {};
  struct Constant {
    std::uint64_t value = 0;
  };

  OracleSpec() : repr_(Identity{}) {}
  static OracleSpec identity() { return OracleSpec(Identity{}); }
  static OracleSpec constant(std::uint64_t k) { return OracleSpec(Constant{k}); }
  static OracleSpec table(std::map<std::uint64_t, std::uint64_t> pairs, std::uint64_t fallback = 0) {
    return OracleSpec(Table{std::move(pairs), fallback});
  }

  std::uint64_t operator()(std::uint64_t n) const;

  const std::variant<Table, Identity, Constant>& repr() const { return repr_; }

  /// Parses the JSON form {"kind":"table","pairs":[[0,9]],"default":0},
  /// {"kind":"identity"} or {"kind":"constant","value":5}.
  static OracleSpec from_json(const std::string& text);
  std::string to_json() const;

  /// Parses the inline form: `identity`, `constant:K` or
  /// `table:K=V/K=V[/default=D]`.
  static OracleSpec parse_inline(const std::string& text);
  std::string to_inline() const;

 private:
  template <class T>
  explicit OracleSpec(T repr) : repr_(std::move(repr)) {}
  std::variant<Table, Identity, Constant> repr_;
};

// ---------------------------------------------------------------------------
// Signatures

class Signature {
 public:
  using FamilyGenerator = std::function<FunctionDecl(const Ty& index)>;

  explicit Signature(std::string name = "empty") : name_(std::move(name)) {}
  Signature(const Signature& other);
  Signature& operator=(const Signature& other);

  const std::string& name() const { return name_; }
  void rename(std::string name) { name_ = std::move(name); }

  void declare_datatype(const std::string& name);
  void declare_constructor(ConstructorDecl decl);
  void declare_function(FunctionDecl decl);
  void declare_family(const std::string& name, FamilyGenerator generator);

  bool has_datatype(const std::string& name) const { return datatypes_.count(name) != 0; }
  const std::set<std::string>& datatypes() const { return datatypes_; }
  const ConstructorDecl* constructor(const std::string& name) const;
  const std::map<std::string, ConstructorDecl>& constructors() const { return constructors_; }

  /// Declaration for a function symbol, instantiating families on demand.
  /// Returns nullptr when the symbol is not declared.
  std::shared_ptr<const FunctionDecl> function(const Symbol& symbol) const;
  bool declares(const Symbol& symbol) const { return function(symbol) != nullptr; }
  bool has_family(const std::string& name) const { return families_.count(name) != 0; }

  /// Names of plain (non-family) function symbols.
  std::vector<std::string> function_names() const;
  std::vector<std::string> family_names() const;

  const std::optional<OracleSpec>& oracle() const { return oracle_; }
  void set_oracle(OracleSpec g) { oracle_ = std::move(g); }

 private:
  std::string name_;
  std::set<std::string> datatypes_;
  std::map<std::string, ConstructorDecl> constructors_;
  std::map<std::string, std::shared_ptr<const FunctionDecl>> functions_;
  std::map<std::string, FamilyGenerator> families_;
  std::optional<OracleSpec> oracle_;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, std::shared_ptr<const FunctionDecl>> family_cache_;
};

/// 0, s and rec[τ].
Signature system_t();
/// system_t plus nil, cons, fold[τ], add, mul, lt, len.
Signature system_t_list();
/// system_t_list plus ext, bar, bar1.
Signature bar_rec();
/// Adds the oracle alpha : Nat -> Nat with alpha n ~> g(n).
Signature with_oracle(Signature sig, OracleSpec g);

/// Smallest built-in signature declaring every symbol of t: bar_rec if t
/// uses ext/bar/bar1, system_t_list if it uses lists, fold or arithmetic
/// builtins, system_t otherwise. Adds the oracle if given.
Signature signature_for(const Term& t, const std::optional<OracleSpec>& oracle = std::nullopt);
/// Looks up a built-in signature by short name: t, list, bar.
Signature signature_by_name(const std::string& name);

}  // namespace writ
