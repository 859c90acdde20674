#pragma once

// Types, terms, patterns and values of the call-by-value target language.
//
// Terms are immutable and shared. Every node caches its free variables and
// whether it is a value, so value tests and substitution short-cuts are O(1).

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace writ {

class Signature;

// ---------------------------------------------------------------------------
// Types

class Ty {
 public:
  enum class Kind { Data, Arrow };

  static Ty data(std::string name);
  static Ty arrow(Ty dom, Ty cod);
  static Ty nat();
  static Ty list();
  /// args[0] -> args[1] -> ... -> result
  static Ty arrows(std::span<const Ty> args, Ty result);

  Kind kind() const;
  bool is_data() const { return kind() == Kind::Data; }
  bool is_arrow() const { return kind() == Kind::Arrow; }
  /// Datatype name; only valid for Data.
  const std::string& name() const;
  const Ty& dom() const;
  const Ty& cod() const;

  std::string to_string() const;

  friend bool operator==(const Ty& a, const Ty& b);

 private:
  struct Node;
  explicit Ty(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Symbols

/// A constructor or function symbol. Type-indexed families (rec[τ],
/// fold[τ]) carry their index; every distinct index is a distinct symbol.
struct Symbol {
  std::string name;
  std::optional<Ty> index;

  std::string display() const;
  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.name == b.name && a.index == b.index;
  }
};

/// Arity of a reserved symbol, or nullopt if the name is not reserved.
std::optional<std::size_t> reserved_arity(std::string_view name);
bool is_constructor_name(std::string_view name);
bool is_function_name(std::string_view name);
/// True for families that need a type index (rec, fold).
bool is_indexed_family(std::string_view name);

// ---------------------------------------------------------------------------
// Terms

class Term {
 public:
  enum class Kind { Var, Cons, Func, Lam, App };

  static Term var(std::string name);
  static Term cons(std::string name);
  static Term func(Symbol symbol);
  static Term func(std::string name) { return func(Symbol{std::move(name), std::nullopt}); }
  static Term lam(std::string name, Ty type, Term body);
  static Term app(Term fun, Term arg);
  static Term apps(Term head, std::span<const Term> args);
  static Term apps(Term head, std::initializer_list<Term> args) {
    return apps(std::move(head), std::span<const Term>(args.begin(), args.size()));
  }

  Kind kind() const;
  /// Variable name (Var) or bound name (Lam).
  const std::string& name() const;
  /// Constructor or function symbol (Cons, Func).
  const Symbol& symbol() const;
  /// Binder type (Lam).
  const Ty& binder_type() const;
  const Term& body() const;
  const Term& fun() const;
  const Term& arg() const;

  /// Sorted, duplicate-free free variable names.
  const std::vector<std::string>& free_vars() const;
  bool closed() const { return free_vars().empty(); }
  bool has_free(std::string_view name) const;

  /// Value grammar: c v1..vi (i <= ar c), f v1..vj (j < ar f), or a closed
  /// lambda.
  bool is_value() const;

  /// Head of the application spine and the number of arguments applied to it.
  Term head() const;
  std::size_t spine_length() const;
  /// Arguments of the application spine, left to right.
  std::vector<Term> spine_args() const;

  std::string to_string() const;

  /// Structural equality (binder names must agree).
  friend bool operator==(const Term& a, const Term& b);
  /// Node identity; cheap pre-check for equality.
  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// succ^n zero
Term numeral(std::uint64_t n);
/// cons-chain (snoc order) ending in nil: [a0, a1] = cons (cons nil a0) a1.
Term list_literal(std::span<const std::uint64_t> items);
std::optional<std::uint64_t> as_numeral(const Term& t);
std::optional<std::vector<std::uint64_t>> as_list(const Term& t);

// ---------------------------------------------------------------------------
// Patterns

class Pattern {
 public:
  enum class Kind { Var, Cons };

  static Pattern var(std::string name, Ty type);
  static Pattern cons(std::string symbol, std::vector<Pattern> args = {});

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Ty& type() const { return *type_; }
  const std::vector<Pattern>& args() const { return args_; }

  /// The term this pattern denotes with its variables left free.
  Term to_term() const;
  void collect_vars(std::vector<std::string>& out) const;
  std::string to_string() const;

 private:
  Kind kind_ = Kind::Var;
  std::string name_;
  std::optional<Ty> type_;
  std::vector<Pattern> args_;
};

/// True iff no variable occurs twice across the whole vector.
bool is_linear(std::span<const Pattern> patterns);

// ---------------------------------------------------------------------------
// Contexts, substitution, matching, typing

class TyContext {
 public:
  TyContext() = default;

  /// Returns a context with name bound to type; an existing binding of the
  /// same name is replaced (shadowed).
  TyContext extend(const std::string& name, Ty type) const;
  const Ty* lookup(std::string_view name) const;
  const std::vector<std::pair<std::string, Ty>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<std::pair<std::string, Ty>> entries_;
};

using Substitution = std::map<std::string, Term, std::less<>>;

/// Replaces free occurrences of name by value. Values are closed, so no
/// capture can happen.
Term substitute(const Term& t, const std::string& name, const Term& value);
Term substitute(const Term& t, const Substitution& sigma);

/// Returns the unique sigma with p_i sigma = v_i, or nullopt.
std::optional<Substitution> match_pattern(std::span<const Pattern> patterns,
                                          std::span<const Term> values);

/// Type of t under ctx, or throws a TypeError.
Ty typecheck(const Signature& sig, const TyContext& ctx, const Term& t);
inline Ty typecheck(const Signature& sig, const Term& t) { return typecheck(sig, TyContext{}, t); }

/// Collects every Cons/Func symbol display name occurring in t.
void collect_symbols(const Term& t, std::vector<std::string>& out);

}  // namespace writ
