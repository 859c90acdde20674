#pragma once

// The monadic metalanguage and the call-by-value translation into it.
//
// Types:  gamma | |delta| | A x B | A -> B
// Terms:  iota | inc t | com(r, s, t) | x | #c | #f | \x:A. t | t s
//         | (s, t) | t.l | t.r
//
// A target type rho -> tau is lifted to |rho| -> gamma x |tau|, and a term
// t : rho translates to |t| : gamma x |rho|.

#include <memory>
#include <string>
#include <vector>

#include "writ/signature.hpp"
#include "writ/syntax.hpp"

namespace writ {

class MetaType {
 public:
  enum class Kind { Gamma, Data, Prod, Arrow };

  static MetaType gamma();
  static MetaType data(std::string name);
  static MetaType prod(MetaType a, MetaType b);
  static MetaType arrow(MetaType a, MetaType b);

  Kind kind() const;
  const std::string& name() const;
  const MetaType& left() const;
  const MetaType& right() const;

  std::string to_string() const;
  friend bool operator==(const MetaType& a, const MetaType& b);

 private:
  struct Node;
  explicit MetaType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// |delta| = Data(delta); |rho -> tau| = |rho| -> gamma x |tau|.
MetaType lift(const Ty& ty);

class MetaTerm {
 public:
  enum class Kind { Iota, Inc, Com, Var, Cons, Func, Lam, App, Pair, ProjL, ProjR };

  static MetaTerm iota();
  static MetaTerm inc(MetaTerm t);
  static MetaTerm com(MetaTerm r, MetaTerm s, MetaTerm t);
  static MetaTerm var(std::string name);
  static MetaTerm cons(std::string symbol);
  static MetaTerm func(Symbol symbol);
  static MetaTerm lam(std::string name, MetaType type, MetaTerm body);
  static MetaTerm app(MetaTerm f, MetaTerm a);
  static MetaTerm pair(MetaTerm a, MetaTerm b);
  static MetaTerm proj_l(MetaTerm t);
  static MetaTerm proj_r(MetaTerm t);

  Kind kind() const;
  const std::string& name() const;
  const Symbol& symbol() const;
  const MetaType& binder_type() const;
  /// Children in order (0 to 3 of them).
  const std::vector<MetaTerm>& children() const;
  const MetaTerm& child(std::size_t i) const { return children()[i]; }

  /// Identity of the shared node; translated terms reuse subterm nodes.
  const void* id() const { return node_.get(); }

  /// Fully expanded text; exponential in the size of translated terms.
  std::string to_string() const;
  /// Text with every repeated compound subterm named once, as
  /// `body` followed by `where @k = ...` lines.
  std::string to_shared_string() const;
  friend bool operator==(const MetaTerm& a, const MetaTerm& b);

 private:
  struct Node;
  explicit MetaTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class MetaContext {
 public:
  MetaContext extend(const std::string& name, MetaType type) const;
  const MetaType* lookup(const std::string& name) const;
  /// |Gamma| for a target context.
  static MetaContext lift(const TyContext& ctx);

 private:
  std::vector<std::pair<std::string, MetaType>> entries_;
};

/// |t|. Typechecks t first and propagates its TypeError.
MetaTerm translate(const Signature& sig, const TyContext& ctx, const Term& t);
inline MetaTerm translate(const Signature& sig, const Term& t) { return translate(sig, TyContext{}, t); }

/// Type of mt under ctx; throws MetaTypeMismatch on ill-formed terms.
MetaType meta_typecheck(const Signature& sig, const MetaContext& ctx, const MetaTerm& mt);
inline MetaType meta_typecheck(const Signature& sig, const MetaTerm& mt) {
  return meta_typecheck(sig, MetaContext{}, mt);
}

}  // namespace writ
