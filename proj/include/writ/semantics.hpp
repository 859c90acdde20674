#pragma once

// Denotational semantics of the metalanguage over a pluggable instantiation,
// and the pure set-theoretic semantics of target terms.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "writ/meta.hpp"
#include "writ/signature.hpp"
#include "writ/syntax.hpp"

namespace writ {

/// Step budget shared by every host function built during one denotation.
class Budget {
 public:
  explicit Budget(std::uint64_t max_steps = 10'000'000) : max_(max_steps) {}
  void tick();
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t max_;
  std::uint64_t used_ = 0;
};

class SemVal {
 public:
  enum class Kind { Eff, Base, BaseList, Pair, Fun };
  /// Element of an effect carrier: Unit, Nat or NatList.
  using Carrier = std::variant<std::monostate, std::uint64_t, std::vector<std::uint64_t>>;
  using Fn = std::function<SemVal(const SemVal&)>;

  SemVal();
  static SemVal eff(Carrier c);
  static SemVal base(std::uint64_t n);
  static SemVal base_list(std::vector<std::uint64_t> xs);
  static SemVal pair(SemVal a, SemVal b);
  static SemVal fun(Fn f);

  Kind kind() const;
  const Carrier& carrier() const;
  std::uint64_t nat() const;
  const std::vector<std::uint64_t>& list() const;
  const SemVal& first() const;
  const SemVal& second() const;
  SemVal operator()(const SemVal& x) const;

  std::string to_string() const;

 private:
  struct Node;
  explicit SemVal(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string carrier_to_string(const SemVal::Carrier& c);
/// Natural-number carrier element; throws ShapeMismatch otherwise.
std::uint64_t carrier_nat(const SemVal::Carrier& c);
const std::vector<std::uint64_t>& carrier_list(const SemVal::Carrier& c);

struct EffectTriple {
  enum class Kind { Unit, Nat, NatList };
  Kind kind = Kind::Unit;
  SemVal::Carrier eps;
  std::function<SemVal::Carrier(const SemVal::Carrier&)> inc;
  std::function<SemVal::Carrier(const SemVal::Carrier&, const SemVal::Carrier&, const SemVal::Carrier&)> com;

  static EffectTriple unit();
  static EffectTriple cost();
  static EffectTriple queries();
};

/// Interpretation of a function symbol: receives exactly `arity` arguments
/// and returns a pair (effect, value).
using FuncInterp = std::function<SemVal(std::span<const SemVal>, Budget&)>;

struct Instantiation {
  std::string name;
  EffectTriple effect;
  /// Value of a fully applied constructor.
  std::function<SemVal(const std::string& cons, std::span<const SemVal> args)> cons_interp;
  /// Interpretation of a function symbol, or nullptr when unsupported.
  std::function<FuncInterp(const Symbol&)> func_interp;
};

using SemEnv = std::map<std::string, SemVal>;

/// Semantics of mt. Throws MissingInterpretation for symbols the
/// instantiation does not cover, FuelExhausted when the budget runs out.
SemVal denote(const Signature& sig, const Instantiation& inst, const SemEnv& env, const MetaTerm& mt,
              std::shared_ptr<Budget> budget = nullptr);

/// f o a = (com(f0, a0, (f1 a1)0), (f1 a1)1).
SemVal compose(const Instantiation& inst, const SemVal& f, const SemVal& a);
/// c (+) a = (com(c, eps, a0), a1); for costs this is (c + a0, a1).
SemVal charge(const EffectTriple& eff, const SemVal::Carrier& c, const SemVal& a);
/// Effect element of one rewrite step, inc(eps).
SemVal::Carrier step_effect(const EffectTriple& eff);
/// com(a, b, eps)
SemVal::Carrier seq(const EffectTriple& eff, const SemVal::Carrier& a, const SemVal::Carrier& b);

/// Pointwise join of two semantic values of the same shape: max on naturals
/// and on Nat carriers, and lambda a.(f0 a v g0 a, f1 a v g1 a) on functions.
SemVal join(const SemVal& a, const SemVal& b);

/// Pure semantics of a target term. Function values become Fun, pairs are
/// not used. Covers System T, lists, builtins, bar, and alpha when an
/// oracle is given.
using PureEnv = std::map<std::string, SemVal>;
SemVal pure_denote(const Signature& sig, const PureEnv& env, const Term& t,
                   const std::optional<OracleSpec>& oracle = std::nullopt, std::shared_ptr<Budget> budget = nullptr);

/// The semantic value of a closed target value of datatype (numeral/list).
std::optional<SemVal> semantic_datum(const Term& v);

}  // namespace writ
