#pragma once

// Big-step call-by-value evaluation with exact rewrite-step counting.
//
// Costs: values take 0 steps, a beta step or a rule/builtin unfold takes
// 1 plus the cost of the contractum, and an application with at least one
// non-value side costs the sum of its function, argument and redex parts.

#include <cstdint>
#include <vector>

#include "writ/signature.hpp"
#include "writ/syntax.hpp"

namespace writ {

struct Fuel {
  static constexpr std::uint64_t kDefaultSteps = 10'000'000;
  std::uint64_t max_steps = kDefaultSteps;
};

struct EvalResult {
  Term value;
  std::uint64_t steps = 0;
  /// Arguments of every alpha unfold, in evaluation order, with repeats.
  std::vector<std::uint64_t> queries;
};

/// Evaluates a closed, well-typed term. Throws TypeError if e does not
/// typecheck under sig, FuelExhausted when the step budget is exceeded.
EvalResult eval(const Signature& sig, const Term& e, Fuel fuel = {});

/// Evaluates e in base extended with the oracle g.
EvalResult eval_with_oracle(const Signature& base, const Term& e, const OracleSpec& g, Fuel fuel = {});

}  // namespace writ
