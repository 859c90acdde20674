#pragma once

// The four instantiations and the analyses built on them: modulus of
// continuity, exact cost, bounded cost and majorants, plus the closed-form
// cost of Spector's search functional.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "writ/evaluator.hpp"
#include "writ/semantics.hpp"

namespace writ {

/// C = N*, [] / id / concatenation; alpha n = ([n], g n).
Instantiation continuity_inst(OracleSpec g);
/// C = N, 0 / +1 / sum; every rule unfold charges one step. The oracle, if
/// given, interprets alpha as (1, g n).
Instantiation cost_exact_inst(std::optional<OracleSpec> g = std::nullopt);
/// C = N with numerals of size 1 and lists sized by their length.
Instantiation cost_bounded_inst();
/// C = Unit; rec is interpreted by the monotone majorant of primitive
/// recursion.
Instantiation majorizability_inst();

/// g^M(m) = max { g(i) : i <= m }, joined pointwise at higher types.
SemVal monotone_majorant(const std::function<SemVal(std::uint64_t)>& g, std::uint64_t m);

struct AnalysisOptions {
  Fuel fuel;
  /// Replaces the analysis' default instantiation (used by mutation fixtures).
  std::optional<Instantiation> inst;
};

struct ModulusReport {
  std::uint64_t phi = 0;
  std::vector<std::uint64_t> support;
  std::uint64_t value = 0;
};

/// (c, n) = [[|e|]] o ([], lambda n.([n], g n)); phi = max(c) + 1, or 0 when
/// c is empty.
ModulusReport modulus(const Signature& sig, const Term& e, const OracleSpec& g, const AnalysisOptions& opts = {});
ModulusReport modulus(const Term& e, const OracleSpec& g, const AnalysisOptions& opts = {});

struct CostReport {
  enum class Mode { Exact, Bound };
  std::uint64_t predicted = 0;
  SemVal semantic;
  Mode mode = Mode::Exact;
};

CostReport exact_cost(const Signature& sig, const Term& e, const AnalysisOptions& opts = {});
CostReport exact_cost(const Term& e, const AnalysisOptions& opts = {});
CostReport bounded_cost(const Signature& sig, const Term& e, const AnalysisOptions& opts = {});
CostReport bounded_cost(const Term& e, const AnalysisOptions& opts = {});
/// pi_1 of the majorizability denotation.
SemVal majorant(const Signature& sig, const Term& e, const AnalysisOptions& opts = {});
SemVal majorant(const Term& e, const AnalysisOptions& opts = {});

// ---------------------------------------------------------------------------
// Spector search

/// spec := fn x => fn y => fn z => bar x (fn x' => 0)
///                                     (fn z' => fn p => succ (p (y (len z')))) z
Term spector_term();
/// spec omega beta nil
Term spector_instance(const Term& omega, const Term& beta);

/// Least N with omega_1(g_1^N) < N, where g_1^n = lambda i.(1, i < n ? g_1(i) : 0).
std::uint64_t spector_bound(const SemVal& omega, const SemVal& g, Fuel fuel = {});

/// 10N + 5 + sum_{i<=N} omega_0(g_1^i) + sum_{i<N} g_0(i).
std::uint64_t spector_closed_form(const SemVal& omega, const SemVal& g, Fuel fuel = {});

/// Closed form with the per-step cost of the h argument as a parameter:
/// (k+6)N + 5 + sum_{i<=N} omega_0(g_1^i) + sum_{i<N} g_0(i).
std::uint64_t spector_closed_form_k(const SemVal& omega, const SemVal& g, std::uint64_t k, Fuel fuel = {});

/// phi(omega, g, a) = [[bar]](omega, lambda b'.(1,0),
///   lambda b.(1, lambda f.(k + g_0(|b|) + f_0(g_1(|b|)), 1 + f_1(g_1(|b|)))), a)
/// computed by unfolding the exact-cost bar interpretation. The evaluator's
/// own h costs k = 2 per call.
SemVal spector_phi(const SemVal& omega, const SemVal& g, const std::vector<std::uint64_t>& a, std::uint64_t k = 4,
                   Fuel fuel = {});

}  // namespace writ
