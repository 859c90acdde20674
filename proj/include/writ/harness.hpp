#pragma once

// Cross-checks of every analysis against the instrumented evaluator.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "writ/analyses.hpp"

namespace writ {

struct VerifyReport {
  enum class Status { Pass, Fail, Error };

  std::string term_id;
  std::string analysis;
  Status status = Status::Pass;
  std::string details;
  std::optional<std::uint64_t> predicted;
  std::optional<std::uint64_t> observed;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  bool passed() const { return status == Status::Pass; }
};

const char* status_name(VerifyReport::Status s);

struct ModulusCheck {
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  /// Positions at and above phi that are perturbed explicitly.
  std::uint64_t window = 8;
};

VerifyReport verify_exact_cost(const Signature& sig, const Term& e, const AnalysisOptions& opts = {},
                               std::string id = "");
VerifyReport verify_modulus(const Signature& sig, const Term& e, const OracleSpec& g, const ModulusCheck& check = {},
                            const AnalysisOptions& opts = {}, std::string id = "");
VerifyReport verify_bound(const Signature& sig, const Term& e, const AnalysisOptions& opts = {}, std::string id = "");
VerifyReport verify_majorant(const Signature& sig, const Term& e, const AnalysisOptions& opts = {},
                             std::string id = "");
/// Checks spec omega beta nil: exact cost equals steps, the closed form
/// equals the unfolded recursion, the search result n satisfies
/// omega(beta^n) < n, and steps = 3 + closed form with h costing 2 per call.
VerifyReport verify_spector(const Term& omega, const Term& beta, const AnalysisOptions& opts = {},
                            std::string id = "");

/// If t is `spec omega beta nil`, returns (omega, beta).
std::optional<std::pair<Term, Term>> match_spector_instance(const Term& t);

/// One analysis request from a corpus header, e.g. "modulus(identity)".
struct AnalysisRequest {
  std::string name;
  std::string argument;
};
/// Parses `analyses: cost,modulus(identity),majorant`.
std::vector<AnalysisRequest> parse_analyses(const std::vector<std::string>& header);

struct CorpusOptions {
  AnalysisOptions analysis;
  ModulusCheck modulus;
};

VerifyReport run_request(const Signature& sig, const Term& e, const AnalysisRequest& req, const CorpusOptions& opts,
                         const std::string& id);
/// Verifies every `.wt` file in path (sorted by name) against the analyses
/// listed in its header. Unreadable or ill-typed files yield one Error report.
std::vector<VerifyReport> run_corpus(const std::string& path, const CorpusOptions& opts = {});

/// Random closed value of the given type (small numerals, short lists,
/// constant functions).
Term sample_value(const Ty& ty, std::mt19937_64& rng);
/// Number of rules (or builtins) of f matching the argument vector.
std::size_t matching_rules(const FunctionDecl& f, std::span<const Term> args);

}  // namespace writ
