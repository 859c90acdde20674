#pragma once

// Deliberately broken instantiations. The harness must reject each of them.

#include <string>
#include <vector>

#include "writ/analyses.hpp"

namespace writ {

/// Exact cost with rec charging two steps per unfold instead of one.
Instantiation mutant_rec_double_charge();
/// Continuity with alpha recording no query.
Instantiation mutant_alpha_silent(OracleSpec g);
/// Bounded cost with fold omitting the per-element step.
Instantiation mutant_fold_uncharged();
/// Majorizability with succ interpreted as the identity.
Instantiation mutant_succ_flat();

struct Mutant {
  std::string name;
  std::string analysis;
  Instantiation inst;
};

/// Every fixture above, paired with the analysis it corrupts.
std::vector<Mutant> all_mutants(const OracleSpec& g);

}  // namespace writ
