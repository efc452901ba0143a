#ifndef COVFORGE_REPLAY_HPP
#define COVFORGE_REPLAY_HPP

#include "covforge/registry.hpp"

#include <string>
#include <vector>

namespace covforge {

// One row of the classical generator catalog for the degree-7 form: name,
// construction, and the recorded (degree, order). Some traditional rows omit
// or misprint the transvectant level; those are normalized here, with the
// level recovered from the recorded order via ord([f,g]^r) = ord f + ord g - 2r,
// and carry a note.
struct CatalogEntry {
  const char* name;
  const char* expr;  // "" for opaque entries
  int degree;
  int order;
  const char* note;  // "" when the row is used verbatim
};

const std::vector<CatalogEntry>& generator_catalog_d7();

struct ReplayIssue {
  std::string name;
  std::string kind;  // "zero", "order-mismatch", "error"
  std::string detail;
};

struct ReplayReport {
  std::vector<ReplayIssue> issues;
  int built = 0;
  int opaque = 0;
};

// Builds the catalog into a registry (d = 7 only), recomputing each entry's
// order by derivation nilpotency and flagging mismatches instead of failing.
Registry replay_catalog(const FormContext& ctx, ReplayReport* report = nullptr);

}  // namespace covforge

#endif  // COVFORGE_REPLAY_HPP
