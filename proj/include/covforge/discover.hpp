#ifndef COVFORGE_DISCOVER_HPP
#define COVFORGE_DISCOVER_HPP

#include "covforge/counting.hpp"
#include "covforge/linalg.hpp"
#include "covforge/registry.hpp"

#include <functional>
#include <string>
#include <vector>

namespace covforge {

// Per-cell ledger: dim C_{i,j}, the product-monomial count sigma, the exact
// dimension of the product span, the syzygy dimension and delta.
struct CellCounts {
  int degree = 0;
  int order = 0;
  long long dim = 0;
  long long sigma = 0;
  long long span = 0;
  long long syzygies = 0;
  long long delta = 0;
};

CellCounts cell_counts(const FormContext& ctx, const Registry& reg, int i, int j,
                       const RankOptions& opts = {});

// delta_{i,j} = dim C_{i,j} - (sigma_{i,j} - dim S_{i,j}). Requires the
// registry complete through degree i-1.
long long delta(const FormContext& ctx, const Registry& reg, int i, int j,
                const RankOptions& opts = {});

// ---------------------------------------------------------------------------
// Generator discovery
// ---------------------------------------------------------------------------

struct DiscoveryOptions {
  long long budget = 20000;  // candidate evaluations per cell
  RankOptions rank;
};

struct DiscoveryResult {
  std::vector<GeneratorRecord> found;
  bool budget_exhausted = false;
  long long candidates_tried = 0;
};

// Searches candidate semitransvectants for delta-many generators independent
// of the product span at (i, j). Candidates are tried in a fixed order:
// [t,g]^r over registry entries, then [g,h]^r over pairs, then [t,g*h]^r over
// products (pruned by the reducibility rule for [t, f g]^i).
DiscoveryResult find_new_generators(const FormContext& ctx, const Registry& reg, int i,
                                    int j, const DiscoveryOptions& opts = {});

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

struct PipelineOptions {
  int max_degree = 0;
  std::string registry_path;  // persisted after each degree when nonempty
  bool resume = false;        // reload the persisted state before running
  int jobs = 1;
  DiscoveryOptions discovery;
  std::function<void(const std::string&)> log;  // optional progress sink
};

struct PipelineIssue {
  int degree = 0;
  int order = 0;
  std::string detail;
};

struct PipelineResult {
  Registry registry;
  DistributionTable table;
  std::vector<PipelineIssue> issues;
  bool complete = true;
};

PipelineResult run_pipeline(const FormContext& ctx, const PipelineOptions& opts);

// ---------------------------------------------------------------------------
// Verification and audit
// ---------------------------------------------------------------------------

// The bundled expected distribution for d = 7 (147 generators in total).
DistributionTable expected_distribution_d7();

struct DistributionDiff {
  struct Cell {
    int degree, order, got, want;
  };
  std::vector<Cell> mismatches;
  std::vector<int> uncovered_degrees;  // expected degrees absent from the table
  bool clean() const { return mismatches.empty(); }
};

DistributionDiff verify_distribution(const DistributionTable& table,
                                     const DistributionTable& expected);

struct AuditIssue {
  std::string name;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditIssue> issues;
  int checked = 0;
  bool clean() const { return issues.empty(); }
};

// Re-checks every record of the registry: the construction re-evaluates to
// the stored polynomial (audit hash), the recomputed order matches, and the
// record is independent of the span of same-cell products plus earlier
// same-cell records. max_degree limits the irreducibility re-check.
AuditReport audit_registry(const FormContext& ctx, const Registry& reg, int max_degree,
                           const RankOptions& opts = {});

}  // namespace covforge

#endif  // COVFORGE_DISCOVER_HPP
