#ifndef COVFORGE_LINALG_HPP
#define COVFORGE_LINALG_HPP

#include "covforge/sl2.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace covforge {

// ---------------------------------------------------------------------------
// Coefficient matrices: rows indexed by polynomials, columns by the union of
// their monomials in canonical descending order. Rows are scaled integral and
// content-stripped on ingestion (both preserve rank).
// ---------------------------------------------------------------------------

struct SparseEntry {
  std::uint32_t col;
  mpz_class value;
};

using SparseRow = std::vector<SparseEntry>;

struct CoeffMatrix {
  std::vector<Monomial> columns;  // canonical descending order
  std::vector<SparseRow> rows;    // entries sorted by col, no zeros

  std::size_t width() const { return columns.size(); }
  std::size_t height() const { return rows.size(); }

  static CoeffMatrix from_polys(const std::vector<const Poly*>& polys);
};

// ---------------------------------------------------------------------------
// Rank
// ---------------------------------------------------------------------------

struct RankOptions {
  // Monte-Carlo mode: rank modulo two independent random primes >= 2^31,
  // accepted on agreement, exact fallback on disagreement.
  bool modular = false;
  // A mathematically certified upper bound on the rank (e.g. the ambient
  // space dimension). When the modular lower bound meets it, the rank is
  // proven without an exact pass.
  std::optional<long long> upper_bound;
  std::uint64_t prime_seed = 0;                   // 0: nondeterministic seed
  std::vector<std::uint64_t>* prime_log = nullptr;  // modular primes used
};

// Exact rank over the rationals. The default path runs a word-size modular
// elimination first and then certifies the answer exactly: independence is
// already proven by the modular minor, and every dependent row is verified to
// be an exact rational combination of the independent ones (falling back to
// full fraction-free elimination if a verification fails).
long long rank(const CoeffMatrix& M, const RankOptions& opts = {});

// dim S = #products - rank of their coefficient matrix. All inputs must share
// (degree, order).
long long syzygy_dim(const std::vector<SemiInvariant>& products,
                     const RankOptions& opts = {});

// Exact span membership. Returns member=true iff candidate lies in the
// rational span of basis; otherwise hands the candidate back.
struct ReduceOutcome {
  bool member = false;
  SemiInvariant candidate;
};
ReduceOutcome reduce_against(const std::vector<SemiInvariant>& basis,
                             const SemiInvariant& candidate, const RankOptions& opts = {});

// ---------------------------------------------------------------------------
// Building blocks shared with the discovery pipeline
// ---------------------------------------------------------------------------

// All monomials in t, x1..xd of the given degree and weight, canonical
// descending order: the column basis of one (degree, order) cell.
std::vector<Monomial> cell_monomials(int d, int degree, long weight);

// Incremental dense row echelon over Z/p with a fixed column basis.
// add() reduces the row against the current basis and keeps it when
// independent; an accepted row certifies rational independence as well.
class CellSpan {
 public:
  CellSpan(std::vector<Monomial> columns, std::uint64_t p);

  bool add(const Poly& poly);               // true when the rank grew
  bool add_row(std::vector<std::uint64_t> dense);
  long long rank() const { return static_cast<long long>(basis_.size()); }
  std::uint64_t prime() const { return p_; }
  std::vector<std::uint64_t> densify(const Poly& poly) const;

 private:
  std::vector<Monomial> columns_;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> col_index_;
  std::vector<std::vector<std::uint64_t>> basis_;  // normalized, pivot ascending
  std::vector<std::uint32_t> pivots_;              // pivot column of basis_[k]
  std::uint64_t p_;
};

// Default word-size prime used for modular preconditioning (2^31 - 1).
constexpr std::uint64_t kDefaultPrime = 2147483647ULL;

bool is_probable_prime(std::uint64_t n);
std::uint64_t random_prime_at_least_2_31(std::uint64_t& state);

namespace detail {

struct ModElimination {
  long long rank = 0;
  std::vector<std::uint32_t> pivot_cols;         // per basis row
  std::vector<std::uint32_t> independent_rows;   // original row indices
  std::vector<std::uint32_t> dependent_rows;
};

ModElimination eliminate_mod_p(const CoeffMatrix& M, std::uint64_t p);

// Exact certificate: every dependent row is an exact rational combination of
// the independent rows (checked over the full width). True on success.
bool verify_dependents_exact(const CoeffMatrix& M, const ModElimination& elim);

long long rank_exact_fraction_free(const CoeffMatrix& M);

}  // namespace detail

}  // namespace covforge

#endif  // COVFORGE_LINALG_HPP
