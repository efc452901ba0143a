#include "covforge/linalg.hpp"

#include <algorithm>
#include <random>

namespace covforge {

// ---------------------------------------------------------------------------
// CoeffMatrix
// ---------------------------------------------------------------------------

CoeffMatrix CoeffMatrix::from_polys(const std::vector<const Poly*>& polys) {
  CoeffMatrix M;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
  for (const Poly* p : polys)
    for (const auto& [m, c] : p->terms())
      index.emplace(m, 0);
  M.columns.reserve(index.size());
  for (const auto& [m, id] : index) M.columns.push_back(m);
  std::sort(M.columns.begin(), M.columns.end(),
            [](const Monomial& a, const Monomial& b) { return Monomial::compare(a, b) > 0; });
  for (std::uint32_t i = 0; i < M.columns.size(); ++i) index[M.columns[i]] = i;

  M.rows.reserve(polys.size());
  for (const Poly* p : polys) {
    // Scale the row integral and strip its content; rank is unaffected.
    mpz_class den_lcm(1);
    for (const auto& [m, c] : p->terms())
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    SparseRow row;
    row.reserve(p->term_count());
    mpz_class content(0);
    for (const auto& [m, c] : p->terms()) {
      mpz_class v = c.get_num() * (den_lcm / c.get_den());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
      row.push_back(SparseEntry{index[m], std::move(v)});
    }
    if (content > 1)
      for (auto& e : row) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(),
                                       content.get_mpz_t());
    std::sort(row.begin(), row.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    M.rows.push_back(std::move(row));
  }
  return M;
}

// ---------------------------------------------------------------------------
// Primes
// ---------------------------------------------------------------------------

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1u) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1u;
  }
  return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
  // p prime, a != 0 mod p
  return powmod_u64(a % p, p - 2, p);
}

}  // namespace

bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                          31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1u) == 0) {
    d >>= 1u;
    ++s;
  }
  // Deterministic witness set for 64-bit inputs.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                          31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime_at_least_2_31(std::uint64_t& state) {
  std::mt19937_64 gen(state);
  std::uniform_int_distribution<std::uint64_t> dist(1ULL << 31, (1ULL << 32) - 1);
  std::uint64_t candidate;
  do {
    candidate = dist(gen) | 1ULL;
  } while (!is_probable_prime(candidate));
  state = gen();
  return candidate;
}

// ---------------------------------------------------------------------------
// Dense modular elimination
// ---------------------------------------------------------------------------

namespace detail {

namespace {

std::vector<std::uint64_t> densify_row(const SparseRow& row, std::size_t width,
                                       std::uint64_t p) {
  std::vector<std::uint64_t> dense(width, 0);
  for (const auto& e : row)
    dense[e.col] = mpz_fdiv_ui(e.value.get_mpz_t(), static_cast<unsigned long>(p));
  return dense;
}

}  // namespace

ModElimination eliminate_mod_p(const CoeffMatrix& M, std::uint64_t p) {
  ModElimination out;
  std::vector<std::vector<std::uint64_t>> basis;   // echelon rows, pivot scaled to 1
  std::vector<std::uint32_t> pivots;
  const std::size_t w = M.width();
  for (std::uint32_t ri = 0; ri < M.rows.size(); ++ri) {
    std::vector<std::uint64_t> row = densify_row(M.rows[ri], w, p);
    std::size_t cursor = 0;
    bool independent = false;
    while (true) {
      while (cursor < w && row[cursor] == 0) ++cursor;
      if (cursor == w) break;
      auto it = std::lower_bound(pivots.begin(), pivots.end(), cursor);
      if (it == pivots.end() || *it != cursor) {
        // New pivot: normalize and insert keeping pivots sorted.
        std::uint64_t inv = invmod_u64(row[cursor], p);
        for (std::size_t j = cursor; j < w; ++j)
          if (row[j]) row[j] = mulmod_u64(row[j], inv, p);
        std::size_t pos = static_cast<std::size_t>(it - pivots.begin());
        pivots.insert(it, static_cast<std::uint32_t>(cursor));
        basis.insert(basis.begin() + static_cast<std::ptrdiff_t>(pos), std::move(row));
        independent = true;
        break;
      }
      const auto& b = basis[static_cast<std::size_t>(it - pivots.begin())];
      std::uint64_t f = p - row[cursor];
      for (std::size_t j = cursor; j < w; ++j)
        if (b[j]) row[j] = (row[j] + f * b[j]) % p;
    }
    if (independent)
      out.independent_rows.push_back(ri);
    else
      out.dependent_rows.push_back(ri);
  }
  out.rank = static_cast<long long>(basis.size());
  out.pivot_cols = pivots;
  return out;
}

// ---------------------------------------------------------------------------
// Exact certification of a modular elimination
// ---------------------------------------------------------------------------

namespace {

mpz_class entry_at(const SparseRow& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const SparseEntry& e, std::uint32_t c) { return e.col < c; });
  if (it != row.end() && it->col == col) return it->value;
  return mpz_class(0);
}

}  // namespace

bool verify_dependents_exact(const CoeffMatrix& M, const ModElimination& elim) {
  const std::size_t r = elim.independent_rows.size();
  const std::size_t s = elim.dependent_rows.size();
  if (s == 0) return true;
  if (r == 0) {
    for (std::uint32_t ri : elim.dependent_rows)
      if (!M.rows[ri].empty()) return false;
    return true;
  }

  // A = [B_P^T | V]: A[i][j] = independent row j at pivot column i, augmented
  // with the dependent rows' pivot-column values.
  std::vector<std::vector<mpz_class>> A(r, std::vector<mpz_class>(r + s));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j)
      A[i][j] = entry_at(M.rows[elim.independent_rows[j]], elim.pivot_cols[i]);
    for (std::size_t k = 0; k < s; ++k)
      A[i][r + k] = entry_at(M.rows[elim.dependent_rows[k]], elim.pivot_cols[i]);
  }

  // Fraction-free forward elimination (row swaps only).
  mpz_class prev(1);
  for (std::size_t k = 0; k + 1 <= r; ++k) {
    std::size_t pivot = k;
    while (pivot < r && A[pivot][k] == 0) ++pivot;
    if (pivot == r) return false;  // unlucky prime; handled by the caller
    if (pivot != k) std::swap(A[pivot], A[k]);
    for (std::size_t i = k + 1; i < r; ++i) {
      for (std::size_t j = k + 1; j < r + s; ++j) {
        A[i][j] = A[k][k] * A[i][j] - A[i][k] * A[k][j];
        mpz_divexact(A[i][j].get_mpz_t(), A[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      A[i][k] = 0;
    }
    prev = A[k][k];
  }

  std::vector<mpz_class> accum(M.width());
  for (std::size_t k = 0; k < s; ++k) {
    // Back-substitute the k-th augmented column.
    std::vector<mpq_class> y(r);
    for (std::size_t i = r; i-- > 0;) {
      mpq_class sum(A[i][r + k]);
      for (std::size_t j = i + 1; j < r; ++j) sum -= mpq_class(A[i][j]) * y[j];
      y[i] = sum / mpq_class(A[i][i]);
      y[i].canonicalize();
    }
    // Clear denominators and verify over the full width.
    mpz_class L(1);
    for (const auto& c : y) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den().get_mpz_t());
    for (auto& v : accum) v = 0;
    for (std::size_t j = 0; j < r; ++j) {
      mpz_class a = y[j].get_num() * (L / y[j].get_den());
      if (a == 0) continue;
      for (const auto& e : M.rows[elim.independent_rows[j]])
        accum[e.col] += a * e.value;
    }
    for (const auto& e : M.rows[elim.dependent_rows[k]]) accum[e.col] -= L * e.value;
    for (const auto& v : accum)
      if (v != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Full fraction-free elimination (content-stripped), the last-resort path.
// ---------------------------------------------------------------------------

namespace {

struct ExactRow {
  std::vector<std::pair<std::uint32_t, mpz_class>> entries;  // sorted by col

  bool empty() const { return entries.empty(); }
  std::uint32_t lead_col() const { return entries.front().first; }
  const mpz_class& lead_val() const { return entries.front().second; }

  void strip_content() {
    if (entries.empty()) return;
    mpz_class g(0);
    for (const auto& [c, v] : entries) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) return;
    }
    for (auto& [c, v] : entries) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
};

// row := row*a - other*b, merged over sorted sparse entries.
ExactRow combine(const ExactRow& row, const mpz_class& a, const ExactRow& other,
                 const mpz_class& b) {
  ExactRow out;
  out.entries.reserve(row.entries.size() + other.entries.size());
  auto i = row.entries.begin(), ie = row.entries.end();
  auto j = other.entries.begin(), je = other.entries.end();
  while (i != ie || j != je) {
    if (j == je || (i != ie && i->first < j->first)) {
      out.entries.emplace_back(i->first, i->second * a);
      ++i;
    } else if (i == ie || j->first < i->first) {
      out.entries.emplace_back(j->first, -(j->second * b));
      ++j;
    } else {
      mpz_class v = i->second * a - j->second * b;
      if (v != 0) out.entries.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

long long rank_exact_fraction_free(const CoeffMatrix& M) {
  std::vector<ExactRow> echelon;  // sorted by lead_col
  for (const SparseRow& src : M.rows) {
    ExactRow work;
    work.entries.reserve(src.size());
    for (const auto& e : src) work.entries.emplace_back(e.col, e.value);
    while (!work.empty()) {
      auto it = std::lower_bound(
          echelon.begin(), echelon.end(), work.lead_col(),
          [](const ExactRow& r, std::uint32_t c) { return r.lead_col() < c; });
      if (it == echelon.end() || it->lead_col() != work.lead_col()) {
        work.strip_content();
        echelon.insert(it, std::move(work));
        break;
      }
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), it->lead_val().get_mpz_t(), work.lead_val().get_mpz_t());
      mpz_class a = it->lead_val() / g;
      mpz_class b = work.lead_val() / g;
      work = combine(work, a, *it, b);
      work.strip_content();
    }
  }
  return static_cast<long long>(echelon.size());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// rank / syzygy_dim / reduce_against
// ---------------------------------------------------------------------------

namespace {

long long rank_certified(const CoeffMatrix& M, std::uint64_t p,
                         const std::optional<long long>& upper_bound) {
  detail::ModElimination elim = detail::eliminate_mod_p(M, p);
  const long long trivial_bound =
      static_cast<long long>(std::min(M.height(), M.width()));
  if (elim.rank == trivial_bound) return elim.rank;
  if (upper_bound && elim.rank == *upper_bound) return elim.rank;
  if (detail::verify_dependents_exact(M, elim)) return elim.rank;
  return detail::rank_exact_fraction_free(M);
}

}  // namespace

long long rank(const CoeffMatrix& M, const RankOptions& opts) {
  if (M.rows.empty() || M.width() == 0) return 0;
  if (opts.modular) {
    std::uint64_t state = opts.prime_seed;
    if (state == 0) state = std::random_device{}();
    std::uint64_t p1 = random_prime_at_least_2_31(state);
    std::uint64_t p2 = random_prime_at_least_2_31(state);
    while (p2 == p1) p2 = random_prime_at_least_2_31(state);
    if (opts.prime_log) {
      opts.prime_log->push_back(p1);
      opts.prime_log->push_back(p2);
    }
    long long r1 = detail::eliminate_mod_p(M, p1).rank;
    long long r2 = detail::eliminate_mod_p(M, p2).rank;
    if (r1 == r2) return r1;
    return rank_certified(M, kDefaultPrime, opts.upper_bound);
  }
  return rank_certified(M, kDefaultPrime, opts.upper_bound);
}

long long syzygy_dim(const std::vector<SemiInvariant>& products, const RankOptions& opts) {
  if (products.empty()) return 0;
  int degree = products.front().degree, order = products.front().order;
  std::vector<const Poly*> polys;
  polys.reserve(products.size());
  for (const auto& s : products) {
    if (!s.is_zero() && (s.degree != degree || s.order != order))
      throw Error("syzygy_dim: products with mixed (degree, order)");
    polys.push_back(&s.poly);
  }
  CoeffMatrix M = CoeffMatrix::from_polys(polys);
  return static_cast<long long>(products.size()) - rank(M, opts);
}

ReduceOutcome reduce_against(const std::vector<SemiInvariant>& basis,
                             const SemiInvariant& candidate, const RankOptions& opts) {
  for (const auto& b : basis)
    if (!b.is_zero() && !candidate.is_zero() &&
        (b.degree != candidate.degree || b.order != candidate.order))
      throw Error("reduce_against: mismatched (degree, order)");
  if (candidate.is_zero()) return ReduceOutcome{true, candidate};

  std::vector<const Poly*> polys;
  polys.reserve(basis.size() + 1);
  for (const auto& b : basis) polys.push_back(&b.poly);
  CoeffMatrix base = CoeffMatrix::from_polys(polys);
  polys.push_back(&candidate.poly);
  CoeffMatrix extended = CoeffMatrix::from_polys(polys);
  long long r0 = rank(base, opts);
  long long r1 = rank(extended, opts);
  return ReduceOutcome{r1 == r0, candidate};
}

// ---------------------------------------------------------------------------
// Cell basis and incremental modular span
// ---------------------------------------------------------------------------

std::vector<Monomial> cell_monomials(int d, int degree, long weight) {
  std::vector<Monomial> out;
  if (degree < 0 || weight < 0) return out;
  // exps[0] = t, exps[i] = x_i; sum exps = degree, sum i*exps[i] = weight.
  std::vector<int> exps(static_cast<std::size_t>(d) + 1, 0);
  auto rec = [&](auto&& self, int var, int deg_left, long w_left) -> void {
    if (var == 0) {
      // remaining goes to t (weight 0)
      if (w_left != 0) return;
      exps[0] = deg_left;
      Monomial m;
      for (int i = 0; i <= d; ++i)
        if (exps[static_cast<std::size_t>(i)] != 0)
          m = m.times(Monomial::variable(i == 0 ? var_t() : var_x(i),
                                         exps[static_cast<std::size_t>(i)]));
      out.push_back(m);
      return;
    }
    long max_e = std::min<long>(deg_left, w_left / var);
    for (long e = 0; e <= max_e; ++e) {
      exps[static_cast<std::size_t>(var)] = static_cast<int>(e);
      self(self, var - 1, deg_left - static_cast<int>(e), w_left - e * var);
    }
    exps[static_cast<std::size_t>(var)] = 0;
  };
  rec(rec, d, degree, weight);
  std::sort(out.begin(), out.end(),
            [](const Monomial& a, const Monomial& b) { return Monomial::compare(a, b) > 0; });
  return out;
}

CellSpan::CellSpan(std::vector<Monomial> columns, std::uint64_t p)
    : columns_(std::move(columns)), p_(p) {
  col_index_.reserve(columns_.size());
  for (std::uint32_t i = 0; i < columns_.size(); ++i) col_index_.emplace(columns_[i], i);
}

std::vector<std::uint64_t> CellSpan::densify(const Poly& poly) const {
  std::vector<std::uint64_t> dense(columns_.size(), 0);
  for (const auto& [m, c] : poly.terms()) {
    auto it = col_index_.find(m);
    if (it == col_index_.end()) throw Error("polynomial leaves the cell column basis");
    if (c.get_den() != 1) {
      std::uint64_t num = mpz_fdiv_ui(c.get_num().get_mpz_t(), static_cast<unsigned long>(p_));
      std::uint64_t den = mpz_fdiv_ui(c.get_den().get_mpz_t(), static_cast<unsigned long>(p_));
      if (den == 0) throw Error("prime divides a coefficient denominator");
      dense[it->second] = mulmod_u64(num, invmod_u64(den, p_), p_);
    } else {
      dense[it->second] = mpz_fdiv_ui(c.get_num().get_mpz_t(), static_cast<unsigned long>(p_));
    }
  }
  return dense;
}

bool CellSpan::add(const Poly& poly) { return add_row(densify(poly)); }

bool CellSpan::add_row(std::vector<std::uint64_t> row) {
  const std::size_t w = columns_.size();
  std::size_t cursor = 0;
  while (true) {
    while (cursor < w && row[cursor] == 0) ++cursor;
    if (cursor == w) return false;
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), cursor);
    if (it == pivots_.end() || *it != cursor) {
      std::uint64_t inv = invmod_u64(row[cursor], p_);
      for (std::size_t j = cursor; j < w; ++j)
        if (row[j]) row[j] = mulmod_u64(row[j], inv, p_);
      std::size_t pos = static_cast<std::size_t>(it - pivots_.begin());
      pivots_.insert(it, static_cast<std::uint32_t>(cursor));
      basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(row));
      return true;
    }
    const auto& b = basis_[static_cast<std::size_t>(it - pivots_.begin())];
    std::uint64_t f = p_ - row[cursor];
    for (std::size_t j = cursor; j < w; ++j)
      if (b[j]) row[j] = (row[j] + f * b[j]) % p_;
  }
}

}  // namespace covforge
