#include "covforge/discover.hpp"

#include "covforge/transvect.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace covforge {

namespace {

// ---------------------------------------------------------------------------
// Modular and integer polynomial helpers for matrix building
// ---------------------------------------------------------------------------

using ModPoly = std::unordered_map<Monomial, std::uint64_t, MonomialHash>;
using PolyZ = std::unordered_map<Monomial, mpz_class, MonomialHash>;

std::uint64_t mod_of(const mpq_class& c, std::uint64_t p) {
  std::uint64_t num = mpz_fdiv_ui(c.get_num().get_mpz_t(), static_cast<unsigned long>(p));
  if (c.get_den() == 1) return num;
  std::uint64_t den = mpz_fdiv_ui(c.get_den().get_mpz_t(), static_cast<unsigned long>(p));
  if (den == 0) throw Error("prime divides a coefficient denominator");
  // den^(p-2) mod p
  std::uint64_t inv = 1, base = den, e = p - 2;
  while (e) {
    if (e & 1u) inv = static_cast<std::uint64_t>((static_cast<unsigned __int128>(inv) * base) % p);
    base = static_cast<std::uint64_t>((static_cast<unsigned __int128>(base) * base) % p);
    e >>= 1u;
  }
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(num) * inv) % p);
}

ModPoly mod_of_poly(const Poly& poly, std::uint64_t p) {
  ModPoly out;
  out.reserve(poly.term_count());
  for (const auto& [m, c] : poly.terms()) {
    std::uint64_t v = mod_of(c, p);
    if (v) out.emplace(m, v);
  }
  return out;
}

ModPoly mod_mul(const ModPoly& a, const ModPoly& b, std::uint64_t p) {
  ModPoly out;
  out.reserve(a.size() + b.size());
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      std::uint64_t v = static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(ca) * cb) % p);
      if (!v) continue;
      auto [it, inserted] = out.emplace(ma.times(mb), v);
      if (!inserted) {
        it->second = (it->second + v) % p;
        if (it->second == 0) out.erase(it);
      }
    }
  return out;
}

PolyZ z_of_poly(const Poly& poly) {
  PolyZ out;
  out.reserve(poly.term_count());
  for (const auto& [m, c] : poly.terms()) {
    if (c.get_den() != 1) throw Error("expected an integral polynomial");
    out.emplace(m, c.get_num());
  }
  return out;
}

PolyZ z_mul(const PolyZ& a, const PolyZ& b) {
  PolyZ out;
  out.reserve(a.size() + b.size());
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      auto [it, inserted] = out.try_emplace(ma.times(mb), 0);
      mpz_addmul(it->second.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      if (it->second == 0) out.erase(it);
    }
  return out;
}

// Caches per-generator data for one cell pass.
struct GeneratorCache {
  const Registry& reg;
  std::uint64_t prime;
  std::unordered_map<int, ModPoly> residues;
  std::unordered_map<int, PolyZ> integers;

  const ModPoly& residue(int idx) {
    auto it = residues.find(idx);
    if (it != residues.end()) return it->second;
    const auto& rec = reg.records()[static_cast<std::size_t>(idx)];
    if (!rec.value) throw Error("opaque generator used in a product");
    return residues.emplace(idx, mod_of_poly(rec.value->poly, prime)).first->second;
  }
  const PolyZ& integer(int idx) {
    auto it = integers.find(idx);
    if (it != integers.end()) return it->second;
    const auto& rec = reg.records()[static_cast<std::size_t>(idx)];
    if (!rec.value) throw Error("opaque generator used in a product");
    return integers.emplace(idx, z_of_poly(rec.value->poly)).first->second;
  }
};

ModPoly product_mod(GeneratorCache& cache, const ProductTerm& term) {
  ModPoly acc;
  acc.emplace(Monomial(), 1);
  for (const auto& [idx, exp] : term.factors) {
    const ModPoly& base = cache.residue(idx);
    for (int e = 0; e < exp; ++e) acc = mod_mul(acc, base, cache.prime);
  }
  return acc;
}

PolyZ product_exact(GeneratorCache& cache, const ProductTerm& term) {
  PolyZ acc;
  acc.emplace(Monomial(), mpz_class(1));
  for (const auto& [idx, exp] : term.factors) {
    const PolyZ& base = cache.integer(idx);
    for (int e = 0; e < exp; ++e) acc = z_mul(acc, base);
  }
  return acc;
}

// Streams the product polynomials of a DFS-ordered term list, reusing the
// partial products of the longest shared factor prefix between consecutive
// terms. Calls sink(term_index, product); stops early when sink returns false.
template <typename PolyT, typename Mul, typename Base, typename Sink>
void stream_products(const std::vector<ProductTerm>& terms, Mul&& mul, Base&& base,
                     Sink&& sink) {
  std::vector<std::pair<int, int>> prev;
  std::vector<PolyT> partials;  // partials[k] = product of factors 0..k
  for (std::size_t ti = 0; ti < terms.size(); ++ti) {
    const auto& factors = terms[ti].factors;
    std::size_t keep = 0;
    while (keep < prev.size() && keep < factors.size() && prev[keep] == factors[keep]) ++keep;
    prev.assign(factors.begin(), factors.end());
    partials.resize(keep);
    for (std::size_t k = keep; k < factors.size(); ++k) {
      PolyT acc = k == 0 ? PolyT{{Monomial(), 1}} : partials[k - 1];
      for (int e = 0; e < factors[k].second; ++e) acc = mul(acc, base(factors[k].first));
      partials.push_back(std::move(acc));
    }
    if (factors.empty()) partials.assign(1, PolyT{{Monomial(), 1}});
    if (!sink(ti, partials.back())) return;
  }
}

// Deterministic sequence of word-size primes for retries.
std::uint64_t nth_precondition_prime(int n) {
  if (n == 0) return kDefaultPrime;
  std::uint64_t candidate = (1ULL << 31) + 11;
  int seen = 0;
  while (true) {
    if (is_probable_prime(candidate)) {
      if (++seen == n) return candidate;
    }
    candidate += 2;
  }
}

// ---------------------------------------------------------------------------
// Cell analysis: exact product-span dimension plus a reusable modular span
// ---------------------------------------------------------------------------

struct CellWork {
  CellCounts counts;
  std::vector<Monomial> columns;
  std::unique_ptr<CellSpan> span;  // products span modulo the chosen prime
  std::unique_ptr<GeneratorCache> cache;
};

CellWork analyze_cell(const FormContext& ctx, const Registry& reg, int i, int j,
                      const RankOptions& opts) {
  CellWork work;
  work.counts.degree = i;
  work.counts.order = j;
  work.counts.dim = cs_dimension(ctx.degree(), i, j);

  std::vector<ProductTerm> terms = enumerate_product_terms(reg, i, j);
  work.counts.sigma = static_cast<long long>(terms.size());
  if (work.counts.dim == 0 && work.counts.sigma > 0)
    throw Error("nonzero products in a zero-dimensional cell (" + std::to_string(i) + "," +
                std::to_string(j) + ")");

  const long weight = (static_cast<long>(ctx.degree()) * i - j) / 2;
  work.columns = cell_monomials(ctx.degree(), i, weight);

  for (int attempt = 0;; ++attempt) {
    if (attempt > 8) throw Error("modular span disagrees with the exact rank repeatedly");
    const std::uint64_t prime = nth_precondition_prime(attempt);
    work.cache = std::make_unique<GeneratorCache>(GeneratorCache{reg, prime, {}, {}});
    work.span = std::make_unique<CellSpan>(work.columns, prime);
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> col_index;
    col_index.reserve(work.columns.size());
    for (std::uint32_t c = 0; c < work.columns.size(); ++c)
      col_index.emplace(work.columns[c], c);
    const std::uint64_t p = prime;
    stream_products<ModPoly>(
        terms, [p](const ModPoly& a, const ModPoly& b) { return mod_mul(a, b, p); },
        [&](int idx) -> const ModPoly& { return work.cache->residue(idx); },
        [&](std::size_t, const ModPoly& prod) {
          std::vector<std::uint64_t> dense(work.columns.size(), 0);
          for (const auto& [m, v] : prod) {
            auto it = col_index.find(m);
            if (it == col_index.end()) throw Error("product leaves the cell column basis");
            dense[it->second] = v;
          }
          work.span->add_row(std::move(dense));
          // The span cannot outgrow the ambient cell: stop once it fills it.
          return work.span->rank() < work.counts.dim;
        });
    long long r_p = work.span->rank();

    long long certified = -1;
    if (r_p == work.counts.sigma || r_p == work.counts.dim) {
      certified = r_p;
    } else {
      // Exact pass over the materialized integer matrix.
      CoeffMatrix M;
      M.columns = work.columns;
      M.rows.resize(terms.size());
      stream_products<PolyZ>(
          terms, [](const PolyZ& a, const PolyZ& b) { return z_mul(a, b); },
          [&](int idx) -> const PolyZ& { return work.cache->integer(idx); },
          [&](std::size_t ti, const PolyZ& prod) {
            SparseRow row;
            row.reserve(prod.size());
            for (const auto& [m, v] : prod)
              row.push_back(SparseEntry{col_index.at(m), v});
            std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) {
              return a.col < b.col;
            });
            M.rows[ti] = std::move(row);
            return true;
          });
      RankOptions exact_opts = opts;
      exact_opts.upper_bound = work.counts.dim;
      certified = rank(M, exact_opts);
    }
    if (certified == r_p) {
      work.counts.span = certified;
      break;
    }
    // The preconditioning prime undercounted this cell; retry with the next
    // one so the modular span stays usable for discovery.
  }
  work.counts.syzygies = work.counts.sigma - work.counts.span;
  work.counts.delta = work.counts.dim - work.counts.span;
  return work;
}

}  // namespace

CellCounts cell_counts(const FormContext& ctx, const Registry& reg, int i, int j,
                       const RankOptions& opts) {
  return analyze_cell(ctx, reg, i, j, opts).counts;
}

long long delta(const FormContext& ctx, const Registry& reg, int i, int j,
                const RankOptions& opts) {
  return cell_counts(ctx, reg, i, j, opts).delta;
}

// ---------------------------------------------------------------------------
// Discovery
// ---------------------------------------------------------------------------

namespace {

struct CandidateSink {
  const FormContext& ctx;
  const Registry& reg;
  int degree, order;
  long long budget;
  CellWork& work;
  DiscoveryResult& result;
  long long needed;

  bool done() const {
    return static_cast<long long>(result.found.size()) >= needed ||
           result.candidates_tried >= budget;
  }

  // Evaluates one candidate; returns true when the cell is finished.
  bool offer(const SemiInvariant& left, const SemiInvariant& right, int level,
             ConstructionPtr expr) {
    if (done()) return true;
    ++result.candidates_tried;
    SemiInvariant value = semitransvectant_direct(ctx, left, right, level);
    if (value.is_zero()) return done();
    if (value.degree != degree || covariant_order(ctx, value.poly) != order)
      return done();  // defensive; bookkeeping should already guarantee this
    if (work.span->add(value.poly)) {
      GeneratorRecord rec;
      rec.name = "g" + std::to_string(degree) + "o" + std::to_string(order) + "_" +
                 std::to_string(result.found.size() + 1);
      rec.degree = degree;
      rec.order = order;
      rec.construction = std::move(expr);
      rec.value = std::move(value);
      result.found.push_back(std::move(rec));
    }
    return done();
  }
};

}  // namespace

namespace {

DiscoveryResult discover_in_cell(const FormContext& ctx, const Registry& reg, int i, int j,
                                 CellWork& work, const DiscoveryOptions& opts);

}  // namespace

DiscoveryResult find_new_generators(const FormContext& ctx, const Registry& reg, int i,
                                    int j, const DiscoveryOptions& opts) {
  CellWork work = analyze_cell(ctx, reg, i, j, opts.rank);
  return discover_in_cell(ctx, reg, i, j, work, opts);
}

namespace {

DiscoveryResult discover_in_cell(const FormContext& ctx, const Registry& reg, int i, int j,
                                 CellWork& work, const DiscoveryOptions& opts) {
  DiscoveryResult result;
  if (work.counts.delta <= 0) return result;

  const int d = ctx.degree();
  CandidateSink sink{ctx, reg, i, j, opts.budget, work, result, work.counts.delta};
  SemiInvariant base = make_semiinvariant(ctx, Poly::variable(var_t()));

  // Tier 1: [t, g]^r over registry entries of degree i-1.
  for (std::size_t idx = 0; idx < reg.records().size() && !sink.done(); ++idx) {
    const auto& rec = reg.records()[idx];
    if (rec.degree != i - 1 || !rec.value) continue;
    int num = d + rec.order - j;
    if (num < 0 || num % 2) continue;
    int level = num / 2;
    if (level < 1 || level > std::min(d, rec.order)) continue;
    sink.offer(base, *rec.value, level,
               construct_transvect(construct_base(), construct_ref(rec.name), level));
  }

  // Tier 2: [g, h]^r over generator pairs with degree sum i.
  for (std::size_t a = 0; a < reg.records().size() && !sink.done(); ++a) {
    const auto& ra = reg.records()[a];
    if (ra.degree < 1 || ra.degree >= i || !ra.value) continue;
    for (std::size_t b = a; b < reg.records().size() && !sink.done(); ++b) {
      const auto& rb = reg.records()[b];
      if (!rb.value || ra.degree + rb.degree != i) continue;
      int num = ra.order + rb.order - j;
      if (num < 0 || num % 2) continue;
      int level = num / 2;
      if (level < 1 || level > std::min(ra.order, rb.order)) continue;
      if (a == b && level % 2) continue;  // [f,f]^odd vanishes identically
      sink.offer(*ra.value, *rb.value, level,
                 construct_transvect(construct_ref(ra.name), construct_ref(rb.name), level));
    }
  }

  // Tier 3: [t, g*h*...]^r over product monomials of degree i-1. The first
  // pass prunes levels covered by the classical reducibility rule for
  // [t, f g]^r (r <= min(d, max(ord f, ord g)) over the product's splits);
  // the rule is a heuristic, not a theorem of this engine, so a second pass
  // revisits the pruned candidates if the cell is still unfinished.
  for (int pass = 0; pass < 2 && !sink.done(); ++pass) {
    int lo = std::max(1, std::max(d - j, j - d + 2));
    int hi = j + d;
    for (int o = lo; o <= hi && !sink.done(); ++o) {
      int num = d + o - j;
      if (num < 0 || num % 2) continue;
      int level = num / 2;
      if (level < 1 || level > std::min(d, o)) continue;
      std::vector<ProductTerm> terms = enumerate_product_terms(reg, i - 1, o);
      for (const ProductTerm& term : terms) {
        if (sink.done()) break;
        int best_split = 0;
        for (const auto& [idx, exp] : term.factors) {
          int u = reg.records()[static_cast<std::size_t>(idx)].order;
          best_split = std::max(best_split, std::max(u, o - u));
        }
        bool pruned = level <= std::min(d, best_split);
        if (pruned == (pass == 0)) continue;
        SemiInvariant prod = evaluate_product(ctx, reg, term);
        std::vector<ConstructionPtr> factors;
        for (const auto& [idx, exp] : term.factors)
          for (int e = 0; e < exp; ++e)
            factors.push_back(construct_ref(reg.records()[static_cast<std::size_t>(idx)].name));
        sink.offer(base, make_semiinvariant(ctx, prod.poly), level,
                   construct_transvect(construct_base(), construct_product(std::move(factors)),
                                       level));
      }
    }
  }

  result.budget_exhausted =
      static_cast<long long>(result.found.size()) < work.counts.delta;
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

namespace {

void persist_state(const Registry& reg, const DistributionTable& table,
                   const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error("cannot write registry file: " + path);
  reg.write(out);
  table.write(out);
}

}  // namespace

PipelineResult run_pipeline(const FormContext& ctx, const PipelineOptions& opts) {
  const int d = ctx.degree();
  PipelineResult result;
  result.registry = Registry(d);

  int start_degree = 1;
  if (opts.resume && !opts.registry_path.empty()) {
    std::ifstream in(opts.registry_path);
    if (in) {
      result.registry = Registry::read(in);
      if (result.registry.form_degree() != d)
        throw Error("registry degree mismatch on resume");
      std::ifstream again(opts.registry_path);
      result.table = DistributionTable::read_deltas(again);
      start_degree = result.registry.complete_through() + 1;
    }
  }

  auto log = [&](const std::string& msg) {
    if (opts.log) opts.log(msg);
  };

  for (int i = start_degree; i <= opts.max_degree; ++i) {
    // Orders scan high to low: j = d*i, d*i - 2, ..., >= 0.
    std::vector<int> orders;
    for (int j = d * i; j >= 0; j -= 2) orders.push_back(j);

    struct CellOutcome {
      CellCounts counts;
      DiscoveryResult discovery;
      bool ran = false;
      std::string error;
    };
    std::vector<CellOutcome> outcomes(orders.size());

    auto run_cell = [&](std::size_t k) {
      int j = orders[k];
      CellOutcome& out = outcomes[k];
      try {
        if (cs_dimension(d, i, j) == 0) return;
        out.ran = true;
        if (i == 1) {
          out.counts = CellCounts{i, j, 1, 0, 0, 0, 1};
          GeneratorRecord rec;
          rec.name = "t";
          rec.degree = 1;
          rec.order = d;
          rec.construction = construct_base();
          rec.value = make_semiinvariant(ctx, Poly::variable(var_t()));
          out.discovery.found.push_back(std::move(rec));
          return;
        }
        CellWork work = analyze_cell(ctx, result.registry, i, j, opts.discovery.rank);
        out.counts = work.counts;
        if (work.counts.delta > 0)
          out.discovery = discover_in_cell(ctx, result.registry, i, j, work, opts.discovery);
      } catch (const Error& e) {
        out.error = e.what();
      }
    };

    if (opts.jobs > 1) {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      int n = std::min<int>(opts.jobs, static_cast<int>(orders.size()));
      for (int w = 0; w < n; ++w)
        pool.emplace_back([&] {
          while (true) {
            std::size_t k = next.fetch_add(1);
            if (k >= orders.size()) break;
            run_cell(k);
          }
        });
      for (auto& th : pool) th.join();
    } else {
      for (std::size_t k = 0; k < orders.size(); ++k) run_cell(k);
    }

    // Deterministic merge in descending order of j.
    for (std::size_t k = 0; k < orders.size(); ++k) {
      CellOutcome& out = outcomes[k];
      if (!out.error.empty()) {
        result.issues.push_back({i, orders[k], out.error});
        result.complete = false;
        continue;
      }
      if (!out.ran) continue;
      result.table.set(i, orders[k], static_cast<int>(out.counts.delta));
      for (GeneratorRecord& rec : out.discovery.found) result.registry.add(std::move(rec));
      if (out.discovery.budget_exhausted) {
        result.issues.push_back(
            {i, orders[k],
             "budget exhausted: found " + std::to_string(out.discovery.found.size()) +
                 " of " + std::to_string(out.counts.delta)});
        result.complete = false;
      }
      log("cell (" + std::to_string(i) + "," + std::to_string(orders[k]) + "): dim=" +
          std::to_string(out.counts.dim) + " sigma=" + std::to_string(out.counts.sigma) +
          " span=" + std::to_string(out.counts.span) + " delta=" +
          std::to_string(out.counts.delta));
    }

    if (!result.complete) {
      // Later degrees would build on an incomplete registry; stop here.
      result.registry.set_complete_through(i - 1);
      persist_state(result.registry, result.table, opts.registry_path);
      return result;
    }
    result.registry.set_complete_through(i);
    persist_state(result.registry, result.table, opts.registry_path);
    log("degree " + std::to_string(i) + " complete: " +
        std::to_string(result.registry.size()) + " generators so far");
  }
  return result;
}

// ---------------------------------------------------------------------------
// Expected distribution for d = 7 and verification
// ---------------------------------------------------------------------------

DistributionTable expected_distribution_d7() {
  DistributionTable t;
  auto row = [&t](int degree, std::initializer_list<std::pair<int, int>> cells) {
    for (const auto& [order, count] : cells) t.set(degree, order, count);
  };
  row(1, {{7, 1}});
  row(2, {{2, 1}, {6, 1}, {10, 1}});
  row(3, {{3, 1}, {5, 1}, {7, 1}, {9, 1}, {11, 1}, {15, 1}});
  row(4, {{0, 1}, {4, 2}, {6, 1}, {8, 2}, {10, 1}, {14, 1}});
  row(5, {{1, 1}, {3, 2}, {5, 2}, {7, 2}, {9, 2}, {13, 1}});
  row(6, {{2, 3}, {4, 2}, {6, 2}, {8, 2}, {12, 1}});
  row(7, {{1, 3}, {3, 2}, {5, 4}, {7, 2}, {11, 1}});
  row(8, {{0, 3}, {2, 3}, {4, 3}, {6, 3}, {10, 1}});
  row(9, {{1, 3}, {3, 5}, {5, 2}, {9, 1}});
  row(10, {{2, 4}, {4, 4}, {8, 1}});
  row(11, {{1, 5}, {3, 3}, {7, 1}});
  row(12, {{0, 6}, {2, 6}, {6, 1}});
  row(13, {{1, 7}, {3, 1}, {5, 1}});
  row(14, {{0, 4}, {4, 2}});
  row(15, {{1, 3}, {3, 1}});
  row(16, {{0, 2}, {2, 3}});
  row(17, {{1, 2}});
  row(18, {{0, 9}});
  row(19, {{1, 1}});
  row(20, {{0, 1}});
  row(22, {{0, 2}});
  row(23, {{1, 1}});
  row(26, {{0, 1}});
  row(30, {{0, 1}});
  return t;
}

DistributionDiff verify_distribution(const DistributionTable& table,
                                     const DistributionTable& expected) {
  DistributionDiff diff;
  for (const auto& [cell, want] : expected.cells()) {
    if (!table.has_degree(cell.first)) continue;  // reported as uncovered below
    int got = table.get(cell.first, cell.second);
    if (got != want) diff.mismatches.push_back({cell.first, cell.second, got, want});
  }
  for (const auto& [cell, got] : table.cells()) {
    if (got == 0) continue;
    if (expected.get(cell.first, cell.second) == 0 && got != 0) {
      int want = expected.get(cell.first, cell.second);
      bool already = false;
      for (const auto& m : diff.mismatches)
        if (m.degree == cell.first && m.order == cell.second) already = true;
      if (!already) diff.mismatches.push_back({cell.first, cell.second, got, want});
    }
  }
  for (int degree : expected.degrees())
    if (!table.has_degree(degree)) diff.uncovered_degrees.push_back(degree);
  return diff;
}

// ---------------------------------------------------------------------------
// Audit
// ---------------------------------------------------------------------------

AuditReport audit_registry(const FormContext& ctx, const Registry& reg, int max_degree,
                           const RankOptions& opts) {
  AuditReport report;
  // Re-evaluate constructions and orders.
  for (const auto& rec : reg.records()) {
    ++report.checked;
    if (rec.opaque()) continue;
    if (rec.audit_hash != record_hash(rec))
      report.issues.push_back({rec.name, "audit hash mismatch"});
    try {
      SemiInvariant again = reg.evaluate(ctx, *rec.construction);
      if (again.is_zero())
        report.issues.push_back({rec.name, "construction re-evaluates to zero"});
      else if (!(again.poly == rec.value->poly))
        report.issues.push_back({rec.name, "construction does not reproduce the payload"});
      int ord = covariant_order(ctx, rec.value->poly);
      if (ord != rec.order)
        report.issues.push_back(
            {rec.name, "stored order " + std::to_string(rec.order) + " but recomputed " +
                           std::to_string(ord)});
    } catch (const Error& e) {
      report.issues.push_back({rec.name, std::string("evaluation error: ") + e.what()});
    }
  }

  // Irreducibility and per-cell completeness, cell by cell.
  std::map<std::pair<int, int>, std::vector<const GeneratorRecord*>> cells;
  for (const auto& rec : reg.records()) {
    if (rec.opaque() || rec.degree > max_degree) continue;
    cells[{rec.degree, rec.order}].push_back(&rec);
  }
  for (const auto& [cell, records] : cells) {
    const auto [i, j] = cell;
    CellWork work = analyze_cell(ctx, reg, i, j, opts);
    std::vector<SemiInvariant> accepted;
    for (const GeneratorRecord* rec : records) {
      if (!work.span->add(rec->value->poly)) {
        // Modular dependence is not a proof; confirm exactly before reporting.
        std::vector<SemiInvariant> basis;
        for (const ProductTerm& term : enumerate_product_terms(reg, i, j))
          basis.push_back(evaluate_product(ctx, reg, term));
        for (const auto& s : accepted) basis.push_back(s);
        if (reduce_against(basis, *rec->value, opts).member)
          report.issues.push_back({rec->name, "reducible: lies in the product span"});
      }
      accepted.push_back(*rec->value);
    }
    if (work.span->rank() != work.counts.dim)
      report.issues.push_back(
          {"cell(" + std::to_string(i) + "," + std::to_string(j) + ")",
           "span of products plus generators has dimension " +
               std::to_string(work.span->rank()) + ", expected " +
               std::to_string(work.counts.dim)});
  }
  return report;
}

}  // namespace covforge
