// Acceptance suite: one test case per shipping criterion, each printing a
// [criterion N] PASS/FAIL line. Heavy fixtures (the replayed registry) are
// shared across cases within one process run.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covforge/discover.hpp"
#include "covforge/replay.hpp"
#include "covforge/transvect.hpp"

#include <chrono>
#include <cstdio>
#include <random>

using namespace covforge;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const FormContext& ctx7() {
  static FormContext ctx(7);
  return ctx;
}

struct ReplayFixture {
  Registry registry;
  ReplayReport report;
  double seconds = 0;
};

const ReplayFixture& replayed() {
  static ReplayFixture fix = [] {
    ReplayFixture f;
    auto t0 = Clock::now();
    f.registry = replay_catalog(ctx7(), &f.report);
    f.seconds = seconds_since(t0);
    return f;
  }();
  return fix;
}

struct Criterion {
  std::string label;
  bool pass = true;

  explicit Criterion(std::string name) : label(std::move(name)) {}
  void expect(bool ok, const std::string& what) {
    pass = pass && ok;
    CHECK_MESSAGE(ok, label, ": ", what);
    if (!ok) std::printf("  [%s] FAILED check: %s\n", label.c_str(), what.c_str());
  }
  ~Criterion() { std::printf("[%s] %s\n", label.c_str(), pass ? "PASS" : "FAIL"); }
};

long long partition_count(int d, int i, int w) {
  if (w < 0) return 0;
  std::vector<std::vector<long long>> dp(
      static_cast<std::size_t>(i) + 1,
      std::vector<long long>(static_cast<std::size_t>(w) + 1, 0));
  dp[0][0] = 1;
  for (int part = 1; part <= d; ++part)
    for (int k = 1; k <= i; ++k)
      for (int s = part; s <= w; ++s) dp[k][s] += dp[k - 1][s - part];
  long long total = 0;
  for (int k = 0; k <= i; ++k) total += dp[k][w];
  return total;
}

std::string cell_name(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

TEST_CASE("criterion 1: Cayley-Sylvester ledger") {
  Criterion c("criterion 1");
  struct Row {
    int i, j;
    long long dim;
  };
  const std::vector<Row> rows = {{14, 2, 30}, {14, 4, 37}, {15, 1, 20}, {15, 3, 42},
                                 {16, 2, 33}, {17, 1, 31}, {18, 2, 63}, {19, 1, 46},
                                 {23, 1, 85}, {25, 1, 114}};
  auto t0 = Clock::now();
  for (const Row& row : rows) {
    long long got = cs_dimension(7, row.i, row.j);
    c.expect(got == row.dim, "dim C_" + cell_name(row.i, row.j) + " = " +
                                 std::to_string(got) + ", expected " + std::to_string(row.dim));
  }
  double dt = seconds_since(t0);
  c.expect(dt < 1.0, "ledger computed in " + std::to_string(dt) + "s (< 1s required)");
}

TEST_CASE("criterion 2: sigma and syzygy ledger") {
  Criterion c("criterion 2");
  struct Row {
    int i, j;
    long long sigma, syz;
  };
  const std::vector<Row> subset16 = {
      {14, 2, 36, 6}, {14, 4, 60, 25}, {15, 1, 17, 0}, {15, 3, 61, 20}, {16, 2, 39, 9}};
  const std::vector<Row> rest = {
      {18, 2, 105, 42}, {19, 1, 57, 12}, {23, 1, 142, 58}, {25, 1, 228, 114}};

  auto t0 = Clock::now();
  const Registry& reg = replayed().registry;  // includes catalog replay time
  for (const Row& row : subset16) {
    CellCounts counts = cell_counts(ctx7(), reg, row.i, row.j);
    c.expect(counts.sigma == row.sigma,
             "sigma" + cell_name(row.i, row.j) + " = " + std::to_string(counts.sigma) +
                 ", expected " + std::to_string(row.sigma));
    c.expect(counts.syzygies == row.syz,
             "S" + cell_name(row.i, row.j) + " = " + std::to_string(counts.syzygies) +
                 ", expected " + std::to_string(row.syz));
  }
  double subset_seconds = replayed().seconds + seconds_since(t0);
  c.expect(subset_seconds < 120.0, "degree<=16 subset took " +
                                       std::to_string(subset_seconds) +
                                       "s including replay (< 120s required)");

  for (const Row& row : rest) {
    CellCounts counts = cell_counts(ctx7(), reg, row.i, row.j);
    c.expect(counts.sigma == row.sigma,
             "sigma" + cell_name(row.i, row.j) + " = " + std::to_string(counts.sigma) +
                 ", expected " + std::to_string(row.sigma));
    c.expect(counts.syzygies == row.syz,
             "S" + cell_name(row.i, row.j) + " = " + std::to_string(counts.syzygies) +
                 ", expected " + std::to_string(row.syz));
  }
  double full_seconds = replayed().seconds + seconds_since(t0);
  c.expect(full_seconds < 1800.0, "full set took " + std::to_string(full_seconds) +
                                      "s including replay (< 1800s required)");
  std::printf("  [criterion 2] timings: subset %.1fs, full %.1fs (replay %.1fs)\n",
              subset_seconds, full_seconds, replayed().seconds);
}

TEST_CASE("criterion 3: delta consequences") {
  Criterion c("criterion 3");
  struct Row {
    int i, j;
    long long want;
  };
  const std::vector<Row> rows = {{14, 2, 0}, {14, 4, 2}, {15, 1, 3}, {15, 3, 1},
                                 {16, 2, 3}, {17, 1, 2}, {18, 2, 0}, {19, 1, 1},
                                 {23, 1, 1}, {25, 1, 0}};
  const Registry& reg = replayed().registry;
  for (const Row& row : rows) {
    long long got = delta(ctx7(), reg, row.i, row.j);
    c.expect(got == row.want, "delta" + cell_name(row.i, row.j) + " = " +
                                  std::to_string(got) + ", expected " +
                                  std::to_string(row.want));
  }
}

TEST_CASE("criterion 4: explicit polynomials") {
  Criterion c("criterion 4");
  SemiInvariant t = make_semiinvariant(ctx7(), Poly::variable(var_t()));

  SemiInvariant dv3 = semitransvectant_direct(ctx7(), t, t, 2);
  c.expect(dv3.poly == Poly::parse("x2*t - x1^2", 7), "[t,t]^2 = x2 t - x1^2");
  SemiInvariant dv1 = semitransvectant_direct(ctx7(), t, t, 4);
  c.expect(dv1.poly == Poly::parse("x4*t - 4*x1*x3 + 3*x2^2", 7),
           "[t,t]^4 = x4 t - 4 x1 x3 + 3 x2^2");
  SemiInvariant dv2 = semitransvectant_direct(ctx7(), t, t, 6);
  c.expect(dv2.poly == Poly::parse("x6*t - 6*x1*x5 + 15*x2*x4 - 10*x3^2", 7),
           "[t,t]^6 = x6 t - 6 x1 x5 + 15 x2 x4 - 10 x3^2");

  Poly form = reconstruct_covariant(ctx7(), Poly::variable(var_t()));
  Poly generic = Poly::variable(var_t()) * Poly::variable(var_y1(), 7);
  for (int i = 1; i <= 7; ++i) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), 7, static_cast<unsigned long>(i));
    generic += (Poly::variable(var_x(i)) * Poly::variable(var_y1(), 7 - i) *
                Poly::variable(var_y2(), i))
                   .scaled(Scalar(binom));
  }
  c.expect(form == generic, "kappa^-1(t) is the generic degree-7 form");
}

TEST_CASE("criterion 5: replay audit") {
  Criterion c("criterion 5");
  const ReplayFixture& fix = replayed();
  for (const auto& issue : fix.report.issues)
    c.expect(false, issue.name + " [" + issue.kind + "] " + issue.detail);
  c.expect(fix.report.issues.empty(), "every construction evaluates nonzero with the recorded order");

  const std::vector<int> expected = {3, 6, 8, 10, 10, 12, 13, 11, 9, 9, 13, 9};
  auto counts = fix.registry.per_degree_counts();
  int sum = counts[1];
  c.expect(counts[1] == 1, "degree 1 holds the base form alone");
  for (int deg = 2; deg <= 13; ++deg) {
    int want = expected[static_cast<std::size_t>(deg - 2)];
    c.expect(counts[deg] == want, "degree " + std::to_string(deg) + " cardinality " +
                                      std::to_string(counts[deg]) + ", expected " +
                                      std::to_string(want));
    sum += counts[deg];
  }
  // The catalog's own cardinality list fixes the running total: 1 + 113.
  c.expect(sum == 114, "generator count through degree 13 = " + std::to_string(sum));
}

TEST_CASE("criterion 6: end-to-end small degrees") {
  Criterion c("criterion 6");
  struct Row {
    int d, max_degree;
    std::size_t want;
    double limit;
  };
  const std::vector<Row> rows = {
      {1, 4, 0, 60.0}, {2, 3, 2, 60.0}, {3, 6, 4, 60.0}, {4, 6, 5, 60.0}, {5, 18, 23, 900.0}};
  for (const Row& row : rows) {
    auto t0 = Clock::now();
    PipelineOptions opts;
    opts.max_degree = row.max_degree;
    PipelineResult res = run_pipeline(FormContext(row.d), opts);
    double dt = seconds_since(t0);
    c.expect(res.complete, "pipeline d=" + std::to_string(row.d) + " completes");
    c.expect(res.registry.size() == row.want,
             "c_" + std::to_string(row.d) + " = " + std::to_string(res.registry.size()) +
                 ", expected " + std::to_string(row.want));
    c.expect(dt < row.limit, "d=" + std::to_string(row.d) + " took " + std::to_string(dt) +
                                 "s (< " + std::to_string(row.limit) + "s required)");
  }
}

TEST_CASE("criterion 7: full degree-7 discovery through degree 16") {
  Criterion c("criterion 7");
  auto t0 = Clock::now();
  PipelineOptions opts;
  opts.max_degree = 16;
  PipelineResult res = run_pipeline(ctx7(), opts);
  double dt = seconds_since(t0);
  c.expect(res.complete, "pipeline completes within the default budget");
  for (const auto& issue : res.issues)
    c.expect(false, "cell (" + std::to_string(issue.degree) + "," +
                        std::to_string(issue.order) + "): " + issue.detail);

  DistributionTable expected = expected_distribution_d7();
  int want_total = 0;
  for (const auto& [cell, v] : expected.cells())
    if (cell.first <= 16) want_total += v;
  c.expect(res.registry.size() == static_cast<std::size_t>(want_total),
           "generators found: " + std::to_string(res.registry.size()) + ", expected " +
               std::to_string(want_total));
  for (const auto& [cell, v] : expected.cells()) {
    if (cell.first > 16) continue;
    int got = res.table.get(cell.first, cell.second);
    c.expect(got == v, "delta" + cell_name(cell.first, cell.second) + " = " +
                           std::to_string(got) + ", expected " + std::to_string(v));
  }
  for (const auto& [cell, got] : res.table.cells())
    if (got != 0)
      c.expect(expected.get(cell.first, cell.second) == got,
               "unexpected generators at " + cell_name(cell.first, cell.second));
  std::printf("  [criterion 7] discovery through degree 16: %.1fs, %zu generators\n", dt,
              res.registry.size());
  std::printf("  [criterion 7] degrees 17-30 are verified by counting in criteria 1-3\n");
}

TEST_CASE("criterion 8: property suites") {
  Criterion c("criterion 8");
  const Registry& reg = replayed().registry;

  // Lemma (iii): the order rule on every nonzero semitransvectant of the
  // catalog replay (the construction records carry their levels).
  int order_checked = 0;
  for (const auto& rec : reg.records()) {
    if (rec.opaque() || rec.construction->kind != ConstructionExpr::Kind::Transvect)
      continue;
    SemiInvariant left = reg.evaluate(ctx7(), *rec.construction->args[0]);
    SemiInvariant right = reg.evaluate(ctx7(), *rec.construction->args[1]);
    int want = left.order + right.order - 2 * rec.construction->level;
    if (rec.order != want) {
      c.expect(false, rec.name + " violates the order rule");
    }
    ++order_checked;
  }
  c.expect(order_checked >= 140, "order rule checked on " + std::to_string(order_checked) +
                                     " nonzero semitransvectants");

  // Lemma (ii): invariant factors pull out.
  {
    const SemiInvariant& ch1 = *reg.at("ch1").value;
    std::mt19937 gen(20240808);
    std::vector<const GeneratorRecord*> pool;
    for (const auto& rec : reg.records())
      if (!rec.opaque() && rec.order >= 1 && rec.degree <= 8) pool.push_back(&rec);
    SemiInvariant t = make_semiinvariant(ctx7(), Poly::variable(var_t()));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int rep = 0; rep < 6; ++rep) {
      const GeneratorRecord& g = *pool[pick(gen)];
      std::uniform_int_distribution<int> lvl(1, std::min(7, g.order));
      int r = lvl(gen);
      SemiInvariant prod = make_semiinvariant(ctx7(), ch1.poly * g.value->poly);
      SemiInvariant lhs = semitransvectant_direct(ctx7(), t, prod, r);
      SemiInvariant rhs = semitransvectant_direct(ctx7(), t, *g.value, r);
      bool ok = !lhs.is_zero() && !rhs.is_zero() &&
                lhs.poly == (ch1.poly * rhs.poly).primitive_normalized();
      c.expect(ok, "invariant factorization for [t, ch1*" + g.name + "]^" +
                       std::to_string(r));
    }
  }

  // Direct path vs the reconstruction path on >= 50 random registry pairs.
  {
    std::mt19937 gen(711);
    std::vector<const GeneratorRecord*> pool;
    for (const auto& rec : reg.records())
      if (!rec.opaque() && rec.degree <= 10 && rec.order >= 1) pool.push_back(&rec);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    int done = 0;
    while (done < 50) {
      const GeneratorRecord& f = *pool[pick(gen)];
      const GeneratorRecord& g = *pool[pick(gen)];
      // Keep the covariant-route cost bounded; the draw stays seeded-random.
      double cost = double(f.order + 1) * double(f.value->poly.term_count()) *
                    double(g.order + 1) * double(g.value->poly.term_count());
      if (cost > 2.5e6) continue;
      std::uniform_int_distribution<int> lvl(1, std::min(f.order, g.order));
      int r = lvl(gen);
      SemiInvariant a = semitransvectant(ctx7(), *f.value, *g.value, r);
      SemiInvariant b = semitransvectant_direct(ctx7(), *f.value, *g.value, r);
      bool ok = a.is_zero() == b.is_zero() && (a.is_zero() || a.poly == b.poly);
      if (!ok)
        c.expect(false, "paths disagree on [" + f.name + "," + g.name + "]^" +
                            std::to_string(r));
      ++done;
    }
    c.expect(done >= 50, "direct path checked on " + std::to_string(done) + " random pairs");
  }

  // cs_dim against the brute-force partition-difference oracle.
  {
    bool all = true;
    for (int d = 1; d <= 5; ++d)
      for (int i = 1; i <= 8; ++i)
        for (int j = 0; j <= d * i; ++j) {
          long long want = 0;
          if ((d * i - j) % 2 == 0) {
            int w = (d * i - j) / 2;
            want = partition_count(d, i, w) - partition_count(d, i, w - 1);
          }
          if (cs_dimension(d, i, j) != want) all = false;
        }
    c.expect(all, "cs_dim matches the partition oracle for d<=5, i<=8");
  }

  // The z-coordinate conjugate of the derivation, term for term.
  {
    const std::map<int, std::string> expected = {
        {2, "10*x1*z2*t^-1 + 5*z3*t^-1"},
        {3, "15*x1*z3*t^-1 - 18*z2^2*t^-1 + 4*z4*t^-1"},
        {4, "20*x1*z4*t^-1 - 24*z2*z3*t^-1 + 3*z5*t^-1"},
        {5, "25*x1*z5*t^-1 - 30*z2*z4*t^-1 + 2*z6*t^-1"},
        {6, "30*x1*z6*t^-1 - 36*z2*z5*t^-1 + z7*t^-1"},
        {7, "35*x1*z7*t^-1 - 42*z2*z6*t^-1"},
    };
    bool all = derivation(ctx7(), Poly::variable(var_t())) == Poly::parse("7*x1", 7);
    for (const auto& [i, text] : expected) {
      Poly dz = derivation(ctx7(), ctx7().z_definition(i));
      if (!(to_z_form(ctx7(), dz) == Poly::parse(text, 7))) all = false;
    }
    c.expect(all, "z-coordinate conjugate of the derivation matches term for term");
  }
}

TEST_CASE("criterion 9: cardinality and distribution through counting") {
  Criterion c("criterion 9");
  DistributionTable expected = expected_distribution_d7();
  c.expect(expected.total() == 147, "bundled distribution totals 147");
  int tail = 0;
  for (const auto& [cell, v] : expected.cells())
    if (cell.first >= 14) tail += v;
  c.expect(tail == 33, "degrees 14-30 contribute 33 generators");
  std::printf(
      "  [criterion 9] the 147-generator claim is asserted through counting "
      "(criteria 1-3, 5, 7), not at representative level\n");
}
