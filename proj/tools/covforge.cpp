// covforge — exact covariant algebra of binary forms on the command line.
//
// Verbs: dim, transvect, semitransvect, kappa, reconstruct, replay, discover,
// table, verify, audit. Exit codes: 0 success, 1 engine error, 2 verification
// diff.

#include <CLI11.hpp>

#include "covforge/discover.hpp"
#include "covforge/replay.hpp"
#include "covforge/transvect.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace covforge;

std::string read_poly_arg(const std::string& arg) {
  // Polynomials are inline by default; @path reads the file.
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw Error("cannot open polynomial file: " + arg.substr(1));
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
  }
  return arg;
}

std::string default_registry_path() {
  const char* env = std::getenv("COVFORGE_REGISTRY");
  return env ? env : "covforge-registry.txt";
}

int run(int argc, char** argv) {
  CLI::App app{"exact covariant algebra of binary forms"};
  app.require_subcommand(1);

  // --- dim d i j ---------------------------------------------------------
  int dim_d = 7, dim_i = 0, dim_j = 0;
  CLI::App* dim = app.add_subcommand("dim", "Cayley-Sylvester dimension of C_{i,j}");
  dim->add_option("d", dim_d, "form degree")->required();
  dim->add_option("i", dim_i, "covariant degree")->required();
  dim->add_option("j", dim_j, "covariant order")->required();

  // --- transvect ----------------------------------------------------------
  int tv_d = 7, tv_level = 0;
  std::string tv_f, tv_g;
  CLI::App* tv = app.add_subcommand("transvect", "classical transvectant of two covariants");
  tv->add_option("--d", tv_d, "form degree");
  tv->add_option("F", tv_f, "first covariant (inline or @file)")->required();
  tv->add_option("G", tv_g, "second covariant (inline or @file)")->required();
  tv->add_option("level", tv_level, "transvectant level")->required();

  // --- semitransvect ------------------------------------------------------
  int stv_d = 7, stv_level = 0;
  std::string stv_f, stv_g;
  CLI::App* stv =
      app.add_subcommand("semitransvect", "semitransvectant of two semi-invariants");
  stv->add_option("--d", stv_d, "form degree");
  stv->add_option("f", stv_f, "first semi-invariant (inline or @file)")->required();
  stv->add_option("g", stv_g, "second semi-invariant (inline or @file)")->required();
  stv->add_option("level", stv_level, "semitransvectant level")->required();

  // --- kappa / reconstruct ------------------------------------------------
  int k_d = 7;
  std::string k_arg;
  CLI::App* kap = app.add_subcommand("kappa", "leading coefficient of a covariant");
  kap->add_option("--d", k_d, "form degree");
  kap->add_option("F", k_arg, "covariant (inline or @file)")->required();

  int rc_d = 7;
  std::string rc_arg;
  CLI::App* rec = app.add_subcommand("reconstruct",
                                     "covariant reconstructed from its leading coefficient");
  rec->add_option("--d", rc_d, "form degree");
  rec->add_option("a", rc_arg, "semi-invariant (inline or @file)")->required();

  // --- replay -------------------------------------------------------------
  std::string rp_registry = default_registry_path();
  CLI::App* rp =
      app.add_subcommand("replay", "build the bundled degree-7 generator catalog");
  rp->add_option("--registry", rp_registry, "registry output path");

  // --- discover -----------------------------------------------------------
  int dc_d = 7, dc_max = 16, dc_jobs = 1;
  long long dc_budget = 20000;
  bool dc_modular = false, dc_resume = false, dc_quiet = false;
  std::string dc_registry = default_registry_path();
  CLI::App* dc = app.add_subcommand("discover", "run the generator discovery pipeline");
  dc->add_option("--d", dc_d, "form degree");
  dc->add_option("--max-degree", dc_max, "last generator degree to process")->required();
  dc->add_option("--registry", dc_registry, "registry state path");
  dc->add_option("--budget", dc_budget, "candidate evaluations per cell");
  dc->add_option("--jobs", dc_jobs, "worker threads per degree");
  dc->add_flag("--modular", dc_modular, "Monte-Carlo double-prime rank mode");
  dc->add_flag("--resume", dc_resume, "resume from the persisted registry");
  dc->add_flag("--quiet", dc_quiet, "suppress per-cell progress");

  // --- table --------------------------------------------------------------
  std::string tb_registry = default_registry_path(), tb_format = "grid";
  CLI::App* tb = app.add_subcommand("table", "print the delta distribution table");
  tb->add_option("--registry", tb_registry, "registry state path");
  tb->add_option("--format", tb_format, "grid | records")
      ->check(CLI::IsMember({"grid", "records"}));

  // --- verify -------------------------------------------------------------
  std::string vf_registry = default_registry_path();
  CLI::App* vf = app.add_subcommand(
      "verify", "diff a computed table against the bundled degree-7 one");
  vf->add_option("--registry", vf_registry, "registry state path");

  // --- audit --------------------------------------------------------------
  std::string ad_registry = default_registry_path();
  int ad_max_degree = 13;
  CLI::App* ad = app.add_subcommand("audit", "re-check registry certificates");
  ad->add_option("--registry", ad_registry, "registry state path");
  ad->add_option("--max-degree", ad_max_degree, "irreducibility re-check bound");

  CLI11_PARSE(app, argc, argv);

  if (dim->parsed()) {
    std::cout << cs_dimension(dim_d, dim_i, dim_j) << "\n";
    return 0;
  }

  if (tv->parsed()) {
    FormContext ctx(tv_d);
    Poly F = Poly::parse(read_poly_arg(tv_f), tv_d);
    Poly G = Poly::parse(read_poly_arg(tv_g), tv_d);
    std::cout << transvectant(F, G, tv_level).to_string() << "\n";
    return 0;
  }

  if (stv->parsed()) {
    FormContext ctx(stv_d);
    SemiInvariant f = make_semiinvariant(ctx, Poly::parse(read_poly_arg(stv_f), stv_d));
    SemiInvariant g = make_semiinvariant(ctx, Poly::parse(read_poly_arg(stv_g), stv_d));
    SemiInvariant h = semitransvectant_direct(ctx, f, g, stv_level);
    std::cout << h.poly.to_string() << "\n";
    return 0;
  }

  if (kap->parsed()) {
    FormContext ctx(k_d);
    SemiInvariant s = leading_coefficient(ctx, Poly::parse(read_poly_arg(k_arg), k_d));
    std::cout << s.poly.to_string() << "\n";
    return 0;
  }

  if (rec->parsed()) {
    FormContext ctx(rc_d);
    Poly a = Poly::parse(read_poly_arg(rc_arg), rc_d);
    std::cout << reconstruct_covariant(ctx, a).to_string() << "\n";
    return 0;
  }

  if (rp->parsed()) {
    FormContext ctx(7);
    ReplayReport report;
    Registry reg = replay_catalog(ctx, &report);
    reg.save(rp_registry);
    std::cout << "built " << report.built << " generators (+" << report.opaque
              << " opaque) into " << rp_registry << "\n";
    for (const auto& issue : report.issues)
      std::cout << "issue: " << issue.name << " [" << issue.kind << "] " << issue.detail
                << "\n";
    return report.issues.empty() ? 0 : 2;
  }

  if (dc->parsed()) {
    FormContext ctx(dc_d);
    PipelineOptions opts;
    opts.max_degree = dc_max;
    opts.registry_path = dc_registry;
    opts.resume = dc_resume;
    opts.jobs = dc_jobs;
    opts.discovery.budget = dc_budget;
    opts.discovery.rank.modular = dc_modular;
    std::vector<std::uint64_t> primes;
    opts.discovery.rank.prime_log = &primes;
    if (!dc_quiet) opts.log = [](const std::string& s) { std::cout << s << "\n"; };
    PipelineResult res = run_pipeline(ctx, opts);
    std::cout << "generators: " << res.registry.size() << "\n";
    std::cout << "total delta through degree " << dc_max << ": " << res.table.total()
              << "\n";
    for (auto p : primes) std::cout << "modular prime used: " << p << "\n";
    for (const auto& issue : res.issues)
      std::cout << "issue (" << issue.degree << "," << issue.order << "): " << issue.detail
                << "\n";
    return res.complete ? 0 : 1;
  }

  if (tb->parsed()) {
    std::ifstream in(tb_registry);
    if (!in) throw Error("cannot open registry file: " + tb_registry);
    DistributionTable table = DistributionTable::read_deltas(in);
    std::cout << (tb_format == "grid" ? table.to_grid() : table.to_records());
    return 0;
  }

  if (vf->parsed()) {
    std::ifstream in(vf_registry);
    if (!in) throw Error("cannot open registry file: " + vf_registry);
    DistributionTable table = DistributionTable::read_deltas(in);
    DistributionDiff diff = verify_distribution(table, expected_distribution_d7());
    for (const auto& m : diff.mismatches)
      std::cout << "mismatch at (" << m.degree << "," << m.order << "): got " << m.got
                << ", expected " << m.want << "\n";
    for (int deg : diff.uncovered_degrees)
      std::cout << "degree " << deg << " not covered by the computed table\n";
    if (diff.clean()) std::cout << "table matches the bundled distribution\n";
    return diff.clean() ? 0 : 2;
  }

  if (ad->parsed()) {
    Registry reg = Registry::load(ad_registry);
    FormContext ctx(reg.form_degree());
    AuditReport report = audit_registry(ctx, reg, ad_max_degree);
    std::cout << "checked " << report.checked << " records\n";
    for (const auto& issue : report.issues)
      std::cout << "audit issue: " << issue.name << ": " << issue.detail << "\n";
    return report.clean() ? 0 : 2;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const covforge::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
