#include <cstdio>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hencky/hencky.hpp"
#include "hencky/io.hpp"

// Batch front end. Exit codes: 0 success, 1 numerical or verification
// failure, 2 usage or parse error.

namespace {

struct LawConfig {
  std::string law = "svk";
  double lambda = 1.0;
  double mu = 1.0;
  double rho0 = 1.0;
  double kappa = 0.0;
  bool kappa_set = false;
};

struct OutputConfig {
  std::string format = "json";
  std::string path;  // empty: stdout
};

void add_law_options(CLI::App* cmd, LawConfig& lc, bool allow_all) {
  std::string help = "material law: svk, neo-hookean, hencky";
  if (allow_all) help += ", all (default), or broken-anisotropic (negative control)";
  cmd->add_option("--law", lc.law, help);
  CLI::Option* lambda = cmd->add_option("--lambda", lc.lambda,
                                        "first Lame-type modulus (default 1)");
  cmd->add_option("--mu", lc.mu, "shear-type modulus (default 1)");
  cmd->add_option("--rho0", lc.rho0, "reference mass density (default 1)");
  cmd->add_option("--kappa", lc.kappa,
                  "bulk-type modulus; hencky law only, sets lambda = kappa - 2mu/3")
      ->excludes(lambda)
      ->each([&lc](const std::string&) { lc.kappa_set = true; });
}

void add_output_options(CLI::App* cmd, OutputConfig& oc) {
  cmd->add_option("--format", oc.format, "output format (default json)")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output", oc.path, "output file (default: stdout)");
}

hencky::MaterialParams resolve_params(const LawConfig& lc) {
  hencky::MaterialParams p{lc.lambda, lc.mu, lc.rho0};
  if (lc.kappa_set) {
    if (lc.law != "hencky")
      throw hencky::InvalidInputError("--kappa applies only to the hencky law");
    p.lambda = lc.kappa - 2.0 * lc.mu / 3.0;
  }
  return p;
}

std::unique_ptr<hencky::MaterialLaw> build_law(const LawConfig& lc) {
  return hencky::make_law(lc.law, resolve_params(lc));
}

void emit(const OutputConfig& oc, const std::string& content) {
  if (oc.path.empty()) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  hencky::io::write_file(oc.path, content);
}

int run_stress(const LawConfig& lc, const std::string& input, const OutputConfig& oc,
               hencky::PathTolerances tols) {
  const std::unique_ptr<hencky::MaterialLaw> law = build_law(lc);
  const std::vector<hencky::Mat3> inputs =
      hencky::io::parse_defgrad_records(hencky::io::read_file(input));

  std::vector<hencky::StressReport> reports;
  reports.reserve(inputs.size());
  bool all_pass = true;
  for (const hencky::Mat3& m : inputs) {
    hencky::StressReport rep;
    try {
      rep = hencky::verify_theorem(*law, hencky::DefGrad(m), tols);
    } catch (const hencky::Error& e) {
      rep.f = m;
      rep.mass_ratio = hencky::det(m);
      rep.rho0 = law->params().rho0;
      rep.rho = rep.mass_ratio > 0.0 ? rep.rho0 / rep.mass_ratio
                                     : std::numeric_limits<double>::quiet_NaN();
      rep.pass = false;
      rep.errors.push_back(e.what());
    }
    all_pass = all_pass && rep.pass;
    reports.push_back(std::move(rep));
  }
  emit(oc, oc.format == "csv" ? hencky::io::stress_reports_csv(reports)
                              : hencky::io::stress_reports_json(reports));
  return all_pass ? 0 : 1;
}

int run_verify(const LawConfig& lc, std::uint64_t seed, int samples, int nodes,
               const OutputConfig& oc, hencky::PathTolerances tols) {
  if (samples < 1)
    throw hencky::InvalidInputError("--samples must be at least 1");
  if (nodes < 1) throw hencky::InvalidInputError("--nodes must be at least 1");

  std::vector<std::string> laws;
  if (lc.law == "all") {
    for (const std::string_view name : hencky::law_catalog()) laws.emplace_back(name);
  } else {
    laws.push_back(lc.law);
  }

  hencky::io::VerifyReport rep;
  rep.seed = seed;
  rep.samples = samples;
  rep.laws = laws;
  rep.tolerances = tols;

  for (const std::string& name : laws) {
    LawConfig one = lc;
    one.law = name;
    const std::unique_ptr<hencky::MaterialLaw> law = build_law(one);
    rep.suites.push_back(hencky::theorem_suite(*law, samples, seed, tols));
    rep.suites.push_back(hencky::coaxiality_suite(*law, samples, seed));
    rep.suites.push_back(hencky::isotropy_suite(*law, samples, seed));
    if (hencky::invertible_in_sweeps(name))
      rep.suites.push_back(hencky::roundtrip_suite(
          *law, samples, seed, hencky::roundtrip_recover_tol(name)));
  }
  rep.suites.push_back(hencky::dexp_agreement_suite(samples, seed, nodes));
  rep.suites.push_back(hencky::kinematics_suite(samples, seed));

  rep.pass = true;
  for (const hencky::SuiteResult& s : rep.suites) rep.pass = rep.pass && s.pass();

  emit(oc, oc.format == "csv" ? hencky::io::verify_report_csv(rep)
                              : hencky::io::verify_report_json(rep));
  return rep.pass ? 0 : 1;
}

int run_invert(const LawConfig& lc, const std::string& input, const OutputConfig& oc,
               double roundtrip_tol) {
  const std::unique_ptr<hencky::MaterialLaw> law = build_law(lc);
  const std::vector<hencky::Sym3> stresses =
      hencky::io::parse_stress_records(hencky::io::read_file(input));

  std::vector<hencky::io::InvertRecord> records;
  records.reserve(stresses.size());
  bool any_flagged = false;
  for (const hencky::Sym3& t : stresses) {
    hencky::io::InvertRecord rec;
    rec.t = t;
    try {
      const hencky::ConjugateResult res = hencky::conjugate(*law, t);
      rec.ln_b = res.argmax;
      rec.value = res.value;
      rec.iterations = res.iterations;
      rec.converged = res.converged;
      rec.gradient_norm = res.gradient_norm_final;
      if (res.converged) {
        const hencky::Sym3 back =
            hencky::cauchy_over_rho(*law, hencky::exp_sym(res.argmax));
        rec.roundtrip_residual = hencky::rel_diff(back, t);
        rec.flagged = *rec.roundtrip_residual > roundtrip_tol;
      } else {
        rec.flagged = true;
      }
    } catch (const hencky::Error& e) {
      rec.error = e.what();
      rec.flagged = true;
    }
    any_flagged = any_flagged || rec.flagged;
    records.push_back(std::move(rec));
  }
  emit(oc, oc.format == "csv" ? hencky::io::invert_records_csv(records)
                              : hencky::io::invert_records_json(records));
  return any_flagged ? 1 : 0;
}

int run_dexp_table(std::uint64_t seed, int samples, const OutputConfig& oc) {
  if (samples < 1)
    throw hencky::InvalidInputError("--samples must be at least 1");
  const hencky::DexpTable table = hencky::dexp_convergence_table(samples, seed);
  emit(oc, oc.format == "csv" ? hencky::io::dexp_table_csv(table)
                              : hencky::io::dexp_table_json(table));
  return table.monotone ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Finite-strain isotropic hyperelasticity: stress computation along "
      "independent paths, property verification sweeps, conjugate-based "
      "inversion of the constitutive law, and quadrature convergence tables."};
  app.require_subcommand(1);

  // stress
  LawConfig stress_law;
  OutputConfig stress_out;
  std::string stress_input;
  hencky::PathTolerances stress_tols;
  CLI::App* stress = app.add_subcommand(
      "stress", "compute Cauchy stress along all paths for each input F");
  stress->add_option("input", stress_input, "JSON file: [{\"F\": [[...]x3]}, ...]")
      ->required();
  add_law_options(stress, stress_law, false);
  add_output_options(stress, stress_out);
  stress->add_option("--tol-exact", stress_tols.exact_rel,
                     "relative tolerance between exact stress paths");
  stress->add_option("--tol-fd", stress_tols.fd_rel,
                     "relative tolerance against the finite-difference path");

  // verify
  LawConfig verify_law;
  verify_law.law = "all";
  OutputConfig verify_out;
  std::uint64_t verify_seed = 42;
  int verify_samples = 200;
  int verify_nodes = 16;
  hencky::PathTolerances verify_tols;
  CLI::App* verify = app.add_subcommand(
      "verify", "run the seeded property suites and report per-suite results");
  add_law_options(verify, verify_law, true);
  add_output_options(verify, verify_out);
  verify->add_option("--seed", verify_seed, "random seed (default 42)");
  verify->add_option("--samples", verify_samples, "samples per suite (default 200)");
  verify->add_option("--nodes", verify_nodes,
                     "quadrature nodes for the derivative-of-exp suite (default 16)");
  verify->add_option("--tol-exact", verify_tols.exact_rel,
                     "relative tolerance between exact stress paths");
  verify->add_option("--tol-fd", verify_tols.fd_rel,
                     "relative tolerance against the finite-difference path");

  // invert
  LawConfig invert_law;
  invert_law.law = "hencky";
  OutputConfig invert_out;
  std::string invert_input;
  double invert_tol = hencky::tol::fd_path_rel;
  CLI::App* invert = app.add_subcommand(
      "invert", "recover ln B from sigma/rho tensors via the conjugate");
  invert->add_option("input", invert_input, "JSON file: [{\"T\": [[...]x3]}, ...]")
      ->required();
  add_law_options(invert, invert_law, false);
  add_output_options(invert, invert_out);
  invert->add_option("--tol-fd", invert_tol,
                     "round-trip stress tolerance used to flag records");

  // dexp-table
  OutputConfig table_out;
  std::uint64_t table_seed = 42;
  int table_samples = 200;
  CLI::App* table = app.add_subcommand(
      "dexp-table", "quadrature convergence of the derivative of exp vs node count");
  add_output_options(table, table_out);
  table->add_option("--seed", table_seed, "random seed (default 42)");
  table->add_option("--samples", table_samples, "sample pairs per row (default 200)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (stress->parsed()) return run_stress(stress_law, stress_input, stress_out, stress_tols);
    if (verify->parsed())
      return run_verify(verify_law, verify_seed, verify_samples, verify_nodes,
                        verify_out, verify_tols);
    if (invert->parsed()) return run_invert(invert_law, invert_input, invert_out, invert_tol);
    if (table->parsed()) return run_dexp_table(table_seed, table_samples, table_out);
  } catch (const hencky::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hencky::InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hencky::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;  // unreachable: a subcommand is required
}
