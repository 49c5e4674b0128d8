#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "output_format.hpp"
#include "wrcw/errors.hpp"

using namespace wrcw;

int main(int argc, char** argv) {
  CLI::App app{"Mean-field two-component gas: phase structure, equations of "
               "state, and exact finite-volume checks"};
  app.require_subcommand(1);

  tool::ClassifyOptions cls;
  auto* cmd_classify = app.add_subcommand(
      "classify", "Classify a phase point and report its phases");
  cmd_classify->add_option("--a", cls.a, "repulsion strength, >= 0")
      ->required()->check(CLI::NonNegativeNumber);
  cmd_classify->add_option("--mu0", cls.mu0, "chemical potential of type 0")
      ->required();
  cmd_classify->add_option("--mu1", cls.mu1, "chemical potential of type 1")
      ->required();
  cmd_classify->add_option("--tol", cls.tol,
                           "membership tolerance for the critical/coexistence "
                           "sets (default 1e-12)");
  cmd_classify->add_option("--format", cls.format, "text|json|csv");
  cmd_classify->add_option("--out", cls.out, "output path (default stdout)");

  tool::PhaseDiagramOptions pd;
  auto* cmd_pd = app.add_subcommand(
      "phase-diagram", "Grid scan of regions and root counts at fixed a");
  cmd_pd->add_option("--a", pd.a, "repulsion strength, > 0")->required();
  cmd_pd->add_option("--mu0-min", pd.mu0_min, "mu0 range start (default -1)");
  cmd_pd->add_option("--mu0-max", pd.mu0_max, "mu0 range end (default 4)");
  cmd_pd->add_option("--mu0-steps", pd.mu0_steps, "grid points along mu0");
  cmd_pd->add_option("--mu1-min", pd.mu1_min, "mu1 range start (default -1)");
  cmd_pd->add_option("--mu1-max", pd.mu1_max, "mu1 range end (default 4)");
  cmd_pd->add_option("--mu1-steps", pd.mu1_steps, "grid points along mu1");
  cmd_pd->add_option("--format", pd.format, "csv|svg");
  cmd_pd->add_option("--out", pd.out, "output path (default stdout)");

  tool::IsothermOptions iso;
  auto* cmd_iso = app.add_subcommand(
      "isotherm", "One-component p_hat(rho) curve with coexistence plateau");
  cmd_iso->add_option("--a", iso.a, "repulsion strength, >= 0")
      ->required()->check(CLI::NonNegativeNumber);
  cmd_iso->add_option("--theta", iso.theta, "theta parameter, > 0")
      ->required()->check(CLI::PositiveNumber);
  cmd_iso->add_option("--rho-min", iso.rho_min, "first density")->required();
  cmd_iso->add_option("--rho-max", iso.rho_max, "last density")->required();
  cmd_iso->add_option("--points", iso.points, "grid size (default 200)");
  cmd_iso->add_option("--format", iso.format, "csv|svg");
  cmd_iso->add_option("--out", iso.out, "output path (default stdout)");

  tool::OrderParameterOptions op;
  auto* cmd_op = app.add_subcommand(
      "order-parameter", "ybar(a, mu) along a chemical-potential sweep");
  cmd_op->add_option("--a", op.a, "repulsion strength, > 0")->required();
  cmd_op->add_option("--mu-min", op.mu_min, "mu range start")->required();
  cmd_op->add_option("--mu-max", op.mu_max, "mu range end")->required();
  cmd_op->add_option("--points", op.points, "grid size (default 100)");
  cmd_op->add_option("--format", op.format, "csv");
  cmd_op->add_option("--out", op.out, "output path (default stdout)");

  tool::OracleCheckOptions oc;
  auto* cmd_oc = app.add_subcommand(
      "oracle-check", "Exact finite-volume identity and convergence suites");
  cmd_oc->add_option("--suite", oc.suite,
                     "identity-4a|identity-20|convergence|moments")
      ->required();
  cmd_oc->add_option("--V", oc.volumes, "volume list (suite default if unset)");
  cmd_oc->add_option("--tol", oc.tol, "tolerance override for identity/moments");
  cmd_oc->add_option("--format", oc.format, "json");
  cmd_oc->add_option("--out", oc.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help is success, any parse failure is usage
  }

  try {
    if (cmd_classify->parsed()) return tool::run_classify(cls);
    if (cmd_pd->parsed()) return tool::run_phase_diagram(pd);
    if (cmd_iso->parsed()) return tool::run_isotherm(iso);
    if (cmd_op->parsed()) return tool::run_order_parameter(op);
    if (cmd_oc->parsed()) return tool::run_oracle_check(oc);
  } catch (const tool::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const tool::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
