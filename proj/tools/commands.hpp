#pragma once

#include <optional>
#include <string>
#include <vector>

namespace wrcw::tool {

struct ClassifyOptions {
  double a = 1.0;
  double mu0 = 0.0;
  double mu1 = 0.0;
  double tol = 1e-12;  // membership tolerance for the C and M sets
  std::string format = "text";
  std::optional<std::string> out;
};

struct PhaseDiagramOptions {
  double a = 1.0;
  double mu0_min = -1.0, mu0_max = 4.0;
  double mu1_min = -1.0, mu1_max = 4.0;
  int mu0_steps = 21, mu1_steps = 21;
  std::string format = "csv";
  std::optional<std::string> out;
};

struct IsothermOptions {
  double a = 1.0;
  double theta = 1.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  int points = 200;
  std::string format = "csv";
  std::optional<std::string> out;
};

struct OrderParameterOptions {
  double a = 1.0;
  double mu_min = 0.0;
  double mu_max = 0.0;
  int points = 100;
  std::string format = "csv";
  std::optional<std::string> out;
};

struct OracleCheckOptions {
  std::string suite;
  std::vector<double> volumes;  // empty = suite default
  std::optional<double> tol;    // overrides identity/moments tolerances
  std::string format = "json";
  std::optional<std::string> out;
};

int run_classify(const ClassifyOptions& opt);
int run_phase_diagram(const PhaseDiagramOptions& opt);
int run_isotherm(const IsothermOptions& opt);
int run_order_parameter(const OrderParameterOptions& opt);
int run_oracle_check(const OracleCheckOptions& opt);

}  // namespace wrcw::tool
