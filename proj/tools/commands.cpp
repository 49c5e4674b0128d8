#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "output_format.hpp"
#include "svg_render.hpp"
#include "wrcw/eos.hpp"
#include "wrcw/finite_volume.hpp"
#include "wrcw/phase.hpp"
#include "wrcw/special_functions.hpp"

namespace wrcw::tool {

namespace {

using nlohmann::ordered_json;

const char* region_name(Region r) {
  switch (r) {
    case Region::SinglePhase: return "SinglePhase";
    case Region::Critical: return "Critical";
    case Region::Coexistence: return "Coexistence";
  }
  return "?";
}

const char* kind_name(StationaryKind k) {
  switch (k) {
    case StationaryKind::LocalMax: return "max";
    case StationaryKind::LocalMin: return "min";
    case StationaryKind::Degenerate: return "degenerate";
  }
  return "?";
}

int thread_count() {
  if (const char* env = std::getenv("WRCW_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<double> lin_space(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    g[i] = (n == 1) ? lo : lo + (hi - lo) * i / (n - 1);
  }
  return g;
}

}  // namespace

int run_classify(const ClassifyOptions& opt) {
  CommandTimer timer;
  const PhasePoint pt{opt.a, opt.mu0, opt.mu1};
  const auto sol = classify(pt, opt.tol, opt.tol);
  const auto rho = densities(sol);
  const double p = pressure_two_component(sol);

  Manifest manifest{"classify",
                    {{"a", opt.a}, {"mu0", opt.mu0}, {"mu1", opt.mu1},
                     {"format", opt.format}},
                    {{"membership_eps", opt.tol}}};

  std::string content;
  if (opt.format == "json") {
    ordered_json j;
    j["a"] = opt.a;
    j["mu0"] = opt.mu0;
    j["mu1"] = opt.mu1;
    j["region"] = region_name(sol.region);
    j["ybar"] = sol.order_parameter;
    j["maximizers"] = ordered_json::array();
    for (const auto& m : sol.maximizers) {
      j["maximizers"].push_back(
          {{"y_star", m.y}, {"kind", kind_name(m.kind)}, {"E", m.energy}});
    }
    j["phases"] = ordered_json::array();
    for (const auto& d : rho) {
      j["phases"].push_back({{"rho0", d.rho0}, {"rho1", d.rho1},
                             {"z0", d.rho0}, {"z1", d.rho1}});
    }
    j["p"] = p;
    j["near_degenerate_tie"] = sol.near_degenerate_tie;
    content = j.dump(2) + "\n";
  } else if (opt.format == "csv") {
    content = "region,y_star,rho0,rho1,p,ybar\n";
    for (std::size_t i = 0; i < sol.maximizers.size(); ++i) {
      content += std::string(region_name(sol.region)) + "," +
                 format_g15(sol.maximizers[i].y) + "," +
                 format_g15(rho[i].rho0) + "," + format_g15(rho[i].rho1) +
                 "," + format_g15(p) + "," +
                 format_g15(sol.order_parameter) + "\n";
    }
  } else if (opt.format == "text") {
    content = "point: a=" + format_g15(opt.a) + " mu0=" + format_g15(opt.mu0) +
              " mu1=" + format_g15(opt.mu1) + "\n";
    content += "region: " + std::string(region_name(sol.region)) + "\n";
    content += "order parameter ybar: " + format_g15(sol.order_parameter) + "\n";
    content += "pressure p: " + format_g15(p) + "\n";
    content += "phases (y_star, kind, rho0 = z0, rho1 = z1):\n";
    for (std::size_t i = 0; i < sol.maximizers.size(); ++i) {
      content += "  " + format_g15(sol.maximizers[i].y) + "  " +
                 kind_name(sol.maximizers[i].kind) + "  " +
                 format_g15(rho[i].rho0) + "  " + format_g15(rho[i].rho1) +
                 "\n";
    }
    if (sol.near_degenerate_tie) {
      content += "warning: near-degenerate off-axis tie between maxima\n";
    }
  } else {
    throw UsageError("classify: unsupported format '" + opt.format + "'");
  }

  emit_output(opt.out, content, manifest, timer);
  return 0;
}

int run_phase_diagram(const PhaseDiagramOptions& opt) {
  CommandTimer timer;
  if (!(opt.a > 0.0)) {
    throw UsageError("phase-diagram: requires a > 0");
  }
  if (opt.mu0_steps < 2 || opt.mu1_steps < 2) {
    throw UsageError("phase-diagram: step counts must be >= 2");
  }
  if (!(opt.mu0_min < opt.mu0_max) || !(opt.mu1_min < opt.mu1_max)) {
    throw UsageError("phase-diagram: ranges must be nonempty");
  }
  if (opt.format != "csv" && opt.format != "svg") {
    throw UsageError("phase-diagram: unsupported format '" + opt.format + "'");
  }

  const auto mu0s = lin_space(opt.mu0_min, opt.mu0_max, opt.mu0_steps);
  const auto mu1s = lin_space(opt.mu1_min, opt.mu1_max, opt.mu1_steps);

  // Rows are computed concurrently and written in index order afterwards.
  PhaseDiagramGrid grid{opt.a,        opt.mu0_min, opt.mu0_max, opt.mu1_min,
                        opt.mu1_max,  opt.mu0_steps, opt.mu1_steps, {}};
  std::vector<std::vector<PhaseDiagramCell>> rows(mu0s.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= mu0s.size()) return;
      auto& row = rows[i];
      row.reserve(mu1s.size());
      for (double mu1 : mu1s) {
        const PhasePoint pt{opt.a, mu0s[i], mu1};
        const auto sol = classify(pt);
        const int count = static_cast<int>(stationary_points(pt).size());
        row.push_back({mu0s[i], mu1, sol.region, count});
      }
    }
  };
  const int n_threads = std::min<int>(thread_count(), mu0s.size());
  std::vector<std::thread> pool;
  for (int t = 0; t < n_threads - 1; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& row : rows) {
    grid.cells.insert(grid.cells.end(), row.begin(), row.end());
  }

  Manifest manifest{"phase-diagram",
                    {{"a", opt.a},
                     {"mu0_min", opt.mu0_min}, {"mu0_max", opt.mu0_max},
                     {"mu0_steps", opt.mu0_steps},
                     {"mu1_min", opt.mu1_min}, {"mu1_max", opt.mu1_max},
                     {"mu1_steps", opt.mu1_steps}, {"format", opt.format}},
                    {{"membership_eps", 1e-12}}};

  std::string content;
  if (opt.format == "csv") {
    content = "mu0,mu1,region,root_count\n";
    for (const auto& cell : grid.cells) {
      content += format_g15(cell.mu0) + "," + format_g15(cell.mu1) + "," +
                 region_name(cell.region) + "," +
                 std::to_string(cell.root_count) + "\n";
    }
  } else {
    content = phase_diagram_svg(grid);
  }
  emit_output(opt.out, content, manifest, timer);
  return 0;
}

int run_isotherm(const IsothermOptions& opt) {
  CommandTimer timer;
  if (!(opt.rho_min > 0.0) || !(opt.rho_min < opt.rho_max)) {
    throw UsageError("isotherm: requires 0 < rho-min < rho-max");
  }
  if (opt.points < 2) throw UsageError("isotherm: points must be >= 2");
  if (opt.format != "csv" && opt.format != "svg") {
    throw UsageError("isotherm: unsupported format '" + opt.format + "'");
  }

  const auto grid = lin_space(opt.rho_min, opt.rho_max, opt.points);
  const auto curve = isotherm(opt.a, opt.theta, grid);

  Manifest manifest{"isotherm",
                    {{"a", opt.a}, {"theta", opt.theta},
                     {"rho_min", opt.rho_min}, {"rho_max", opt.rho_max},
                     {"points", opt.points}, {"format", opt.format}},
                    {{"plateau_consistency", 1e-10}}};

  std::string content;
  if (opt.format == "csv") {
    content = "rho,p_hat,branch\n";
    for (const auto& s : curve.samples) {
      const char* branch = s.branch == IsothermBranch::Low       ? "low"
                           : s.branch == IsothermBranch::Plateau ? "plateau"
                                                                 : "high";
      content += format_g15(s.rho) + "," + format_g15(s.p_hat) + "," + branch +
                 "\n";
    }
  } else {
    content = isotherm_svg(curve, opt.a, opt.theta);
  }
  emit_output(opt.out, content, manifest, timer);
  return 0;
}

int run_order_parameter(const OrderParameterOptions& opt) {
  CommandTimer timer;
  if (!(opt.a > 0.0)) throw UsageError("order-parameter: requires a > 0");
  if (opt.points < 2) throw UsageError("order-parameter: points must be >= 2");
  if (!(opt.mu_min < opt.mu_max)) {
    throw UsageError("order-parameter: requires mu-min < mu-max");
  }
  if (opt.format != "csv") {
    throw UsageError("order-parameter: unsupported format '" + opt.format + "'");
  }

  Manifest manifest{"order-parameter",
                    {{"a", opt.a}, {"mu_min", opt.mu_min},
                     {"mu_max", opt.mu_max}, {"points", opt.points},
                     {"format", opt.format}},
                    {{"psi_residual", 1e-12}}};

  std::string content = "mu,ybar\n";
  for (double mu : lin_space(opt.mu_min, opt.mu_max, opt.points)) {
    content += format_g15(mu) + "," + format_g15(order_parameter(opt.a, mu)) +
               "\n";
  }
  emit_output(opt.out, content, manifest, timer);
  return 0;
}

namespace {

struct CheckResult {
  std::string name;
  ordered_json params;
  double residual;
  double tolerance;
  bool pass() const { return residual <= tolerance; }
};

std::vector<CheckResult> suite_identity_4a(const std::vector<double>& vols,
                                           double tol) {
  struct Case { double v, a, theta, mu; };
  std::vector<Case> cases;
  if (vols.empty()) {
    cases = {{2, 1, 1, 0}, {10, 0.5, 3, 1}, {50, 2, 0.5, -1}};
  } else {
    for (double v : vols) cases.push_back({v, 1, 1, 0});
  }
  std::vector<CheckResult> out;
  for (const auto& c : cases) {
    const double r = one_component_identity({c.v}, c.a, c.theta, c.mu);
    out.push_back({"identity-4a",
                   {{"V", c.v}, {"a", c.a}, {"theta", c.theta}, {"mu", c.mu}},
                   r, tol});
  }
  return out;
}

std::vector<CheckResult> suite_identity_20(const std::vector<double>& vols,
                                           double tol) {
  const std::vector<double> vs = vols.empty() ? std::vector<double>{50} : vols;
  const std::pair<double, double> mus[] = {{0, 0}, {1, -1}, {1.5, 1.5}};
  std::vector<CheckResult> out;
  for (double v : vs) {
    for (const auto& [mu0, mu1] : mus) {
      const FiniteVolumeSpec spec{v};
      const double direct = log_xi_two_component(spec, 1.0, mu0, mu1);
      const double quad = laplace_integral(spec, 1.0, mu0, mu1);
      out.push_back({"identity-20",
                     {{"V", v}, {"a", 1.0}, {"mu0", mu0}, {"mu1", mu1}},
                     std::abs(direct - quad), tol});
    }
  }
  return out;
}

std::vector<CheckResult> suite_convergence(const std::vector<double>& vols) {
  std::vector<double> vs = vols.empty()
                               ? std::vector<double>{25, 50, 100, 200}
                               : vols;
  const double omega = u_value(1.0, 0.0);
  const double p_limit = omega * omega + 2.0 * omega;
  std::vector<CheckResult> out;
  double prev = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const double e = std::abs(log_xi_two_component({vs[i]}, 1, 0, 0) - p_limit);
    if (i > 0) {
      out.push_back({"convergence-decrease",
                     {{"V_from", vs[i - 1]}, {"V_to", vs[i]},
                      {"e_from", prev}, {"e_to", e}},
                     e - prev, 0.0});
    }
    prev = e;
  }
  out.push_back({"convergence-anchor", {{"V", vs.back()}, {"e", prev}}, prev,
                 0.02});
  return out;
}

std::vector<CheckResult> suite_moments(const std::vector<double>& vols,
                                       double tol) {
  const std::vector<double> vs = vols.empty() ? std::vector<double>{50, 100}
                                              : vols;
  std::vector<CheckResult> out;
  for (double v : vs) {
    const FiniteVolumeSpec spec{v};
    const auto m = u_v_moments(spec, 1.0, 0.0);
    const double h = 1e-5;
    const double fd_f = (f_v_value(spec, 1, h) - f_v_value(spec, 1, -h)) / (2 * h);
    const double fd_u =
        (u_v_moments(spec, 1, h).u - u_v_moments(spec, 1, -h).u) / (2 * h);
    out.push_back({"moments-u-vs-df", {{"V", v}, {"a", 1.0}, {"x", 0.0}},
                   std::abs(m.u - fd_f) / std::abs(fd_f), tol});
    out.push_back({"moments-du-vs-du", {{"V", v}, {"a", 1.0}, {"x", 0.0}},
                   std::abs(m.du - fd_u) / std::abs(fd_u), tol});
  }
  return out;
}

}  // namespace

int run_oracle_check(const OracleCheckOptions& opt) {
  CommandTimer timer;
  std::vector<CheckResult> checks;
  if (opt.suite == "identity-4a") {
    checks = suite_identity_4a(opt.volumes, opt.tol.value_or(1e-12));
  } else if (opt.suite == "identity-20") {
    checks = suite_identity_20(opt.volumes, opt.tol.value_or(1e-8));
  } else if (opt.suite == "convergence") {
    checks = suite_convergence(opt.volumes);
  } else if (opt.suite == "moments") {
    checks = suite_moments(opt.volumes, opt.tol.value_or(1e-6));
  } else {
    throw UsageError("oracle-check: unknown suite '" + opt.suite +
                     "' (expected identity-4a, identity-20, convergence, moments)");
  }
  if (opt.format != "json") {
    throw UsageError("oracle-check: unsupported format '" + opt.format + "'");
  }

  Manifest manifest{"oracle-check",
                    {{"suite", opt.suite}, {"V", opt.volumes},
                     {"format", opt.format}},
                    {{"tol_override", opt.tol ? ordered_json(*opt.tol)
                                              : ordered_json(nullptr)}}};

  bool all_pass = true;
  ordered_json j;
  j["suite"] = opt.suite;
  j["checks"] = ordered_json::array();
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass();
    j["checks"].push_back({{"name", c.name},
                           {"params", c.params},
                           {"residual", c.residual},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass()}});
  }
  j["manifest"] = manifest_payload(manifest);
  emit_output(opt.out, j.dump(2) + "\n", manifest, timer);
  return all_pass ? 0 : 3;
}

}  // namespace wrcw::tool
