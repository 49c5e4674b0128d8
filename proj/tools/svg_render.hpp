#pragma once

#include <string>
#include <vector>

#include "wrcw/eos.hpp"
#include "wrcw/phase.hpp"

namespace wrcw::tool {

struct PhaseDiagramCell {
  double mu0;
  double mu1;
  Region region;
  int root_count;
};

struct PhaseDiagramGrid {
  double a;
  double mu0_min, mu0_max;
  double mu1_min, mu1_max;
  int mu0_steps, mu1_steps;
  std::vector<PhaseDiagramCell> cells;  // mu0-major, mu1 ascending inside
};

// Self-contained SVG: grid cells shaded by root count (the three-solution
// area is gray), the analytic spinodal branches, the coexistence half-line
// and the critical point.
std::string phase_diagram_svg(const PhaseDiagramGrid& grid);

// Self-contained SVG of an isotherm, plateau highlighted.
std::string isotherm_svg(const IsothermCurve& curve, double a, double theta);

}  // namespace wrcw::tool
