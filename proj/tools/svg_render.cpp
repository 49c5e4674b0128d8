#include "svg_render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace wrcw::tool {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Maps data coordinates to a fixed pixel frame and collects SVG elements.
class Canvas {
 public:
  Canvas(double xmin, double xmax, double ymin, double ymax)
      : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax) {
    body_ += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" +
             num(kHeight) + "\" fill=\"white\"/>\n";
  }

  double px(double x) const {
    return kLeft + (x - xmin_) / (xmax_ - xmin_) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom -
           (y - ymin_) / (ymax_ - ymin_) * (kHeight - kTop - kBottom);
  }

  void rect(double x0, double y0, double x1, double y1,
            const std::string& fill) {
    body_ += "<rect x=\"" + num(std::min(px(x0), px(x1))) + "\" y=\"" +
             num(std::min(py(y0), py(y1))) + "\" width=\"" +
             num(std::abs(px(x1) - px(x0))) + "\" height=\"" +
             num(std::abs(py(y1) - py(y0))) + "\" fill=\"" + fill + "\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& stroke, double width,
                const std::string& dash = "") {
    if (pts.size() < 2) return;
    std::string d = "<polyline fill=\"none\" stroke=\"" + stroke +
                    "\" stroke-width=\"" + num(width) + "\"";
    if (!dash.empty()) d += " stroke-dasharray=\"" + dash + "\"";
    d += " points=\"";
    for (const auto& [x, y] : pts) d += num(px(x)) + "," + num(py(y)) + " ";
    d += "\"/>\n";
    body_ += d;
  }

  void circle(double x, double y, double r, const std::string& fill) {
    body_ += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) +
             "\" r=\"" + num(r) + "\" fill=\"" + fill + "\"/>\n";
  }

  void text(double xpix, double ypix, const std::string& s, int size = 13,
            const std::string& anchor = "start") {
    body_ += "<text x=\"" + num(xpix) + "\" y=\"" + num(ypix) +
             "\" font-family=\"sans-serif\" font-size=\"" +
             std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" + s +
             "</text>\n";
  }

  void axes(const std::string& xlabel, const std::string& ylabel) {
    const double x0 = kLeft, x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom, y1 = kTop;
    body_ += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" +
             num(x1) + "\" y2=\"" + num(y0) + "\" stroke=\"black\"/>\n";
    body_ += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" +
             num(x0) + "\" y2=\"" + num(y1) + "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
      const double fx = xmin_ + (xmax_ - xmin_) * i / 5.0;
      const double fy = ymin_ + (ymax_ - ymin_) * i / 5.0;
      body_ += "<line x1=\"" + num(px(fx)) + "\" y1=\"" + num(y0) +
               "\" x2=\"" + num(px(fx)) + "\" y2=\"" + num(y0 + 5) +
               "\" stroke=\"black\"/>\n";
      text(px(fx), y0 + 20, num(fx), 12, "middle");
      body_ += "<line x1=\"" + num(x0 - 5) + "\" y1=\"" + num(py(fy)) +
               "\" x2=\"" + num(x0) + "\" y2=\"" + num(py(fy)) +
               "\" stroke=\"black\"/>\n";
      text(x0 - 8, py(fy) + 4, num(fy), 12, "end");
    }
    text(0.5 * (x0 + x1), kHeight - 8, xlabel, 14, "middle");
    text(16, 0.5 * (y0 + y1), ylabel, 14, "middle");
  }

  std::string finish() const {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           num(kWidth) + "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " +
           num(kWidth) + " " + num(kHeight) + "\">\n" + body_ + "</svg>\n";
  }

  static constexpr double kWidth = 760, kHeight = 640;
  static constexpr double kLeft = 70, kRight = 170, kTop = 30, kBottom = 50;

 private:
  double xmin_, xmax_, ymin_, ymax_;
  std::string body_;
};

}  // namespace

std::string phase_diagram_svg(const PhaseDiagramGrid& g) {
  Canvas c(g.mu0_min, g.mu0_max, g.mu1_min, g.mu1_max);

  const double dx = (g.mu0_max - g.mu0_min) / (g.mu0_steps - 1);
  const double dy = (g.mu1_max - g.mu1_min) / (g.mu1_steps - 1);
  for (const auto& cell : g.cells) {
    std::string fill = "#ffffff";
    if (cell.root_count == 3) fill = "#b4b4b4";
    if (cell.root_count == 2) fill = "#d9d9d9";
    if (fill != "#ffffff") {
      c.rect(cell.mu0 - 0.5 * dx, cell.mu1 - 0.5 * dy, cell.mu0 + 0.5 * dx,
             cell.mu1 + 0.5 * dy, fill);
    }
  }

  // analytic spinodal branches: mu0 = xi - ln a -+ eta, mu1 = xi - ln a +- eta
  const double la = std::log(g.a);
  const double xi_max = 0.5 * (g.mu0_max + g.mu1_max) + la;
  if (xi_max > 1.0) {
    std::vector<std::pair<double, double>> upper, lower;
    for (int i = 0; i <= 400; ++i) {
      const double xi = 1.0 + (xi_max - 1.0) * i / 400.0;
      const double eta = spinodal_eta(xi);
      upper.emplace_back(xi - la - eta, xi - la + eta);
      lower.emplace_back(xi - la + eta, xi - la - eta);
    }
    c.polyline(upper, "#1f4e9c", 2.0);
    c.polyline(lower, "#1f4e9c", 2.0);
  }

  // coexistence half-line and critical point
  const double muc = 1.0 - la;
  const double mu_hi = std::min(g.mu0_max, g.mu1_max);
  if (mu_hi > muc) {
    c.polyline({{muc, muc}, {mu_hi, mu_hi}}, "#c01616", 2.5, "7,5");
  }
  c.circle(muc, muc, 5.0, "#c01616");

  c.axes("mu0", "mu1");
  const double lx = Canvas::kWidth - Canvas::kRight + 14;
  c.text(lx, 60, "a = " + std::to_string(g.a).substr(0, 6), 14);
  c.text(lx, 90, "gray: 3 solutions");
  c.text(lx, 110, "light: 2 (boundary)");
  c.text(lx, 130, "white: 1 solution");
  c.text(lx, 160, "blue: spinodal");
  c.text(lx, 180, "red: coexistence M");
  c.text(lx, 200, "dot: critical point");
  return c.finish();
}

std::string isotherm_svg(const IsothermCurve& curve, double a, double theta) {
  double rho_min = 1e300, rho_max = -1e300, p_min = 1e300, p_max = -1e300;
  for (const auto& s : curve.samples) {
    rho_min = std::min(rho_min, s.rho);
    rho_max = std::max(rho_max, s.rho);
    p_min = std::min(p_min, s.p_hat);
    p_max = std::max(p_max, s.p_hat);
  }
  const double pad = 0.05 * (p_max - p_min + 1e-12);
  Canvas c(rho_min, rho_max, p_min - pad, p_max + pad);

  std::vector<std::pair<double, double>> pts;
  for (const auto& s : curve.samples) pts.emplace_back(s.rho, s.p_hat);
  c.polyline(pts, "#1f4e9c", 2.0);

  if (curve.plateau) {
    c.polyline({{curve.plateau->rho_minus, curve.plateau->p_star},
                {curve.plateau->rho_plus, curve.plateau->p_star}},
               "#c01616", 3.5);
    c.circle(curve.plateau->rho_minus, curve.plateau->p_star, 4.0, "#c01616");
    c.circle(curve.plateau->rho_plus, curve.plateau->p_star, 4.0, "#c01616");
  }

  c.axes("rho", "p_hat");
  const double lx = Canvas::kWidth - Canvas::kRight + 14;
  c.text(lx, 60, "a = " + std::to_string(a).substr(0, 6), 14);
  c.text(lx, 80, "theta = " + std::to_string(theta).substr(0, 8), 14);
  if (curve.plateau) c.text(lx, 110, "red: plateau p*");
  return c.finish();
}

}  // namespace wrcw::tool
