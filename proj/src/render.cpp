#include "tspcn/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace tspcn {

namespace {

std::string fixed(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void RenderStyle::validate() const {
  if (canvas_px <= 0) throw std::invalid_argument("canvas_px must be > 0");
  if (!(margin_frac >= 0 && margin_frac < 0.5)) {
    throw std::invalid_argument("margin_frac must lie in [0, 0.5)");
  }
}

std::string render_svg(const Instance& instance, const ContinuousSolution& solution,
                       const RenderStyle& style) {
  style.validate();
  if (instance.circles.empty() || solution.points.size() != instance.circles.size()) {
    throw std::invalid_argument("render_svg: solution does not match the instance");
  }

  double xmin = instance.circles[0].center_x, xmax = xmin;
  double ymin = instance.circles[0].center_y, ymax = ymin;
  for (const Circle& c : instance.circles) {
    xmin = std::min(xmin, c.center_x - c.radius);
    xmax = std::max(xmax, c.center_x + c.radius);
    ymin = std::min(ymin, c.center_y - c.radius);
    ymax = std::max(ymax, c.center_y + c.radius);
  }
  for (const Point& p : solution.points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double size = style.canvas_px;
  const double inner = size * (1 - 2 * style.margin_frac);
  const double scale = inner / span;
  const double ox = size * style.margin_frac + (inner - (xmax - xmin) * scale) / 2;
  const double oy = size * style.margin_frac + (inner - (ymax - ymin) * scale) / 2;
  auto sx = [&](double x) { return ox + (x - xmin) * scale; };
  auto sy = [&](double y) { return oy + (ymax - y) * scale; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << style.canvas_px
      << "\" height=\"" << style.canvas_px << "\" viewBox=\"0 0 " << style.canvas_px << " "
      << style.canvas_px << "\">\n";
  if (instance.name) out << "  <title>" << escape_xml(*instance.name) << "</title>\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  out << "  <g id=\"circles\" fill=\"none\" stroke=\"" << style.circle_color
      << "\" stroke-width=\"" << fixed(style.circle_stroke_px) << "\">\n";
  for (const Circle& c : instance.circles) {
    out << "    <circle class=\"region\" cx=\"" << fixed(sx(c.center_x)) << "\" cy=\""
        << fixed(sy(c.center_y)) << "\" r=\"" << fixed(c.radius * scale) << "\"/>\n";
  }
  out << "  </g>\n";

  out << "  <path id=\"tour\" fill=\"none\" stroke=\"" << style.tour_color << "\" stroke-width=\""
      << fixed(style.tour_stroke_px) << "\" stroke-linejoin=\"round\" d=\"";
  for (std::size_t t = 0; t < solution.order.size(); ++t) {
    const Point& p = solution.points[static_cast<std::size_t>(solution.order[t])];
    out << (t == 0 ? "M" : " L") << fixed(sx(p.x)) << "," << fixed(sy(p.y));
  }
  out << " Z\"/>\n";

  out << "  <g id=\"points\" fill=\"" << style.point_color << "\">\n";
  for (const Point& p : solution.points) {
    out << "    <circle class=\"point\" cx=\"" << fixed(sx(p.x)) << "\" cy=\"" << fixed(sy(p.y))
        << "\" r=\"" << fixed(style.point_radius_px) << "\"/>\n";
  }
  out << "  </g>\n";

  if (style.labels) {
    out << "  <g id=\"labels\" fill=\"" << style.label_color << "\" font-family=\"sans-serif\" "
        << "font-size=\"" << fixed(style.label_px) << "\" text-anchor=\"middle\">\n";
    for (std::size_t i = 0; i < instance.circles.size(); ++i) {
      const Circle& c = instance.circles[i];
      out << "    <text x=\"" << fixed(sx(c.center_x)) << "\" y=\"" << fixed(sy(c.center_y))
          << "\">" << i << "</text>\n";
    }
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace tspcn
