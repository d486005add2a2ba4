#pragma once

#include <string>

#include "tspcn/model.hpp"

namespace tspcn {

struct RenderStyle {
  int canvas_px{800};
  double margin_frac{0.05};
  double circle_stroke_px{1.0};
  double tour_stroke_px{1.5};
  double point_radius_px{3.0};
  double label_px{10.0};
  std::string circle_color{"#4a6fa5"};
  std::string tour_color{"#c0392b"};
  std::string point_color{"#1b1b1b"};
  std::string label_color{"#555555"};
  bool labels{true};

  void validate() const;
};

/// Self-contained SVG 1.1 drawing of the circles, the closed tour and the
/// selected points. Plane +Y points up in the picture.
std::string render_svg(const Instance& instance, const ContinuousSolution& solution,
                       const RenderStyle& style = {});

}  // namespace tspcn
