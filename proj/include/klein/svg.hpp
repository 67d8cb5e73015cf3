#pragma once

// SVG 1.1 figures of real arrangements: dots for points, lines clipped to
// the viewport, conics as 128-sample polylines.

#include <string>

#include "klein/models.hpp"

namespace klein {

struct Viewport {
  double xmin = -3.2, xmax = 3.2, ymin = -3.2, ymax = 3.2;
  int width = 640;  // pixels; height follows the aspect ratio
};

/// Segment of the line ax + by + c = 0 inside the viewport, if any.
std::optional<std::array<double, 4>> clip_line(double a, double b, double c, const Viewport& v);

/// Affine samples of a real conic: one closed polyline for an ellipse, one
/// per branch otherwise, 128 samples in total. Empty for conics without
/// real affine points.
std::vector<std::vector<std::array<double, 2>>> sample_conic(const std::array<double, 6>& k, const Viewport& v);

/// Deterministic SVG text. Throws std::invalid_argument when a coordinate
/// is not real.
std::string render_svg(const DerivedConfig& cfg, const Viewport& v = {});

/// Writes render_svg to `path`; returns the byte count.
std::size_t export_svg(const DerivedConfig& cfg, const std::string& path, const Viewport& v = {});

}  // namespace klein
