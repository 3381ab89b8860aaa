#pragma once

// Escape-time pictures of the Multibrot set, as CSV or SVG text.

#include <string>
#include <vector>

#include "dynatomic/poly_dynamics.hpp"

namespace dynatomic::cli {

struct EscapeGrid {
  int degree = 2;
  int width = 0;
  int height = 0;
  int iterations = 0;
  cplx center;
  /// Half-width of the window in the c-plane.
  double extent = 2;
  /// Row-major, top row first; iterations for points that never escape.
  std::vector<int> counts;

  cplx pixel(int col, int row) const;
};

/// Orbit of 0 under z^d + c per pixel centre, escape radius 1 + max(2, |c|).
EscapeGrid multibrot_escape(int degree, cplx center, double extent, int width, int height, int iterations);

/// Columns re, im, iterations.
std::string escape_csv(const EscapeGrid& g);

/// Black for bounded points, grey levels for escape times; runs of equal
/// shade in a row merge into one rectangle.
std::string escape_svg(const EscapeGrid& g);

}  // namespace dynatomic::cli
