#include "render.hpp"

#include <cmath>
#include <cstdio>

#include "dynatomic/parallel.hpp"

namespace dynatomic::cli {

namespace {

constexpr int shade_levels = 32;

int shade(const EscapeGrid& g, int count) {
  if (count >= g.iterations) return 0;
  const double t = std::sqrt(static_cast<double>(count) / g.iterations);
  return 255 - static_cast<int>(std::lround(t * (shade_levels - 1))) * 255 / (shade_levels - 1) * 3 / 4;
}

}  // namespace

cplx EscapeGrid::pixel(int col, int row) const {
  const double step = 2 * extent / width;
  // Offsets are exact multiples of step/2, so mirrored pixels are exact conjugates.
  return center + cplx(step * (col - (width - 1) / 2.0), step * ((height - 1) / 2.0 - row));
}

EscapeGrid multibrot_escape(int degree, cplx center, double extent, int width, int height, int iterations) {
  EscapeGrid g;
  g.degree = degree;
  g.width = width;
  g.height = height;
  g.iterations = iterations;
  g.center = center;
  g.extent = extent;
  g.counts.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), iterations);
  parallel_for(static_cast<std::size_t>(height), [&](std::size_t row) {
    for (int col = 0; col < width; ++col) {
      const cplx c = g.pixel(col, static_cast<int>(row));
      const double escape = 1 + std::max(2.0, std::abs(c));
      cplx z = 0;
      for (int k = 0; k < iterations; ++k) {
        z = ipow(z, degree) + c;
        if (std::abs(z) > escape) {
          g.counts[row * static_cast<std::size_t>(width) + static_cast<std::size_t>(col)] = k;
          break;
        }
      }
    }
  });
  return g;
}

std::string escape_csv(const EscapeGrid& g) {
  std::string out = "re,im,iterations\n";
  char buf[96];
  for (int row = 0; row < g.height; ++row)
    for (int col = 0; col < g.width; ++col) {
      const cplx c = g.pixel(col, row);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d\n", c.real(), c.imag(),
                    g.counts[static_cast<std::size_t>(row) * static_cast<std::size_t>(g.width) + static_cast<std::size_t>(col)]);
      out += buf;
    }
  return out;
}

std::string escape_svg(const EscapeGrid& g) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\" "
                "shape-rendering=\"crispEdges\">\n<rect width=\"%d\" height=\"%d\" fill=\"#ffffff\"/>\n",
                g.width, g.height, g.width, g.height, g.width, g.height);
  std::string out = buf;
  for (int row = 0; row < g.height; ++row) {
    const int* line = &g.counts[static_cast<std::size_t>(row) * static_cast<std::size_t>(g.width)];
    int start = 0;
    while (start < g.width) {
      const int s = shade(g, line[start]);
      int end = start + 1;
      while (end < g.width && shade(g, line[end]) == s) ++end;
      if (s != 255) {
        std::snprintf(buf, sizeof buf, "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"1\" fill=\"#%02x%02x%02x\"/>\n",
                      start, row, end - start, s, s, s);
        out += buf;
      }
      start = end;
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace dynatomic::cli
