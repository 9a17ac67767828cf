#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "basinmap/raster.hpp"

namespace basinmap {

struct PaletteSpec {
  std::string id = "default";
};

struct ImageBuffer {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, top row first

  std::array<std::uint8_t, 3> pixel(int x, int y) const {
    const std::size_t o = 3 * (static_cast<std::size_t>(y) * width + x);
    return {rgb[o], rgb[o + 1], rgb[o + 2]};
  }
};

// Non-convergent and singular cells render red; converged cells get a hue per
// root index with lightness mapped linearly from the iteration count;
// converged-unclassified cells render gray.  Top image row corresponds to the
// maximum imaginary part (or maximum a1).
ImageBuffer colorize(const BasinRaster& raster, const PaletteSpec& palette = {});
ImageBuffer colorize(const SweepRaster& raster, const PaletteSpec& palette = {});

// hue in degrees for root k of n_roots; red (hue 0) is reserved
double root_hue_degrees(int root_index, int n_roots);

std::array<std::uint8_t, 3> hsl_to_rgb(double h_deg, double s, double l);

void write_ppm(const ImageBuffer& img, const std::string& path);

}  // namespace basinmap
