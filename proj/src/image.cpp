#include "basinmap/image.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace basinmap {
namespace {

constexpr std::array<std::uint8_t, 3> kRed{230, 30, 30};

std::uint8_t quantize(double v) {
  v = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(v * 255.0));
}

std::array<std::uint8_t, 3> cell_color(const ConvergenceRecord& rec, int n_roots, int max_iter) {
  switch (rec.status) {
    case Status::NonConvergent:
    case Status::Singular: return kRed;
    case Status::Converged: break;
  }
  const double t = max_iter > 0 ? static_cast<double>(rec.iterations) / max_iter : 0.0;
  const double lightness = 0.80 - 0.55 * t;  // fast orbits bright, slow ones dark
  if (rec.root_index < 0) {
    const std::uint8_t g = quantize(lightness);
    return {g, g, g};
  }
  return hsl_to_rgb(root_hue_degrees(rec.root_index, n_roots), 0.85, lightness);
}

template <typename Raster>
ImageBuffer colorize_grid(const Raster& raster, int nx, int ny, int max_iter) {
  ImageBuffer img;
  img.width = nx;
  img.height = ny;
  img.rgb.resize(3 * static_cast<std::size_t>(nx) * ny);
  const int n_roots = static_cast<int>(raster.roots.roots.size());
  for (int j = 0; j < ny; ++j) {
    const int row = ny - 1 - j;  // top row = max y / max a1
    for (int i = 0; i < nx; ++i) {
      const auto c = cell_color(raster.at(i, j), n_roots, max_iter);
      const std::size_t o = 3 * (static_cast<std::size_t>(row) * nx + i);
      img.rgb[o] = c[0];
      img.rgb[o + 1] = c[1];
      img.rgb[o + 2] = c[2];
    }
  }
  return img;
}

}  // namespace

double root_hue_degrees(int root_index, int n_roots) {
  if (n_roots <= 0) return 30.0;
  return 30.0 + root_index * 300.0 / n_roots;
}

std::array<std::uint8_t, 3> hsl_to_rgb(double h_deg, double s, double l) {
  const double c = (1.0 - std::fabs(2.0 * l - 1.0)) * s;
  const double hp = std::fmod(std::fmod(h_deg, 360.0) + 360.0, 360.0) / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1) { r = c; g = x; }
  else if (hp < 2) { r = x; g = c; }
  else if (hp < 3) { g = c; b = x; }
  else if (hp < 4) { g = x; b = c; }
  else if (hp < 5) { r = x; b = c; }
  else { r = c; b = x; }
  const double m = l - c / 2.0;
  return {quantize(r + m), quantize(g + m), quantize(b + m)};
}

ImageBuffer colorize(const BasinRaster& raster, const PaletteSpec&) {
  return colorize_grid(raster, raster.domain.nx, raster.domain.ny, raster.params.max_iter);
}

ImageBuffer colorize(const SweepRaster& raster, const PaletteSpec&) {
  return colorize_grid(raster, raster.x_range.n, raster.a1_range.n, raster.params.max_iter);
}

void write_ppm(const ImageBuffer& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "P6\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
  if (!out) throw std::runtime_error("short write to " + path);
}

}  // namespace basinmap
