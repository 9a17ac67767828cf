#pragma once

#include <vector>

#include "basinmap/solver.hpp"

namespace basinmap {

// Complex rectangle sampled at pixel centers.
struct DomainRect {
  double x_min = -2.0, x_max = 2.0;
  double y_min = -2.0, y_max = 2.0;
  int nx = 1001, ny = 1001;

  bool valid() const { return x_min < x_max && y_min < y_max && nx >= 2 && ny >= 2; }

  cdouble cell_center(int i, int j) const {
    return {x_min + ((i + 0.5) * (x_max - x_min)) / nx,
            y_min + ((j + 0.5) * (y_max - y_min)) / ny};
  }
  double cell_area() const { return (x_max - x_min) / nx * ((y_max - y_min) / ny); }
};

struct BasinRaster {
  DomainRect domain;
  IterationParams params;
  MapSpec map;
  RootSet roots;
  std::vector<ConvergenceRecord> cells;  // row-major, index j * nx + i, j = 0 at y_min

  const ConvergenceRecord& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * domain.nx + i]; }
};

struct AxisRange {
  double lo = 0.0, hi = 1.0;
  int n = 2;

  double sample(int i) const { return lo + ((i + 0.5) * (hi - lo)) / n; }
  double step() const { return (hi - lo) / n; }
};

// Orbits started on the real axis, one row per a1 value.
struct SweepRaster {
  AxisRange x_range;
  AxisRange a1_range;
  double a0 = 1.0;
  IterationParams params;
  RootSet roots;
  std::vector<ConvergenceRecord> cells;  // row-major, index k * nx + i, k = 0 at a1_range.lo

  const ConvergenceRecord& at(int i, int k) const { return cells[static_cast<std::size_t>(k) * x_range.n + i]; }
};

// workers <= 0 selects hardware concurrency.  Output is independent of the
// worker count: every cell is a pure function of its start point.
BasinRaster render_basin(const Polynomial& poly, const IterationParams& params, const MapSpec& map,
                         const DomainRect& domain, int workers = 0);

SweepRaster render_sweep(const Polynomial& poly, double a0, const AxisRange& x_range,
                         const AxisRange& a1_range, const IterationParams& params, int workers = 0);

struct StatusCounts {
  long converged = 0;
  long converged_unclassified = 0;
  long non_convergent = 0;
  long singular = 0;

  long total() const { return converged + converged_unclassified + non_convergent + singular; }
};

StatusCounts count_statuses(const std::vector<ConvergenceRecord>& cells);

}  // namespace basinmap
