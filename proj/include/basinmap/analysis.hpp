#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "basinmap/raster.hpp"

namespace basinmap {

class OrbitDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientSamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OrderEstimate {
  double empirical_order = 0.0;
  double asymptotic_constant = 0.0;  // modulus of e_{n+1} / e_n^round(order)
  int samples_used = 0;
  double predicted_order = 0.0;
  std::optional<double> predicted_constant;
};

// Order and constant recovered from a positive decreasing error sequence.
// Triples are taken where the middle error lies in (1e-12, 1e-2).
OrderEstimate estimate_from_errors(const std::vector<double>& errors);

// Runs the orbit from z0 with a tight tolerance and fits the convergence
// order of the errors |z_n - root| against the root refined to residual
// below 1e-14.  Throws OrbitDiverged / InsufficientSamples.
OrderEstimate estimate_order(const Polynomial& poly, const MapSpec& map, cdouble z0, cdouble root);

double non_convergent_fraction(const BasinRaster& raster);
double non_convergent_fraction(const SweepRaster& raster);

struct Nodule {
  long cell_count = 0;
  double centroid_x = 0.0;  // Re(z) for basins, x for sweeps
  double centroid_y = 0.0;  // Im(z) for basins, a1 for sweeps
  int i_min = 0, i_max = 0, j_min = 0, j_max = 0;
  bool touches_domain_edge = false;  // always false for listed nodules
};

struct NoduleReport {
  std::vector<Nodule> nodules;  // sorted by cell_count descending
  double total_convergent_enclosed_area = 0.0;
};

// A nodule is a maximal 4-connected component of Converged cells that does
// not touch the domain edge (its contour then consists of non-convergent
// cells) and has at least min_cells cells.
NoduleReport detect_nodules(const BasinRaster& raster, int min_cells = 4);
NoduleReport detect_nodules(const SweepRaster& raster, int min_cells = 4);

struct NoduleAreaPoint {
  double a1 = 0.0;
  double total_area = 0.0;
  int nodule_count = 0;
};

std::vector<NoduleAreaPoint> nodule_growth_curve(const Polynomial& poly, double a0,
                                                 const std::vector<double>& a1_values,
                                                 const DomainRect& domain,
                                                 const IterationParams& params, int min_cells = 4,
                                                 int workers = 0);

// Cells having a 4-neighbor with a different status or root index.
std::vector<std::pair<int, int>> extract_boundary(const BasinRaster& raster);

struct RepulsiveScanPoint {
  double a1 = 0.0;
  bool converges_to_origin = false;
};

// Probes a ring of 16 start points at |z| = probe_radius around the origin;
// reports whether any orbit approaches 0 monotonically over its first steps.
std::vector<RepulsiveScanPoint> repulsive_zero_scan(const Polynomial& poly, double a0,
                                                    const std::vector<double>& a1_values,
                                                    double probe_radius);

// Bisects a1 between hi (no non-convergent cells on the real segment
// x in [x_lo, x_hi]) and lo (at least one) until the bracket width drops
// below width_tol.  Returns {lo, hi}.
std::pair<double, double> critical_a1_bracket(const Polynomial& poly, double a0, double x_lo,
                                              double x_hi, int nx, const IterationParams& params,
                                              double a1_lo = -1.5, double a1_hi = 0.0,
                                              double width_tol = 1e-2);

}  // namespace basinmap
