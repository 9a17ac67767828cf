#include "basinmap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace basinmap {
namespace {

constexpr double kErrorFloor = 1e-12;
constexpr double kAsymptoticCeiling = 1e-2;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Union-find over grid cells for the two-pass component labelling.
struct DisjointSet {
  std::vector<int> parent;

  explicit DisjointSet(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

NoduleReport detect_nodules_grid(int nx, int ny, const std::vector<ConvergenceRecord>& cells,
                                 double x0, double dx, double y0, double dy, int min_cells) {
  auto converged = [&](int i, int j) {
    return cells[static_cast<std::size_t>(j) * nx + i].status == Status::Converged;
  };

  std::vector<int> label(cells.size(), -1);
  DisjointSet ds(cells.size());
  int next = 0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!converged(i, j)) continue;
      const std::size_t idx = static_cast<std::size_t>(j) * nx + i;
      const int left = (i > 0) ? label[idx - 1] : -1;
      const int up = (j > 0 && converged(i, j - 1)) ? label[idx - nx] : -1;
      if (left >= 0 && up >= 0) {
        label[idx] = std::min(left, up);
        ds.unite(left, up);
      } else if (left >= 0 || up >= 0) {
        label[idx] = std::max(left, up);
      } else {
        label[idx] = next++;
      }
    }
  }

  struct Acc {
    long count = 0;
    double sx = 0.0, sy = 0.0;
    int i_min = 1 << 30, i_max = -1, j_min = 1 << 30, j_max = -1;
    bool edge = false;
  };
  std::vector<Acc> acc(next);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t idx = static_cast<std::size_t>(j) * nx + i;
      if (label[idx] < 0) continue;
      Acc& a = acc[ds.find(label[idx])];
      ++a.count;
      a.sx += x0 + (i + 0.5) * dx;
      a.sy += y0 + (j + 0.5) * dy;
      a.i_min = std::min(a.i_min, i);
      a.i_max = std::max(a.i_max, i);
      a.j_min = std::min(a.j_min, j);
      a.j_max = std::max(a.j_max, j);
      if (i == 0 || j == 0 || i == nx - 1 || j == ny - 1) a.edge = true;
    }
  }

  NoduleReport report;
  for (int r = 0; r < next; ++r) {
    if (ds.find(r) != r) continue;
    const Acc& a = acc[r];
    if (a.edge || a.count < min_cells) continue;
    Nodule n;
    n.cell_count = a.count;
    n.centroid_x = a.sx / a.count;
    n.centroid_y = a.sy / a.count;
    n.i_min = a.i_min;
    n.i_max = a.i_max;
    n.j_min = a.j_min;
    n.j_max = a.j_max;
    report.nodules.push_back(n);
  }
  std::sort(report.nodules.begin(), report.nodules.end(),
            [](const Nodule& a, const Nodule& b) { return a.cell_count > b.cell_count; });
  const double cell_area = dx * dy;
  for (const auto& n : report.nodules) report.total_convergent_enclosed_area += n.cell_count * cell_area;
  return report;
}

}  // namespace

OrderEstimate estimate_from_errors(const std::vector<double>& errors) {
  std::vector<double> orders;
  std::vector<std::pair<double, double>> pairs;  // (e_n, e_{n+1}) of usable triples
  for (std::size_t n = 1; n + 1 < errors.size(); ++n) {
    const double prev = errors[n - 1], mid = errors[n], nxt = errors[n + 1];
    if (!(mid > kErrorFloor && mid < kAsymptoticCeiling)) continue;
    if (!(nxt > 0.0 && nxt < mid && mid < prev)) continue;
    orders.push_back(std::log(nxt / mid) / std::log(mid / prev));
    pairs.emplace_back(mid, nxt);
  }
  if (orders.empty())
    throw InsufficientSamples("no usable error triples; start the orbit farther from the root");

  OrderEstimate est;
  est.empirical_order = median(orders);
  est.samples_used = static_cast<int>(orders.size()) + 2;
  const double rounded = std::max(1.0, std::round(est.empirical_order));
  // median of e_{n+1} / e_n^p over pairs safely above round-off
  std::vector<double> constants;
  for (auto [en, en1] : pairs)
    if (en1 > 1e-13) constants.push_back(en1 / std::pow(en, rounded));
  if (constants.empty()) constants.push_back(pairs.back().second / std::pow(pairs.back().first, rounded));
  est.asymptotic_constant = median(constants);
  return est;
}

OrderEstimate estimate_order(const Polynomial& poly, const MapSpec& map, cdouble z0, cdouble root) {
  // refine the reference root so the error floor is limited by the orbit,
  // not the root
  cdouble alpha = root;
  for (int it = 0; it < 50 && std::abs(poly(alpha)) >= 1e-14; ++it) {
    auto d = poly.eval_derivatives(alpha, 1);
    if (d[1] == cdouble{0.0, 0.0}) break;
    alpha -= d[0] / d[1];
  }
  if (std::abs(poly(alpha)) >= 1e-13) throw OrbitDiverged("reference root failed to refine");

  const int cap = 200;
  std::vector<double> errors;
  cdouble z = z0;
  bool reached = false;
  for (int n = 0; n <= cap; ++n) {
    errors.push_back(std::abs(z - alpha));
    if (std::abs(poly(z)) < 1e-13) {
      reached = true;
      break;
    }
    StepResult s = map.step(poly, z);
    if (!s.ok()) throw OrbitDiverged("orbit hit a singular step: " + to_string(s.error));
    z = s.z;
  }
  if (!reached) throw OrbitDiverged("orbit did not converge within the iteration cap");

  OrderEstimate est = estimate_from_errors(errors);

  double a0 = map.a0, a1 = map.a1;
  bool modified_family = map.kind == MapSpec::Kind::Modified;
  if (map.kind == MapSpec::Kind::Generalized && map.exponents.size() == 2) {
    modified_family = true;
    a0 = map.exponents[0];
    a1 = map.exponents[1];
  }
  if (map.kind == MapSpec::Kind::Gerlach) {
    est.predicted_order = map.gerlach_n + 1;
  } else if (modified_family) {
    if (a0 != 1.0) {
      est.predicted_order = 1.0;
      est.predicted_constant = std::abs(1.0 - 1.0 / a0);
    } else if (a1 != -0.5) {
      auto d = poly.eval_derivatives(alpha, 2);
      est.predicted_order = 2.0;
      est.predicted_constant = std::abs((0.5 + a1) * d[2] / d[1]);
    } else {
      est.predicted_order = 3.0;
    }
  } else {
    est.predicted_order = 2.0;  // generalized with three or more factors
  }
  return est;
}

double non_convergent_fraction(const BasinRaster& raster) {
  const StatusCounts c = count_statuses(raster.cells);
  return static_cast<double>(c.non_convergent + c.singular) / static_cast<double>(c.total());
}

double non_convergent_fraction(const SweepRaster& raster) {
  const StatusCounts c = count_statuses(raster.cells);
  return static_cast<double>(c.non_convergent + c.singular) / static_cast<double>(c.total());
}

NoduleReport detect_nodules(const BasinRaster& raster, int min_cells) {
  const DomainRect& d = raster.domain;
  return detect_nodules_grid(d.nx, d.ny, raster.cells, d.x_min, (d.x_max - d.x_min) / d.nx,
                             d.y_min, (d.y_max - d.y_min) / d.ny, min_cells);
}

NoduleReport detect_nodules(const SweepRaster& raster, int min_cells) {
  return detect_nodules_grid(raster.x_range.n, raster.a1_range.n, raster.cells, raster.x_range.lo,
                             raster.x_range.step(), raster.a1_range.lo, raster.a1_range.step(),
                             min_cells);
}

std::vector<NoduleAreaPoint> nodule_growth_curve(const Polynomial& poly, double a0,
                                                 const std::vector<double>& a1_values,
                                                 const DomainRect& domain,
                                                 const IterationParams& params, int min_cells,
                                                 int workers) {
  std::vector<NoduleAreaPoint> curve;
  curve.reserve(a1_values.size());
  for (double a1 : a1_values) {
    BasinRaster r = render_basin(poly, params, MapSpec::modified(a0, a1), domain, workers);
    NoduleReport rep = detect_nodules(r, min_cells);
    curve.push_back({a1, rep.total_convergent_enclosed_area, static_cast<int>(rep.nodules.size())});
  }
  return curve;
}

std::vector<std::pair<int, int>> extract_boundary(const BasinRaster& raster) {
  const int nx = raster.domain.nx, ny = raster.domain.ny;
  std::vector<std::pair<int, int>> out;
  auto differs = [&](const ConvergenceRecord& a, const ConvergenceRecord& b) {
    return a.status != b.status || a.root_index != b.root_index;
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const ConvergenceRecord& c = raster.at(i, j);
      const bool boundary = (i > 0 && differs(c, raster.at(i - 1, j))) ||
                            (i + 1 < nx && differs(c, raster.at(i + 1, j))) ||
                            (j > 0 && differs(c, raster.at(i, j - 1))) ||
                            (j + 1 < ny && differs(c, raster.at(i, j + 1)));
      if (boundary) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<RepulsiveScanPoint> repulsive_zero_scan(const Polynomial& poly, double a0,
                                                    const std::vector<double>& a1_values,
                                                    double probe_radius) {
  constexpr int kProbes = 16;
  constexpr int kSteps = 5;
  std::vector<RepulsiveScanPoint> out;
  out.reserve(a1_values.size());
  for (double a1 : a1_values) {
    bool attracted = false;
    for (int k = 0; k < kProbes && !attracted; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / kProbes;
      cdouble z = probe_radius * cdouble{std::cos(phi), std::sin(phi)};
      const double r0 = std::abs(z);
      double r_prev = r0;
      bool monotone = true;
      for (int s = 0; s < kSteps && monotone; ++s) {
        StepResult st = modified_step(poly, z, a0, a1);
        if (!st.ok()) {
          monotone = false;
          break;
        }
        z = st.z;
        const double r = std::abs(z);
        if (r > r_prev) monotone = false;
        r_prev = r;
      }
      if (monotone && r_prev <= 0.5 * r0) attracted = true;
    }
    out.push_back({a1, attracted});
  }
  return out;
}

std::pair<double, double> critical_a1_bracket(const Polynomial& poly, double a0, double x_lo,
                                              double x_hi, int nx, const IterationParams& params,
                                              double a1_lo, double a1_hi, double width_tol) {
  const RootSet roots = reference_roots(poly);
  auto has_non_convergent = [&](double a1) {
    const MapSpec map = MapSpec::modified(a0, a1);
    for (int i = 0; i < nx; ++i) {
      const double x = x_lo + ((i + 0.5) * (x_hi - x_lo)) / nx;
      const ConvergenceRecord rec = iterate(poly, {x, 0.0}, params, roots, map);
      if (rec.status != Status::Converged) return true;
    }
    return false;
  };
  if (!has_non_convergent(a1_lo) || has_non_convergent(a1_hi))
    throw std::invalid_argument("bracket endpoints do not straddle the transition");
  double lo = a1_lo, hi = a1_hi;
  while (hi - lo > width_tol) {
    const double mid = 0.5 * (lo + hi);
    if (has_non_convergent(mid))
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

}  // namespace basinmap
