#include "basinmap/raster.hpp"

#include <algorithm>
#include <thread>

namespace basinmap {
namespace {

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Rows are split into contiguous bands; each band writes disjoint cells.
template <typename RowFn>
void parallel_rows(int n_rows, int workers, RowFn fn) {
  workers = std::min(resolve_workers(workers), n_rows);
  if (workers <= 1) {
    for (int j = 0; j < n_rows; ++j) fn(j);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int band = (n_rows + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int begin = w * band;
    const int end = std::min(n_rows, begin + band);
    if (begin >= end) break;
    pool.emplace_back([=, &fn] {
      for (int j = begin; j < end; ++j) fn(j);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

BasinRaster render_basin(const Polynomial& poly, const IterationParams& params, const MapSpec& map,
                         const DomainRect& domain, int workers) {
  if (!domain.valid()) throw std::invalid_argument("invalid domain rectangle");
  if (!params.valid()) throw std::invalid_argument("invalid iteration params");
  BasinRaster r;
  r.domain = domain;
  r.params = params;
  r.map = map;
  r.roots = reference_roots(poly);
  r.cells.resize(static_cast<std::size_t>(domain.nx) * domain.ny);
  parallel_rows(domain.ny, workers, [&](int j) {
    for (int i = 0; i < domain.nx; ++i)
      r.cells[static_cast<std::size_t>(j) * domain.nx + i] =
          iterate(poly, domain.cell_center(i, j), params, r.roots, map);
  });
  return r;
}

SweepRaster render_sweep(const Polynomial& poly, double a0, const AxisRange& x_range,
                         const AxisRange& a1_range, const IterationParams& params, int workers) {
  if (x_range.lo >= x_range.hi || a1_range.lo >= a1_range.hi || x_range.n < 2 || a1_range.n < 2)
    throw std::invalid_argument("invalid sweep ranges");
  if (!params.valid()) throw std::invalid_argument("invalid iteration params");
  SweepRaster r;
  r.x_range = x_range;
  r.a1_range = a1_range;
  r.a0 = a0;
  r.params = params;
  r.roots = reference_roots(poly);
  r.cells.resize(static_cast<std::size_t>(x_range.n) * a1_range.n);
  parallel_rows(a1_range.n, workers, [&](int k) {
    const MapSpec map = MapSpec::modified(a0, a1_range.sample(k));
    for (int i = 0; i < x_range.n; ++i)
      r.cells[static_cast<std::size_t>(k) * x_range.n + i] =
          iterate(poly, cdouble{x_range.sample(i), 0.0}, params, r.roots, map);
  });
  return r;
}

StatusCounts count_statuses(const std::vector<ConvergenceRecord>& cells) {
  StatusCounts c;
  for (const auto& rec : cells) {
    switch (rec.status) {
      case Status::Converged:
        if (rec.root_index >= 0)
          ++c.converged;
        else
          ++c.converged_unclassified;
        break;
      case Status::NonConvergent: ++c.non_convergent; break;
      case Status::Singular: ++c.singular; break;
    }
  }
  return c;
}

}  // namespace basinmap
