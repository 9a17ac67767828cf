#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <numbers>
#include <queue>
#include <random>

#include "basinmap/analysis.hpp"

using namespace basinmap;

namespace {

const Polynomial z2m1 = Polynomial::from_real({-1, 0, 1});
const Polynomial z3m1 = Polynomial::from_real({-1, 0, 0, 1});
const Polynomial z7m1 = Polynomial::from_real({-1, 0, 0, 0, 0, 0, 0, 1});
const IterationParams kPaperParams{1e-5, 40};

BasinRaster synthetic_raster(int nx, int ny, const std::vector<int>& mask) {
  // mask: 1 = Converged, 0 = NonConvergent
  BasinRaster r;
  r.domain = {0.0, static_cast<double>(nx), 0.0, static_cast<double>(ny), nx, ny};
  r.params = kPaperParams;
  r.cells.resize(mask.size());
  for (std::size_t k = 0; k < mask.size(); ++k)
    r.cells[k] = mask[k] ? ConvergenceRecord{Status::Converged, 0, 5, {0, 0}}
                         : ConvergenceRecord{Status::NonConvergent, -1, 40, {0, 0}};
  return r;
}

// Flood-fill oracle, independent of the two-pass labelling in the library.
struct OracleComponent {
  long count = 0;
  bool edge = false;
};

std::vector<OracleComponent> flood_fill_oracle(int nx, int ny, const std::vector<int>& mask) {
  std::vector<int> seen(mask.size(), 0);
  std::vector<OracleComponent> comps;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int idx = j * nx + i;
      if (!mask[idx] || seen[idx]) continue;
      OracleComponent c;
      std::queue<std::pair<int, int>> q;
      q.push({i, j});
      seen[idx] = 1;
      while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop();
        ++c.count;
        if (x == 0 || y == 0 || x == nx - 1 || y == ny - 1) c.edge = true;
        const int dx[] = {1, -1, 0, 0}, dy[] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          const int px = x + dx[d], py = y + dy[d];
          if (px < 0 || py < 0 || px >= nx || py >= ny) continue;
          const int pidx = py * nx + px;
          if (mask[pidx] && !seen[pidx]) {
            seen[pidx] = 1;
            q.push({px, py});
          }
        }
      }
      comps.push_back(c);
    }
  }
  return comps;
}

}  // namespace

TEST_CASE("estimate_from_errors recovers synthetic orders and constants") {
  struct Case {
    double p, c, e0;
  };
  for (const Case& c : {Case{2.0, 0.7, 0.5}, Case{3.0, 0.4, 0.5}, Case{1.0, 0.5, 0.1}}) {
    std::vector<double> e{c.e0};
    while (e.back() > 1e-14 && e.size() < 200) e.push_back(c.c * std::pow(e.back(), c.p));
    OrderEstimate est = estimate_from_errors(e);
    CHECK(est.empirical_order == doctest::Approx(c.p).epsilon(0.05));
    CHECK(est.asymptotic_constant == doctest::Approx(c.c).epsilon(0.05));
    CHECK(est.samples_used >= 3);
  }
}

TEST_CASE("estimate_order: Newton on z^2 - 1 is second order with constant 1/2") {
  OrderEstimate est = estimate_order(z2m1, MapSpec::newton(), {2, 0}, {1, 0});
  CHECK(est.empirical_order == doctest::Approx(2.0).epsilon(0.05));
  CHECK(est.asymptotic_constant == doctest::Approx(0.5).epsilon(0.1));
  CHECK(est.predicted_order == 2.0);
  REQUIRE(est.predicted_constant.has_value());
  CHECK(*est.predicted_constant == doctest::Approx(0.5));
}

TEST_CASE("estimate_order: a0 = 2 is first order with rate 1/2") {
  OrderEstimate est = estimate_order(z2m1, MapSpec::modified(2.0, 0.0), {1.5, 0}, {1, 0});
  CHECK(est.empirical_order == doctest::Approx(1.0).epsilon(0.05));
  CHECK(est.asymptotic_constant == doctest::Approx(0.5).epsilon(0.02));
  CHECK(est.predicted_order == 1.0);
  CHECK(*est.predicted_constant == doctest::Approx(0.5));
}

TEST_CASE("estimate_order: Halley is third order") {
  OrderEstimate est = estimate_order(z2m1, MapSpec::halley(), {3, 0}, {1, 0});
  CHECK(est.empirical_order == doctest::Approx(3.0).epsilon(0.1));
  CHECK(est.predicted_order == 3.0);
}

TEST_CASE("estimate_order: Gerlach n = 3 reaches fourth order on z^3 - 1") {
  OrderEstimate est = estimate_order(z3m1, MapSpec::gerlach(3), {1.5, 0}, {1, 0});
  CHECK(est.empirical_order == doctest::Approx(4.0).epsilon(0.06));
  CHECK(est.predicted_order == 4.0);
}

TEST_CASE("estimate_order error paths") {
  // starting on the root converges instantly: no usable triples
  CHECK_THROWS_AS(estimate_order(z2m1, MapSpec::newton(), {1.0 + 1e-14, 0}, {1, 0}),
                  InsufficientSamples);
  // Newton on z^2 + 1 from the real axis never leaves it
  Polynomial z2p1 = Polynomial::from_real({1, 0, 1});
  CHECK_THROWS_AS(estimate_order(z2p1, MapSpec::newton(), {0.3, 0}, {0, 1}), OrbitDiverged);
}

TEST_CASE("Proposition constants over random polynomials") {
  std::mt19937 rng(20240813);
  std::uniform_real_distribution<double> upos(-2.0, 2.0);
  std::uniform_real_distribution<double> ua(-1.0, 0.3);
  int done = 0;
  for (int trial = 0; trial < 400 && done < 20; ++trial) {
    const int degree = 2 + trial % 4;
    // random well-separated real roots keep every zero simple
    std::vector<double> roots;
    bool ok = true;
    for (int k = 0; k < degree && ok; ++k) {
      double r = upos(rng);
      for (double prev : roots)
        if (std::abs(prev - r) < 0.6) ok = false;
      roots.push_back(r);
    }
    if (!ok) continue;
    std::vector<cdouble> coeffs{1.0};
    for (double r : roots) {
      std::vector<cdouble> next(coeffs.size() + 1, 0.0);
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        next[k + 1] += coeffs[k];
        next[k] -= r * coeffs[k];
      }
      coeffs = next;
    }
    Polynomial poly(coeffs);
    double a1 = ua(rng);
    if (std::abs(a1 + 0.5) < 0.08) continue;
    const cdouble alpha{roots[0], 0.0};
    auto d = poly.eval_derivatives(alpha, 2);
    const double b32 = std::abs((0.5 + a1) * d[2] / d[1]);
    OrderEstimate est;
    try {
      est = estimate_order(poly, MapSpec::modified(1.0, a1), alpha + cdouble{0.2, 0.0}, alpha);
    } catch (const std::runtime_error&) {
      continue;  // orbit escaped to another root; sample again
    }
    CHECK(std::abs(est.asymptotic_constant - b32) / std::max(0.05, b32) < 0.1);
    CHECK(est.empirical_order == doctest::Approx(2.0).epsilon(0.1));
    ++done;
  }
  CHECK(done == 20);
}

TEST_CASE("linear-rate constant matches 1 - 1/a0") {
  for (double a0 : {1.5, 2.0, 4.0}) {
    OrderEstimate est = estimate_order(z2m1, MapSpec::modified(a0, 0.0), {1.4, 0}, {1, 0});
    CHECK(std::abs(est.asymptotic_constant - (1.0 - 1.0 / a0)) < 1e-3);
  }
}

TEST_CASE("non_convergent_fraction on trivial rasters") {
  BasinRaster all = synthetic_raster(4, 4, std::vector<int>(16, 1));
  CHECK(non_convergent_fraction(all) == 0.0);
  BasinRaster none = synthetic_raster(4, 4, std::vector<int>(16, 0));
  CHECK(non_convergent_fraction(none) == 1.0);
}

TEST_CASE("max_iter = 1 with tiny epsilon leaves everything non-convergent") {
  DomainRect d{0.2, 2.2, 0.2, 2.2, 16, 16};
  BasinRaster r = render_basin(z7m1, {1e-300, 1}, MapSpec::newton(), d);
  CHECK(non_convergent_fraction(r) == 1.0);
}

TEST_CASE("detect_nodules: enclosed 3x3 block is one nodule of 9 cells") {
  std::vector<int> mask(7 * 7, 0);
  for (int j = 2; j <= 4; ++j)
    for (int i = 2; i <= 4; ++i) mask[j * 7 + i] = 1;
  BasinRaster r = synthetic_raster(7, 7, mask);
  NoduleReport rep = detect_nodules(r, 4);
  REQUIRE(rep.nodules.size() == 1);
  CHECK(rep.nodules[0].cell_count == 9);
  CHECK(rep.nodules[0].touches_domain_edge == false);
  CHECK(rep.nodules[0].centroid_x == doctest::Approx(3.5));
  CHECK(rep.nodules[0].centroid_y == doctest::Approx(3.5));
  CHECK(rep.total_convergent_enclosed_area == doctest::Approx(9.0));
}

TEST_CASE("detect_nodules matches the flood-fill oracle on random grids") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coin(0, 99);
  std::uniform_int_distribution<int> dim(4, 24);
  for (int trial = 0; trial < 100; ++trial) {
    const int nx = dim(rng), ny = dim(rng);
    const int density = 20 + coin(rng) / 2;
    std::vector<int> mask(static_cast<std::size_t>(nx) * ny);
    for (auto& m : mask) m = coin(rng) < density ? 1 : 0;
    BasinRaster r = synthetic_raster(nx, ny, mask);
    NoduleReport rep = detect_nodules(r, 1);
    auto oracle = flood_fill_oracle(nx, ny, mask);
    std::vector<long> expected;
    for (const auto& c : oracle)
      if (!c.edge) expected.push_back(c.count);
    std::sort(expected.rbegin(), expected.rend());
    REQUIRE(rep.nodules.size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) CHECK(rep.nodules[k].cell_count == expected[k]);
  }
}

TEST_CASE("nodule min-size threshold drops small components") {
  std::vector<int> mask(6 * 6, 0);
  mask[2 * 6 + 2] = 1;  // single enclosed cell
  BasinRaster r = synthetic_raster(6, 6, mask);
  CHECK(detect_nodules(r, 4).nodules.empty());
  CHECK(detect_nodules(r, 1).nodules.size() == 1);
}

TEST_CASE("degenerate 2x2 grid can hold no nodule") {
  BasinRaster r = synthetic_raster(2, 2, {1, 1, 1, 1});
  NoduleReport rep = detect_nodules(r, 1);
  CHECK(rep.nodules.empty());
  CHECK(rep.total_convergent_enclosed_area == 0.0);
}

TEST_CASE("nodule_growth_curve single value is consistent with detect_nodules") {
  DomainRect d{-2, 2, -2, 2, 101, 101};
  auto curve = nodule_growth_curve(z7m1, 1.0, {-0.3}, d, kPaperParams, 4);
  REQUIRE(curve.size() == 1);
  BasinRaster r = render_basin(z7m1, kPaperParams, MapSpec::modified(1.0, -0.3), d);
  NoduleReport rep = detect_nodules(r, 4);
  CHECK(curve[0].total_area == doctest::Approx(rep.total_convergent_enclosed_area));
  CHECK(curve[0].nodule_count == static_cast<int>(rep.nodules.size()));
}

TEST_CASE("extract_boundary: uniform raster has no boundary") {
  BasinRaster r = synthetic_raster(5, 5, std::vector<int>(25, 1));
  CHECK(extract_boundary(r).empty());
}

TEST_CASE("extract_boundary: Newton on z^2 - 1 concentrates on the imaginary axis") {
  DomainRect d{-2, 2, -2, 2, 100, 100};
  BasinRaster r = render_basin(z2m1, kPaperParams, MapSpec::newton(), d);
  auto boundary = extract_boundary(r);
  CHECK(!boundary.empty());
  for (auto [i, j] : boundary) CHECK(std::abs(d.cell_center(i, j).real()) < 0.2);
}

TEST_CASE("extract_boundary: z^7 - 1 boundary includes the negative real axis") {
  DomainRect d{-2, 2, -2, 2, 100, 100};
  BasinRaster r = render_basin(z7m1, kPaperParams, MapSpec::newton(), d);
  auto boundary = extract_boundary(r);
  // cell just below the axis at x ~ -1
  bool found = false;
  for (auto [i, j] : boundary)
    if (j == 49 && std::abs(d.cell_center(i, j).real() + 1.0) < 0.1) found = true;
  CHECK(found);
}

TEST_CASE("nodule contours lie on the boundary or in the non-convergent set") {
  DomainRect d{-2, 2, -2, 2, 101, 101};
  BasinRaster r = render_basin(z7m1, kPaperParams, MapSpec::modified(1.0, -0.3), d);
  NoduleReport rep = detect_nodules(r, 4);
  auto boundary = extract_boundary(r);
  std::set<std::pair<int, int>> boundary_set(boundary.begin(), boundary.end());
  for (const auto& n : rep.nodules) {
    // contour = non-converged cells one step outside the bounding box walls
    for (int j = n.j_min - 1; j <= n.j_max + 1; ++j)
      for (int i = n.i_min - 1; i <= n.i_max + 1; ++i) {
        if (i < 0 || j < 0 || i >= d.nx || j >= d.ny) continue;
        const auto& rec = r.at(i, j);
        if (rec.status == Status::Converged && !boundary_set.count({i, j})) continue;
        CHECK((rec.status != Status::Converged || boundary_set.count({i, j}) > 0));
      }
  }
}

TEST_CASE("repulsive_zero_scan") {
  // a1 = 0: z = 0 is not a zero of g and f'(0) = 0 is singular
  auto scan = repulsive_zero_scan(z7m1, 1.0, {0.0}, 0.05);
  CHECK(scan[0].converges_to_origin == false);

  // Newton on f = z reaches 0 in one step
  Polynomial line = Polynomial::from_real({0, 1});
  scan = repulsive_zero_scan(line, 1.0, {0.0}, 0.05);
  CHECK(scan[0].converges_to_origin == true);

  // On z^7 - 1 the map acts near 0 as z -> z (1 - 1/(6 a1)), so the origin
  // repels exactly for 0 < a1 < 1/12; the scan reproduces that threshold.
  scan = repulsive_zero_scan(z7m1, 1.0, {0.01, 0.02, 0.04, 0.06, 0.08, 0.083}, 0.05);
  for (const auto& p : scan) CHECK(p.converges_to_origin == false);
  scan = repulsive_zero_scan(z7m1, 1.0, {0.09, 0.1, 0.2, 0.4}, 0.05);
  for (const auto& p : scan) CHECK(p.converges_to_origin == true);
}

TEST_CASE("critical_a1_bracket straddles the right-half-plane transition") {
  // x in [0.3, 2] keeps the a1 = 0 row fully convergent, so the predicate
  // flips inside the bracket; the bisected value is regression-frozen.
  auto [lo, hi] = critical_a1_bracket(z7m1, 1.0, 0.3, 2.0, 200, kPaperParams);
  CHECK(lo < hi);
  CHECK(hi - lo <= 1e-2);
  CHECK(lo == doctest::Approx(-1.013671875).epsilon(1e-12));
  CHECK(hi == doctest::Approx(-1.0078125).epsilon(1e-12));
}

TEST_CASE("critical_a1_bracket rejects non-straddling endpoints") {
  // on x in [0.1, 2] even a1 = 0 has a slow non-convergent band
  CHECK_THROWS_AS(critical_a1_bracket(z7m1, 1.0, 0.1, 2.0, 200, kPaperParams),
                  std::invalid_argument);
}
