#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "basinmap/analysis.hpp"
#include "basinmap/config.hpp"
#include "basinmap/image.hpp"

namespace bm = basinmap;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CliOptions {
  std::string config_path;
  std::string poly_str;
  std::string preset;
  bool a0_set = false, a1_set = false;
  double a0 = 1.0, a1 = 0.0;
  std::vector<double> exps;
  int gerlach_n = 0;
  double eps = 0.0;
  int max_iter = 0;
  std::vector<double> domain;   // xmin xmax ymin ymax
  std::vector<int> res;         // nx ny
  std::vector<double> x_range;  // lo hi
  std::vector<double> a1_range;
  std::vector<double> z0;
  std::string out;
  std::string format;
  std::string palette;
  int workers = -1;
};

void add_common_flags(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON config file (flags override file values)");
  cmd->add_option("--poly", o.poly_str,
                  "ascending coefficients in one quoted string, each 're' or 're,im'");
  cmd->add_option("--preset", o.preset, "named polynomial: z2m1, z3m1, z7m1");
  auto* a0 = cmd->add_option("--a0", o.a0, "parameter a0 (default 1)");
  auto* a1 = cmd->add_option("--a1", o.a1, "parameter a1 (default 0)");
  cmd->parse_complete_callback([&o, a0, a1] {
    o.a0_set = a0->count() > 0;
    o.a1_set = a1->count() > 0;
  });
  cmd->add_option("--exps", o.exps, "generalized-map exponent list a0..aN");
  cmd->add_option("--gerlach-n", o.gerlach_n, "Gerlach order n (2..4)");
  cmd->add_option("--eps", o.eps, "residual tolerance (default 1e-5)");
  cmd->add_option("--max-iter", o.max_iter, "iteration cap (default 40)");
  cmd->add_option("--domain", o.domain, "xmin xmax ymin ymax")->expected(4);
  cmd->add_option("--res", o.res, "nx ny")->expected(2);
  cmd->add_option("--x-range", o.x_range, "sweep x range: lo hi")->expected(2);
  cmd->add_option("--a1-range", o.a1_range, "sweep a1 range: lo hi")->expected(2);
  cmd->add_option("--z0", o.z0, "start point: re im")->expected(2);
  cmd->add_option("--out", o.out, "output file path");
  cmd->add_option("--format", o.format, "ppm (png not supported)");
  cmd->add_option("--palette", o.palette, "palette id");
  cmd->add_option("--workers", o.workers, "worker count (default: all cores)");
}

bm::cdouble parse_complex_token(const std::string& tok) {
  std::istringstream ss(tok);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(ss >> re)) throw std::invalid_argument("bad coefficient: " + tok);
  if (ss >> comma) {
    if (comma != ',' || !(ss >> im)) throw std::invalid_argument("bad coefficient: " + tok);
  }
  return {re, im};
}

int env_workers() {
  if (const char* env = std::getenv("BASINMAP_WORKERS")) return std::atoi(env);
  return 0;
}

// config file first, then flags on top
bm::JobConfig merge_config(const CliOptions& o) {
  bm::JobConfig cfg;
  if (!o.config_path.empty()) cfg = bm::load_config(o.config_path);
  if (!o.poly_str.empty()) {
    cfg.coefficients.clear();
    cfg.preset.clear();
    std::istringstream ss(o.poly_str);
    std::string tok;
    while (ss >> tok) cfg.coefficients.push_back(parse_complex_token(tok));
  }
  if (!o.preset.empty()) cfg.preset = o.preset;
  if (o.a0_set) cfg.a0 = o.a0;
  if (o.a1_set) cfg.a1 = o.a1;
  if (!o.exps.empty()) {
    cfg.exponents = o.exps;
    cfg.map_kind = "generalized";
  }
  if (o.gerlach_n > 0) {
    cfg.gerlach_n = o.gerlach_n;
    cfg.map_kind = "gerlach";
  }
  if (o.eps > 0.0) cfg.epsilon = o.eps;
  if (o.max_iter > 0) cfg.max_iter = o.max_iter;
  if (!o.domain.empty()) {
    cfg.domain.x_min = o.domain[0];
    cfg.domain.x_max = o.domain[1];
    cfg.domain.y_min = o.domain[2];
    cfg.domain.y_max = o.domain[3];
  }
  if (!o.res.empty()) {
    cfg.domain.nx = o.res[0];
    cfg.domain.ny = o.res[1];
    cfg.x_range.n = o.res[0];
    cfg.a1_range.n = o.res[1];
  }
  if (!o.x_range.empty()) {
    cfg.x_range.lo = o.x_range[0];
    cfg.x_range.hi = o.x_range[1];
  }
  if (!o.a1_range.empty()) {
    cfg.a1_range.lo = o.a1_range[0];
    cfg.a1_range.hi = o.a1_range[1];
  }
  if (!o.z0.empty()) cfg.z0 = bm::cdouble{o.z0[0], o.z0[1]};
  if (!o.out.empty()) cfg.out = o.out;
  if (!o.format.empty()) cfg.format = o.format;
  if (!o.palette.empty()) cfg.palette = o.palette;
  cfg.workers = o.workers >= 0 ? o.workers : env_workers();
  return cfg;
}

json counts_to_json(const bm::StatusCounts& c) {
  return {{"converged", c.converged},
          {"converged_unclassified", c.converged_unclassified},
          {"non_convergent", c.non_convergent},
          {"singular", c.singular}};
}

void write_sidecar(const bm::JobConfig& cfg, const std::string& type, const bm::StatusCounts& counts) {
  json sidecar = json::parse(bm::to_json(cfg));
  sidecar.erase("out");  // the sidecar sits next to the file it describes
  sidecar["type"] = type;
  sidecar["counts"] = counts_to_json(counts);
  sidecar["tool_version"] = kVersion;
  std::ofstream out(cfg.out + ".json");
  out << sidecar.dump(2) << "\n";
}

void write_image(const bm::JobConfig& cfg, const bm::ImageBuffer& img) {
  if (cfg.format != "ppm") throw std::invalid_argument("unsupported format: " + cfg.format);
  bm::write_ppm(img, cfg.out);
}

void print_counts(const bm::StatusCounts& c) {
  std::cout << "converged " << c.converged << "\nconverged_unclassified " << c.converged_unclassified
            << "\nnon_convergent " << c.non_convergent << "\nsingular " << c.singular << "\n";
}

int run_render(const CliOptions& o) {
  bm::JobConfig cfg = merge_config(o);
  if (cfg.out.empty()) cfg.out = "basin.ppm";
  bm::BasinRaster raster =
      bm::render_basin(cfg.polynomial(), cfg.params(), cfg.map(), cfg.domain, cfg.workers);
  write_image(cfg, bm::colorize(raster, {cfg.palette}));
  const auto counts = bm::count_statuses(raster.cells);
  write_sidecar(cfg, "basin", counts);
  print_counts(counts);
  return 0;
}

int run_sweep(const CliOptions& o) {
  bm::JobConfig cfg = merge_config(o);
  if (cfg.out.empty()) cfg.out = "sweep.ppm";
  bm::SweepRaster raster = bm::render_sweep(cfg.polynomial(), cfg.a0, cfg.x_range, cfg.a1_range,
                                            cfg.params(), cfg.workers);
  write_image(cfg, bm::colorize(raster, {cfg.palette}));
  const auto counts = bm::count_statuses(raster.cells);
  write_sidecar(cfg, "sweep", counts);
  print_counts(counts);
  return 0;
}

int run_order(const CliOptions& o) {
  bm::JobConfig cfg = merge_config(o);
  if (!cfg.z0) throw std::invalid_argument("order needs --z0");
  const bm::Polynomial poly = cfg.polynomial();
  const bm::RootSet roots = bm::reference_roots(poly);
  // classify the orbit's landing root first, then fit against it
  bm::ConvergenceRecord probe = bm::iterate(poly, *cfg.z0, {1e-13, 200}, roots, cfg.map());
  if (probe.status != bm::Status::Converged || probe.root_index < 0)
    throw bm::OrbitDiverged("orbit from z0 does not converge to a reference root");
  const bm::OrderEstimate est =
      bm::estimate_order(poly, cfg.map(), *cfg.z0, roots.roots[probe.root_index]);
  json j{{"operation", "order"},
         {"inputs", json::parse(bm::to_json(cfg))},
         {"outputs",
          {{"empirical_order", est.empirical_order},
           {"asymptotic_constant", est.asymptotic_constant},
           {"samples_used", est.samples_used},
           {"predicted_order", est.predicted_order}}},
         {"tool_version", kVersion}};
  if (est.predicted_constant) j["outputs"]["predicted_constant"] = *est.predicted_constant;
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct AnalyzeOptions {
  int min_cells = 4;
  std::vector<double> a1_values;
  double probe_radius = 0.05;
  double a1_lo = -1.5;
  double a1_hi = 0.0;
};

int run_analyze(const std::string& sub, const CliOptions& o, const AnalyzeOptions& a) {
  bm::JobConfig cfg = merge_config(o);
  const bm::Polynomial poly = cfg.polynomial();
  json report{{"operation", "analyze-" + sub},
              {"inputs", json::parse(bm::to_json(cfg))},
              {"tool_version", kVersion}};

  if (sub == "fraction" || sub == "nodules" || sub == "boundary") {
    bm::BasinRaster raster =
        bm::render_basin(poly, cfg.params(), cfg.map(), cfg.domain, cfg.workers);
    if (sub == "fraction") {
      report["outputs"] = {{"non_convergent_fraction", bm::non_convergent_fraction(raster)},
                           {"counts", counts_to_json(bm::count_statuses(raster.cells))}};
    } else if (sub == "nodules") {
      const bm::NoduleReport rep = bm::detect_nodules(raster, a.min_cells);
      json list = json::array();
      for (const auto& n : rep.nodules)
        list.push_back({{"cell_count", n.cell_count},
                        {"centroid", {n.centroid_x, n.centroid_y}},
                        {"bounding_box", {n.i_min, n.i_max, n.j_min, n.j_max}},
                        {"touches_domain_edge", n.touches_domain_edge}});
      report["outputs"] = {{"nodules", list},
                           {"total_convergent_enclosed_area", rep.total_convergent_enclosed_area}};
    } else {
      const auto cellsv = bm::extract_boundary(raster);
      report["outputs"] = {{"boundary_cell_count", cellsv.size()}};
    }
  } else if (sub == "growth") {
    std::vector<double> a1s = a.a1_values;
    if (a1s.empty())
      for (int k = 0; k <= 9; ++k) a1s.push_back(-0.1 * k);
    const auto curve = bm::nodule_growth_curve(poly, cfg.a0, a1s, cfg.domain, cfg.params(),
                                               a.min_cells, cfg.workers);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!cfg.out.empty()) {
      file.open(cfg.out);
      out = &file;
    }
    *out << "a1,total_area,nodule_count\n";
    for (const auto& p : curve)
      *out << p.a1 << "," << p.total_area << "," << p.nodule_count << "\n";
    return 0;
  } else if (sub == "repulsive") {
    std::vector<double> a1s = a.a1_values;
    if (a1s.empty()) a1s = {0.0, 0.05, 0.1, 0.2, 0.3, 0.4};
    const auto scan = bm::repulsive_zero_scan(poly, cfg.a0, a1s, a.probe_radius);
    json list = json::array();
    for (const auto& p : scan)
      list.push_back({{"a1", p.a1}, {"converges_to_origin", p.converges_to_origin}});
    report["outputs"] = {{"scan", list}, {"probe_radius", a.probe_radius}};
  } else if (sub == "critical") {
    const auto [lo, hi] = bm::critical_a1_bracket(poly, cfg.a0, cfg.x_range.lo, cfg.x_range.hi,
                                                  cfg.x_range.n, cfg.params(), a.a1_lo, a.a1_hi);
    report["outputs"] = {{"critical_a1_bracket", {lo, hi}}};
  } else {
    throw std::invalid_argument("unknown analyze sub-command: " + sub);
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"basinmap: basins of attraction of a parameterized Newton iteration family"};
  app.require_subcommand(1);

  CliOptions opts;
  AnalyzeOptions an;

  auto* render = app.add_subcommand("render", "render a basin-of-attraction image");
  add_common_flags(render, opts);
  auto* sweep = app.add_subcommand("sweep", "render the (x, a1) parameter sweep");
  add_common_flags(sweep, opts);
  auto* order = app.add_subcommand("order", "estimate the empirical convergence order");
  add_common_flags(order, opts);
  auto* analyze = app.add_subcommand("analyze", "raster analyses");
  analyze->require_subcommand(1);
  std::vector<CLI::App*> subs;
  for (const char* name : {"nodules", "fraction", "boundary", "growth", "repulsive", "critical"}) {
    auto* s = analyze->add_subcommand(name);
    add_common_flags(s, opts);
    s->add_option("--min-cells", an.min_cells, "smallest nodule size kept");
    s->add_option("--a1-values", an.a1_values, "explicit a1 series");
    s->add_option("--probe-radius", an.probe_radius, "probe ring radius around the origin");
    s->add_option("--a1-lo", an.a1_lo, "bracket lower endpoint");
    s->add_option("--a1-hi", an.a1_hi, "bracket upper endpoint");
    subs.push_back(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (render->parsed()) return run_render(opts);
    if (sweep->parsed()) return run_sweep(opts);
    if (order->parsed()) return run_order(opts);
    for (auto* s : subs)
      if (s->parsed()) return run_analyze(s->get_name(), opts, an);
    return 1;
  } catch (const bm::OrbitDiverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const bm::RootFindError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
