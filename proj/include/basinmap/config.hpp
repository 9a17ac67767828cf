#pragma once

#include <optional>
#include <string>

#include "basinmap/raster.hpp"

namespace basinmap {

// Everything needed to reproduce a render/sweep/order job.  Round-trips
// losslessly through JSON; omitted fields keep the documented defaults.
struct JobConfig {
  std::vector<cdouble> coefficients;  // ascending degree
  std::string preset;                 // e.g. "z7m1"; overrides coefficients when set

  std::string map_kind = "modified";  // modified | generalized | gerlach
  double a0 = 1.0;
  double a1 = 0.0;
  std::vector<double> exponents;
  int gerlach_n = 2;

  double epsilon = 1e-5;
  int max_iter = 40;

  DomainRect domain;
  AxisRange x_range{-2.0, 2.0, 1001};
  AxisRange a1_range{-2.0, 0.5, 1001};

  std::optional<cdouble> z0;  // order jobs

  std::string out;
  std::string format = "ppm";
  std::string palette = "default";
  int workers = 0;

  Polynomial polynomial() const;
  MapSpec map() const;
  IterationParams params() const { return {epsilon, max_iter}; }
};

// Known if the name is one of the named presets (z2m1, z3m1, z7m1).
bool known_preset(const std::string& name);
std::vector<cdouble> preset_coefficients(const std::string& name);

std::string to_json(const JobConfig& cfg);
JobConfig config_from_json(const std::string& json_text);
JobConfig load_config(const std::string& path);

}  // namespace basinmap
