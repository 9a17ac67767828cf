#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "basinmap/polynomial.hpp"
#include "basinmap/step.hpp"

namespace basinmap {

struct IterationParams {
  double epsilon = 1e-5;
  int max_iter = 40;

  bool valid() const { return epsilon > 0.0 && max_iter >= 1; }
};

// Which member of the iteration family drives the orbit.
struct MapSpec {
  enum class Kind { Modified, Generalized, Gerlach };

  Kind kind = Kind::Modified;
  double a0 = 1.0;
  double a1 = 0.0;
  std::vector<double> exponents;  // Generalized
  int gerlach_n = 2;              // Gerlach

  static MapSpec modified(double a0, double a1) { return {Kind::Modified, a0, a1, {}, 2}; }
  static MapSpec newton() { return modified(1.0, 0.0); }
  static MapSpec halley() { return modified(1.0, -0.5); }
  static MapSpec generalized(std::vector<double> exps) {
    return {Kind::Generalized, 1.0, 0.0, std::move(exps), 2};
  }
  static MapSpec gerlach(int n) { return {Kind::Gerlach, 1.0, 0.0, {}, n}; }

  StepResult step(const Polynomial& poly, cdouble z) const;
};

class RootFindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reference zeros of f, found by Durand-Kerner simultaneous iteration and
// polished by Newton.  Pairwise-close roots are rejected so that nearest-root
// classification stays unambiguous.
struct RootSet {
  std::vector<cdouble> roots;
  double match_radius = 0.0;

  // nearest root index if within match_radius, else nullopt
  std::optional<int> classify(cdouble z) const;
};

RootSet reference_roots(const Polynomial& poly);

enum class Status { Converged, NonConvergent, Singular };

struct ConvergenceRecord {
  Status status = Status::NonConvergent;
  int root_index = -1;  // -1 = unclassified
  int iterations = 0;
  cdouble final_z{0.0, 0.0};

  bool operator==(const ConvergenceRecord&) const = default;
};

// Applies the map from z0, stopping at the first iterate with |f(z)| < eps.
// iterations counts applications of the map; z0 is iteration 0.  A failing
// step terminates the orbit with status Singular.
ConvergenceRecord iterate(const Polynomial& poly, cdouble z0, const IterationParams& params,
                          const RootSet& roots, const MapSpec& map);

std::string to_string(Status s);

}  // namespace basinmap
