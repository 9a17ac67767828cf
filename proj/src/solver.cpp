#include "basinmap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace basinmap {

StepResult MapSpec::step(const Polynomial& poly, cdouble z) const {
  switch (kind) {
    case Kind::Modified: return modified_step(poly, z, a0, a1);
    case Kind::Generalized: return generalized_step(poly, z, exponents);
    case Kind::Gerlach: return gerlach_step(poly, z, gerlach_n);
  }
  return {z, StepError::NonFinite};
}

std::optional<int> RootSet::classify(cdouble z) const {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < roots.size(); ++k) {
    double d = std::abs(z - roots[k]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(k);
    }
  }
  if (best >= 0 && best_d < match_radius) return best;
  return std::nullopt;
}

RootSet reference_roots(const Polynomial& poly) {
  const int n = poly.degree();
  if (n < 1) throw RootFindError("degree must be at least 1");

  // monic copy for the Durand-Kerner sweep
  std::vector<cdouble> monic(poly.coefficients());
  const cdouble lead = monic.back();
  for (auto& c : monic) c /= lead;

  auto eval_monic = [&](cdouble z) {
    cdouble acc{0.0, 0.0};
    for (auto it = monic.rbegin(); it != monic.rend(); ++it) acc = acc * z + *it;
    return acc;
  };

  std::vector<cdouble> w(n);
  const cdouble seed{0.4, 0.9};
  cdouble p{1.0, 0.0};
  for (int k = 0; k < n; ++k) {
    p *= seed;
    w[k] = p;
  }

  const int cap = 500;
  bool settled = false;
  for (int it = 0; it < cap && !settled; ++it) {
    settled = true;
    for (int k = 0; k < n; ++k) {
      cdouble denom{1.0, 0.0};
      for (int j = 0; j < n; ++j)
        if (j != k) denom *= w[k] - w[j];
      cdouble delta = eval_monic(w[k]) / denom;
      w[k] -= delta;
      if (std::abs(delta) > 1e-14 * (1.0 + std::abs(w[k]))) settled = false;
    }
  }

  // Newton polish on the original polynomial
  for (auto& r : w) {
    for (int it = 0; it < 5; ++it) {
      auto d = poly.eval_derivatives(r, 1);
      if (d[1] == cdouble{0.0, 0.0}) break;
      r -= d[0] / d[1];
    }
  }

  const double scale = 1.0 + poly.max_coefficient_magnitude();
  for (const auto& r : w) {
    if (std::abs(poly(r)) > 1e-12 * scale)
      throw RootFindError("root finder failed to reach target residual");
  }

  double min_sep = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k)
    for (int j = k + 1; j < n; ++j) min_sep = std::min(min_sep, std::abs(w[k] - w[j]));
  if (n > 1 && min_sep < 1e-5)
    throw RootFindError("roots are not simple (pairwise separation below 1e-5)");

  std::sort(w.begin(), w.end(), [](cdouble a, cdouble b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  RootSet rs;
  rs.roots = std::move(w);
  rs.match_radius = (n > 1) ? 0.5 * min_sep : 1.0;
  return rs;
}

ConvergenceRecord iterate(const Polynomial& poly, cdouble z0, const IterationParams& params,
                          const RootSet& roots, const MapSpec& map) {
  cdouble z = z0;
  for (int n = 0;; ++n) {
    if (std::abs(poly(z)) < params.epsilon) {
      ConvergenceRecord rec{Status::Converged, -1, n, z};
      if (auto idx = roots.classify(z)) rec.root_index = *idx;
      return rec;
    }
    if (n == params.max_iter) return {Status::NonConvergent, -1, params.max_iter, z};
    StepResult s = map.step(poly, z);
    if (!s.ok()) return {Status::Singular, -1, n, z};
    z = s.z;
  }
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Converged: return "converged";
    case Status::NonConvergent: return "non-convergent";
    case Status::Singular: return "singular";
  }
  return "unknown";
}

}  // namespace basinmap
