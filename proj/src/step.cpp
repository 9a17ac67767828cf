#include "basinmap/step.hpp"

#include <cmath>
#include <cstddef>

namespace basinmap {
namespace {

bool finite(cdouble z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Only true blow-ups abort; near-singular steps are allowed and caught
// later by the iteration cap.
bool denominator_singular(cdouble den, cdouble num) {
  return std::abs(den) < 1e-300 * (1.0 + std::abs(num));
}

// Truncated Taylor series around a fixed point: c[j] = F^(j)/j!.
struct Jet {
  std::vector<cdouble> c;

  int depth() const { return static_cast<int>(c.size()) - 1; }
};

Jet jet_of_poly(const Polynomial& p, cdouble z, int depth) {
  auto d = p.eval_derivatives(z, depth);
  double fact = 1.0;
  for (int j = 2; j <= depth; ++j) {
    fact *= j;
    d[j] /= fact;
  }
  return Jet{std::move(d)};
}

Jet jet_derivative(const Jet& a) {
  Jet r;
  r.c.resize(a.c.size() - 1);
  for (std::size_t j = 0; j < r.c.size(); ++j) r.c[j] = static_cast<double>(j + 1) * a.c[j + 1];
  return r;
}

Jet jet_mul(const Jet& a, const Jet& b, int depth) {
  Jet r;
  r.c.assign(static_cast<std::size_t>(depth) + 1, cdouble{0.0, 0.0});
  for (int i = 0; i <= depth && i <= a.depth(); ++i)
    for (int j = 0; i + j <= depth && j <= b.depth(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

// a^p via the ODE u y' = p u' y; principal branch for the leading value.
// Requires a.c[0] != 0.
Jet jet_pow(const Jet& a, double p) {
  Jet r;
  r.c.assign(a.c.size(), cdouble{0.0, 0.0});
  r.c[0] = std::pow(a.c[0], cdouble{p, 0.0});
  for (int k = 1; k <= a.depth(); ++k) {
    cdouble s{0.0, 0.0};
    for (int j = 1; j <= k; ++j) s += (p * j - (k - j)) * a.c[j] * r.c[k - j];
    r.c[k] = s / (static_cast<double>(k) * a.c[0]);
  }
  return r;
}

}  // namespace

StepResult modified_step(const Polynomial& poly, cdouble z, double a0, double a1) {
  auto d = poly.eval_derivatives(z, 2);
  const cdouble num = d[0] * d[1];
  const cdouble den = a0 * d[1] * d[1] + a1 * d[0] * d[2];
  if (denominator_singular(den, num)) return {z, StepError::SingularDenominator};
  const cdouble w = z - num / den;
  if (!finite(w)) return {z, StepError::NonFinite};
  return {w, StepError::None};
}

StepResult generalized_step(const Polynomial& poly, cdouble z, const std::vector<double>& exponents) {
  const int n_max = static_cast<int>(exponents.size()) - 1;
  auto d = poly.eval_derivatives(z, n_max + 1);
  cdouble sum{0.0, 0.0};
  for (int n = 0; n <= n_max; ++n) {
    if (exponents[n] == 0.0) continue;
    if (d[n] == cdouble{0.0, 0.0}) return {z, StepError::PoleAtDerivativeZero};
    sum += exponents[n] * d[n + 1] / d[n];
  }
  if (denominator_singular(sum, cdouble{1.0, 0.0})) return {z, StepError::SingularDenominator};
  const cdouble w = z - 1.0 / sum;
  if (!finite(w)) return {z, StepError::NonFinite};
  return {w, StepError::None};
}

StepResult gerlach_step(const Polynomial& poly, cdouble z, int order_n) {
  if (order_n < 2 || order_n > 4) throw std::invalid_argument("gerlach order must be in [2, 4]");
  Jet F = jet_of_poly(poly, z, order_n);
  for (int m = 2; m <= order_n; ++m) {
    Jet Fp = jet_derivative(F);
    if (Fp.c[0] == cdouble{0.0, 0.0}) return {z, StepError::PoleAtDerivativeZero};
    F = jet_mul(F, jet_pow(Fp, -1.0 / m), Fp.depth());
  }
  // depth 1 remains: value and first derivative of F_{n+1}
  const cdouble num = F.c[0];
  const cdouble den = F.c[1];
  if (denominator_singular(den, num)) return {z, StepError::SingularDenominator};
  const cdouble w = z - num / den;
  if (!finite(w)) return {z, StepError::NonFinite};
  return {w, StepError::None};
}

std::string to_string(StepError e) {
  switch (e) {
    case StepError::None: return "none";
    case StepError::SingularDenominator: return "singular-denominator";
    case StepError::NonFinite: return "non-finite";
    case StepError::PoleAtDerivativeZero: return "pole-at-derivative-zero";
  }
  return "unknown";
}

}  // namespace basinmap
