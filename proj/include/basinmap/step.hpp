#pragma once

#include <string>
#include <vector>

#include "basinmap/polynomial.hpp"

namespace basinmap {

enum class StepError {
  None,
  SingularDenominator,
  NonFinite,
  PoleAtDerivativeZero,
};

struct StepResult {
  cdouble z{0.0, 0.0};
  StepError error = StepError::None;

  bool ok() const { return error == StepError::None; }
};

// One step of z - f f' / (a0 f'^2 + a1 f f'').  Roots of f are exact
// fixed points (the numerator vanishes while the denominator stays a0 f'^2).
StepResult modified_step(const Polynomial& poly, cdouble z, double a0, double a1);

// Newton step of g = prod_n (f^(n))^{a_n}, written through the logarithmic
// derivative: z - 1 / sum_n a_n f^(n+1)/f^(n).  No fractional powers appear.
StepResult generalized_step(const Polynomial& poly, cdouble z, const std::vector<double>& exponents);

// z - F_{n+1}/F'_{n+1} with F_2 = f and F_{m+1} = F_m (F_m')^{-1/m},
// principal branch, propagated through truncated Taylor jets.
// Supported range: 2 <= order_n <= 4.
StepResult gerlach_step(const Polynomial& poly, cdouble z, int order_n);

std::string to_string(StepError e);

}  // namespace basinmap
