#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace basinmap {

using cdouble = std::complex<double>;

// Dense complex polynomial, coefficients in ascending degree order
// (coefficients()[k] multiplies z^k). The leading coefficient is nonzero.
class Polynomial {
 public:
  explicit Polynomial(std::vector<cdouble> coeffs);

  static Polynomial from_real(std::vector<double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cdouble>& coefficients() const { return coeffs_; }

  cdouble operator()(cdouble z) const;

  Polynomial derivative() const;

  // f(z), f'(z), ..., f^(k)(z) in one Horner pass. Entries beyond the
  // degree are exactly zero.
  std::vector<cdouble> eval_derivatives(cdouble z, int k) const;

  double max_coefficient_magnitude() const;

 private:
  std::vector<cdouble> coeffs_;
};

}  // namespace basinmap
