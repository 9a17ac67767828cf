#include "basinmap/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace basinmap {

Polynomial::Polynomial(std::vector<cdouble> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
  while (coeffs_.size() > 1 && coeffs_.back() == cdouble{0.0, 0.0}) coeffs_.pop_back();
}

Polynomial Polynomial::from_real(std::vector<double> coeffs) {
  std::vector<cdouble> c(coeffs.begin(), coeffs.end());
  return Polynomial(std::move(c));
}

cdouble Polynomial::operator()(cdouble z) const {
  cdouble acc{0.0, 0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (degree() == 0) return Polynomial({cdouble{0.0, 0.0}});
  std::vector<cdouble> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

std::vector<cdouble> Polynomial::eval_derivatives(cdouble z, int k) const {
  // Horner scheme carried through k+1 rows: d[j] ends up as the j-th
  // Taylor coefficient of f at z, then scale by j!.
  std::vector<cdouble> d(static_cast<std::size_t>(k) + 1, cdouble{0.0, 0.0});
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    for (int j = k; j >= 1; --j) d[j] = d[j] * z + d[j - 1];
    d[0] = d[0] * z + *it;
  }
  double fact = 1.0;
  for (int j = 2; j <= k; ++j) {
    fact *= j;
    d[j] *= fact;
  }
  return d;
}

double Polynomial::max_coefficient_magnitude() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace basinmap
