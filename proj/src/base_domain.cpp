#include "plb/base_domain.hpp"

#include <cmath>
#include <numbers>

namespace plb {

double BaseDomain::measure() const {
  if (kind == Kind::UnitDisc) return std::numbers::pi;
  return 4.0 * half_width * half_height;
}

bool BaseDomain::contains(std::complex<double> z) const {
  if (kind == Kind::UnitDisc) return std::norm(z) < 1.0;
  return std::abs(z.real()) < half_width && std::abs(z.imag()) < half_height;
}

}  // namespace plb
