#ifndef PLB_BASE_DOMAIN_HPP
#define PLB_BASE_DOMAIN_HPP

#include <complex>

#include "plb/errors.hpp"

namespace plb {

/// Source domain of an analytic map: the open unit disc or an open
/// axis-aligned rectangle (-half_width, half_width) x (-half_height, half_height).
/// The measure is always computed from the closed form of the kind, never stored.
struct BaseDomain {
  enum class Kind { UnitDisc, Rectangle };

  Kind kind = Kind::UnitDisc;
  double half_width = 0.0;   // rectangle only
  double half_height = 0.0;  // rectangle only

  static BaseDomain unit_disc() { return BaseDomain{}; }

  static BaseDomain rectangle(double half_width, double half_height) {
    if (!(half_width > 0.0) || !(half_height > 0.0))
      throw DomainError("rectangle half-extents must be positive");
    return BaseDomain{Kind::Rectangle, half_width, half_height};
  }

  double measure() const;

  /// Membership in the open domain.
  bool contains(std::complex<double> z) const;
};

}  // namespace plb

#endif
