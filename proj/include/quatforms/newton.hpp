#pragma once

#include <vector>

#include <boost/rational.hpp>

#include "quatforms/series.hpp"

namespace quatforms {

using Rational = boost::rational<long long>;

/// One segment of a Newton polygon: root valuation `value` with
/// multiplicity.  An unreliable segment either sits at or above the cap or
/// is the saturated tail, whose valuations are only known to be >= value.
struct NewtonSlope {
  Rational value;
  int multiplicity = 0;
  bool reliable = true;
  bool saturated = false;
};

/// Valuations of the roots of the monic polynomial f, in increasing order,
/// read from the lower convex hull of the coefficient valuations.
/// Coefficients that vanish mod p^N carry no information and are skipped;
/// the roots they hide form a trailing saturated segment.  Segments with
/// value >= reliable_cap are flagged unreliable (default cap N - 2).
std::vector<NewtonSlope> newton_slopes(const PadicPoly& f, int reliable_cap = -1);

/// Expands segments into a nondecreasing list of slopes (one per root).
std::vector<Rational> expand_slopes(const std::vector<NewtonSlope>& segments);

}  // namespace quatforms
