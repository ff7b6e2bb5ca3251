#include <doctest.h>

#include "quatforms/newton.hpp"

using namespace quatforms;

namespace {

PadicPoly from_roots(const ResidueRing& ring, const std::vector<long long>& roots) {
  PadicPoly f = PadicPoly::from_integers(ring, {1});
  for (long long r : roots) f = poly_multiply(f, PadicPoly::from_integers(ring, {-r, 1}));
  return f;
}

}  // namespace

TEST_CASE("slopes of a split polynomial are the root valuations") {
  const ResidueRing& ring = ResidueRing::get(5, 20);
  auto segs = newton_slopes(from_roots(ring, {1, 5, 25, 2, 125 * 3}));
  auto slopes = expand_slopes(segs);
  REQUIRE(slopes.size() == 5);
  CHECK(slopes == std::vector<Rational>{0, 0, 1, 2, 3});
  int total = 0;
  for (const auto& s : segs) {
    total += s.multiplicity;
    CHECK(s.reliable);
  }
  CHECK(total == 5);
}

TEST_CASE("fractional slopes") {
  const ResidueRing& ring = ResidueRing::get(7, 10);
  // x^2 - 7 has both roots of valuation 1/2.
  auto segs = newton_slopes(PadicPoly::from_integers(ring, {-7, 0, 1}));
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].value == Rational(1, 2));
  CHECK(segs[0].multiplicity == 2);
}

TEST_CASE("vanishing tail is saturated and unreliable") {
  const ResidueRing& ring = ResidueRing::get(3, 6);
  // x^3 (x - 1): three roots indistinguishable from 0 at this precision.
  auto segs = newton_slopes(from_roots(ring, {0, 0, 0, 1}));
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].value == Rational(0));
  CHECK(segs[0].reliable);
  CHECK(segs[1].saturated);
  CHECK_FALSE(segs[1].reliable);
  CHECK(segs[1].multiplicity == 3);
}

TEST_CASE("slopes at or above the cap are unreliable") {
  const ResidueRing& ring = ResidueRing::get(5, 8);
  auto segs = newton_slopes(from_roots(ring, {1, 5 * 5 * 5 * 5 * 5 * 5}), 5);
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].reliable);
  CHECK_FALSE(segs[1].reliable);
}

TEST_CASE("non-monic input is rejected") {
  const ResidueRing& ring = ResidueRing::get(5, 8);
  CHECK_THROWS(newton_slopes(PadicPoly::from_integers(ring, {1, 2})));
}
