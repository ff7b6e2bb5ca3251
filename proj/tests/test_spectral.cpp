#include <doctest.h>

#include "quatforms/errors.hpp"
#include "quatforms/spectral.hpp"

using namespace quatforms;

TEST_CASE("bounds") {
  CHECK(coefficient_bound(2, Integer(3)) == 9);
  CHECK(coefficient_bound(4, Integer(10)) == 10000);
  CHECK(coefficient_bound(3, Integer(1)) == 3);
  CHECK(eigenvalue_bound(HeckeDescriptor::T(3), 5) == 82);
  CHECK(eigenvalue_bound(HeckeDescriptor::U(11), 3) == 121);
  CHECK(eigenvalue_bound(HeckeDescriptor::W(), 3) == 8);
  CHECK(precision_for_bound(7, Integer(1000)) == 4);
  CHECK(precision_for_bound(7, Integer(1200)) == 4);
  CHECK(precision_for_bound(7, Integer(1201)) == 5);
}

TEST_CASE("integer char poly refuses low precision") {
  const LevelSpec level{7, 1, 0};
  auto desc = HeckeDescriptor::T(3);
  Integer b = coefficient_bound(8, eigenvalue_bound(desc, 5));
  CHECK_THROWS_AS(charpoly_int(desc, level, 5, b, 2), PrecisionInsufficient);
  auto r = charpoly_int(desc, level, 5, b);
  CHECK(r.poly.size() == 9);
  CHECK(r.poly.back() == 1);
}

TEST_CASE("SplitMix64 reference outputs") {
  SplitMix64 g(0);
  CHECK(g() == 0xe220a8397b1dcdafULL);
  CHECK(g() == 0x6e789e6aa1b965f4ULL);
  SplitMix64 h(1234567);
  CHECK(h() == 6457827717110365317ULL);
}

TEST_CASE("power iteration is deterministic") {
  FormSpace space = make_space(LevelSpec{7, 1, 0}, 1, Model::Overconvergent, 12, 12);
  auto a = power_iterate(space, 12, {5}, 1);
  auto b = power_iterate(space, 12, {5}, 1);
  CHECK(a.vectors[0].coeffs == b.vectors[0].coeffs);
  CHECK(a.seeds == b.seeds);
  CHECK_THROWS_AS(power_iterate(space, 13, {5}, 1), ValidationError);
  CHECK_THROWS_AS(power_iterate(space, 12, {5}, 2), ValidationError);
}

TEST_CASE("eigenvalue extraction") {
  FormSpace space = make_space(LevelSpec{7, 1, 0}, 2, Model::Classical, 8);
  AutForm one = AutForm::zero(space);
  one.coeffs.setConstant(Residue(space.ring(), 1));
  auto r = extract_eigenvalue(one, HeckeOperator(space, HeckeDescriptor::T(3)));
  CHECK(r.value == Residue(space.ring(), 4));
  CHECK(r.digits == 8);
  CHECK(r.loss == 0);

  AutForm spike = AutForm::zero(space);
  spike.coeffs(0) = Residue(space.ring(), 1);
  CHECK_THROWS_AS(extract_eigenvalue(spike, HeckeOperator(space, HeckeDescriptor::T(3))), InconsistentRatios);
}

TEST_CASE("classicality evidence") {
  const ResidueRing& ring = ResidueRing::get(5, 20);
  // 5-adic square root of -1, lifted by Newton's method.
  Residue x(ring, 2);
  for (int i = 0; i < 6; ++i) x = x - (x * x + Residue(ring, 1)) * (Residue(ring, 2) * x).inverse();
  REQUIRE((x * x + Residue(ring, 1)).is_zero());
  auto v = classicality_evidence(x, 2, Integer(1));
  bool found = false;
  for (const auto& m : v.matches) found = found || m == int_poly_from({1, 0, 1});
  CHECK(found);
  CHECK(!classicality_evidence(x, 1, Integer(1000)).bounded_match());
  CHECK_THROWS_AS(classicality_evidence(x, 5, Integer(1)), ValidationError);
  CHECK_THROWS_AS(classicality_evidence(x, 4, Integer(1000)), ValidationError);
  CHECK_THROWS_AS(classicality_evidence(Residue(3), 2, Integer(1)), ValidationError);
}
