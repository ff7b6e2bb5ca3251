#include <doctest.h>

#include <random>

#include "quatforms/errors.hpp"
#include "quatforms/residue.hpp"

using namespace quatforms;

namespace {

Integer ipow(std::int64_t p, int N) { return boost::multiprecision::pow(Integer(p), static_cast<unsigned>(N)); }

Integer mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  return r < 0 ? r + m : r;
}

// Random integer in [0, m) from 64-bit draws.
Integer draw(std::mt19937_64& rng, const Integer& m) {
  Integer v = 0;
  for (int i = 0; i < 5; ++i) v = (v << 64) | Integer(rng());
  return v % m;
}

}  // namespace

TEST_CASE("ring arithmetic agrees with big-integer arithmetic") {
  std::mt19937_64 rng(12345);
  // One, two, three and four limbs, including moduli just under a limb boundary.
  const std::vector<std::pair<std::int64_t, int>> rings = {{3, 1},  {7, 20}, {5, 27},  {11, 18}, {3, 40},
                                                           {7, 45}, {5, 55}, {11, 61}, {3, 160}, {13, 60}};
  for (auto [p, N] : rings) {
    const ResidueRing& ring = ResidueRing::get(p, N);
    const Integer m = ipow(p, N);
    CHECK(ring.modulus() == m);
    for (int trial = 0; trial < 200; ++trial) {
      Integer a = draw(rng, m), b = draw(rng, m);
      Residue x = Residue::from_integer(ring, a), y = Residue::from_integer(ring, b);
      CHECK((x + y).to_integer() == mod(a + b, m));
      CHECK((x - y).to_integer() == mod(a - b, m));
      CHECK((x * y).to_integer() == mod(a * b, m));
      CHECK((-x).to_integer() == mod(-a, m));
      if (a % p != 0) CHECK((x * x.inverse()).to_integer() == 1);
    }
  }
}

TEST_CASE("near-limb moduli do not overflow in addition") {
  // 3^40 < 2^64 < 3^41: sums of two large residues exceed 2^64.
  const ResidueRing& ring = ResidueRing::get(3, 40);
  const Integer m = ring.modulus();
  Residue x = Residue::from_integer(ring, m - 1), y = Residue::from_integer(ring, m - 2);
  CHECK((x + y).to_integer() == m - 3);
  CHECK((y - x).to_integer() == m - 1);
}

TEST_CASE("negative and oversized integers reduce") {
  const ResidueRing& ring = ResidueRing::get(7, 3);
  CHECK(Residue(ring, -1).to_integer() == 342);
  CHECK(Residue::from_integer(ring, Integer(343) * 5 + 2).to_integer() == 2);
}

TEST_CASE("valuation, division by p^v and pow") {
  const ResidueRing& ring = ResidueRing::get(5, 10);
  CHECK(Residue(ring, 0).valuation() == 10);
  CHECK(Residue(ring, 1).valuation() == 0);
  CHECK(Residue(ring, 250).valuation() == 3);
  CHECK(Residue(ring, 250).divide_by_prime_power(3).to_integer() == 2);
  CHECK(Residue(ring, 3).pow(7).to_integer() == 2187);
  CHECK(Residue(ring, 2).pow(0).to_integer() == 1);
  CHECK_FALSE(Residue(ring, 10).is_unit());
  CHECK(Residue(ring, 12).reduce_mod(25) == 12);
}

TEST_CASE("inverse of a non-unit is rejected") {
  const ResidueRing& ring = ResidueRing::get(5, 4);
  CHECK_THROWS(Residue(ring, 5).inverse());
}

TEST_CASE("free residues adopt the ring they meet") {
  const ResidueRing& ring = ResidueRing::get(7, 2);
  Residue one(1);
  Residue x(ring, 48);
  CHECK((x + one).to_integer() == 0);
  CHECK(x * Residue(2) == Residue(ring, 47));
}

TEST_CASE("ring construction validates its parameters") {
  CHECK_THROWS_AS(ResidueRing::get(9, 3), ValidationError);
  CHECK_THROWS_AS(ResidueRing::get(2, 3), ValidationError);
  CHECK_THROWS_AS(ResidueRing::get(7, 0), ValidationError);
  CHECK_THROWS_AS(ResidueRing::get(3, 200), ValidationError);
}

TEST_CASE("is_prime") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}
