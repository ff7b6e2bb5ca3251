#include <doctest.h>

#include <random>

#include "quatforms/class_set.hpp"
#include "quatforms/errors.hpp"

using namespace quatforms;

namespace {

std::int64_t ipow(std::int64_t p, int n) {
  std::int64_t r = 1;
  while (n-- > 0) r *= p;
  return r;
}

// Orbit count by Burnside's lemma, from the splitting images of the
// acting units, with X built directly here.
int burnside_count(const LevelSpec& level) {
  const std::int64_t P = ipow(level.p, level.n);
  const ResidueRing& ring = ResidueRing::get(level.p, level.n + 1);
  Splitting split(ring);
  const auto& Y = TwoAdicQuotient::get(level.e);
  const bool diagonal = level.recipe == GroupRecipe::Diagonal;
  const std::vector<Quat> G = diagonal ? hurwitz_units() : unit_subgroup(level.e);
  std::vector<std::array<std::int64_t, 2>> X;
  for (std::int64_t a = 0; a < P; ++a)
    for (std::int64_t b = 0; b < P; ++b) {
      if (a % level.p == 0 && b % level.p == 0) continue;
      X.push_back({a, b});
    }
  long long fixed_total = 0;
  for (const Quat& g : G) {
    Mat2 m = split(g);
    std::int64_t m00 = m(0, 0).reduce_mod(P), m01 = m(0, 1).reduce_mod(P), m10 = m(1, 0).reduce_mod(P),
                 m11 = m(1, 1).reduce_mod(P);
    long long fx = 0;
    for (auto [a, b] : X) {
      std::int64_t x = (m00 * a + m01 * b) % P, y = (m10 * a + m11 * b) % P;
      if (level.style == GammaStyle::UnitColumn) {
        fx += x == a && y == b;
      } else {
        // Fixed line: (x, y) = t (a, b) for a unit t; count lines, not columns.
        fx += (x * b - y * a) % P == 0;
      }
    }
    if (level.style == GammaStyle::Projective) fx /= (P / level.p) * (level.p - 1);
    long long fy = 1;
    if (diagonal) {
      fy = 0;
      const int k = static_cast<int>(std::lower_bound(hurwitz_units().begin(), hurwitz_units().end(), g) -
                                     hurwitz_units().begin());
      for (int y = 0; y < Y.size(); ++y) fy += Y.multiply(Y.unit_index(k), y) == y;
    }
    fixed_total += fx * fy;
  }
  REQUIRE(fixed_total % static_cast<long long>(G.size()) == 0);
  return static_cast<int>(fixed_total / static_cast<long long>(G.size()));
}

struct Expected {
  LevelSpec level;
  int size;
};

// Frozen from burnside_count.
const std::vector<Expected> kSizes = {
    {{7, 1, 0}, 2},
    {{7, 1, 1}, 6},
    {{5, 2, 0}, 25},
    {{13, 1, 2}, 84},
    {{11, 1, 1, GammaStyle::Projective, Character::Quadratic}, 3},
    {{11, 1, 0, GammaStyle::Projective}, 1},
    {{5, 1, 3, GammaStyle::UnitColumn, Character::Trivial, GroupRecipe::Kernel}, 24},
    {{5, 1, 3}, 48},
};

}  // namespace

TEST_CASE("class set sizes agree with Burnside counts") {
  for (const auto& [level, size] : kSizes) {
    CAPTURE(level.p);
    CAPTURE(level.e);
    ClassSet cs(level, PrecCtx{level.p, level.n + 2});
    CHECK(burnside_count(level) == size);
    CHECK(cs.size() == size);
  }
}

TEST_CASE("orbit-stabilizer accounting") {
  for (const auto& [level, size] : kSizes) {
    ClassSet cs(level, PrecCtx{level.p, level.n + 2});
    long long total = 0;
    for (int j = 0; j < cs.size(); ++j) {
      CHECK(static_cast<int>(cs.stabilizer(j).size()) == cs.stabilizer_orders()[j]);
      total += static_cast<long long>(cs.group().size()) / cs.stabilizer_orders()[j];
    }
    CHECK(total == static_cast<long long>(cs.x_size()) * cs.y_size());
  }
}

TEST_CASE("U_1(7) separates (0,1) and (1,4)") {
  ClassSet cs(LevelSpec{7, 1, 0}, PrecCtx{7, 3});
  REQUIRE(cs.size() == 2);
  const ResidueRing& ring = cs.ctx().ring();
  CHECK(cs.decompose(lift_rep({0, 1}, ring), 0).cls != cs.decompose(lift_rep({1, 4}, ring), 0).cls);
}

TEST_CASE("decomposition recovers the class and the factorization") {
  std::mt19937_64 rng(8);
  for (const auto& [level, size] : kSizes) {
    ClassSet cs(level, PrecCtx{level.p, level.n + 3});
    const ResidueRing& ring = cs.ctx().ring();
    const std::int64_t P = level.modulus();
    const auto& Y = TwoAdicQuotient::get(level.e);
    for (int t = 0; t < 30; ++t) {
      const int j = static_cast<int>(rng() % cs.size());
      const int k = static_cast<int>(rng() % cs.group().size());
      const Quat& gamma = cs.group()[k];
      // u = (a b; P c d) with d = 1 mod P for the unit-column style.
      long long a = 1 + level.p * static_cast<long long>(rng() % 50), b = static_cast<long long>(rng() % 1000);
      long long c = static_cast<long long>(rng() % 1000);
      long long d = level.style == GammaStyle::UnitColumn ? 1 + P * static_cast<long long>(rng() % 50)
                                                         : 1 + static_cast<long long>(rng() % (level.p - 1));
      Mat2 u = make_mat2(ring, a, b, P * c, d);
      Mat2 g = cs.splitting()(gamma) * cs.lifts()[j] * u;
      int y = 0;
      if (level.recipe == GroupRecipe::Diagonal) {
        const int ku = static_cast<int>(std::lower_bound(hurwitz_units().begin(), hurwitz_units().end(), gamma) -
                                        hurwitz_units().begin());
        y = Y.multiply(Y.unit_index(ku), cs.reps()[j].y);
      }
      Decomposition dec = cs.decompose(g, y);
      CHECK(dec.cls == j);
      CHECK(cs.splitting()(dec.gamma) * cs.lifts()[dec.cls] * dec.u == g);
    }
  }
}

TEST_CASE("lifts have determinant one and the given first column") {
  const ResidueRing& ring = ResidueRing::get(7, 4);
  for (std::array<std::int64_t, 2> s : std::vector<std::array<std::int64_t, 2>>{{0, 1}, {1, 4}, {7, 3}, {3, 0}, {14, 5}}) {
    Mat2 L = lift_rep(s, ring);
    CHECK(det(L) == Residue(ring, 1));
    CHECK(L(0, 0) == Residue(ring, s[0]));
    CHECK(L(1, 0) == Residue(ring, s[1]));
  }
  CHECK_THROWS_AS(lift_rep({7, 14}, ring), NoUnitCoordinate);
}

TEST_CASE("level validation") {
  CHECK_THROWS_AS(LevelSpec({9, 1, 0}).validate(), ValidationError);
  CHECK_THROWS_AS(LevelSpec({7, 0, 0}).validate(), ValidationError);
  CHECK_THROWS_AS(LevelSpec({7, 1, 5}).validate(), ValidationError);
  CHECK_THROWS_AS((LevelSpec{7, 1, 0, GammaStyle::UnitColumn, Character::Quadratic}).validate(), ValidationError);
  CHECK_THROWS_AS(LevelSpec({7, 7, 0}).validate(), ValidationError);
  CHECK_THROWS_AS(ClassSet(LevelSpec{7, 2, 0}, PrecCtx{7, 2}), PrecisionInsufficient);
  CHECK(parse_gamma_style("projective") == GammaStyle::Projective);
  CHECK_THROWS_AS(parse_recipe("other"), ValidationError);
}

TEST_CASE("gamma-x columns") {
  CHECK(build_gx(7, 1, GammaStyle::UnitColumn).size() == 48);
  CHECK(build_gx(7, 1, GammaStyle::Projective).size() == 8);
  CHECK(build_gx(5, 2, GammaStyle::UnitColumn).size() == 600);
  CHECK(build_gx(5, 2, GammaStyle::Projective).size() == 30);
}
