#include <doctest.h>

#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "quatforms/errors.hpp"
#include "quatforms/linalg.hpp"

using namespace quatforms;
using boost::multiprecision::cpp_rational;

namespace {

// Fraction-free Gaussian elimination.
Integer bareiss_det(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// det(xI - A) sampled at x = 0..n and interpolated; lowest degree first.
std::vector<Integer> interpolated_charpoly(const std::vector<std::vector<Integer>>& A) {
  const int n = static_cast<int>(A.size());
  std::vector<cpp_rational> coeffs(n + 1, 0);
  for (int x = 0; x <= n; ++x) {
    auto M = A;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M[i][j] = (i == j ? Integer(x) : Integer(0)) - A[i][j];
    cpp_rational y = n ? cpp_rational(bareiss_det(M)) : cpp_rational(1);
    // Lagrange basis polynomial for node x.
    std::vector<cpp_rational> basis{1};
    cpp_rational denom = 1;
    for (int t = 0; t <= n; ++t) {
      if (t == x) continue;
      std::vector<cpp_rational> next(basis.size() + 1, 0);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        next[i] -= basis[i] * t;
        next[i + 1] += basis[i];
      }
      basis = next;
      denom *= x - t;
    }
    for (int i = 0; i <= n; ++i) coeffs[i] += y * basis[i] / denom;
  }
  std::vector<Integer> out;
  for (const auto& c : coeffs) {
    REQUIRE(denominator(c) == 1);
    out.push_back(numerator(c));
  }
  return out;
}

}  // namespace

TEST_CASE("Berkowitz agrees with determinant interpolation") {
  std::mt19937_64 rng(99);
  for (int n = 1; n <= 7; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<std::vector<Integer>> A(n, std::vector<Integer>(n));
      Matrix<Integer> Ai(n, n);
      Matrix<long long> Al(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          long long v = static_cast<long long>(rng() % 41) - 20;
          A[i][j] = v;
          Ai(i, j) = v;
          Al(i, j) = v;
        }
      const auto want = interpolated_charpoly(A);
      CHECK(charpoly_coefficients(Ai) == want);
      auto small = charpoly_coefficients(Al);
      for (int i = 0; i <= n; ++i) CHECK(Integer(small[i]) == want[i]);

      const ResidueRing& ring = ResidueRing::get(7, 30);
      ResidueMatrix Ar(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Ar(i, j) = Residue::from_integer(ring, A[i][j]);
      PadicPoly f = charpoly(Ar);
      for (int i = 0; i <= n; ++i) CHECK(symmetric_lift(f.coeffs(i)) == want[i]);
    }
}

TEST_CASE("symmetric lift and bound") {
  const ResidueRing& ring = ResidueRing::get(5, 3);
  CHECK(symmetric_lift(Residue(ring, 124)) == -1);
  CHECK(symmetric_lift(Residue(ring, 62)) == 62);
  CHECK(symmetric_lift(Residue(ring, 63)) == -62);
  CHECK(symmetric_lift(Residue(ring, -40), Integer(40)) == -40);
  CHECK_THROWS_AS(symmetric_lift(Residue(ring, 41), Integer(40)), NoLiftInBound);
  CHECK(symmetric_lift_mod(Residue(ring, 124), 2) == -1);
}

TEST_CASE("pivoted solve") {
  std::mt19937_64 rng(5);
  const ResidueRing& ring = ResidueRing::get(5, 12);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 6, r = 3;
    ResidueMatrix A(m, r), X(r, 2);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < r; ++j) A(i, j) = Residue(ring, static_cast<long long>(rng() % 100000));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < 2; ++j) X(i, j) = Residue(ring, static_cast<long long>(rng() % 100000));
    ResidueMatrix B = A * X;
    PivotedSolve s = solve_pivoted(A, B);
    CHECK(min_valuation(A * s.X - B) >= 12 - s.precision_loss);
    if (s.precision_loss == 0) CHECK((s.X.array() == X.array()).all());
  }

  ResidueMatrix D(2, 2);
  D << Residue(ring, 1), Residue(ring, 0), Residue(ring, 0), Residue(ring, 5);
  ResidueMatrix rhs(2, 1);
  rhs << Residue(ring, 3), Residue(ring, 10);
  PivotedSolve s = solve_pivoted(D, rhs);
  CHECK(s.precision_loss == 1);
  CHECK(s.X(1, 0) == Residue(ring, 2));

  rhs(1, 0) = Residue(ring, 1);
  CHECK_THROWS_AS(solve_pivoted(D, rhs), SingularToPrecision);
  ResidueMatrix Z = ResidueMatrix::Constant(2, 2, Residue(ring, 0));
  CHECK_THROWS_AS(solve_pivoted(Z, rhs), SingularToPrecision);
}

TEST_CASE("rank mod p") {
  const ResidueRing& ring = ResidueRing::get(3, 5);
  ResidueMatrix A(3, 2);
  A << Residue(ring, 1), Residue(ring, 2), Residue(ring, 0), Residue(ring, 1), Residue(ring, 1), Residue(ring, 5);
  CHECK(rank_mod_p(A) == 2);
  A.col(1) = A.col(0) * Residue(ring, 2) + A.col(0) * Residue(ring, 3) * Residue(ring, 3);
  CHECK(rank_mod_p(A) == 1);
}

TEST_CASE("integer polynomials") {
  IntPoly f = int_poly_multiply(int_poly_from({-1, 1}), int_poly_from({1, 1}));
  CHECK(f == int_poly_from({-1, 0, 1}));
  CHECK(int_poly_divides(int_poly_from({1, 1}), f));
  CHECK_FALSE(int_poly_divides(int_poly_from({2, 1}), f));
  CHECK(int_poly_remainder(int_poly_from({0, 0, 0, 1}), int_poly_from({-1, 0, 1})) == int_poly_from({0, 1}));
  CHECK(int_poly_to_string(int_poly_from({20448, 0, 288, 0, 1})) == "x^4 + 288x^2 + 20448");
  CHECK(int_poly_to_string(int_poly_from({-5, 1})) == "x - 5");
}
