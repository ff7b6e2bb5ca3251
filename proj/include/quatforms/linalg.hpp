#pragma once

#include <vector>

#include "quatforms/series.hpp"

namespace quatforms {

/// Integer polynomial, coefficients lowest degree first.
using IntPoly = std::vector<Integer>;

/// det(xI - A) by Berkowitz's division-free recursion; coefficients lowest
/// degree first, monic.  Works over any commutative ring scalar.
template <typename Scalar>
std::vector<Scalar> charpoly_coefficients(const Matrix<Scalar>& A) {
  const Eigen::Index n = A.rows();
  // vec holds det(xI - A_r) for the leading r x r block, highest degree first.
  std::vector<Scalar> vec{Scalar(1)};
  for (Eigen::Index r = 0; r < n; ++r) {
    std::vector<Scalar> col(r + 2, Scalar(0));
    col[0] = Scalar(1);
    col[1] = -A(r, r);
    if (r > 0) {
      Vector<Scalar> s = A.col(r).head(r);
      const auto R = A.row(r).head(r);
      const auto Ar = A.topLeftCorner(r, r);
      for (Eigen::Index i = 0; i < r; ++i) {
        Scalar dot = Scalar(0);
        for (Eigen::Index t = 0; t < r; ++t) dot += R(t) * s(t);
        col[i + 2] = -dot;
        if (i + 1 < r) {
          Vector<Scalar> next(r);
          for (Eigen::Index a = 0; a < r; ++a) {
            Scalar acc = Scalar(0);
            for (Eigen::Index b = 0; b < r; ++b) acc += Ar(a, b) * s(b);
            next(a) = acc;
          }
          s = std::move(next);
        }
      }
    }
    std::vector<Scalar> next(r + 2, Scalar(0));
    for (Eigen::Index i = 0; i < r + 2; ++i)
      for (Eigen::Index j = 0; j <= std::min<Eigen::Index>(i, r); ++j) next[i] += col[i - j] * vec[j];
    vec = std::move(next);
  }
  return std::vector<Scalar>(vec.rbegin(), vec.rend());
}

PadicPoly charpoly(const ResidueMatrix& A);

/// Representative of r in (-p^N/2, p^N/2]; NoLiftInBound if |lift| > bound.
Integer symmetric_lift(const Residue& r, const Integer& bound);
Integer symmetric_lift(const Residue& r);
/// Symmetric representative of r mod p^digits.
Integer symmetric_lift_mod(const Residue& r, int digits);

struct PivotedSolve {
  ResidueMatrix X;
  int precision_loss = 0;
};

/// Solves A X = B for A of full column rank, choosing pivots of minimal
/// valuation.  The loss is the total valuation of the pivots used; rows
/// beyond the pivot rows are not checked.
PivotedSolve solve_pivoted(const ResidueMatrix& A, const ResidueMatrix& B);

/// Minimal valuation over entries of M (N when M vanishes).
int min_valuation(const ResidueMatrix& M);

/// Number of columns of A that stay independent modulo p.
int rank_mod_p(const ResidueMatrix& A);

IntPoly int_poly_multiply(const IntPoly& a, const IntPoly& b);
/// Remainder modulo a monic integer polynomial.
IntPoly int_poly_remainder(const IntPoly& a, const IntPoly& m);
bool int_poly_divides(const IntPoly& m, const IntPoly& a);
IntPoly int_poly_from(const std::vector<long long>& c);
std::string int_poly_to_string(const IntPoly& f);

}  // namespace quatforms
