#pragma once

#include <vector>

#include "quatforms/residue.hpp"

namespace quatforms {

/// Polynomial over Z/p^N, coefficients lowest degree first.
struct PadicPoly {
  ResidueVector coeffs;

  PadicPoly() = default;
  explicit PadicPoly(ResidueVector c) : coeffs(std::move(c)) {}
  static PadicPoly from_integers(const ResidueRing& ring, const std::vector<long long>& c);

  /// Index of the highest nonzero coefficient, -1 for the zero polynomial.
  int degree() const;
  Residue operator[](int i) const { return coeffs(i); }
};

/// Power series truncated at z^M; always exactly M coefficients.
struct TruncSeries {
  ResidueVector coeffs;

  TruncSeries() = default;
  explicit TruncSeries(ResidueVector c) : coeffs(std::move(c)) {}
  static TruncSeries zero(const PrecCtx& ctx);
  static TruncSeries monomial(const PrecCtx& ctx, int n, long long c = 1);

  int length() const { return static_cast<int>(coeffs.size()); }
  Residue operator[](int i) const { return coeffs(i); }
};

bool operator==(const PadicPoly& a, const PadicPoly& b);
bool operator==(const TruncSeries& a, const TruncSeries& b);

PadicPoly poly_multiply(const PadicPoly& a, const PadicPoly& b);
/// Remainder of a modulo the monic polynomial m.
PadicPoly poly_remainder(const PadicPoly& a, const PadicPoly& m);
Residue poly_evaluate(const PadicPoly& f, const Residue& x);
PadicPoly poly_derivative(const PadicPoly& f);

TruncSeries series_multiply(const TruncSeries& a, const TruncSeries& b);
/// Multiplicative inverse; throws NonUnitConstantTerm.
TruncSeries series_invert(const TruncSeries& a);
/// h(mu(z)) mod z^M by Horner's rule.
TruncSeries series_compose(const TruncSeries& h, const TruncSeries& mu);

Mat2 make_mat2(const ResidueRing& ring, long long a, long long b, long long c, long long d);
Residue det(const Mat2& g);
Mat2 adjugate(const Mat2& g);
/// Inverse of a matrix with unit determinant.
Mat2 inverse(const Mat2& g);
/// The monoid of matrices with p | c and d a unit.
bool in_monoid(const Mat2& g);

/// Weight-k right action (h|g)(z) = (cz+d)^{k-2} h((az+b)/(cz+d)).
/// Throws InvalidMonoidElement unless in_monoid(g).
TruncSeries weight_action(const TruncSeries& h, const Mat2& g, int k);
/// Classical action on polynomials of degree <= k-2; requires k >= 2.
PadicPoly weight_action(const PadicPoly& h, const Mat2& g, int k);
/// Classical action without the monoid condition (any g).
PadicPoly weight_action_any(const PadicPoly& h, const Mat2& g, int k);

/// Matrix of h -> h|g on the monomial basis z^0..z^{size-1}; column n is
/// the image of z^n.  The classical model (size k-1) accepts any g; the
/// series model requires in_monoid(g).
ResidueMatrix weight_action_matrix(const Mat2& g, int k, int size, bool classical);

/// h|g on a coefficient vector without forming the matrix; O(size^2).
ResidueVector act_on_coefficients(const ResidueVector& h, const Mat2& g, int k, bool classical);

}  // namespace quatforms
