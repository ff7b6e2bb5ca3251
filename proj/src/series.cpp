#include "quatforms/series.hpp"

#include "quatforms/errors.hpp"

namespace quatforms {

namespace {

const ResidueRing& ring_of(const ResidueVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i).ring()) return *v(i).ring();
  throw std::logic_error("coefficient vector without a ring");
}

const ResidueRing& ring_of(const Mat2& g) {
  for (int i = 0; i < 4; ++i)
    if (g(i / 2, i % 2).ring()) return *g(i / 2, i % 2).ring();
  throw std::logic_error("matrix without a ring");
}

// x / (cz + d) mod z^M, d a unit.
void divide_linear(ResidueVector& x, const Residue& c, const Residue& dinv) {
  Residue prev = x(0) * dinv;
  x(0) = prev;
  for (Eigen::Index m = 1; m < x.size(); ++m) {
    prev = (x(m) - c * prev) * dinv;
    x(m) = prev;
  }
}

// x * (az + b) mod z^size.
void multiply_linear(ResidueVector& x, const Residue& a, const Residue& b) {
  for (Eigen::Index m = x.size() - 1; m > 0; --m) x(m) = x(m) * b + x(m - 1) * a;
  x(0) = x(0) * b;
}

}  // namespace

PadicPoly PadicPoly::from_integers(const ResidueRing& ring, const std::vector<long long>& c) {
  ResidueVector v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Eigen::Index>(i)) = Residue(ring, c[i]);
  return PadicPoly(std::move(v));
}

int PadicPoly::degree() const {
  for (Eigen::Index i = coeffs.size() - 1; i >= 0; --i)
    if (!coeffs(i).is_zero()) return static_cast<int>(i);
  return -1;
}

TruncSeries TruncSeries::zero(const PrecCtx& ctx) {
  return TruncSeries(ResidueVector::Constant(ctx.M, ctx(0)));
}

TruncSeries TruncSeries::monomial(const PrecCtx& ctx, int n, long long c) {
  TruncSeries s = zero(ctx);
  if (n < ctx.M) s.coeffs(n) = ctx(c);
  return s;
}

bool operator==(const PadicPoly& a, const PadicPoly& b) {
  Eigen::Index n = std::max(a.coeffs.size(), b.coeffs.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    Residue x = i < a.coeffs.size() ? a.coeffs(i) : Residue(0);
    Residue y = i < b.coeffs.size() ? b.coeffs(i) : Residue(0);
    if (x != y) return false;
  }
  return true;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  return a.coeffs.size() == b.coeffs.size() && (a.coeffs.array() == b.coeffs.array()).all();
}

PadicPoly poly_multiply(const PadicPoly& a, const PadicPoly& b) {
  if (a.coeffs.size() == 0 || b.coeffs.size() == 0) return PadicPoly();
  const ResidueRing& ring = ring_of(a.coeffs);
  ResidueVector c = ResidueVector::Constant(a.coeffs.size() + b.coeffs.size() - 1, Residue(ring, 0));
  for (Eigen::Index i = 0; i < a.coeffs.size(); ++i)
    for (Eigen::Index j = 0; j < b.coeffs.size(); ++j) c(i + j) += a.coeffs(i) * b.coeffs(j);
  return PadicPoly(std::move(c));
}

PadicPoly poly_remainder(const PadicPoly& a, const PadicPoly& m) {
  int dm = static_cast<int>(m.coeffs.size()) - 1;
  while (dm >= 0 && m.coeffs(dm).is_zero()) --dm;
  if (dm < 0 || m.coeffs(dm) != Residue(1)) throw std::invalid_argument("divisor must be monic");
  ResidueVector r = a.coeffs;
  for (Eigen::Index i = r.size() - 1; i >= dm; --i) {
    Residue q = r(i);
    if (q.is_zero()) continue;
    for (int j = 0; j <= dm; ++j) r(i - dm + j) -= q * m.coeffs(j);
  }
  if (r.size() > dm) r.conservativeResize(std::max(dm, 0));
  return PadicPoly(std::move(r));
}

Residue poly_evaluate(const PadicPoly& f, const Residue& x) {
  Residue acc(0);
  for (Eigen::Index i = f.coeffs.size() - 1; i >= 0; --i) acc = acc * x + f.coeffs(i);
  return acc;
}

PadicPoly poly_derivative(const PadicPoly& f) {
  if (f.coeffs.size() <= 1) return PadicPoly(ResidueVector::Constant(1, Residue(0)));
  ResidueVector d(f.coeffs.size() - 1);
  for (Eigen::Index i = 1; i < f.coeffs.size(); ++i) d(i - 1) = f.coeffs(i) * Residue(static_cast<long long>(i));
  return PadicPoly(std::move(d));
}

TruncSeries series_multiply(const TruncSeries& a, const TruncSeries& b) {
  Eigen::Index M = a.coeffs.size();
  ResidueVector c = ResidueVector::Constant(M, Residue(ring_of(a.coeffs), 0));
  for (Eigen::Index i = 0; i < M; ++i) {
    if (a.coeffs(i).is_zero()) continue;
    for (Eigen::Index j = 0; i + j < M; ++j) c(i + j) += a.coeffs(i) * b.coeffs(j);
  }
  return TruncSeries(std::move(c));
}

TruncSeries series_invert(const TruncSeries& a) {
  if (!a.coeffs(0).ring() || !a.coeffs(0).is_unit())
    throw NonUnitConstantTerm("series constant term is not a unit");
  Eigen::Index M = a.coeffs.size();
  Residue inv0 = a.coeffs(0).inverse();
  ResidueVector b(M);
  b(0) = inv0;
  for (Eigen::Index n = 1; n < M; ++n) {
    Residue s = Residue(*inv0.ring(), 0);
    for (Eigen::Index i = 1; i <= n; ++i) s += a.coeffs(i) * b(n - i);
    b(n) = -s * inv0;
  }
  return TruncSeries(std::move(b));
}

TruncSeries series_compose(const TruncSeries& h, const TruncSeries& mu) {
  Eigen::Index M = h.coeffs.size();
  const ResidueRing& ring = ring_of(h.coeffs);
  TruncSeries acc(ResidueVector::Constant(M, Residue(ring, 0)));
  for (Eigen::Index n = M - 1; n >= 0; --n) {
    acc = series_multiply(acc, mu);
    acc.coeffs(0) += h.coeffs(n);
  }
  return acc;
}

Mat2 make_mat2(const ResidueRing& ring, long long a, long long b, long long c, long long d) {
  Mat2 g;
  g << Residue(ring, a), Residue(ring, b), Residue(ring, c), Residue(ring, d);
  return g;
}

Residue det(const Mat2& g) { return g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0); }

Mat2 adjugate(const Mat2& g) {
  Mat2 a;
  a << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
  return a;
}

Mat2 inverse(const Mat2& g) {
  Residue d = det(g);
  if (!d.is_unit()) throw std::domain_error("matrix determinant is not a unit");
  Residue di = d.inverse();
  Mat2 a = adjugate(g);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) *= di;
  return a;
}

bool in_monoid(const Mat2& g) { return g(1, 0).valuation() >= 1 && g(1, 1).is_unit(); }

ResidueMatrix weight_action_matrix(const Mat2& g, int k, int size, bool classical) {
  const ResidueRing& ring = ring_of(g);
  if (classical && k < 2) throw NegativeWeightOnPolynomial("classical model needs weight k >= 2");
  if (classical && size != k - 1) throw std::invalid_argument("classical block must have k-1 coefficients");
  const Residue &a = g(0, 0), &b = g(0, 1), &c = g(1, 0), &d = g(1, 1);
  ResidueMatrix W = ResidueMatrix::Constant(size, size, Residue(ring, 0));
  if (!d.is_unit()) {
    if (!classical) throw InvalidMonoidElement("weight action needs p | c and d a unit");
    // Polynomial case with d non-unit: (cz+d)^{k-2-n} (az+b)^n directly.
    std::vector<PadicPoly> A(size), C(size);
    A[0] = C[0] = PadicPoly(ResidueVector::Constant(1, Residue(ring, 1)));
    PadicPoly la(ResidueVector(2)), lc(ResidueVector(2));
    la.coeffs << b, a;
    lc.coeffs << d, c;
    for (int i = 1; i < size; ++i) {
      A[i] = poly_multiply(A[i - 1], la);
      C[i] = poly_multiply(C[i - 1], lc);
    }
    for (int n = 0; n < size; ++n) {
      PadicPoly col = poly_multiply(C[size - 1 - n], A[n]);
      for (Eigen::Index m = 0; m < col.coeffs.size() && m < size; ++m) W(m, n) = col.coeffs(m);
    }
    return W;
  }
  if (!classical && c.valuation() < 1) throw InvalidMonoidElement("weight action needs p | c and d a unit");
  Residue dinv = d.inverse();
  ResidueVector col = ResidueVector::Constant(size, Residue(ring, 0));
  col(0) = Residue(ring, 1);
  for (int i = 0; i < k - 2; ++i) multiply_linear(col, c, d);
  for (int i = 0; i < 2 - k; ++i) divide_linear(col, c, dinv);
  for (int n = 0; n < size; ++n) {
    W.col(n) = col;
    multiply_linear(col, a, b);
    divide_linear(col, c, dinv);
  }
  return W;
}

ResidueVector act_on_coefficients(const ResidueVector& h, const Mat2& g, int k, bool classical) {
  const Eigen::Index size = h.size();
  const Residue &a = g(0, 0), &b = g(0, 1), &c = g(1, 0), &d = g(1, 1);
  if (!d.is_unit()) return weight_action_matrix(g, k, static_cast<int>(size), classical) * h;
  if (!classical && c.valuation() < 1) throw InvalidMonoidElement("weight action needs p | c and d a unit");
  if (classical && size != k - 1) throw std::invalid_argument("classical block must have k-1 coefficients");
  const ResidueRing& ring = ring_of(g);
  Residue dinv = d.inverse();
  ResidueVector col = ResidueVector::Constant(size, Residue(ring, 0));
  ResidueVector out = col;
  col(0) = Residue(ring, 1);
  for (int i = 0; i < k - 2; ++i) multiply_linear(col, c, d);
  for (int i = 0; i < 2 - k; ++i) divide_linear(col, c, dinv);
  for (Eigen::Index n = 0; n < size; ++n) {
    if (!h(n).is_zero()) out += h(n) * col;
    if (n + 1 < size) {
      multiply_linear(col, a, b);
      divide_linear(col, c, dinv);
    }
  }
  return out;
}

TruncSeries weight_action(const TruncSeries& h, const Mat2& g, int k) {
  if (!in_monoid(g)) throw InvalidMonoidElement("weight action needs p | c and d a unit");
  return TruncSeries(act_on_coefficients(h.coeffs, g, k, false));
}

PadicPoly weight_action(const PadicPoly& h, const Mat2& g, int k) {
  if (!in_monoid(g)) throw InvalidMonoidElement("weight action needs p | c and d a unit");
  return weight_action_any(h, g, k);
}

PadicPoly weight_action_any(const PadicPoly& h, const Mat2& g, int k) {
  if (k < 2) throw NegativeWeightOnPolynomial("classical model needs weight k >= 2");
  if (h.coeffs.size() > k - 1) throw std::invalid_argument("polynomial degree exceeds k-2");
  ResidueVector v = ResidueVector::Constant(k - 1, Residue(ring_of(g), 0));
  v.head(h.coeffs.size()) = h.coeffs;
  return PadicPoly(weight_action_matrix(g, k, k - 1, true) * v);
}

}  // namespace quatforms
