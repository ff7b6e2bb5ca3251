#include "quatforms/linalg.hpp"

#include <sstream>

#include "quatforms/errors.hpp"

namespace quatforms {

PadicPoly charpoly(const ResidueMatrix& A) {
  std::vector<Residue> c = charpoly_coefficients(A);
  const ResidueRing* ring = nullptr;
  for (Eigen::Index i = 0; i < A.size() && !ring; ++i) ring = A(i).ring();
  ResidueVector v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Eigen::Index>(i)) = ring ? c[i].bound_to(*ring) : c[i];
  return PadicPoly(std::move(v));
}

Integer symmetric_lift(const Residue& r) {
  Integer v = r.to_integer();
  if (!r.ring()) return v;
  const Integer& m = r.ring()->modulus();
  if (2 * v > m) v -= m;
  return v;
}

Integer symmetric_lift_mod(const Residue& r, int digits) {
  if (!r.ring()) throw std::invalid_argument("symmetric_lift_mod needs a ring");
  const Integer m = boost::multiprecision::pow(Integer(r.ring()->prime()), static_cast<unsigned>(std::max(digits, 0)));
  Integer v = r.to_integer() % m;
  if (2 * v > m) v -= m;
  return v;
}

Integer symmetric_lift(const Residue& r, const Integer& bound) {
  Integer v = symmetric_lift(r);
  if (abs(v) > bound) throw NoLiftInBound("lift " + v.str() + " exceeds bound " + bound.str());
  return v;
}

int min_valuation(const ResidueMatrix& M) {
  int best = std::numeric_limits<int>::max();
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) best = std::min(best, M(i, j).valuation());
  return best;
}

PivotedSolve solve_pivoted(const ResidueMatrix& A, const ResidueMatrix& B) {
  const Eigen::Index m = A.rows(), r = A.cols(), s = B.cols();
  if (B.rows() != m) throw std::invalid_argument("solve_pivoted: row mismatch");
  if (m < r) throw std::invalid_argument("solve_pivoted: more unknowns than equations");
  ResidueMatrix a = A, b = B;
  std::vector<Eigen::Index> colperm(r);
  for (Eigen::Index j = 0; j < r; ++j) colperm[j] = j;
  std::vector<int> pivval(r);
  PivotedSolve out;
  for (Eigen::Index t = 0; t < r; ++t) {
    int best = std::numeric_limits<int>::max();
    Eigen::Index bi = t, bj = t;
    for (Eigen::Index i = t; i < m; ++i)
      for (Eigen::Index j = t; j < r; ++j) {
        int v = a(i, j).valuation();
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    const int N = a(bi, bj).ring() ? a(bi, bj).ring()->precision() : 0;
    if (best >= N) throw SingularToPrecision("no nonzero pivot left at step " + std::to_string(t));
    a.row(t).swap(a.row(bi));
    b.row(t).swap(b.row(bi));
    a.col(t).swap(a.col(bj));
    std::swap(colperm[t], colperm[bj]);
    pivval[t] = best;
    out.precision_loss += best;
    Residue unit_inv = a(t, t).divide_by_prime_power(best).inverse();
    for (Eigen::Index i = t + 1; i < m; ++i) {
      if (a(i, t).is_zero()) continue;
      Residue f = a(i, t).divide_by_prime_power(best) * unit_inv;
      a.row(i) -= f * a.row(t);
      b.row(i) -= f * b.row(t);
    }
  }
  ResidueMatrix x(r, s);
  for (Eigen::Index t = r - 1; t >= 0; --t) {
    Residue unit_inv = a(t, t).divide_by_prime_power(pivval[t]).inverse();
    for (Eigen::Index c = 0; c < s; ++c) {
      Residue num = b(t, c);
      for (Eigen::Index j = t + 1; j < r; ++j) num -= a(t, j) * x(j, c);
      if (num.valuation() < pivval[t]) throw SingularToPrecision("right-hand side not in the column span");
      x(t, c) = num.divide_by_prime_power(pivval[t]) * unit_inv;
    }
  }
  out.X.resize(r, s);
  for (Eigen::Index t = 0; t < r; ++t) out.X.row(colperm[t]) = x.row(t);
  return out;
}

int rank_mod_p(const ResidueMatrix& A) {
  ResidueMatrix a = A;
  const Eigen::Index m = a.rows(), n = a.cols();
  int rank = 0;
  for (Eigen::Index c = 0; c < n && rank < m; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = rank; i < m; ++i)
      if (a(i, c).is_unit()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    a.row(rank).swap(a.row(piv));
    Residue inv = a(rank, c).inverse();
    for (Eigen::Index i = rank + 1; i < m; ++i) a.row(i) -= (a(i, c) * inv) * a.row(rank);
    ++rank;
  }
  return rank;
}

IntPoly int_poly_from(const std::vector<long long>& c) {
  IntPoly f;
  for (long long v : c) f.emplace_back(v);
  return f;
}

IntPoly int_poly_multiply(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly c(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

IntPoly int_poly_remainder(const IntPoly& a, const IntPoly& m) {
  if (m.empty() || m.back() != 1) throw std::invalid_argument("divisor must be monic");
  const std::size_t dm = m.size() - 1;
  IntPoly r = a;
  for (std::size_t i = r.size(); i-- > dm;) {
    Integer q = r[i];
    if (q == 0) continue;
    for (std::size_t j = 0; j <= dm; ++j) r[i - dm + j] -= q * m[j];
  }
  if (r.size() > dm) r.resize(dm);
  return r;
}

bool int_poly_divides(const IntPoly& m, const IntPoly& a) {
  for (const Integer& c : int_poly_remainder(a, m))
    if (c != 0) return false;
  return true;
}

std::string int_poly_to_string(const IntPoly& f) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    Integer c = f[i];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << mag;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace quatforms
