#include "quatforms/newton.hpp"

#include <stdexcept>

namespace quatforms {

std::vector<NewtonSlope> newton_slopes(const PadicPoly& f, int reliable_cap) {
  const int n = f.degree();
  if (n < 0) throw std::invalid_argument("newton_slopes of the zero polynomial");
  if (f.coeffs(n) != Residue(1)) throw std::invalid_argument("newton_slopes needs a monic polynomial");
  if (n == 0) return {};
  const int N = f.coeffs(n).ring()->precision();
  if (reliable_cap < 0) reliable_cap = N - 2;

  // Reversed polynomial: point (i, v(a_{n-i})), starting at (0, 0).
  std::vector<std::pair<int, int>> pts;
  for (int i = 0; i <= n; ++i) {
    int v = f.coeffs(n - i).valuation();
    if (v < N) pts.emplace_back(i, v);
  }
  std::vector<std::pair<int, int>> hull;
  for (const auto& q : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // Drop b when it lies on or above the segment a -> q.
      long long cross = static_cast<long long>(b.first - a.first) * (q.second - a.second) -
                        static_cast<long long>(b.second - a.second) * (q.first - a.first);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(q);
  }
  std::vector<NewtonSlope> out;
  for (std::size_t s = 1; s < hull.size(); ++s) {
    int dx = hull[s].first - hull[s - 1].first;
    int dy = hull[s].second - hull[s - 1].second;
    NewtonSlope seg;
    seg.value = Rational(dy, dx);
    seg.multiplicity = dx;
    seg.reliable = seg.value < Rational(reliable_cap);
    out.push_back(seg);
  }
  const int tail = n - hull.back().first;
  if (tail > 0) {
    NewtonSlope seg;
    seg.value = Rational(N - hull.back().second, tail);
    if (!out.empty() && seg.value < out.back().value) seg.value = out.back().value;
    seg.multiplicity = tail;
    seg.reliable = false;
    seg.saturated = true;
    out.push_back(seg);
  }
  return out;
}

std::vector<Rational> expand_slopes(const std::vector<NewtonSlope>& segments) {
  std::vector<Rational> out;
  for (const auto& s : segments)
    for (int i = 0; i < s.multiplicity; ++i) out.push_back(s.value);
  return out;
}

}  // namespace quatforms
