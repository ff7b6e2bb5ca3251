#include "quatforms/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "quatforms/cache.hpp"
#include "quatforms/errors.hpp"

namespace quatforms {

Quat::Quat(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) : x{a, b, c, d} {
  const auto par = a & 1;
  if ((b & 1) != par || (c & 1) != par || (d & 1) != par)
    throw std::invalid_argument("doubled coordinates must share a parity");
}

Quat operator*(const Quat& p, const Quat& q) {
  const auto& a = p.x;
  const auto& b = q.x;
  std::array<std::int64_t, 4> c{
      a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
      a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
      a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
      a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
  return Quat(c[0] / 2, c[1] / 2, c[2] / 2, c[3] / 2);
}

Quat operator+(const Quat& a, const Quat& b) {
  return Quat(a.x[0] + b.x[0], a.x[1] + b.x[1], a.x[2] + b.x[2], a.x[3] + b.x[3]);
}

Quat operator-(const Quat& a, const Quat& b) {
  return Quat(a.x[0] - b.x[0], a.x[1] - b.x[1], a.x[2] - b.x[2], a.x[3] - b.x[3]);
}

Quat exact_divide(const Quat& q, std::int64_t d) {
  for (auto v : q.x)
    if (v % d) throw std::invalid_argument("quaternion not divisible");
  return Quat(q.x[0] / d, q.x[1] / d, q.x[2] / d, q.x[3] / d);
}

const std::vector<Quat>& hurwitz_units() {
  static const std::vector<Quat> units = enumerate_norm(1);
  return units;
}

std::vector<Quat> unit_subgroup(int e) {
  const Quat one(2, 0, 0, 0);
  std::vector<Quat> out;
  for (const Quat& u : hurwitz_units()) {
    std::int64_t n = (u - one).norm();
    int v = 0;
    if (n == 0)
      v = std::numeric_limits<int>::max();
    else
      while (n % 2 == 0) n /= 2, ++v;
    if (v >= e) out.push_back(u);
  }
  return out;
}

std::vector<Quat> enumerate_norm(std::int64_t n) {
  if (n < 1) throw ValidationError("enumerate_norm needs n >= 1");
  const std::int64_t target = 4 * n;
  const auto B = static_cast<std::int64_t>(std::ceil(2 * std::sqrt(static_cast<double>(n))));
  std::vector<Quat> out;
  for (std::int64_t a = -B; a <= B; ++a)
    for (std::int64_t b = -B; b <= B; ++b) {
      if ((a - b) & 1) continue;
      for (std::int64_t c = -B; c <= B; ++c) {
        if ((a - c) & 1) continue;
        std::int64_t rest = target - a * a - b * b - c * c;
        if (rest < 0) continue;
        auto d = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
        if (d * d != rest || ((a - d) & 1)) continue;
        out.emplace_back(a, b, c, -d);
        if (d) out.emplace_back(a, b, c, d);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

NormCache& NormCache::global() {
  static NormCache cache;
  return cache;
}

void NormCache::set_directory(std::optional<std::filesystem::path> dir) {
  std::lock_guard<std::mutex> lock(mu_);
  dir_ = std::move(dir);
}

const std::vector<Quat>& NormCache::get(std::int64_t n) {
  std::lock_guard<std::mutex> lock(mu_);
  if (auto it = table_.find(n); it != table_.end()) return it->second;
  std::vector<Quat> elems;
  std::filesystem::path file;
  if (dir_) {
    file = *dir_ / ("norm_" + std::to_string(n) + ".json");
    std::ifstream in(file);
    if (in) {
      try {
        for (const auto& t : nlohmann::json::parse(in))
          elems.emplace_back(t.at(0).get<std::int64_t>(), t.at(1).get<std::int64_t>(),
                             t.at(2).get<std::int64_t>(), t.at(3).get<std::int64_t>());
      } catch (const std::exception&) {
        elems.clear();
      }
      bool ok = !elems.empty() && std::all_of(elems.begin(), elems.end(), [n](const Quat& q) { return q.norm() == n; });
      if (!ok) elems.clear();
    }
  }
  if (elems.empty()) {
    elems = enumerate_norm(n);
    if (dir_) {
      nlohmann::json arr = nlohmann::json::array();
      for (const Quat& q : elems) arr.push_back({q.x[0], q.x[1], q.x[2], q.x[3]});
      try {
        atomic_write(file, arr.dump());
      } catch (const std::exception&) {
      }
    }
  }
  return table_.emplace(n, std::move(elems)).first->second;
}

std::vector<std::vector<Quat>> left_unit_orbits(std::int64_t n) {
  const auto& elems = NormCache::global().get(n);
  std::set<Quat> seen;
  std::vector<std::vector<Quat>> orbits;
  for (const Quat& q : elems) {
    if (seen.count(q)) continue;
    std::vector<Quat> orbit;
    for (const Quat& u : hurwitz_units()) orbit.push_back(u * q);
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    seen.insert(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::pair<Residue, Residue> solve_ab(const ResidueRing& ring) {
  const std::int64_t p = ring.prime();
  for (std::int64_t a = 1; a < p; ++a)
    for (std::int64_t b = p - 1; b >= 0; --b) {
      if ((a * a + b * b + 1) % p) continue;
      Residue ra(ring, a), rb(ring, b), one(ring, 1), two(ring, 2);
      // Newton on whichever coordinate is a unit.
      Residue& x = b ? rb : ra;
      for (int prec = 1; prec < ring.precision(); prec *= 2) {
        Residue f = ra * ra + rb * rb + one;
        x = x - f * (two * x).inverse();
      }
      return {ra, rb};
    }
  throw std::logic_error("no solution of a^2 + b^2 = -1 mod p");
}

Splitting::Splitting(const ResidueRing& ring) : ring_(&ring) {
  std::tie(a_, b_) = solve_ab(ring);
  half_ = Residue(ring, 2).inverse();
  I_ << a_, b_, b_, -a_;
  J_ = make_mat2(ring, 0, 1, -1, 0);
  K_ = I_ * J_;
}

Mat2 Splitting::operator()(const Quat& q) const {
  Mat2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      Residue v = Residue(*ring_, q.x[1]) * I_(r, c) + Residue(*ring_, q.x[2]) * J_(r, c) +
                  Residue(*ring_, q.x[3]) * K_(r, c);
      if (r == c) v += Residue(*ring_, q.x[0]);
      m(r, c) = v * half_;
    }
  return m;
}

}  // namespace quatforms
