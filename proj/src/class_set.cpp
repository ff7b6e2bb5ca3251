#include "quatforms/class_set.hpp"

#include <algorithm>
#include <set>

#include "quatforms/errors.hpp"

namespace quatforms {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1) {
    std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_tuple(a1, g - q * a1);
    std::tie(x, x1) = std::make_tuple(x1, x - q * x1);
  }
  if (g != 1) throw std::domain_error("not invertible");
  return mod(x, m);
}

std::array<std::int64_t, 2> normalize_line(std::int64_t x, std::int64_t y, std::int64_t p, std::int64_t P) {
  x = mod(x, P);
  y = mod(y, P);
  if (x % p) return {1, static_cast<std::int64_t>(static_cast<__int128>(y) * inverse_mod(x, P) % P)};
  if (y % p) return {static_cast<std::int64_t>(static_cast<__int128>(x) * inverse_mod(y, P) % P), 1};
  return {-1, -1};
}

}  // namespace

void LevelSpec::validate() const {
  if (p < 3 || !is_prime(p)) throw ValidationError("p must be an odd prime");
  if (n < 1) throw ValidationError("level exponent n must be >= 1");
  if (e < 0 || e > 4) throw ValidationError("2-adic exponent e must lie in [0, 4]");
  if (character == Character::Quadratic && style != GammaStyle::Projective)
    throw ValidationError("a nebentypus needs the projective gamma style");
  std::int64_t P = 1;
  for (int i = 0; i < n; ++i) {
    P *= p;
    if (P > 100000) throw ValidationError("p^n too large for explicit class sets");
  }
}

std::int64_t LevelSpec::modulus() const {
  std::int64_t P = 1;
  for (int i = 0; i < n; ++i) P *= p;
  return P;
}

std::string to_string(GammaStyle s) { return s == GammaStyle::UnitColumn ? "unit-column" : "projective"; }
std::string to_string(Character c) { return c == Character::Trivial ? "trivial" : "quadratic"; }
std::string to_string(GroupRecipe r) { return r == GroupRecipe::Diagonal ? "diagonal" : "kernel"; }

GammaStyle parse_gamma_style(const std::string& s) {
  if (s == "unit-column") return GammaStyle::UnitColumn;
  if (s == "projective") return GammaStyle::Projective;
  throw ValidationError("unknown gamma style '" + s + "'");
}

Character parse_character(const std::string& s) {
  if (s == "trivial") return Character::Trivial;
  if (s == "quadratic") return Character::Quadratic;
  throw ValidationError("unknown character '" + s + "'");
}

GroupRecipe parse_recipe(const std::string& s) {
  if (s == "diagonal") return GroupRecipe::Diagonal;
  if (s == "kernel") return GroupRecipe::Kernel;
  throw ValidationError("unknown group recipe '" + s + "'");
}

std::vector<std::array<std::int64_t, 2>> build_gx(std::int64_t p, int n, GammaStyle style) {
  LevelSpec level{p, n};
  level.validate();
  const std::int64_t P = level.modulus();
  std::vector<std::array<std::int64_t, 2>> out;
  if (style == GammaStyle::UnitColumn) {
    for (std::int64_t x = 0; x < P; ++x)
      for (std::int64_t y = 0; y < P; ++y)
        if (x % p || y % p) out.push_back({x, y});
  } else {
    for (std::int64_t y = 0; y < P; ++y) out.push_back({1, y});
    for (std::int64_t x = 0; x < P; x += p) out.push_back({x, 1});
    std::sort(out.begin(), out.end());
  }
  return out;
}

Mat2 lift_rep(const std::array<std::int64_t, 2>& s, const ResidueRing& ring) {
  Residue x(ring, s[0]), y(ring, s[1]);
  Mat2 g;
  if (x.is_unit())
    g << x, Residue(ring, 0), y, x.inverse();
  else if (y.is_unit())
    g << x, -y.inverse(), y, Residue(ring, 0);
  else
    throw NoUnitCoordinate("column has no unit coordinate");
  return g;
}

ClassSet::ClassSet(const LevelSpec& level, const PrecCtx& ctx) : level_(level), ctx_(ctx), split_(ctx.ring()) {
  level_.validate();
  if (ctx.p != level.p) throw ValidationError("precision context prime differs from the level prime");
  if (ctx.N <= level.n) throw PrecisionInsufficient("precision N must exceed the level exponent n");
  const std::int64_t p = level.p;
  P_ = level.modulus();

  group_ = level.recipe == GroupRecipe::Diagonal ? hurwitz_units() : unit_subgroup(level.e);
  const auto& Y = TwoAdicQuotient::get(level.e);
  ysize_ = level.recipe == GroupRecipe::Diagonal ? Y.size() : 1;
  const auto& units = hurwitz_units();
  std::set<int> images;
  for (const Quat& g : group_) {
    Mat2 m = split_(g);
    group_mod_.push_back({static_cast<std::int64_t>(m(0, 0).reduce_mod(P_)), static_cast<std::int64_t>(m(0, 1).reduce_mod(P_)),
                          static_cast<std::int64_t>(m(1, 0).reduce_mod(P_)), static_cast<std::int64_t>(m(1, 1).reduce_mod(P_))});
    int k = static_cast<int>(std::lower_bound(units.begin(), units.end(), g) - units.begin());
    group_y_.push_back(level.recipe == GroupRecipe::Diagonal ? Y.unit_index(k) : 0);
    images.insert(group_y_.back());
  }
  y_transitive_ = static_cast<int>(images.size()) == ysize_;

  xs_ = build_gx(p, level.n, level.style);
  xpos_.assign(static_cast<std::size_t>(P_ * P_), -1);
  for (std::size_t i = 0; i < xs_.size(); ++i) xpos_[grid(xs_[i])] = static_cast<int>(i);

  const std::size_t nstates = xs_.size() * ysize_;
  orbit_.assign(nstates, -1);
  witness_.assign(nstates, -1);
  for (std::size_t state = 0; state < nstates; ++state) {
    if (orbit_[state] >= 0) continue;
    const int j = size();
    const auto& s = xs_[state / ysize_];
    const int y = static_cast<int>(state % ysize_);
    int stab = 0;
    for (std::size_t k = 0; k < group_.size(); ++k) {
      auto v = act(static_cast<int>(k), s);
      int yy = level.recipe == GroupRecipe::Diagonal ? Y.multiply(group_y_[k], y) : 0;
      std::size_t t = static_cast<std::size_t>(xpos_[grid(v)]) * ysize_ + yy;
      if (t == state) ++stab;
      if (orbit_[t] < 0) {
        orbit_[t] = j;
        witness_[t] = static_cast<int>(k);
      }
    }
    reps_.push_back({s, y});
    stab_.push_back(stab);
    lifts_.push_back(lift_rep(s, ctx.ring()));
  }
}

std::array<std::int64_t, 2> ClassSet::act(int k, const std::array<std::int64_t, 2>& v) const {
  const auto& m = group_mod_[k];
  std::int64_t x = static_cast<std::int64_t>((static_cast<__int128>(m[0]) * v[0] + static_cast<__int128>(m[1]) * v[1]) % P_);
  std::int64_t y = static_cast<std::int64_t>((static_cast<__int128>(m[2]) * v[0] + static_cast<__int128>(m[3]) * v[1]) % P_);
  if (level_.style == GammaStyle::Projective) return normalize_line(x, y, level_.p, P_);
  return {x, y};
}

int ClassSet::x_index(const Mat2& g) const {
  std::array<std::int64_t, 2> v;
  if (level_.style == GammaStyle::UnitColumn) {
    Residue dinv = det(g).inverse();
    v = {static_cast<std::int64_t>((g(0, 0) * dinv).reduce_mod(P_)), static_cast<std::int64_t>((g(1, 0) * dinv).reduce_mod(P_))};
  } else {
    v = normalize_line(static_cast<std::int64_t>(g(0, 0).reduce_mod(P_)), static_cast<std::int64_t>(g(1, 0).reduce_mod(P_)),
                       level_.p, P_);
  }
  if (v[0] < 0 || xpos_[grid(v)] < 0) throw DecompositionFailed("first column is not primitive");
  return xpos_[grid(v)];
}

int ClassSet::y_index(const Quat& g2) const {
  if (level_.recipe == GroupRecipe::Kernel) return 0;
  return TwoAdicQuotient::get(level_.e).index_of(g2);
}

Decomposition ClassSet::decompose(const Mat2& gp, int y) const {
  if (!det(gp).is_unit()) throw DecompositionFailed("local component is not invertible mod p");
  const std::size_t state = static_cast<std::size_t>(x_index(gp)) * ysize_ + y;
  Decomposition d;
  d.cls = orbit_[state];
  d.gamma = group_[witness_[state]];
  d.u = adjugate(lifts_[d.cls]) * split_(d.gamma.conj()) * gp;
  if (d.u(1, 0).reduce_mod(P_) != 0 ||
      (level_.style == GammaStyle::UnitColumn && d.u(1, 1).reduce_mod(P_) != 1))
    throw DecompositionFailed("local factor is not in the level subgroup");
  return d;
}

std::vector<Quat> ClassSet::stabilizer(int j) const {
  const auto& Y = TwoAdicQuotient::get(level_.e);
  std::vector<Quat> out;
  for (std::size_t k = 0; k < group_.size(); ++k) {
    int yy = level_.recipe == GroupRecipe::Diagonal ? Y.multiply(group_y_[k], reps_[j].y) : 0;
    if (act(static_cast<int>(k), reps_[j].s) == reps_[j].s && yy == reps_[j].y) out.push_back(group_[k]);
  }
  return out;
}

}  // namespace quatforms
