#pragma once

#include <array>
#include <string>
#include <vector>

#include "quatforms/quaternion.hpp"
#include "quatforms/two_adic.hpp"

namespace quatforms {

/// Level subgroup at p: unit-column is U_1(p^n) (c = 0, d = 1 mod p^n),
/// projective is U_0(p^n) (c = 0 mod p^n).
enum class GammaStyle { UnitColumn, Projective };
/// Nebentypus on the d-entry at p; only meaningful for the projective style.
enum class Character { Trivial, Quadratic };
/// Diagonal: Hurwitz units act on X x Y_e.  Kernel: the units congruent to
/// 1 mod m^e act on X alone.
enum class GroupRecipe { Diagonal, Kernel };

struct LevelSpec {
  std::int64_t p = 0;
  int n = 1;
  int e = 0;
  GammaStyle style = GammaStyle::UnitColumn;
  Character character = Character::Trivial;
  GroupRecipe recipe = GroupRecipe::Diagonal;

  void validate() const;
  std::int64_t modulus() const;  // p^n
  friend bool operator==(const LevelSpec&, const LevelSpec&) = default;
};

std::string to_string(GammaStyle s);
std::string to_string(Character c);
std::string to_string(GroupRecipe r);
GammaStyle parse_gamma_style(const std::string& s);
Character parse_character(const std::string& s);
GroupRecipe parse_recipe(const std::string& s);

/// Column s mod p^n (normalized for the projective style) and a Y_e index.
struct ClassRep {
  std::array<std::int64_t, 2> s{};
  int y = 0;
  friend bool operator==(const ClassRep&, const ClassRep&) = default;
};

/// g = split(gamma) * lift(rep) * u with gamma in the acting unit group.
struct Decomposition {
  Quat gamma;
  int cls = 0;
  Mat2 u;
};

/// Representatives of (unit group) \ (X x Y), X the primitive columns
/// (or lines) mod p^n.  Orbits are enumerated in lexicographic order so each
/// representative is the least element of its orbit.
class ClassSet {
 public:
  ClassSet(const LevelSpec& level, const PrecCtx& ctx);

  const LevelSpec& level() const { return level_; }
  const PrecCtx& ctx() const { return ctx_; }
  const Splitting& splitting() const { return split_; }
  int size() const { return static_cast<int>(reps_.size()); }
  const std::vector<ClassRep>& reps() const { return reps_; }
  const std::vector<int>& stabilizer_orders() const { return stab_; }
  const std::vector<Mat2>& lifts() const { return lifts_; }
  /// Group acting on the left: all 24 units or the kernel subgroup.
  const std::vector<Quat>& group() const { return group_; }
  int x_size() const { return static_cast<int>(xs_.size()); }
  int y_size() const { return ysize_; }
  /// Whether the unit images exhaust Y_e (diagonal orbits then match
  /// kernel-subgroup orbits on X).
  bool y_transitive() const { return y_transitive_; }

  /// Y index carried by a 2-adic element (0 for the kernel recipe).
  int y_index(const Quat& g2) const;
  Decomposition decompose(const Mat2& gp, int y) const;
  /// Stabilizer elements of representative j.
  std::vector<Quat> stabilizer(int j) const;

 private:
  int x_index(const Mat2& g) const;
  std::array<std::int64_t, 2> act(int k, const std::array<std::int64_t, 2>& v) const;
  int grid(const std::array<std::int64_t, 2>& v) const { return static_cast<int>(v[0] * P_ + v[1]); }

  LevelSpec level_;
  PrecCtx ctx_;
  Splitting split_;
  std::int64_t P_;
  std::vector<Quat> group_;
  std::vector<std::array<std::int64_t, 4>> group_mod_;  // split(gamma) mod p^n
  std::vector<int> group_y_;
  std::vector<std::array<std::int64_t, 2>> xs_;
  std::vector<int> xpos_;  // grid -> position in xs_, -1 if absent
  int ysize_ = 1;
  bool y_transitive_ = true;
  std::vector<int> orbit_;  // state -> class
  std::vector<int> witness_;  // state -> group index k with g_k . rep = state
  std::vector<ClassRep> reps_;
  std::vector<int> stab_;
  std::vector<Mat2> lifts_;
};

/// Lift of a column to SL_2(Z/p^N) with first column s.
Mat2 lift_rep(const std::array<std::int64_t, 2>& s, const ResidueRing& ring);

/// Primitive columns mod p^n (unit-column) or their lines, normalized to
/// (1, y) or (x, 1) with p | x (projective); sorted.
std::vector<std::array<std::int64_t, 2>> build_gx(std::int64_t p, int n, GammaStyle style);

}  // namespace quatforms
