#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "quatforms/series.hpp"

namespace quatforms {

/// Hurwitz quaternion (x0 + x1 i + x2 j + x3 k)/2 in doubled coordinates;
/// all four x's share a parity.  Ordered lexicographically on x.
struct Quat {
  std::array<std::int64_t, 4> x{};

  Quat() = default;
  Quat(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);  // doubled coords
  static Quat integral(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return Quat(2 * a, 2 * b, 2 * c, 2 * d);
  }

  std::int64_t norm() const { return (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]) / 4; }
  std::int64_t trace() const { return x[0]; }
  Quat conj() const { return {x[0], -x[1], -x[2], -x[3]}; }

  friend Quat operator*(const Quat& a, const Quat& b);
  friend Quat operator+(const Quat& a, const Quat& b);
  friend Quat operator-(const Quat& a, const Quat& b);
  friend auto operator<=>(const Quat& a, const Quat& b) = default;
};

/// Doubled-coordinate constructor check and division by an integer that
/// must leave a Hurwitz quaternion.
Quat exact_divide(const Quat& q, std::int64_t d);

/// The 24 units of the Hurwitz order, sorted.
const std::vector<Quat>& hurwitz_units();

/// Units congruent to 1 modulo m^e, m = (1+i), i.e. v2(N(u - 1)) >= e.
std::vector<Quat> unit_subgroup(int e);

/// All Hurwitz quaternions of norm n, sorted.
std::vector<Quat> enumerate_norm(std::int64_t n);

/// Process-wide write-once cache of enumerate_norm, optionally mirrored to
/// JSON files norm_<n>.json under a directory.
class NormCache {
 public:
  static NormCache& global();
  void set_directory(std::optional<std::filesystem::path> dir);
  const std::vector<Quat>& get(std::int64_t n);

 private:
  std::mutex mu_;
  std::optional<std::filesystem::path> dir_;
  std::map<std::int64_t, std::vector<Quat>> table_;
};

/// Left-unit orbits {u q} of elements of norm n, each sorted, ordered by
/// their least element.
std::vector<std::vector<Quat>> left_unit_orbits(std::int64_t n);

/// (a, b) with a^2 + b^2 = -1 mod p^N: least a in [1, p), then greatest b,
/// Hensel-lifted in b when b is a unit and in a otherwise.  p = 5 gives
/// (2, 0), p = 7 gives (2, 4), p = 11 gives (1, 8).
std::pair<Residue, Residue> solve_ab(const ResidueRing& ring);

/// Splitting of B tensor Q_p: i -> [[a, b], [b, -a]], j -> [[0, 1], [-1, 0]].
class Splitting {
 public:
  explicit Splitting(const ResidueRing& ring);
  Mat2 operator()(const Quat& q) const;
  const Residue& a() const { return a_; }
  const Residue& b() const { return b_; }
  const ResidueRing& ring() const { return *ring_; }

 private:
  const ResidueRing* ring_;
  Residue a_, b_, half_;
  Mat2 I_, J_, K_;
};

}  // namespace quatforms
