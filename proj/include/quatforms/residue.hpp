#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace quatforms {

using Integer = boost::multiprecision::cpp_int;

/// The ring Z/p^N, p an odd prime, stored in Montgomery form over up to four
/// 64-bit limbs.  Instances are interned and never destroyed.
class ResidueRing {
 public:
  static constexpr int kMaxLimbs = 4;
  using Limbs = std::array<std::uint64_t, kMaxLimbs>;

  static const ResidueRing& get(std::int64_t p, int N);

  std::int64_t prime() const { return p_; }
  int precision() const { return N_; }
  int limbs() const { return L_; }
  const Integer& modulus() const { return modulus_; }

  void add(const Limbs& a, const Limbs& b, Limbs& r) const;
  void sub(const Limbs& a, const Limbs& b, Limbs& r) const;
  void mul(const Limbs& a, const Limbs& b, Limbs& r) const;

  Limbs to_montgomery(const Limbs& canonical) const;
  Limbs from_montgomery(const Limbs& mont) const;
  Limbs reduce(const Integer& v) const;  // Montgomery form of v mod p^N
  Integer to_integer(const Limbs& mont) const;
  const Limbs& one() const { return one_; }

  std::uint64_t mod_prime(const Limbs& x) const;
  std::uint64_t mod_small(const Limbs& x, std::uint64_t m) const;
  void divide_by_prime(Limbs& x) const;  // exact, canonical or Montgomery

 private:
  ResidueRing(std::int64_t p, int N);

  template <int L> void mul_n(const Limbs& a, const Limbs& b, Limbs& r) const;
  bool geq_modulus(const Limbs& x) const;
  void sub_modulus(Limbs& x) const;

  std::int64_t p_;
  int N_;
  int L_;
  Integer modulus_;
  Limbs n_{};
  Limbs r2_{};
  Limbs one_{};
  std::uint64_t ninv_;  // -n^{-1} mod 2^64
};

/// An element of Z/p^N.  A default-constructed or integer-constructed
/// Residue has no ring ("free") and adopts the ring of whatever it is
/// combined with; this is what lets Eigen build Zero() and Identity().
class Residue {
 public:
  Residue() = default;
  Residue(long long v) : free_(v) {}  // NOLINT: Eigen literals
  Residue(const ResidueRing& ring, long long v);
  static Residue from_integer(const ResidueRing& ring, const Integer& v);

  const ResidueRing* ring() const { return ring_; }
  Residue bound_to(const ResidueRing& ring) const;

  /// Canonical representative in [0, p^N).
  Integer to_integer() const;
  std::string to_string() const;

  bool is_zero() const;
  bool is_unit() const;
  /// p-adic valuation; N for zero (capped at the precision).
  int valuation() const;
  Residue inverse() const;
  Residue pow(std::uint64_t e) const;
  /// x / p^v for x divisible by p^v; the top v digits of the result are 0.
  Residue divide_by_prime_power(int v) const;
  /// Canonical value reduced modulo a small m (normally m | p^N).
  std::uint64_t reduce_mod(std::uint64_t m) const;

  Residue& operator+=(const Residue& o);
  Residue& operator-=(const Residue& o);
  Residue& operator*=(const Residue& o);
  Residue operator-() const;

  friend Residue operator+(Residue a, const Residue& b) { return a += b; }
  friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
  friend Residue operator*(Residue a, const Residue& b) { return a *= b; }
  friend bool operator==(const Residue& a, const Residue& b);
  friend bool operator!=(const Residue& a, const Residue& b) { return !(a == b); }

 private:
  const ResidueRing* ring_ = nullptr;
  ResidueRing::Limbs mont_{};
  long long free_ = 0;

  const ResidueRing* unify(const Residue& o);
};

std::ostream& operator<<(std::ostream& os, const Residue& r);

/// Precision context: prime p, p-adic precision N, series truncation M.
struct PrecCtx {
  std::int64_t p = 0;
  int N = 0;
  int M = 0;

  PrecCtx() = default;
  PrecCtx(std::int64_t p, int N, int M = 1);
  const ResidueRing& ring() const { return ResidueRing::get(p, N); }
  Residue operator()(long long v) const { return Residue(ring(), v); }
};

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ResidueMatrix = Matrix<Residue>;
using ResidueVector = Vector<Residue>;
using Mat2 = Eigen::Matrix<Residue, 2, 2>;

bool is_prime(std::int64_t n);

}  // namespace quatforms

namespace Eigen {

template <>
struct NumTraits<quatforms::Residue> : GenericNumTraits<quatforms::Residue> {
  using Real = quatforms::Residue;
  using NonInteger = quatforms::Residue;
  using Literal = quatforms::Residue;
  using Nested = quatforms::Residue;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 4,
    MulCost = 16
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static Real highest() { return Real(0); }
  static Real lowest() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
