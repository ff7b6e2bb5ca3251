#pragma once

#include <vector>

#include "quatforms/quaternion.hpp"

namespace quatforms {

/// Class of an odd-norm Hurwitz quaternion in Y_e = R^x / (1 + m^e),
/// m = (1+i).  Two elements agree iff v2(N(x - y)) >= e.
struct TwoAdicClass {
  Quat representative;
  int e = 0;
  int index = 0;
};

/// The finite group Y_e with canonical representatives: the
/// lexicographically least doubled coordinates among small lifts.
class TwoAdicQuotient {
 public:
  static const TwoAdicQuotient& get(int e);  // e in [0, 4]

  int e() const { return e_; }
  int size() const { return static_cast<int>(reps_.size()); }
  const std::vector<Quat>& representatives() const { return reps_; }
  /// Index of the class of q; throws EvenNorm.
  int index_of(const Quat& q) const;
  int multiply(int i, int j) const { return mul_[i * size() + j]; }
  /// Index of the image of the k-th Hurwitz unit.
  int unit_index(int k) const { return units_[k]; }
  int identity() const { return identity_; }

 private:
  explicit TwoAdicQuotient(int e);
  int e_;
  std::vector<Quat> reps_;
  std::vector<int> mul_;
  std::vector<int> units_;
  int identity_ = 0;
};

TwoAdicClass two_adic_reduce(const Quat& alpha, int e);

}  // namespace quatforms
