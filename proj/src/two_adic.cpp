#include "quatforms/two_adic.hpp"

#include <algorithm>
#include <array>
#include <memory>

#include "quatforms/errors.hpp"

namespace quatforms {

namespace {

int v2(std::int64_t n) {
  if (n == 0) return std::numeric_limits<int>::max();
  int v = 0;
  while (n % 2 == 0) n /= 2, ++v;
  return v;
}

}  // namespace

const TwoAdicQuotient& TwoAdicQuotient::get(int e) {
  if (e < 0 || e > 4) throw ValidationError("2-adic level e must lie in [0, 4]");
  static const std::array<std::unique_ptr<TwoAdicQuotient>, 5> table = [] {
    std::array<std::unique_ptr<TwoAdicQuotient>, 5> t;
    for (int i = 0; i <= 4; ++i) t[i].reset(new TwoAdicQuotient(i));
    return t;
  }();
  return *table[e];
}

TwoAdicQuotient::TwoAdicQuotient(int e) : e_(e) {
  // Lifts a + b i + c j + d w with w = (1+i+j+k)/2 and 0 <= a..d < 2^c,
  // c = ceil(e/2), cover R / m^e since m^2 = 2R.
  const int c = std::max(1, (e + 1) / 2);
  const std::int64_t top = std::int64_t{1} << c;
  std::vector<Quat> lifts;
  for (std::int64_t a = 0; a < top; ++a)
    for (std::int64_t b = 0; b < top; ++b)
      for (std::int64_t cc = 0; cc < top; ++cc)
        for (std::int64_t d = 0; d < top; ++d) {
          Quat q(2 * a + d, 2 * b + d, 2 * cc + d, d);
          if (q.norm() % 2) lifts.push_back(q);
        }
  std::sort(lifts.begin(), lifts.end());
  for (const Quat& q : lifts) {
    bool fresh = std::none_of(reps_.begin(), reps_.end(), [&](const Quat& r) { return v2((q - r).norm()) >= e; });
    if (fresh) reps_.push_back(q);
  }
  const int n = size();
  mul_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mul_[i * n + j] = index_of(reps_[i] * reps_[j]);
  for (const Quat& u : hurwitz_units()) units_.push_back(index_of(u));
  identity_ = index_of(Quat(2, 0, 0, 0));
}

int TwoAdicQuotient::index_of(const Quat& q) const {
  if (q.norm() % 2 == 0) throw EvenNorm("2-adic reduction of an even-norm quaternion");
  for (int i = 0; i < size(); ++i)
    if (v2((q - reps_[i]).norm()) >= e_) return i;
  throw std::logic_error("2-adic class table is incomplete");
}

TwoAdicClass two_adic_reduce(const Quat& alpha, int e) {
  const auto& Y = TwoAdicQuotient::get(e);
  int i = Y.index_of(alpha);
  return {Y.representatives()[i], e, i};
}

}  // namespace quatforms
