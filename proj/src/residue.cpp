#include "quatforms/residue.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <ostream>

#include "quatforms/errors.hpp"

namespace quatforms {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

const ResidueRing& ResidueRing::get(std::int64_t p, int N) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, int>, std::unique_ptr<ResidueRing>> rings;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = rings[{p, N}];
  if (!slot) slot.reset(new ResidueRing(p, N));
  return *slot;
}

ResidueRing::ResidueRing(std::int64_t p, int N) : p_(p), N_(N) {
  if (p < 3 || !is_prime(p)) throw ValidationError("p must be an odd prime, got " + std::to_string(p));
  if (N < 1) throw ValidationError("precision N must be positive");
  modulus_ = boost::multiprecision::pow(Integer(p), static_cast<unsigned>(N));
  // Leave one spare bit so that sums of two residues never wrap the top limb.
  if (boost::multiprecision::msb(modulus_) >= 64 * kMaxLimbs - 1)
    throw ValidationError("p^N exceeds the supported 254-bit range");
  L_ = static_cast<int>(boost::multiprecision::msb(modulus_) / 64 + 1);
  Integer m = modulus_;
  for (int i = 0; i < L_; ++i) {
    n_[i] = static_cast<u64>(m & Integer(~u64{0}));
    m >>= 64;
  }
  u64 inv = 1;
  for (int i = 0; i < 7; ++i) inv *= 2 - n_[0] * inv;
  ninv_ = ~inv + 1;
  Integer R = Integer(1) << (64 * L_);
  Integer r1 = R % modulus_, r2 = (R * R) % modulus_;
  for (int i = 0; i < L_; ++i) {
    one_[i] = static_cast<u64>(r1 & Integer(~u64{0}));
    r2_[i] = static_cast<u64>(r2 & Integer(~u64{0}));
    r1 >>= 64;
    r2 >>= 64;
  }
}

bool ResidueRing::geq_modulus(const Limbs& x) const {
  for (int i = L_ - 1; i >= 0; --i) {
    if (x[i] != n_[i]) return x[i] > n_[i];
  }
  return true;
}

void ResidueRing::sub_modulus(Limbs& x) const {
  u64 borrow = 0;
  for (int i = 0; i < L_; ++i) {
    u128 d = static_cast<u128>(x[i]) - n_[i] - borrow;
    x[i] = static_cast<u64>(d);
    borrow = static_cast<u64>(d >> 64) & 1;
  }
}

void ResidueRing::add(const Limbs& a, const Limbs& b, Limbs& r) const {
  if (L_ == 1) {
    u64 s = a[0] + b[0];
    r[0] = (s < a[0] || s >= n_[0]) ? s - n_[0] : s;
    return;
  }
  u64 carry = 0;
  for (int i = 0; i < L_; ++i) {
    u128 s = static_cast<u128>(a[i]) + b[i] + carry;
    r[i] = static_cast<u64>(s);
    carry = static_cast<u64>(s >> 64);
  }
  if (carry || geq_modulus(r)) sub_modulus(r);
}

void ResidueRing::sub(const Limbs& a, const Limbs& b, Limbs& r) const {
  if (L_ == 1) {
    r[0] = a[0] >= b[0] ? a[0] - b[0] : a[0] + (n_[0] - b[0]);
    return;
  }
  u64 borrow = 0;
  for (int i = 0; i < L_; ++i) {
    u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
    r[i] = static_cast<u64>(d);
    borrow = static_cast<u64>(d >> 64) & 1;
  }
  if (borrow) {
    u64 carry = 0;
    for (int i = 0; i < L_; ++i) {
      u128 s = static_cast<u128>(r[i]) + n_[i] + carry;
      r[i] = static_cast<u64>(s);
      carry = static_cast<u64>(s >> 64);
    }
  }
}

// Coarsely integrated operand scanning (CIOS) Montgomery product.
template <int L>
void ResidueRing::mul_n(const Limbs& a, const Limbs& b, Limbs& r) const {
  u64 t[L + 2] = {};
  for (int i = 0; i < L; ++i) {
    u128 c = 0;
    for (int j = 0; j < L; ++j) {
      c += static_cast<u128>(a[j]) * b[i] + t[j];
      t[j] = static_cast<u64>(c);
      c >>= 64;
    }
    c += t[L];
    t[L] = static_cast<u64>(c);
    t[L + 1] = static_cast<u64>(c >> 64);
    u64 m = t[0] * ninv_;
    c = static_cast<u128>(m) * n_[0] + t[0];
    c >>= 64;
    for (int j = 1; j < L; ++j) {
      c += static_cast<u128>(m) * n_[j] + t[j];
      t[j - 1] = static_cast<u64>(c);
      c >>= 64;
    }
    c += t[L];
    t[L - 1] = static_cast<u64>(c);
    t[L] = t[L + 1] + static_cast<u64>(c >> 64);
  }
  for (int i = 0; i < L; ++i) r[i] = t[i];
  if (t[L] || geq_modulus(r)) sub_modulus(r);
}

void ResidueRing::mul(const Limbs& a, const Limbs& b, Limbs& r) const {
  switch (L_) {
    case 1: {
      u128 t = static_cast<u128>(a[0]) * b[0];
      u64 m = static_cast<u64>(t) * ninv_;
      u128 mn = static_cast<u128>(m) * n_[0];
      u128 s = t + mn;
      bool carry = s < t;
      u64 hi = static_cast<u64>(s >> 64);
      r[0] = (carry || hi >= n_[0]) ? hi - n_[0] : hi;
      return;
    }
    case 2: return mul_n<2>(a, b, r);
    case 3: return mul_n<3>(a, b, r);
    default: return mul_n<4>(a, b, r);
  }
}

ResidueRing::Limbs ResidueRing::to_montgomery(const Limbs& canonical) const {
  Limbs r{};
  mul(canonical, r2_, r);
  return r;
}

ResidueRing::Limbs ResidueRing::from_montgomery(const Limbs& mont) const {
  Limbs unit{1, 0, 0, 0}, r{};
  mul(mont, unit, r);
  return r;
}

ResidueRing::Limbs ResidueRing::reduce(const Integer& v) const {
  Integer m = v % modulus_;
  if (m < 0) m += modulus_;
  Limbs c{};
  for (int i = 0; i < L_; ++i) {
    c[i] = static_cast<u64>(m & Integer(~u64{0}));
    m >>= 64;
  }
  return to_montgomery(c);
}

Integer ResidueRing::to_integer(const Limbs& mont) const {
  Limbs c = from_montgomery(mont);
  Integer v = 0;
  for (int i = L_ - 1; i >= 0; --i) {
    v <<= 64;
    v += c[i];
  }
  return v;
}

std::uint64_t ResidueRing::mod_prime(const Limbs& x) const { return mod_small(x, static_cast<u64>(p_)); }

std::uint64_t ResidueRing::mod_small(const Limbs& x, std::uint64_t m) const {
  if (L_ == 1) return x[0] % m;
  u128 rem = 0;
  for (int i = L_ - 1; i >= 0; --i) rem = ((rem << 64) | x[i]) % m;
  return static_cast<u64>(rem);
}

void ResidueRing::divide_by_prime(Limbs& x) const {
  u128 rem = 0;
  for (int i = L_ - 1; i >= 0; --i) {
    u128 cur = (rem << 64) | x[i];
    x[i] = static_cast<u64>(cur / static_cast<u64>(p_));
    rem = cur % static_cast<u64>(p_);
  }
}

Residue::Residue(const ResidueRing& ring, long long v) : ring_(&ring) {
  if (ring.limbs() == 1) {
    u64 n = static_cast<u64>(ring.modulus());
    u64 a = static_cast<u64>(v < 0 ? -(v + 1) : v) + (v < 0 ? 1 : 0);
    a %= n;
    if (v < 0 && a) a = n - a;
    mont_ = ring.to_montgomery({a, 0, 0, 0});
  } else {
    mont_ = ring.reduce(Integer(v));
  }
}

Residue Residue::from_integer(const ResidueRing& ring, const Integer& v) {
  Residue r;
  r.ring_ = &ring;
  r.mont_ = ring.reduce(v);
  return r;
}

Residue Residue::bound_to(const ResidueRing& ring) const {
  if (ring_ == &ring) return *this;
  if (ring_) throw std::logic_error("residues from different rings");
  return Residue(ring, free_);
}

const ResidueRing* Residue::unify(const Residue& o) {
  if (ring_ == o.ring_) return ring_;
  if (!o.ring_) return ring_;
  if (!ring_) {
    *this = bound_to(*o.ring_);
    return ring_;
  }
  throw std::logic_error("residues from different rings");
}

Residue& Residue::operator+=(const Residue& o) {
  if (ring_ && ring_ == o.ring_) {
    ring_->add(mont_, o.mont_, mont_);
    return *this;
  }
  if (!ring_ && !o.ring_) {
    free_ += o.free_;
    return *this;
  }
  const ResidueRing* r = unify(o);
  Residue b = o.bound_to(*r);
  r->add(mont_, b.mont_, mont_);
  return *this;
}

Residue& Residue::operator-=(const Residue& o) {
  if (ring_ && ring_ == o.ring_) {
    ring_->sub(mont_, o.mont_, mont_);
    return *this;
  }
  if (!ring_ && !o.ring_) {
    free_ -= o.free_;
    return *this;
  }
  const ResidueRing* r = unify(o);
  Residue b = o.bound_to(*r);
  r->sub(mont_, b.mont_, mont_);
  return *this;
}

Residue& Residue::operator*=(const Residue& o) {
  if (ring_ && ring_ == o.ring_) {
    ring_->mul(mont_, o.mont_, mont_);
    return *this;
  }
  if (!ring_ && !o.ring_) {
    free_ *= o.free_;
    return *this;
  }
  const ResidueRing* r = unify(o);
  Residue b = o.bound_to(*r);
  r->mul(mont_, b.mont_, mont_);
  return *this;
}

Residue Residue::operator-() const {
  if (!ring_) return Residue(-free_);
  Residue r = *this;
  ResidueRing::Limbs zero{};
  ring_->sub(zero, mont_, r.mont_);
  return r;
}

bool operator==(const Residue& a, const Residue& b) {
  if (a.ring_ == b.ring_) return a.ring_ ? a.mont_ == b.mont_ : a.free_ == b.free_;
  if (a.ring_ && b.ring_) return false;
  const ResidueRing& r = a.ring_ ? *a.ring_ : *b.ring_;
  return a.bound_to(r).mont_ == b.bound_to(r).mont_;
}

Integer Residue::to_integer() const {
  if (!ring_) return Integer(free_);
  return ring_->to_integer(mont_);
}

std::string Residue::to_string() const { return to_integer().str(); }

bool Residue::is_zero() const {
  if (!ring_) return free_ == 0;
  for (int i = 0; i < ring_->limbs(); ++i)
    if (mont_[i]) return false;
  return true;
}

bool Residue::is_unit() const {
  if (!ring_) throw std::logic_error("is_unit on a residue without a ring");
  return ring_->mod_prime(mont_) != 0;
}

int Residue::valuation() const {
  if (!ring_) {
    if (free_ == 0) return std::numeric_limits<int>::max();
    throw std::logic_error("valuation of a residue without a ring");
  }
  if (is_zero()) return ring_->precision();
  // Montgomery form differs from the value by a unit, so valuations agree.
  ResidueRing::Limbs x = mont_;
  int v = 0;
  while (ring_->mod_prime(x) == 0) {
    ring_->divide_by_prime(x);
    ++v;
  }
  return v;
}

namespace {

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = a % m;
  while (a1) {
    std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_tuple(a1, g - q * a1);
    std::tie(x, x1) = std::make_tuple(x1, x - q * x1);
  }
  return ((x % m) + m) % m;
}

}  // namespace

Residue Residue::inverse() const {
  if (!ring_) throw std::logic_error("inverse of a residue without a ring");
  std::int64_t p = ring_->prime();
  u64 a0 = ring_->mod_prime(ring_->from_montgomery(mont_));
  if (a0 == 0) throw std::domain_error("inverse of a non-unit residue");
  Residue y(*ring_, inverse_mod(static_cast<std::int64_t>(a0), p));
  Residue two(*ring_, 2);
  for (int prec = 1; prec < ring_->precision(); prec *= 2) y = y * (two - *this * y);
  return y;
}

Residue Residue::pow(std::uint64_t e) const {
  Residue base = *this, acc = ring_ ? Residue(*ring_, 1) : Residue(1);
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

Residue Residue::divide_by_prime_power(int v) const {
  if (v == 0) return *this;
  if (!ring_) throw std::logic_error("division of a residue without a ring");
  if (valuation() < v) throw std::domain_error("residue not divisible by p^v");
  ResidueRing::Limbs c = ring_->from_montgomery(mont_);
  for (int i = 0; i < v; ++i) ring_->divide_by_prime(c);
  Residue r;
  r.ring_ = ring_;
  r.mont_ = ring_->to_montgomery(c);
  return r;
}

std::uint64_t Residue::reduce_mod(std::uint64_t m) const {
  if (!ring_) {
    long long r = free_ % static_cast<long long>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(m) : r);
  }
  return ring_->mod_small(ring_->from_montgomery(mont_), m);
}

std::ostream& operator<<(std::ostream& os, const Residue& r) { return os << r.to_string(); }

PrecCtx::PrecCtx(std::int64_t p_, int N_, int M_) : p(p_), N(N_), M(M_) {
  if (M < 1) throw ValidationError("truncation M must be positive");
  (void)ring();
}

}  // namespace quatforms
