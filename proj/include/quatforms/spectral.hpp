#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "quatforms/hecke.hpp"
#include "quatforms/linalg.hpp"
#include "quatforms/newton.hpp"

namespace quatforms {

/// Coefficient bound max_i binom(d, i) B^i for a degree-d polynomial whose
/// roots have absolute value at most B.
Integer coefficient_bound(int degree, const Integer& B);

/// Archimedean bound on eigenvalues of desc in weight k: l^{k-1} + 1 for
/// T_l (covers the norm form), p^{k-1} for U_p, 2^k for W.
Integer eigenvalue_bound(const HeckeDescriptor& desc, int k);

/// Least N with p^N > 2 * bound.
int precision_for_bound(std::int64_t p, const Integer& bound);

struct IntCharpoly {
  IntPoly poly;
  int precision = 0;
};

/// Integer characteristic polynomial of desc on the classical weight-k
/// space, lifted at precision N and confirmed at N + 3.  N = 0 picks the
/// least admissible precision (at least level.n + 1).
IntCharpoly charpoly_int(const HeckeDescriptor& desc, const LevelSpec& level, int k, const Integer& coeff_bound,
                         int N = 0, const ConventionProfile& profile = kCalibratedProfile);

struct SlopeSpectrum {
  std::vector<Rational> slopes;  // one per root at truncation M
  std::vector<bool> stable;      // agrees with 2M and below the cap
  std::vector<NewtonSlope> segments;
  int reliable_below = 0;
  int truncation = 0;
  int precision = 0;
  int stable_count = 0;
};

/// Newton slopes of the truncated U_p on weight-k overconvergent forms at
/// truncation M, checked against truncation 2M.
SlopeSpectrum slope_spectrum(const LevelSpec& level, int k, int M, int N,
                             const ConventionProfile& profile = kCalibratedProfile);

/// SplitMix64: 64-bit state, output is the standard finalizer.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t operator()();

 private:
  std::uint64_t state_;
};

/// Random form supported on one class block.
AutForm random_form(const FormSpace& space, std::uint64_t seed, int block);

struct PowerIteration {
  std::vector<AutForm> vectors;
  std::vector<std::uint64_t> seeds;  // seeds actually used
  int iterations = 0;
};

/// r forms spanning the slope-0 part mod p^K: U_p^K applied to seeded
/// random forms, retried with fresh seeds (up to 3 rounds) until the
/// iterates have rank r mod p.
PowerIteration power_iterate(const FormSpace& space, int K, const std::vector<std::uint64_t>& seeds, int r,
                             const ConventionProfile& profile = kCalibratedProfile);

struct EigenvalueReading {
  Residue value;
  int loss = 0;
  int digits = 0;  // value is known mod p^digits
};

/// Ratio of apply(op, f) to f at a coordinate of least valuation.  digits
/// is the precision to which every coordinate agrees, capped at `trusted`
/// (default N) less the pivot valuation; InconsistentRatios if none.
EigenvalueReading extract_eigenvalue(const AutForm& f, const HeckeOperator& op, int trusted = -1);

struct EigenApprox {
  AutForm form;
  std::vector<std::pair<HeckeDescriptor, EigenvalueReading>> eigenvalues;
  int precision_loss = 0;
  int trusted_digits = 0;  // f is an eigenvector mod p^trusted_digits
};

/// Diagonalizes W on the span of `vectors` (assumed stable under W); the
/// char poly of W on the span must have distinct roots mod p.
std::vector<EigenApprox> split_by_W(const std::vector<AutForm>& vectors, const FormSpace& space, int trusted,
                                    const ConventionProfile& profile = kCalibratedProfile);

struct ClassicalityVerdict {
  std::vector<IntPoly> matches;
  bool bounded_match() const { return !matches.empty(); }
  std::string summary() const;
};

/// Monic integer polynomials of degree <= dmax with |c_{d-i}| <= binom(d,i) B^i
/// having lambda as a root mod p^N.
ClassicalityVerdict classicality_evidence(const Residue& lambda, int dmax, const Integer& B);
/// Same with B = ceil(2 l^{(k-1)/2}).
ClassicalityVerdict classicality_evidence(const Residue& lambda, int k, std::int64_t l, int dmax);

}  // namespace quatforms
