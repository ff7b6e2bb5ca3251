#include "quatforms/spectral.hpp"

#include <cmath>
#include <sstream>

#include "quatforms/errors.hpp"

namespace quatforms {

Integer coefficient_bound(int degree, const Integer& B) {
  Integer best = 0, binom = 1, power = 1;
  for (int i = 0; i <= degree; ++i) {
    best = std::max(best, Integer(binom * power));
    binom = binom * (degree - i) / (i + 1);
    power *= B;
  }
  return best;
}

Integer eigenvalue_bound(const HeckeDescriptor& desc, int k) {
  const unsigned e = static_cast<unsigned>(std::max(k - 1, 0));
  switch (desc.kind) {
    case HeckeKind::T: return boost::multiprecision::pow(Integer(desc.site), e) + 1;
    case HeckeKind::U: return boost::multiprecision::pow(Integer(desc.site), e);
    default: return boost::multiprecision::pow(Integer(2), static_cast<unsigned>(std::max(k, 0)));
  }
}

int precision_for_bound(std::int64_t p, const Integer& bound) {
  Integer pw = p;
  int N = 1;
  while (pw <= 2 * bound) {
    pw *= p;
    ++N;
  }
  return N;
}

IntCharpoly charpoly_int(const HeckeDescriptor& desc, const LevelSpec& level, int k, const Integer& coeff_bound,
                         int N, const ConventionProfile& profile) {
  const int least = std::max(level.n + 1, precision_for_bound(level.p, coeff_bound));
  if (N == 0) N = least;
  if (N < least) throw PrecisionInsufficient("p^N must exceed twice the coefficient bound");
  auto lifted = [&](int prec) {
    FormSpace space = make_space(level, k, Model::Classical, prec);
    PadicPoly f = charpoly(hecke_matrix(desc, space, profile));
    IntPoly out;
    for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) out.push_back(symmetric_lift(f.coeffs(i), coeff_bound));
    return out;
  };
  IntPoly a = lifted(N);
  if (lifted(N + 3) != a) throw UnstableLift("integer charpoly changed between N and N+3");
  return {a, N};
}

SlopeSpectrum slope_spectrum(const LevelSpec& level, int k, int M, int N, const ConventionProfile& profile) {
  auto run = [&](int trunc) {
    FormSpace space = make_space(level, k, Model::Overconvergent, N, trunc);
    return newton_slopes(charpoly(hecke_matrix(HeckeDescriptor::U(level.p), space, profile)));
  };
  SlopeSpectrum s;
  s.truncation = M;
  s.precision = N;
  s.reliable_below = N - 2;
  s.segments = run(M);
  const auto wide = run(2 * M);
  s.slopes = expand_slopes(s.segments);
  const auto wide_slopes = expand_slopes(wide);
  std::vector<bool> reliable;
  for (const auto& seg : s.segments)
    for (int i = 0; i < seg.multiplicity; ++i) reliable.push_back(seg.reliable);
  bool prefix = true;
  for (std::size_t i = 0; i < s.slopes.size(); ++i) {
    prefix = prefix && reliable[i] && i < wide_slopes.size() && wide_slopes[i] == s.slopes[i];
    s.stable.push_back(prefix);
    if (prefix) ++s.stable_count;
  }
  return s;
}

std::uint64_t SplitMix64::operator()() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

AutForm random_form(const FormSpace& space, std::uint64_t seed, int block) {
  SplitMix64 rng(seed);
  const ResidueRing& ring = space.ring();
  AutForm f = AutForm::zero(space);
  auto b = f.block(space, block);
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    Integer v = 0;
    for (int l = 0; l < ring.limbs(); ++l) v = (v << 64) | Integer(rng());
    b(i) = Residue::from_integer(ring, v);
  }
  return f;
}

PowerIteration power_iterate(const FormSpace& space, int K, const std::vector<std::uint64_t>& seeds, int r,
                             const ConventionProfile& profile) {
  if (static_cast<int>(seeds.size()) < r) throw ValidationError("need at least r seeds");
  if (K > space.ctx().N) throw ValidationError("iteration count K must not exceed N");
  HeckeOperator U(space, HeckeDescriptor::U(space.class_set().level().p), profile);
  for (int attempt = 0; attempt < 3; ++attempt) {
    PowerIteration out;
    out.iterations = K;
    ResidueMatrix V(space.dimension(), r);
    for (int i = 0; i < r; ++i) {
      std::uint64_t seed = seeds[i] + static_cast<std::uint64_t>(attempt) * 1000003ULL;
      AutForm f = random_form(space, seed, i % space.blocks());
      for (int it = 0; it < K; ++it) f = U.apply(f);
      V.col(i) = f.coeffs;
      out.vectors.push_back(std::move(f));
      out.seeds.push_back(seed);
    }
    if (rank_mod_p(V) == r) return out;
  }
  throw RankDeficient("iterates do not span an r-dimensional slope-0 space");
}

EigenvalueReading extract_eigenvalue(const AutForm& f, const HeckeOperator& op, int trusted) {
  if (trusted < 0) trusted = op.space().ctx().N;
  const AutForm g = op.apply(f);
  Eigen::Index best = -1;
  int v = std::numeric_limits<int>::max();
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) {
    int w = f.coeffs(i).valuation();
    if (w < v) {
      v = w;
      best = i;
    }
  }
  if (best < 0 || v >= trusted) throw InconsistentRatios("form vanishes to the trusted precision");
  if (g.coeffs(best).valuation() < v) throw InconsistentRatios("image is not divisible at the pivot coordinate");
  EigenvalueReading out;
  out.value = g.coeffs(best).divide_by_prime_power(v) * f.coeffs(best).divide_by_prime_power(v).inverse();
  out.loss = v;
  int agree = trusted;
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i)
    agree = std::min(agree, (g.coeffs(i) - out.value * f.coeffs(i)).valuation());
  out.digits = agree - v;
  if (out.digits <= 0) throw InconsistentRatios("coordinate ratios disagree mod p");
  return out;
}

namespace {

ResidueVector kernel_vector(const ResidueMatrix& B) {
  const Eigen::Index r = B.rows();
  for (Eigen::Index f = r - 1; f >= 0; --f) {
    ResidueMatrix rest(r, r - 1);
    for (Eigen::Index c = 0, o = 0; c < r; ++c)
      if (c != f) rest.col(o++) = B.col(c);
    if (rank_mod_p(rest) != r - 1) continue;
    ResidueMatrix rhs = -B.col(f);
    ResidueMatrix x = solve_pivoted(rest, rhs).X;
    ResidueVector v(r);
    for (Eigen::Index c = 0, o = 0; c < r; ++c) v(c) = c == f ? Residue(*B(0, 0).ring(), 1) : x(o++, 0);
    return v;
  }
  throw IndistinctRoots("eigenvalue is not simple mod p");
}

}  // namespace

std::vector<EigenApprox> split_by_W(const std::vector<AutForm>& vectors, const FormSpace& space, int trusted,
                                    const ConventionProfile& profile) {
  const int r = static_cast<int>(vectors.size());
  if (r == 0) return {};
  HeckeOperator W(space, HeckeDescriptor::W(), profile);
  const ResidueRing& ring = space.ring();
  ResidueMatrix V(space.dimension(), r), WV(space.dimension(), r);
  for (int i = 0; i < r; ++i) {
    V.col(i) = vectors[i].coeffs;
    WV.col(i) = W.apply(vectors[i]).coeffs;
  }
  PivotedSolve sol = solve_pivoted(V, WV);
  const int loss = sol.precision_loss;
  const int digits = trusted - loss;
  std::vector<EigenApprox> out;
  if (r == 1) {
    EigenApprox e;
    e.form = vectors[0];
    e.eigenvalues.push_back({HeckeDescriptor::W(), {sol.X(0, 0), loss, digits}});
    e.precision_loss = loss;
    e.trusted_digits = digits;
    out.push_back(std::move(e));
    return out;
  }
  const PadicPoly f = charpoly(sol.X);
  const PadicPoly df = poly_derivative(f);
  const std::int64_t p = ring.prime();
  std::vector<Residue> roots;
  for (std::int64_t x = 0; x < p; ++x) {
    Residue rx(ring, x);
    if (poly_evaluate(f, rx).is_unit()) continue;
    if (!poly_evaluate(df, rx).is_unit()) throw IndistinctRoots("W has a repeated eigenvalue mod p");
    for (int prec = 1; prec < 2 * ring.precision(); prec *= 2) rx = rx - poly_evaluate(f, rx) * poly_evaluate(df, rx).inverse();
    roots.push_back(rx);
  }
  if (static_cast<int>(roots.size()) != r) throw IndistinctRoots("W does not split into distinct roots mod p");
  for (const Residue& lambda : roots) {
    ResidueMatrix B = sol.X;
    for (int i = 0; i < r; ++i) B(i, i) -= lambda;
    ResidueVector v = kernel_vector(B);
    EigenApprox e;
    e.form.coeffs = V * v;
    e.eigenvalues.push_back({HeckeDescriptor::W(), {lambda, loss, digits}});
    e.precision_loss = loss;
    e.trusted_digits = digits;
    out.push_back(std::move(e));
  }
  return out;
}

std::string ClassicalityVerdict::summary() const {
  if (matches.empty()) return "no bounded algebraic match";
  std::ostringstream os;
  os << "bounded algebraic match: ";
  for (std::size_t i = 0; i < matches.size(); ++i) os << (i ? ", " : "") << int_poly_to_string(matches[i]);
  return os.str();
}

ClassicalityVerdict classicality_evidence(const Residue& lambda, int dmax, const Integer& B) {
  if (dmax < 1 || dmax > 4) throw ValidationError("degree bound must lie in [1, 4]");
  if (!lambda.ring()) throw ValidationError("eigenvalue needs a precision context");
  const ResidueRing& ring = *lambda.ring();
  const Integer& mod = ring.modulus();
  ClassicalityVerdict out;
  for (int d = 1; d <= dmax; ++d) {
    std::vector<Integer> bound(d + 1);
    Integer binom = 1, power = 1, work = 1;
    for (int i = 0; i <= d; ++i) {
      bound[i] = binom * power;  // bound on c_{d-i}
      binom = binom * (d - i) / (i + 1);
      power *= B;
    }
    for (int i = 1; i < d; ++i) work *= 2 * bound[i] + 1;
    if (work > 50000000) throw ValidationError("classicality search space too large");
    std::vector<Residue> lp(d + 1);
    lp[0] = Residue(ring, 1);
    for (int i = 1; i <= d; ++i) lp[i] = lp[i - 1] * lambda;
    // c[i] is the coefficient of x^i; c[1..d-1] enumerated, c[0] solved.
    std::vector<Integer> c(d + 1, 0);
    c[d] = 1;
    for (int i = 1; i < d; ++i) c[i] = -bound[d - i];
    while (true) {
      Residue s = lp[d];
      for (int i = 1; i < d; ++i) s += Residue::from_integer(ring, c[i]) * lp[i];
      Integer c0 = symmetric_lift(-s);
      const Integer& b0 = bound[d];
      // All c0 congruent to the lift mod p^N within the bound.
      Integer start = c0 - ((c0 + b0) / mod) * mod;
      while (start - mod >= -b0) start -= mod;
      while (start < -b0) start += mod;
      for (Integer x = start; x <= b0; x += mod) {
        IntPoly f = c;
        f[0] = x;
        out.matches.push_back(f);
      }
      int i = 1;
      while (i < d && c[i] == bound[d - i]) {
        c[i] = -bound[d - i];
        ++i;
      }
      if (i >= d) break;
      ++c[i];
    }
  }
  return out;
}

ClassicalityVerdict classicality_evidence(const Residue& lambda, int k, std::int64_t l, int dmax) {
  double b = 2.0 * std::pow(static_cast<double>(l), (k - 1) / 2.0);
  return classicality_evidence(lambda, dmax, Integer(static_cast<long long>(std::ceil(b - 1e-9))));
}

}  // namespace quatforms
