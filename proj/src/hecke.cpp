#include "quatforms/hecke.hpp"

#include <algorithm>

#include "quatforms/cache.hpp"
#include "quatforms/errors.hpp"
#include "quatforms/serialize.hpp"

namespace quatforms {

namespace {

const Quat kIdentity(2, 0, 0, 0);
const Quat kOnePlusI(2, 2, 0, 0);

int legendre(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  std::int64_t r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

// q * eta^{-1} for eta = 1 or 1+i.
Quat divide_eta(const Quat& q, const Quat& eta) {
  if (eta == kIdentity) return q;
  return exact_divide(q * eta.conj(), eta.norm());
}

// Right multiplication by eta_t^{-1} for the U_p coset t; entries that the
// coset divides by p must already vanish mod p.
Mat2 strip_coset(const Mat2& X, int t, UpOrientation orientation) {
  const Residue tt(*X(0, 0).ring(), t);
  Mat2 g;
  if (orientation == UpOrientation::Lower) {
    g << X(0, 0).divide_by_prime_power(1) - tt * X(0, 1), X(0, 1),
        X(1, 0).divide_by_prime_power(1) - tt * X(1, 1), X(1, 1);
  } else {
    g << X(0, 0), (X(0, 1) - tt * X(0, 0)).divide_by_prime_power(1),
        X(1, 0), (X(1, 1) - tt * X(1, 0)).divide_by_prime_power(1);
  }
  return g;
}

bool coset_fits(const Mat2& X, int t, UpOrientation orientation) {
  const Residue tt(*X(0, 0).ring(), t);
  if (orientation == UpOrientation::Lower) return X(0, 0).valuation() >= 1 && X(1, 0).valuation() >= 1;
  return (X(0, 1) - tt * X(0, 0)).valuation() >= 1 && (X(1, 1) - tt * X(1, 0)).valuation() >= 1;
}

Quat eta_at_two(const HeckeDescriptor& desc) { return desc.kind == HeckeKind::W ? kOnePlusI : kIdentity; }

Quat choose_in_orbit(const std::vector<Quat>& orbit, const Quat& eta2, const ClassSet& cs, WitnessPolicy policy) {
  if (cs.level().recipe == GroupRecipe::Diagonal || policy == WitnessPolicy::Lexicographic) return orbit.front();
  const auto& Y = TwoAdicQuotient::get(cs.level().e);
  for (const Quat& q : orbit)
    if (Y.index_of(divide_eta(q, eta2)) == Y.identity()) return q;
  throw WitnessNotFound("no orbit element is 1 mod m^e at 2");
}

std::vector<std::vector<Quat>> orbits_for(const HeckeDescriptor& desc) {
  if (desc.kind == HeckeKind::W) return {{kOnePlusI}};
  return left_unit_orbits(desc.site);
}

}  // namespace

HeckeDescriptor HeckeDescriptor::parse(const std::string& s, std::int64_t p) {
  if (s == "W") return W();
  if (s.size() < 2 || (s[0] != 'T' && s[0] != 'U')) throw ValidationError("unknown operator '" + s + "'");
  std::int64_t site = 0;
  try {
    std::size_t pos = 0;
    site = std::stoll(s.substr(1), &pos);
    if (pos != s.size() - 1) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw ValidationError("unknown operator '" + s + "'");
  }
  if (s[0] == 'U') {
    if (site != p) throw ValidationError("U operator must sit at the level prime");
    return U(site);
  }
  if (site == 2 || site == p || !is_prime(site)) throw ValidationError("T_l needs a prime l not dividing 2p");
  return T(site);
}

std::string HeckeDescriptor::name() const {
  switch (kind) {
    case HeckeKind::T: return "T" + std::to_string(site);
    case HeckeKind::U: return "U" + std::to_string(site);
    default: return "W";
  }
}

std::string to_string(const ConventionProfile& c) {
  return std::string(c.orientation == UpOrientation::Lower ? "lower" : "upper") + "/" +
         (c.side == ActionSide::Right ? "right" : "left") + "/" +
         (c.witness == WitnessPolicy::Congruent ? "congruent" : "lexicographic");
}

FormSpace::FormSpace(std::shared_ptr<const ClassSet> cs, int k, Model model) : cs_(std::move(cs)), k_(k), model_(model) {
  if (model == Model::Classical && k < 2) throw NegativeWeightOnPolynomial("classical model needs weight k >= 2");
  if (model == Model::Overconvergent && k < 1) throw ValidationError("weight must be >= 1");
  const ResidueRing& ring = cs_->ctx().ring();
  for (int j = 0; j < cs_->size(); ++j) {
    const Mat2& L = cs_->lifts()[j];
    for (const Quat& g : cs_->stabilizer(j)) {
      if (g == kIdentity) continue;
      Mat2 u = adjugate(L) * cs_->splitting()(g) * L;
      int s = 0;
      if (u == make_mat2(ring, 1, 0, 0, 1)) s = 1;
      if (u == make_mat2(ring, -1, 0, 0, -1)) s = (k % 2 == 0) ? 1 : -1;
      if (s == 0) throw UnsupportedStabilizer("class " + std::to_string(j) + " has a non-scalar stabilizer");
      if (s * character(u) != 1)
        throw UnsupportedStabilizer("class " + std::to_string(j) + " is killed by its stabilizer at this weight");
    }
  }
}

int FormSpace::character(const Mat2& u) const {
  if (cs_->level().character == Character::Trivial) return 1;
  const std::int64_t p = cs_->level().p;
  return legendre(static_cast<std::int64_t>(u(1, 1).reduce_mod(static_cast<std::uint64_t>(p))), p);
}

AutForm AutForm::zero(const FormSpace& space) {
  return AutForm{ResidueVector::Constant(space.dimension(), Residue(space.ring(), 0))};
}

std::vector<LocalCoset> coset_reps(const HeckeDescriptor& desc, std::int64_t p, const ConventionProfile& profile) {
  std::vector<LocalCoset> out;
  const std::int64_t l = desc.site;
  switch (desc.kind) {
    case HeckeKind::T:
      for (std::int64_t i = 0; i < l; ++i) out.push_back({l, {1, i, 0, l}});
      out.push_back({l, {l, 0, 0, 1}});
      break;
    case HeckeKind::U:
      for (std::int64_t t = 0; t < p; ++t)
        out.push_back(profile.orientation == UpOrientation::Lower ? LocalCoset{p, {p, 0, p * t, 1}}
                                                                  : LocalCoset{p, {1, t, 0, p}});
      break;
    case HeckeKind::W:
      out.push_back({2, kOnePlusI.x});
      break;
  }
  return out;
}

namespace {

void check_descriptor(const HeckeDescriptor& desc, const FormSpace& space, const ConventionProfile& profile) {
  const std::int64_t p = space.class_set().level().p;
  if (desc.kind == HeckeKind::T && (desc.site == 2 || desc.site == p || !is_prime(desc.site)))
    throw ValidationError("T_l needs a prime l not dividing 2p");
  if (desc.kind == HeckeKind::U && desc.site != p) throw ValidationError("U operator must sit at the level prime");
  if (desc.kind == HeckeKind::U && profile.side == ActionSide::Left)
    throw InvalidMonoidElement("the left action side is undefined for U_p");
  if (desc.kind == HeckeKind::U && profile.orientation == UpOrientation::Upper && space.model() == Model::Overconvergent)
    throw InvalidMonoidElement("upper U_p cosets leave the monoid; classical model only");
}

void finish(HeckeTerm& t, const HeckeDescriptor& desc, const FormSpace& space, const ConventionProfile& profile) {
  const ClassSet& cs = space.class_set();
  const Mat2 m = adjugate(cs.lifts()[t.target]) * cs.splitting()(t.global) * cs.lifts()[t.source];
  t.local = desc.kind == HeckeKind::U ? strip_coset(m, t.coset, profile.orientation) : m;
  t.sign = space.character(t.local);
  t.action = m;
  if (profile.side == ActionSide::Left) {
    Residue s = Residue(space.ring(), t.global.norm()).inverse();
    t.action *= s;
  }
}

HeckeTerm witness(const HeckeDescriptor& desc, int t, int j, const FormSpace& space, const ConventionProfile& profile,
                  const std::vector<std::vector<Quat>>& orbits) {
  const ClassSet& cs = space.class_set();
  const Mat2& L = cs.lifts()[j];
  const Quat eta2 = eta_at_two(desc);
  const std::vector<Quat>* orbit = nullptr;
  int coset = t;
  if (desc.kind == HeckeKind::U) {
    for (const auto& o : orbits)
      if (coset_fits(cs.splitting()(o.front()) * L, t, profile.orientation)) {
        orbit = &o;
        break;
      }
    if (!orbit) throw WitnessNotFound("no norm-p orbit matches coset " + std::to_string(t));
  } else {
    orbit = &orbits.at(static_cast<std::size_t>(t));
  }
  const Quat beta = choose_in_orbit(*orbit, eta2, cs, profile.witness);
  Mat2 gp = cs.splitting()(beta) * L;
  if (desc.kind == HeckeKind::U) gp = strip_coset(gp, t, profile.orientation);
  int y = 0;
  if (cs.level().recipe == GroupRecipe::Diagonal) {
    const Quat& yj = TwoAdicQuotient::get(cs.level().e).representatives()[cs.reps()[j].y];
    y = cs.y_index(divide_eta(beta * yj, eta2));
  }
  Decomposition d = cs.decompose(gp, y);
  HeckeTerm term;
  term.source = j;
  term.target = d.cls;
  term.coset = coset;
  term.global = d.gamma.conj() * beta;
  finish(term, desc, space, profile);
  return term;
}

std::string witness_key(const HeckeDescriptor& desc, const FormSpace& space, const ConventionProfile& profile) {
  return level_key(space.class_set().level()) + "|" + desc.name() + "|" + to_string(profile);
}

}  // namespace

HeckeTerm global_witness(const HeckeDescriptor& desc, int t, int j, const FormSpace& space,
                         const ConventionProfile& profile) {
  check_descriptor(desc, space, profile);
  return witness(desc, t, j, space, profile, orbits_for(desc));
}

HeckeOperator::HeckeOperator(const FormSpace& space, const HeckeDescriptor& desc, const ConventionProfile& profile, int)
    : space_(space), desc_(desc), profile_(profile) {
  check_descriptor(desc, space, profile);
}

HeckeOperator::HeckeOperator(const FormSpace& space, const HeckeDescriptor& desc, const ConventionProfile& profile)
    : HeckeOperator(space, desc, profile, 0) {
  auto& cache = ResultCache::global();
  const std::string key = witness_key(desc, space, profile);
  if (cache.enabled()) {
    if (auto j = cache.load("witness", key)) {
      try {
        adopt(terms_from_json(*j));
        return;
      } catch (const ValidationError&) {
        terms_.clear();
      }
    }
  }
  const auto orbits = orbits_for(desc);
  const int ncosets = static_cast<int>(coset_reps(desc, space.class_set().level().p, profile).size());
  for (int j = 0; j < space.blocks(); ++j)
    for (int t = 0; t < ncosets; ++t) terms_.push_back(witness(desc, t, j, space, profile, orbits));
  if (cache.enabled()) cache.store("witness", key, terms_to_json(terms_));
}

void HeckeOperator::adopt(std::vector<HeckeTerm> terms) {
  const ClassSet& cs = space_.class_set();
  const int ncosets = static_cast<int>(coset_reps(desc_, cs.level().p, profile_).size());
  if (static_cast<int>(terms.size()) != ncosets * space_.blocks())
    throw ValidationError("cached witness table has the wrong length");
  const std::int64_t norm = desc_.kind == HeckeKind::W ? 2 : desc_.site;
  const int n = cs.level().n;
  for (HeckeTerm& t : terms) {
    if (t.source < 0 || t.source >= space_.blocks() || t.target < 0 || t.target >= space_.blocks())
      throw ValidationError("cached witness refers to a missing class");
    if (t.coset < 0 || t.coset >= ncosets) throw ValidationError("cached witness refers to a missing coset");
    if (t.global.norm() != norm) throw ValidationError("cached witness has the wrong norm");
    int sign = t.sign;
    finish(t, desc_, space_, profile_);
    if (t.sign != sign) throw ValidationError("cached witness has an inconsistent character value");
    const Residue one(space_.ring(), 1);
    bool level_ok = t.local(1, 0).valuation() >= n;
    if (cs.level().style == GammaStyle::UnitColumn) level_ok = level_ok && (t.local(1, 1) - one).valuation() >= n;
    if (!level_ok) throw ValidationError("cached witness does not land in the level group");
  }
  terms_ = std::move(terms);
}

HeckeOperator HeckeOperator::from_terms(const FormSpace& space, const HeckeDescriptor& desc,
                                        const ConventionProfile& profile, std::vector<HeckeTerm> terms) {
  HeckeOperator op(space, desc, profile, 0);
  op.adopt(std::move(terms));
  return op;
}

ResidueMatrix HeckeOperator::matrix() const {
  const int bs = space_.block_size();
  const bool classical = space_.model() == Model::Classical;
  ResidueMatrix A = ResidueMatrix::Constant(space_.dimension(), space_.dimension(), Residue(space_.ring(), 0));
  for (const HeckeTerm& t : terms_) {
    ResidueMatrix W = weight_action_matrix(t.action, space_.weight(), bs, classical);
    auto blk = A.block(t.source * bs, t.target * bs, bs, bs);
    if (t.sign > 0)
      blk += W;
    else
      blk -= W;
  }
  return A;
}

AutForm HeckeOperator::apply(const AutForm& f) const {
  const bool classical = space_.model() == Model::Classical;
  AutForm out = AutForm::zero(space_);
  for (const HeckeTerm& t : terms_) {
    ResidueVector img = act_on_coefficients(f.block(space_, t.target), t.action, space_.weight(), classical);
    if (t.sign > 0)
      out.block(space_, t.source) += img;
    else
      out.block(space_, t.source) -= img;
  }
  return out;
}

ResidueMatrix hecke_matrix(const HeckeDescriptor& desc, const FormSpace& space, const ConventionProfile& profile) {
  return HeckeOperator(space, desc, profile).matrix();
}

AutForm apply(const HeckeDescriptor& desc, const AutForm& f, const FormSpace& space, const ConventionProfile& profile) {
  return HeckeOperator(space, desc, profile).apply(f);
}

FormSpace make_space(const LevelSpec& level, int k, Model model, int N, int M) {
  auto cs = std::make_shared<const ClassSet>(level, PrecCtx(level.p, N, M));
  return FormSpace(cs, k, model);
}

}  // namespace quatforms
