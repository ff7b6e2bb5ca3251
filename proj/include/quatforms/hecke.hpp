#pragma once

#include <memory>
#include <string>
#include <vector>

#include "quatforms/class_set.hpp"

namespace quatforms {

enum class HeckeKind { T, U, W };

/// T_l for a prime l not dividing 2p, U_p, or W = [U (1+i) U] at 2.
struct HeckeDescriptor {
  HeckeKind kind = HeckeKind::T;
  std::int64_t site = 0;

  static HeckeDescriptor T(std::int64_t l) { return {HeckeKind::T, l}; }
  static HeckeDescriptor U(std::int64_t p) { return {HeckeKind::U, p}; }
  static HeckeDescriptor W() { return {HeckeKind::W, 2}; }
  /// "T3", "U11", "W"; the U site must equal p.
  static HeckeDescriptor parse(const std::string& s, std::int64_t p);
  std::string name() const;
  friend bool operator==(const HeckeDescriptor&, const HeckeDescriptor&) = default;
};

/// Lower: U_p cosets (p 0; p t 1).  Upper: (1 t; 0 p), classical only.
enum class UpOrientation { Lower, Upper };
/// Right: (f|eta)(g) = f(g eta^{-1}) eta_p.  Left: f(g eta) eta^{-1}, which
/// rescales T_l by l^{2-k}; not defined for U_p.
enum class ActionSide { Right, Left };
/// Kernel recipe only: which element of a left-unit orbit serves as the
/// global witness.  Congruent picks the one that is 1 mod m^e at 2,
/// Lexicographic the least doubled coordinates.
enum class WitnessPolicy { Congruent, Lexicographic };

struct ConventionProfile {
  UpOrientation orientation = UpOrientation::Lower;
  ActionSide side = ActionSide::Right;
  WitnessPolicy witness = WitnessPolicy::Congruent;
  friend bool operator==(const ConventionProfile&, const ConventionProfile&) = default;
};

/// The profile that reproduces the published T_3 polynomial; frozen.
inline constexpr ConventionProfile kCalibratedProfile{};

std::string to_string(const ConventionProfile& c);

enum class Model { Classical, Overconvergent };

/// Weight-k forms on a class set: k-1 polynomial coefficients per class
/// (classical) or M series coefficients (overconvergent).
class FormSpace {
 public:
  FormSpace(std::shared_ptr<const ClassSet> cs, int k, Model model);

  const ClassSet& class_set() const { return *cs_; }
  std::shared_ptr<const ClassSet> class_set_ptr() const { return cs_; }
  int weight() const { return k_; }
  Model model() const { return model_; }
  const PrecCtx& ctx() const { return cs_->ctx(); }
  const ResidueRing& ring() const { return cs_->ctx().ring(); }
  int blocks() const { return cs_->size(); }
  int block_size() const { return model_ == Model::Classical ? k_ - 1 : cs_->ctx().M; }
  int dimension() const { return blocks() * block_size(); }
  /// Character value on the d-entry of a level matrix.
  int character(const Mat2& u) const;

 private:
  std::shared_ptr<const ClassSet> cs_;
  int k_;
  Model model_;
};

/// A form as the stacked coefficient tuple (f(d_1), ..., f(d_m)).
struct AutForm {
  ResidueVector coeffs;

  static AutForm zero(const FormSpace& space);
  auto block(const FormSpace& space, int j) { return coeffs.segment(j * space.block_size(), space.block_size()); }
  auto block(const FormSpace& space, int j) const { return coeffs.segment(j * space.block_size(), space.block_size()); }
};

/// Local coset representative at a place, integer entries (a, b, c, d).
struct LocalCoset {
  std::int64_t place = 0;
  std::array<std::int64_t, 4> matrix{};
};

std::vector<LocalCoset> coset_reps(const HeckeDescriptor& desc, std::int64_t p,
                                   const ConventionProfile& profile = kCalibratedProfile);

/// One summand of (T f)(d_j) = sum sign * f(d_target) | action, where
/// action = lift(target)^{-1} split(global) lift(source) (scaled by
/// 1/N(global) for the left action side) and local is its level factor.
struct HeckeTerm {
  int source = 0;
  int target = 0;
  int coset = 0;
  Quat global;
  int sign = 1;
  Mat2 action;
  Mat2 local;
};

/// Hecke operator on a form space: the witness table is computed once and
/// reused by matrix() and apply().
class HeckeOperator {
 public:
  HeckeOperator(const FormSpace& space, const HeckeDescriptor& desc,
                const ConventionProfile& profile = kCalibratedProfile);
  /// Rebuilds an operator from a cached witness table (source, target,
  /// coset, global, sign); action matrices are recomputed and each term is
  /// checked to land in the level group.  Throws ValidationError.
  static HeckeOperator from_terms(const FormSpace& space, const HeckeDescriptor& desc,
                                  const ConventionProfile& profile, std::vector<HeckeTerm> terms);

  const FormSpace& space() const { return space_; }
  const HeckeDescriptor& descriptor() const { return desc_; }
  const ConventionProfile& profile() const { return profile_; }
  const std::vector<HeckeTerm>& terms() const { return terms_; }

  ResidueMatrix matrix() const;
  AutForm apply(const AutForm& f) const;

 private:
  HeckeOperator(const FormSpace& space, const HeckeDescriptor& desc, const ConventionProfile& profile, int);
  void adopt(std::vector<HeckeTerm> terms);

  FormSpace space_;
  HeckeDescriptor desc_;
  ConventionProfile profile_;
  std::vector<HeckeTerm> terms_;
};

/// Witness for output class j and coset t: the term of the operator.
HeckeTerm global_witness(const HeckeDescriptor& desc, int t, int j, const FormSpace& space,
                         const ConventionProfile& profile = kCalibratedProfile);

ResidueMatrix hecke_matrix(const HeckeDescriptor& desc, const FormSpace& space,
                           const ConventionProfile& profile = kCalibratedProfile);
AutForm apply(const HeckeDescriptor& desc, const AutForm& f, const FormSpace& space,
              const ConventionProfile& profile = kCalibratedProfile);

/// Convenience: class set plus form space in one step.
FormSpace make_space(const LevelSpec& level, int k, Model model, int N, int M = 1);

}  // namespace quatforms
