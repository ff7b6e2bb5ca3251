#pragma once

#include <string>
#include <vector>

#include "quatforms/spectral.hpp"

namespace quatforms {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
};

struct ProfileTrial {
  ConventionProfile profile;
  bool reproduces = false;
  std::string outcome;
};

/// Tries every orientation and action side on T_3 (weight 5, U_1(7)) and
/// U_11 (weight 3, level 11 with 1+m); the first profile reproducing both
/// reference polynomials is selected.
struct Calibration {
  ConventionProfile selected;
  bool found = false;
  std::vector<ProfileTrial> trials;
};
Calibration calibrate_profile();

/// Witness policy on the kernel-recipe space (5, 1, e=3) under which the
/// degree-24 reference product divides the U_5 char poly.
struct Degree24Calibration {
  bool found = false;
  WitnessPolicy policy = WitnessPolicy::Congruent;
  std::vector<std::string> outcomes;  // one per policy tried
};
Degree24Calibration calibrate_degree24();

/// Reference polynomials of the acceptance suite.
IntPoly reference_t3_weight5();
IntPoly reference_u11_weight3();
IntPoly reference_u5_degree24();

constexpr int kCriterionCount = 8;
CriterionResult run_criterion(int id);
/// All criteria when ids is empty.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {});
std::string format_line(const CriterionResult& r);

}  // namespace quatforms
