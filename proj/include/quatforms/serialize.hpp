#pragma once

#include <string>

#include <json.hpp>

#include "quatforms/spectral.hpp"

namespace quatforms {

using Json = nlohmann::ordered_json;

/// Residues and integers as decimal strings (residues in [0, p^N)).
Json residue_json(const Residue& r);
Json integer_json(const Integer& n);
/// Doubled coordinates [x0, x1, x2, x3].
Json quat_json(const Quat& q);
Json mat2_json(const Mat2& g);
Json level_json(const LevelSpec& level);
Json matrix_json(const ResidueMatrix& A);
Json int_poly_json(const IntPoly& f);
Json padic_poly_json(const PadicPoly& f);
Json rational_json(const Rational& r);

/// Stable text identifying a level, used in cache keys.
std::string level_key(const LevelSpec& level);

Json class_set_json(const ClassSet& cs);
Json slope_json(const SlopeSpectrum& s);
Json eigen_json(const EigenApprox& e);

Json terms_to_json(const std::vector<HeckeTerm>& terms);
/// Inverse of terms_to_json; action and local are left for from_terms.
std::vector<HeckeTerm> terms_from_json(const Json& j);

}  // namespace quatforms
