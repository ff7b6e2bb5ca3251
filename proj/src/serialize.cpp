#include "quatforms/serialize.hpp"

#include "quatforms/errors.hpp"

namespace quatforms {

Json residue_json(const Residue& r) { return r.to_integer().str(); }
Json integer_json(const Integer& n) { return n.str(); }
Json quat_json(const Quat& q) { return Json::array({q.x[0], q.x[1], q.x[2], q.x[3]}); }

Json mat2_json(const Mat2& g) {
  return Json::array({Json::array({residue_json(g(0, 0)), residue_json(g(0, 1))}),
                      Json::array({residue_json(g(1, 0)), residue_json(g(1, 1))})});
}

Json level_json(const LevelSpec& level) {
  Json j;
  j["p"] = level.p;
  j["n"] = level.n;
  j["e"] = level.e;
  j["gamma_style"] = to_string(level.style);
  j["character"] = to_string(level.character);
  j["recipe"] = to_string(level.recipe);
  return j;
}

Json matrix_json(const ResidueMatrix& A) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < A.cols(); ++j) row.push_back(residue_json(A(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json int_poly_json(const IntPoly& f) {
  Json j;
  j["text"] = int_poly_to_string(f);
  Json c = Json::array();
  for (const Integer& a : f) c.push_back(integer_json(a));
  j["coefficients"] = std::move(c);
  return j;
}

Json padic_poly_json(const PadicPoly& f) {
  Json c = Json::array();
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) c.push_back(residue_json(f.coeffs(i)));
  return c;
}

Json rational_json(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string level_key(const LevelSpec& level) {
  return "p=" + std::to_string(level.p) + ",n=" + std::to_string(level.n) + ",e=" + std::to_string(level.e) + "," +
         to_string(level.style) + "," + to_string(level.character) + "," + to_string(level.recipe);
}

Json class_set_json(const ClassSet& cs) {
  Json j;
  j["level"] = level_json(cs.level());
  j["precision"] = cs.ctx().N;
  j["size"] = cs.size();
  j["x_size"] = cs.x_size();
  j["y_size"] = cs.y_size();
  j["group_order"] = cs.group().size();
  Json reps = Json::array();
  const auto& ys = TwoAdicQuotient::get(cs.level().recipe == GroupRecipe::Diagonal ? cs.level().e : 0).representatives();
  for (int i = 0; i < cs.size(); ++i) {
    Json r;
    r["index"] = i;
    r["column"] = Json::array({cs.reps()[i].s[0], cs.reps()[i].s[1]});
    r["y"] = cs.reps()[i].y;
    r["y_label"] = quat_json(ys[cs.reps()[i].y]);
    r["stabilizer_order"] = cs.stabilizer_orders()[i];
    r["lift"] = mat2_json(cs.lifts()[i]);
    reps.push_back(std::move(r));
  }
  j["classes"] = std::move(reps);
  return j;
}

Json slope_json(const SlopeSpectrum& s) {
  Json j;
  j["truncation"] = s.truncation;
  j["precision"] = s.precision;
  j["reliable_below"] = s.reliable_below;
  j["stable_count"] = s.stable_count;
  Json slopes = Json::array();
  for (std::size_t i = 0; i < s.slopes.size(); ++i) {
    Json e;
    e["slope"] = rational_json(s.slopes[i]);
    e["stable"] = static_cast<bool>(s.stable[i]);
    slopes.push_back(std::move(e));
  }
  j["slopes"] = std::move(slopes);
  Json segs = Json::array();
  for (const auto& seg : s.segments) {
    Json e;
    e["slope"] = rational_json(seg.value);
    e["multiplicity"] = seg.multiplicity;
    e["reliable"] = seg.reliable;
    e["saturated"] = seg.saturated;
    segs.push_back(std::move(e));
  }
  j["segments"] = std::move(segs);
  return j;
}

Json eigen_json(const EigenApprox& e) {
  Json j;
  j["precision_loss"] = e.precision_loss;
  j["trusted_digits"] = e.trusted_digits;
  Json ev;
  for (const auto& [desc, reading] : e.eigenvalues) {
    Json r;
    r["value"] = residue_json(reading.value);
    r["symmetric"] = integer_json(symmetric_lift_mod(reading.value, reading.digits));
    r["digits"] = reading.digits;
    r["loss"] = reading.loss;
    ev[desc.name()] = std::move(r);
  }
  j["eigenvalues"] = std::move(ev);
  Json c = Json::array();
  for (Eigen::Index i = 0; i < e.form.coeffs.size(); ++i) c.push_back(residue_json(e.form.coeffs(i)));
  j["form"] = std::move(c);
  return j;
}

Json terms_to_json(const std::vector<HeckeTerm>& terms) {
  Json arr = Json::array();
  for (const HeckeTerm& t : terms)
    arr.push_back(Json::array({t.source, t.target, t.coset, quat_json(t.global), t.sign}));
  return arr;
}

std::vector<HeckeTerm> terms_from_json(const Json& j) {
  std::vector<HeckeTerm> out;
  try {
    for (const auto& e : j) {
      HeckeTerm t;
      t.source = e.at(0).get<int>();
      t.target = e.at(1).get<int>();
      t.coset = e.at(2).get<int>();
      const auto& g = e.at(3);
      t.global = Quat(g.at(0).get<std::int64_t>(), g.at(1).get<std::int64_t>(), g.at(2).get<std::int64_t>(),
                      g.at(3).get<std::int64_t>());
      t.sign = e.at(4).get<int>();
      out.push_back(std::move(t));
    }
  } catch (const std::exception& ex) {
    throw ValidationError(std::string("malformed witness table: ") + ex.what());
  }
  return out;
}

}  // namespace quatforms
