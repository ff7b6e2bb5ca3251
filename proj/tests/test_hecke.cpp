#include <doctest.h>

#include "quatforms/errors.hpp"
#include "quatforms/hecke.hpp"
#include "quatforms/linalg.hpp"
#include "quatforms/serialize.hpp"

using namespace quatforms;

namespace {

const LevelSpec kSeven{7, 1, 0};
const LevelSpec kEleven{11, 1, 1, GammaStyle::Projective, Character::Quadratic};

bool commute(const ResidueMatrix& A, const ResidueMatrix& B, int N) { return min_valuation(A * B - B * A) >= N; }

}  // namespace

TEST_CASE("descriptors parse and reject bad sites") {
  CHECK(HeckeDescriptor::parse("T3", 7) == HeckeDescriptor::T(3));
  CHECK(HeckeDescriptor::parse("U7", 7) == HeckeDescriptor::U(7));
  CHECK(HeckeDescriptor::parse("W", 7) == HeckeDescriptor::W());
  CHECK(HeckeDescriptor::T(13).name() == "T13");
  for (const char* bad : {"T2", "T7", "T9", "U5", "X3", "T", ""}) {
    CAPTURE(std::string(bad));
    CHECK_THROWS_AS(HeckeDescriptor::parse(bad, 7), ValidationError);
  }
}

TEST_CASE("coset counts") {
  CHECK(coset_reps(HeckeDescriptor::T(3), 7).size() == 4);
  CHECK(coset_reps(HeckeDescriptor::T(13), 7).size() == 14);
  CHECK(coset_reps(HeckeDescriptor::U(7), 7).size() == 7);
}

TEST_CASE("weight-2 Brandt matrices") {
  FormSpace space = make_space(kSeven, 2, Model::Classical, 6);
  const auto& stab = space.class_set().stabilizer_orders();
  for (std::int64_t l : {3, 5, 13, 17}) {
    ResidueMatrix B = hecke_matrix(HeckeDescriptor::T(l), space);
    for (Eigen::Index i = 0; i < B.rows(); ++i) {
      Residue row(space.ring(), 0);
      for (Eigen::Index j = 0; j < B.cols(); ++j) {
        row += B(i, j);
        CHECK(Residue(space.ring(), stab[j]) * B(i, j) == Residue(space.ring(), stab[i]) * B(j, i));
      }
      CHECK(row == Residue(space.ring(), l + 1));
    }
  }
}

TEST_CASE("apply agrees with the matrix") {
  for (Model model : {Model::Classical, Model::Overconvergent}) {
    FormSpace space = make_space(kEleven, 3, model, 10, 8);
    AutForm f = AutForm::zero(space);
    for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) f.coeffs(i) = Residue(space.ring(), 3 * i * i + 1);
    for (auto desc : {HeckeDescriptor::T(3), HeckeDescriptor::U(11), HeckeDescriptor::W()}) {
      HeckeOperator op(space, desc);
      ResidueVector expect = op.matrix() * f.coeffs;
      CHECK(op.apply(f).coeffs == expect);
    }
  }
}

TEST_CASE("Hecke operators commute") {
  FormSpace space = make_space(kEleven, 3, Model::Classical, 12);
  auto T3 = hecke_matrix(HeckeDescriptor::T(3), space);
  auto T5 = hecke_matrix(HeckeDescriptor::T(5), space);
  auto U = hecke_matrix(HeckeDescriptor::U(11), space);
  auto W = hecke_matrix(HeckeDescriptor::W(), space);
  CHECK(commute(T3, T5, 12));
  CHECK(commute(T3, U, 12));
  CHECK(commute(T3, W, 12));
  CHECK(commute(U, W, 12));

  FormSpace over = make_space(kSeven, 1, Model::Overconvergent, 12, 12);
  auto oT3 = hecke_matrix(HeckeDescriptor::T(3), over);
  auto oU = hecke_matrix(HeckeDescriptor::U(7), over);
  // Truncation breaks exact commutation; the defect sits in high coefficients.
  CHECK(min_valuation(oT3 * oU - oU * oT3) >= 1);
}

TEST_CASE("U_p is compact on overconvergent forms") {
  FormSpace space = make_space(kSeven, 1, Model::Overconvergent, 14, 12);
  ResidueMatrix U = hecke_matrix(HeckeDescriptor::U(7), space);
  const int M = space.block_size();
  for (Eigen::Index r = 0; r < U.rows(); ++r) {
    const int m = static_cast<int>(r % M);
    for (Eigen::Index c = 0; c < U.cols(); ++c) CHECK(U(r, c).valuation() >= m);
  }
}

TEST_CASE("classical char poly divides the overconvergent one") {
  const int k = 4;
  FormSpace classical = make_space(kSeven, k, Model::Classical, 10);
  FormSpace over = make_space(kSeven, k, Model::Overconvergent, 10, 8);
  for (auto desc : {HeckeDescriptor::T(3), HeckeDescriptor::U(7)}) {
    CAPTURE(desc.name());
    PadicPoly small = charpoly(hecke_matrix(desc, classical));
    PadicPoly big = charpoly(hecke_matrix(desc, over));
    PadicPoly r = poly_remainder(big, small);
    bool zero = true;
    for (Eigen::Index i = 0; i < r.coeffs.size(); ++i) zero = zero && r.coeffs(i).valuation() >= 8;
    CHECK(zero);
  }
}

TEST_CASE("left action rescales T_l") {
  for (int k : {2, 3, 5}) {
    FormSpace space = make_space(kSeven, k, Model::Classical, 8);
    auto right = hecke_matrix(HeckeDescriptor::T(3), space);
    auto left = hecke_matrix(HeckeDescriptor::T(3), space, ConventionProfile{UpOrientation::Lower, ActionSide::Left});
    Residue scale(space.ring(), 1);
    for (int i = 2; i < k; ++i) scale *= Residue(space.ring(), 3);
    CHECK(ResidueMatrix(left * scale) == right);
  }
}

TEST_CASE("witness tables round-trip and reject tampering") {
  FormSpace space = make_space(kEleven, 3, Model::Classical, 10);
  HeckeOperator op(space, HeckeDescriptor::T(3));
  Json j = terms_to_json(op.terms());
  auto rebuilt = HeckeOperator::from_terms(space, op.descriptor(), op.profile(), terms_from_json(j));
  CHECK(rebuilt.matrix() == op.matrix());

  auto terms = terms_from_json(j);
  terms[0].global = terms[0].global * Quat::integral(0, 1, 0, 0);
  CHECK_THROWS_AS(HeckeOperator::from_terms(space, op.descriptor(), op.profile(), terms), ValidationError);

  terms = terms_from_json(j);
  terms.pop_back();
  CHECK_THROWS_AS(HeckeOperator::from_terms(space, op.descriptor(), op.profile(), terms), ValidationError);

  terms = terms_from_json(j);
  terms[0].target = space.blocks();
  CHECK_THROWS_AS(HeckeOperator::from_terms(space, op.descriptor(), op.profile(), terms), ValidationError);

  Json broken = j;
  broken[0].erase(broken[0].begin());
  CHECK_THROWS_AS(terms_from_json(broken), ValidationError);
}

TEST_CASE("stabilizer and weight validation") {
  CHECK_THROWS_AS(make_space(LevelSpec{7, 1, 0, GammaStyle::Projective}, 2, Model::Classical, 4), UnsupportedStabilizer);
  CHECK_THROWS_AS(make_space(kSeven, 1, Model::Classical, 4), NegativeWeightOnPolynomial);
  CHECK_THROWS_AS(make_space(kSeven, 0, Model::Overconvergent, 4, 4), ValidationError);
}
