#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cm/quad_fields.hpp"

using namespace cm;

namespace {
const PrecisionContext kCtx{};
}

TEST_CASE("fundamental discriminant classification") {
  for (long d : {-3, -4, -7, -8, -11, -15, -19, -20, -23, -43, -67, -163})
    CHECK(Discriminant{d}.is_fundamental());
  for (long d : {-12, -16, -27, -28, -63, -72, -100, -9, -25})
    CHECK_FALSE(Discriminant{d}.is_fundamental());
  CHECK_FALSE(Discriminant{-5}.is_valid());
  CHECK_FALSE(Discriminant{4}.is_valid());
}

TEST_CASE("theta_point matches the closed form") {
  auto th = theta_point(Discriminant{-4}, kCtx);
  CHECK((th.value - BigComplex::from_long(-2, 1, 200)).abs().below_2pow(-120));

  auto th3 = theta_point(Discriminant{-3}, kCtx);
  CHECK(th3.value.real().to_double() == doctest::Approx(-1.5));
  CHECK(th3.value.imag().to_double() == doctest::Approx(std::sqrt(3.0) / 2));

  CHECK_THROWS_AS(theta_point(Discriminant{-12}, kCtx), NotFundamental);
}

TEST_CASE("theta_point satisfies X^2 + B X + C = 0 numerically") {
  for (long d : {-3L, -4L, -7L, -15L, -163L}) {
    auto [B, C] = min_poly_coeffs(Discriminant{d});
    auto th = theta_point(Discriminant{d}, kCtx);
    long p = th.value.precision();
    BigComplex resid = th.value * th.value + th.value * B + BigComplex::from_long(C, 0, p);
    CHECK(resid.abs().below_2pow(-(kCtx.working_bits - 8)));
  }
}

TEST_CASE("min_poly_coeffs closed forms") {
  CHECK(min_poly_coeffs(Discriminant{-4}) == std::pair(4L, 5L));
  CHECK(min_poly_coeffs(Discriminant{-3}) == std::pair(3L, 3L));
  CHECK(min_poly_coeffs(Discriminant{-15}) == std::pair(15L, 60L));
  CHECK(min_poly_coeffs(Discriminant{-163}) == std::pair(163L, 6683L));
}

TEST_CASE("reduced form enumeration") {
  auto f15 = reduced_forms(Discriminant{-15});
  REQUIRE(f15.size() == 2);
  CHECK(f15[0].a == 1);
  CHECK(f15[0].b == 1);
  CHECK(f15[0].c == 4);
  CHECK(f15[1].a == 2);
  CHECK(f15[1].b == 1);
  CHECK(f15[1].c == 2);

  auto f4 = reduced_forms(Discriminant{-4});
  REQUIRE(f4.size() == 1);
  CHECK(f4[0].a == 1);
  CHECK(f4[0].b == 0);
  CHECK(f4[0].c == 1);

  auto f23 = reduced_forms(Discriminant{-23});
  REQUIRE(f23.size() == 3);
  CHECK(f23[0].a == 1);
  CHECK(f23[1].b == -1);
  CHECK(f23[2].b == 1);

  for (const auto& f : f23) {
    CHECK(f.is_reduced());
    CHECK(f.is_primitive());
    CHECK(f.discriminant() == -23);
  }

  CHECK_THROWS_AS(reduced_forms(Discriminant{-5}), BadDiscriminant);
}

TEST_CASE("class numbers reproduce the classical h = 1 list") {
  std::vector<long> ones;
  for (long d = -1; d >= -200; --d) {
    Discriminant D{d};
    if (D.is_fundamental() && class_number(D) == 1) ones.push_back(d);
  }
  CHECK(ones == std::vector<long>{-3, -4, -7, -8, -11, -19, -43, -67, -163});
  CHECK(class_number(Discriminant{-15}) == 2);
  CHECK(class_number(Discriminant{-72}) == 2);
  CHECK(class_number(Discriminant{-23}) == 3);
}

TEST_CASE("unit counts") {
  CHECK(unit_count(Discriminant{-4}) == 4);
  CHECK(unit_count(Discriminant{-3}) == 6);
  CHECK(unit_count(Discriminant{-7}) == 2);
}

TEST_CASE("form_to_cm_point substitution") {
  CHECK((form_to_cm_point(QuadForm{1, 0, 1}, kCtx) - BigComplex::i(200)).abs().below_2pow(-120));
  BigComplex z = form_to_cm_point(QuadForm{2, 1, 2}, kCtx);
  CHECK(z.real().to_double() == doctest::Approx(-0.25));
  CHECK(z.imag().to_double() == doctest::Approx(std::sqrt(15.0) / 4));
}
