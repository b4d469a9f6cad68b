#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cm/numerics.hpp"

using namespace cm;

namespace {
const PrecisionContext kCtx{};
}

TEST_CASE("context invariants are enforced") {
  CHECK_THROWS_AS((PrecisionContext{32, 48, 8192}).validate(), Error);
  CHECK_THROWS_AS((PrecisionContext{128, 8, 8192}).validate(), Error);
  CHECK_THROWS_AS((PrecisionContext{128, 48, 64}).validate(), Error);
  CHECK_NOTHROW(kCtx.validate());
}

TEST_CASE("recognize_integer near-integer and midpoint") {
  long p = 300;
  BigReal x = BigReal::from_long(1728, p) + BigReal::two_pow(-200, p);
  CHECK(recognize_integer(x, PrecisionContext{128, 64, 8192}) == 1728);

  BigReal half = BigReal::from_mpq(mpq_class(1, 2), p);
  CHECK_THROWS_AS(recognize_integer(half, kCtx), NotRecognized);
}

TEST_CASE("recognize_integer is precision-monotone and idempotent") {
  for (long bits : {128L, 256L, 512L}) {
    BigReal x = BigReal::from_long(-147197952000L, bits) + BigReal::two_pow(-100, bits);
    PrecisionContext c = kCtx.with_bits(bits);
    CHECK(recognize_integer(x, c) == mpz_class("-147197952000"));
  }
}

TEST_CASE("recognize_rational basics") {
  long p = 256;
  BigReal q = BigReal::from_mpq(mpq_class(1, 4), p) + BigReal::two_pow(-120, p);
  CHECK(recognize_rational(q, 100, kCtx) == mpq_class(1, 4));

  CHECK(recognize_rational(BigReal::from_long(3, p), 1, kCtx) == mpq_class(3));

  // pi at tight tolerance with tiny denominators
  BigReal pi = BigReal::pi(p);
  CHECK_THROWS_AS(recognize_rational(pi, 10, kCtx), NotRecognized);

  BigReal neg = BigReal::from_mpq(mpq_class(-7, 3), p) - BigReal::two_pow(-130, p);
  CHECK(recognize_rational(neg, 10, kCtx) == mpq_class(-7, 3));
}

TEST_CASE("stable_value accepts constants immediately") {
  int calls = 0;
  BigComplex v = stable_value(
      [&](const PrecisionContext& c) {
        ++calls;
        return BigComplex::from_long(7, 0, c.working_bits);
      },
      kCtx);
  CHECK(calls == 2);
  CHECK(v.real().to_double() == doctest::Approx(7.0));
}

TEST_CASE("stable_value escalates past an under-resolved evaluation") {
  // Deliberately coarse below 512 bits: error ~ 2^{-p/2} defeats the
  // agreement check until the precision doubles twice.
  auto eval = [](const PrecisionContext& c) {
    long p = c.working_bits;
    BigReal v = BigReal::pi(p);
    if (p < 512) v += BigReal::two_pow(-p / 2, p);
    return BigComplex(v);
  };
  BigComplex v = stable_value(eval, kCtx);
  BigReal err = (v.real() - BigReal::pi(1024)).abs();
  CHECK(err.below_2pow(-290));
}

TEST_CASE("stable_value throws PrecisionExhausted on noise") {
  int n = 0;
  auto eval = [&n](const PrecisionContext& c) {
    return BigComplex::from_long(++n, 0, c.working_bits);
  };
  CHECK_THROWS_AS(stable_value(eval, PrecisionContext{128, 48, 512}), PrecisionExhausted);
}

TEST_CASE("determinism up to precision") {
  auto eval = [](const PrecisionContext& c) {
    return BigComplex(BigReal::pi(c.working_bits + c.guard_bits));
  };
  BigComplex a = stable_value(eval, kCtx);
  BigComplex b = stable_value(eval, kCtx.with_bits(256));
  CHECK((a - b).abs().below_2pow(-(kCtx.working_bits - kCtx.guard_bits)));
}

TEST_CASE("complex arithmetic round trip") {
  long p = 200;
  BigComplex z(BigReal::from_double(1.25, p), BigReal::from_double(-2.5, p));
  BigComplex w = z * z.inverse();
  CHECK((w - BigComplex::from_long(1, 0, p)).abs().below_2pow(-190));
  CHECK((z.pow_int(3) - z * z * z).abs().below_2pow(-180));
  CHECK((z.pow_int(-2) - (z * z).inverse()).abs().below_2pow(-180));
}

TEST_CASE("exp_2pi_i and csin agree with known points") {
  long p = 200;
  BigComplex i = BigComplex::i(p);
  // e^{2 pi i * i} = e^{-2 pi}
  BigComplex q = exp_2pi_i(i);
  CHECK(q.imag().below_2pow(-190));
  CHECK(q.real().to_double() == doctest::Approx(std::exp(-2 * 3.14159265358979)));
  // sin(i) = i sinh(1)
  BigComplex s = csin(i);
  CHECK(s.real().below_2pow(-190));
  CHECK(s.imag().to_double() == doctest::Approx(std::sinh(1.0)));
}
