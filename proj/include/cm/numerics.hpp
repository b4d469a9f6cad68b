#ifndef CM_NUMERICS_HPP
#define CM_NUMERICS_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace cm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// recognize_* could not certify the value at the current guard threshold.
struct NotRecognized : Error {
  using Error::Error;
};

// Escalation hit max_bits without reaching agreement.
struct PrecisionExhausted : Error {
  using Error::Error;
};

/// Working precision, guard bits and the escalation cap shared by every
/// evaluator. Values are plain data; copy freely.
struct PrecisionContext {
  long working_bits = 128;
  long guard_bits = 48;
  long max_bits = 8192;

  void validate() const;
  PrecisionContext with_bits(long bits) const;

  // Absolute truncation target for series/lattice tails.
  long tail_bits() const { return working_bits + guard_bits; }
};

/// Arbitrary-precision real backed by MPFR, round-to-nearest throughout.
/// Binary operations promote to the larger operand precision.
class BigReal {
 public:
  explicit BigReal(long prec = 64);
  BigReal(const BigReal& o);
  BigReal(BigReal&& o) noexcept;
  BigReal& operator=(const BigReal& o);
  BigReal& operator=(BigReal&& o) noexcept;
  ~BigReal();

  static BigReal from_long(long v, long prec);
  static BigReal from_double(double v, long prec);
  static BigReal from_mpz(const mpz_class& v, long prec);
  static BigReal from_mpq(const mpq_class& v, long prec);
  static BigReal from_string(const std::string& s, long prec);
  static BigReal pi(long prec);
  static BigReal two_pow(long e, long prec);

  long precision() const { return mpfr_get_prec(v_); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  BigReal operator-() const;
  BigReal abs() const;
  BigReal sqrt() const;  // requires x >= 0

  // |x| < 2^e (true for x == 0).
  bool below_2pow(long e) const;
  // floor(log2 |x|) + 1; LONG_MIN for zero.
  long exponent() const;

  mpz_class round_to_integer() const;
  // Exact binary-rational decomposition m * 2^e.
  mpq_class to_exact_rational() const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string str(size_t digits = 30) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, long b);
  friend BigReal operator/(const BigReal& a, long b);
  friend bool operator<(const BigReal& a, const BigReal& b);
  friend bool operator>(const BigReal& a, const BigReal& b);

  BigReal& operator+=(const BigReal& b);
  BigReal& operator-=(const BigReal& b);
  BigReal& operator*=(const BigReal& b);

  friend BigReal sin(const BigReal& x);
  friend BigReal cos(const BigReal& x);
  friend BigReal sinh(const BigReal& x);
  friend BigReal cosh(const BigReal& x);

 private:
  mpfr_t v_;
};

/// Complex value as a pair of BigReals.
class BigComplex {
 public:
  BigComplex() : re_(64), im_(64) {}
  explicit BigComplex(BigReal re) : re_(std::move(re)), im_(BigReal::from_long(0, re_.precision())) {}
  BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {}

  static BigComplex from_long(long re, long im, long prec);
  static BigComplex i(long prec);

  const BigReal& real() const { return re_; }
  const BigReal& imag() const { return im_; }
  long precision() const { return std::max(re_.precision(), im_.precision()); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

  BigComplex operator-() const;
  BigComplex conj() const;
  BigReal abs() const;
  BigReal norm2() const;  // re^2 + im^2
  BigComplex inverse() const;
  BigComplex pow_int(long n) const;  // n may be negative

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigReal& b);
  friend BigComplex operator/(const BigComplex& a, long b);
  friend BigComplex operator*(const BigComplex& a, long b);

  BigComplex& operator+=(const BigComplex& b);
  BigComplex& operator-=(const BigComplex& b);

 private:
  BigReal re_, im_;
};

// e^{2 pi i tau}; for Im(tau) > 0 this is the nome q with |q| < 1.
BigComplex exp_2pi_i(const BigComplex& tau);
// sin of a complex argument.
BigComplex csin(const BigComplex& z);

// |a - b| <= 2^{-bits} * max(1, |b|).
bool agree_to_bits(const BigComplex& a, const BigComplex& b, long bits);

std::optional<mpz_class> try_recognize_integer(const BigReal& x, const PrecisionContext& ctx);
std::optional<mpq_class> try_recognize_rational(const BigReal& x, unsigned long max_den,
                                                const PrecisionContext& ctx);

mpz_class recognize_integer(const BigReal& x, const PrecisionContext& ctx);
mpq_class recognize_rational(const BigReal& x, unsigned long max_den, const PrecisionContext& ctx);

/// Runs eval at working_bits and at double that; accepts when both agree to
/// working_bits - guard_bits bits, otherwise doubles and retries up to
/// max_bits.
BigComplex stable_value(const std::function<BigComplex(const PrecisionContext&)>& eval,
                        const PrecisionContext& ctx);

}  // namespace cm

#endif
