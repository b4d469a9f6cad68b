#include "cm/numerics.hpp"

#include <climits>
#include <sstream>

namespace cm {

void PrecisionContext::validate() const {
  if (working_bits < 64) throw Error("working_bits must be >= 64");
  if (guard_bits < 32) throw Error("guard_bits must be >= 32");
  if (max_bits < working_bits) throw Error("max_bits must be >= working_bits");
}

PrecisionContext PrecisionContext::with_bits(long bits) const {
  PrecisionContext c = *this;
  c.working_bits = bits;
  if (c.max_bits < bits) c.max_bits = bits;
  return c;
}

BigReal::BigReal(long prec) { mpfr_init2(v_, std::max(prec, 2L)); mpfr_set_zero(v_, 1); }

BigReal::BigReal(const BigReal& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& o) noexcept {
  mpfr_init2(v_, 2);
  mpfr_swap(v_, o.v_);
}

BigReal& BigReal::operator=(const BigReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::from_long(long v, long prec) {
  BigReal r(prec);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

BigReal BigReal::from_double(double v, long prec) {
  BigReal r(prec);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  return r;
}

BigReal BigReal::from_mpz(const mpz_class& v, long prec) {
  BigReal r(prec);
  mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
  return r;
}

BigReal BigReal::from_mpq(const mpq_class& v, long prec) {
  BigReal r(prec);
  mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
  return r;
}

BigReal BigReal::from_string(const std::string& s, long prec) {
  BigReal r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
    throw Error("unparsable real literal: " + s);
  return r;
}

BigReal BigReal::pi(long prec) {
  BigReal r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::two_pow(long e, long prec) {
  BigReal r(prec);
  mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

BigReal BigReal::operator-() const {
  BigReal r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::abs() const {
  BigReal r(precision());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::sqrt() const {
  BigReal r(precision());
  mpfr_sqrt(r.v_, v_, MPFR_RNDN);
  if (!r.is_finite()) throw Error("sqrt of negative value");
  return r;
}

bool BigReal::below_2pow(long e) const {
  if (is_zero()) return true;
  if (!is_finite()) return false;
  return mpfr_cmp_si_2exp(abs().v_, 1, e) < 0;
}

long BigReal::exponent() const {
  if (is_zero() || !is_finite()) return LONG_MIN;
  return mpfr_get_exp(v_);
}

mpz_class BigReal::round_to_integer() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}

mpq_class BigReal::to_exact_rational() const {
  if (is_zero()) return mpq_class(0);
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  mpq_class q(m);
  mpz_class p2;
  mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0)
    q *= p2;
  else
    q /= p2;
  q.canonicalize();
  return q;
}

std::string BigReal::str(size_t digits) const {
  std::ostringstream os;
  char* s = nullptr;
  mpfr_exp_t e;
  s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  if (!s) return "nan";
  std::string mant(s);
  mpfr_free_str(s);
  bool neg = !mant.empty() && mant[0] == '-';
  if (neg) mant.erase(0, 1);
  os << (neg ? "-" : "") << "0." << mant << "e" << e;
  return os.str();
}

#define CM_BINOP(name, fn)                                        \
  BigReal name(const BigReal& a, const BigReal& b) {              \
    BigReal r(std::max(a.precision(), b.precision()));            \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                              \
    return r;                                                     \
  }

CM_BINOP(operator+, mpfr_add)
CM_BINOP(operator-, mpfr_sub)
CM_BINOP(operator*, mpfr_mul)
CM_BINOP(operator/, mpfr_div)
#undef CM_BINOP

BigReal operator*(const BigReal& a, long b) {
  BigReal r(a.precision());
  mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

BigReal operator/(const BigReal& a, long b) {
  BigReal r(a.precision());
  mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }

BigReal& BigReal::operator+=(const BigReal& b) { *this = *this + b; return *this; }
BigReal& BigReal::operator-=(const BigReal& b) { *this = *this - b; return *this; }
BigReal& BigReal::operator*=(const BigReal& b) { *this = *this * b; return *this; }

#define CM_UNFN(name, fn)               \
  BigReal name(const BigReal& x) {      \
    BigReal r(x.precision());           \
    fn(r.v_, x.v_, MPFR_RNDN);          \
    return r;                           \
  }

CM_UNFN(sin, mpfr_sin)
CM_UNFN(cos, mpfr_cos)
CM_UNFN(sinh, mpfr_sinh)
CM_UNFN(cosh, mpfr_cosh)
#undef CM_UNFN

BigComplex BigComplex::from_long(long re, long im, long prec) {
  return BigComplex(BigReal::from_long(re, prec), BigReal::from_long(im, prec));
}

BigComplex BigComplex::i(long prec) { return from_long(0, 1, prec); }

BigComplex BigComplex::operator-() const { return BigComplex(-re_, -im_); }
BigComplex BigComplex::conj() const { return BigComplex(re_, -im_); }

BigReal BigComplex::norm2() const { return re_ * re_ + im_ * im_; }

BigReal BigComplex::abs() const {
  BigReal r(precision());
  mpfr_hypot(r.get(), re_.get(), im_.get(), MPFR_RNDN);
  return r;
}

BigComplex BigComplex::inverse() const {
  BigReal n = norm2();
  return BigComplex(re_ / n, -im_ / n);
}

BigComplex BigComplex::pow_int(long n) const {
  if (n < 0) return inverse().pow_int(-n);
  BigComplex acc = from_long(1, 0, precision());
  BigComplex base = *this;
  unsigned long e = static_cast<unsigned long>(n);
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.re_ + b.re_, a.im_ + b.im_);
}

BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.re_ - b.re_, a.im_ - b.im_);
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) { return a * b.inverse(); }

BigComplex operator*(const BigComplex& a, const BigReal& b) {
  return BigComplex(a.re_ * b, a.im_ * b);
}

BigComplex operator/(const BigComplex& a, long b) { return BigComplex(a.re_ / b, a.im_ / b); }
BigComplex operator*(const BigComplex& a, long b) { return BigComplex(a.re_ * b, a.im_ * b); }

BigComplex& BigComplex::operator+=(const BigComplex& b) { *this = *this + b; return *this; }
BigComplex& BigComplex::operator-=(const BigComplex& b) { *this = *this - b; return *this; }

BigComplex exp_2pi_i(const BigComplex& tau) {
  long p = tau.precision();
  BigReal two_pi = BigReal::pi(p) * 2;
  BigReal ang = two_pi * tau.real();
  BigReal mag(p);
  {
    BigReal t = -(two_pi * tau.imag());
    mpfr_exp(mag.get(), t.get(), MPFR_RNDN);
  }
  BigReal s(p), c(p);
  mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
  return BigComplex(mag * c, mag * s);
}

BigComplex csin(const BigComplex& z) {
  long p = z.precision();
  BigReal s(p), c(p), sh(p), ch(p);
  mpfr_sin_cos(s.get(), c.get(), z.real().get(), MPFR_RNDN);
  mpfr_sinh_cosh(sh.get(), ch.get(), z.imag().get(), MPFR_RNDN);
  return BigComplex(s * ch, c * sh);
}

bool agree_to_bits(const BigComplex& a, const BigComplex& b, long bits) {
  if (!a.is_finite() || !b.is_finite()) return false;
  BigReal diff = (a - b).abs();
  BigReal scale = b.abs();
  long p = std::max(a.precision(), b.precision());
  BigReal one = BigReal::from_long(1, p);
  if (scale < one) scale = one;
  return diff < scale * BigReal::two_pow(-bits, p);
}

std::optional<mpz_class> try_recognize_integer(const BigReal& x, const PrecisionContext& ctx) {
  ctx.validate();
  if (!x.is_finite()) return std::nullopt;
  mpz_class n = x.round_to_integer();
  BigReal resid = (x - BigReal::from_mpz(n, x.precision())).abs();
  if (!resid.below_2pow(-ctx.guard_bits)) return std::nullopt;
  return n;
}

mpz_class recognize_integer(const BigReal& x, const PrecisionContext& ctx) {
  auto n = try_recognize_integer(x, ctx);
  if (!n) throw NotRecognized("residual above 2^-guard; not an integer at this precision");
  return *n;
}

std::optional<mpq_class> try_recognize_rational(const BigReal& x, unsigned long max_den,
                                                const PrecisionContext& ctx) {
  ctx.validate();
  if (!x.is_finite() || max_den < 1) return std::nullopt;
  mpq_class target = x.to_exact_rational();
  mpq_class bound(1);
  {
    mpz_class p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(ctx.guard_bits));
    bound /= p2;
  }

  // Continued-fraction convergents of target (floor division handles the
  // sign); stop once the denominator would exceed max_den, keeping the last
  // admissible convergent.
  mpz_class num = target.get_num(), den = target.get_den();
  mpz_class pm2(1), qm2(0), pm1(0), qm1(1);
  std::swap(pm2, pm1);
  std::swap(qm2, qm1);
  // pm2/qm2 = 0/1, pm1/qm1 = 1/0
  mpz_class a, r;
  mpq_class best;
  bool have = false;
  while (den != 0) {
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class p = a * pm1 + pm2;
    mpz_class q = a * qm1 + qm2;
    if (mpz_cmp_ui(q.get_mpz_t(), max_den) <= 0) {
      best = mpq_class(p, q);
      best.canonicalize();
      have = true;
    } else {
      break;
    }
    pm2 = pm1; qm2 = qm1; pm1 = p; qm1 = q;
    num = den;
    den = r;
  }
  if (!have) return std::nullopt;
  mpq_class err = target - best;
  if (err < 0) err = -err;
  if (!(err < bound)) return std::nullopt;
  return best;
}

mpq_class recognize_rational(const BigReal& x, unsigned long max_den, const PrecisionContext& ctx) {
  auto q = try_recognize_rational(x, max_den, ctx);
  if (!q) throw NotRecognized("no convergent with denominator <= max_den within 2^-guard");
  return *q;
}

BigComplex stable_value(const std::function<BigComplex(const PrecisionContext&)>& eval,
                        const PrecisionContext& ctx) {
  ctx.validate();
  long bits = ctx.working_bits;
  while (true) {
    BigComplex lo = eval(ctx.with_bits(bits));
    BigComplex hi = eval(ctx.with_bits(2 * bits));
    if (agree_to_bits(lo, hi, bits - ctx.guard_bits)) return hi;
    bits *= 2;
    if (2 * bits > ctx.max_bits)
      throw PrecisionExhausted("stable_value: no agreement up to max_bits");
  }
}

}  // namespace cm
