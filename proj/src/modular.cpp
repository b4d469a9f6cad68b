#include "cm/modular.hpp"

#include <cmath>

#include "series_util.hpp"

namespace cm {

namespace {

constexpr long kMaxRows = 1L << 22;  // lattice / series term cap

mpq_class frac_mod_one(const mpq_class& x) {
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  mpq_class out(r, x.get_den());
  out.canonicalize();
  return out;
}

long internal_prec(const PrecisionContext& ctx) { return ctx.tail_bits() + 32; }

void require_upper_half(const BigComplex& tau) {
  if (!tau.is_finite() || tau.imag().sign() <= 0)
    throw Error("tau must lie in the upper half-plane");
}

// Bits of decay per unit q-exponent.
double bits_per_term(const BigComplex& tau) {
  double im = tau.imag().to_double();
  return 2.0 * 3.14159265358979323846 * im / 0.6931471805599453;
}

// csc^2(pi w) at precision p.
BigComplex csc2_pi(const BigComplex& w, const BigReal& pi_p) {
  BigComplex s = csin(w * pi_p);
  return (s * s).inverse();
}

BigComplex eisenstein_sum(const BigComplex& q, int k, long coeff_scale, bool plus,
                          const PrecisionContext& ctx) {
  // 1 +/- scale * sum sigma_k(n) q^n
  long p = q.precision();
  double L = -std::log2(q.abs().to_double());
  long target = ctx.tail_bits() + 8;
  long n_max = static_cast<long>((target + 8 * std::log2(64.0)) / L) + 8;
  // refine for polynomial coefficient growth ~ n^{k+1}
  for (int it = 0; it < 4; ++it)
    n_max = static_cast<long>((target + (k + 2) * std::log2(static_cast<double>(n_max) + 2)) / L) + 8;
  if (n_max > kMaxRows) throw PrecisionExhausted("Im(tau) too small for the q-series route");

  std::vector<mpz_class> sig(static_cast<size_t>(n_max) + 1, mpz_class(0));
  for (long d = 1; d <= n_max; ++d) {
    mpz_class dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    for (long m = d; m <= n_max; m += d) sig[static_cast<size_t>(m)] += dk;
  }
  BigComplex acc = BigComplex::from_long(1, 0, p);
  BigComplex qn = BigComplex::from_long(1, 0, p);
  for (long n = 1; n <= n_max; ++n) {
    qn = qn * q;
    BigComplex term = qn * BigReal::from_mpz(sig[static_cast<size_t>(n)], p) * coeff_scale;
    acc = plus ? acc + term : acc - term;
  }
  return acc;
}

// prod (1 - q^n) by the pentagonal-number series.
BigComplex euler_value(const BigComplex& q, const PrecisionContext& ctx) {
  long p = q.precision();
  double L = -std::log2(q.abs().to_double());
  long target = ctx.tail_bits() + 8;
  long g_max = static_cast<long>(target / L) + 4;
  if (g_max > kMaxRows) throw PrecisionExhausted("Im(tau) too small for the eta series");
  BigComplex acc = BigComplex::from_long(1, 0, p);
  for (long k = 1;; ++k) {
    long g1 = k * (3 * k - 1) / 2;
    long g2 = k * (3 * k + 1) / 2;
    if (g1 > g_max) break;
    BigComplex t = q.pow_int(g1);
    if (g2 <= g_max) t += q.pow_int(g2);
    acc = (k % 2) ? acc - t : acc + t;
  }
  return acc;
}

}  // namespace

FrickeIndex::FrickeIndex(mpq_class r1, mpq_class r2) : r1_(frac_mod_one(r1)), r2_(frac_mod_one(r2)) {
  if (r1_ == 0 && r2_ == 0) throw Error("Fricke index must not lie in Z^2");
  mpq_class n1 = frac_mod_one(-r1_), n2 = frac_mod_one(-r2_);
  if (std::pair(n1, n2) < std::pair(r1_, r2_)) {
    r1_ = n1;
    r2_ = n2;
  }
}

unsigned long FrickeIndex::denominator() const {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), r1_.get_den().get_mpz_t(), r2_.get_den().get_mpz_t());
  return l.get_ui();
}

FrickeIndex FrickeIndex::transformed(long a, long b, long c, long d) const {
  return FrickeIndex(r1_ * a + r2_ * c, r1_ * b + r2_ * d);
}

Tau::Tau(BigComplex t) : tau(std::move(t)), q(exp_2pi_i(tau)) { require_upper_half(tau); }

BigComplex eval_eta(const Tau& tau, const PrecisionContext& ctx) {
  ctx.validate();
  BigComplex phase = exp_2pi_i(tau.tau / 24);
  return phase * euler_value(tau.q, ctx);
}

BigComplex moebius(const std::array<long, 4>& g, const BigComplex& tau) {
  long p = tau.precision();
  BigComplex num = tau * g[0] + BigComplex::from_long(g[1], 0, p);
  BigComplex den = tau * g[2] + BigComplex::from_long(g[3], 0, p);
  return num / den;
}

BigComplex eval_j(const Tau& tau, const PrecisionContext& ctx) {
  ctx.validate();
  long p = std::max(tau.tau.precision(), internal_prec(ctx));
  // SL2(Z) reduction into |Re| <= 1/2, |tau| >= 1; j is invariant.
  BigReal re = tau.tau.real();
  BigReal im = tau.tau.imag();
  if (im.sign() <= 0) throw Error("tau must lie in the upper half-plane");
  BigComplex t(re, im);
  BigReal one = BigReal::from_long(1, p);
  for (int iter = 0; iter < 4096; ++iter) {
    mpz_class n = t.real().round_to_integer();
    t = BigComplex(t.real() - BigReal::from_mpz(n, p), t.imag());
    if (t.norm2() < one)
      t = -t.inverse();
    else
      break;
  }
  Tau tf(t);
  BigComplex e4 = eisenstein_sum(tf.q, 3, 240, true, ctx);
  BigComplex eta24 = tf.q * euler_value(tf.q, ctx).pow_int(24);
  return e4.pow_int(3) / eta24;
}

std::vector<mpz_class> euler_product_coefficients(long n_max) {
  std::vector<mpz_class> c(static_cast<size_t>(n_max) + 1, mpz_class(0));
  c[0] = 1;
  for (long k = 1;; ++k) {
    long g1 = k * (3 * k - 1) / 2;
    long g2 = k * (3 * k + 1) / 2;
    if (g1 > n_max) break;
    long s = (k % 2) ? -1 : 1;
    c[static_cast<size_t>(g1)] += s;
    if (g2 <= n_max) c[static_cast<size_t>(g2)] += s;
  }
  return c;
}

std::vector<mpz_class> j_series_coefficients(long n_max) {
  if (n_max < -1) throw Error("n_max must be >= -1");
  size_t len = static_cast<size_t>(n_max + 2);  // q^{-1} ... q^{n_max}
  auto P = euler_product_coefficients(n_max + 1);
  auto Pinv24 = series::pow(series::inverse(P, len), 24, len);
  std::vector<mpz_class> e4(len, mpz_class(0));
  e4[0] = 1;
  for (size_t n = 1; n < len; ++n) {
    mpz_class s(0);
    for (unsigned long d = 1; d <= n; ++d)
      if (n % d == 0) s += mpz_class(d) * mpz_class(d) * mpz_class(d);
    e4[n] = 240 * s;
  }
  auto S = series::mul(series::pow(e4, 3, len), Pinv24, len);
  return S;  // S[k] is the coefficient of q^{k-1} in j
}

std::pair<BigComplex, BigComplex> eval_g2_g3_lattice(const Tau& tau, const PrecisionContext& ctx) {
  ctx.validate();
  require_upper_half(tau.tau);
  long p = std::max(tau.tau.precision(), internal_prec(ctx));
  BigReal pi_p = BigReal::pi(p);
  BigReal pi2 = pi_p * pi_p;
  BigReal pi4 = pi2 * pi2;
  BigReal pi6 = pi4 * pi2;
  long thr = -(ctx.tail_bits() + 8);

  BigComplex sum4 = BigComplex::from_long(0, 0, p);
  BigComplex sum6 = BigComplex::from_long(0, 0, p);
  BigReal two15 = BigReal::from_mpq(mpq_class(2, 15), p);
  long quiet = 0;
  for (long m = 1; m <= kMaxRows; ++m) {
    BigComplex c = csc2_pi(tau.tau * m, pi_p);
    BigComplex s4 = (c * c * 3 - c * 2) * (pi4 / 3);
    BigComplex s6 = (c * (c * c - c + BigComplex(two15))) * pi6;
    sum4 += s4;
    sum6 += s6;
    if (s4.abs().below_2pow(thr) && s6.abs().below_2pow(thr)) {
      if (++quiet >= 2 && m >= 2) break;
    } else {
      quiet = 0;
    }
    if (m == kMaxRows) throw PrecisionExhausted("lattice row sum did not converge");
  }
  BigComplex g2 = (BigComplex(pi4 / 45) + sum4 * 2) * 60;
  BigComplex g3 = (BigComplex(pi6 * 2 / 945) + sum6 * 2) * 140;
  return {g2, g3};
}

BigComplex eval_wp_lattice(const FrickeIndex& x, const Tau& tau, const PrecisionContext& ctx) {
  ctx.validate();
  require_upper_half(tau.tau);
  long p = std::max(tau.tau.precision(), internal_prec(ctx));
  BigReal pi_p = BigReal::pi(p);
  long thr = -(ctx.tail_bits() + 8);

  BigReal r1 = BigReal::from_mpq(x.r1(), p);
  BigReal r2 = BigReal::from_mpq(x.r2(), p);
  BigComplex z = tau.tau * BigComplex(r1) + BigComplex(r2);

  BigComplex acc = csc2_pi(z, pi_p) - BigComplex(BigReal::from_mpq(mpq_class(1, 3), p));
  long quiet = 0;
  for (long m = 1; m <= kMaxRows; ++m) {
    BigComplex cm = csc2_pi(tau.tau * m, pi_p);
    BigComplex tp = csc2_pi(z - tau.tau * m, pi_p) - cm;
    BigComplex tm = csc2_pi(z + tau.tau * m, pi_p) - cm;
    acc += tp + tm;
    if (tp.abs().below_2pow(thr) && tm.abs().below_2pow(thr)) {
      if (++quiet >= 2 && m >= 2) break;
    } else {
      quiet = 0;
    }
    if (m == kMaxRows) throw PrecisionExhausted("wp row sum did not converge");
  }
  return acc * BigComplex(pi_p * pi_p);
}

namespace {

BigComplex fricke_f1_series(const FrickeIndex& x, const Tau& tau, const PrecisionContext& ctx) {
  long p = std::max(tau.tau.precision(), internal_prec(ctx));
  const BigComplex& q = tau.q;
  BigComplex e4 = eisenstein_sum(q, 3, 240, true, ctx);
  BigComplex e6 = eisenstein_sum(q, 5, 504, false, ctx);
  BigComplex pref = e4 * e6 / (q * euler_value(q, ctx).pow_int(24));

  BigReal r1 = BigReal::from_mpq(x.r1(), p);
  BigComplex qr1 = exp_2pi_i(tau.tau * BigComplex(r1));
  BigComplex zeta = exp_2pi_i(BigComplex(BigReal::from_mpq(x.r2(), p)));
  BigComplex one = BigComplex::from_long(1, 0, p);
  BigComplex y = qr1 * zeta;
  BigComplex yinv = y.inverse();

  // inner n-sums in closed form: sum n x^n = x / (1-x)^2
  auto lam = [&one](const BigComplex& v) {
    BigComplex d = one - v;
    return v / (d * d);
  };
  BigComplex B = one + lam(y) * 12;
  long thr = -(ctx.tail_bits() + 8);
  BigComplex qm = one;
  long quiet = 0;
  for (long m = 1; m <= kMaxRows; ++m) {
    qm = qm * q;
    BigComplex term = lam(qm * y) + lam(qm * yinv) - lam(qm) * 2;
    B += term * 12;
    if (term.abs().below_2pow(thr)) {
      if (++quiet >= 2 && m >= 2) break;
    } else {
      quiet = 0;
    }
    if (m == kMaxRows) throw PrecisionExhausted("Fricke series did not converge");
  }
  return pref * B;
}

}  // namespace

BigComplex eval_fricke(const FrickeIndex& x, int k, const Tau& tau, const PrecisionContext& ctx,
                       FrickeRoute route) {
  ctx.validate();
  if (k < 1 || k > 3) throw Error("Fricke k must be 1, 2 or 3");
  if (route == FrickeRoute::Weierstrass) {
    auto [g2, g3] = eval_g2_g3_lattice(tau, ctx);
    BigComplex wp = eval_wp_lattice(x, tau, ctx);
    BigComplex delta = g2.pow_int(3) - g3.pow_int(2) * 27;
    switch (k) {
      case 1:
        return -(g2 * g3 * wp / delta) * (128 * 243);  // 2^7 3^5
      case 2:
        return g2 * g2 * wp * wp / delta;
      default:
        return g3 * wp.pow_int(3) / delta;
    }
  }
  BigComplex f1 = fricke_f1_series(x, tau, ctx);
  if (k == 1) return f1;
  long p = f1.precision();
  BigComplex j = eval_j(tau, ctx);
  BigComplex j1728 = j - BigComplex::from_long(1728, 0, p);
  if (j.abs().below_2pow(-ctx.guard_bits) || j1728.abs().below_2pow(-ctx.guard_bits))
    throw SingularRelation("j in {0, 1728}: k=2,3 relations are singular, use the Weierstrass route");
  if (k == 2) return f1 * f1 / (j1728 * (256L * 81L));  // 2^8 3^4
  return -(f1.pow_int(3) / (j * j1728 * (512L * 729L)));  // 2^9 3^6
}

BigReal fricke_transform_check(const FrickeIndex& x, const std::array<long, 4>& gamma,
                               const Tau& tau, const PrecisionContext& ctx) {
  ctx.validate();
  if (gamma[0] * gamma[3] - gamma[1] * gamma[2] != 1) throw Error("gamma must have determinant 1");
  Tau left(moebius(gamma, tau.tau));
  BigComplex lhs = eval_fricke(x, 1, left, ctx, FrickeRoute::Weierstrass);
  FrickeIndex xg = x.transformed(gamma[0], gamma[1], gamma[2], gamma[3]);
  BigComplex rhs = eval_fricke(xg, 1, tau, ctx, FrickeRoute::Weierstrass);
  return (lhs - rhs).abs();
}

}  // namespace cm
