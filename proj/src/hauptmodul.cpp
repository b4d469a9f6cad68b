#include "cm/hauptmodul.hpp"

#include <algorithm>

#include "series_util.hpp"

namespace cm {

namespace {

long ipow(long b, long e) {
  long r = 1;
  while (e--) r *= b;
  return r;
}

const HauptmodulSpec* find_spec(GroupKind kind, long N) {
  for (const auto& s : registry())
    if (s.kind == kind && s.level == N) return &s;
  return nullptr;
}

}  // namespace

const std::vector<HauptmodulSpec>& registry() {
  static const std::vector<HauptmodulSpec> table = [] {
    std::vector<HauptmodulSpec> t;
    for (long N : {2, 3, 4, 5, 7, 9, 13, 25})
      t.push_back({GroupKind::Gamma0, N, 24 / (N - 1), 0});
    for (long N : {2, 3, 5, 7, 13})
      t.push_back({GroupKind::Gamma0Dagger, N, 24 / (N - 1), ipow(N, 12 / (N - 1))});
    return t;
  }();
  return table;
}

const std::vector<long>& genus_zero_levels_gamma0() {
  static const std::vector<long> v = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25};
  return v;
}

const std::vector<long>& genus_zero_levels_gamma0_dagger() {
  static const std::vector<long> v = {1,  2,  3,  4,  5,  6,  7,  8,  9,  10, 11, 12, 13, 14,
                                      15, 16, 17, 18, 19, 20, 21, 23, 24, 25, 26, 27, 29, 31,
                                      32, 35, 36, 39, 41, 47, 49, 50, 59, 71};
  return v;
}

BigComplex eval_t(long N, const Tau& tau, const PrecisionContext& ctx) {
  ctx.validate();
  const HauptmodulSpec* spec = find_spec(GroupKind::Gamma0, N);
  if (!spec) throw UnsupportedLevel("no Gamma0 hauptmodul at this level");
  BigComplex num = eval_eta(tau, ctx);
  BigComplex den = eval_eta(Tau(tau.tau * N), ctx);
  return (num / den).pow_int(spec->eta_exponent);
}

BigComplex eval_s(long N, const Tau& tau, const PrecisionContext& ctx) {
  ctx.validate();
  const HauptmodulSpec* spec = find_spec(GroupKind::Gamma0Dagger, N);
  if (!spec) throw UnsupportedLevel("no Gamma0-dagger hauptmodul at this level");
  BigComplex t = eval_t(N, tau, ctx);
  if (t.abs().below_2pow(-(ctx.working_bits))) throw DivisionByZero("t_N vanishes at this point");
  long p = t.precision();
  return t + BigComplex(BigReal::from_long(spec->fricke_constant, p)) / t;
}

std::pair<BigComplex, BigComplex> jn_pair(long N, const Tau& tau, const PrecisionContext& ctx) {
  ctx.validate();
  if (N < 1) throw UnsupportedLevel("level must be positive");
  BigComplex a = eval_j(tau, ctx);
  BigComplex b = eval_j(Tau(tau.tau * N), ctx);
  return {a * b, a + b};
}

std::vector<mpz_class> t_series_coefficients(long N, long n_terms) {
  const HauptmodulSpec* spec = find_spec(GroupKind::Gamma0, N);
  if (!spec) throw UnsupportedLevel("no Gamma0 hauptmodul at this level");
  if (n_terms < 1) throw Error("need at least one term");
  size_t len = static_cast<size_t>(n_terms);
  auto P = euler_product_coefficients(n_terms);
  auto PN = series::dilate(P, static_cast<unsigned long>(N), len);
  auto R = series::mul(P, series::inverse(PN, len), len);
  return series::pow(R, static_cast<unsigned long>(spec->eta_exponent), len);
}

}  // namespace cm
