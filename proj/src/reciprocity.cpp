#include "cm/reciprocity.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cm {

namespace {

long mod(long x, long N) { return ((x % N) + N) % N; }

long ext_gcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = (a >= 0) ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  long x1, y1;
  long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

long inv_mod(long a, long N) {
  long x, y;
  long g = ext_gcd(mod(a, N), N, x, y);
  if (g != 1) throw Error("residue not invertible");
  return mod(x, N);
}

std::pair<long, long> bk_ck(long d_K) {
  Discriminant d{d_K};
  return min_poly_coeffs(d);
}

BigComplex theta_value(long d_K, const PrecisionContext& ctx) {
  return theta_point(Discriminant{d_K}, ctx).value;
}

}  // namespace

Mat2 WMatrix::matrix() const {
  auto [B, C] = bk_ck(d_K);
  return Mat2{mod(t - B * s, N), mod(-C * s, N), mod(s, N), mod(t, N)};
}

long WMatrix::det_mod() const {
  auto [B, C] = bk_ck(d_K);
  return mod(t * t - B * t * s + C * s * s, N);
}

bool WMatrix::is_unit() const { return std::gcd(det_mod(), N) == 1; }

WMatrix w_mul(const WMatrix& x, const WMatrix& y) {
  if (x.N != y.N || x.d_K != y.d_K) throw Error("mismatched W group parameters");
  auto [B, C] = bk_ck(x.d_K);
  long t = mod(x.t * y.t - C * x.s * y.s, x.N);
  long s = mod(x.t * y.s + x.s * y.t - B * x.s * y.s, x.N);
  return WMatrix{x.N, x.d_K, t, s};
}

std::vector<WMatrix> w_group(long N, Discriminant d_K) {
  if (N < 1) throw Error("N must be positive");
  if (!d_K.is_fundamental()) throw NotFundamental("discriminant is not fundamental");
  std::vector<WMatrix> out;
  for (long t = 0; t < N; ++t)
    for (long s = 0; s < N; ++s) {
      WMatrix w{N, d_K.d, t, s};
      if (w.is_unit()) out.push_back(w);
    }
  return out;
}

std::vector<WMatrix> kernel_set(long N, Discriminant d_K) {
  if (!d_K.is_fundamental()) throw NotFundamental("discriminant is not fundamental");
  std::vector<std::pair<long, long>> ts = {{1, 0}, {-1, 0}};
  if (d_K.d == -4) {
    ts.push_back({2, 1});
    ts.push_back({-2, -1});
  } else if (d_K.d == -3) {
    ts.push_back({1, 1});
    ts.push_back({-1, -1});
    ts.push_back({2, 1});
    ts.push_back({-2, -1});
  }
  std::set<std::pair<long, long>> seen;
  std::vector<WMatrix> out;
  for (auto [t, s] : ts) {
    WMatrix w{N, d_K.d, mod(t, N), mod(s, N)};
    if (!seen.insert({w.t, w.s}).second) continue;
    if (!w.is_unit()) throw KernelNotInGroup("kernel matrix fails the W membership check");
    out.push_back(w);
  }
  return out;
}

std::vector<WMatrix> ring_subgroup(long N, Discriminant d_K) {
  std::vector<WMatrix> out;
  for (const auto& w : w_group(N, d_K))
    if (w.s == 0) out.push_back(w);
  return out;
}

std::vector<WMatrix> coset_representatives(long N, Discriminant d_K) {
  auto group = w_group(N, d_K);
  auto kernel = kernel_set(N, d_K);
  std::vector<WMatrix> reps;
  for (const auto& alpha : group) {
    std::pair<long, long> lo{alpha.t, alpha.s};
    for (const auto& kappa : kernel) {
      WMatrix prod = w_mul(kappa, alpha);
      lo = std::min(lo, {prod.t, prod.s});
    }
    if (lo == std::pair<long, long>{alpha.t, alpha.s}) reps.push_back(alpha);
  }
  return reps;
}

Mat2 lift_sl2(const Mat2& m, long N) {
  if (N < 1) throw Error("N must be positive");
  Mat2 r{mod(m.a, N), mod(m.b, N), mod(m.c, N), mod(m.d, N)};
  if (mod(r.det(), N) != 1) throw NotUnimodular("matrix determinant is not 1 mod N");
  if (N == 1) return Mat2{1, 0, 0, 1};

  long c2 = r.c, d2 = r.d;
  if (c2 == 0 && d2 == 0) throw NotUnimodular("zero bottom row");
  if (c2 == 0) c2 = N;
  // gcd(c2, d2, N) = 1, so a shift of d2 by N makes the pair coprime.
  long k = 0;
  while (std::gcd(c2, d2 + k * N) != 1) {
    ++k;
    if (k > 4 * N * N) throw NotUnimodular("no coprime lift of the bottom row");
  }
  d2 += k * N;

  long x, y;
  ext_gcd(d2, c2, x, y);  // x d2 + y c2 = 1
  long a0 = x, b0 = -y;   // a0 d2 - b0 c2 = 1

  long u, v;
  ext_gcd(c2, d2, u, v);  // u c2 + v d2 = 1
  long A = mod(r.a - a0, N);
  long B = mod(r.b - b0, N);
  long t = mod(u * A + v * B, N);
  Mat2 out{a0 + t * c2, b0 + t * d2, c2, d2};
  if (out.det() != 1) throw NotUnimodular("lift failed the determinant check");
  return out;
}

std::pair<long, Mat2> decompose(const WMatrix& alpha) {
  long N = alpha.N;
  Mat2 M = alpha.matrix();
  long d = alpha.det_mod();
  long dinv = inv_mod(d, N);
  // (1 0; 0 d)^{-1} alpha = (a, b; dinv c, dinv d) mod N
  Mat2 g2res{M.a, M.b, mod(dinv * M.c, N), mod(dinv * M.d, N)};
  Mat2 g2 = lift_sl2(g2res, N);
  return {d, g2};
}

FrickeIndex act_fricke_index(const WMatrix& alpha, const FrickeIndex& x) {
  unsigned long den = x.denominator();
  if (alpha.N % static_cast<long>(den) != 0)
    throw Error("index denominator must divide the level");
  Mat2 M = alpha.matrix();
  return x.transformed(M.a, M.b, M.c, M.d);
}

namespace {

void dedup_push(std::vector<std::pair<WMatrix, BigComplex>>& out, const WMatrix& alpha,
                const BigComplex& v, long dedup_bits) {
  for (const auto& [w, u] : out)
    if ((v - u).abs().below_2pow(-dedup_bits)) return;
  out.emplace_back(alpha, v);
}

}  // namespace

GaloisOrbit galois_orbit_fricke(const FrickeIndex& x, int k, Discriminant d_K,
                                const PrecisionContext& ctx) {
  ctx.validate();
  if (class_number(d_K) != 1)
    throw ClassNumberNotOne("orbit computation requires h_K = 1");
  long N = static_cast<long>(x.denominator());
  auto reps = coset_representatives(N, d_K);
  GaloisOrbit orbit;
  orbit.base = "f^(" + std::to_string(k) + ") at theta_K, d_K = " + std::to_string(d_K.d);
  orbit.dedup_bits = ctx.working_bits / 2;
  orbit.coset_count = reps.size();
  for (const auto& alpha : reps) {
    FrickeIndex xi = act_fricke_index(alpha, x);
    BigComplex v = stable_value(
        [&](const PrecisionContext& c) {
          Tau th(theta_value(d_K.d, c));
          return eval_fricke(xi, k, th, c, FrickeRoute::Weierstrass);
        },
        ctx);
    dedup_push(orbit.conjugates, alpha, v, orbit.dedup_bits);
  }
  return orbit;
}

GaloisOrbit galois_orbit_function(const ModularFn& g, const std::string& description,
                                  Discriminant d_K, long N, const PrecisionContext& ctx) {
  ctx.validate();
  if (class_number(d_K) != 1)
    throw ClassNumberNotOne("orbit computation requires h_K = 1");
  auto reps = coset_representatives(N, d_K);
  GaloisOrbit orbit;
  orbit.base = description;
  orbit.dedup_bits = ctx.working_bits / 2;
  orbit.coset_count = reps.size();
  for (const auto& alpha : reps) {
    auto [d, g2] = decompose(alpha);
    BigComplex v = stable_value(
        [&](const PrecisionContext& c) {
          BigComplex th = theta_value(d_K.d, c);
          return g(moebius({g2.a, g2.b, g2.c, g2.d}, th), c);
        },
        ctx);
    dedup_push(orbit.conjugates, alpha, v, orbit.dedup_bits);
  }
  return orbit;
}

}  // namespace cm
