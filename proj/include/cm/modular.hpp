#ifndef CM_MODULAR_HPP
#define CM_MODULAR_HPP

#include <array>
#include <utility>
#include <vector>

#include "cm/numerics.hpp"

namespace cm {

// Series route hit a vanishing denominator of the k=2,3 relations
// (j = 0 or j = 1728); caller must switch to the Weierstrass route.
struct SingularRelation : Error {
  using Error::Error;
};

/// Index (r1, r2) of a Fricke function, rationals mod Z^2, not both
/// integral. Canonical representative: 0 <= r1, r2 < 1, lexicographically
/// minimal among {(r1, r2), (-r1, -r2)}.
class FrickeIndex {
 public:
  FrickeIndex(mpq_class r1, mpq_class r2);

  const mpq_class& r1() const { return r1_; }
  const mpq_class& r2() const { return r2_; }

  // Smallest N with (r1, r2) in (1/N) Z^2.
  unsigned long denominator() const;

  // Row-vector action (r1, r2) * (a b; c d), reduced to the canonical
  // representative.
  FrickeIndex transformed(long a, long b, long c, long d) const;

  bool operator==(const FrickeIndex& o) const { return r1_ == o.r1_ && r2_ == o.r2_; }

 private:
  mpq_class r1_, r2_;
};

/// Point in the upper half-plane with its nome q = e^{2 pi i tau}.
struct Tau {
  BigComplex tau;
  BigComplex q;

  explicit Tau(BigComplex t);
};

enum class FrickeRoute { Series, Weierstrass };

// Dedekind eta by the pentagonal-number sparse series.
BigComplex eval_eta(const Tau& tau, const PrecisionContext& ctx);

// j via the q-product formula, after SL2(Z) reduction into the standard
// fundamental domain.
BigComplex eval_j(const Tau& tau, const PrecisionContext& ctx);

// Exact integer q-expansion of j from q^{-1} through q^{n_max}.
std::vector<mpz_class> j_series_coefficients(long n_max);

// The paper-literal lattice quantities; rows are summed in closed form
// (cosecant partial fractions), so the tail is exponentially small. This is
// the oracle route, independent of every q-expansion above.
std::pair<BigComplex, BigComplex> eval_g2_g3_lattice(const Tau& tau, const PrecisionContext& ctx);

// Weierstrass p at z = r1 tau + r2 on the lattice [tau, 1].
BigComplex eval_wp_lattice(const FrickeIndex& x, const Tau& tau, const PrecisionContext& ctx);

// Fricke function f^(k), k in {1,2,3}.
BigComplex eval_fricke(const FrickeIndex& x, int k, const Tau& tau, const PrecisionContext& ctx,
                       FrickeRoute route = FrickeRoute::Weierstrass);

// |f_x(gamma tau) - f_{x gamma}(tau)| for gamma in SL2(Z).
BigReal fricke_transform_check(const FrickeIndex& x, const std::array<long, 4>& gamma,
                               const Tau& tau, const PrecisionContext& ctx);

// Moebius action (a tau + b) / (c tau + d).
BigComplex moebius(const std::array<long, 4>& gamma, const BigComplex& tau);

// Euler function prod (1 - q^n) coefficients 0..n_max (pentagonal sparse).
std::vector<mpz_class> euler_product_coefficients(long n_max);

}  // namespace cm

#endif
