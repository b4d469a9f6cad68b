#ifndef CM_RECIPROCITY_HPP
#define CM_RECIPROCITY_HPP

#include <functional>
#include <string>
#include <vector>

#include "cm/modular.hpp"
#include "cm/quad_fields.hpp"

namespace cm {

struct ClassNumberNotOne : Error {
  using Error::Error;
};

struct NotUnimodular : Error {
  using Error::Error;
};

struct KernelNotInGroup : Error {
  using Error::Error;
};

struct Mat2 {
  long a, b, c, d;

  long det() const { return a * d - b * c; }
};

/// Element of W_{N,K}: residues (t, s) mod N standing for t + s theta_K,
/// with matrix form (t - B_K s, -C_K s; s, t).
struct WMatrix {
  long N;
  long d_K;
  long t, s;

  Mat2 matrix() const;
  // Norm-form determinant t^2 - B_K t s + C_K s^2 mod N.
  long det_mod() const;
  bool is_unit() const;
};

// Group law, multiplication of t + s theta_K mod N.
WMatrix w_mul(const WMatrix& x, const WMatrix& y);

// Full enumeration of W_{N,K}, lexicographic in (t, s).
std::vector<WMatrix> w_group(long N, Discriminant d_K);

// Kernel of the map onto Gal(K_(N)/H_K): torsion units of O_K reduced mod N.
std::vector<WMatrix> kernel_set(long N, Discriminant d_K);

// Scalar subgroup {(t, 0)} with t invertible, cf. the ring class quotient.
std::vector<WMatrix> ring_subgroup(long N, Discriminant d_K);

// Lexicographically minimal representatives of W / kernel.
std::vector<WMatrix> coset_representatives(long N, Discriminant d_K);

// Integer matrix congruent to m mod N with determinant exactly 1.
// Entries are bounded by O(N^3).
Mat2 lift_sl2(const Mat2& m, long N);

// alpha = (1 0; 0 d) * gamma2 mod N with d = det(alpha) and gamma2 in SL2(Z).
std::pair<long, Mat2> decompose(const WMatrix& alpha);

// Canonical representative of (r1, r2) * alpha mod Z^2; the composite
// gamma1-then-gamma2 action on Fricke functions.
FrickeIndex act_fricke_index(const WMatrix& alpha, const FrickeIndex& x);

struct GaloisOrbit {
  std::string base;
  std::vector<std::pair<WMatrix, BigComplex>> conjugates;  // deduplicated
  long dedup_bits;     // values distinct at 2^{-dedup_bits}
  size_t coset_count;  // |W| / |kernel|
};

// Conjugates of f^(k)_x(theta_K) over K; requires h_K = 1.
GaloisOrbit galois_orbit_fricke(const FrickeIndex& x, int k, Discriminant d_K,
                                const PrecisionContext& ctx);

using ModularFn = std::function<BigComplex(const BigComplex& tau, const PrecisionContext&)>;

// Conjugates g(gamma2 theta_K) of a rational-coefficient modular function of
// level N; requires h_K = 1.
GaloisOrbit galois_orbit_function(const ModularFn& g, const std::string& description,
                                  Discriminant d_K, long N, const PrecisionContext& ctx);

}  // namespace cm

#endif
