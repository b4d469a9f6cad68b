#ifndef CM_HAUPTMODUL_HPP
#define CM_HAUPTMODUL_HPP

#include <vector>

#include "cm/modular.hpp"

namespace cm {

struct UnsupportedLevel : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

enum class GroupKind { Gamma0, Gamma0Dagger };

/// Registry entry for a single-eta-quotient principal modulus.
/// Gamma0: t_N = (eta(tau)/eta(N tau))^{24/(N-1)}, leading term q^{-1}.
/// Gamma0Dagger: s_N = t_N + N^{12/(N-1)} / t_N, Fricke-involution invariant.
struct HauptmodulSpec {
  GroupKind kind;
  long level;
  long eta_exponent;    // 24 / (N - 1)
  long fricke_constant; // N^{12/(N-1)} for dagger entries, 0 otherwise
};

const std::vector<HauptmodulSpec>& registry();

// Genus-zero level lists recorded as metadata.
const std::vector<long>& genus_zero_levels_gamma0();
const std::vector<long>& genus_zero_levels_gamma0_dagger();

BigComplex eval_t(long N, const Tau& tau, const PrecisionContext& ctx);
BigComplex eval_s(long N, const Tau& tau, const PrecisionContext& ctx);

// (j(tau) j(N tau), j(tau) + j(N tau))
std::pair<BigComplex, BigComplex> jn_pair(long N, const Tau& tau, const PrecisionContext& ctx);

// Exact q-expansion of t_N; element 0 is the q^{-1} coefficient, element k
// the q^{k-1} coefficient.
std::vector<mpz_class> t_series_coefficients(long N, long n_terms);

}  // namespace cm

#endif
