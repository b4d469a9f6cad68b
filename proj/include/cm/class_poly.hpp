#ifndef CM_CLASS_POLY_HPP
#define CM_CLASS_POLY_HPP

#include <optional>
#include <string>
#include <vector>

#include "cm/hauptmodul.hpp"
#include "cm/reciprocity.hpp"

namespace cm {

// Precision escalation ran out before all coefficients certified as integers.
struct RecognitionFailed : Error {
  using Error::Error;
};

struct VerificationFailed : Error {
  using Error::Error;
};

/// Polynomial with exact integer coefficients, ascending degree.
struct IntPolynomial {
  std::vector<mpz_class> coeffs;
  bool monic = true;

  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  std::string str() const;
};

/// Parameters of a Theorem-style ray class generator
/// j(theta_K) + p N^2 f^(k)_{(r1,r2)}(theta_K).
struct GeneratorSpec {
  long d_K;
  FrickeIndex index;
  long p;  // prime > |d_K|
  long k;  // |O_K^x| / 2, derived from d_K

  long level() const { return static_cast<long>(index.denominator()); }
};

// Default index (0, 1/N) for modulus N O_K; default p = smallest prime > |d_K|.
GeneratorSpec make_generator_spec(Discriminant d_K, long modulus_level,
                                  std::optional<FrickeIndex> index = std::nullopt,
                                  std::optional<long> p = std::nullopt);

IntPolynomial hilbert_class_poly(Discriminant d_K, const PrecisionContext& ctx);
IntPolynomial ring_class_poly(Discriminant d_K, long N, const PrecisionContext& ctx);

BigComplex main3_generator(const GeneratorSpec& spec, const PrecisionContext& ctx);
IntPolynomial main3_minpoly(const GeneratorSpec& spec, const PrecisionContext& ctx);

// Monic product over a full conjugate set, coefficients certified integral.
IntPolynomial integrality_certificate(const std::vector<BigComplex>& values,
                                      const PrecisionContext& ctx);

struct Main2Report {
  GroupKind kind;
  long level = 0;
  long d_K = 0;
  bool hypothesis_ok = true;  // false: dagger case with H_K = H_O, checks skipped
  long conjugate_count = 0;
  long expected_degree = 0;
  bool degree_ok = false;
  bool integral_ok = false;
  bool real_ok = false;
  IntPolynomial poly;
  bool passed = false;
  std::string note;
};

Main2Report verify_main2(GroupKind kind, long N, Discriminant d_K, const PrecisionContext& ctx);

struct RingLemmaReport {
  long d_K = 0;
  long level = 0;
  bool hypothesis_ok = true;
  long conjugate_count = 0;
  bool base_among_conjugates = false;
  bool pair_fixing_ok = false;
  bool passed = false;
  std::string note;
};

RingLemmaReport verify_ringclasslemma(Discriminant d_K, long N, const PrecisionContext& ctx);

bool is_prime(long n);
long next_prime_above(long n);

}  // namespace cm

#endif
