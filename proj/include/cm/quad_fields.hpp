#ifndef CM_QUAD_FIELDS_HPP
#define CM_QUAD_FIELDS_HPP

#include <vector>

#include "cm/numerics.hpp"

namespace cm {

struct NotFundamental : Error {
  using Error::Error;
};

struct BadDiscriminant : Error {
  using Error::Error;
};

/// Negative discriminant, d = 0 or 1 mod 4.
struct Discriminant {
  long d;

  bool is_valid() const { return d < 0 && ((d % 4 + 4) % 4 == 0 || (d % 4 + 4) % 4 == 1); }
  bool is_fundamental() const;
};

/// theta_K = (d_K + sqrt(d_K)) / 2, the standard generator of O_K.
struct ThetaPoint {
  long d_K;
  BigComplex value;
};

/// Integral binary quadratic form a x^2 + b x y + c y^2.
struct QuadForm {
  long a, b, c;

  long discriminant() const { return b * b - 4 * a * c; }
  bool is_reduced() const;
  bool is_primitive() const;
};

struct OrderSpec {
  long d_K;       // fundamental
  long conductor; // N >= 1

  long order_discriminant() const { return conductor * conductor * d_K; }
};

ThetaPoint theta_point(Discriminant d_K, const PrecisionContext& ctx);

// (B_K, C_K) with min(theta_K, Q) = X^2 + B_K X + C_K.
std::pair<long, long> min_poly_coeffs(Discriminant d_K);

// All reduced primitive forms of discriminant D, ordered by (a, b).
std::vector<QuadForm> reduced_forms(Discriminant D);

long class_number(Discriminant D);

// |O_K^x|: 4 for d_K = -4, 6 for d_K = -3, else 2.
long unit_count(Discriminant d_K);

// CM point (-b + sqrt(D)) / (2a) of a reduced form.
BigComplex form_to_cm_point(const QuadForm& f, const PrecisionContext& ctx);

}  // namespace cm

#endif
