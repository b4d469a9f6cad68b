#include "cm/quad_fields.hpp"

#include <algorithm>
#include <numeric>

namespace cm {

namespace {

bool squarefree(long n) {
  if (n <= 0) return false;
  for (long k = 2; k * k <= n; ++k)
    if (n % (k * k) == 0) return false;
  return true;
}

}  // namespace

bool Discriminant::is_fundamental() const {
  if (!is_valid()) return false;
  long m = ((d % 4) + 4) % 4;
  if (m == 1) return squarefree(-d);
  long q = d / 4;
  long qm = ((q % 4) + 4) % 4;
  return squarefree(-q) && (qm == 2 || qm == 3);
}

bool QuadForm::is_reduced() const {
  if (a <= 0 || discriminant() >= 0) return false;
  long ab = b < 0 ? -b : b;
  if (!(ab <= a && a <= c)) return false;
  if ((ab == a || a == c) && b < 0) return false;
  return true;
}

bool QuadForm::is_primitive() const {
  long g = std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
  return g == 1;
}

ThetaPoint theta_point(Discriminant d_K, const PrecisionContext& ctx) {
  ctx.validate();
  if (!d_K.is_fundamental()) throw NotFundamental("discriminant is not fundamental");
  long p = ctx.working_bits + ctx.guard_bits;
  BigReal re = BigReal::from_long(d_K.d, p) / 2;
  BigReal im = BigReal::from_long(-d_K.d, p).sqrt() / 2;
  return ThetaPoint{d_K.d, BigComplex(re, im)};
}

std::pair<long, long> min_poly_coeffs(Discriminant d_K) {
  if (!d_K.is_fundamental()) throw NotFundamental("discriminant is not fundamental");
  long B = -d_K.d;
  long C = (d_K.d * d_K.d - d_K.d) / 4;
  return {B, C};
}

std::vector<QuadForm> reduced_forms(Discriminant D) {
  if (!D.is_valid()) throw BadDiscriminant("need D < 0 with D = 0,1 mod 4");
  std::vector<QuadForm> out;
  long absD = -D.d;
  // |b| <= a <= sqrt(|D|/3)
  for (long a = 1; 3 * a * a <= absD; ++a) {
    for (long b = -a; b <= a; ++b) {
      long num = b * b - D.d;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      QuadForm f{a, b, c};
      if (f.is_reduced() && f.is_primitive()) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end(), [](const QuadForm& x, const QuadForm& y) {
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  return out;
}

long class_number(Discriminant D) { return static_cast<long>(reduced_forms(D).size()); }

long unit_count(Discriminant d_K) {
  if (!d_K.is_fundamental()) throw NotFundamental("discriminant is not fundamental");
  if (d_K.d == -4) return 4;
  if (d_K.d == -3) return 6;
  return 2;
}

BigComplex form_to_cm_point(const QuadForm& f, const PrecisionContext& ctx) {
  ctx.validate();
  long D = f.discriminant();
  long p = ctx.working_bits + ctx.guard_bits;
  BigReal re = BigReal::from_long(-f.b, p) / (2 * f.a);
  BigReal im = BigReal::from_long(-D, p).sqrt() / (2 * f.a);
  return BigComplex(re, im);
}

}  // namespace cm
