#ifndef CM_SERIES_UTIL_HPP
#define CM_SERIES_UTIL_HPP

#include <gmpxx.h>

#include <vector>

// Truncated integer power series in q, coefficient k = q^k term.
namespace cm::series {

inline std::vector<mpz_class> mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                                  size_t len) {
  std::vector<mpz_class> out(len, mpz_class(0));
  for (size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// 1 / a for a series with constant term 1.
inline std::vector<mpz_class> inverse(const std::vector<mpz_class>& a, size_t len) {
  std::vector<mpz_class> inv(len, mpz_class(0));
  inv[0] = 1;
  for (size_t n = 1; n < len; ++n) {
    mpz_class s(0);
    for (size_t k = 1; k <= n && k < a.size(); ++k) s += a[k] * inv[n - k];
    inv[n] = -s;
  }
  return inv;
}

inline std::vector<mpz_class> pow(std::vector<mpz_class> base, unsigned long e, size_t len) {
  std::vector<mpz_class> acc(len, mpz_class(0));
  acc[0] = 1;
  while (e) {
    if (e & 1) acc = mul(acc, base, len);
    base = mul(base, base, len);
    e >>= 1;
  }
  return acc;
}

// Substitute q -> q^N.
inline std::vector<mpz_class> dilate(const std::vector<mpz_class>& a, unsigned long N, size_t len) {
  std::vector<mpz_class> out(len, mpz_class(0));
  for (size_t i = 0; i * N < len && i < a.size(); ++i) out[i * N] = a[i];
  return out;
}

}  // namespace cm::series

#endif
