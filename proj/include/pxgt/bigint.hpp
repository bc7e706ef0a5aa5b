#pragma once

#include <cstdint>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace pxgt {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_factorial(std::uint64_t n)
{
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= n; ++i)
    r *= i;
  return r;
}

inline BigInt big_pow(const BigInt &base, std::uint64_t e)
{
  BigInt r = 1, b = base;
  while (e) {
    if (e & 1)
      r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// largest e with p^e | n (n > 0)
inline std::uint64_t valuation(BigInt n, const BigInt &p)
{
  if (n == 0)
    throw std::invalid_argument("valuation: n must be non-zero");
  std::uint64_t e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline BigInt p_part(const BigInt &n, const BigInt &p)
{
  return big_pow(p, valuation(n, p));
}

inline BigInt big_gcd(BigInt a, BigInt b)
{
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline BigInt big_lcm(const BigInt &a, const BigInt &b)
{
  if (a == 0 || b == 0)
    return 0;
  return a / big_gcd(a, b) * b;
}

inline bool is_prime_u64(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

// exact p-power exponent: n = p^t, or throw
inline std::uint64_t exact_log(const BigInt &n, std::uint64_t p)
{
  BigInt m = n;
  std::uint64_t t = 0;
  while (m % p == 0) {
    m /= p;
    ++t;
  }
  if (m != 1)
    throw std::invalid_argument("exact_log: not a power of the base");
  return t;
}

inline bool fits_u64(const BigInt &n)
{
  return n >= 0 && n <= BigInt(UINT64_MAX);
}

inline std::uint64_t to_u64(const BigInt &n)
{
  if (!fits_u64(n))
    throw std::overflow_error("BigInt does not fit in 64 bits");
  return static_cast<std::uint64_t>(n);
}

} // namespace pxgt
