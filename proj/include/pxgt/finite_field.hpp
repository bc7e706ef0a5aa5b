#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pxgt {

// GF(r^k) for k <= 2, elements as polynomial coefficients over GF(r).
// Quadratic moduli are pinned so generator matrices are reproducible:
//   GF(4)  = GF(2)[x]/(x^2+x+1)
//   GF(9)  = GF(3)[x]/(x^2+1)
//   GF(25) = GF(5)[x]/(x^2+2)
//   GF(49) = GF(7)[x]/(x^2+1)
// Element index: a0 + a1*x  <->  a1*r + a0, so 0,1,...,r-1 come first.
class GaloisField {
public:
  explicit GaloisField(std::uint32_t q) : q_(q)
  {
    if (is_prime(q)) {
      r_ = q;
      k_ = 1;
      m0_ = m1_ = 0;
    } else {
      std::uint32_t r = 0;
      for (std::uint32_t d = 2; d * d <= q; ++d)
        if (d * d == q)
          r = d;
      if (r == 0 || !is_prime(r))
        throw std::invalid_argument("GaloisField: unsupported field size");
      r_ = r;
      k_ = 2;
      switch (q) {
      case 4: m1_ = 1; m0_ = 1; break;   // x^2 + x + 1
      case 9: m1_ = 0; m0_ = 1; break;   // x^2 + 1
      case 25: m1_ = 0; m0_ = 2; break;  // x^2 + 2
      case 49: m1_ = 0; m0_ = 1; break;  // x^2 + 1
      default:
        throw std::invalid_argument("GaloisField: unsupported field size");
      }
    }
  }

  std::uint32_t size() const { return q_; }
  std::uint32_t characteristic() const { return r_; }
  std::uint32_t extension_degree() const { return k_; }

  std::uint32_t zero() const { return 0; }
  std::uint32_t one() const { return 1; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const
  {
    auto [a0, a1] = split(a);
    auto [b0, b1] = split(b);
    return join((a0 + b0) % r_, (a1 + b1) % r_);
  }

  std::uint32_t neg(std::uint32_t a) const
  {
    auto [a0, a1] = split(a);
    return join((r_ - a0) % r_, (r_ - a1) % r_);
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const
  {
    return add(a, neg(b));
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const
  {
    auto [a0, a1] = split(a);
    auto [b0, b1] = split(b);
    if (k_ == 1)
      return (a0 * b0) % r_;
    // x^2 == -(m1 x + m0)
    std::uint32_t c0 = (a0 * b0) % r_;
    std::uint32_t c1 = (a0 * b1 + a1 * b0) % r_;
    std::uint32_t c2 = (a1 * b1) % r_;
    c0 = (c0 + (r_ - m0_) % r_ * c2) % r_;
    c1 = (c1 + (r_ - m1_) % r_ * c2) % r_;
    return join(c0, c1);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const
  {
    std::uint32_t res = 1, b = a;
    while (e) {
      if (e & 1)
        res = mul(res, b);
      b = mul(b, b);
      e >>= 1;
    }
    return res;
  }

  std::uint32_t inv(std::uint32_t a) const
  {
    if (a == 0)
      throw std::domain_error("GaloisField: inverse of zero");
    for (std::uint32_t b = 1; b < q_; ++b)
      if (mul(a, b) == 1)
        return b;
    throw std::logic_error("GaloisField: element without inverse");
  }

  std::uint32_t frobenius(std::uint32_t a) const { return pow(a, r_); }

  // smallest element of multiplicative order q-1
  std::uint32_t primitive_element() const
  {
    for (std::uint32_t a = 1; a < q_; ++a) {
      std::uint32_t x = a;
      std::uint32_t ord = 1;
      while (x != 1) {
        x = mul(x, a);
        ++ord;
      }
      if (ord == q_ - 1)
        return a;
    }
    throw std::logic_error("GaloisField: no primitive element");
  }

  static bool is_prime(std::uint32_t n)
  {
    if (n < 2)
      return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
      if (n % d == 0)
        return false;
    return true;
  }

private:
  std::pair<std::uint32_t, std::uint32_t> split(std::uint32_t a) const
  {
    return {a % r_, a / r_};
  }
  std::uint32_t join(std::uint32_t a0, std::uint32_t a1) const
  {
    return a1 * r_ + a0;
  }

  std::uint32_t q_, r_, k_, m0_ = 0, m1_ = 0;
};

} // namespace pxgt
