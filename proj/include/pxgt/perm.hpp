#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pxgt/bigint.hpp"

namespace pxgt {

using Point = std::uint32_t;

// Permutation of {0,...,n-1} as an image table. Right action throughout:
// x^g = g[x], and (a*b)[x] = b[a[x]] (apply a first, then b).
class Perm {
public:
  Perm() = default;

  explicit Perm(std::size_t degree) : images_(degree)
  {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  explicit Perm(std::vector<Point> images) : images_(std::move(images))
  {
    std::vector<bool> seen(images_.size(), false);
    for (Point y : images_) {
      if (y >= images_.size() || seen[y])
        throw std::invalid_argument("Perm: image table is not a bijection");
      seen[y] = true;
    }
  }

  static Perm from_cycles(std::size_t degree,
                          const std::vector<std::vector<Point>> &cycles)
  {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    for (const auto &cyc : cycles) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        Point from = cyc[i];
        Point to = cyc[(i + 1) % cyc.size()];
        if (from >= degree)
          throw std::invalid_argument("Perm::from_cycles: point out of range");
        if (img[from] != from)
          throw std::invalid_argument("Perm::from_cycles: repeated point");
        img[from] = to;
      }
    }
    return Perm(std::move(img));
  }

  std::size_t degree() const { return images_.size(); }

  Point operator[](Point x) const { return images_[x]; }

  const std::vector<Point> &images() const { return images_; }

  bool is_identity() const
  {
    for (Point x = 0; x < images_.size(); ++x)
      if (images_[x] != x)
        return false;
    return true;
  }

  // apply a first, then b
  friend Perm operator*(const Perm &a, const Perm &b)
  {
    if (a.degree() != b.degree())
      throw std::invalid_argument("Perm: degree mismatch in composition");
    std::vector<Point> img(a.degree());
    for (Point x = 0; x < img.size(); ++x)
      img[x] = b.images_[a.images_[x]];
    Perm r;
    r.images_ = std::move(img);
    return r;
  }

  Perm &operator*=(const Perm &rhs) { return *this = *this * rhs; }

  Perm inverse() const
  {
    std::vector<Point> img(degree());
    for (Point x = 0; x < img.size(); ++x)
      img[images_[x]] = x;
    Perm r;
    r.images_ = std::move(img);
    return r;
  }

  // g^{-1} * this * g
  Perm conjugated_by(const Perm &g) const { return g.inverse() * (*this * g); }

  friend bool operator==(const Perm &a, const Perm &b)
  {
    return a.images_ == b.images_;
  }
  friend bool operator!=(const Perm &a, const Perm &b) { return !(a == b); }
  friend bool operator<(const Perm &a, const Perm &b)
  {
    return a.images_ < b.images_;
  }

  std::vector<std::vector<Point>> cycles(bool with_fixed = false) const
  {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(degree(), false);
    for (Point x = 0; x < degree(); ++x) {
      if (seen[x])
        continue;
      std::vector<Point> cyc;
      Point y = x;
      do {
        seen[y] = true;
        cyc.push_back(y);
        y = images_[y];
      } while (y != x);
      if (cyc.size() > 1 || with_fixed)
        out.push_back(std::move(cyc));
    }
    return out;
  }

  BigInt element_order() const
  {
    BigInt ord = 1;
    for (const auto &cyc : cycles())
      ord = big_lcm(ord, BigInt(cyc.size()));
    return ord;
  }

  // sorted multiset of cycle lengths, fixed points included
  std::vector<std::size_t> cycle_type() const
  {
    std::vector<std::size_t> t;
    for (const auto &cyc : cycles(true))
      t.push_back(cyc.size());
    std::sort(t.begin(), t.end());
    return t;
  }

  std::string to_cycle_string() const
  {
    auto cyc = cycles();
    if (cyc.empty())
      return "()";
    std::ostringstream os;
    for (const auto &c : cyc) {
      os << '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i)
          os << ' ';
        os << c[i];
      }
      os << ')';
    }
    return os.str();
  }

  std::size_t hash() const
  {
    std::size_t h = 1469598103934665603ull;
    for (Point x : images_) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }

private:
  std::vector<Point> images_;
};

struct PermHash {
  std::size_t operator()(const Perm &p) const { return p.hash(); }
};

} // namespace pxgt
