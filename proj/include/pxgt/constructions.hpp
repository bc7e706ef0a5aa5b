#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "pxgt/finite_field.hpp"
#include "pxgt/perm_group.hpp"

namespace pxgt {

// ---------------------------------------------------------------------------
// named families
// ---------------------------------------------------------------------------
inline PermGroup cyclic_group(std::size_t n)
{
  if (n == 0)
    throw std::invalid_argument("cyclic_group: n must be positive");
  if (n == 1)
    return PermGroup::trivial(1);
  std::vector<Point> rot(n);
  for (std::size_t i = 0; i < n; ++i)
    rot[i] = static_cast<Point>((i + 1) % n);
  return PermGroup(n, {Perm(std::move(rot))});
}

inline PermGroup symmetric_group(std::size_t n)
{
  if (n == 0)
    throw std::invalid_argument("symmetric_group: n must be positive");
  if (n == 1)
    return PermGroup::trivial(1);
  std::vector<Perm> gens{Perm::from_cycles(n, {{0, 1}})};
  if (n > 2) {
    std::vector<Point> rot(n);
    for (std::size_t i = 0; i < n; ++i)
      rot[i] = static_cast<Point>((i + 1) % n);
    gens.push_back(Perm(std::move(rot)));
  }
  return PermGroup(n, std::move(gens), {}, big_factorial(n));
}

inline PermGroup alternating_group(std::size_t n)
{
  if (n < 3)
    return PermGroup::trivial(n == 0 ? 1 : n);
  std::vector<Perm> gens;
  for (Point i = 2; i < n; ++i)
    gens.push_back(Perm::from_cycles(n, {{0, 1, i}}));
  return PermGroup(n, std::move(gens), {}, big_factorial(n) / 2);
}

// D_r in the natural degree-r action, r >= 3; order 2r
inline PermGroup dihedral_group(std::size_t r)
{
  if (r < 3)
    throw std::invalid_argument("dihedral_group: r must be at least 3");
  std::vector<Point> rot(r), refl(r);
  for (std::size_t i = 0; i < r; ++i) {
    rot[i] = static_cast<Point>((i + 1) % r);
    refl[i] = static_cast<Point>((r - i) % r);
  }
  return PermGroup(r, {Perm(std::move(rot)), Perm(std::move(refl))}, {},
                   BigInt(2 * r));
}

// C_p^k acting on k blocks of p points; degree pk
inline PermGroup elementary_abelian_group(std::uint64_t p, std::size_t k)
{
  if (!is_prime_u64(p) || k == 0)
    throw std::invalid_argument("elementary_abelian_group: need prime p, "
                                "positive k");
  std::size_t n = static_cast<std::size_t>(p) * k;
  std::vector<Perm> gens;
  for (std::size_t b = 0; b < k; ++b) {
    std::vector<Point> cyc;
    for (std::size_t j = 0; j < p; ++j)
      cyc.push_back(static_cast<Point>(b * p + j));
    gens.push_back(Perm::from_cycles(n, {cyc}));
  }
  return PermGroup(n, std::move(gens), {}, big_pow(BigInt(p), k));
}

// imprimitive wreath product H wr K on Delta x Lambda; |W| = |H|^{|Lambda|}|K|
inline PermGroup wreath_product(const PermGroup &H, const PermGroup &K)
{
  std::size_t dh = H.degree(), dk = K.degree();
  if (dh == 0 || dk == 0)
    throw std::invalid_argument("wreath_product: degrees must be positive");
  std::size_t n = dh * dk;
  std::vector<Perm> gens;
  // base copies: one seed block per K-orbit, the rest arise by conjugation
  std::vector<bool> seen(dk, false);
  for (Point l0 = 0; l0 < dk; ++l0) {
    if (seen[l0])
      continue;
    for (Point l : K.orbit(l0))
      seen[l] = true;
    for (const Perm &h : H.generators()) {
      std::vector<Point> img(n);
      for (std::size_t i = 0; i < n; ++i)
        img[i] = static_cast<Point>(i);
      for (Point d = 0; d < dh; ++d)
        img[l0 * dh + d] = static_cast<Point>(l0 * dh + h[d]);
      gens.push_back(Perm(std::move(img)));
    }
  }
  for (const Perm &k : K.generators()) {
    std::vector<Point> img(n);
    for (Point l = 0; l < dk; ++l)
      for (Point d = 0; d < dh; ++d)
        img[l * dh + d] = static_cast<Point>(k[l] * dh + d);
    gens.push_back(Perm(std::move(img)));
  }
  BigInt order = big_pow(H.order(), dk) * K.order();
  return PermGroup(n, std::move(gens), {}, order);
}

// L_{p,1} = C_p x C_p of degree 2p (two orbits of size p)
inline PermGroup L_p1(std::uint64_t p)
{
  if (!is_prime_u64(p))
    throw std::invalid_argument("L_p1: p must be prime");
  return elementary_abelian_group(p, 2);
}

// L_{p,2} = C_p wr C_2, transitive of degree 2p
inline PermGroup L_p2(std::uint64_t p)
{
  if (!is_prime_u64(p))
    throw std::invalid_argument("L_p2: p must be prime");
  PermGroup C2(2, {Perm::from_cycles(2, {{0, 1}})});
  return wreath_product(cyclic_group(static_cast<std::size_t>(p)), C2);
}

inline PermGroup L_p_chi(std::uint64_t p, unsigned chi)
{
  if (chi == 1)
    return L_p1(p);
  if (chi == 2)
    return L_p2(p);
  throw std::invalid_argument("L_p_chi: chi must be 1 or 2");
}

// ---------------------------------------------------------------------------
// projective groups on the projective line, q+1 points
// point labels: 0 = infinity, 1+e = field element with index e
// ---------------------------------------------------------------------------
struct ProjectiveGenerators {
  std::size_t degree;    // q + 1
  Perm translation;      // z -> z + 1
  Perm inversion;        // z -> -1/z
  Perm diagonal;         // z -> lambda z, lambda primitive
  Perm frobenius;        // z -> z^r
  std::uint32_t q, r, k; // q = r^k
};

inline ProjectiveGenerators projective_generators(std::uint32_t q)
{
  GaloisField F(q);
  std::size_t n = q + 1;
  auto pt = [&](std::uint32_t e) { return static_cast<Point>(1 + e); };
  std::vector<Point> t(n), s(n), d(n), f(n);
  std::uint32_t lambda = F.primitive_element();
  t[0] = 0;
  s[0] = pt(0);
  d[0] = 0;
  f[0] = 0;
  for (std::uint32_t e = 0; e < q; ++e) {
    t[pt(e)] = pt(F.add(e, 1));
    s[pt(e)] = e == 0 ? 0 : pt(F.neg(F.inv(e)));
    d[pt(e)] = pt(F.mul(lambda, e));
    f[pt(e)] = pt(F.frobenius(e));
  }
  return {n,
          Perm(std::move(t)),
          Perm(std::move(s)),
          Perm(std::move(d)),
          Perm(std::move(f)),
          q,
          F.characteristic(),
          F.extension_degree()};
}

inline BigInt psl2_order(std::uint32_t q)
{
  BigInt o = BigInt(q) * (BigInt(q) * q - 1);
  return q % 2 == 0 ? o : o / 2;
}

inline PermGroup psl2(std::uint32_t q)
{
  auto g = projective_generators(q);
  return PermGroup(g.degree, {g.translation, g.inversion}, {},
                   psl2_order(q));
}

inline PermGroup pgl2(std::uint32_t q)
{
  auto g = projective_generators(q);
  return PermGroup(g.degree, {g.translation, g.inversion, g.diagonal}, {},
                   BigInt(q) * (BigInt(q) * q - 1));
}

inline PermGroup pgammal2(std::uint32_t q)
{
  auto g = projective_generators(q);
  return PermGroup(g.degree,
                   {g.translation, g.inversion, g.diagonal, g.frobenius}, {},
                   BigInt(q) * (BigInt(q) * q - 1) * g.k);
}

// PSigmaL_2(q) = <PSL_2(q), frobenius>; for q = 9 this is the Sym(6) copy
inline PermGroup psigmal2(std::uint32_t q)
{
  auto g = projective_generators(q);
  return PermGroup(g.degree, {g.translation, g.inversion, g.frobenius});
}

// M_10 = <PSL_2(9), diagonal * frobenius>
inline PermGroup m10()
{
  auto g = projective_generators(9);
  return PermGroup(g.degree,
                   {g.translation, g.inversion, g.diagonal * g.frobenius});
}

// ---------------------------------------------------------------------------
// GroupSpec grammar:
//   cyclic(n) | dihedral(r) | sym(n) | alt(n) | elemab(p,k) |
//   wreath(SPEC,SPEC) | psl2(q) | pgl2(q) | pgammal2(q) | L(p,chi)
// ---------------------------------------------------------------------------
class SpecParseError : public std::invalid_argument {
public:
  SpecParseError(const std::string &msg, std::size_t pos)
      : std::invalid_argument(msg + " at position " + std::to_string(pos) +
                              " of group spec"),
        position(pos)
  {
  }
  std::size_t position;
};

namespace detail {

struct SpecParser {
  const std::string &src;
  std::size_t pos = 0;

  void skip_ws()
  {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }

  char peek()
  {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  void expect(char c)
  {
    skip_ws();
    if (pos >= src.size() || src[pos] != c)
      throw SpecParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  }

  std::uint64_t number()
  {
    skip_ws();
    std::size_t start = pos;
    std::uint64_t v = 0;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
      v = v * 10 + static_cast<std::uint64_t>(src[pos++] - '0');
    if (pos == start)
      throw SpecParseError("expected a number", pos);
    return v;
  }

  std::string ident()
  {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) ||
            src[pos] == '_'))
      ++pos;
    if (pos == start)
      throw SpecParseError("expected a family name", pos);
    return src.substr(start, pos - start);
  }

  PermGroup parse()
  {
    std::size_t at = pos;
    std::string name = ident();
    expect('(');
    PermGroup g = dispatch(name, at);
    expect(')');
    return g;
  }

  PermGroup dispatch(const std::string &name, std::size_t at)
  {
    if (name == "cyclic")
      return cyclic_group(number());
    if (name == "sym")
      return symmetric_group(number());
    if (name == "alt")
      return alternating_group(number());
    if (name == "dihedral")
      return dihedral_group(number());
    if (name == "elemab") {
      std::uint64_t p = number();
      expect(',');
      std::uint64_t k = number();
      return elementary_abelian_group(p, k);
    }
    if (name == "wreath") {
      PermGroup H = parse();
      expect(',');
      PermGroup K = parse();
      return wreath_product(H, K);
    }
    if (name == "psl2")
      return psl2(static_cast<std::uint32_t>(number()));
    if (name == "pgl2")
      return pgl2(static_cast<std::uint32_t>(number()));
    if (name == "pgammal2")
      return pgammal2(static_cast<std::uint32_t>(number()));
    if (name == "L") {
      std::uint64_t p = number();
      expect(',');
      std::uint64_t chi = number();
      return L_p_chi(p, static_cast<unsigned>(chi));
    }
    throw SpecParseError("unknown family '" + name + "'", at);
  }
};

} // namespace detail

inline PermGroup make_group(const std::string &spec)
{
  detail::SpecParser p{spec};
  PermGroup g = p.parse();
  p.skip_ws();
  if (p.pos != spec.size())
    throw SpecParseError("trailing input", p.pos);
  return g;
}

} // namespace pxgt
