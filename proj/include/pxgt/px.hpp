#pragma once

#include <optional>
#include <vector>

#include "pxgt/graph.hpp"
#include "pxgt/graph_auto.hpp"
#include "pxgt/pair_context.hpp"
#include "pxgt/perm_group.hpp"

namespace pxgt {

// Parameters of the graph PX(p,r,s): vertices are the traversing paths of
// length s-1 in the lexicographic product of an r-cycle with p isolated
// vertices, encoded as (column i; word a_0..a_{s-1}) meaning the path visits
// (a_j, i+j). Vertex index = i*p^s + sum a_j p^j (column-major).
struct PXParams {
  std::uint64_t p = 2;
  std::uint64_t r = 3;
  std::uint64_t s = 1;

  void validate() const
  {
    if (!is_prime_u64(p))
      throw std::invalid_argument("PX: p must be prime");
    if (r < 3)
      throw std::invalid_argument("PX: r must be at least 3");
    if (s < 1 || s > r - 1)
      throw std::invalid_argument("PX: s must satisfy 1 <= s <= r-1");
    BigInt n = BigInt(r) * big_pow(BigInt(p), s);
    if (n > 2'000'000)
      throw std::invalid_argument("PX: graph too large");
  }

  std::size_t num_vertices() const
  {
    std::size_t n = static_cast<std::size_t>(r);
    for (std::uint64_t j = 0; j < s; ++j)
      n *= static_cast<std::size_t>(p);
    return n;
  }

  std::size_t word_space() const
  {
    std::size_t w = 1;
    for (std::uint64_t j = 0; j < s; ++j)
      w *= static_cast<std::size_t>(p);
    return w;
  }

  bool operator==(const PXParams &o) const
  {
    return p == o.p && r == o.r && s == o.s;
  }
};

namespace detail {

struct PXCodec {
  std::uint64_t p, r, s;
  std::size_t ws; // p^s

  explicit PXCodec(const PXParams &q) : p(q.p), r(q.r), s(q.s), ws(q.word_space())
  {
  }

  std::size_t encode(std::uint64_t col, const std::vector<std::uint32_t> &w) const
  {
    std::size_t v = 0;
    for (std::uint64_t j = s; j-- > 0;)
      v = v * p + w[j];
    return static_cast<std::size_t>(col) * ws + v;
  }

  std::pair<std::uint64_t, std::vector<std::uint32_t>>
  decode(std::size_t vertex) const
  {
    std::uint64_t col = vertex / ws;
    std::size_t v = vertex % ws;
    std::vector<std::uint32_t> w(s);
    for (std::uint64_t j = 0; j < s; ++j) {
      w[j] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    return {col, std::move(w)};
  }
};

} // namespace detail

// PX(p,r,s): connected 2p-valent graph on r*p^s vertices
inline Graph px_graph(const PXParams &q)
{
  q.validate();
  detail::PXCodec c(q);
  std::size_t n = q.num_vertices();
  std::vector<std::pair<Point, Point>> edges;
  for (std::size_t v = 0; v < n; ++v) {
    auto [col, w] = c.decode(v);
    std::vector<std::uint32_t> fw(w.begin() + 1, w.end());
    fw.push_back(0);
    for (std::uint32_t b = 0; b < q.p; ++b) {
      fw[q.s - 1] = b;
      std::size_t u = c.encode((col + 1) % q.r, fw);
      edges.emplace_back(static_cast<Point>(std::min(v, u)),
                         static_cast<Point>(std::max(v, u)));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, std::move(edges));
}

// the natural asymmetric orientation: arcs run towards increasing column
inline Digraph vpx_digraph(const PXParams &q)
{
  q.validate();
  detail::PXCodec c(q);
  std::size_t n = q.num_vertices();
  std::vector<std::pair<Point, Point>> arcs;
  for (std::size_t v = 0; v < n; ++v) {
    auto [col, w] = c.decode(v);
    std::vector<std::uint32_t> fw(w.begin() + 1, w.end());
    fw.push_back(0);
    for (std::uint32_t b = 0; b < q.p; ++b) {
      fw[q.s - 1] = b;
      arcs.emplace_back(static_cast<Point>(v),
                        static_cast<Point>(c.encode((col + 1) % q.r, fw)));
    }
  }
  return Digraph(n, std::move(arcs));
}

namespace detail {

// vertex permutation of PX(p,r,s) induced by per-column letter permutations
// and a column map d (which must send column intervals to column intervals)
inline Perm px_wreath_element(const PXParams &q,
                              const std::vector<std::vector<Point>> &colperm,
                              const std::vector<std::uint64_t> &d)
{
  PXCodec c(q);
  std::size_t n = q.num_vertices();
  std::vector<Point> img(n);
  std::vector<bool> present(q.r);
  std::vector<std::uint32_t> letter(q.r);
  for (std::size_t v = 0; v < n; ++v) {
    auto [col, w] = c.decode(v);
    std::fill(present.begin(), present.end(), false);
    for (std::uint64_t j = 0; j < q.s; ++j) {
      std::uint64_t src = (col + j) % q.r;
      std::uint64_t dst = d[src];
      present[dst] = true;
      letter[dst] = colperm[src][w[j]];
    }
    // start of the image interval: the present column whose predecessor is not
    std::uint64_t start = 0;
    for (std::uint64_t cc = 0; cc < q.r; ++cc)
      if (present[cc] && !present[(cc + q.r - 1) % q.r]) {
        start = cc;
        break;
      }
    std::vector<std::uint32_t> nw(q.s);
    for (std::uint64_t j = 0; j < q.s; ++j)
      nw[j] = letter[(start + j) % q.r];
    img[v] = static_cast<Point>(c.encode(start, nw));
  }
  return Perm(std::move(img));
}

inline std::vector<std::vector<Point>> identity_columns(const PXParams &q)
{
  std::vector<Point> id(q.p);
  std::iota(id.begin(), id.end(), Point{0});
  return std::vector<std::vector<Point>>(q.r, id);
}

inline std::vector<std::uint64_t> identity_colmap(const PXParams &q)
{
  std::vector<std::uint64_t> d(q.r);
  std::iota(d.begin(), d.end(), std::uint64_t{0});
  return d;
}

// single-column letter permutation
inline Perm px_column_perm(const PXParams &q, std::uint64_t col,
                           const std::vector<Point> &sigma)
{
  auto cp = identity_columns(q);
  cp[col] = sigma;
  return px_wreath_element(q, cp, identity_colmap(q));
}

inline Perm px_rotation(const PXParams &q)
{
  std::vector<std::uint64_t> d(q.r);
  for (std::uint64_t i = 0; i < q.r; ++i)
    d[i] = (i + 1) % q.r;
  return px_wreath_element(q, identity_columns(q), d);
}

// reflection fixing the window [0, s-1] setwise: i -> s-1-i (mod r)
inline Perm px_window_reflection(const PXParams &q)
{
  std::vector<std::uint64_t> d(q.r);
  for (std::uint64_t i = 0; i < q.r; ++i)
    d[i] = (q.s - 1 + q.r - i) % q.r;
  return px_wreath_element(q, identity_columns(q), d);
}

inline std::vector<Point> p_cycle(std::uint64_t p)
{
  std::vector<Point> c(p);
  for (std::uint64_t j = 0; j < p; ++j)
    c[j] = static_cast<Point>((j + 1) % p);
  return c;
}

inline std::vector<Point> transposition01(std::uint64_t p)
{
  std::vector<Point> t(p);
  std::iota(t.begin(), t.end(), Point{0});
  std::swap(t[0], t[1]);
  return t;
}

// letter permutation fixing 0: the (p-1)-cycle on 1..p-1
inline std::vector<Point> stab0_cycle(std::uint64_t p)
{
  std::vector<Point> c(p);
  c[0] = 0;
  for (std::uint64_t j = 1; j < p; ++j)
    c[j] = static_cast<Point>(j == p - 1 ? 1 : j + 1);
  return c;
}

// letter permutation fixing 0: the transposition (1 2), needs p >= 3
inline std::vector<Point> stab0_swap(std::uint64_t p)
{
  std::vector<Point> t(p);
  std::iota(t.begin(), t.end(), Point{0});
  std::swap(t[1], t[2]);
  return t;
}

} // namespace detail

struct PXGroups {
  PermGroup full;  // X = Sym(p) wr D_r, order (p!)^r * 2r
  PermGroup small; // H = C_p wr D_r, order p^r * 2r
};

// the canonical groups acting on PX(p,r,s), with stabiliser-seeded chains
inline PXGroups px_groups(const PXParams &q)
{
  q.validate();
  using namespace detail;
  Perm rot = px_rotation(q);
  Perm refl = px_window_reflection(q);
  Perm sigma0 = px_column_perm(q, 0, p_cycle(q.p));
  Perm tau0 = px_column_perm(q, 0, transposition01(q.p));

  // elements known to fix vertex 0 = (0; 0...0), so the chain's transversal
  // product reaches the group order without a Schreier grind
  std::vector<Perm> h_seed{refl};
  std::vector<Perm> x_seed{refl};
  for (std::uint64_t c = q.s; c < q.r; ++c) {
    h_seed.push_back(px_column_perm(q, c, p_cycle(q.p)));
    x_seed.push_back(px_column_perm(q, c, p_cycle(q.p)));
    x_seed.push_back(px_column_perm(q, c, transposition01(q.p)));
  }
  if (q.p >= 3)
    for (std::uint64_t c = 0; c < q.s; ++c) {
      x_seed.push_back(px_column_perm(q, c, stab0_cycle(q.p)));
      if (q.p >= 4)
        x_seed.push_back(px_column_perm(q, c, stab0_swap(q.p)));
    }

  BigInt h_order = big_pow(BigInt(q.p), q.r) * 2 * q.r;
  BigInt x_order = big_pow(big_factorial(q.p), q.r) * 2 * q.r;

  std::vector<Perm> h_gens{sigma0, rot, refl};
  h_gens.insert(h_gens.end(), h_seed.begin(), h_seed.end());
  std::vector<Perm> x_gens{tau0, sigma0, rot, refl};
  x_gens.insert(x_gens.end(), x_seed.begin(), x_seed.end());

  PermGroup H(q.num_vertices(), std::move(h_gens), {0}, h_order);
  PermGroup X(q.num_vertices(), std::move(x_gens), {0}, x_order);
  return {std::move(X), std::move(H)};
}

// ---------------------------------------------------------------------------
// recognition, via the abelian-normal-subgroup criterion
// ---------------------------------------------------------------------------
namespace detail {

// normal closure of <a> as long as it stays an elementary abelian p-group;
// nullopt as soon as commutativity or exponent p fails
inline std::optional<PermGroup> abelian_p_closure(const PermGroup &G,
                                                  const Perm &a,
                                                  std::uint64_t p)
{
  std::vector<Perm> gens{a};
  std::vector<Perm> conjugators;
  for (const Perm &g : G.generators()) {
    conjugators.push_back(g);
    conjugators.push_back(g.inverse());
  }
  PermGroup N(G.degree(), {a});
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const Perm &c : conjugators) {
      Perm t = gens[i].conjugated_by(c);
      if (N.contains(t))
        continue;
      Perm tp(G.degree());
      for (std::uint64_t k = 0; k < p; ++k)
        tp *= t;
      if (!tp.is_identity())
        return std::nullopt;
      for (const Perm &g : gens)
        if (g * t != t * g)
          return std::nullopt;
      gens.push_back(t);
      std::vector<Perm> all = gens;
      N = PermGroup(G.degree(), std::move(all));
    }
  }
  return N;
}

} // namespace detail

// G has an abelian normal p-subgroup that is not semiregular iff some
// order-p element of G_v has an abelian p-group normal closure.
inline std::optional<PermGroup>
abelian_normal_not_semiregular(const PairContext &ctx,
                               std::uint64_t budget = kDefaultElementBudget)
{
  std::optional<PermGroup> hit;
  ctx.vertex_stabiliser.for_each_element(
      [&](const Perm &g) {
        if (hit || g.is_identity() || g.element_order() != ctx.p)
          return;
        if (auto N = detail::abelian_p_closure(ctx.group, g, ctx.p))
          hit = std::move(N);
      },
      budget);
  return hit;
}

// Praeger-Xu recognition: if G has an abelian normal p-subgroup that is not
// semiregular, the graph is PX(p,r,s); the parameters are confirmed by an
// explicit isomorphism. nullopt does not certify the graph is not PX; it
// certifies the criterion fails for this G.
inline std::optional<PXParams>
recognize_px(const PairContext &ctx,
             std::size_t aut_budget = kDefaultAutomorphismBudget,
             std::uint64_t element_budget = kDefaultElementBudget)
{
  if (!abelian_normal_not_semiregular(ctx, element_budget))
    return std::nullopt;
  std::size_t n = ctx.graph.num_vertices();
  // candidate (r, s) with r p^s = n; s <= r-2 first, then larger s first
  std::vector<PXParams> cands;
  std::uint64_t ps = ctx.p;
  for (std::uint64_t s = 1; ps <= n; ++s, ps *= ctx.p) {
    if (n % ps == 0) {
      std::uint64_t r = n / ps;
      if (r >= 3 && s <= r - 1)
        cands.push_back({ctx.p, r, s});
    }
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const PXParams &a, const PXParams &b) {
                     bool ga = a.s <= a.r - 2, gb = b.s <= b.r - 2;
                     if (ga != gb)
                       return ga;
                     return a.s > b.s;
                   });
  for (const PXParams &q : cands) {
    Graph model = px_graph(q);
    if (ctx.graph.valency() != model.valency())
      continue;
    if (graph_isomorphism(ctx.graph, model, aut_budget))
      return q;
  }
  throw std::logic_error(
      "recognize_px: abelian normal p-subgroup criterion holds but no "
      "PX(p,r,s) matches; investigate implementation");
}

} // namespace pxgt
