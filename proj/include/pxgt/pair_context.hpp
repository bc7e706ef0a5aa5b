#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pxgt/constructions.hpp"
#include "pxgt/graph.hpp"
#include "pxgt/group_structure.hpp"
#include "pxgt/perm_group.hpp"

namespace pxgt {

// ---------------------------------------------------------------------------
// transitivity on vertices / edges / arcs
// ---------------------------------------------------------------------------
struct Transitivity {
  bool vertex = false;
  bool edge = false;
  bool arc = false;
};

namespace detail {

inline std::size_t edge_index(const Graph &G, Point u, Point v)
{
  if (u > v)
    std::swap(u, v);
  auto it = std::lower_bound(G.edges().begin(), G.edges().end(),
                             std::make_pair(u, v));
  if (it == G.edges().end() || *it != std::make_pair(u, v))
    throw std::logic_error("edge_index: not an edge");
  return static_cast<std::size_t>(it - G.edges().begin());
}

} // namespace detail

// orbit counts of G on the edge set (acting on sorted-pair indices)
inline std::size_t edge_orbit_count(const Graph &G, const PermGroup &grp)
{
  detail::UnionFind uf(G.num_edges());
  for (std::size_t e = 0; e < G.num_edges(); ++e) {
    auto [u, v] = G.edges()[e];
    for (const Perm &g : grp.generators())
      uf.unite(static_cast<Point>(e),
               static_cast<Point>(detail::edge_index(G, g[u], g[v])));
  }
  std::size_t cnt = 0;
  for (std::size_t e = 0; e < G.num_edges(); ++e)
    if (uf.find(static_cast<Point>(e)) == e)
      ++cnt;
  return cnt;
}

// orbit count on arcs; arc (u,v) with u<v has index 2e, the reverse 2e+1
inline std::size_t arc_orbit_count(const Graph &G, const PermGroup &grp)
{
  detail::UnionFind uf(2 * G.num_edges());
  auto arc_idx = [&](Point u, Point v) {
    std::size_t e = detail::edge_index(G, u, v);
    return static_cast<Point>(2 * e + (u < v ? 0 : 1));
  };
  for (std::size_t e = 0; e < G.num_edges(); ++e) {
    auto [u, v] = G.edges()[e];
    for (const Perm &g : grp.generators()) {
      uf.unite(arc_idx(u, v), arc_idx(g[u], g[v]));
      uf.unite(arc_idx(v, u), arc_idx(g[v], g[u]));
    }
  }
  std::size_t cnt = 0;
  for (std::size_t a = 0; a < 2 * G.num_edges(); ++a)
    if (uf.find(static_cast<Point>(a)) == a)
      ++cnt;
  return cnt;
}

inline Transitivity transitivity(const Graph &G, const PermGroup &grp)
{
  Transitivity t;
  t.vertex = grp.degree() == G.num_vertices() && grp.is_transitive();
  if (G.num_edges() > 0) {
    t.edge = edge_orbit_count(G, grp) == 1;
    t.arc = arc_orbit_count(G, grp) == 1;
  }
  return t;
}

// ---------------------------------------------------------------------------
// local action
// ---------------------------------------------------------------------------
struct LocalAction {
  std::vector<Point> neighbours; // ascending; local point i = neighbours[i]
  PermGroup action;              // induced group on the neighbourhood
  PermGroup kernel;              // G_v^[1], pointwise stabiliser of Gamma(v)
};

// induced action of the stabiliser G_v on Gamma(v); neighbour labels ascend
inline LocalAction local_action(const Graph &G, const PermGroup &grp, Point v)
{
  if (v >= G.num_vertices())
    throw std::out_of_range("local_action: vertex out of range");
  PermGroup Gv = grp.stabiliser(v);
  const auto &nbrs = G.neighbours(v);
  std::vector<Point> local_of(G.num_vertices(), 0);
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    local_of[nbrs[i]] = static_cast<Point>(i);
  std::vector<Perm> lgens;
  for (const Perm &g : Gv.generators()) {
    std::vector<Point> img(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i)
      img[i] = local_of[g[nbrs[i]]];
    lgens.push_back(Perm(std::move(img)));
  }
  PermGroup act(nbrs.size(), std::move(lgens));
  PermGroup ker = Gv.pointwise_stabiliser(nbrs);
  return {nbrs, std::move(act), std::move(ker)};
}

// ---------------------------------------------------------------------------
// fast recognition of the two local groups, with a conjugating witness
// ---------------------------------------------------------------------------
namespace detail {

// X on 2p points permutation-isomorphic to C_p x C_p with two orbits of
// size p? Returns the point relabelling onto the canonical copy.
inline std::optional<Perm> recognize_L_p1(const PermGroup &X, std::uint64_t p)
{
  std::size_t n = 2 * static_cast<std::size_t>(p);
  if (X.degree() != n || X.order() != BigInt(p) * p)
    return std::nullopt;
  auto orbs = X.orbits();
  if (orbs.size() != 2 || orbs[0].size() != p || orbs[1].size() != p)
    return std::nullopt;
  if (!is_elementary_abelian(X, p))
    return std::nullopt;
  PermGroup K0 = X.pointwise_stabiliser(orbs[1]); // acts only on orbs[0]
  PermGroup K1 = X.pointwise_stabiliser(orbs[0]);
  if (K0.order() != p || K1.order() != p)
    return std::nullopt;
  std::vector<Point> img(n, 0);
  auto label_orbit = [&](const PermGroup &K, const std::vector<Point> &orb,
                         Point offset) {
    Point x = orb[0];
    const Perm &s = K.generators().front();
    for (std::uint64_t j = 0; j < p; ++j) {
      img[x] = static_cast<Point>(offset + j);
      x = s[x];
    }
  };
  label_orbit(K0, orbs[0], 0);
  label_orbit(K1, orbs[1], static_cast<Point>(p));
  Perm beta(std::move(img));
  PermGroup canon = L_p1(p);
  if (!conjugates_into(beta, X, canon) ||
      !conjugates_into(beta.inverse(), canon, X))
    return std::nullopt;
  return beta;
}

// X on 2p points permutation-isomorphic to C_p wr C_2?
inline std::optional<Perm> recognize_L_p2(const PermGroup &X, std::uint64_t p)
{
  std::size_t n = 2 * static_cast<std::size_t>(p);
  if (X.degree() != n || X.order() != BigInt(2) * p * p ||
      !X.is_transitive())
    return std::nullopt;
  auto systems = minimal_block_systems(X);
  const BlockSystem *two = nullptr;
  for (const auto &bs : systems)
    if (bs.num_cells() == 2 && bs.cell_size() == p)
      two = &bs;
  if (!two)
    return std::nullopt;
  PermGroup Y = kernel_of_action(X, two->cell_of, 2);
  if (Y.order() != BigInt(p) * p || !is_elementary_abelian(Y, p))
    return std::nullopt;
  // involution swapping the two cells
  std::optional<Perm> swap;
  X.for_each_element([&](const Perm &g) {
    if (!swap && (g * g).is_identity() && !g.is_identity() &&
        two->cell_of[g[two->cells[0][0]]] == 1)
      swap = g;
  });
  if (!swap)
    return std::nullopt;
  PermGroup K0 = Y.pointwise_stabiliser(two->cells[1]);
  if (K0.order() != p)
    return std::nullopt;
  std::vector<Point> img(n, 0);
  Point x = two->cells[0][0];
  const Perm &s = K0.generators().front();
  for (std::uint64_t j = 0; j < p; ++j) {
    img[x] = static_cast<Point>(j);
    img[(*swap)[x]] = static_cast<Point>(p + j);
    x = s[x];
  }
  Perm beta(std::move(img));
  PermGroup canon = L_p2(p);
  if (!conjugates_into(beta, X, canon) ||
      !conjugates_into(beta.inverse(), canon, X))
    return std::nullopt;
  return beta;
}

} // namespace detail

// witness conjugating X onto the canonical L_{p,chi}, if one exists
inline std::optional<Perm> recognize_local_group(const PermGroup &X,
                                                 std::uint64_t p, unsigned chi)
{
  return chi == 1 ? detail::recognize_L_p1(X, p)
                  : detail::recognize_L_p2(X, p);
}

// ---------------------------------------------------------------------------
// PairContext
// ---------------------------------------------------------------------------
enum class PairReject {
  bad_parameters,
  wrong_valency,
  not_connected,
  not_automorphisms,
  not_vertex_transitive,
  not_edge_transitive,
  local_action_mismatch,
  gv_star_missing,
};

inline const char *to_string(PairReject r)
{
  switch (r) {
  case PairReject::bad_parameters: return "bad_parameters";
  case PairReject::wrong_valency: return "wrong_valency";
  case PairReject::not_connected: return "not_connected";
  case PairReject::not_automorphisms: return "not_automorphisms";
  case PairReject::not_vertex_transitive: return "not_vertex_transitive";
  case PairReject::not_edge_transitive: return "not_edge_transitive";
  case PairReject::local_action_mismatch: return "local_action_mismatch";
  case PairReject::gv_star_missing: return "gv_star_missing";
  }
  return "unknown";
}

class pair_rejection : public std::runtime_error {
public:
  pair_rejection(PairReject code, const std::string &detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code(code)
  {
  }
  PairReject code;
};

// A validated locally-L_{p,chi} edge-transitive pair with the cached
// stabiliser data the classifier consumes. Immutable after validation.
struct PairContext {
  Graph graph;
  PermGroup group;
  std::uint64_t p = 2;
  unsigned chi = 1;
  Point base_vertex = 0;
  PermGroup vertex_stabiliser;       // G_v
  PermGroup gv_star;                 // G_v^*, the unique index-chi subgroup
  PermGroup local;                   // G_v^{Gamma(v)}
  PermGroup local_kernel;            // G_v^{[1]}
  std::vector<Point> neighbours;     // of the base vertex, ascending
  Perm local_witness;                // conjugates `local` onto L_{p,chi}

  BigInt gv_star_order() const { return gv_star.order(); }

  // exact t with |G_v^*| = p^t
  std::uint64_t stabiliser_exponent() const
  {
    return exact_log(gv_star.order(), p);
  }
};

namespace detail {

// locate G_v^* inside G_v: the unique index-chi subgroup whose local image
// is the intransitive L_{p,1}
inline PermGroup locate_gv_star(const Graph &G, const PermGroup &Gv,
                                const std::vector<Point> &nbrs,
                                std::uint64_t p, unsigned chi);

} // namespace detail

inline PairContext make_pair_context(const Graph &graph, const PermGroup &grp,
                                     std::uint64_t p, unsigned chi)
{
  if (!is_prime_u64(p))
    throw pair_rejection(PairReject::bad_parameters, "p must be prime");
  if (chi != 1 && chi != 2)
    throw pair_rejection(PairReject::bad_parameters, "chi must be 1 or 2");
  if (grp.degree() != graph.num_vertices())
    throw pair_rejection(PairReject::bad_parameters,
                         "group degree differs from vertex count");
  if (graph.num_vertices() == 0)
    throw pair_rejection(PairReject::bad_parameters, "empty graph");
  auto val = graph.valency();
  if (!val || *val != 2 * p)
    throw pair_rejection(PairReject::wrong_valency,
                         "graph is not regular of valency 2p");
  if (!graph.connected())
    throw pair_rejection(PairReject::not_connected, "graph is disconnected");
  for (const Perm &g : grp.generators())
    if (!is_automorphism(graph, g))
      throw pair_rejection(PairReject::not_automorphisms,
                           "a generator does not preserve the edge set");
  if (!grp.is_transitive())
    throw pair_rejection(PairReject::not_vertex_transitive,
                         "group is not vertex-transitive");
  if (edge_orbit_count(graph, grp) != 1)
    throw pair_rejection(PairReject::not_edge_transitive,
                         "group is not edge-transitive");

  Point v = 0;
  LocalAction la = local_action(graph, grp, v);
  auto witness = recognize_local_group(la.action, p, chi);
  if (!witness)
    throw pair_rejection(PairReject::local_action_mismatch,
                         "local action is not permutation-isomorphic to "
                         "L_{p," + std::to_string(chi) + "}");

  PermGroup Gv = grp.stabiliser(v);
  PermGroup star = detail::locate_gv_star(graph, Gv, la.neighbours, p, chi);

  PairContext ctx{graph,
                  grp,
                  p,
                  chi,
                  v,
                  std::move(Gv),
                  std::move(star),
                  la.action,
                  la.kernel,
                  la.neighbours,
                  *witness};
  // Together these force |G_v : G_v^*| = chi with G_v^* a p-group
  if (ctx.vertex_stabiliser.order() != ctx.gv_star.order() * chi)
    throw pair_rejection(PairReject::gv_star_missing,
                         "index of G_v^* is not chi");
  if (!is_p_group(ctx.gv_star, p))
    throw pair_rejection(PairReject::gv_star_missing, "G_v^* is not a p-group");
  return ctx;
}

namespace detail {

inline PermGroup local_image(const PermGroup &H,
                             const std::vector<Point> &nbrs, std::size_t degree)
{
  std::vector<Point> local_of(degree, 0);
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    local_of[nbrs[i]] = static_cast<Point>(i);
  std::vector<Perm> lgens;
  for (const Perm &g : H.generators()) {
    std::vector<Point> img(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i)
      img[i] = local_of[g[nbrs[i]]];
    lgens.push_back(Perm(std::move(img)));
  }
  return PermGroup(nbrs.size(), std::move(lgens));
}

// subgroups of index 2 (for 2-groups and small groups): kernels of the
// homomorphisms onto C_2, via the subgroup generated by squares and
// commutators
inline std::vector<PermGroup> index_two_subgroups(const PermGroup &P)
{
  std::vector<Perm> mg;
  for (const Perm &g : P.generators()) {
    mg.push_back(g * g);
    for (const Perm &h : P.generators())
      mg.push_back(g.inverse() * (h.inverse() * (g * h)));
  }
  PermGroup M = normal_closure(P, std::move(mg));
  // independent generators of P modulo M
  std::vector<Perm> basis;
  PermGroup S = M;
  for (const Perm &g : P.generators()) {
    if (!S.contains(g)) {
      basis.push_back(g);
      std::vector<Perm> gens = S.generators();
      gens.push_back(g);
      S = PermGroup(P.degree(), std::move(gens));
    }
  }
  std::size_t d = basis.size();
  std::vector<PermGroup> out;
  for (std::uint64_t phi = 1; phi < (std::uint64_t{1} << d); ++phi) {
    std::size_t j0 = 0;
    while (!((phi >> j0) & 1))
      ++j0;
    std::vector<Perm> gens = M.generators();
    for (std::size_t i = 0; i < d; ++i) {
      if (!((phi >> i) & 1))
        gens.push_back(basis[i]);
      else if (i != j0)
        gens.push_back(basis[i] * basis[j0]);
    }
    PermGroup H(P.degree(), std::move(gens));
    if (H.order() * 2 == P.order())
      out.push_back(std::move(H));
  }
  return out;
}

inline PermGroup locate_gv_star(const Graph &G, const PermGroup &Gv,
                                const std::vector<Point> &nbrs,
                                std::uint64_t p, unsigned chi)
{
  if (chi == 1)
    return Gv;
  // any subgroup of index 2 is a kernel of a map onto C_2; scan them all
  // (chain-based, no element enumeration)
  std::vector<PermGroup> candidates = index_two_subgroups(Gv);
  std::vector<PermGroup> hits;
  for (PermGroup &H : candidates) {
    PermGroup img = local_image(H, nbrs, G.num_vertices());
    if (recognize_L_p1(img, p))
      hits.push_back(std::move(H));
  }
  // drop duplicates (distinct hyperplanes can only give distinct subgroups,
  // but stay safe)
  std::vector<PermGroup> unique_hits;
  for (PermGroup &H : hits) {
    bool dup = false;
    for (const PermGroup &K : unique_hits)
      if (K.equals(H))
        dup = true;
    if (!dup)
      unique_hits.push_back(std::move(H));
  }
  if (unique_hits.size() != 1)
    throw pair_rejection(PairReject::gv_star_missing,
                         "expected exactly one index-2 subgroup of G_v with "
                         "intransitive local image, found " +
                             std::to_string(unique_hits.size()));
  return unique_hits.front();
}

} // namespace detail

// ---------------------------------------------------------------------------
// half-arc-transitive orientation (chi = 1)
// ---------------------------------------------------------------------------
inline Digraph half_arc_orientation(const PairContext &ctx)
{
  if (ctx.chi != 1)
    throw std::invalid_argument("half_arc_orientation: pair is arc-transitive "
                                "(chi = 2), no invariant orientation exists");
  const Graph &G = ctx.graph;
  // orbit of the arc (v, least neighbour) under the group
  std::pair<Point, Point> a0{ctx.base_vertex, ctx.neighbours.front()};
  std::set<std::pair<Point, Point>> arcs{a0};
  std::vector<std::pair<Point, Point>> queue{a0};
  while (!queue.empty()) {
    auto [u, w] = queue.back();
    queue.pop_back();
    for (const Perm &g : ctx.group.generators()) {
      std::pair<Point, Point> b{g[u], g[w]};
      if (arcs.insert(b).second)
        queue.push_back(b);
    }
  }
  std::vector<std::pair<Point, Point>> arcvec(arcs.begin(), arcs.end());
  Digraph D(G.num_vertices(), std::move(arcvec));
  if (!D.is_asymmetric() || D.num_arcs() != G.num_edges())
    throw std::logic_error("half_arc_orientation: arc orbit is not an "
                           "asymmetric orientation");
  return D;
}

} // namespace pxgt
