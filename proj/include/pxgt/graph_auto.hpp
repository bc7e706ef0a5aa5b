#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "pxgt/errors.hpp"
#include "pxgt/graph.hpp"
#include "pxgt/group_structure.hpp"
#include "pxgt/perm_group.hpp"

namespace pxgt {

inline constexpr std::size_t kDefaultAutomorphismBudget = 200;

namespace detail {

using Colouring = std::vector<std::uint32_t>;

// one pass: colour <- rank of (colour, sorted neighbour-colour multiset)
inline bool refine_pass(const Graph &G, Colouring &col)
{
  std::size_t n = G.num_vertices();
  std::vector<std::pair<std::vector<std::uint32_t>, Point>> keys(n);
  for (Point v = 0; v < n; ++v) {
    std::vector<std::uint32_t> k;
    k.push_back(col[v]);
    for (Point u : G.neighbours(v))
      k.push_back(col[u]);
    std::sort(k.begin() + 1, k.end());
    keys[v] = {std::move(k), v};
  }
  std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
  for (const auto &[k, v] : keys)
    ids.emplace(k, 0);
  std::uint32_t next = 0;
  for (auto &kv : ids)
    kv.second = next++;
  bool changed = false;
  for (Point v = 0; v < n; ++v) {
    std::uint32_t c = ids[keys[v].first];
    if (c != col[v])
      changed = true;
    col[v] = c;
  }
  return changed;
}

inline void refine(const Graph &G, Colouring &col)
{
  while (refine_pass(G, col)) {
  }
}

inline std::size_t num_colours(const Colouring &col)
{
  return col.empty() ? 0 : 1 + *std::max_element(col.begin(), col.end());
}

// first smallest non-singleton colour class, or empty when discrete
inline std::vector<Point> branch_cell(const Colouring &col)
{
  std::size_t nc = num_colours(col);
  std::vector<std::vector<Point>> cells(nc);
  for (Point v = 0; v < col.size(); ++v)
    cells[col[v]].push_back(v);
  std::size_t best = SIZE_MAX, at = nc;
  for (std::size_t c = 0; c < nc; ++c)
    if (cells[c].size() > 1 && cells[c].size() < best) {
      best = cells[c].size();
      at = c;
    }
  return at == nc ? std::vector<Point>{} : cells[at];
}

inline std::vector<Point> leaf_order(const Colouring &col)
{
  std::vector<Point> order(col.size());
  std::iota(order.begin(), order.end(), Point{0});
  std::sort(order.begin(), order.end(),
            [&](Point a, Point b) { return col[a] < col[b]; });
  return order;
}

inline void individualize(const Graph &G, Colouring &col, Point v)
{
  col[v] = static_cast<std::uint32_t>(num_colours(col));
  refine(G, col);
}

struct AutSearch {
  const Graph &G;
  std::vector<Perm> gens;
  std::optional<std::vector<Point>> first_leaf;
  UnionFind point_orbits; // under the automorphisms discovered so far

  explicit AutSearch(const Graph &g)
      : G(g), point_orbits(g.num_vertices())
  {
  }

  void leaf(const Colouring &col)
  {
    auto order = leaf_order(col);
    if (!first_leaf) {
      first_leaf = order;
      return;
    }
    std::vector<Point> img(G.num_vertices());
    for (std::size_t i = 0; i < order.size(); ++i)
      img[(*first_leaf)[i]] = order[i];
    Perm sigma(std::move(img));
    if (sigma.is_identity() || !is_automorphism(G, sigma))
      return;
    for (Point v = 0; v < G.num_vertices(); ++v)
      point_orbits.unite(v, sigma[v]);
    gens.push_back(std::move(sigma));
  }

  void dfs(const Colouring &col, bool root)
  {
    auto cell = branch_cell(col);
    if (cell.empty()) {
      leaf(col);
      return;
    }
    std::vector<Point> tried;
    for (Point v : cell) {
      if (root) {
        bool skip = false;
        for (Point w : tried)
          if (point_orbits.find(w) == point_orbits.find(v)) {
            skip = true;
            break;
          }
        if (skip)
          continue;
      }
      tried.push_back(v);
      Colouring next = col;
      individualize(G, next, v);
      dfs(next, false);
    }
  }
};

} // namespace detail

// Exact full automorphism group by partition-refinement backtracking:
// initial colouring by degree, iterated neighbourhood refinement, branching
// on the first smallest non-singleton cell.
inline PermGroup automorphism_group(const Graph &G,
                                    std::size_t budget =
                                        kDefaultAutomorphismBudget)
{
  std::size_t n = G.num_vertices();
  if (n > budget)
    throw budget_error("automorphism_group: vertex budget exceeded (" +
                       std::to_string(n) + " > " + std::to_string(budget) +
                       ")");
  if (n == 0)
    return PermGroup::trivial(1);
  detail::Colouring col(n, 0);
  detail::refine(G, col);
  detail::AutSearch search(G);
  search.dfs(col, true);
  return PermGroup(n, std::move(search.gens));
}

// Graph isomorphism via the same refinement machinery: G1's branch vertex is
// fixed, G2's candidates run over the matching cell.
inline std::optional<Perm> graph_isomorphism(const Graph &G1, const Graph &G2,
                                             std::size_t budget =
                                                 kDefaultAutomorphismBudget)
{
  if (G1.num_vertices() != G2.num_vertices() ||
      G1.num_edges() != G2.num_edges())
    return std::nullopt;
  std::size_t n = G1.num_vertices();
  if (n > budget)
    throw budget_error("graph_isomorphism: vertex budget exceeded");
  if (n == 0)
    return Perm(0);

  // joint refinement keeps colour ids comparable across the two graphs
  struct Joint {
    const Graph &A, &B;

    bool pass(detail::Colouring &ca, detail::Colouring &cb) const
    {
      std::size_t n = A.num_vertices();
      auto key = [](const Graph &g, const detail::Colouring &c, Point v) {
        std::vector<std::uint32_t> k{c[v]};
        for (Point u : g.neighbours(v))
          k.push_back(c[u]);
        std::sort(k.begin() + 1, k.end());
        return k;
      };
      std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
      for (Point v = 0; v < n; ++v) {
        ids.emplace(key(A, ca, v), 0);
        ids.emplace(key(B, cb, v), 0);
      }
      std::uint32_t next = 0;
      for (auto &kv : ids)
        kv.second = next++;
      bool changed = false;
      for (Point v = 0; v < n; ++v) {
        std::uint32_t x = ids[key(A, ca, v)];
        std::uint32_t y = ids[key(B, cb, v)];
        if (x != ca[v] || y != cb[v])
          changed = true;
        ca[v] = x;
        cb[v] = y;
      }
      return changed;
    }

    bool refine(detail::Colouring &ca, detail::Colouring &cb) const
    {
      while (pass(ca, cb)) {
      }
      // compatible iff the colour histograms agree
      std::map<std::uint32_t, long> h;
      for (auto c : ca)
        ++h[c];
      for (auto c : cb)
        --h[c];
      for (auto &[c, cnt] : h)
        if (cnt != 0)
          return false;
      return true;
    }

    std::optional<Perm> dfs(detail::Colouring ca, detail::Colouring cb) const
    {
      if (!refine(ca, cb))
        return std::nullopt;
      auto cell = detail::branch_cell(ca);
      if (cell.empty()) {
        auto oa = detail::leaf_order(ca);
        auto ob = detail::leaf_order(cb);
        std::vector<Point> img(ca.size());
        for (std::size_t i = 0; i < oa.size(); ++i)
          img[oa[i]] = ob[i];
        Perm phi(std::move(img));
        for (auto [u, v] : A.edges())
          if (!B.adjacent(phi[u], phi[v]))
            return std::nullopt;
        return phi;
      }
      Point v = cell[0];
      std::uint32_t target = ca[v];
      std::uint32_t fresh = static_cast<std::uint32_t>(
          std::max(detail::num_colours(ca), detail::num_colours(cb)));
      for (Point w = 0; w < cb.size(); ++w) {
        if (cb[w] != target)
          continue;
        detail::Colouring na = ca, nb = cb;
        na[v] = fresh;
        nb[w] = fresh;
        if (auto res = dfs(std::move(na), std::move(nb)))
          return res;
      }
      return std::nullopt;
    }
  };

  Joint j{G1, G2};
  detail::Colouring ca(n, 0), cb(n, 0);
  return j.dfs(std::move(ca), std::move(cb));
}

} // namespace pxgt
