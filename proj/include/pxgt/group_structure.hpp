#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "pxgt/perm_group.hpp"

namespace pxgt {

// ---------------------------------------------------------------------------
// kernel of the action induced on an invariant partition
//
// class_of maps each point to its cell index in a G-invariant partition with
// m cells. Computed from a stabiliser chain of the combined action on
// points + cells whose base starts with the cell points, so the kernel drops
// out as the chain tail. No element enumeration.
// ---------------------------------------------------------------------------
inline PermGroup kernel_of_action(const PermGroup &G,
                                  const std::vector<Point> &class_of,
                                  std::size_t num_classes)
{
  std::size_t n = G.degree();
  std::size_t N = n + num_classes;
  std::vector<Point> cell_rep(num_classes, 0);
  for (Point x = 0; x < n; ++x)
    cell_rep[class_of[x]] = x;
  std::vector<Perm> combined;
  for (const Perm &g : G.generators()) {
    std::vector<Point> img(N);
    for (Point x = 0; x < n; ++x)
      img[x] = g[x];
    for (std::size_t c = 0; c < num_classes; ++c)
      img[n + c] = static_cast<Point>(n + class_of[g[cell_rep[c]]]);
    combined.push_back(Perm(std::move(img)));
  }
  std::vector<Point> prefix;
  for (std::size_t c = 0; c < num_classes; ++c)
    prefix.push_back(static_cast<Point>(n + c));
  StabChain chain(N, combined, prefix, G.order());
  std::vector<Perm> kgens;
  for (const Perm &g : chain.strong_generators(num_classes)) {
    std::vector<Point> img(g.images().begin(), g.images().begin() + n);
    kgens.push_back(Perm(std::move(img)));
  }
  return PermGroup(n, std::move(kgens), {},
                   chain.tail_order(num_classes));
}

// induced permutations of the cells, one per generator (paired with gens)
inline std::vector<Perm> induced_on_classes(const PermGroup &G,
                                            const std::vector<Point> &class_of,
                                            std::size_t num_classes)
{
  std::vector<Point> cell_rep(num_classes, 0);
  for (Point x = static_cast<Point>(G.degree()); x-- > 0;)
    cell_rep[class_of[x]] = x;
  std::vector<Perm> out;
  for (const Perm &g : G.generators()) {
    std::vector<Point> img(num_classes);
    for (std::size_t c = 0; c < num_classes; ++c)
      img[c] = class_of[g[cell_rep[c]]];
    out.push_back(Perm(std::move(img)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// centre
// ---------------------------------------------------------------------------
inline bool commutes_with_generators(const PermGroup &G, const Perm &z)
{
  for (const Perm &g : G.generators())
    if (z * g != g * z)
      return false;
  return true;
}

// Enumeration under the budget; for transitive groups above it, the
// semiregular-centraliser walk over candidate images of one base point.
inline PermGroup centre(const PermGroup &G,
                        std::uint64_t budget = kDefaultElementBudget)
{
  std::vector<Perm> central;
  if (G.order() <= budget) {
    G.for_each_element(
        [&](const Perm &g) {
          if (!g.is_identity() && commutes_with_generators(G, g))
            central.push_back(g);
        },
        budget);
    return PermGroup(G.degree(), std::move(central));
  }
  if (!G.is_transitive())
    throw budget_error("centre: group exceeds the enumeration budget and is "
                       "not transitive");
  Point b = 0;
  PermGroup Gb = G.stabiliser(b);
  auto tree = G.orbit_with_tree(b);
  for (Point y = 0; y < G.degree(); ++y) {
    bool fixed = true;
    for (const Perm &h : Gb.generators())
      if (h[y] != y) {
        fixed = false;
        break;
      }
    if (!fixed)
      continue;
    // z with z[b] = y, propagated along the orbit tree
    std::vector<Point> img(G.degree());
    img[b] = y;
    for (std::size_t i = 1; i < tree.points.size(); ++i) {
      Point x = tree.points[i];
      img[x] = G.generators()[tree.par_gen[x]][img[tree.par_pt[x]]];
    }
    Perm z(std::move(img));
    if (!z.is_identity() && G.contains(z) && commutes_with_generators(G, z))
      central.push_back(std::move(z));
  }
  return PermGroup(G.degree(), std::move(central));
}

// lcm of element orders, enumeration under budget
inline BigInt exponent(const PermGroup &G,
                       std::uint64_t budget = kDefaultElementBudget)
{
  BigInt e = 1;
  G.for_each_element([&](const Perm &g) { e = big_lcm(e, g.element_order()); },
                     budget);
  return e;
}

// ---------------------------------------------------------------------------
// conjugacy classes of prime-order elements; minimal normal subgroups
// ---------------------------------------------------------------------------
inline std::vector<Perm>
prime_order_class_reps(const PermGroup &G,
                       std::uint64_t budget = kDefaultElementBudget)
{
  std::vector<Perm> primes;
  G.for_each_element(
      [&](const Perm &g) {
        if (g.is_identity())
          return;
        BigInt o = g.element_order();
        if (fits_u64(o) && is_prime_u64(to_u64(o)))
          primes.push_back(g);
      },
      budget);
  std::vector<Perm> reps;
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> conjugators;
  for (const Perm &g : G.generators()) {
    conjugators.push_back(g);
    conjugators.push_back(g.inverse());
  }
  for (const Perm &g : primes) {
    if (seen.count(g))
      continue;
    reps.push_back(g);
    // close the class
    std::vector<Perm> queue{g};
    seen.insert(g);
    while (!queue.empty()) {
      Perm x = std::move(queue.back());
      queue.pop_back();
      for (const Perm &c : conjugators) {
        Perm y = x.conjugated_by(c);
        if (seen.insert(y).second)
          queue.push_back(std::move(y));
      }
    }
  }
  return reps;
}

// Inclusion-minimal non-trivial normal subgroups. A minimal normal subgroup
// is the normal closure of any of its non-identity elements, so the normal
// closures of prime-order class representatives cover all of them.
inline std::vector<PermGroup>
minimal_normal_subgroups(const PermGroup &G,
                         std::uint64_t budget = kDefaultElementBudget)
{
  std::vector<PermGroup> cands;
  for (const Perm &rep : prime_order_class_reps(G, budget)) {
    PermGroup N = normal_closure(G, {rep});
    bool dup = false;
    for (const PermGroup &M : cands)
      if (M.order() == N.order() && N.is_subgroup_of(M)) {
        dup = true;
        break;
      }
    if (!dup)
      cands.push_back(std::move(N));
  }
  std::vector<PermGroup> out;
  for (const PermGroup &N : cands) {
    bool minimal = true;
    for (const PermGroup &M : cands)
      if (M.order() < N.order() && M.is_subgroup_of(N)) {
        minimal = false;
        break;
      }
    if (minimal)
      out.push_back(N);
  }
  std::sort(out.begin(), out.end(),
            [](const PermGroup &a, const PermGroup &b) {
              return a.order() < b.order();
            });
  return out;
}

// ---------------------------------------------------------------------------
// Sylow subgroups and p-rank
// ---------------------------------------------------------------------------
inline bool is_p_element(const Perm &g, std::uint64_t p)
{
  BigInt o = g.element_order();
  while (o % p == 0)
    o /= p;
  return o == 1;
}

inline PermGroup sylow_subgroup(const PermGroup &G, std::uint64_t p,
                                std::uint64_t budget = kDefaultElementBudget)
{
  if (!is_prime_u64(p))
    throw std::invalid_argument("sylow_subgroup: p must be prime");
  BigInt target = p_part(G.order(), p);
  if (target == 1)
    return PermGroup::trivial(G.degree());
  if (target == G.order())
    return G;
  std::vector<Perm> elems = G.elements(budget);
  PermGroup P = PermGroup::trivial(G.degree());
  while (P.order() < target) {
    bool grown = false;
    for (const Perm &g : elems) {
      if (g.is_identity() || !is_p_element(g, p) || P.contains(g))
        continue;
      bool normalises = true;
      for (const Perm &x : P.generators())
        if (!P.contains(x.conjugated_by(g))) {
          normalises = false;
          break;
        }
      if (!normalises)
        continue;
      std::vector<Perm> gens = P.generators();
      gens.push_back(g);
      P = PermGroup(G.degree(), std::move(gens));
      grown = true;
      break;
    }
    if (!grown)
      throw std::logic_error("sylow_subgroup: climb stalled");
  }
  return P;
}

namespace detail {

// exact search for the maximal elementary abelian order inside a p-group,
// breadth-first extension of commuting p-element sets, centraliser pruning
inline unsigned max_elementary_abelian_rank(const PermGroup &P,
                                            std::uint64_t p,
                                            std::optional<unsigned> target,
                                            std::uint64_t budget)
{
  std::vector<Perm> elems = P.elements(budget);
  std::sort(elems.begin(), elems.end());
  if (is_abelian(P)) {
    std::size_t cnt = 0; // elements with x^p = 1, identity included
    for (const Perm &g : elems) {
      Perm gp(P.degree());
      for (std::uint64_t i = 0; i < p; ++i)
        gp *= g;
      if (gp.is_identity())
        ++cnt;
    }
    unsigned r = 0;
    std::size_t v = cnt;
    while (v > 1) {
      v /= p;
      ++r;
    }
    return r;
  }
  std::map<Perm, std::uint32_t> index_of;
  for (std::uint32_t i = 0; i < elems.size(); ++i)
    index_of[elems[i]] = i;
  std::vector<std::uint32_t> porder; // indices of order-p elements
  for (std::uint32_t i = 0; i < elems.size(); ++i)
    if (!elems[i].is_identity() && elems[i].element_order() == p)
      porder.push_back(i);

  unsigned best = 0;
  std::set<std::vector<std::uint32_t>> visited;
  std::uint64_t states = 0;

  // subgroup as a sorted index set; extension by commuting order-p elements
  struct Frame {
    std::vector<std::uint32_t> sub;
    std::vector<std::uint32_t> gens;
  };
  std::vector<Frame> stack;
  stack.push_back({{index_of.at(Perm(P.degree()))}, {}});
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    if (++states > 200000)
      throw budget_error("p_rank: search state budget exceeded");
    unsigned r = 0;
    std::size_t v = fr.sub.size();
    while (v > 1) {
      v /= p;
      ++r;
    }
    best = std::max(best, r);
    if (target && best >= *target)
      return best;
    // centraliser prune: any extension lies inside C_P(sub)
    std::size_t cent = 0;
    for (const Perm &g : elems) {
      bool ok = true;
      for (std::uint32_t gi : fr.gens)
        if (g * elems[gi] != elems[gi] * g) {
          ok = false;
          break;
        }
      if (ok)
        ++cent;
    }
    unsigned cent_rank = 0;
    while (cent > 1) {
      cent /= p;
      ++cent_rank;
    }
    if (cent_rank <= best && !(target && best < *target))
      continue;
    for (std::uint32_t ai : porder) {
      if (std::binary_search(fr.sub.begin(), fr.sub.end(), ai))
        continue;
      if (!fr.gens.empty() && ai < fr.gens.back())
        continue; // canonical ascending extension order
      const Perm &a = elems[ai];
      bool commutes = true;
      for (std::uint32_t gi : fr.gens)
        if (a * elems[gi] != elems[gi] * a) {
          commutes = false;
          break;
        }
      if (!commutes)
        continue;
      // closure: sub * <a>
      std::vector<std::uint32_t> bigger;
      bigger.reserve(fr.sub.size() * p);
      for (std::uint32_t si : fr.sub) {
        Perm cur = elems[si];
        bigger.push_back(si);
        for (std::uint64_t k = 1; k < p; ++k) {
          cur = cur * a;
          bigger.push_back(index_of.at(cur));
        }
      }
      std::sort(bigger.begin(), bigger.end());
      if (!visited.insert(bigger).second)
        continue;
      Frame nf;
      nf.sub = std::move(bigger);
      nf.gens = fr.gens;
      nf.gens.push_back(ai);
      stack.push_back(std::move(nf));
    }
  }
  return best;
}

} // namespace detail

// exact p-rank: rank of a largest elementary abelian p-subgroup
inline unsigned p_rank(const PermGroup &G, std::uint64_t p,
                       std::uint64_t budget = kDefaultElementBudget)
{
  PermGroup P = sylow_subgroup(G, p, budget);
  if (P.is_trivial())
    return 0;
  return detail::max_elementary_abelian_rank(P, p, std::nullopt, budget);
}

// true as soon as some elementary abelian p-subgroup reaches rank >= target
inline bool has_elementary_abelian_of_rank(const PermGroup &P, std::uint64_t p,
                                           unsigned target,
                                           std::uint64_t budget =
                                               kDefaultElementBudget)
{
  if (target == 0)
    return true;
  return detail::max_elementary_abelian_rank(P, p, target, budget) >= target;
}

// ---------------------------------------------------------------------------
// block systems
// ---------------------------------------------------------------------------
struct BlockSystem {
  std::vector<std::vector<Point>> cells; // sorted cells, ordered by minimum
  std::vector<Point> cell_of;            // per point

  std::size_t num_cells() const { return cells.size(); }
  std::size_t cell_size() const { return cells.empty() ? 0 : cells[0].size(); }
};

namespace detail {

struct UnionFind {
  std::vector<Point> parent;
  explicit UnionFind(std::size_t n) : parent(n)
  {
    std::iota(parent.begin(), parent.end(), Point{0});
  }
  Point find(Point x)
  {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(Point a, Point b)
  {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (a > b)
      std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// finest G-invariant partition with a and b in one cell (union-find
// refinement), restricted to the orbit containing both
inline BlockSystem finest_blocks_with(const PermGroup &G, Point a, Point b)
{
  std::size_t n = G.degree();
  UnionFind uf(n);
  std::vector<std::pair<Point, Point>> queue{{a, b}};
  uf.unite(a, b);
  while (!queue.empty()) {
    auto [x, y] = queue.back();
    queue.pop_back();
    for (const Perm &g : G.generators()) {
      Point rx = uf.find(g[x]);
      Point ry = uf.find(g[y]);
      if (rx != ry) {
        uf.unite(rx, ry);
        queue.push_back({rx, ry});
      }
    }
  }
  BlockSystem bs;
  bs.cell_of.assign(n, 0);
  std::map<Point, Point> root_to_cell;
  for (Point x = 0; x < n; ++x) {
    Point r = uf.find(x);
    auto it = root_to_cell.find(r);
    if (it == root_to_cell.end()) {
      it = root_to_cell.emplace(r, static_cast<Point>(bs.cells.size())).first;
      bs.cells.emplace_back();
    }
    bs.cell_of[x] = it->second;
    bs.cells[it->second].push_back(x);
  }
  return bs;
}

} // namespace detail

// All minimal non-trivial block systems of a transitive group.
inline std::vector<BlockSystem> minimal_block_systems(const PermGroup &G)
{
  if (!G.is_transitive())
    throw std::invalid_argument("minimal_block_systems: group must be "
                                "transitive (use per-orbit variant)");
  std::size_t n = G.degree();
  std::vector<BlockSystem> cands;
  std::set<std::vector<Point>> seen;
  for (Point y = 1; y < n; ++y) {
    BlockSystem bs = detail::finest_blocks_with(G, 0, y);
    if (bs.num_cells() <= 1 || bs.num_cells() == n)
      continue;
    if (seen.insert(bs.cell_of).second)
      cands.push_back(std::move(bs));
  }
  // a system is minimal iff no other candidate strictly refines it
  std::vector<BlockSystem> out;
  for (const BlockSystem &a : cands) {
    bool minimal = true;
    for (const BlockSystem &c : cands) {
      if (&c == &a || c.cell_of == a.cell_of)
        continue;
      bool finer = true; // every c-cell inside one a-cell
      for (const auto &cell : c.cells) {
        Point target = a.cell_of[cell[0]];
        for (Point x : cell)
          if (a.cell_of[x] != target) {
            finer = false;
            break;
          }
        if (!finer)
          break;
      }
      if (finer && c.num_cells() > a.num_cells()) {
        minimal = false;
        break;
      }
    }
    if (minimal)
      out.push_back(a);
  }
  return out;
}

// For intransitive groups: minimal systems of each induced orbit action,
// reported per orbit (orbit, systems on orbit positions).
inline std::vector<std::pair<std::vector<Point>, std::vector<BlockSystem>>>
per_orbit_block_systems(const PermGroup &G)
{
  std::vector<std::pair<std::vector<Point>, std::vector<BlockSystem>>> out;
  for (const auto &orb : G.orbits()) {
    if (orb.size() == 1) {
      out.push_back({orb, {}});
      continue;
    }
    std::vector<Point> local_of(G.degree(), 0);
    for (std::size_t i = 0; i < orb.size(); ++i)
      local_of[orb[i]] = static_cast<Point>(i);
    std::vector<Perm> lgens;
    for (const Perm &g : G.generators()) {
      std::vector<Point> img(orb.size());
      for (std::size_t i = 0; i < orb.size(); ++i)
        img[i] = local_of[g[orb[i]]];
      lgens.push_back(Perm(std::move(img)));
    }
    PermGroup L(orb.size(), std::move(lgens));
    out.push_back({orb, L.is_transitive() ? minimal_block_systems(L)
                                          : std::vector<BlockSystem>{}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// permutation isomorphism
// ---------------------------------------------------------------------------
namespace detail {

inline bool conjugates_into(const Perm &beta, const PermGroup &A,
                            const PermGroup &B)
{
  for (const Perm &a : A.generators())
    if (!B.contains(a.conjugated_by(beta)))
      return false;
  return true;
}

struct IsoSearch {
  const PermGroup &A, &B;
  std::size_t n;
  std::vector<std::vector<Point>> a_orbits, b_orbits;
  std::vector<Point> a_orbit_of, b_orbit_of;
  std::vector<Point> order;              // point processing order
  std::vector<std::int32_t> image;       // partial bijection
  std::vector<bool> used;
  std::vector<std::int32_t> orbit_match; // A-orbit -> B-orbit binding
  std::vector<std::size_t> orbit_uses;   // assigned points per A-orbit
  std::vector<Perm> a_gens_inv;

  IsoSearch(const PermGroup &A_, const PermGroup &B_) : A(A_), B(B_)
  {
    n = A.degree();
    a_orbits = A.orbits();
    b_orbits = B.orbits();
    a_orbit_of.assign(n, 0);
    b_orbit_of.assign(n, 0);
    for (Point i = 0; i < a_orbits.size(); ++i)
      for (Point x : a_orbits[i])
        a_orbit_of[x] = i;
    for (Point i = 0; i < b_orbits.size(); ++i)
      for (Point x : b_orbits[i])
        b_orbit_of[x] = i;
    order.resize(n);
    std::iota(order.begin(), order.end(), Point{0});
    // spec tie-break: (orbit size, point-stabiliser order, index)
    std::stable_sort(order.begin(), order.end(), [&](Point x, Point y) {
      return a_orbits[a_orbit_of[x]].size() < a_orbits[a_orbit_of[y]].size();
    });
    image.assign(n, -1);
    used.assign(n, false);
    orbit_match.assign(a_orbits.size(), -1);
    orbit_uses.assign(a_orbits.size(), 0);
    for (const Perm &a : A.generators())
      a_gens_inv.push_back(a.inverse());
  }

  bool feasible(Point x, Point y) const
  {
    if (a_orbits[a_orbit_of[x]].size() != b_orbits[b_orbit_of[y]].size())
      return false;
    std::int32_t bound = orbit_match[a_orbit_of[x]];
    if (bound >= 0 && bound != static_cast<std::int32_t>(b_orbit_of[y]))
      return false;
    // generator-edge consistency on the assigned part
    for (std::size_t gi = 0; gi < A.generators().size(); ++gi) {
      Point xa = A.generators()[gi][x];
      if (image[xa] >= 0 && b_orbit_of[image[xa]] != b_orbit_of[y])
        return false;
      Point xpre = a_gens_inv[gi][x];
      if (image[xpre] >= 0 && b_orbit_of[image[xpre]] != b_orbit_of[y])
        return false;
    }
    return true;
  }

  std::optional<Perm> run(std::size_t k)
  {
    if (k == n) {
      std::vector<Point> img(n);
      for (Point x = 0; x < n; ++x)
        img[x] = static_cast<Point>(image[x]);
      Perm beta(std::move(img));
      if (conjugates_into(beta, A, B) && conjugates_into(beta.inverse(), B, A))
        return beta;
      return std::nullopt;
    }
    Point x = order[k];
    for (Point y = 0; y < n; ++y) {
      if (used[y] || !feasible(x, y))
        continue;
      image[x] = static_cast<std::int32_t>(y);
      used[y] = true;
      Point ao = a_orbit_of[x];
      std::int32_t prev = orbit_match[ao];
      orbit_match[ao] = static_cast<std::int32_t>(b_orbit_of[y]);
      ++orbit_uses[ao];
      auto res = run(k + 1);
      if (res)
        return res;
      --orbit_uses[ao];
      orbit_match[ao] = prev;
      used[y] = false;
      image[x] = -1;
    }
    return std::nullopt;
  }
};

} // namespace detail

// Point bijection beta with beta^{-1} A beta = B, or nullopt. First witness
// in the deterministic search order.
inline std::optional<Perm> permutation_isomorphic(const PermGroup &A,
                                                  const PermGroup &B)
{
  if (A.degree() != B.degree())
    throw degree_mismatch("permutation_isomorphic: degree mismatch");
  if (A.order() != B.order())
    return std::nullopt;
  detail::IsoSearch s(A, B);
  return s.run(0);
}

} // namespace pxgt
