#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pxgt/bigint.hpp"
#include "pxgt/errors.hpp"
#include "pxgt/perm.hpp"
#include "pxgt/stab_chain.hpp"

namespace pxgt {

inline constexpr std::uint64_t kDefaultElementBudget = 1'000'000;

// Orbit of a point under a generator list, with a BFS transporter tree.
struct OrbitTree {
  Point root = 0;
  std::vector<Point> points;            // BFS order, points[0] == root
  std::vector<std::int32_t> pos;        // degree-sized, -1 if absent
  std::vector<std::int32_t> par_gen;
  std::vector<Point> par_pt;

  bool contains(Point y) const { return pos[y] >= 0; }

  // u with root^u = y
  Perm transporter(const std::vector<Perm> &gens, Point y) const
  {
    std::vector<std::int32_t> path;
    for (Point z = y; z != root; z = par_pt[z])
      path.push_back(par_gen[z]);
    Perm u(pos.size());
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      u *= gens[*it];
    return u;
  }
};

inline OrbitTree orbit_tree(std::size_t degree, const std::vector<Perm> &gens,
                            Point root)
{
  OrbitTree t;
  t.root = root;
  t.pos.assign(degree, -1);
  t.par_gen.assign(degree, -1);
  t.par_pt.assign(degree, 0);
  t.pos[root] = 0;
  t.points.push_back(root);
  for (std::size_t qi = 0; qi < t.points.size(); ++qi) {
    Point x = t.points[qi];
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      Point y = gens[gi][x];
      if (t.pos[y] < 0) {
        t.pos[y] = static_cast<std::int32_t>(t.points.size());
        t.par_gen[y] = static_cast<std::int32_t>(gi);
        t.par_pt[y] = x;
        t.points.push_back(y);
      }
    }
  }
  return t;
}

// Finite permutation group: a generating set plus a stabiliser chain giving
// exact order, membership and point stabilisers. Immutable after
// construction; safe to share across threads for reads.
class PermGroup {
public:
  PermGroup() : PermGroup(std::size_t{1}) {}

  explicit PermGroup(std::size_t degree) : degree_(degree)
  {
    chain_ = std::make_shared<StabChain>(degree, std::vector<Perm>{});
  }

  PermGroup(std::size_t degree, std::vector<Perm> gens,
            std::vector<Point> base_prefix = {},
            std::optional<BigInt> order_hint = std::nullopt)
      : degree_(degree)
  {
    for (Perm &g : gens) {
      if (g.degree() != degree_)
        throw degree_mismatch("PermGroup: generator degree mismatch");
      if (!g.is_identity())
        gens_.push_back(std::move(g));
    }
    chain_ = std::make_shared<StabChain>(degree_, gens_,
                                         std::move(base_prefix),
                                         std::move(order_hint));
  }

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree); }

  std::size_t degree() const { return degree_; }
  const std::vector<Perm> &generators() const { return gens_; }
  const StabChain &chain() const { return *chain_; }
  const BigInt &order() const { return chain_->order(); }
  bool is_trivial() const { return order() == 1; }

  bool contains(const Perm &g) const { return chain_->contains(g); }

  std::vector<Point> orbit(Point x) const
  {
    if (x >= degree_)
      throw std::out_of_range("PermGroup::orbit: point out of range");
    return orbit_tree(degree_, gens_, x).points;
  }

  OrbitTree orbit_with_tree(Point x) const
  {
    if (x >= degree_)
      throw std::out_of_range("PermGroup::orbit: point out of range");
    return orbit_tree(degree_, gens_, x);
  }

  // orbits as a partition, each orbit sorted, ordered by minimum element
  std::vector<std::vector<Point>> orbits() const
  {
    std::vector<bool> seen(degree_, false);
    std::vector<std::vector<Point>> out;
    for (Point x = 0; x < degree_; ++x) {
      if (seen[x])
        continue;
      auto orb = orbit(x);
      for (Point y : orb)
        seen[y] = true;
      std::sort(orb.begin(), orb.end());
      out.push_back(std::move(orb));
    }
    return out;
  }

  bool is_transitive() const
  {
    return degree_ > 0 && orbit(0).size() == degree_;
  }

  PermGroup stabiliser(Point x) const
  {
    if (x >= degree_)
      throw std::out_of_range("PermGroup::stabiliser: point out of range");
    if (chain_->num_levels() == 0)
      return *this; // trivial group
    if (chain_->base_point(0) == x)
      return from_chain(degree_, chain_->sub_chain(1));
    if (chain_->in_orbit(0, x)) {
      Perm u = chain_->transversal(0, x);
      return from_chain(degree_, chain_->sub_chain(1).conjugated(u));
    }
    StabChain c(degree_, chain_->strong_generators(), {x}, order());
    return from_chain(degree_, c.sub_chain(1));
  }

  PermGroup pointwise_stabiliser(const std::vector<Point> &pts) const
  {
    PermGroup g = *this;
    for (Point x : pts)
      g = g.stabiliser(x);
    return g;
  }

  // Streams every element exactly once (chain transversal products).
  template <class F>
  void for_each_element(F &&f,
                        std::uint64_t budget = kDefaultElementBudget) const
  {
    if (order() > budget)
      throw budget_error("element enumeration budget exceeded: |G| = " +
                         order().str() + " > " + std::to_string(budget));
    std::size_t nlev = chain_->num_levels();
    if (nlev == 0) {
      f(Perm(degree_));
      return;
    }
    std::vector<std::vector<Perm>> T(nlev);
    for (std::size_t l = 0; l < nlev; ++l)
      for (Point y : chain_->orbit(l))
        T[l].push_back(chain_->transversal(l, y));
    std::vector<std::size_t> idx(nlev, 0);
    // acc[l] = product of chosen transversals at levels >= l (deepest first)
    std::vector<Perm> acc(nlev + 1);
    acc[nlev] = Perm(degree_);
    for (std::size_t l = nlev; l-- > 0;)
      acc[l] = acc[l + 1] * T[l][0];
    while (true) {
      f(acc[0]);
      std::size_t l = 0;
      while (l < nlev && ++idx[l] == T[l].size()) {
        idx[l] = 0;
        ++l;
      }
      if (l == nlev)
        break;
      for (std::size_t k = l + 1; k-- > 0;)
        acc[k] = acc[k + 1] * T[k][idx[k]];
    }
  }

  std::vector<Perm>
  elements(std::uint64_t budget = kDefaultElementBudget) const
  {
    std::vector<Perm> out;
    out.reserve(static_cast<std::size_t>(order()));
    for_each_element([&](const Perm &g) { out.push_back(g); }, budget);
    return out;
  }

  bool is_subgroup_of(const PermGroup &other) const
  {
    if (degree_ != other.degree_)
      return false;
    for (const Perm &g : gens_)
      if (!other.contains(g))
        return false;
    return true;
  }

  bool equals(const PermGroup &other) const
  {
    return degree_ == other.degree_ && order() == other.order() &&
           is_subgroup_of(other);
  }

  static PermGroup from_chain(std::size_t degree, StabChain chain)
  {
    PermGroup g(degree, nullptr_tag{});
    g.gens_ = chain.strong_generators();
    g.chain_ = std::make_shared<StabChain>(std::move(chain));
    return g;
  }

private:
  struct nullptr_tag {};
  PermGroup(std::size_t degree, nullptr_tag) : degree_(degree) {}

  std::size_t degree_ = 0;
  std::vector<Perm> gens_;
  std::shared_ptr<const StabChain> chain_;
};

// --- basic group-theoretic predicates and constructions ---------------------

inline bool is_abelian(const PermGroup &G)
{
  const auto &gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i])
        return false;
  return true;
}

inline bool is_elementary_abelian(const PermGroup &G, std::uint64_t p)
{
  if (G.is_trivial())
    return true;
  if (!is_abelian(G))
    return false;
  for (const Perm &g : G.generators()) {
    Perm gp(G.degree());
    for (std::uint64_t i = 0; i < p; ++i)
      gp *= g;
    if (!gp.is_identity())
      return false;
  }
  return true;
}

inline bool is_p_group(const PermGroup &G, std::uint64_t p)
{
  BigInt o = G.order();
  while (o % p == 0)
    o /= p;
  return o == 1;
}

// all point stabilisers trivial <=> every orbit has size |G|
inline bool is_semiregular(const PermGroup &G)
{
  for (const auto &orb : G.orbits())
    if (BigInt(orb.size()) != G.order())
      return false;
  return true;
}

// sufficient to check closure under conjugation by generators
inline bool is_normal(const PermGroup &G, const PermGroup &N)
{
  if (N.degree() != G.degree())
    throw degree_mismatch("is_normal: degree mismatch");
  for (const Perm &g : G.generators())
    for (const Perm &x : N.generators())
      if (!N.contains(x.conjugated_by(g)))
        return false;
  return true;
}

// smallest normal subgroup of G containing S
inline PermGroup normal_closure(const PermGroup &G, std::vector<Perm> seed,
                                std::vector<Point> base_prefix = {})
{
  for (const Perm &s : seed)
    if (!G.contains(s))
      throw std::invalid_argument("normal_closure: element not in G");
  seed.erase(std::remove_if(seed.begin(), seed.end(),
                            [](const Perm &g) { return g.is_identity(); }),
             seed.end());
  PermGroup N(G.degree(), seed, base_prefix);
  std::vector<Perm> conjugators;
  for (const Perm &g : G.generators()) {
    conjugators.push_back(g);
    conjugators.push_back(g.inverse());
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Perm> fresh;
    for (const Perm &x : N.generators())
      for (const Perm &c : conjugators) {
        Perm y = x.conjugated_by(c);
        if (!N.contains(y))
          fresh.push_back(std::move(y));
      }
    if (!fresh.empty()) {
      grew = true;
      std::vector<Perm> gens = N.generators();
      gens.insert(gens.end(), fresh.begin(), fresh.end());
      N = PermGroup(G.degree(), std::move(gens), base_prefix);
    }
  }
  return N;
}

inline PermGroup commutator_subgroup(const PermGroup &G, const PermGroup &A,
                                     const PermGroup &B)
{
  std::vector<Perm> comms;
  for (const Perm &a : A.generators())
    for (const Perm &b : B.generators())
      comms.push_back(a.inverse() * (b.inverse() * (a * b)));
  return normal_closure(G, std::move(comms));
}

inline PermGroup derived_subgroup(const PermGroup &G)
{
  return commutator_subgroup(G, G, G);
}

inline bool is_soluble(const PermGroup &G)
{
  PermGroup D = G;
  while (!D.is_trivial()) {
    PermGroup E = derived_subgroup(D);
    if (E.order() == D.order())
      return false;
    D = std::move(E);
  }
  return true;
}

// nilpotency class via the lower central series, or nullopt if the series
// stabilises above the identity
inline std::optional<unsigned> nilpotency_class(const PermGroup &G)
{
  if (G.is_trivial())
    return 0u;
  unsigned cls = 1;
  PermGroup gamma = commutator_subgroup(G, G, G);
  while (!gamma.is_trivial()) {
    PermGroup next = commutator_subgroup(G, gamma, G);
    if (next.order() == gamma.order())
      return std::nullopt;
    gamma = std::move(next);
    ++cls;
  }
  return cls;
}

} // namespace pxgt
