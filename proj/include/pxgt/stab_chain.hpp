#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pxgt/bigint.hpp"
#include "pxgt/errors.hpp"
#include "pxgt/perm.hpp"

namespace pxgt {

// Stabiliser chain built by a deterministic (non-randomized) Schreier-Sims.
//
// Base points: an optional prescribed prefix is honoured verbatim (levels are
// kept even when their orbit stays trivial, so pointwise stabilisers can be
// read off the tail); further base points are the lowest-index points moved
// by the residue that forces the new level.
//
// order_hint: an upper bound on |<gens>| that is known to be attained
// (typically the exact order, obtained from orbit-stabiliser arithmetic or
// from the abstract order of a group being represented). Construction
// finalizes as soon as the transversal product reaches it, which avoids the
// Schreier-generator grind on large-degree actions. A bound that is not
// attained is harmless; a bound below the true order would be unsound and is
// the caller's responsibility to avoid.
class StabChain {
public:
  StabChain() = default;

  StabChain(std::size_t degree, const std::vector<Perm> &gens,
            std::vector<Point> base_prefix = {},
            std::optional<BigInt> order_hint = std::nullopt)
      : degree_(degree)
  {
    for (Point b : base_prefix)
      append_level(b);
    for (const Perm &g : gens) {
      if (g.degree() != degree_)
        throw degree_mismatch("StabChain: generator degree mismatch");
      insert_element(g);
      if (order_hint && transversal_product() == *order_hint)
        break;
    }
    if (!order_hint || transversal_product() != *order_hint)
      close(order_hint);
    order_ = transversal_product();
  }

  std::size_t degree() const { return degree_; }
  const BigInt &order() const { return order_; }
  std::size_t num_levels() const { return levels_.size(); }

  Point base_point(std::size_t level) const { return levels_[level].base; }

  std::vector<Point> base() const
  {
    std::vector<Point> b;
    for (const auto &l : levels_)
      b.push_back(l.base);
    return b;
  }

  const std::vector<Point> &orbit(std::size_t level) const
  {
    return levels_[level].orbit;
  }

  bool in_orbit(std::size_t level, Point y) const
  {
    return levels_[level].pos[y] >= 0;
  }

  // u in the chain's group with base_point(level)^u = y.
  Perm transversal(std::size_t level, Point y) const
  {
    const Level &L = levels_[level];
    assert(L.pos[y] >= 0);
    std::vector<std::int32_t> path; // gen indices, y back to base
    for (Point z = y; z != L.base; z = L.par_pt[z])
      path.push_back(L.par_gen[z]);
    Perm u(degree_);
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      u *= sgens_[*it].g;
    return u;
  }

  // Right-divide g by transversal elements starting at from_level.
  // Returns the residue and the level at which division stopped (an index
  // equal to num_levels() means every level was consumed).
  std::pair<Perm, std::size_t> sift(Perm g, std::size_t from_level = 0) const
  {
    for (std::size_t lev = from_level; lev < levels_.size(); ++lev) {
      const Level &L = levels_[lev];
      Point y = g[L.base];
      if (L.pos[y] < 0)
        return {std::move(g), lev};
      while (y != L.base) {
        g *= sgens_[L.par_gen[y]].ginv;
        y = L.par_pt[y];
      }
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(const Perm &g) const
  {
    if (g.degree() != degree_)
      throw degree_mismatch("StabChain: element degree mismatch");
    auto [res, lev] = sift(g);
    return lev == levels_.size() && res.is_identity();
  }

  // strong generators introduced at levels >= from_level
  std::vector<Perm> strong_generators(std::size_t from_level = 0) const
  {
    std::vector<Perm> out;
    for (const auto &sg : sgens_)
      if (sg.level >= from_level)
        out.push_back(sg.g);
    return out;
  }

  BigInt tail_order(std::size_t from_level) const
  {
    BigInt o = 1;
    for (std::size_t lev = from_level; lev < levels_.size(); ++lev)
      o *= levels_[lev].orbit.size();
    return o;
  }

  // chain of the pointwise stabiliser of the first from_level base points
  StabChain sub_chain(std::size_t from_level) const
  {
    StabChain c;
    c.degree_ = degree_;
    std::vector<std::int32_t> remap(sgens_.size(), -1);
    for (std::size_t i = 0; i < sgens_.size(); ++i) {
      if (sgens_[i].level >= from_level) {
        remap[i] = static_cast<std::int32_t>(c.sgens_.size());
        c.sgens_.push_back(
            {sgens_[i].g, sgens_[i].ginv, sgens_[i].level - from_level});
      }
    }
    for (std::size_t lev = from_level; lev < levels_.size(); ++lev) {
      Level L = levels_[lev];
      for (Point y : L.orbit)
        if (L.par_gen[y] >= 0)
          L.par_gen[y] = remap[L.par_gen[y]];
      L.lgens.clear();
      c.levels_.push_back(std::move(L));
    }
    c.order_ = c.transversal_product();
    return c;
  }

  // chain of the conjugate group u^{-1} G u
  StabChain conjugated(const Perm &u) const
  {
    Perm uinv = u.inverse();
    StabChain c;
    c.degree_ = degree_;
    for (const auto &sg : sgens_) {
      Perm h = uinv * (sg.g * u);
      Perm hinv = h.inverse();
      c.sgens_.push_back({std::move(h), std::move(hinv), sg.level});
    }
    for (const Level &L : levels_) {
      Level M;
      M.base = u[L.base];
      M.pos.assign(degree_, -1);
      M.par_gen.assign(degree_, -1);
      M.par_pt.assign(degree_, 0);
      M.orbit.reserve(L.orbit.size());
      for (Point y : L.orbit) {
        Point z = u[y];
        M.pos[z] = static_cast<std::int32_t>(M.orbit.size());
        M.orbit.push_back(z);
        M.par_gen[z] = L.par_gen[y];
        M.par_pt[z] = u[L.par_pt[y]];
      }
      c.levels_.push_back(std::move(M));
    }
    c.order_ = order_;
    return c;
  }

private:
  struct SGen {
    Perm g, ginv;
    std::size_t level; // deepest level whose base prefix this gen fixes
  };

  struct Level {
    Point base = 0;
    std::vector<Point> orbit;
    std::vector<std::int32_t> pos;       // degree-sized; -1 if outside orbit
    std::vector<std::int32_t> par_gen;   // Schreier-tree edge labels
    std::vector<Point> par_pt;
    std::vector<std::uint32_t> lgens;    // sgen indices acting at this level
    std::vector<std::uint32_t> done;     // per orbit position: lgens processed
  };

  std::size_t degree_ = 0;
  std::vector<SGen> sgens_;
  std::vector<Level> levels_;
  BigInt order_ = 1;

  BigInt transversal_product() const
  {
    BigInt o = 1;
    for (const auto &L : levels_)
      o *= L.orbit.size();
    return o;
  }

  void append_level(Point b)
  {
    Level L;
    L.base = b;
    L.pos.assign(degree_, -1);
    L.par_gen.assign(degree_, -1);
    L.par_pt.assign(degree_, 0);
    L.pos[b] = 0;
    L.orbit.push_back(b);
    L.done.push_back(0);
    levels_.push_back(std::move(L));
  }

  // BFS-extend the orbit at `lev` so it is closed under all its gens.
  void close_orbit(std::size_t lev)
  {
    Level &L = levels_[lev];
    for (std::size_t qi = 0; qi < L.orbit.size(); ++qi) {
      Point x = L.orbit[qi];
      for (std::uint32_t gi : L.lgens) {
        Point y = sgens_[gi].g[x];
        if (L.pos[y] < 0) {
          L.pos[y] = static_cast<std::int32_t>(L.orbit.size());
          L.par_gen[y] = static_cast<std::int32_t>(gi);
          L.par_pt[y] = x;
          L.orbit.push_back(y);
          L.done.push_back(0);
        }
      }
    }
  }

  // Sift g and, if a non-trivial residue remains, attach it to the chain.
  void insert_element(const Perm &g)
  {
    auto [res, lev] = sift(g);
    if (res.is_identity())
      return;
    if (lev == levels_.size()) {
      Point b = 0;
      while (res[b] == b)
        ++b;
      append_level(b);
    }
    std::uint32_t gi = static_cast<std::uint32_t>(sgens_.size());
    Perm rinv = res.inverse();
    sgens_.push_back({std::move(res), std::move(rinv), lev});
    for (std::size_t k = 0; k <= lev; ++k) {
      levels_[k].lgens.push_back(gi);
      close_orbit(k);
    }
  }

  // Process Schreier generators until the chain is complete (or the hint is
  // reached). Deepest incomplete level first.
  void close(const std::optional<BigInt> &order_hint)
  {
    while (!levels_.empty()) {
      if (order_hint && transversal_product() == *order_hint)
        return;
      std::size_t lev = levels_.size();
      while (lev > 0) {
        --lev;
        if (process_some(lev, order_hint))
          break; // something changed (or a pair was consumed); re-scan
        if (lev == 0)
          return; // every level fully processed
      }
    }
  }

  // Handle unprocessed (orbit point, generator) pairs at `lev`. Returns true
  // if any pair was processed (so the caller re-evaluates depth order after a
  // possible introduction).
  bool process_some(std::size_t lev, const std::optional<BigInt> &order_hint)
  {
    Level &L = levels_[lev];
    for (std::size_t oi = 0; oi < L.orbit.size(); ++oi) {
      if (L.done[oi] >= L.lgens.size())
        continue;
      Point x = L.orbit[oi];
      while (L.done[oi] < L.lgens.size()) {
        std::uint32_t gi = L.lgens[L.done[oi]++];
        const SGen &s = sgens_[gi];
        Point y = s.g[x];
        // tree edges give trivial Schreier generators
        if (L.par_pt[y] == x &&
            L.par_gen[y] == static_cast<std::int32_t>(gi) && y != L.base)
          continue;
        Perm h = transversal(lev, x) * s.g;
        // divide by the transversal of y on the right
        for (Point z = y; z != L.base; z = L.par_pt[z])
          h *= sgens_[L.par_gen[z]].ginv;
        if (h.is_identity())
          continue;
        auto [res, stop] = sift(std::move(h), lev + 1);
        if (!res.is_identity()) {
          if (stop == levels_.size()) {
            Point b = 0;
            while (res[b] == b)
              ++b;
            append_level(b);
          }
          std::uint32_t ni = static_cast<std::uint32_t>(sgens_.size());
          Perm rinv = res.inverse();
          sgens_.push_back({std::move(res), std::move(rinv), stop});
          for (std::size_t k = 0; k <= stop; ++k) {
            levels_[k].lgens.push_back(ni);
            close_orbit(k);
          }
          if (order_hint && transversal_product() == *order_hint)
            return true;
        }
        return true;
      }
    }
    return false;
  }
};

} // namespace pxgt
