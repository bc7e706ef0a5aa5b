#pragma once

#include <optional>
#include <vector>

#include "pxgt/graph.hpp"
#include "pxgt/pair_context.hpp"
#include "pxgt/perm_group.hpp"

namespace pxgt {

// quotient of a graph by the orbits of a normal subgroup, with the kernel of
// the orbit action and the induced faithful group on orbits
struct QuotientResult {
  Graph quotient;                // Gamma/N
  std::vector<Point> orbit_of;   // vertex -> orbit index
  std::size_t orbit_count = 0;
  PermGroup kernel;              // K, kernel of the G-action on N-orbits
  PermGroup induced;             // G/K acting faithfully on orbits
  bool regular_cover = false;    // projection bijective on every Gamma(v)
  std::optional<std::size_t> cycle_length; // set when Gamma/N is a cycle, m>=3
};

inline QuotientResult quotient_by(const Graph &graph, const PermGroup &G,
                                  const PermGroup &N)
{
  if (!is_normal(G, N))
    throw std::invalid_argument("quotient_by: N is not normal in G");
  std::size_t n = graph.num_vertices();
  auto orbits = N.orbits(); // sorted by minimum element
  std::vector<Point> orbit_of(n, 0);
  for (std::size_t i = 0; i < orbits.size(); ++i)
    for (Point x : orbits[i])
      orbit_of[x] = static_cast<Point>(i);
  std::size_t m = orbits.size();

  std::vector<std::pair<Point, Point>> qedges;
  for (auto [u, v] : graph.edges()) {
    Point a = orbit_of[u], b = orbit_of[v];
    if (a != b)
      qedges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(qedges.begin(), qedges.end());
  qedges.erase(std::unique(qedges.begin(), qedges.end()), qedges.end());
  Graph q(m, std::move(qedges));

  PermGroup kernel = kernel_of_action(G, orbit_of, m);
  PermGroup induced(m, induced_on_classes(G, orbit_of, m), {},
                    G.order() / kernel.order());

  bool cover = true;
  for (Point v = 0; v < n && cover; ++v) {
    std::set<Point> seen;
    for (Point u : graph.neighbours(v))
      seen.insert(orbit_of[u]);
    if (seen.size() != graph.degree(v) ||
        seen.size() != q.degree(orbit_of[v]))
      cover = false;
  }

  std::optional<std::size_t> cyc;
  if (m >= 3 && q.valency() == std::size_t{2} && q.connected())
    cyc = m;

  return {std::move(q), std::move(orbit_of), m,     std::move(kernel),
          std::move(induced), cover, cyc};
}

// the case split of a normal quotient: at most two orbits, a cycle of length
// m >= 3, or a regular cover
enum class QuotientKind { at_most_two_orbits, cycle, regular_cover };

struct Trichotomy {
  QuotientKind kind;
  std::size_t cycle_length = 0; // when kind == cycle
  QuotientResult data;
};

inline Trichotomy easy_trichotomy(const PairContext &ctx, const PermGroup &N)
{
  QuotientResult q = quotient_by(ctx.graph, ctx.group, N);
  if (q.orbit_count <= 2)
    return {QuotientKind::at_most_two_orbits, 0, std::move(q)};
  if (q.cycle_length)
    return {QuotientKind::cycle, *q.cycle_length, std::move(q)};
  if (!q.regular_cover)
    throw std::logic_error("easy_trichotomy: quotient is neither small, a "
                           "cycle, nor a regular cover; contradicts the "
                           "quotient case split for locally-L pairs");
  return {QuotientKind::regular_cover, 0, std::move(q)};
}

// detailed verification for the cycle case: K_v = G_v^*, K_v elementary
// abelian of order at most p^m, the induced orientation and the
// orientation-preserving subgroup with G^+/K cyclic of order m
struct CycleAnalysis {
  std::size_t m = 0;
  BigInt kernel_stab_order;
  PermGroup kernel;      // K
  PermGroup kernel_stab; // K_v
  bool kv_equals_gv_star = false;
  bool kv_elementary_abelian = false;
  bool kv_order_at_most_pm = false;
  bool gplus_mod_k_cyclic = false;
  bool local_out_action_cyclic_p = false;
  Digraph orientation;
  PermGroup g_plus;
};

inline CycleAnalysis cycle_quotient_analysis(const PairContext &ctx,
                                             const PermGroup &N)
{
  Trichotomy t = easy_trichotomy(ctx, N);
  if (t.kind != QuotientKind::cycle)
    throw std::invalid_argument("cycle_quotient_analysis: quotient by N is "
                                "not a cycle of length >= 3");
  const QuotientResult &q = t.data;
  std::size_t m = t.cycle_length;
  CycleAnalysis out;
  out.m = m;

  PermGroup Kv = q.kernel.stabiliser(ctx.base_vertex);
  out.kernel = q.kernel;
  out.kernel_stab = Kv;
  out.kernel_stab_order = Kv.order();
  out.kv_equals_gv_star = Kv.equals(ctx.gv_star);
  out.kv_elementary_abelian = is_elementary_abelian(Kv, ctx.p);
  out.kv_order_at_most_pm = Kv.order() <= big_pow(BigInt(ctx.p), m);

  // cyclic order of the quotient cycle, then orient arcs along it
  std::vector<Point> cyc{0, q.quotient.neighbours(0).front()};
  while (cyc.size() < m) {
    Point prev = cyc[cyc.size() - 2], cur = cyc.back();
    for (Point nb : q.quotient.neighbours(cur))
      if (nb != prev) {
        cyc.push_back(nb);
        break;
      }
  }
  std::vector<Point> pos(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    pos[cyc[i]] = static_cast<Point>(i);
  std::vector<std::pair<Point, Point>> arcs;
  for (auto [u, v] : ctx.graph.edges()) {
    Point pu = pos[q.orbit_of[u]], pv = pos[q.orbit_of[v]];
    if ((pu + 1) % m == pv)
      arcs.emplace_back(u, v);
    else
      arcs.emplace_back(v, u);
  }
  out.orientation = Digraph(ctx.graph.num_vertices(), std::move(arcs));

  // orientation-preserving subgroup: kernel of the sign action on the two
  // orientations, computed from a combined action on two extra points
  std::size_t nn = ctx.graph.num_vertices();
  auto a0 = out.orientation.arcs().front();
  std::vector<Perm> combined;
  for (const Perm &g : ctx.group.generators()) {
    bool keeps = out.orientation.has_arc(g[a0.first], g[a0.second]);
    std::vector<Point> img(nn + 2);
    for (Point x = 0; x < nn; ++x)
      img[x] = g[x];
    img[nn] = static_cast<Point>(keeps ? nn : nn + 1);
    img[nn + 1] = static_cast<Point>(keeps ? nn + 1 : nn);
    combined.push_back(Perm(std::move(img)));
  }
  StabChain chain(nn + 2, combined,
                  {static_cast<Point>(nn), static_cast<Point>(nn + 1)},
                  ctx.group.order());
  std::vector<Perm> pgens;
  for (const Perm &g : chain.strong_generators(2)) {
    std::vector<Point> img(g.images().begin(), g.images().begin() + nn);
    pgens.push_back(Perm(std::move(img)));
  }
  BigInt gplus_order = chain.tail_order(2);
  // seed with K_v: it fixes the base vertex and preserves the orientation,
  // so the rebuilt chain closes without Schreier processing
  for (const Perm &g : Kv.generators())
    pgens.push_back(g);
  out.g_plus =
      PermGroup(nn, std::move(pgens), {ctx.base_vertex}, gplus_order);

  // G^+/K is a cyclic rotation group of order m
  std::vector<Point> orbit_of_local = q.orbit_of;
  PermGroup induced_plus(m, induced_on_classes(out.g_plus, orbit_of_local, m));
  bool cyclic = induced_plus.order() == m;
  if (cyclic) {
    bool has_full_order = false;
    induced_plus.for_each_element([&](const Perm &g) {
      if (g.element_order() == m)
        has_full_order = true;
    });
    cyclic = has_full_order;
  }
  out.gplus_mod_k_cyclic =
      cyclic && out.g_plus.order() == q.kernel.order() * m;

  // K_v acts on the out-neighbours of v as C_p
  {
    const auto &outn = out.orientation.out_neighbours(ctx.base_vertex);
    std::vector<Point> local_of(nn, 0);
    for (std::size_t i = 0; i < outn.size(); ++i)
      local_of[outn[i]] = static_cast<Point>(i);
    std::vector<Perm> lgens;
    for (const Perm &g : Kv.generators()) {
      std::vector<Point> img(outn.size());
      for (std::size_t i = 0; i < outn.size(); ++i)
        img[i] = local_of[g[outn[i]]];
      lgens.push_back(Perm(std::move(img)));
    }
    PermGroup la(outn.size(), std::move(lgens));
    out.local_out_action_cyclic_p =
        outn.size() == ctx.p && la.order() == ctx.p && la.is_transitive();
  }
  return out;
}

} // namespace pxgt
