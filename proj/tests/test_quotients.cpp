#include <catch_amalgamated.hpp>

#include "pxgt/px.hpp"
#include "pxgt/quotients.hpp"

using namespace pxgt;

namespace {

// orbit count of K_v acting on the neighbourhood of v
std::size_t kv_orbits_on_neighbourhood(const PairContext &ctx,
                                       const QuotientResult &q)
{
  PermGroup Kv = q.kernel.stabiliser(ctx.base_vertex);
  std::set<Point> reps;
  detail::UnionFind uf(ctx.graph.num_vertices());
  for (Point u : ctx.neighbours)
    for (const Perm &g : Kv.generators())
      uf.unite(u, g[u]);
  for (Point u : ctx.neighbours)
    reps.insert(uf.find(u));
  return reps.size();
}

void check_valency_bound(const PairContext &ctx, const QuotientResult &q)
{
  auto val = q.quotient.valency();
  REQUIRE(val.has_value());
  CHECK(*val <= kv_orbits_on_neighbourhood(ctx, q));
}

void check_cover_transfer(const PairContext &ctx, const QuotientResult &q,
                          const PermGroup &N)
{
  REQUIRE(q.regular_cover);
  // Lemma on quotients, regular-cover half: equal valency, N semiregular,
  // N = K, stabiliser orders transfer, local actions permutation-isomorphic
  CHECK(q.quotient.valency() == ctx.graph.valency());
  CHECK(is_semiregular(N));
  CHECK(q.kernel.equals(N));
  PermGroup sub_stab = q.induced.stabiliser(q.orbit_of[ctx.base_vertex]);
  CHECK(sub_stab.order() == ctx.vertex_stabiliser.order());
  LocalAction la =
      local_action(q.quotient, q.induced, q.orbit_of[ctx.base_vertex]);
  CHECK(permutation_isomorphic(ctx.local, la.action).has_value());
}

} // namespace

TEST_CASE("quotient by E: PX(2,4,1) collapses to a 4-cycle")
{
  PXParams par{2, 4, 1};
  auto [X, H] = px_groups(par);
  (void)X;
  Graph g = px_graph(par);
  PairContext ctx = make_pair_context(g, H, 2, 2);
  PermGroup E = normal_closure(H, ctx.gv_star.generators(), {0});
  CHECK(is_elementary_abelian(E, 2));
  QuotientResult q = quotient_by(g, H, E);
  CHECK(q.orbit_count == 4);
  CHECK(q.cycle_length == std::size_t{4});
  CHECK(q.kernel.equals(E));
  CHECK(q.quotient.connected());
  CHECK(q.induced.order() == H.order() / E.order());
  check_valency_bound(ctx, q);
}

TEST_CASE("quotient by the trivial group is a regular cover of itself")
{
  PXParams par{2, 3, 1};
  auto [X, H] = px_groups(par);
  (void)X;
  Graph g = px_graph(par);
  PairContext ctx = make_pair_context(g, H, 2, 2);
  PermGroup triv = PermGroup::trivial(g.num_vertices());
  QuotientResult q = quotient_by(g, H, triv);
  CHECK(q.orbit_count == g.num_vertices());
  CHECK(q.regular_cover);
  CHECK(q.kernel.is_trivial());
  CHECK(q.quotient.edges() == g.edges());
  check_valency_bound(ctx, q);
  check_cover_transfer(ctx, q, triv);
}

TEST_CASE("quotient by a transitive subgroup has one vertex")
{
  PXParams par{2, 3, 1};
  auto [X, H] = px_groups(par);
  (void)X;
  Graph g = px_graph(par);
  QuotientResult q = quotient_by(g, H, H);
  CHECK(q.orbit_count == 1);
  CHECK(q.quotient.num_edges() == 0);
}

TEST_CASE("quotient rejects non-normal subgroups")
{
  PXParams par{2, 3, 1};
  auto [X, H] = px_groups(par);
  (void)X;
  Graph g = px_graph(par);
  PermGroup Hv = H.stabiliser(0); // not normal
  CHECK_THROWS_AS(quotient_by(g, H, Hv), std::invalid_argument);
}

TEST_CASE("easy trichotomy labels")
{
  PXParams par{2, 4, 2};
  auto [X, H] = px_groups(par);
  (void)X;
  Graph g = px_graph(par);
  PairContext ctx = make_pair_context(g, H, 2, 2);

  PermGroup E = normal_closure(H, ctx.gv_star.generators(), {0});
  Trichotomy t = easy_trichotomy(ctx, E);
  CHECK(t.kind == QuotientKind::cycle);
  CHECK(t.cycle_length == 4);

  Trichotomy t1 = easy_trichotomy(ctx, PermGroup::trivial(g.num_vertices()));
  CHECK(t1.kind == QuotientKind::regular_cover);
}

TEST_CASE("cycle quotient analysis on PX(2,4,2)")
{
  PXParams par{2, 4, 2};
  auto [X, H] = px_groups(par);
  (void)X;
  Graph g = px_graph(par);
  PairContext ctx = make_pair_context(g, H, 2, 2);
  PermGroup E = normal_closure(H, ctx.gv_star.generators(), {0});
  CycleAnalysis ca = cycle_quotient_analysis(ctx, E);
  CHECK(ca.m == 4);
  CHECK(ca.kernel_stab_order == 4); // |K_v| = |G_v^*| = 4 <= 2^4
  CHECK(ca.kv_equals_gv_star);
  CHECK(ca.kv_elementary_abelian);
  CHECK(ca.kv_order_at_most_pm);
  CHECK(ca.gplus_mod_k_cyclic);
  CHECK(ca.local_out_action_cyclic_p);
  CHECK(ca.orientation.is_asymmetric());
  CHECK(ca.orientation.out_valency() == std::size_t{2});
}

TEST_CASE("cycle quotient analysis on PX(3,5,2): K_v elementary abelian "
          "3-group")
{
  PXParams par{3, 5, 2};
  auto [X, H] = px_groups(par);
  (void)X;
  Graph g = px_graph(par);
  PairContext ctx = make_pair_context(g, H, 3, 2);
  PermGroup E = normal_closure(H, ctx.gv_star.generators(), {0});
  CycleAnalysis ca = cycle_quotient_analysis(ctx, E);
  CHECK(is_elementary_abelian(ca.kernel_stab, 3));
  CHECK(ca.kv_equals_gv_star);
  CHECK(ca.kv_order_at_most_pm);
}

TEST_CASE("cycle analysis rejects a non-cycle quotient")
{
  PXParams par{2, 4, 2};
  auto [X, H] = px_groups(par);
  (void)X;
  Graph g = px_graph(par);
  PairContext ctx = make_pair_context(g, H, 2, 2);
  CHECK_THROWS_AS(
      cycle_quotient_analysis(ctx, PermGroup::trivial(g.num_vertices())),
      std::invalid_argument);
}
