#include <catch_amalgamated.hpp>

#include "pxgt/classify.hpp"
#include "pxgt/graph_auto.hpp"
#include "pxgt/px.hpp"

using namespace pxgt;

namespace {

// complete multipartite K_{p,p,p} = C_3[p K_1], the shape of PX(p,3,1)
Graph octahedron_like(std::uint64_t p)
{
  std::size_t n = 3 * static_cast<std::size_t>(p);
  std::vector<std::pair<Point, Point>> e;
  for (Point u = 0; u < n; ++u)
    for (Point v = u + 1; v < n; ++v)
      if (u / p != v / p)
        e.emplace_back(u, v);
  return Graph(n, std::move(e));
}

Graph complete_bipartite(std::size_t a)
{
  std::vector<std::pair<Point, Point>> e;
  for (Point u = 0; u < a; ++u)
    for (Point v = 0; v < a; ++v)
      e.emplace_back(u, static_cast<Point>(a + v));
  return Graph(2 * a, std::move(e));
}

} // namespace

TEST_CASE("PX parameter validation")
{
  CHECK_THROWS(px_graph({4, 3, 1})); // p not prime
  CHECK_THROWS(px_graph({2, 2, 1})); // r < 3
  CHECK_THROWS(px_graph({2, 4, 4})); // s > r-1
  CHECK_THROWS(px_graph({2, 4, 0})); // s < 1
}

TEST_CASE("PX(2,3,1) is the octahedron")
{
  Graph g = px_graph({2, 3, 1});
  CHECK(g.num_vertices() == 6);
  CHECK(g.valency() == std::size_t{4});
  CHECK(g.connected());
  CHECK(graph_isomorphism(g, octahedron_like(2)).has_value());
}

TEST_CASE("PX(2,4,1) is K_{4,4}")
{
  Graph g = px_graph({2, 4, 1});
  CHECK(graph_isomorphism(g, complete_bipartite(4)).has_value());
}

TEST_CASE("PX(3,5,2): 45 vertices, 6-valent, connected")
{
  Graph g = px_graph({3, 5, 2});
  CHECK(g.num_vertices() == 45);
  CHECK(g.valency() == std::size_t{6});
  CHECK(g.connected());
}

TEST_CASE("vPX basics")
{
  Digraph d = vpx_digraph({2, 3, 1});
  CHECK(d.num_vertices() == 6);
  CHECK(d.out_valency() == std::size_t{2});
  CHECK(d.is_asymmetric());

  CHECK(vpx_digraph({2, 4, 2}).num_arcs() == 32); // n p = 16 * 2

  for (PXParams q : {PXParams{2, 3, 1}, PXParams{2, 4, 2}, PXParams{3, 4, 1},
                     PXParams{5, 3, 2}}) {
    Digraph vd = vpx_digraph(q);
    CHECK(vd.underlying_graph().edges() == px_graph(q).edges());
    CHECK(vd.in_valency() == std::size_t{q.p});
  }
}

TEST_CASE("px groups: orders, automorphisms, stabilisers")
{
  {
    PXParams q{2, 3, 1};
    auto [X, H] = px_groups(q);
    CHECK(H.order() == 48);
    CHECK(H.stabiliser(0).order() == 8); // 2 p^{r-s}
    CHECK(X.order() == 48);              // (2!)^3 * 6
    Graph g = px_graph(q);
    for (const Perm &h : H.generators())
      CHECK(is_automorphism(g, h));
  }
  {
    PXParams q{2, 5, 2};
    auto [X, H] = px_groups(q);
    CHECK(px_graph(q).num_vertices() == 20);
    CHECK(H.stabiliser(0).order() == 16); // 2 * 2^3
    (void)X;
  }
  {
    PXParams q{3, 4, 2};
    auto [X, H] = px_groups(q);
    CHECK(X.order() == 10368); // 6^4 * 8
    Graph g = px_graph(q);
    for (const Perm &x : X.generators())
      CHECK(is_automorphism(g, x));
    (void)H;
  }
}

TEST_CASE("(PX(2,3,1), C2 wr D3) validates with |G_v| = 8, |G_v^*| = 4")
{
  PXParams q{2, 3, 1};
  auto [X, H] = px_groups(q);
  (void)X;
  PairContext ctx = make_pair_context(px_graph(q), H, 2, 2);
  CHECK(ctx.vertex_stabiliser.order() == 8);
  CHECK(ctx.gv_star.order() == 4);
  CHECK(is_p_group(ctx.gv_star, 2));
  // arc-transitive for chi = 2
  auto t = transitivity(ctx.graph, ctx.group);
  CHECK(t.vertex);
  CHECK(t.edge);
  CHECK(t.arc);
  CHECK(arc_orbit_count(ctx.graph, ctx.group) == 1);
}

TEST_CASE("local action of E on PX(2,4,1) has two orbits of size 2")
{
  PXParams q{2, 4, 1};
  auto [X, H] = px_groups(q);
  (void)X;
  Graph g = px_graph(q);
  PairContext ctx = make_pair_context(g, H, 2, 2);
  PermGroup E = normal_closure(H, ctx.gv_star.generators(), {0});
  LocalAction la = local_action(g, E, 0);
  auto orbs = la.action.orbits();
  REQUIRE(orbs.size() == 2);
  CHECK(orbs[0].size() == 2);
  CHECK(orbs[1].size() == 2);
}

TEST_CASE("half-arc orientation of PX under the rotation subgroup is vPX")
{
  // C_p wr C_r (orientation-preserving subgroup of H) acts half-arc-
  // transitively on PX(p,r,s) for s <= r-2
  for (PXParams q : {PXParams{2, 4, 1}, PXParams{3, 4, 2}}) {
    Graph g = px_graph(q);
    PermGroup Hplus = [&] {
      using namespace pxgt::detail;
      std::vector<Perm> gens{px_column_perm(q, 0, p_cycle(q.p)),
                             px_rotation(q)};
      for (std::uint64_t c = q.s; c < q.r; ++c)
        gens.push_back(px_column_perm(q, c, p_cycle(q.p)));
      return PermGroup(g.num_vertices(), std::move(gens), {0},
                       big_pow(BigInt(q.p), q.r) * q.r);
    }();
    PairContext ctx = make_pair_context(g, Hplus, q.p, 1);
    Digraph d = half_arc_orientation(ctx);
    CHECK(d.arcs() == vpx_digraph(q).arcs());
    CHECK(d.out_valency() == std::size_t{q.p});
    // the two arc orbits are reverses of each other
    CHECK(arc_orbit_count(g, Hplus) == 2);
  }
}

TEST_CASE("half_arc_orientation rejects chi = 2 pairs")
{
  PXParams q{2, 3, 1};
  auto [X, H] = px_groups(q);
  (void)X;
  PairContext ctx = make_pair_context(px_graph(q), H, 2, 2);
  CHECK_THROWS_AS(half_arc_orientation(ctx), std::invalid_argument);
}

TEST_CASE("Aut orders of the Praeger-Xu exceptions")
{
  CHECK(automorphism_group(px_graph({2, 4, 1})).order() == 1152); // Sym(4) wr C2
  CHECK(automorphism_group(px_graph({2, 4, 2})).order() == 384);  // 3 |X|
  CHECK(automorphism_group(px_graph({2, 4, 3})).order() == 256);  // 2 |X|
  CHECK(automorphism_group(px_graph({2, 5, 2})).order() == 320);  // generic
  CHECK(automorphism_group(px_graph({3, 3, 1})).order() == 1296); // generic
}

TEST_CASE("recognition: (PX(2,4,2), H) yields the parameters")
{
  PXParams q{2, 4, 2};
  auto [X, H] = px_groups(q);
  (void)X;
  PairContext ctx = make_pair_context(px_graph(q), H, 2, 2);
  auto rec = recognize_px(ctx);
  REQUIRE(rec.has_value());
  CHECK(*rec == q);
}

TEST_CASE("unique vertex- and edge- but not arc-transitive index-2 subgroup "
          "of Aut(PX(2,4,3))")
{
  Graph g = px_graph({2, 4, 3});
  PermGroup A = automorphism_group(g);
  REQUIRE(A.order() == 256);
  auto subs = pxgt::detail::index_two_subgroups(A);
  std::size_t witnesses = 0;
  for (const PermGroup &H : subs) {
    auto t = transitivity(g, H);
    if (t.vertex && t.edge && !t.arc)
      ++witnesses;
  }
  CHECK(witnesses == 1);
}
