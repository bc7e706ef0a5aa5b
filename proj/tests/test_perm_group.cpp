#include <catch_amalgamated.hpp>

#include "pxgt/constructions.hpp"
#include "pxgt/group_structure.hpp"
#include "pxgt/perm_group.hpp"
#include "test_util.hpp"

using namespace pxgt;

TEST_CASE("chain orders match closure enumeration")
{
  auto check = [](const PermGroup &G, std::uint64_t expected) {
    CHECK(G.order() == expected);
    CHECK(testutil::closure_order(G) == expected);
  };
  check(symmetric_group(5), 120);
  check(wreath_product(symmetric_group(2), dihedral_group(3)), 48); // C2 wr D3
  check(psl2(7), 168); // q(q^2-1)/gcd(2,q-1) on 8 projective points
  CHECK(psl2(7).degree() == 8);
}

TEST_CASE("order is deterministic across runs")
{
  PermGroup a = psl2(7);
  PermGroup b = psl2(7);
  CHECK(a.order() == b.order());
  CHECK(a.chain().base() == b.chain().base());
}

TEST_CASE("trivial group accepted")
{
  PermGroup t = PermGroup::trivial(4);
  CHECK(t.order() == 1);
  CHECK(t.contains(Perm(4)));
  CHECK_FALSE(t.contains(Perm::from_cycles(4, {{0, 1}})));
}

TEST_CASE("membership via the chain")
{
  PermGroup G = symmetric_group(4);
  CHECK(G.contains(Perm::from_cycles(4, {{0, 1, 2, 3}})));
  PermGroup A = alternating_group(4);
  CHECK(A.order() == 12);
  CHECK_FALSE(A.contains(Perm::from_cycles(4, {{0, 1}})));
  for (const Perm &g : A.generators())
    CHECK(A.contains(g));
}

TEST_CASE("orbits")
{
  PermGroup t = PermGroup::trivial(5);
  CHECK(t.orbit(3) == std::vector<Point>{3});
  CHECK(symmetric_group(5).orbit(0).size() == 5);
  PermGroup L21 = L_p1(2);
  auto orbs = L21.orbits();
  REQUIRE(orbs.size() == 2);
  CHECK(orbs[0] == std::vector<Point>{0, 1});
  CHECK(orbs[1] == std::vector<Point>{2, 3});
  CHECK_THROWS_AS(t.orbit(17), std::out_of_range);
}

TEST_CASE("orbit-stabiliser on assorted groups")
{
  for (const PermGroup &G :
       {symmetric_group(4), dihedral_group(6), psl2(5),
        wreath_product(symmetric_group(2), dihedral_group(3)), L_p2(3)}) {
    for (Point x = 0; x < G.degree(); ++x) {
      PermGroup S = G.stabiliser(x);
      for (const Perm &g : S.generators())
        CHECK(g[x] == x);
      CHECK(BigInt(G.orbit(x).size()) * S.order() == G.order());
    }
  }
}

TEST_CASE("stabiliser examples")
{
  CHECK(symmetric_group(4).stabiliser(0).order() == 6);
  PermGroup C6 = cyclic_group(6);
  CHECK(C6.stabiliser(2).is_trivial()); // regular => trivial stabilisers
}

TEST_CASE("pointwise stabiliser")
{
  PermGroup G = symmetric_group(5);
  PermGroup S = G.pointwise_stabiliser({0, 1});
  CHECK(S.order() == 6);
  for (const Perm &g : S.generators()) {
    CHECK(g[0] == 0);
    CHECK(g[1] == 1);
  }
}

TEST_CASE("normal closure: 3-cycle in Sym(4) generates Alt(4)")
{
  PermGroup S4 = symmetric_group(4);
  PermGroup N = normal_closure(S4, {Perm::from_cycles(4, {{0, 1, 2}})});
  CHECK(N.order() == 12);
  // contained in every normal subgroup (from the brute-force oracle) that
  // contains the seed
  for (const PermGroup &M : testutil::all_normal_subgroups_bruteforce(S4))
    if (M.contains(Perm::from_cycles(4, {{0, 1, 2}})))
      CHECK(N.is_subgroup_of(M));
  CHECK(is_normal(S4, N));
}

TEST_CASE("normal closure of the identity is trivial")
{
  PermGroup S4 = symmetric_group(4);
  CHECK(normal_closure(S4, {Perm(4)}).is_trivial());
}

TEST_CASE("normal closure rejects outside elements")
{
  PermGroup A4 = alternating_group(4);
  CHECK_THROWS(normal_closure(A4, {Perm::from_cycles(4, {{0, 1}})}));
}

TEST_CASE("V4 is normal in Sym(4)")
{
  PermGroup S4 = symmetric_group(4);
  PermGroup V4(4, {Perm::from_cycles(4, {{0, 1}, {2, 3}}),
                   Perm::from_cycles(4, {{0, 2}, {1, 3}})});
  CHECK(V4.order() == 4);
  CHECK(is_normal(S4, V4));
  PermGroup S3 = S4.stabiliser(3);
  CHECK_FALSE(is_normal(S4, S3));
}

TEST_CASE("centre, nilpotency class, exponent")
{
  PermGroup ab = elementary_abelian_group(3, 2);
  CHECK(nilpotency_class(ab) == 1u);
  CHECK(centre(ab).order() == ab.order());

  PermGroup D4 = dihedral_group(4);
  CHECK(D4.order() == 8);
  CHECK(nilpotency_class(D4) == 2u);
  CHECK(centre(D4).order() == 2);
  CHECK(exponent(D4) == 4);

  PermGroup S3 = symmetric_group(3);
  CHECK_FALSE(nilpotency_class(S3).has_value());
  CHECK(centre(S3).is_trivial());
}

TEST_CASE("centre: enumeration path agrees with the transitive walk")
{
  for (const PermGroup &G :
       {dihedral_group(4), dihedral_group(6), cyclic_group(12),
        wreath_product(symmetric_group(2), dihedral_group(3)),
        L_p2(3)}) {
    PermGroup z_enum = centre(G);
    PermGroup z_walk = centre(G, /*budget=*/1); // force the non-enumeration path
    CHECK(z_enum.equals(z_walk));
  }
}

TEST_CASE("centre budget error on intransitive over-budget input")
{
  PermGroup L = L_p1(5); // intransitive, order 25
  CHECK_THROWS_AS(centre(L, 1), budget_error);
}

TEST_CASE("element enumeration budget is a typed error")
{
  CHECK_THROWS_AS(symmetric_group(8).elements(1000), budget_error);
}

TEST_CASE("minimal normal subgroups against the brute-force oracle")
{
  auto agree = [](const PermGroup &G) {
    auto mins = minimal_normal_subgroups(G);
    auto all = testutil::all_normal_subgroups_bruteforce(G);
    std::vector<PermGroup> expected;
    for (const PermGroup &N : all) {
      if (N.is_trivial())
        continue;
      bool minimal = true;
      for (const PermGroup &M : all)
        if (!M.is_trivial() && M.order() < N.order() && M.is_subgroup_of(N))
          minimal = false;
      if (minimal)
        expected.push_back(N);
    }
    REQUIRE(mins.size() == expected.size());
    for (const PermGroup &N : mins) {
      bool found = false;
      for (const PermGroup &M : expected)
        if (M.equals(N))
          found = true;
      CHECK(found);
    }
  };
  agree(symmetric_group(4)); // exactly { V4 }
  agree(symmetric_group(5)); // exactly { Alt(5) }
  agree(dihedral_group(6));
  agree(wreath_product(symmetric_group(2), dihedral_group(3)));

  auto s5 = minimal_normal_subgroups(symmetric_group(5));
  REQUIRE(s5.size() == 1);
  CHECK(s5[0].order() == 60);

  auto v = minimal_normal_subgroups(elementary_abelian_group(2, 2));
  CHECK(v.size() == 3); // C2 x C2: three subgroups of order 2
  for (const auto &N : v)
    CHECK(N.order() == 2);
}

TEST_CASE("sylow subgroups")
{
  PermGroup P = sylow_subgroup(symmetric_group(6), 2);
  CHECK(P.order() == 16);
  CHECK(is_p_group(P, 2));
  CHECK(sylow_subgroup(symmetric_group(5), 5).order() == 5);
  CHECK(sylow_subgroup(cyclic_group(6), 7).is_trivial());
}

TEST_CASE("p-rank of Sym(4) against subgroup brute force")
{
  CHECK(p_rank(symmetric_group(4), 2) == 2);
  // brute force: largest elementary abelian 2-subgroup via commuting
  // involution sets
  auto elems = testutil::closure_elements(4, symmetric_group(4).generators());
  std::vector<Perm> invs;
  for (const Perm &g : elems)
    if (!g.is_identity() && g.element_order() == 2)
      invs.push_back(g);
  std::size_t best = 1;
  for (std::size_t i = 0; i < invs.size(); ++i)
    for (std::size_t j = i + 1; j < invs.size(); ++j) {
      if (invs[i] * invs[j] != invs[j] * invs[i])
        continue;
      best = std::max(best,
                      testutil::closure_elements(4, {invs[i], invs[j]}).size());
      for (std::size_t k = j + 1; k < invs.size(); ++k) {
        if (invs[i] * invs[k] != invs[k] * invs[i] ||
            invs[j] * invs[k] != invs[k] * invs[j])
          continue;
        auto sub = testutil::closure_elements(4, {invs[i], invs[j], invs[k]});
        bool elab = true;
        for (const Perm &x : sub)
          if (!(x * x).is_identity())
            elab = false;
        if (elab)
          best = std::max(best, sub.size());
      }
    }
  CHECK(best == 4); // 2^2
}

TEST_CASE("block systems and semiregularity")
{
  // L_{2,2} = D4 in the wreath labelling: unique minimal system = the two
  // L_{2,1}-orbits {0,1} and {2,3}
  PermGroup L22 = L_p2(2);
  auto systems = minimal_block_systems(L22);
  REQUIRE(systems.size() == 1);
  CHECK(systems[0].cells ==
        std::vector<std::vector<Point>>{{0, 1}, {2, 3}});

  CHECK(is_semiregular(cyclic_group(6)));
  CHECK_FALSE(is_semiregular(symmetric_group(3)));
  CHECK(is_semiregular(PermGroup::trivial(3)));
}

TEST_CASE("elementary abelian predicate")
{
  CHECK(is_elementary_abelian(L_p1(3), 3));
  CHECK_FALSE(is_elementary_abelian(cyclic_group(4), 2));
  CHECK_FALSE(is_elementary_abelian(symmetric_group(3), 3));
  CHECK(is_elementary_abelian(PermGroup::trivial(2), 5));
}

TEST_CASE("permutation isomorphism")
{
  PermGroup A = L_p1(2); // orbits {0,1},{2,3}
  auto self = permutation_isomorphic(A, A);
  REQUIRE(self.has_value());
  CHECK(self->is_identity());

  // same group on relabelled points: orbits {0,2},{1,3}
  PermGroup B(4, {Perm::from_cycles(4, {{0, 2}}), Perm::from_cycles(4, {{1, 3}})});
  auto w = permutation_isomorphic(A, B);
  REQUIRE(w.has_value());
  for (const Perm &a : A.generators())
    CHECK(B.contains(a.conjugated_by(*w)));
  // symmetry: the witness inverts
  auto back = permutation_isomorphic(B, A);
  REQUIRE(back.has_value());

  // C4 vs C2xC2: not isomorphic
  CHECK_FALSE(permutation_isomorphic(cyclic_group(4), B).has_value());
}

TEST_CASE("permutation isomorphism agrees with exhaustive bijection search")
{
  auto exhaustive = [](const PermGroup &A, const PermGroup &B) {
    std::vector<Point> img(A.degree());
    std::iota(img.begin(), img.end(), Point{0});
    do {
      Perm beta(img);
      bool ok = true;
      for (const Perm &a : A.generators())
        if (!B.contains(a.conjugated_by(beta))) {
          ok = false;
          break;
        }
      if (ok && A.order() == B.order())
        return true;
    } while (std::next_permutation(img.begin(), img.end()));
    return false;
  };
  std::vector<PermGroup> zoo;
  zoo.push_back(L_p2(2));
  zoo.push_back(cyclic_group(4));
  zoo.push_back(PermGroup(4, {Perm::from_cycles(4, {{0, 2}}),
                              Perm::from_cycles(4, {{1, 3}})}));
  zoo.push_back(dihedral_group(4));
  zoo.push_back(PermGroup(4, {Perm::from_cycles(4, {{0, 1, 2, 3}}),
                              Perm::from_cycles(4, {{1, 3}})}));
  for (const auto &A : zoo)
    for (const auto &B : zoo) {
      CHECK(permutation_isomorphic(A, B).has_value() == exhaustive(A, B));
    }
}

TEST_CASE("derived series and solubility")
{
  CHECK(is_soluble(symmetric_group(4)));
  CHECK_FALSE(is_soluble(symmetric_group(5)));
  CHECK(derived_subgroup(symmetric_group(4)).order() == 12);
  CHECK(is_soluble(dihedral_group(6)));
}

TEST_CASE("kernel of action on an invariant partition")
{
  // C2 wr D3 on 6 points, cells {0,1},{2,3},{4,5}: kernel is the base C2^3
  PermGroup W = wreath_product(symmetric_group(2), dihedral_group(3));
  std::vector<Point> cls{0, 0, 1, 1, 2, 2};
  PermGroup K = kernel_of_action(W, cls, 3);
  CHECK(K.order() == 8);
  CHECK(is_elementary_abelian(K, 2));
}
