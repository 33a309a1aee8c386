#include <doctest.h>

#include "equihom/error.hpp"
#include "equihom/group.hpp"
#include "equihom/io.hpp"
#include "../oracles.hpp"

using namespace equihom;

TEST_CASE("corpus groups: subgroups and classes against brute force") {
  // (name, order, subgroups, classes)
  const std::vector<std::tuple<std::string, int, int, int>> want{
      {"trivial", 1, 1, 1}, {"z2", 2, 2, 2},  {"z3", 3, 2, 2},  {"z4", 4, 3, 3},  {"z2xz2", 4, 5, 5},
      {"s3", 6, 6, 4},      {"z6", 6, 4, 4},  {"d4", 8, 10, 8}, {"q8", 8, 6, 6},  {"z12", 12, 6, 6}};
  for (const auto& [name, order, subs, classes] : want) {
    auto g = builtin_group(name);
    REQUIRE(g);
    SubgroupLattice lat(g);
    CHECK(g->order() == order);
    CHECK(lat.num_subgroups() == subs);
    CHECK(lat.num_classes() == classes);
    CHECK(int(oracle::all_subgroups(g->table()).size()) == subs);
    CHECK(oracle::subgroup_classes(g->table()) == classes);
  }
}

TEST_CASE("conjugators land on the class representative") {
  for (const auto& name : builtin_group_names()) {
    auto g = builtin_group(name);
    SubgroupLattice lat(g);
    for (int s = 0; s < lat.num_subgroups(); ++s) {
      const auto conj = oracle::conjugate(g->table(), lat.conjugator(s), lat.subgroup(s));
      CHECK(conj == lat.rep_subgroup(lat.class_of(s)));
    }
  }
}

TEST_CASE("identity is element 0 and permutation groups close breadth-first") {
  auto s3 = FiniteGroup::from_permutations({{1, 2, 0}, {1, 0, 2}}, 3);
  CHECK(s3.order() == 6);
  CHECK(s3.mul(0, 3) == 3);
  CHECK(!s3.is_abelian());
  // element 1 is the first generator
  CHECK(s3.element_order(1) == 3);
  CHECK(s3.element_order(2) == 2);
}

TEST_CASE("invalid tables are rejected") {
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 1}}), Error);
  CHECK_THROWS_AS(FiniteGroup({{1, 0}, {0, 1}}), Error);
}

TEST_CASE("double cosets partition the group (seeded subgroup pairs)") {
  std::mt19937_64 rng(8);
  for (const char* name : {"s3", "d4", "q8", "z12"}) {
    auto g = builtin_group(name);
    SubgroupLattice lat(g);
    for (int trial = 0; trial < 20; ++trial) {
      const int h = int(rng() % lat.num_subgroups()), k = int(rng() % lat.num_subgroups());
      std::set<Elem> seen;
      for (Elem x : double_cosets(lat, h, k))
        for (Elem a : lat.subgroup(h))
          for (Elem b : lat.subgroup(k)) seen.insert(g->mul(g->mul(a, x), b));
      CHECK(int(seen.size()) == g->order());
      // the representatives lie in distinct double cosets: count by brute force
      std::set<std::set<Elem>> classes;
      for (Elem x = 0; x < g->order(); ++x) {
        std::set<Elem> c;
        for (Elem a : lat.subgroup(h))
          for (Elem b : lat.subgroup(k)) c.insert(g->mul(g->mul(a, x), b));
        classes.insert(c);
      }
      CHECK(classes.size() == double_cosets(lat, h, k).size());
    }
  }
}

TEST_CASE("orbit decomposition of coset products") {
  auto g = builtin_group("s3");
  SubgroupLattice lat(g);
  for (int a = 0; a < lat.num_subgroups(); ++a)
    for (int b = 0; b < lat.num_subgroups(); ++b) {
      const GSet x = GSet::product(GSet::cosets(lat, a), GSet::cosets(lat, b));
      CHECK(x.is_action(*g));
      const auto orbits = decompose_orbits(lat, x);
      // orbits of G on G/A x G/B correspond to double cosets A \ G / B
      CHECK(orbits.size() == double_cosets(lat, a, b).size());
      int total = 0;
      for (const auto& o : orbits) {
        total += int(o.points.size());
        CHECK(int(o.points.size()) * lat.size(o.stabilizer) == g->order());
        for (int p : o.points) CHECK(x.action[o.transversal[p]][o.base] == p);
      }
      CHECK(total == x.size);
    }
}

TEST_CASE("quotients and Weyl groups") {
  auto d4 = builtin_group("d4");
  SubgroupLattice lat(d4);
  for (int s = 0; s < lat.num_subgroups(); ++s) {
    if (!lat.is_normal(s)) continue;
    auto q = quotient_group(*d4, lat.subgroup(s));
    CHECK(q.group->order() * lat.size(s) == 8);
  }
  for (int c = 0; c < lat.num_classes(); ++c) {
    const int h = lat.rep(c);
    CHECK(lat.weyl(c).group->order() * lat.size(h) == lat.size(lat.normalizer(h)));
  }
}
