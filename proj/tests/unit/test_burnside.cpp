#include <doctest.h>

#include "equihom/burnside.hpp"
#include "equihom/io.hpp"
#include "../oracles.hpp"

using namespace equihom;

TEST_CASE("rank of End(G/G) is the number of subgroup classes") {
  for (const auto& name : builtin_group_names()) {
    auto g = builtin_group(name);
    auto cat = OrbitCategory::create(g);
    const int top = cat->num_objects() - 1;
    CHECK(int(cat->basis_size(top, top)) == oracle::subgroup_classes(g->table()));
  }
}

TEST_CASE("A(G/e, G/e) has one basis span per group element") {
  for (const char* name : {"z3", "s3", "q8"}) {
    auto cat = OrbitCategory::create(builtin_group(name));
    CHECK(int(cat->basis_size(0, 0)) == cat->group().order());
  }
}

TEST_CASE("transfer after restriction on Z/2 squares to twice itself") {
  auto cat = OrbitCategory::create(builtin_group("z2"));
  const int e = cat->lattice().index_of(Subgroup{0});
  int found = 0;
  for (std::size_t i = 0; i < cat->basis_size(1, 1); ++i) {
    if (cat->basis(1, 1)[i].J != e) continue;
    ++found;
    const SpanMorphism t = cat->basis_morphism(1, 1, int(i));
    CHECK(cat->compose(t, t) == t.scaled(2));
  }
  CHECK(found == 1);
}

TEST_CASE("composition is associative and unital on random composable triples (seeded)") {
  std::mt19937_64 rng(12);
  for (const char* name : {"s3", "d4", "q8", "z2xz2"}) {
    auto cat = OrbitCategory::create(builtin_group(name));
    const int n = cat->num_objects();
    auto random_morphism = [&](int h, int k) {
      SpanMorphism f = cat->zero(h, k);
      for (auto& c : f.coeffs) c = long(rng() % 5) - 2;
      return f;
    };
    for (int trial = 0; trial < 40; ++trial) {
      const int a = int(rng() % n), b = int(rng() % n), c = int(rng() % n), d = int(rng() % n);
      const SpanMorphism f = random_morphism(a, b), s = random_morphism(b, c), u = random_morphism(c, d);
      CHECK(cat->compose(cat->compose(f, s), u) == cat->compose(f, cat->compose(s, u)));
      CHECK(cat->compose(cat->identity(a), f) == f);
      CHECK(cat->compose(f, cat->identity(b)) == f);
      CHECK(cat->transpose(cat->compose(f, s)) == cat->compose(cat->transpose(s), cat->transpose(f)));
      // bilinearity
      CHECK(cat->compose(f + f, s) == cat->compose(f, s).scaled(2));
    }
  }
}

TEST_CASE("restriction then transfer on G/G is the class of G/H") {
  // G/G -> G/H -> G/G (restriction then transfer) is [G/H] in End(G/G); on
  // constant coefficients it acts as multiplication by the index.
  auto cat = OrbitCategory::create(builtin_group("s3"));
  const int top = cat->num_objects() - 1;
  for (int h = 0; h < top; ++h) {
    const SpanMorphism res = cat->make_span(cat->rep(top), cat->rep(h), cat->rep(h), 0, 0);
    const SpanMorphism tr = cat->transpose(res);
    const SpanMorphism comp = cat->compose(res, tr);
    Int total = 0;
    for (std::size_t i = 0; i < comp.coeffs.size(); ++i) total += comp.coeffs[i] * cat->left_index(top, top, int(i));
    CHECK(total == 6 / cat->lattice().size(cat->rep(h)));
  }
}
