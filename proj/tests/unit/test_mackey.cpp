#include <doctest.h>

#include "equihom/error.hpp"
#include "equihom/io.hpp"
#include "equihom/mackey.hpp"
#include "../oracles.hpp"

using namespace equihom;

namespace {

std::shared_ptr<const OrbitCategory> cat_of(const char* name) { return OrbitCategory::create(builtin_group(name)); }

}  // namespace

TEST_CASE("burnside values are Burnside rings of the subgroups") {
  for (const char* name : {"z2", "z4", "s3", "d4", "q8"}) {
    auto cat = cat_of(name);
    auto a = builtin_functor(cat, "burnside", Variance::Contravariant);
    for (int h = 0; h < cat->num_objects(); ++h) {
      auto sub = subgroup_as_group(cat->group(), cat->lattice().rep_subgroup(h));
      const int classes = oracle::subgroup_classes(sub.group->table());
      CHECK(a->value(h) == FgAbGroup::free(classes));
    }
  }
}

TEST_CASE("constant_Z on Z/2: restriction is 1, transfer is 2") {
  auto cat = cat_of("z2");
  auto t = builtin_functor(cat, "constant_Z", Variance::Contravariant);
  // spans G/e -> G/G act T(G/G) -> T(G/e): restriction; G/G -> G/e: transfer
  const SpanMorphism res = cat->make_span(cat->rep(0), cat->rep(1), cat->rep(0), 0, 0);
  const SpanMorphism tr = cat->transpose(res);
  CHECK(t->act(res) == IntMatrix{{1}});
  CHECK(t->act(tr) == IntMatrix{{2}});
  CHECK(hom_mackey(*t, *t).group == FgAbGroup::free(1));
}

TEST_CASE("Yoneda on a seeded random corpus") {
  std::mt19937_64 rng(2718);
  for (const char* name : {"z2", "z3", "s3", "z2xz2"}) {
    auto cat = cat_of(name);
    for (int trial = 0; trial < 4; ++trial) {
      auto t = random_functor(cat, Variance::Contravariant, rng);
      CHECK_FALSE(t->functoriality_defect().has_value());
      for (int a = 0; a < cat->num_objects(); ++a) {
        CHECK(hom_mackey(*free_functor(cat, Variance::Contravariant, a), *t).group == t->value(a));
        CHECK(tensor_mackey(*t, *free_functor(cat, Variance::Covariant, a)) == t->value(a));
      }
    }
  }
}

TEST_CASE("Yoneda maps classify elements") {
  auto cat = cat_of("s3");
  auto t = builtin_functor(cat, "burnside", Variance::Contravariant);
  const int a = 1;
  auto free = free_functor(cat, Variance::Contravariant, a);
  IntVector x(t->value(a).ngens());
  x[0] = 3;
  NatTransf y = yoneda_map(free, t, a, x);
  CHECK_FALSE(y.naturality_defect().has_value());
  // identity span of A_a goes to x
  IntVector id(free->value(a).ngens());
  id[cat->identity_index(a)] = 1;
  CHECK(y.components[a] * id == x);
}

TEST_CASE("transpose is an involution and hom has generators") {
  auto cat = cat_of("z4");
  auto t = builtin_functor(cat, "constant_Z", Variance::Contravariant);
  auto tt = transpose_variance(*transpose_variance(*t));
  CHECK(same_values(*t, *tt));
  CHECK(tt->variance() == Variance::Contravariant);
  const HomResult h = hom_mackey(*builtin_functor(cat, "burnside", Variance::Contravariant), *t);
  CHECK(h.group == t->value(cat->num_objects() - 1));
  CHECK(h.generators.size() == h.group.ngens());
}

TEST_CASE("non-functorial data is refused") {
  auto cat = cat_of("z2");
  auto t = builtin_functor(cat, "constant_Z", Variance::Contravariant);
  const int n = cat->num_objects();
  MackeyFunctor::Actions actions(n * n);
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      for (std::size_t i = 0; i < cat->basis_size(h, k); ++i) actions[h * n + k].push_back(t->action(h, k, int(i)));
  actions[0 * n + 1][0] = IntMatrix{{5}};
  CHECK_THROWS_AS(MackeyFunctor(Variance::Contravariant, cat, t->values(), actions), Error);
}

TEST_CASE("induction of free functors and the adjunction") {
  auto cat = cat_of("s3");
  std::mt19937_64 rng(31);
  for (int c = 0; c < cat->num_objects(); ++c) {
    auto ind = subgroup_induction(cat, cat->rep(c));
    for (int j = 0; j < ind->sub().num_objects(); ++j)
      CHECK(same_values(*induce_group(*free_functor(ind->sub_ptr(), Variance::Contravariant, j), *ind),
                        *free_functor(cat, Variance::Contravariant, ind->object(j))));
    auto cm = random_functor(ind->sub_ptr(), Variance::Contravariant, rng);
    auto t = random_functor(cat, Variance::Contravariant, rng);
    CHECK(hom_mackey(*induce_group(*cm, *ind), *t).group == hom_mackey(*cm, *restrict_group(*t, *ind)).group);
    // A_{G/G} restricts to A_{K/K}
    CHECK(same_values(*restrict_group(*builtin_functor(cat, "burnside", Variance::Contravariant), *ind),
                      *builtin_functor(ind->sub_ptr(), "burnside", Variance::Contravariant)));
  }
}

TEST_CASE("kernels and cokernels of the identity") {
  auto cat = cat_of("z3");
  std::mt19937_64 rng(4);
  auto t = random_functor(cat, Variance::Contravariant, rng);
  NatTransf id{t, t, {}};
  for (int h = 0; h < cat->num_objects(); ++h) id.components.push_back(IntMatrix::identity(t->value(h).ngens()));
  CHECK(is_isomorphism(id));
  CHECK(kernel_functor(id).source->is_zero());
  CHECK(cokernel_functor(id)->is_zero());
}

TEST_CASE("products with the unit") {
  for (const char* name : {"z2", "z3"}) {
    auto cat = cat_of(name);
    ProductContext ctx(cat, cat);
    auto a = builtin_functor(cat, "burnside", Variance::Contravariant);
    std::mt19937_64 rng(9);
    auto t = random_functor(cat, Variance::Contravariant, rng);
    CHECK(same_values(*box_internal(*a, *t, ctx), *t));
    auto s = random_functor(cat, Variance::Covariant, rng);
    CHECK(same_values(*mixed_product(*s, *a), *s));
  }
}

TEST_CASE("fixed points of free functors") {
  auto cat = cat_of("z4");
  const auto& lat = cat->lattice();
  for (int k = 0; k < lat.num_subgroups(); ++k) {
    const QuotientCategory q = quotient_category(*cat, k);
    for (int l = 0; l < cat->num_objects(); ++l) {
      const FixedQuotient fq = fixed_quotient(*free_functor(cat, Variance::Covariant, l), k, q);
      if (!lat.is_subset(k, cat->rep(l)))
        CHECK(fq.quotient->is_zero());
      else
        CHECK(same_values(*fq.quotient, *free_functor(q.cat, Variance::Covariant, quotient_object(*cat, q, l))));
    }
  }
}
