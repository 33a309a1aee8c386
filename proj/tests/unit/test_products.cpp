#include <doctest.h>

#include "equihom/error.hpp"
#include "equihom/io.hpp"
#include "equihom/products.hpp"

using namespace equihom;

namespace {

std::shared_ptr<const OrbitCategory> cat_of(const char* name) { return OrbitCategory::create(builtin_group(name)); }

}  // namespace

TEST_CASE("cellular chains of products") {
  auto e = cat_of("trivial");
  auto z2 = cat_of("z2");
  ProductContext ee(e, e), zz(z2, z2);
  CHECK(box_chains_check(library_complex("circle", e), library_complex("sphere2", e), ee).ok());
  CHECK(box_chains_check(library_complex("S_sigma", z2), library_complex("S_sigma", z2), zz).ok());
}

TEST_CASE("unit laws for box and mixed products") {
  auto z2 = cat_of("z2");
  ProductContext ctx(z2, z2);
  for (const char* c : {"burnside", "constant_Z"}) {
    CHECK(unit_box_check(builtin_functor(z2, c, Variance::Contravariant), ctx).ok());
    CHECK(unit_mixed_check(builtin_functor(z2, c, Variance::Covariant)).ok());
    CHECK(mixed_box_check(*builtin_functor(z2, c, Variance::Covariant), *builtin_functor(z2, "burnside", Variance::Contravariant), ctx)
              .ok());
  }
}

TEST_CASE("cup square of the circle generator generates H^2 of the torus") {
  auto e = cat_of("trivial");
  auto x = std::make_shared<const CellComplex>(library_complex("circle", e));
  auto t = builtin_functor(e, "constant_Z", Variance::Contravariant);
  auto s = builtin_functor(e, "constant_Z", Variance::Covariant);
  const auto h1 = cohomology_generators(x, t, 1);
  REQUIRE(h1.size() == 1);
  ProductContext ctx(e, e);
  const CupProduct c = external_cup(h1[0], h1[0], ctx);
  const auto h2 = cohomology(*c.complex, *c.cocycle.coefficients);
  CHECK(graded_at(h2, 2) == FgAbGroup::free(1));
  const IntVector cls = class_of(c.cocycle);
  REQUIRE(cls.size() == 1);
  CHECK(abs(cls[0]) == 1);
  const auto z = homology_generators(x, s, 1);
  REQUIRE(z.size() == 1);
  const PairingValue p = evaluation_pairing(h1[0], z[0]);
  CHECK(p.group == FgAbGroup::free(1));
  REQUIRE(p.value.size() == 1);
  CHECK(abs(p.value[0]) == 1);
}

TEST_CASE("cocycle and degree validation") {
  auto e = cat_of("trivial");
  auto x = std::make_shared<const CellComplex>(library_complex("sphere2", e));
  auto t = builtin_functor(e, "constant_Z", Variance::Contravariant);
  const auto h0 = cohomology_generators(x, t, 0);
  REQUIRE(h0.size() == 1);
  // the constant cochain on 0-cells is a cocycle; a single-point one is not when there are several 0-cells
  if (x->num_cells(0) > 1) {
    std::vector<IntVector> bad(x->num_cells(0), IntVector{0});
    bad[0] = IntVector{1};
    CHECK_THROWS_AS(make_cocycle(x, t, 0, bad), Error);
  }
  auto s = builtin_functor(e, "constant_Z", Variance::Covariant);
  const auto z2 = homology_generators(x, s, 2);
  REQUIRE(z2.size() == 1);
  CHECK_THROWS_AS(evaluation_pairing(h0[0], z2[0]), Error);
}

TEST_CASE("duality reports") {
  for (const char* name : {"S_sigma", "circle", "torus"}) {
    const DualityReport r = duality_report(name);
    CHECK(r.ok());
  }
  CHECK_THROWS_AS(duality_report("klein_bottle"), Error);
}

TEST_CASE("diagonal approximations of regular structures") {
  auto e = cat_of("trivial");
  for (const char* expr : {"circle", "sphere2", "product(circle,circle)", "suspension(circle)"}) {
    const DiagonalApprox d = diagonal_approximation(std::make_shared<const CellComplex>(build(expr, e)));
    CHECK(check_diagonal(d).ok());
  }
  auto z2 = cat_of("z2");
  for (const char* name : {"S_sigma", "S_2sigma", "torus_z2"}) {
    const DiagonalApprox d = diagonal_approximation(std::make_shared<const CellComplex>(library_complex(name, z2)));
    CHECK(check_diagonal(d).ok());
  }
  const DiagonalApprox l = diagonal_approximation(std::make_shared<const CellComplex>(library_complex("S_lambda", cat_of("z3"))));
  CHECK(check_diagonal(l).ok());
  // one vertex, all incidences zero: closures do not carry a diagonal
  CHECK_THROWS_AS(diagonal_approximation(std::make_shared<const CellComplex>(library_complex("torus", e))), Error);
}

TEST_CASE("tampered diagonals are rejected") {
  auto e = cat_of("trivial");
  DiagonalApprox d = diagonal_approximation(std::make_shared<const CellComplex>(library_complex("circle", e)));
  REQUIRE_FALSE(d.entries.empty());
  auto it = d.entries.rbegin();
  it->second = it->second.scaled(2);
  CHECK_FALSE(check_diagonal(d).ok());
}

namespace {

struct Torus {
  std::shared_ptr<const OrbitCategory> e = cat_of("trivial");
  std::shared_ptr<const CellComplex> x = std::make_shared<const CellComplex>(build("product(circle,circle)", e));
  DiagonalApprox d = diagonal_approximation(x);
  MackeyPtr t = builtin_functor(e, "constant_Z", Variance::Contravariant);
  MackeyPtr s = builtin_functor(e, "constant_Z", Variance::Covariant);
};

Int single(const IntVector& v) {
  REQUIRE(v.size() == 1);
  return v[0];
}

}  // namespace

TEST_CASE("cup ring of the torus from a diagonal") {
  // classical oracle: H^1 = <a, b>, a^2 = b^2 = 0, ab = -ba generates H^2
  Torus T;
  const auto h1 = cohomology_generators(T.x, T.t, 1);
  REQUIRE(h1.size() == 2);
  const Int ab = single(class_of(classical_cup(h1[0], h1[1], T.d)));
  const Int ba = single(class_of(classical_cup(h1[1], h1[0], T.d)));
  CHECK(abs(ab) == 1);
  CHECK(ba == -ab);
  CHECK(single(class_of(classical_cup(h1[0], h1[0], T.d))) == 0);
  CHECK(single(class_of(classical_cup(h1[1], h1[1], T.d))) == 0);
  const auto h0 = cohomology_generators(T.x, T.t, 0);
  REQUIRE(h0.size() == 1);
  const Int unit = single(class_of(h0[0]));
  for (const auto& a : h1) {
    IntVector want = class_of(a);
    for (auto& w : want) w *= unit;
    CHECK(class_of(classical_cup(h0[0], a, T.d)) == want);
  }
  auto z2 = cat_of("z2");
  const auto sx = std::make_shared<const CellComplex>(library_complex("S_sigma", z2));
  const auto b = builtin_functor(z2, "burnside", Variance::Contravariant);
  const auto g = cohomology_generators(sx, b, 0);
  REQUIRE_FALSE(g.empty());
  CHECK_THROWS_AS(classical_cup(g[0], g[0], diagonal_approximation(sx)), Error);
}

TEST_CASE("cap and cup pair compatibly on the torus") {
  Torus T;
  const auto z = homology_generators(T.x, T.s, 2);
  REQUIRE(z.size() == 1);
  std::vector<CochainClass> gens;
  for (int q = 0; q <= 2; ++q)
    for (const auto& c : cohomology_generators(T.x, T.t, q)) gens.push_back(c);
  for (const auto& x : gens)
    for (const auto& y : gens) {
      if (x.degree + y.degree > 2) continue;
      const CochainClass xy = classical_cup(x, y, T.d);
      const ChainClass lhs = cap_product(x, cap_product(y, z[0], T.d), T.d);
      const ChainClass rhs = cap_product(xy, z[0], T.d);
      CHECK(class_of(lhs) == class_of(rhs));
      if (x.degree + y.degree == 2) {
        const ChainClass yz = cap_product(y, z[0], T.d);
        CHECK(evaluation_pairing(xy, z[0]).value == evaluation_pairing(x, yz).value);
      }
    }
  // Poincaré duality: capping with [T] is an isomorphism H^q -> H_{2-q}
  for (int q = 0; q <= 2; ++q) {
    const auto hq = cohomology_generators(T.x, T.t, q);
    std::vector<IntVector> cols;
    MackeyPtr coeff;
    for (const auto& c : hq) {
      const ChainClass k = cap_product(c, z[0], T.d);
      coeff = k.coefficients;
      cols.push_back(class_of(k));
    }
    REQUIRE(coeff);
    const FgAbGroup target = graded_at(homology(*T.x, *coeff), 2 - q);
    const AbMap m(graded_at(cohomology(*T.x, *T.t), q), target, IntMatrix::from_columns(cols, target.ngens()));
    CHECK(is_isomorphism(m));
  }
}

TEST_CASE("capping with the unit class is an isomorphism") {
  struct Case {
    const char* group;
    const char* complex;
  };
  for (const Case& c : {Case{"z2", "S_sigma"}, Case{"z2", "torus_z2"}, Case{"z3", "S_lambda"}, Case{"z2", "S_2sigma"}}) {
    auto cat = cat_of(c.group);
    const auto x = std::make_shared<const CellComplex>(library_complex(c.complex, cat));
    const DiagonalApprox d = diagonal_approximation(x);
    const int top = cat->num_objects() - 1;
    const auto a = builtin_functor(cat, "burnside", Variance::Contravariant);
    // 1 in H^0(X; A_{G/G}): the projection G/J -> G/G at every 0-cell
    std::vector<IntVector> one;
    for (int j : x->cells(0)) {
      IntVector v(cat->basis_size(j, top));
      REQUIRE(v.size() == a->value(j).ngens());
      for (std::size_t i = 0; i < v.size(); ++i)
        if (cat->left_index(j, top, int(i)) == 1) v[i] = 1;
      one.push_back(v);
    }
    const CochainClass unit = make_cocycle(x, a, 0, one);
    for (const char* s : {"burnside", "constant_Z"}) {
      const auto sf = builtin_functor(cat, s, Variance::Covariant);
      for (int n : x->degrees()) {
        const auto zs = homology_generators(x, sf, n);
        const FgAbGroup src = graded_at(homology(*x, *sf), n);
        if (zs.empty()) continue;
        std::vector<IntVector> cols;
        MackeyPtr coeff;
        for (const auto& z : zs) {
          const ChainClass k = cap_product(unit, z, d);
          coeff = k.coefficients;
          cols.push_back(class_of(k));
        }
        const FgAbGroup target = graded_at(homology(*x, *coeff), n);
        INFO(c.complex << " " << s << " degree " << n);
        CHECK(is_isomorphism(AbMap(src, target, IntMatrix::from_columns(cols, target.ngens()))));
      }
    }
  }
}
