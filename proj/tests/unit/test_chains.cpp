#include <doctest.h>

#include "equihom/chains.hpp"
#include "equihom/error.hpp"
#include "equihom/io.hpp"
#include "../oracles.hpp"

using namespace equihom;

namespace {

std::shared_ptr<const OrbitCategory> cat_of(const char* name) { return OrbitCategory::create(builtin_group(name)); }

// Integer incidence matrices of a complex over the trivial group.
std::map<int, oracle::Homology> oracle_homology(const CellComplex& x) {
  std::map<int, int> dims;
  std::map<int, oracle::Mat> d;
  for (int n : x.degrees()) dims[n] = int(x.num_cells(n));
  for (int n : x.degrees()) {
    oracle::Mat m(x.num_cells(n - 1), std::vector<long long>(x.num_cells(n), 0));
    for (std::size_t i = 0; i < x.num_cells(n); ++i)
      for (std::size_t j = 0; j < x.num_cells(n - 1); ++j) {
        const SpanMorphism f = x.boundary(n, int(i), int(j));
        if (!f.coeffs.empty()) m[j][i] = f.coeffs[0].get_si();
      }
    d[n] = m;
  }
  return oracle::chain_homology(dims, d);
}

void check_against_oracle(const CellComplex& x) {
  auto e = x.category_ptr();
  const auto h = homology(x, *builtin_functor(e, "constant_Z", Variance::Covariant));
  for (const auto& [n, want] : oracle_homology(x)) {
    const FgAbGroup got = graded_at(h, n);
    CHECK(got.rank() == want.rank);
    REQUIRE(got.torsion().size() == want.torsion.size());
    for (std::size_t i = 0; i < want.torsion.size(); ++i) CHECK(got.torsion()[i] == Int(long(want.torsion[i])));
  }
}

}  // namespace

TEST_CASE("classical complexes match the cellular oracle") {
  auto e = cat_of("trivial");
  for (const char* name : {"circle", "sphere2", "torus"}) check_against_oracle(library_complex(name, e));
  check_against_oracle(build("product(trivial_sphere(1),trivial_sphere(1))", e));
  check_against_oracle(build("suspension(suspension(trivial_sphere(0)))", e));
  check_against_oracle(build("wedge(trivial_sphere(1),trivial_sphere(2))", e));
}

TEST_CASE("underlying complexes of the equivariant library") {
  auto z2 = cat_of("z2");
  for (const char* name : {"S_sigma", "S_2sigma", "torus_z2"}) {
    const CellComplex u = underlying_complex(library_complex(name, z2));
    check_against_oracle(u);
  }
}

TEST_CASE("dimension axiom on orbits") {
  for (const char* name : {"z2", "s3", "q8"}) {
    auto cat = cat_of(name);
    for (const char* coeff : {"burnside", "constant_Z"})
      for (Variance v : {Variance::Covariant, Variance::Contravariant}) {
        auto t = builtin_functor(cat, coeff, v);
        for (int k = 0; k < cat->num_objects(); ++k) {
          const auto h = compute_with(orbit_complex(cat, k), *t);
          for (int n = -3; n <= 3; ++n) CHECK(graded_at(h, n) == (n == 0 ? t->value(k) : FgAbGroup()));
        }
      }
  }
}

TEST_CASE("d o d != 0 is rejected") {
  auto e = cat_of("trivial");
  CellComplex x(e);
  x.add_cell(0, 0);
  x.add_cell(1, 0);
  x.add_cell(2, 0);
  x.add_boundary(1, 0, 0, 0, Int(1));
  x.add_boundary(2, 0, 0, 0, Int(1));
  CHECK_FALSE(validate_complex(x).ok());
  CHECK_THROWS_AS(require_valid(x), Error);
}

TEST_CASE("builder errors") {
  auto s3 = cat_of("s3");
  try {
    build("sphere_char(1)", s3);
    FAIL("expected UnsupportedGroup");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedGroup);
  }
  try {
    build("join(orbit(1),", s3);
    FAIL("expected Parse");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
  }
}

TEST_CASE("Wirthmuller isomorphism on a few complexes") {
  auto s3 = cat_of("s3");
  for (int c = 0; c < s3->num_objects(); ++c) {
    auto ind = subgroup_induction(s3, s3->rep(c));
    for (const char* expr : {"orbit(0)", "trivial_sphere(1)", "suspension(orbit(0))"}) {
      const CellComplex x = build(expr, ind->sub_ptr());
      for (Variance v : {Variance::Covariant, Variance::Contravariant})
        CHECK(wirthmuller_check(x, *ind, *builtin_functor(s3, "burnside", v)).ok());
    }
  }
}

TEST_CASE("fixed sets and Euler characteristics of S^sigma") {
  auto z2 = cat_of("z2");
  const CellComplex s = library_complex("S_sigma", z2);
  const auto chi = fixed_euler_characteristics(s);
  REQUIRE(chi.size() == 2);
  CHECK(chi[0] == 0);  // the circle
  CHECK(chi[1] == 2);  // two fixed points
  const int top = z2->lattice().num_subgroups() - 1;
  const QuotientCategory q = quotient_category(*z2, top);
  const CellComplex f = fixed_point_complex(s, top, q);
  CHECK(f.num_cells(0) == 2);
  CHECK(f.total_cells() == 2);
}

TEST_CASE("duals of classical manifolds have the same homology") {
  auto e = cat_of("trivial");
  for (const char* name : {"circle", "sphere2", "torus"}) {
    const CellComplex x = library_complex(name, e);
    const int d = x.max_degree();
    const CellComplex dual = dualize(x, DimensionFunction{{d}});
    CHECK(dual.dual);
    check_against_oracle(dual);
  }
}

TEST_CASE("products of circles are tori") {
  auto e = cat_of("trivial");
  const CellComplex c = library_complex("circle", e);
  ProductContext ctx(e, e);
  const CellComplex t = external_product(c, c, ctx);
  const auto h = homology(t, *builtin_functor(t.category_ptr(), "constant_Z", Variance::Covariant));
  CHECK(graded_at(h, 0) == FgAbGroup::free(1));
  CHECK(graded_at(h, 1) == FgAbGroup::free(2));
  CHECK(graded_at(h, 2) == FgAbGroup::free(1));
}
