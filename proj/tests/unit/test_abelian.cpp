#include <doctest.h>

#include <numeric>

#include "equihom/abelian.hpp"
#include "equihom/error.hpp"
#include "../oracles.hpp"

using namespace equihom;

namespace {

IntMatrix to_int(const oracle::Mat& m) {
  IntMatrix out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = Int(static_cast<long>(m[i][j]));
  return out;
}

// Number of x in the group with k x = 0, by brute force over a finite group.
long killed_by(const std::vector<long>& orders, long k) {
  long count = 1;
  for (long o : orders) {
    long c = 0;
    for (long x = 0; x < o; ++x) c += (k * x) % o == 0;
    count *= c;
  }
  return count;
}

}  // namespace

TEST_CASE("canonical invariants") {
  FgAbGroup g(IntVector{6, 4, 0});
  CHECK(g.rank() == 1);
  REQUIRE(g.torsion().size() == 2);
  CHECK(g.torsion()[0] == 2);
  CHECK(g.torsion()[1] == 12);
  CHECK(g.to_string() == "Z + Z/2 + Z/12");
  CHECK(FgAbGroup(IntVector{2, 3}) == FgAbGroup::cyclic(6));
  CHECK_FALSE(FgAbGroup(IntVector{2, 2}) == FgAbGroup::cyclic(4));
  CHECK(FgAbGroup(IntVector{1, 1}).is_zero());
}

TEST_CASE("invariant factors distinguish groups the way element counts do (seeded)") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<long> a(1 + rng() % 3), b(1 + rng() % 3);
    for (auto& x : a) x = 1 + long(rng() % 12);
    for (auto& x : b) x = 1 + long(rng() % 12);
    IntVector ia(a.begin(), a.end()), ib(b.begin(), b.end());
    bool same_counts = true;
    for (long k = 1; k <= 144; ++k) same_counts = same_counts && killed_by(a, k) == killed_by(b, k);
    CHECK((FgAbGroup(ia) == FgAbGroup(ib)) == same_counts);
    long card = 1;
    for (long x : a) card *= x;
    CHECK(FgAbGroup(ia).cardinality() == card);
  }
}

TEST_CASE("presentations agree with the oracle (seeded)") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const int gens = 1 + int(rng() % 4), rels = int(rng() % 4);
    const auto r = oracle::random_matrix(rng, rels, gens, 6);
    const FgAbGroup g = present(gens, rels ? to_int(r) : IntMatrix(0, gens));
    std::size_t nonzero = 0;
    IntVector torsion;
    for (long long x : oracle::invariant_factors(r))
      if (x) {
        ++nonzero;
        if (x > 1) torsion.push_back(Int(static_cast<long>(x)));
      }
    CHECK(g.rank() == gens - nonzero);
    CHECK(g.torsion() == torsion);
  }
}

TEST_CASE("Hom and tensor of cyclic groups") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const long a = long(rng() % 13), b = long(rng() % 13);  // 0 means Z
    const FgAbGroup ga = a == 1 ? FgAbGroup() : FgAbGroup(IntVector{a}), gb = b == 1 ? FgAbGroup() : FgAbGroup(IntVector{b});
    const FgAbGroup h = hom_ab(ga, gb), t = tensor_ab(ga, gb);
    const long g = std::gcd(a, b);  // gcd(0, b) = b
    // Hom(Z/a, Z/b) = Z/gcd, Hom(Z, B) = B, Hom(Z/a, Z) = 0
    const FgAbGroup want_h = a == 0 ? gb : (b == 0 ? FgAbGroup() : FgAbGroup::cyclic(g));
    CHECK(h == want_h);
    const FgAbGroup want_t = (a == 0 && b == 0) ? FgAbGroup::free(1) : FgAbGroup::cyclic(g);
    CHECK(t == want_t);
  }
}

TEST_CASE("subquotient coordinates invert lifts") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + int(rng() % 3);
    const IntMatrix l = to_int(oracle::random_matrix(rng, n, 1 + int(rng() % 3), 4));
    // N = 2L + (some multiples), inside L
    IntMatrix nmat = l.scaled(2);
    Subquotient sq(l, nmat);
    for (std::size_t i = 0; i < sq.group().ngens(); ++i) {
      IntVector c = sq.coords(sq.lift(i));
      for (std::size_t j = 0; j < c.size(); ++j) CHECK(c[j] == (i == j ? 1 : 0));
    }
    // L / 2L is elementary abelian of rank rank(L)
    const auto rk = smith_normal_form(l, kSmithNone).rank;
    CHECK(sq.group() == FgAbGroup(IntVector(rk, 2)));
  }
}

TEST_CASE("homology_pair rejects non-complexes") {
  const FgAbGroup z = FgAbGroup::free(1);
  AbMap d1(z, z, IntMatrix{{1}}), d2(z, z, IntMatrix{{1}});
  CHECK_THROWS_AS(homology_pair(d1, d2), Error);
  AbMap zero = AbMap::zero(z, z);
  CHECK(homology_pair(AbMap(z, z, IntMatrix{{2}}), zero).group() == FgAbGroup::cyclic(2));
}
