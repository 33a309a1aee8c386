#include <doctest.h>

#include "equihom/intmatrix.hpp"
#include "../oracles.hpp"

using namespace equihom;

namespace {

IntMatrix to_int(const oracle::Mat& m) {
  IntMatrix out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = Int(static_cast<long>(m[i][j]));
  return out;
}

long long leibniz(const oracle::Mat& m) {
  std::vector<int> p(m.size());
  std::iota(p.begin(), p.end(), 0);
  long long total = 0;
  do {
    long long term = 1;
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      term *= m[i][p[i]];
      for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
    }
    total += inv % 2 ? -term : term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

}  // namespace

TEST_CASE("smith form of a fixed matrix") {
  IntMatrix m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  auto s = smith_normal_form(m);
  REQUIRE(s.diagonal.size() == 3);
  CHECK(s.diagonal[0] == 2);
  CHECK(s.diagonal[1] == 6);
  CHECK(s.diagonal[2] == 12);
  CHECK(s.U * m * s.V == s.D);
}

TEST_CASE("smith form agrees with the naive oracle (seeded)") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = 1 + int(rng() % 5), c = 1 + int(rng() % 5);
    const auto m = oracle::random_matrix(rng, r, c, trial % 2 ? 3 : 9);
    const IntMatrix a = to_int(m);
    const auto s = smith_normal_form(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(s.U * s.U_inv == IntMatrix::identity(r));
    CHECK(s.V * s.V_inv == IntMatrix::identity(c));
    std::vector<long long> want;
    for (long long x : oracle::invariant_factors(m))
      if (x) want.push_back(x);
    REQUIRE(s.diagonal.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(s.diagonal[i] == Int(static_cast<long>(want[i])));
  }
}

TEST_CASE("determinant against Leibniz (seeded)") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + int(rng() % 4);
    const auto m = oracle::random_matrix(rng, n, n, 5);
    CHECK(determinant(to_int(m)) == Int(static_cast<long>(leibniz(m))));
  }
}

TEST_CASE("integer kernel is a basis of the null lattice (seeded)") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 1 + int(rng() % 4), c = 1 + int(rng() % 6);
    const IntMatrix a = to_int(oracle::random_matrix(rng, r, c, 4));
    const IntMatrix k = integer_kernel(a);
    CHECK((a * k).is_zero());
    CHECK(k.cols() == std::size_t(c) - smith_normal_form(a, kSmithNone).rank);
    // saturated: the kernel basis has trivial elementary divisors
    if (k.cols() > 0)
      for (const Int& d : smith_normal_form(k, kSmithNone).diagonal) CHECK(d == 1);
  }
}

TEST_CASE("column echelon solves exactly inside the span") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 2 + int(rng() % 4), c = 1 + int(rng() % 4);
    const IntMatrix a = to_int(oracle::random_matrix(rng, r, c, 5));
    const ColumnEchelon e = column_echelon(a);
    IntVector coeffs(c);
    for (auto& x : coeffs) x = long(rng() % 7) - 3;
    const IntVector y = a * coeffs;
    auto sol = e.solve(y);
    REQUIRE(sol.has_value());
    CHECK(e.basis * *sol == y);
  }
  const ColumnEchelon e = column_echelon(IntMatrix{{2}, {0}});
  CHECK_FALSE(e.solve(IntVector{1, 0}).has_value());
  CHECK_FALSE(e.solve(IntVector{0, 1}).has_value());
}

TEST_CASE("integer solutions exist exactly when the invariant factors agree (seeded)") {
  // M x = b has an integer solution iff [M | b] has the invariant factors of M
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = 1 + int(rng() % 4), c = 1 + int(rng() % 4);
    auto m = oracle::random_matrix(rng, r, c, 4);
    std::vector<long long> b(r);
    if (trial % 2) {
      const auto x0 = oracle::random_matrix(rng, c, 1, 3);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) b[i] += m[i][j] * x0[j][0];
    } else {
      for (auto& v : b) v = long(rng() % 9) - 4;
    }
    auto aug = m;
    for (int i = 0; i < r; ++i) aug[i].push_back(b[i]);
    const bool solvable = oracle::invariant_factors(m) == oracle::invariant_factors(aug);
    IntVector bi;
    for (long long v : b) bi.push_back(Int(static_cast<long>(v)));
    const auto x = solve_integer(to_int(m), bi);
    CHECK(x.has_value() == solvable);
    if (x) CHECK(to_int(m) * *x == bi);
  }
}
