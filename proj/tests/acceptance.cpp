// One line per acceptance criterion: PASS/FAIL, wall time and limit (none for
// determinism).
// Exit status 0 only when every criterion passes within its limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "equihom/chains.hpp"
#include "equihom/io.hpp"
#include "equihom/suites.hpp"
#include "oracles.hpp"

using namespace equihom;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

SuiteOptions options() {
  SuiteOptions opt;
  opt.config = CorpusConfig::load(std::string(EQUIHOM_DATA_DIR) + "/corpus.json");
  opt.threads = default_threads();
  return opt;
}

Outcome from_report(const SuiteReport& r) {
  Outcome o;
  int passed = 0;
  for (const auto& c : r.cases) {
    if (c.ok) {
      ++passed;
    } else if (o.ok) {
      o.ok = false;
      o.detail = c.label + ": " + c.detail;
    }
  }
  if (r.cases.empty()) return {false, "suite produced no cases"};
  if (o.ok) o.detail = std::to_string(passed) + "/" + std::to_string(r.cases.size()) + " cases";
  return o;
}

Outcome suite(const std::string& name) { return from_report(run_suite(name, options())); }

Outcome both(Outcome a, const Outcome& b) {
  if (!a.ok) return a;
  if (!b.ok) return b;
  a.detail += "; " + b.detail;
  return a;
}

// Brute-force subgroup classes, and t∘t = |G| t for t = [G/G <- G/e -> G/G]:
// the pullback G/e x G/e is |G| free orbits.
Outcome burnside_oracle() {
  for (const auto& ng : corpus_groups()) {
    auto cat = OrbitCategory::create(ng.group);
    const int top = cat->num_objects() - 1;
    const int want = oracle::subgroup_classes(ng.group->table());
    if (int(cat->basis_size(top, top)) != want)
      return {false, ng.name + ": rank End(G/G) " + std::to_string(cat->basis_size(top, top)) + ", oracle " +
                         std::to_string(want)};
    const int order = ng.group->order();
    for (std::size_t i = 0; i < cat->basis_size(top, top); ++i) {
      if (cat->left_index(top, top, int(i)) != order) continue;
      const SpanMorphism t = cat->basis_morphism(top, top, int(i));
      if (cat->compose(t, t).coeffs != t.scaled(order).coeffs) return {false, ng.name + ": t∘t != |G| t"};
    }
  }
  return {true, "oracle class counts and t∘t agree"};
}

std::map<int, oracle::Homology> incidence_homology(const CellComplex& x) {
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

Outcome classical_oracle() {
  auto e = OrbitCategory::create(builtin_group("trivial"));
  const std::vector<std::string> exprs{"circle", "sphere2", "torus", "product(circle,circle)",
                                       "suspension(torus)", "join(circle,circle)", "wedge(sphere2,circle)"};
  for (const auto& expr : exprs) {
    const CellComplex x = build(expr, e);
    const auto want = incidence_homology(x);
    const GradedAbGroups got = homology(x, *builtin_functor(e, "constant_Z", Variance::Covariant));
    for (int n = x.min_degree() - 1; n <= x.max_degree() + 1; ++n) {
      oracle::Homology w;
      if (auto it = want.find(n); it != want.end()) w = it->second;
      FgAbGroup g;
      if (auto it = got.find(n); it != got.end()) g = it->second;
      std::vector<long long> tor;
      for (const auto& t : g.torsion()) tor.push_back(t.get_si());
      if (int(g.rank()) != int(w.rank) || tor != w.torsion)
        return {false, expr + " degree " + std::to_string(n) + " differs from the incidence oracle"};
    }
  }
  return {true, std::to_string(exprs.size()) + " complexes match the incidence oracle"};
}

Outcome yoneda_scope() {
  const CorpusConfig c = options().config;
  if (c.random_functors < 20) return {false, "fewer than 20 random functors per group"};
  return {true, std::to_string(c.random_functors) + " random functors per group"};
}

std::string run_cli(const std::string& args, int& status) {
  std::string cmd = std::string("\"") + EQUIHOM_CLI + "\" " + args;
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  status = pclose(p);
  return out;
}

Outcome determinism() {
  int s1 = 0, s2 = 0;
  const std::string a = run_cli("verify --all --format json", s1);
  const std::string b = run_cli("verify --all --format json", s2);
  if (s1 != 0 || s2 != 0) return {false, "verify --all exited nonzero"};
  if (a.empty()) return {false, "verify --all printed nothing"};
  if (a != b) return {false, "outputs differ"};
  return {true, std::to_string(a.size()) + " identical bytes"};
}

struct Criterion {
  int id;
  std::string name;
  double limit;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "burnside category laws", 60, [] { return both(suite("functoriality"), burnside_oracle()); }},
      {2, "dimension axiom", 10, [] { return suite("dimension-axiom"); }},
      {3, "yoneda and adjunction", 120, [] { return both(yoneda_scope(), suite("yoneda")); }},
      {4, "wirthmuller isomorphism", 120, [] { return suite("wirthmuller"); }},
      {5, "fixed sets", 30, [] { return suite("fixed-sets"); }},
      {6, "products", 120, [] { return suite("products"); }},
      {7, "homological algebra", 180, [] { return suite("homalg"); }},
      {8, "duality", 120, [] { return suite("duality"); }},
      {9, "classical homology", 10, [] { return both(suite("classical"), classical_oracle()); }},
      {10, "determinism", 0, [] { return determinism(); }},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && c.limit > 0 && secs > c.limit) o = {false, "over time limit"};
    all = all && o.ok;
    char limit[32] = "  none";
    if (c.limit > 0) std::snprintf(limit, sizeof limit, "%5.0fs", c.limit);
    char line[512];
    std::snprintf(line, sizeof line, "criterion %2d %-26s %s  %7.2fs / %s  ", c.id, c.name.c_str(),
                  o.ok ? "PASS" : "FAIL", secs, limit);
    std::cout << line << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
