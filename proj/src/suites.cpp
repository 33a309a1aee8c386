#include "equihom/suites.hpp"

#include <atomic>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <thread>

#include "equihom/error.hpp"
#include "equihom/homalg.hpp"
#include "equihom/products.hpp"

namespace equihom {

// Config.

std::uint64_t CorpusConfig::seed(const std::string& suite) const {
  auto it = seeds.find(suite);
  return it == seeds.end() ? 1 : it->second;
}

CorpusConfig CorpusConfig::defaults() {
  CorpusConfig c;
  for (const auto& s : suite_names()) c.seeds[s] = 1;
  return c;
}

CorpusConfig CorpusConfig::load(const std::string& path) {
  const Json j = read_json_file(path);
  CorpusConfig c = defaults();
  auto get_int = [&](const char* key, int& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer() || j[key].get<long>() < 0)
      throw Error(ErrorKind::Parse, path + ": '" + key + "' must be a non-negative integer");
    out = j[key].get<int>();
  };
  if (j.contains("seeds")) {
    if (!j["seeds"].is_object()) throw Error(ErrorKind::Parse, path + ": 'seeds' must be an object");
    for (auto it = j["seeds"].begin(); it != j["seeds"].end(); ++it) {
      if (!it.value().is_number_unsigned()) throw Error(ErrorKind::Parse, path + ": seed '" + it.key() + "' must be a non-negative integer");
      c.seeds[it.key()] = it.value().get<std::uint64_t>();
    }
  }
  get_int("random_functors", c.random_functors);
  get_int("adjunction_functors", c.adjunction_functors);
  get_int("corpus_random", c.corpus_random);
  get_int("homalg_length", c.homalg_length);
  return c;
}

// Reports.

bool SuiteReport::ok() const {
  for (const auto& c : cases)
    if (!c.ok) return false;
  return true;
}

Json SuiteReport::to_json() const {
  Json j;
  j["suite"] = suite;
  j["ok"] = ok();
  std::size_t passed = 0;
  for (const auto& c : cases) passed += c.ok;
  j["passed"] = passed;
  j["total"] = cases.size();
  Json cs = Json::array();
  for (const auto& c : cases) {
    Json e;
    e["case"] = c.label;
    e["ok"] = c.ok;
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (!c.data.is_null()) e["data"] = c.data;
    cs.push_back(e);
  }
  j["cases"] = cs;
  return j;
}

std::string SuiteReport::to_table() const {
  std::size_t w = 4;
  for (const auto& c : cases) w = std::max(w, c.label.size());
  std::ostringstream os;
  for (const auto& c : cases) {
    os << suite << "  " << std::left << std::setw(int(w)) << c.label << "  " << (c.ok ? "PASS" : "FAIL");
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
  }
  std::size_t passed = 0;
  for (const auto& c : cases) passed += c.ok;
  os << suite << "  " << passed << "/" << cases.size() << " passed\n";
  return os.str();
}

// Threads.

int default_threads() {
  if (const char* e = std::getenv("EQUIHOM_THREADS")) {
    int n = std::atoi(e);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i; (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Corpus.

std::vector<NamedGroup> corpus_groups() {
  std::vector<NamedGroup> out;
  for (const auto& name : builtin_group_names()) out.push_back({name, builtin_group(name)});
  return out;
}

namespace {

std::mt19937_64 rng_for(std::uint64_t seed, const std::string& salt) {
  std::vector<std::uint32_t> parts{std::uint32_t(seed), std::uint32_t(seed >> 32)};
  for (char c : salt) parts.push_back(static_cast<unsigned char>(c));
  std::seed_seq seq(parts.begin(), parts.end());
  return std::mt19937_64(seq);
}

MackeyPtr with_name(MackeyPtr t, const std::string& name) {
  auto named = std::make_shared<MackeyFunctor>(*t);
  named->name = name;
  return named;
}

}  // namespace

std::vector<MackeyPtr> coefficient_corpus(std::shared_ptr<const OrbitCategory> cat, Variance v, std::uint64_t seed,
                                          int randoms) {
  std::vector<MackeyPtr> out;
  for (const char* name : {"burnside", "constant_Z", "zero"}) out.push_back(builtin_functor(cat, name, v));
  auto rng = rng_for(seed, cat->group().label());
  for (int i = 0; i < randoms; ++i)
    out.push_back(with_name(random_functor(cat, v, rng), "random" + std::to_string(i)));
  return out;
}

MackeyPtr named_coefficient(std::shared_ptr<const OrbitCategory> cat, const std::string& name, Variance v) {
  auto suffix_number = [&](const std::string& prefix) -> long {
    try {
      std::size_t pos = 0;
      long x = std::stol(name.substr(prefix.size()), &pos);
      if (pos + prefix.size() == name.size() && x >= 0) return x;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Usage, "bad coefficient '" + name + "'");
  };
  if (name.rfind("free:", 0) == 0) {
    long a = suffix_number("free:");
    if (a >= cat->num_objects()) throw Error(ErrorKind::Usage, "no subgroup class " + std::to_string(a));
    return with_name(free_functor(cat, v, int(a)), name);
  }
  if (name.rfind("random:", 0) == 0) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(suffix_number("random:")));
    return with_name(random_functor(cat, v, rng), name);
  }
  return builtin_functor(cat, name, v);
}

// Suites.

namespace {

using Cases = std::vector<CaseResult>;

CaseResult make_case(std::string label, const std::vector<std::string>& violations) {
  CaseResult c;
  c.label = std::move(label);
  c.ok = violations.empty();
  if (!c.ok) {
    c.detail = violations.front();
    if (violations.size() > 1) c.detail += " (+" + std::to_string(violations.size() - 1) + " more)";
  }
  return c;
}

std::string fg(const FgAbGroup& g) { return g.to_string(); }

std::string mismatch(const GradedComparison& c) {
  for (const auto& [n, p] : c.degrees)
    if (!(p.first == p.second)) return "degree " + std::to_string(n) + ": " + fg(p.first) + " vs " + fg(p.second);
  return {};
}

std::shared_ptr<const OrbitCategory> category_of(const NamedGroup& g) { return OrbitCategory::create(g.group); }

std::vector<NamedGroup> scope(const SuiteOptions& opt, int max_order) {
  if (!opt.groups.empty()) return opt.groups;
  std::vector<NamedGroup> out;
  for (auto& g : corpus_groups())
    if (g.group->order() <= max_order) out.push_back(g);
  return out;
}

std::uint64_t seed_of(const SuiteOptions& opt, const std::string& suite) {
  return opt.seed ? *opt.seed : opt.config.seed(suite);
}

// Runs one task per item; the case lists are concatenated in item order.
Cases run_tasks(int n, int threads, const std::function<Cases(int)>& task) {
  std::vector<Cases> parts(n);
  parallel_for(n, threads, [&](int i) { parts[i] = task(i); });
  Cases out;
  for (auto& p : parts)
    for (auto& c : p) out.push_back(std::move(c));
  return out;
}

// functoriality: composition laws of the Burnside category and functoriality
// of the coefficient corpus.
Cases functoriality_cases(const NamedGroup& g, std::uint64_t seed, int randoms) {
  auto cat = category_of(g);
  const int n = cat->num_objects();
  Cases out;
  std::vector<std::string> bad;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (std::size_t i = 0; i < cat->basis_size(a, b); ++i) {
        SpanMorphism f = cat->basis_morphism(a, b, int(i));
        if (!(cat->compose(cat->identity(a), f) == f) || !(cat->compose(f, cat->identity(b)) == f))
          bad.push_back("unit law fails for " + cat->describe(a, b, int(i)));
        for (int c = 0; c < n; ++c)
          for (std::size_t j = 0; j < cat->basis_size(b, c); ++j) {
            SpanMorphism s = cat->basis_morphism(b, c, int(j));
            SpanMorphism fs = cat->compose(f, s);
            for (int d = 0; d < n; ++d)
              for (std::size_t k = 0; k < cat->basis_size(c, d); ++k) {
                SpanMorphism u = cat->basis_morphism(c, d, int(k));
                if (!(cat->compose(fs, u) == cat->compose(f, cat->compose(s, u))))
                  bad.push_back("(fs)u != f(su) for " + cat->describe(a, b, int(i)) + ", " + cat->describe(b, c, int(j)) +
                                ", " + cat->describe(c, d, int(k)));
              }
          }
      }
  out.push_back(make_case(g.name + " associativity and units", bad));
  bad.clear();
  const int top = n - 1;
  if (int(cat->basis_size(top, top)) != cat->lattice().num_classes())
    bad.push_back("rank End(G/G) = " + std::to_string(cat->basis_size(top, top)) + ", classes = " +
                  std::to_string(cat->lattice().num_classes()));
  out.push_back(make_case(g.name + " rank End(G/G)", bad));
  if (g.group->order() == 2) {
    bad.clear();
    const int e_lit = cat->lattice().index_of(Subgroup{0});
    const auto& basis = cat->basis(top, top);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].J != e_lit) continue;
      SpanMorphism t = cat->basis_morphism(top, top, int(i));
      if (!(cat->compose(t, t) == t.scaled(2))) bad.push_back("t o t != 2t");
    }
    out.push_back(make_case(g.name + " t o t = 2t", bad));
  }
  bad.clear();
  for (Variance v : {Variance::Contravariant, Variance::Covariant})
    for (const auto& t : coefficient_corpus(cat, v, seed, randoms))
      if (auto d = t->functoriality_defect()) bad.push_back(t->name + " (" + to_string(v) + "): " + *d);
  out.push_back(make_case(g.name + " corpus functoriality", bad));
  return out;
}

// dimension-axiom: orbit(G/K) has the coefficient value in degree 0 and
// nothing else in degrees -3..3.
Cases dimension_cases(const NamedGroup& g, std::uint64_t seed, int randoms, const std::vector<std::string>& coeffs) {
  auto cat = category_of(g);
  Cases out;
  for (Variance v : {Variance::Covariant, Variance::Contravariant}) {
    std::vector<MackeyPtr> corpus;
    if (coeffs.empty()) {
      corpus = coefficient_corpus(cat, v, seed, randoms);
    } else {
      for (const auto& c : coeffs) corpus.push_back(named_coefficient(cat, c, v));
    }
    for (const auto& t : corpus) {
      std::vector<std::string> bad;
      for (int k = 0; k < cat->num_objects(); ++k) {
        const GradedAbGroups h = compute_with(orbit_complex(cat, k), *t);
        for (int n = -3; n <= 3; ++n) {
          const FgAbGroup got = graded_at(h, n);
          const FgAbGroup want = n == 0 ? t->value(k) : FgAbGroup::zero();
          if (!(got == want))
            bad.push_back("class " + std::to_string(k) + " degree " + std::to_string(n) + ": " + fg(got) + " vs " + fg(want));
        }
      }
      out.push_back(make_case(g.name + " " + t->name + " " + to_string(v), bad));
    }
  }
  return out;
}

// yoneda: Hom(A_a, T) = T(a), T (x) A^a = T(a), the induction adjunction and
// induced free functors.
Cases yoneda_cases(const NamedGroup& g, std::uint64_t seed, const CorpusConfig& cfg) {
  auto cat = category_of(g);
  const int n = cat->num_objects();
  Cases out;
  auto rng = rng_for(seed, g.name);
  std::vector<MackeyPtr> frees, cofrees;
  for (int a = 0; a < n; ++a) {
    frees.push_back(free_functor(cat, Variance::Contravariant, a));
    cofrees.push_back(free_functor(cat, Variance::Covariant, a));
  }
  std::vector<MackeyPtr> corpus;
  for (int r = 0; r < cfg.random_functors; ++r) corpus.push_back(random_functor(cat, Variance::Contravariant, rng));
  {
    std::vector<std::string> bad;
    for (std::size_t r = 0; r < corpus.size(); ++r)
      for (int a = 0; a < n; ++a) {
        const FgAbGroup h = hom_mackey(*frees[a], *corpus[r]).group;
        if (!(h == corpus[r]->value(a)))
          bad.push_back("random" + std::to_string(r) + " object " + std::to_string(a) + ": Hom = " + fg(h) +
                        ", T(a) = " + fg(corpus[r]->value(a)));
        const FgAbGroup te = tensor_mackey(*corpus[r], *cofrees[a]);
        if (!(te == corpus[r]->value(a)))
          bad.push_back("random" + std::to_string(r) + " object " + std::to_string(a) + ": tensor = " + fg(te));
      }
    out.push_back(make_case(g.name + " Hom(A_a,T) and A^a (x) T (" + std::to_string(corpus.size()) + " functors)", bad));
  }
  const auto& lat = cat->lattice();
  for (int c = 0; c < n; ++c) {
    auto ind = subgroup_induction(cat, lat.rep(c));
    std::vector<std::string> bad;
    for (int j = 0; j < ind->sub().num_objects(); ++j) {
      auto induced = induce_group(*free_functor(ind->sub_ptr(), Variance::Contravariant, j), *ind);
      if (!same_values(*induced, *frees[ind->object(j)]))
        bad.push_back("G x_K A_{K/J} != A_{G/J} for J = class " + std::to_string(j));
    }
    for (int r = 0; r < cfg.adjunction_functors && r < int(corpus.size()); ++r) {
      auto cmod = random_functor(ind->sub_ptr(), Variance::Contravariant, rng);
      const FgAbGroup lhs = hom_mackey(*induce_group(*cmod, *ind), *corpus[r]).group;
      const FgAbGroup rhs = hom_mackey(*cmod, *restrict_group(*corpus[r], *ind)).group;
      if (!(lhs == rhs)) bad.push_back("adjunction with random" + std::to_string(r) + ": " + fg(lhs) + " vs " + fg(rhs));
    }
    out.push_back(make_case(g.name + " induction from class " + std::to_string(c), bad));
  }
  return out;
}

std::vector<std::pair<std::string, CellComplex>> subgroup_complexes(std::shared_ptr<const OrbitCategory> k) {
  std::vector<std::pair<std::string, CellComplex>> out;
  for (int c = 0; c < k->num_objects(); ++c) out.emplace_back("orbit(" + std::to_string(c) + ")", orbit_complex(k, c));
  for (const char* e : {"trivial_sphere(1)", "suspension(orbit(0))", "sphere_char(1)",
                        "join(sphere_char(1),trivial_sphere(0))"}) {
    try {
      out.emplace_back(e, build(e, k));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::UnsupportedGroup) throw;
    }
  }
  return out;
}

// wirthmuller: H(G x_K X; S) = H(X; S|K).
Cases wirthmuller_cases(const NamedGroup& g, const std::vector<std::string>& coeffs) {
  auto cat = category_of(g);
  Cases out;
  const auto& lat = cat->lattice();
  std::vector<MackeyPtr> corpus;
  for (Variance v : {Variance::Covariant, Variance::Contravariant})
    for (const auto& c : coeffs) corpus.push_back(named_coefficient(cat, c, v));
  for (int c = 0; c < cat->num_objects(); ++c) {
    auto ind = subgroup_induction(cat, lat.rep(c));
    std::vector<std::string> bad;
    for (const auto& [label, x] : subgroup_complexes(ind->sub_ptr()))
      for (const auto& s : corpus) {
        const GradedComparison r = wirthmuller_check(x, *ind, *s);
        if (!r.ok()) bad.push_back(label + " with " + s->name + " " + to_string(s->variance()) + ": " + mismatch(r));
      }
    out.push_back(make_case(g.name + " K = class " + std::to_string(c), bad));
  }
  return out;
}

// fixed-sets: (A^{G/L})^K is zero unless K <= L and otherwise the free
// functor on (G/L)^K over G/K.
Cases fixed_cases(const NamedGroup& g) {
  auto cat = category_of(g);
  const auto& lat = cat->lattice();
  Cases out;
  for (int k = 0; k < lat.num_subgroups(); ++k) {
    if (!lat.is_normal(k)) continue;
    const QuotientCategory q = quotient_category(*cat, k);
    std::vector<std::string> bad;
    for (int l = 0; l < cat->num_objects(); ++l) {
      const FixedQuotient fq = fixed_quotient(*free_functor(cat, Variance::Covariant, l), k, q);
      if (auto d = fq.quotient->functoriality_defect()) bad.push_back("L = " + std::to_string(l) + ": not functorial");
      if (!lat.is_subset(k, cat->rep(l))) {
        if (!fq.quotient->is_zero()) bad.push_back("L = " + std::to_string(l) + ": expected zero");
        continue;
      }
      const MackeyPtr want = free_functor(q.cat, Variance::Covariant, quotient_object(*cat, q, l));
      if (!same_values(*fq.quotient, *want)) bad.push_back("L = " + std::to_string(l) + ": values differ from A^{(G/L)^K}");
    }
    std::ostringstream label;
    label << g.name << " K = {";
    for (std::size_t i = 0; i < lat.subgroup(k).size(); ++i) label << (i ? "," : "") << lat.subgroup(k)[i];
    label << "}";
    out.push_back(make_case(label.str(), bad));
  }
  return out;
}

Cases fixed_complex_cases() {
  Cases out;
  auto z2 = OrbitCategory::create(builtin_group("z2"));
  const int top = z2->lattice().num_subgroups() - 1;  // G itself
  const CellComplex s = library_complex("S_sigma", z2);
  for (Variance v : {Variance::Covariant, Variance::Contravariant})
    for (const char* c : {"constant_Z", "burnside"}) {
      const MackeyPtr t = builtin_functor(z2, c, v);
      const FixedRestrictionReport r = fixed_restriction_check(s, top, *t);
      std::vector<std::string> bad = r.violations;
      // X^G against S^0 over G/G, both with the fixed-quotient coefficients S^G
      const QuotientCategory q = quotient_category(*z2, top);
      const FixedQuotient fq = fixed_quotient(*t, top, q);
      const CellComplex fixed = fixed_point_complex(s, top, q);
      const CellComplex s0 = trivial_sphere(q.cat, 0);
      if (fixed.degrees() != s0.degrees() || fixed.cells(0) != s0.cells(0)) bad.push_back("X^G is not two points");
      if (!same_graded(r.fixed, compute_with(s0, *fq.quotient))) bad.push_back("H(X^G; S^G) differs from H(S^0; S^G)");
      out.push_back(make_case(std::string("S_sigma^G ") + c + " " + to_string(v), bad));
    }
  return out;
}

// products: cellular chains of products, units and the mixed product.
Cases box_chain_cases() {
  auto e = OrbitCategory::create(builtin_group("trivial"));
  auto z2 = OrbitCategory::create(builtin_group("z2"));
  auto z3 = OrbitCategory::create(builtin_group("z3"));
  struct Pair {
    const char *x, *y;
    std::shared_ptr<const OrbitCategory> a, b;
  };
  const std::vector<Pair> pairs{{"circle", "circle", e, e},
                                {"S_sigma", "S_sigma", z2, z2},
                                {"S_sigma", "S_lambda", z2, z3},
                                {"S_2sigma", "circle", z2, e},
                                {"torus_z2", "S_sigma", z2, z2}};
  Cases out;
  for (const auto& p : pairs) {
    ProductContext ctx(p.a, p.b);
    const CheckReport r = box_chains_check(library_complex(p.x, p.a), library_complex(p.y, p.b), ctx);
    out.push_back(make_case(std::string("C(") + p.x + " x " + p.y + ")", r.violations));
  }
  return out;
}

Cases unit_cases(const NamedGroup& g, std::uint64_t seed, int randoms) {
  auto cat = category_of(g);
  ProductContext ctx(cat, cat);
  Cases out;
  const auto contra = coefficient_corpus(cat, Variance::Contravariant, seed, randoms);
  const auto co = coefficient_corpus(cat, Variance::Covariant, seed, randoms);
  for (const auto& t : contra) out.push_back(make_case(g.name + " A_{G/G} box " + t->name, unit_box_check(t, ctx).violations));
  for (const auto& s : co) out.push_back(make_case(g.name + " " + s->name + " mixed A_{G/G}", unit_mixed_check(s).violations));
  for (std::size_t i = 0; i < co.size(); ++i) {
    const auto& t = contra[(i + 1) % contra.size()];
    out.push_back(make_case(g.name + " " + co[i]->name + " mixed " + t->name,
                            mixed_box_check(*co[i], *t, ctx).violations));
  }
  return out;
}

// homalg: vanishing for free functors, resolution independence, degree 0.
Cases homalg_cases(const NamedGroup& g, std::uint64_t seed, int length) {
  auto cat = category_of(g);
  const int n = cat->num_objects();
  Cases out;
  auto rng = rng_for(seed, g.name);
  const std::vector<MackeyPtr> ss{builtin_functor(cat, "constant_Z", Variance::Covariant),
                                  with_name(random_functor(cat, Variance::Covariant, rng), "random")};
  const std::vector<MackeyPtr> us{builtin_functor(cat, "constant_Z", Variance::Contravariant),
                                  builtin_functor(cat, "burnside", Variance::Contravariant)};
  {
    std::vector<std::string> bad;
    for (int a = 0; a < n; ++a) {
      const Resolution r = resolution(free_functor(cat, Variance::Contravariant, a), length);
      for (int p = 1; p < length; ++p) {
        for (const auto& s : ss)
          if (!tor(r, *s, p).is_zero()) bad.push_back("tor_" + std::to_string(p) + "(A_" + std::to_string(a) + ", " + s->name + ") != 0");
        for (const auto& u : us)
          if (!ext(r, *u, p).is_zero()) bad.push_back("ext^" + std::to_string(p) + "(A_" + std::to_string(a) + ", " + u->name + ") != 0");
      }
    }
    out.push_back(make_case(g.name + " free vanishing", bad));
  }
  const std::vector<MackeyPtr> ts{builtin_functor(cat, "constant_Z", Variance::Contravariant),
                                  builtin_functor(cat, "burnside", Variance::Contravariant),
                                  with_name(random_functor(cat, Variance::Contravariant, rng), "random")};
  for (const auto& t : ts) {
    std::vector<std::string> bad;
    const Resolution r1 = resolution(t, length, CoverOrder::SmallestFirst);
    const Resolution r2 = resolution(t, length, CoverOrder::LargestFirst);
    for (const Resolution* r : {&r1, &r2})
      if (auto d = exactness_defect(*r)) bad.push_back("resolution not exact: " + *d);
    Json data = Json::object();
    for (const auto& s : ss) {
      for (int p = 0; p < length; ++p) {
        const FgAbGroup a = tor(r1, *s, p), b = tor(r2, *s, p);
        if (!(a == b)) bad.push_back("tor_" + std::to_string(p) + "(" + s->name + "): " + fg(a) + " vs " + fg(b));
        data["tor " + s->name][std::to_string(p)] = abgroup_to_json(a);
      }
      const FgAbGroup t0 = tensor_mackey(*t, *s);
      if (!(tor(r1, *s, 0) == t0)) bad.push_back("tor_0(" + s->name + ") != tensor " + fg(t0));
    }
    for (const auto& u : us) {
      for (int p = 0; p < length; ++p) {
        const FgAbGroup a = ext(r1, *u, p), b = ext(r2, *u, p);
        if (!(a == b)) bad.push_back("ext^" + std::to_string(p) + "(" + u->name + "): " + fg(a) + " vs " + fg(b));
        data["ext " + u->name][std::to_string(p)] = abgroup_to_json(a);
      }
      const FgAbGroup h0 = hom_mackey(*t, *u).group;
      if (!(ext(r1, *u, 0) == h0)) bad.push_back("ext^0(" + u->name + ") != Hom " + fg(h0));
    }
    CaseResult c = make_case(g.name + " " + t->name, bad);
    c.data = data;
    out.push_back(std::move(c));
  }
  return out;
}

Json entries_json(const std::vector<DualityEntry>& es) {
  Json j = Json::object();
  for (const auto& e : es) {
    Json x;
    x["lhs"] = abgroup_to_json(e.lhs);
    x["rhs"] = abgroup_to_json(e.rhs);
    x["equal"] = e.equal();
    j[std::to_string(e.degree)] = x;
  }
  return j;
}

CaseResult duality_case(const std::string& example, const std::vector<std::string>& coeffs) {
  const DualityReport r = duality_report(example, coeffs);
  std::vector<std::string> bad = r.violations;
  Json data;
  data["dimension"] = r.dimension;
  Json cj = Json::object();
  for (const auto& [c, es] : r.coefficients) {
    cj[c] = entries_json(es);
    for (const auto& e : es)
      if (!e.equal()) bad.push_back(c + " degree " + std::to_string(e.degree) + ": " + fg(e.lhs) + " vs " + fg(e.rhs));
  }
  data["coefficients"] = cj;
  data["classical"] = entries_json(r.classical);
  for (const auto& e : r.classical)
    if (!e.equal()) bad.push_back("classical degree " + std::to_string(e.degree));
  CaseResult c = make_case(example, bad);
  c.data = data;
  return c;
}

// classical: G = e cellular homology of the library manifolds.
Cases classical_cases(const std::vector<std::string>& examples) {
  static const std::map<std::string, std::vector<int>> betti{
      {"circle", {1, 1}}, {"sphere2", {1, 0, 1}}, {"torus", {1, 2, 1}}};
  auto e = OrbitCategory::create(builtin_group("trivial"));
  Cases out;
  for (const auto& name : examples) {
    auto it = betti.find(name);
    if (it == betti.end()) throw Error(ErrorKind::UnknownExample, "no classical example '" + name + "'");
    const CellComplex x = library_complex(name, e);
    std::vector<std::string> bad;
    GradedAbGroups want;
    for (std::size_t n = 0; n < it->second.size(); ++n)
      if (it->second[n]) want[int(n)] = FgAbGroup::free(it->second[n]);
    for (Variance v : {Variance::Covariant, Variance::Contravariant}) {
      const GradedAbGroups h = compute_with(x, *builtin_functor(e, "constant_Z", v));
      if (!same_graded(h, want)) bad.push_back(std::string(to_string(v)) + " homology differs from the cellular oracle");
    }
    CaseResult c = make_case(name, bad);
    c.data = graded_to_json(compute_with(x, *builtin_functor(e, "constant_Z", Variance::Covariant)));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"functoriality", "dimension-axiom", "yoneda", "wirthmuller", "fixed-sets",
          "products", "homalg", "duality", "classical"};
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt) {
  SuiteReport rep;
  rep.suite = name;
  const int th = opt.threads;
  const auto& cfg = opt.config;
  if (name == "functoriality") {
    const auto gs = scope(opt, 1000);
    const auto seed = seed_of(opt, name);
    rep.cases = run_tasks(int(gs.size()), th, [&](int i) { return functoriality_cases(gs[i], seed, cfg.corpus_random); });
  } else if (name == "dimension-axiom") {
    const auto gs = scope(opt, 1000);
    const auto seed = seed_of(opt, name);
    rep.cases = run_tasks(int(gs.size()), th,
                          [&](int i) { return dimension_cases(gs[i], seed, cfg.corpus_random, opt.coefficients); });
  } else if (name == "yoneda") {
    const auto gs = scope(opt, 8);
    const auto seed = seed_of(opt, name);
    rep.cases = run_tasks(int(gs.size()), th, [&](int i) { return yoneda_cases(gs[i], seed, cfg); });
  } else if (name == "wirthmuller") {
    const auto gs = scope(opt, 8);
    const std::vector<std::string> coeffs =
        opt.coefficients.empty() ? std::vector<std::string>{"burnside", "constant_Z"} : opt.coefficients;
    rep.cases = run_tasks(int(gs.size()), th, [&](int i) { return wirthmuller_cases(gs[i], coeffs); });
  } else if (name == "fixed-sets") {
    const auto gs = scope(opt, 1000);
    rep.cases = run_tasks(int(gs.size()) + 1, th, [&](int i) {
      return i < int(gs.size()) ? fixed_cases(gs[i]) : fixed_complex_cases();
    });
  } else if (name == "products") {
    std::vector<NamedGroup> gs = opt.groups;
    if (gs.empty())
      for (const char* g : {"z2", "z3", "s3"}) gs.push_back({g, builtin_group(g)});
    const auto seed = seed_of(opt, name);
    rep.cases = run_tasks(int(gs.size()) + 1, th, [&](int i) {
      return i == 0 ? box_chain_cases() : unit_cases(gs[i - 1], seed, cfg.corpus_random);
    });
  } else if (name == "homalg") {
    std::vector<NamedGroup> gs = opt.groups;
    if (gs.empty())
      for (const char* g : {"trivial", "z2", "z3", "z4", "z2xz2", "s3", "z6"}) gs.push_back({g, builtin_group(g)});
    const auto seed = seed_of(opt, name);
    rep.cases = run_tasks(int(gs.size()), th, [&](int i) { return homalg_cases(gs[i], seed, cfg.homalg_length); });
  } else if (name == "duality") {
    const std::vector<std::string> ex =
        opt.examples.empty()
            ? std::vector<std::string>{"S_sigma", "S_2sigma", "S_lambda", "torus_z2", "circle", "sphere2", "torus"}
            : opt.examples;
    const std::vector<std::string> coeffs =
        opt.coefficients.empty() ? std::vector<std::string>{"burnside", "constant_Z"} : opt.coefficients;
    rep.cases = run_tasks(int(ex.size()), th, [&](int i) { return Cases{duality_case(ex[i], coeffs)}; });
  } else if (name == "classical") {
    const std::vector<std::string> ex =
        opt.examples.empty() ? std::vector<std::string>{"circle", "sphere2", "torus"} : opt.examples;
    rep.cases = classical_cases(ex);
  } else {
    throw Error(ErrorKind::Usage, "unknown suite '" + name + "'");
  }
  return rep;
}

}  // namespace equihom
