#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "equihom/error.hpp"
#include "equihom/io.hpp"
#include "equihom/suites.hpp"

using namespace equihom;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Usage;
}

}  // namespace

TEST_CASE("group files round trip") {
  for (const auto& name : builtin_group_names()) {
    auto g = builtin_group(name);
    const Json j = group_to_json(*g, name);
    auto back = group_from_json(parse_json(j.dump(), "test"));
    CHECK(back->table() == g->table());
  }
  const Json perm = parse_json(R"({"name":"s3","kind":"permutations","degree":3,"generators":[[1,2,0],[1,0,2]]})", "test");
  CHECK(group_from_json(perm)->order() == 6);
}

TEST_CASE("bad group files") {
  CHECK(kind_of([] { group_from_json(parse_json(R"({"kind":"table"})", "t")); }) == ErrorKind::Parse);
  CHECK(kind_of([] { group_from_json(parse_json(R"({"kind":"table","table":[[0,1],[1,1]]})", "t")); }) !=
        ErrorKind::Parse);
  CHECK(kind_of([] { group_from_json(parse_json(R"({"kind":"permutations","degree":2,"generators":[[0,0]]})", "t")); }) ==
        ErrorKind::Parse);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_json("{\n  \"kind\": \"table\",\n  \"table\": [[0]\n}", "g.json");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find("g.json:4:") != std::string::npos);
  }
}

TEST_CASE("complexes round trip") {
  for (const char* name : {"z2", "s3"}) {
    auto cat = OrbitCategory::create(builtin_group(name));
    for (const char* expr : {"suspension(orbit(1))", "join(orbit(1),orbit(0))", "trivial_sphere(2)"}) {
      const CellComplex x = build(expr, cat);
      const Json j = complex_to_json(x, name);
      const CellComplex y = complex_from_json(parse_json(j.dump(), "t"), nullptr);
      CHECK(complex_to_json(y, name) == j);
      auto b = builtin_functor(y.category_ptr(), "burnside", Variance::Contravariant);
      CHECK(same_graded(cohomology(x, *builtin_functor(cat, "burnside", Variance::Contravariant)), cohomology(y, *b)));
    }
  }
}

TEST_CASE("functors round trip and invalid functors are refused") {
  auto cat = OrbitCategory::create(builtin_group("s3"));
  for (const char* c : {"burnside", "constant_Z", "random:4"})
    for (Variance v : {Variance::Contravariant, Variance::Covariant}) {
      auto t = named_coefficient(cat, c, v);
      const Json j = functor_to_json(*t, "s3");
      auto back = functor_from_json(parse_json(j.dump(), "t"), nullptr);
      CHECK(functor_to_json(*back, "s3") == j);
    }
  Json j = functor_to_json(*builtin_functor(cat, "constant_Z", Variance::Contravariant), "s3");
  // break a restriction: the first non-identity action
  for (auto& a : j["actions"])
    if (a["span"]["H"] != a["span"]["K"]) {
      a["matrix"] = Json::array({Json::array({7})});
      break;
    }
  CHECK(kind_of([&] { functor_from_json(j, nullptr); }) == ErrorKind::FunctorialityFailure);
  Json missing = functor_to_json(*builtin_functor(cat, "zero", Variance::Contravariant), "s3");
  missing["actions"].erase(0);
  CHECK(kind_of([&] { functor_from_json(missing, nullptr); }) == ErrorKind::Parse);
}

TEST_CASE("abelian groups serialize as rank and torsion") {
  const FgAbGroup g(IntVector{0, 2, 4});
  const Json j = abgroup_to_json(g);
  CHECK(j.dump() == R"({"rank":1,"torsion":[2,4]})");
  CHECK(abgroup_from_json(j) == g);
  CHECK(kind_of([] { abgroup_from_json(parse_json(R"({"rank":0,"torsion":[2,3]})", "t")); }) == ErrorKind::Parse);
}

TEST_CASE("corpus config and seeds") {
  const auto path = std::filesystem::temp_directory_path() / "equihom_corpus_test.json";
  {
    std::ofstream out(path);
    out << R"({"seeds":{"yoneda":5},"random_functors":21})";
  }
  const CorpusConfig c = CorpusConfig::load(path.string());
  CHECK(c.seed("yoneda") == 5);
  CHECK(c.random_functors == 21);
  std::filesystem::remove(path);
  auto cat = OrbitCategory::create(builtin_group("z3"));
  const auto a = coefficient_corpus(cat, Variance::Contravariant, 9, 2);
  const auto b = coefficient_corpus(cat, Variance::Contravariant, 9, 2);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(functor_to_json(*a[i], "z3") == functor_to_json(*b[i], "z3"));
}
