#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "equihom/error.hpp"
#include "equihom/homalg.hpp"
#include "equihom/io.hpp"
#include "equihom/suites.hpp"

#ifndef EQUIHOM_DATA_DIR
#define EQUIHOM_DATA_DIR "data"
#endif

using namespace equihom;

namespace {

struct Settings {
  std::string format = "auto";
  std::string config = std::string(EQUIHOM_DATA_DIR) + "/corpus.json";
  std::optional<std::uint64_t> seed;
  std::string group = "trivial";
  std::string complex;
  std::string coeff;
  std::string variance;
  std::string functor;
  std::string with;
  std::string p_range = "0:3";
  int length = 4;
  std::string suite;
  bool all = false;
  std::vector<std::string> groups;
  std::vector<std::string> examples;
  std::string coefficients;
  std::string dims;
};

bool json_out(const Settings& s, bool default_json = true) {
  if (s.format == "auto") return default_json;
  return s.format == "json";
}

std::shared_ptr<const OrbitCategory> load_category(const Settings& s) {
  return OrbitCategory::create(load_group(s.group));
}

bool is_file(const std::string& p) { return !p.empty() && std::filesystem::is_regular_file(p); }

CellComplex load_complex(const Settings& s, std::shared_ptr<const OrbitCategory> cat) {
  if (s.complex.empty()) throw Error(ErrorKind::Usage, "--complex is required");
  if (is_file(s.complex)) return complex_from_json(read_json_file(s.complex), cat);
  CellComplex x = build(s.complex, cat);
  require_valid(x);
  return x;
}

MackeyPtr load_functor(const std::string& ref, Variance v, std::shared_ptr<const OrbitCategory> cat) {
  if (is_file(ref)) {
    MackeyPtr t = functor_from_json(read_json_file(ref), cat);
    if (t->variance() != v) t = transpose_variance(*t);
    return t;
  }
  return named_coefficient(cat, ref, v);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::pair<int, int> parse_range(const std::string& r) {
  auto colon = r.find(':');
  try {
    if (colon == std::string::npos) {
      int p = std::stoi(r);
      return {p, p};
    }
    return {std::stoi(r.substr(0, colon)), std::stoi(r.substr(colon + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::Usage, "bad range '" + r + "' (expected lo:hi)");
  }
}

void print_graded(const Settings& s, const std::map<int, FgAbGroup>& g, const char* index) {
  if (json_out(s)) {
    Json j = Json::object();
    for (const auto& [n, a] : g) j[std::to_string(n)] = abgroup_to_json(a);
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << index << "  group\n";
  for (const auto& [n, a] : g) std::cout << std::setw(int(std::string(index).size())) << n << "  " << a.to_string() << "\n";
}

int cmd_info(const Settings& s) {
  auto cat = load_category(s);
  const auto& lat = cat->lattice();
  const auto& g = cat->group();
  Json j;
  j["order"] = g.order();
  j["subgroup_classes"] = lat.num_classes();
  Json classes = Json::array();
  for (int c = 0; c < lat.num_classes(); ++c) {
    Json e;
    e["class"] = c;
    e["order"] = lat.size(lat.rep(c));
    e["elements"] = lat.rep_subgroup(c);
    e["conjugates"] = lat.class_size(c);
    e["normal"] = lat.is_normal(lat.rep(c));
    e["weyl_order"] = lat.weyl(c).group->order();
    classes.push_back(e);
  }
  j["classes"] = classes;
  std::optional<CellComplex> x;
  if (!s.complex.empty()) {
    x = load_complex(s, cat);
    Json cx;
    for (int n : x->degrees()) {
      Json census = Json::object();
      for (int c : x->cells(n)) {
        const std::string k = std::to_string(c);
        census[k] = census.contains(k) ? census[k].get<int>() + 1 : 1;
      }
      cx[std::to_string(n)] = census;
    }
    j["cells"] = cx;
  }
  MackeyPtr t;
  if (!s.coeff.empty()) {
    t = load_functor(s.coeff, s.variance.empty() ? Variance::Contravariant : parse_variance(s.variance), cat);
    Json vals = Json::array();
    for (int h = 0; h < t->num_objects(); ++h) vals.push_back(abgroup_to_json(t->value(h)));
    j["values"] = vals;
  }
  if (json_out(s, false)) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "order " << g.order() << ", " << lat.num_classes() << " subgroup classes\n";
  for (int c = 0; c < lat.num_classes(); ++c) {
    std::cout << "  class " << c << ": order " << lat.size(lat.rep(c)) << ", " << lat.class_size(c) << " conjugate"
              << (lat.class_size(c) == 1 ? "" : "s") << ", Weyl group of order " << lat.weyl(c).group->order() << "\n";
  }
  if (x) {
    std::cout << "complex: " << x->total_cells() << " cells\n";
    for (int n : x->degrees()) {
      std::cout << "  degree " << n << ":";
      for (int c : x->cells(n)) std::cout << " G/H" << c;
      std::cout << "\n";
    }
  }
  if (t) {
    std::cout << "functor (" << to_string(t->variance()) << "):\n";
    for (int h = 0; h < t->num_objects(); ++h) std::cout << "  class " << h << ": " << t->value(h).to_string() << "\n";
  }
  return 0;
}

int cmd_homology(const Settings& s, bool co) {
  auto cat = load_category(s);
  const CellComplex x = load_complex(s, cat);
  if (s.coeff.empty()) throw Error(ErrorKind::Usage, "--coeff is required");
  const Variance v = s.variance.empty() ? (co ? Variance::Contravariant : Variance::Covariant) : parse_variance(s.variance);
  if (v != (co ? Variance::Contravariant : Variance::Covariant))
    throw Error(ErrorKind::Usage, std::string(co ? "cohomology" : "homology") + " takes " +
                                      (co ? "contravariant" : "covariant") + " coefficients");
  const MackeyPtr t = load_functor(s.coeff, v, cat);
  print_graded(s, co ? cohomology(x, *t) : homology(x, *t), "n");
  return 0;
}

int cmd_derived(const Settings& s, bool is_ext) {
  auto cat = load_category(s);
  if (s.functor.empty() || s.with.empty()) throw Error(ErrorKind::Usage, "--functor and --with are required");
  auto [lo, hi] = parse_range(s.p_range);
  if (lo < 0 || hi < lo) throw Error(ErrorKind::Usage, "bad range '" + s.p_range + "'");
  const int length = std::max(s.length, hi + 1);
  const MackeyPtr t = load_functor(s.functor, Variance::Contravariant, cat);
  const MackeyPtr other = load_functor(s.with, is_ext ? Variance::Contravariant : Variance::Covariant, cat);
  const Resolution r = resolution(t, length);
  std::map<int, FgAbGroup> out;
  for (int p = lo; p <= hi; ++p) out[p] = is_ext ? ext(r, *other, p) : tor(r, *other, p);
  print_graded(s, out, "p");
  return 0;
}

SuiteOptions suite_options(const Settings& s) {
  SuiteOptions opt;
  opt.config = std::filesystem::exists(s.config) ? CorpusConfig::load(s.config) : CorpusConfig::defaults();
  opt.seed = s.seed;
  for (const auto& g : s.groups) {
    std::string name = std::filesystem::path(g).stem().string();
    opt.groups.push_back({name, load_group(g)});
  }
  opt.examples = s.examples;
  opt.coefficients = split(s.coefficients);
  opt.threads = default_threads();
  return opt;
}

Json duality_json(const CaseResult& c) {
  Json j;
  j["example"] = c.label;
  j["ok"] = c.ok;
  for (auto it = c.data.begin(); it != c.data.end(); ++it) j[it.key()] = it.value();
  return j;
}

int cmd_verify(const Settings& s) {
  std::vector<std::string> suites;
  if (s.all) {
    if (!s.suite.empty()) throw Error(ErrorKind::Usage, "give a suite or --all, not both");
    suites = suite_names();
  } else {
    if (s.suite.empty()) throw Error(ErrorKind::Usage, "give a suite name or --all");
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), s.suite) == names.end())
      throw Error(ErrorKind::Usage, "unknown suite '" + s.suite + "'");
    suites = {s.suite};
  }
  const SuiteOptions opt = suite_options(s);
  std::vector<SuiteReport> reports;
  bool ok = true;
  for (const auto& name : suites) {
    reports.push_back(run_suite(name, opt));
    ok = ok && reports.back().ok();
  }
  if (json_out(s)) {
    Json j;
    if (!s.all && s.suite == "duality" && !s.examples.empty()) {
      if (reports[0].cases.size() == 1) {
        j = duality_json(reports[0].cases[0]);
      } else {
        j = Json::array();
        for (const auto& c : reports[0].cases) j.push_back(duality_json(c));
      }
    } else if (s.all) {
      j["ok"] = ok;
      j["suites"] = Json::array();
      for (const auto& r : reports) j["suites"].push_back(r.to_json());
    } else {
      j = reports[0].to_json();
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : reports) std::cout << r.to_table();
    if (s.all) std::cout << (ok ? "all suites passed" : "some suites FAILED") << "\n";
  }
  return ok ? 0 : 4;
}

int cmd_dualize(const Settings& s) {
  auto cat = load_category(s);
  CellComplex x = load_complex(s, cat);
  DimensionFunction v = x.grading;
  if (!s.dims.empty()) {
    v.dims.clear();
    for (const auto& d : split(s.dims)) {
      try {
        v.dims.push_back(std::stoi(d));
      } catch (const std::exception&) {
        throw Error(ErrorKind::Usage, "bad --dims entry '" + d + "'");
      }
    }
  }
  if (int(v.dims.size()) != cat->num_objects())
    throw Error(ErrorKind::Usage, "--dims needs one entry per subgroup class");
  const CellComplex d = dualize(x, v);
  std::cout << complex_to_json(d, s.group).dump(2) << "\n";
  return 0;
}

int cmd_export(const Settings& s) {
  auto g = load_group(s.group);
  auto cat = OrbitCategory::create(g);
  Json j;
  if (!s.complex.empty()) {
    j = complex_to_json(load_complex(s, cat), s.group);
  } else if (!s.coeff.empty()) {
    const Variance v = s.variance.empty() ? Variance::Contravariant : parse_variance(s.variance);
    j = functor_to_json(*load_functor(s.coeff, v, cat), s.group);
  } else {
    j = group_to_json(*g, std::filesystem::path(s.group).stem().string());
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equihom: RO(G)-graded Bredon homology with Mackey functor coefficients"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "table", "auto"}));
  app.add_option("--config", s.config, "Corpus configuration");
  std::uint64_t seed = 0;
  auto seed_opt = app.add_option("--seed", seed, "Override every corpus seed");

  auto group_opt = [&](CLI::App* sub) {
    sub->add_option("--group", s.group, "Group file or builtin name (trivial, z2, s3, d4, q8, ...)");
  };
  auto coeff_opts = [&](CLI::App* sub) {
    sub->add_option("--coeff", s.coeff, "Functor file or burnside | constant_Z | zero | free:<class> | random:<seed>");
    sub->add_option("--variance", s.variance, "contravariant | covariant");
  };

  auto info = app.add_subcommand("info", "Summarize a group, complex or functor");
  group_opt(info);
  info->add_option("--complex", s.complex, "Complex file or builder expression");
  coeff_opts(info);

  auto hom = app.add_subcommand("homology", "Bredon homology with covariant coefficients");
  auto coh = app.add_subcommand("cohomology", "Bredon cohomology with contravariant coefficients");
  for (auto* sub : {hom, coh}) {
    group_opt(sub);
    sub->add_option("--complex", s.complex, "Complex file or builder expression")->required();
    coeff_opts(sub);
  }

  auto tor_cmd = app.add_subcommand("tor", "Tor(T, S) over the orbit category");
  auto ext_cmd = app.add_subcommand("ext", "Ext(T, U) over the orbit category");
  for (auto* sub : {tor_cmd, ext_cmd}) {
    group_opt(sub);
    sub->add_option("--functor", s.functor, "Contravariant T (file or name)")->required();
    sub->add_option("--with", s.with, "S (covariant, tor) or U (contravariant, ext)")->required();
    sub->add_option("--p", s.p_range, "Degree range lo:hi");
    sub->add_option("--length", s.length, "Resolution length")->check(CLI::Range(1, 64));
  }

  auto verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("suite", s.suite, "Suite name");
  verify->add_flag("--all", s.all, "Run every suite");
  verify->add_option("--group", s.groups, "Restrict to these groups (repeatable)");
  verify->add_option("--example", s.examples, "Duality / classical examples (repeatable)");
  verify->add_option("--coefficients", s.coefficients, "Comma-separated coefficient names");

  auto dual = app.add_subcommand("dualize", "Emit the dual structure of a closed V-manifold structure");
  group_opt(dual);
  dual->add_option("--complex", s.complex, "Complex file or builder expression")->required();
  dual->add_option("--dims", s.dims, "Comma-separated |V^H| per subgroup class (default: the complex grading)");

  auto exp = app.add_subcommand("export", "Canonical JSON of a group, complex or functor");
  group_opt(exp);
  exp->add_option("--complex", s.complex, "Complex file or builder expression");
  coeff_opts(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (seed_opt->count()) s.seed = seed;

  try {
    if (*info) return cmd_info(s);
    if (*hom) return cmd_homology(s, false);
    if (*coh) return cmd_homology(s, true);
    if (*tor_cmd) return cmd_derived(s, false);
    if (*ext_cmd) return cmd_derived(s, true);
    if (*verify) return cmd_verify(s);
    if (*dual) return cmd_dualize(s);
    if (*exp) return cmd_export(s);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.witness().empty()) std::cerr << "witness: " << e.witness() << "\n";
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: Parse: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
