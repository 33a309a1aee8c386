#include "equihom/io.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "equihom/error.hpp"

namespace equihom {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, where + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

long need_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<long>();
}

std::string need_string(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

const Json& need_array(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

std::vector<int> int_list(const Json& j, const std::string& where) {
  std::vector<int> out;
  for (std::size_t i = 0; i < need_array(j, where).size(); ++i)
    out.push_back(static_cast<int>(need_int(j[i], where + "[" + std::to_string(i) + "]")));
  return out;
}

int parse_degree(const std::string& key, const std::string& where) {
  try {
    std::size_t pos = 0;
    int n = std::stoi(key, &pos);
    if (pos == key.size()) return n;
  } catch (const std::exception&) {
  }
  bad(where, "key '" + key + "' is not an integer");
}

int class_count(const OrbitCategory& cat) { return cat.num_objects(); }

int check_class(const OrbitCategory& cat, long c, const std::string& where) {
  if (c < 0 || c >= class_count(cat)) bad(where, "class id " + std::to_string(c) + " out of range");
  return static_cast<int>(c);
}

bool same_group(const FiniteGroup& a, const FiniteGroup& b) { return a.table() == b.table(); }

}  // namespace

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    auto p = msg.find("syntax error");
    throw Error(ErrorKind::Parse, origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                                      (p == std::string::npos ? msg : msg.substr(p)));
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

// Groups.

std::vector<std::string> builtin_group_names() {
  return {"trivial", "z2", "z3", "z4", "z2xz2", "s3", "z6", "d4", "q8", "z12"};
}

std::shared_ptr<const FiniteGroup> builtin_group(const std::string& name) {
  auto num = [&](std::size_t from) -> int {
    if (name.size() <= from) return -1;
    for (std::size_t i = from; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return -1;
    return std::stoi(name.substr(from));
  };
  std::shared_ptr<FiniteGroup> g;
  if (name == "trivial" || name == "e") {
    g = std::make_shared<FiniteGroup>(FiniteGroup::cyclic(1));
  } else if (name == "z2xz2") {
    g = std::make_shared<FiniteGroup>(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
  } else if (name == "q8") {
    g = std::make_shared<FiniteGroup>(FiniteGroup::quaternion8());
  } else if (name[0] == 'z' && num(1) >= 1 && num(1) <= 100) {
    g = std::make_shared<FiniteGroup>(FiniteGroup::cyclic(num(1)));
  } else if (name[0] == 'd' && num(1) >= 2 && num(1) <= 50) {
    g = std::make_shared<FiniteGroup>(FiniteGroup::dihedral(num(1)));
  } else if (name[0] == 's' && num(1) >= 2 && num(1) <= 4) {
    g = std::make_shared<FiniteGroup>(FiniteGroup::symmetric(num(1)));
  }
  return g;
}

std::shared_ptr<const FiniteGroup> load_group(const std::string& ref) {
  namespace fs = std::filesystem;
  if (fs::exists(ref)) return group_from_json(read_json_file(ref));
  std::string stem = fs::path(ref).filename().string();
  if (stem.size() > 5 && stem.compare(stem.size() - 5, 5, ".json") == 0) stem.resize(stem.size() - 5);
  if (auto g = builtin_group(stem)) return g;
  throw Error(ErrorKind::Parse, "no group file or builtin group named '" + ref + "'");
}

Json group_to_json(const FiniteGroup& g, const std::string& name) {
  Json j;
  j["name"] = name;
  j["kind"] = "table";
  j["table"] = g.table();
  return j;
}

std::shared_ptr<const FiniteGroup> group_from_json(const Json& j) {
  const std::string where = "group";
  std::string name = j.contains("name") ? need_string(j["name"], where + ".name") : std::string();
  std::string kind = need_string(need(j, "kind", where), where + ".kind");
  if (kind == "table") {
    const Json& t = need_array(need(j, "table", where), where + ".table");
    std::vector<std::vector<Elem>> table;
    for (std::size_t r = 0; r < t.size(); ++r) {
      table.push_back(int_list(t[r], where + ".table[" + std::to_string(r) + "]"));
      if (table.back().size() != t.size()) bad(where + ".table", "table is not square");
      for (int x : table.back())
        if (x < 0 || x >= int(t.size())) bad(where + ".table", "entry " + std::to_string(x) + " out of range");
    }
    if (table.empty()) bad(where + ".table", "empty table");
    return std::make_shared<const FiniteGroup>(std::move(table), name);
  }
  if (kind == "permutations") {
    int degree = static_cast<int>(need_int(need(j, "degree", where), where + ".degree"));
    if (degree < 1) bad(where + ".degree", "degree must be positive");
    const Json& gens = need_array(need(j, "generators", where), where + ".generators");
    std::vector<std::vector<int>> perms;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      auto p = int_list(gens[i], where + ".generators[" + std::to_string(i) + "]");
      std::vector<char> seen(degree, 0);
      if (int(p.size()) != degree) bad(where + ".generators", "generator length differs from degree");
      for (int x : p) {
        if (x < 0 || x >= degree || seen[x]) bad(where + ".generators", "generator is not a permutation");
        seen[x] = 1;
      }
      perms.push_back(std::move(p));
    }
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations(perms, degree, name));
  }
  bad(where + ".kind", "expected \"table\" or \"permutations\"");
}

std::shared_ptr<const FiniteGroup> group_from_ref(const Json& j) {
  if (j.is_string()) return load_group(j.get<std::string>());
  return group_from_json(j);
}

// Values.

Json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) == 0) return x;
  }
  bad("integer", "expected an integer");
}

Json abgroup_to_json(const FgAbGroup& g) {
  Json j;
  j["rank"] = g.rank();
  j["torsion"] = Json::array();
  for (const Int& t : g.torsion()) j["torsion"].push_back(int_to_json(t));
  return j;
}

FgAbGroup abgroup_from_json(const Json& j) {
  const std::string where = "value";
  long rank = need_int(need(j, "rank", where), where + ".rank");
  if (rank < 0) bad(where + ".rank", "negative rank");
  IntVector torsion;
  for (const Json& t : need_array(need(j, "torsion", where), where + ".torsion")) torsion.push_back(int_from_json(t));
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) bad(where + ".torsion", "torsion coefficients must be >= 2");
    if (i > 0 && torsion[i] % torsion[i - 1] != 0) bad(where + ".torsion", "torsion must be a divisibility chain");
  }
  if (j.contains("generators")) {
    IntVector orders;
    for (const Json& o : need_array(j["generators"], where + ".generators")) orders.push_back(int_from_json(o));
    FgAbGroup g(orders);
    if (!(g == FgAbGroup::from_invariants(rank, torsion)))
      throw Error(ErrorKind::ObjectMismatch, "value generators do not present the stated group");
    return g;
  }
  return FgAbGroup::from_invariants(rank, torsion);
}

Json graded_to_json(const GradedAbGroups& g) {
  Json j = Json::object();
  for (const auto& [n, a] : g) j[std::to_string(n)] = abgroup_to_json(a);
  return j;
}

// Spans.

Json span_to_json(const OrbitCategory& cat, int h, int k, int index) {
  const Span& s = cat.basis(h, k)[index];
  Json j;
  j["H"] = h;
  j["K"] = k;
  j["J"] = cat.lattice().subgroup(s.J);
  j["g"] = s.g;
  return j;
}

SpanMorphism span_from_json(const OrbitCategory& cat, const Json& j) {
  const std::string where = "span";
  int h = check_class(cat, need_int(need(j, "H", where), where + ".H"), where + ".H");
  int k = check_class(cat, need_int(need(j, "K", where), where + ".K"), where + ".K");
  auto elems = int_list(need(j, "J", where), where + ".J");
  long g = need_int(need(j, "g", where), where + ".g");
  const auto& lat = cat.lattice();
  if (g < 0 || g >= cat.group().order()) bad(where + ".g", "element out of range");
  std::sort(elems.begin(), elems.end());
  int J = lat.index_of(elems);
  if (J < 0) throw Error(ErrorKind::InvalidSubgroup, "span inner group is not a subgroup");
  if (!lat.is_subset(J, cat.rep(h))) throw Error(ErrorKind::ObjectMismatch, "span inner group is not inside H");
  return cat.make_span(cat.rep(h), cat.rep(k), J, 0, static_cast<Elem>(g));
}

// Complexes.

Json complex_to_json(const CellComplex& x, const Json& group_ref) {
  const auto& cat = x.category();
  Json j;
  j["group"] = group_ref;
  if (!x.name.empty()) j["name"] = x.name;
  if (x.dual) j["dual"] = true;
  Json dims = Json::object();
  for (std::size_t c = 0; c < x.grading.dims.size(); ++c) dims[std::to_string(c)] = x.grading.dims[c];
  j["dims"] = dims;
  Json degrees = Json::object(), diffs = Json::object();
  for (int n : x.degrees()) {
    degrees[std::to_string(n)] = x.cells(n);
    if (x.num_cells(n - 1) == 0) continue;
    Json rows = Json::array();
    for (std::size_t i = 0; i < x.num_cells(n); ++i) {
      Json row = Json::array();
      for (std::size_t jj = 0; jj < x.num_cells(n - 1); ++jj) {
        SpanMorphism f = x.boundary(n, int(i), int(jj));
        Json terms = Json::array();
        for (std::size_t b = 0; b < f.coeffs.size(); ++b) {
          if (f.coeffs[b] == 0) continue;
          Json t;
          t["span"] = span_to_json(cat, f.src, f.tgt, int(b));
          t["coeff"] = int_to_json(f.coeffs[b]);
          terms.push_back(t);
        }
        row.push_back(terms);
      }
      rows.push_back(row);
    }
    diffs[std::to_string(n)] = rows;
  }
  j["degrees"] = degrees;
  j["differentials"] = diffs;
  return j;
}

CellComplex complex_from_json(const Json& j, std::shared_ptr<const OrbitCategory> cat) {
  const std::string where = "complex";
  if (!j.is_object()) bad(where, "expected an object");
  if (j.contains("group")) {
    auto g = group_from_ref(j["group"]);
    if (!cat || !same_group(*g, cat->group())) cat = OrbitCategory::create(g);
  }
  if (!cat) bad(where, "no group given");
  CellComplex x(cat);
  if (j.contains("name")) x.name = need_string(j["name"], where + ".name");
  if (j.contains("dual")) {
    if (!j["dual"].is_boolean()) bad(where + ".dual", "expected a boolean");
    x.dual = j["dual"].get<bool>();
  }
  x.grading = DimensionFunction::zero(cat->num_objects());
  if (j.contains("dims")) {
    const Json& dims = j["dims"];
    if (!dims.is_object()) bad(where + ".dims", "expected an object");
    for (auto it = dims.begin(); it != dims.end(); ++it) {
      int c = check_class(*cat, parse_degree(it.key(), where + ".dims"), where + ".dims");
      x.grading.dims[c] = static_cast<int>(need_int(it.value(), where + ".dims." + it.key()));
    }
  }
  const Json& degrees = need(j, "degrees", where);
  if (!degrees.is_object()) bad(where + ".degrees", "expected an object");
  std::map<int, std::vector<int>> cells;
  for (auto it = degrees.begin(); it != degrees.end(); ++it) {
    int n = parse_degree(it.key(), where + ".degrees");
    for (int c : int_list(it.value(), where + ".degrees." + it.key())) cells[n].push_back(check_class(*cat, c, where));
  }
  for (const auto& [n, cs] : cells)
    for (int c : cs) x.add_cell(n, c);
  if (j.contains("differentials")) {
    const Json& diffs = j["differentials"];
    if (!diffs.is_object()) bad(where + ".differentials", "expected an object");
    for (auto it = diffs.begin(); it != diffs.end(); ++it) {
      const std::string w = where + ".differentials." + it.key();
      int n = parse_degree(it.key(), w);
      const Json& rows = need_array(it.value(), w);
      if (rows.size() != x.num_cells(n)) bad(w, "expected one row per cell of degree " + it.key());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const Json& row = need_array(rows[i], w);
        if (row.size() != x.num_cells(n - 1)) bad(w, "expected one entry per cell of degree " + std::to_string(n - 1));
        for (std::size_t jj = 0; jj < row.size(); ++jj) {
          for (const Json& term : need_array(row[jj], w)) {
            SpanMorphism f = span_from_json(*cat, need(term, "span", w));
            if (f.src != x.cells(n)[i] || f.tgt != x.cells(n - 1)[jj])
              throw Error(ErrorKind::ObjectMismatch, w + ": span endpoints do not match the cells",
                          "row " + std::to_string(i) + ", column " + std::to_string(jj));
            x.add_boundary(n, int(i), int(jj), f.scaled(term.contains("coeff") ? int_from_json(term["coeff"]) : Int(1)));
          }
        }
      }
    }
  }
  require_valid(x);
  return x;
}

// Functors.

Json functor_to_json(const MackeyFunctor& t, const Json& group_ref) {
  const auto& cat = t.category();
  const int n = t.num_objects();
  Json j;
  j["group"] = group_ref;
  if (!t.name.empty()) j["name"] = t.name;
  j["variance"] = to_string(t.variance());
  Json values = Json::array();
  for (int h = 0; h < n; ++h) {
    Json v = abgroup_to_json(t.value(h));
    v["generators"] = Json::array();
    for (const Int& o : t.value(h).orders()) v["generators"].push_back(int_to_json(o));
    values.push_back(v);
  }
  j["values"] = values;
  Json actions = Json::array();
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      for (std::size_t i = 0; i < cat.basis_size(h, k); ++i) {
        const IntMatrix& m = t.action(h, k, int(i));
        Json a;
        a["span"] = span_to_json(cat, h, k, int(i));
        Json rows = Json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) {
          Json row = Json::array();
          for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(int_to_json(m(r, c)));
          rows.push_back(row);
        }
        a["matrix"] = rows;
        actions.push_back(a);
      }
  j["actions"] = actions;
  return j;
}

MackeyPtr functor_from_json(const Json& j, std::shared_ptr<const OrbitCategory> cat) {
  const std::string where = "functor";
  if (!j.is_object()) bad(where, "expected an object");
  if (j.contains("group")) {
    auto g = group_from_ref(j["group"]);
    if (!cat || !same_group(*g, cat->group())) cat = OrbitCategory::create(g);
  }
  if (!cat) bad(where, "no group given");
  const int n = cat->num_objects();
  Variance v;
  try {
    v = parse_variance(need_string(need(j, "variance", where), where + ".variance"));
  } catch (const Error&) {
    bad(where + ".variance", "expected \"contravariant\" or \"covariant\"");
  }
  const Json& values_j = need_array(need(j, "values", where), where + ".values");
  if (int(values_j.size()) != n) bad(where + ".values", "expected one value per subgroup class (" + std::to_string(n) + ")");
  std::vector<FgAbGroup> values;
  for (const Json& vj : values_j) values.push_back(abgroup_from_json(vj));
  MackeyFunctor::Actions actions(n * n);
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k) actions[h * n + k].resize(cat->basis_size(h, k));
  std::vector<std::vector<char>> seen(n * n);
  for (int a = 0; a < n * n; ++a) seen[a].assign(actions[a].size(), 0);
  for (const Json& a : need_array(need(j, "actions", where), where + ".actions")) {
    SpanMorphism f = span_from_json(*cat, need(a, "span", where + ".actions"));
    std::size_t idx = 0;
    while (idx < f.coeffs.size() && f.coeffs[idx] == 0) ++idx;
    const std::string w = where + ".actions[" + cat->describe(f.src, f.tgt, int(idx)) + "]";
    if (seen[f.src * n + f.tgt][idx]) bad(w, "span listed twice");
    seen[f.src * n + f.tgt][idx] = 1;
    // contravariant: T(K) -> T(H); covariant: S(H) -> S(K)
    const FgAbGroup& from = v == Variance::Contravariant ? values[f.tgt] : values[f.src];
    const FgAbGroup& to = v == Variance::Contravariant ? values[f.src] : values[f.tgt];
    const Json& rows = need_array(need(a, "matrix", w), w);
    if (rows.size() != to.ngens()) bad(w, "matrix has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(to.ngens()));
    IntMatrix m(to.ngens(), from.ngens());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Json& row = need_array(rows[r], w);
      if (row.size() != from.ngens()) bad(w, "matrix row has wrong length");
      for (std::size_t c = 0; c < row.size(); ++c) m(r, c) = int_from_json(row[c]);
    }
    actions[f.src * n + f.tgt][idx] = std::move(m);
  }
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      for (std::size_t i = 0; i < seen[h * n + k].size(); ++i)
        if (!seen[h * n + k][i]) bad(where + ".actions", "no matrix for span " + cat->describe(h, k, int(i)));
  auto t = std::make_shared<MackeyFunctor>(v, cat, std::move(values), std::move(actions), true);
  if (j.contains("name")) t->name = need_string(j["name"], where + ".name");
  return t;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return 1;
    case ErrorKind::Parse: return 2;
    default: return 3;
  }
}

}  // namespace equihom
