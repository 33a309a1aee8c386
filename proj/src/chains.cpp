#include "equihom/chains.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "equihom/error.hpp"

namespace equihom {

// ------------------------------------------------------- DimensionFunction

bool DimensionFunction::is_zero() const {
  return std::all_of(dims.begin(), dims.end(), [](int d) { return d == 0; });
}

bool DimensionFunction::is_monotone(const SubgroupLattice& lat) const {
  for (int k = 0; k < lat.num_classes(); ++k)
    for (int l = 0; l < lat.num_classes(); ++l)
      if (lat.subconjugate(k, l) && dims[l] > dims[k]) return false;
  return true;
}

DimensionFunction DimensionFunction::operator+(const DimensionFunction& rhs) const {
  DimensionFunction out = *this;
  for (std::size_t i = 0; i < out.dims.size() && i < rhs.dims.size(); ++i) out.dims[i] += rhs.dims[i];
  return out;
}

// ------------------------------------------------------------- CellComplex

CellComplex::CellComplex(std::shared_ptr<const OrbitCategory> cat)
    : grading(DimensionFunction::zero(cat->num_objects())), cat_(std::move(cat)) {}

int CellComplex::add_cell(int degree, int cls) {
  if (cls < 0 || cls >= cat_->num_objects()) throw Error(ErrorKind::InvalidComplex, "cell class out of range");
  auto& v = cells_[degree];
  v.push_back(cls);
  return static_cast<int>(v.size()) - 1;
}

void CellComplex::add_boundary(int degree, int i, int j, const SpanMorphism& f) {
  const auto key = std::make_tuple(degree, i, j);
  auto it = d_.find(key);
  if (it == d_.end())
    d_.emplace(key, f);
  else
    it->second += f;
}

void CellComplex::add_boundary(int degree, int i, int j, int basis_index, const Int& coeff) {
  const int h = cells(degree).at(i), k = cells(degree - 1).at(j);
  add_boundary(degree, i, j, cat_->basis_morphism(h, k, basis_index).scaled(coeff));
}

const std::vector<int>& CellComplex::cells(int degree) const {
  static const std::vector<int> none;
  auto it = cells_.find(degree);
  return it == cells_.end() ? none : it->second;
}

std::size_t CellComplex::total_cells() const {
  std::size_t n = 0;
  for (const auto& [deg, v] : cells_) n += v.size();
  return n;
}

std::vector<int> CellComplex::degrees() const {
  std::vector<int> out;
  for (const auto& [deg, v] : cells_)
    if (!v.empty()) out.push_back(deg);
  return out;
}

int CellComplex::min_degree() const { return cells_.empty() ? 0 : cells_.begin()->first; }
int CellComplex::max_degree() const { return cells_.empty() ? 0 : cells_.rbegin()->first; }

SpanMorphism CellComplex::boundary(int degree, int i, int j) const {
  auto it = d_.find(std::make_tuple(degree, i, j));
  if (it != d_.end()) return it->second;
  return cat_->zero(cells(degree).at(i), cells(degree - 1).at(j));
}

// -------------------------------------------------------------- validation

ValidationReport validate_complex(const CellComplex& x) {
  ValidationReport rep;
  const OrbitCategory& cat = x.category();
  const SubgroupLattice& lat = cat.lattice();
  auto fail = [&](const std::string& s) { rep.violations.push_back(s); };
  if (static_cast<int>(x.grading.dims.size()) != cat.num_objects())
    fail("dimension function has " + std::to_string(x.grading.dims.size()) + " entries, expected " +
         std::to_string(cat.num_objects()));
  else {
    if (!x.grading.is_monotone(lat)) fail("dimension function is not monotone");
    for (int d : x.grading.dims)
      if (d < 0) fail("negative entry in dimension function");
  }
  for (const auto& [key, f] : x.boundaries()) {
    const auto [n, i, j] = key;
    std::ostringstream w;
    w << "boundary(" << n << ", " << i << ", " << j << ")";
    if (i < 0 || i >= static_cast<int>(x.num_cells(n)) || j < 0 || j >= static_cast<int>(x.num_cells(n - 1))) {
      fail(w.str() + ": no such cell");
      continue;
    }
    if (f.src != x.cells(n)[i] || f.tgt != x.cells(n - 1)[j] || f.coeffs.size() != cat.basis_size(f.src, f.tgt))
      fail(w.str() + ": span morphism between the wrong objects");
  }
  if (!rep.ok()) return rep;
  if (static_cast<int>(x.grading.dims.size()) == cat.num_objects()) {
    const int v = x.grading.total();
    for (int n : x.degrees())
      for (std::size_t i = 0; i < x.num_cells(n); ++i) {
        const int h = x.cells(n)[i];
        if (v - n > x.grading.dims[h])
          fail("cell " + std::to_string(i) + " in degree " + std::to_string(n) + " violates |V| - n <= |V^H| for class " +
               std::to_string(h));
      }
  }
  // d d = 0
  std::map<std::tuple<int, int, int>, SpanMorphism> dd;
  for (const auto& [k1, f] : x.boundaries()) {
    const auto [n, i, j] = k1;
    for (std::size_t k = 0; k < x.num_cells(n - 2); ++k) {
      auto it = x.boundaries().find(std::make_tuple(n - 1, j, static_cast<int>(k)));
      if (it == x.boundaries().end()) continue;
      const SpanMorphism c = cat.compose(f, it->second);
      auto key = std::make_tuple(n, i, static_cast<int>(k));
      auto jt = dd.find(key);
      if (jt == dd.end())
        dd.emplace(key, c);
      else
        jt->second += c;
    }
  }
  for (const auto& [key, f] : dd)
    if (!f.is_zero()) {
      const auto [n, i, k] = key;
      fail("d d != 0 from cell " + std::to_string(i) + " in degree " + std::to_string(n) + " to cell " +
           std::to_string(k) + " in degree " + std::to_string(n - 2));
    }
  return rep;
}

void require_valid(const CellComplex& x) {
  const auto rep = validate_complex(x);
  if (!rep.ok()) throw Error(ErrorKind::InvalidComplex, rep.violations.front(), x.name);
}

// ------------------------------------------------------------- (co)homology

FgAbGroup graded_at(const GradedAbGroups& g, int n) {
  auto it = g.find(n);
  return it == g.end() ? FgAbGroup::zero() : it->second;
}

bool same_graded(const GradedAbGroups& a, const GradedAbGroups& b) {
  for (const auto& [n, x] : a)
    if (!(x == graded_at(b, n))) return false;
  for (const auto& [n, x] : b)
    if (!(x == graded_at(a, n))) return false;
  return true;
}

FgAbGroup AbComplex::group(int n) const {
  auto it = groups.find(n);
  return it == groups.end() ? FgAbGroup::zero() : it->second;
}

AbMap AbComplex::map(int n) const {
  auto it = maps.find(n);
  if (it != maps.end()) return it->second;
  return AbMap::zero(group(n), group(cochain ? n + 1 : n - 1));
}

Subquotient AbComplex::homology_at(int n) const {
  return cochain ? homology_pair(map(n - 1), map(n)) : homology_pair(map(n + 1), map(n));
}

GradedAbGroups AbComplex::homology() const {
  GradedAbGroups out;
  for (const auto& [n, g] : groups) out[n] = homology_at(n).group();
  return out;
}

namespace {

AbComplex build_ab(const CellComplex& x, const MackeyFunctor& f, bool cochain) {
  if (f.num_objects() != x.category().num_objects() || f.category().group().table() != x.category().group().table())
    throw Error(ErrorKind::ObjectMismatch, "coefficients live on a different group than the complex");
  AbComplex out;
  out.cochain = cochain;
  std::map<int, std::vector<std::size_t>> offset;
  for (int n : x.degrees()) {
    std::vector<FgAbGroup> parts;
    std::size_t total = 0;
    for (int h : x.cells(n)) {
      offset[n].push_back(total);
      parts.push_back(f.value(h));
      total += f.value(h).ngens();
    }
    out.groups[n] = FgAbGroup::direct_sum(parts);
  }
  for (int n : x.degrees()) {
    if (!x.num_cells(n - 1)) continue;
    const FgAbGroup& hi = out.groups[n];
    const FgAbGroup& lo = out.groups[n - 1];
    IntMatrix m = cochain ? IntMatrix(hi.ngens(), lo.ngens()) : IntMatrix(lo.ngens(), hi.ngens());
    for (const auto& [key, d] : x.boundaries()) {
      const auto [deg, i, j] = key;
      if (deg != n) continue;
      const IntMatrix b = f.act(d);
      if (cochain)
        m.place(offset[n][i], offset[n - 1][j], b);
      else
        m.place(offset[n - 1][j], offset[n][i], b);
    }
    if (cochain)
      out.maps[n - 1] = AbMap(lo, hi, std::move(m));
    else
      out.maps[n] = AbMap(hi, lo, std::move(m));
  }
  return out;
}

}  // namespace

AbComplex chains_with(const CellComplex& x, const MackeyFunctor& s) {
  if (s.variance() != Variance::Covariant) throw Error(ErrorKind::ObjectMismatch, "homology needs covariant coefficients");
  return build_ab(x, s, false);
}

AbComplex cochains_with(const CellComplex& x, const MackeyFunctor& t) {
  if (t.variance() != Variance::Contravariant)
    throw Error(ErrorKind::ObjectMismatch, "cohomology needs contravariant coefficients");
  return build_ab(x, t, true);
}

GradedAbGroups homology(const CellComplex& x, const MackeyFunctor& s) { return chains_with(x, s).homology(); }
GradedAbGroups cohomology(const CellComplex& x, const MackeyFunctor& t) { return cochains_with(x, t).homology(); }

GradedAbGroups compute_with(const CellComplex& x, const MackeyFunctor& f) {
  return f.variance() == Variance::Covariant ? homology(x, f) : cohomology(x, f);
}

// ------------------------------------------------------------------ builders

namespace {

void require_same(const CellComplex& x, const CellComplex& y) {
  if (x.category_ptr() != y.category_ptr() && x.category().group().table() != y.category().group().table())
    throw Error(ErrorKind::ObjectMismatch, "complexes over different groups");
}

/// G/A x G/B with the diagonal action, for literal subgroups.
struct PairSet {
  GSet set;
  int nb = 0;
  std::vector<Orbit> orbits;
  std::vector<int> orbit_of;  // point -> orbit
};

class PairCache {
 public:
  explicit PairCache(const SubgroupLattice& lat) : lat_(lat) {}
  const PairSet& get(int a, int b) {
    auto key = std::make_pair(a, b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    PairSet p;
    p.set = GSet::product(GSet::cosets(lat_, a), GSet::cosets(lat_, b));
    p.nb = lat_.num_cosets(b);
    p.orbits = decompose_orbits(lat_, p.set);
    p.orbit_of.assign(p.set.size, -1);
    for (std::size_t o = 0; o < p.orbits.size(); ++o)
      for (int pt : p.orbits[o].points) p.orbit_of[pt] = static_cast<int>(o);
    return cache_.emplace(key, std::move(p)).first->second;
  }

 private:
  const SubgroupLattice& lat_;
  std::map<std::pair<int, int>, PairSet> cache_;
};

std::vector<Orbit> single_orbits(const SubgroupLattice& lat, int s) { return decompose_orbits(lat, GSet::cosets(lat, s)); }

/// f x id on G/H x G/K (side 0) or id x f on G/K x G/H (side 1), as span
/// morphisms between orbits of the products.
std::vector<std::vector<SpanMorphism>> times_identity(const OrbitCategory& cat, PairCache& pc, const SpanMorphism& f,
                                                      int k_lit, int side) {
  const SubgroupLattice& lat = cat.lattice();
  const int hs = cat.rep(f.src), ts = cat.rep(f.tgt);
  const PairSet& x = side == 0 ? pc.get(hs, k_lit) : pc.get(k_lit, hs);
  const PairSet& y = side == 0 ? pc.get(ts, k_lit) : pc.get(k_lit, ts);
  std::vector<std::vector<SpanMorphism>> out(x.orbits.size());
  for (std::size_t i = 0; i < x.orbits.size(); ++i)
    for (std::size_t j = 0; j < y.orbits.size(); ++j) out[i].push_back(cat.zero(x.orbits[i].cls, y.orbits[j].cls));
  const int nk = lat.num_cosets(k_lit);
  for (std::size_t u = 0; u < f.coeffs.size(); ++u) {
    if (sgn(f.coeffs[u]) == 0) continue;
    const Span& sp = cat.basis(f.src, f.tgt)[u];
    const GSet gj = GSet::cosets(lat, sp.J);
    const auto& reps = lat.coset_reps(sp.J);
    const GSet w = side == 0 ? GSet::product(gj, GSet::cosets(lat, k_lit)) : GSet::product(GSet::cosets(lat, k_lit), gj);
    std::vector<int> to_x(w.size), to_y(w.size);
    const int nj = gj.size;
    for (int p = 0; p < w.size; ++p) {
      const int a = side == 0 ? p / nk : p % nj;  // point of G/J
      const int b = side == 0 ? p % nk : p / nj;  // point of G/K
      const int l = lat.coset_index(hs, reps[a]);
      const int r = lat.coset_index(ts, cat.group().mul(reps[a], sp.g));
      const int nh = lat.num_cosets(hs), nt = lat.num_cosets(ts);
      to_x[p] = side == 0 ? l * nk + b : b * nh + l;
      to_y[p] = side == 0 ? r * nk + b : b * nt + r;
    }
    const auto m = gset_span_matrix(cat, w, to_x, to_y, x.orbits, x.set.size, y.orbits, y.set.size);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m[i].size(); ++j) out[i][j] += m[i][j].scaled(f.coeffs[u]);
  }
  return out;
}

/// Projection of G/A x G/B onto a factor, per orbit of the product.
std::vector<SpanMorphism> projection(const OrbitCategory& cat, const PairSet& p, int a_lit, int b_lit, int side) {
  const SubgroupLattice& lat = cat.lattice();
  std::vector<int> to_x(p.set.size), to_y(p.set.size);
  for (int pt = 0; pt < p.set.size; ++pt) {
    to_x[pt] = pt;
    to_y[pt] = side == 0 ? pt / p.nb : pt % p.nb;
  }
  const int target = side == 0 ? a_lit : b_lit;
  const auto m = gset_span_matrix(cat, p.set, to_x, to_y, p.orbits, p.set.size, single_orbits(lat, target),
                                  lat.num_cosets(target));
  std::vector<SpanMorphism> out;
  for (const auto& row : m) out.push_back(row.at(0));
  return out;
}

/// Shared core of join and internal product.
CellComplex product_cells(const CellComplex& x, const CellComplex& y, bool join_cells) {
  require_same(x, y);
  const OrbitCategory& cat = x.category();
  CellComplex out(x.category_ptr());
  out.grading = x.grading + y.grading;
  PairCache pc(cat.lattice());
  // map (p, i) of x -> index in out, same for y
  std::map<std::pair<int, int>, int> xi, yi;
  if (join_cells) {
    for (int p : x.degrees())
      for (std::size_t i = 0; i < x.num_cells(p); ++i) xi[{p, int(i)}] = out.add_cell(p, x.cells(p)[i]);
    for (int q : y.degrees())
      for (std::size_t j = 0; j < y.num_cells(q); ++j) yi[{q, int(j)}] = out.add_cell(q, y.cells(q)[j]);
    for (const auto& [k, f] : x.boundaries()) {
      const auto [n, i, j] = k;
      out.add_boundary(n, xi[{n, i}], xi[{n - 1, j}], f);
    }
    for (const auto& [k, f] : y.boundaries()) {
      const auto [n, i, j] = k;
      out.add_boundary(n, yi[{n, i}], yi[{n - 1, j}], f);
    }
  }
  const int shift = join_cells ? 1 : 0;
  // (p, i, q, j) -> first cell index of the orbits of G/H_i x G/K_j
  std::map<std::tuple<int, int, int, int>, int> first;
  for (int p : x.degrees())
    for (std::size_t i = 0; i < x.num_cells(p); ++i)
      for (int q : y.degrees())
        for (std::size_t j = 0; j < y.num_cells(q); ++j) {
          const PairSet& ps = pc.get(cat.rep(x.cells(p)[i]), cat.rep(y.cells(q)[j]));
          int idx = -1;
          for (const Orbit& o : ps.orbits) {
            const int c = out.add_cell(p + q + shift, o.cls);
            if (idx < 0) idx = c;
          }
          first[{p, int(i), q, int(j)}] = idx;
        }
  for (int p : x.degrees())
    for (std::size_t i = 0; i < x.num_cells(p); ++i)
      for (int q : y.degrees())
        for (std::size_t j = 0; j < y.num_cells(q); ++j) {
          const int hl = cat.rep(x.cells(p)[i]), kl = cat.rep(y.cells(q)[j]);
          const int n = p + q + shift;
          const int base = first[{p, int(i), q, int(j)}];
          // d x (x) y
          for (std::size_t i2 = 0; i2 < x.num_cells(p - 1); ++i2) {
            const SpanMorphism f = x.boundary(p, int(i), int(i2));
            if (f.is_zero()) continue;
            const auto m = times_identity(cat, pc, f, kl, 0);
            const int base2 = first[{p - 1, int(i2), q, int(j)}];
            for (std::size_t a = 0; a < m.size(); ++a)
              for (std::size_t b = 0; b < m[a].size(); ++b)
                if (!m[a][b].is_zero()) out.add_boundary(n, base + int(a), base2 + int(b), m[a][b]);
          }
          // (-1)^p x (x) d y
          const Int sign = (p % 2 == 0) ? 1 : -1;
          for (std::size_t j2 = 0; j2 < y.num_cells(q - 1); ++j2) {
            const SpanMorphism g = y.boundary(q, int(j), int(j2));
            if (g.is_zero()) continue;
            const auto m = times_identity(cat, pc, g, hl, 1);
            const int base2 = first[{p, int(i), q - 1, int(j2)}];
            for (std::size_t a = 0; a < m.size(); ++a)
              for (std::size_t b = 0; b < m[a].size(); ++b)
                if (!m[a][b].is_zero()) out.add_boundary(n, base + int(a), base2 + int(b), m[a][b].scaled(sign));
          }
          if (!join_cells) continue;
          // ends of the join segment: (-1)^(p+q) ([p = 0] y - [q = 0] x)
          const PairSet& ps = pc.get(hl, kl);
          const Int e = ((p + q) % 2 == 0) ? 1 : -1;
          if (p == 0) {
            const auto proj = projection(cat, ps, hl, kl, 1);
            for (std::size_t a = 0; a < proj.size(); ++a) out.add_boundary(n, base + int(a), yi[{q, int(j)}], proj[a].scaled(e));
          }
          if (q == 0) {
            const auto proj = projection(cat, ps, hl, kl, 0);
            for (std::size_t a = 0; a < proj.size(); ++a)
              out.add_boundary(n, base + int(a), xi[{p, int(i)}], proj[a].scaled(-e));
          }
        }
  return out;
}

void copy_cells(const CellComplex& from, CellComplex& to, std::map<std::pair<int, int>, int>& index) {
  for (int n : from.degrees())
    for (std::size_t i = 0; i < from.num_cells(n); ++i) index[{n, int(i)}] = to.add_cell(n, from.cells(n)[i]);
  for (const auto& [k, f] : from.boundaries()) {
    const auto [n, i, j] = k;
    to.add_boundary(n, index[{n, i}], index[{n - 1, j}], f);
  }
}

}  // namespace

CellComplex orbit_complex(std::shared_ptr<const OrbitCategory> cat, int cls) {
  CellComplex x(std::move(cat));
  x.add_cell(0, cls);
  x.name = "orbit(" + std::to_string(cls) + ")";
  return x;
}

CellComplex sphere_char(std::shared_ptr<const OrbitCategory> cat, int k) {
  const FiniteGroup& g = cat->group();
  const int n = g.order();
  Elem gen = -1;
  for (Elem a = 0; a < n && gen < 0; ++a)
    if (g.element_order(a) == n) gen = a;
  if (gen < 0) throw Error(ErrorKind::UnsupportedGroup, "sphere_char needs a cyclic group");
  std::vector<Elem> pw(n);
  for (int i = 1; i < n; ++i) pw[i] = g.mul(pw[i - 1], gen);
  const int kk = ((k % n) + n) % n;
  Subgroup stab;
  for (int m = 0; m < n; ++m)
    if ((m * kk) % n == 0) stab.push_back(pw[m]);
  std::sort(stab.begin(), stab.end());
  const SubgroupLattice& lat = cat->lattice();
  const int h_lit = lat.index_of(stab);
  const int h = lat.class_of(h_lit);
  CellComplex x(cat);
  x.name = "sphere_char(" + std::to_string(k) + ")";
  if ((2 * kk) % n == 0) {
    // real character: S^0
    if (kk == 0) {
      x.add_cell(0, lat.top_class());
      x.add_cell(0, lat.top_class());
    } else {
      x.add_cell(0, h);
    }
    return x;
  }
  const int step = std::gcd(n, kk);
  int m = 0;
  while ((m * kk) % n != step) ++m;
  x.add_cell(0, h);
  x.add_cell(1, h);
  x.add_boundary(1, 0, 0, cat->make_span(h_lit, h_lit, h_lit, 0, pw[m]) - cat->identity(h));
  return x;
}

CellComplex trivial_sphere(std::shared_ptr<const OrbitCategory> cat, int n) {
  if (n < 0) throw Error(ErrorKind::Usage, "trivial_sphere needs n >= 0");
  const int top = cat->lattice().top_class();
  CellComplex x(std::move(cat));
  x.add_cell(0, top);
  x.add_cell(n, top);
  x.name = "trivial_sphere(" + std::to_string(n) + ")";
  return x;
}

CellComplex join(const CellComplex& x, const CellComplex& y) {
  CellComplex out = product_cells(x, y, true);
  out.name = "join(" + x.name + "," + y.name + ")";
  return out;
}

CellComplex suspension(const CellComplex& x) {
  CellComplex out = join(x, trivial_sphere(x.category_ptr(), 0));
  out.name = "suspension(" + x.name + ")";
  return out;
}

CellComplex internal_product(const CellComplex& x, const CellComplex& y) {
  CellComplex out = product_cells(x, y, false);
  out.name = "product(" + x.name + "," + y.name + ")";
  return out;
}

std::map<int, std::vector<ProductCell>> product_cell_table(const CellComplex& x, const CellComplex& y) {
  require_same(x, y);
  const OrbitCategory& cat = x.category();
  const SubgroupLattice& lat = cat.lattice();
  PairCache pc(lat);
  std::map<int, std::vector<ProductCell>> out;
  for (int p : x.degrees())
    for (std::size_t i = 0; i < x.num_cells(p); ++i)
      for (int q : y.degrees())
        for (std::size_t j = 0; j < y.num_cells(q); ++j) {
          const int hl = cat.rep(x.cells(p)[i]), kl = cat.rep(y.cells(q)[j]);
          const PairSet& ps = pc.get(hl, kl);
          const PairSet& sw = pc.get(kl, hl);
          const auto left = projection(cat, ps, hl, kl, 0);
          const auto right = projection(cat, ps, hl, kl, 1);
          std::vector<int> to_x(ps.set.size), to_y(ps.set.size);
          for (int pt = 0; pt < ps.set.size; ++pt) {
            to_x[pt] = pt;
            to_y[pt] = (pt % ps.nb) * sw.nb + pt / ps.nb;
          }
          const auto swap = gset_span_matrix(cat, ps.set, to_x, to_y, ps.orbits, ps.set.size, sw.orbits, sw.set.size);
          for (std::size_t o = 0; o < ps.orbits.size(); ++o)
            out[p + q].push_back({p, int(i), q, int(j), int(o), left[o], right[o], swap[o]});
        }
  return out;
}

CellComplex external_product(const CellComplex& x, const CellComplex& y, const ProductContext& ctx) {
  if (!x.grading.is_zero() || !y.grading.is_zero())
    throw Error(ErrorKind::InvalidComplex, "external products are formed for ordinary (V = 0) structures");
  CellComplex out(ctx.product_ptr());
  std::map<std::tuple<int, int, int, int>, int> idx;
  for (int p : x.degrees())
    for (std::size_t i = 0; i < x.num_cells(p); ++i)
      for (int q : y.degrees())
        for (std::size_t j = 0; j < y.num_cells(q); ++j)
          idx[{p, int(i), q, int(j)}] = out.add_cell(p + q, ctx.product_object(x.cells(p)[i], y.cells(q)[j]));
  for (const auto& [key, f] : x.boundaries()) {
    const auto [p, i, i2] = key;
    for (int q : y.degrees())
      for (std::size_t j = 0; j < y.num_cells(q); ++j) {
        const SpanMorphism id = ctx.right().identity(y.cells(q)[j]);
        out.add_boundary(p + q, idx[{p, i, q, int(j)}], idx[{p - 1, i2, q, int(j)}], ctx.product_span(f, id));
      }
  }
  for (const auto& [key, g] : y.boundaries()) {
    const auto [q, j, j2] = key;
    for (int p : x.degrees())
      for (std::size_t i = 0; i < x.num_cells(p); ++i) {
        const SpanMorphism id = ctx.left().identity(x.cells(p)[i]);
        const Int sign = (p % 2 == 0) ? 1 : -1;
        out.add_boundary(p + q, idx[{p, int(i), q, j}], idx[{p, int(i), q - 1, j2}], ctx.product_span(id, g).scaled(sign));
      }
  }
  out.name = "external_product(" + x.name + "," + y.name + ")";
  return out;
}

CellComplex disjoint_union(const CellComplex& x, const CellComplex& y) {
  require_same(x, y);
  CellComplex out(x.category_ptr());
  if (x.grading != y.grading) throw Error(ErrorKind::InvalidComplex, "disjoint union of complexes with different V");
  out.grading = x.grading;
  std::map<std::pair<int, int>, int> a, b;
  copy_cells(x, out, a);
  copy_cells(y, out, b);
  out.name = "disjoint_union(" + x.name + "," + y.name + ")";
  return out;
}

CellComplex wedge(const CellComplex& x, const CellComplex& y) {
  require_same(x, y);
  const int top = x.category().lattice().top_class();
  auto base = [&](const CellComplex& c) {
    const auto& v = c.cells(0);
    auto it = std::find(v.begin(), v.end(), top);
    if (it == v.end()) throw Error(ErrorKind::InvalidComplex, "wedge needs a fixed 0-cell in both complexes");
    return static_cast<int>(it - v.begin());
  };
  const int bx = base(x), by = base(y);
  CellComplex out(x.category_ptr());
  out.grading = x.grading;
  std::map<std::pair<int, int>, int> a;
  copy_cells(x, out, a);
  std::map<std::pair<int, int>, int> b;
  for (int n : y.degrees())
    for (std::size_t i = 0; i < y.num_cells(n); ++i)
      b[{n, int(i)}] = (n == 0 && int(i) == by) ? a[{0, bx}] : out.add_cell(n, y.cells(n)[i]);
  for (const auto& [k, f] : y.boundaries()) {
    const auto [n, i, j] = k;
    out.add_boundary(n, b[{n, i}], b[{n - 1, j}], f);
  }
  out.name = "wedge(" + x.name + "," + y.name + ")";
  return out;
}

CellComplex induced_complex(const CellComplex& x, const Induction& ind) {
  if (!x.grading.is_zero()) throw Error(ErrorKind::InvalidComplex, "induction is formed for ordinary (V = 0) structures");
  CellComplex out(ind.ambient_ptr());
  for (int n : x.degrees())
    for (int h : x.cells(n)) out.add_cell(n, ind.object(h));
  for (const auto& [k, f] : x.boundaries()) {
    const auto [n, i, j] = k;
    out.add_boundary(n, i, j, ind.map(f));
  }
  out.name = "induced(" + x.name + ")";
  return out;
}

CellComplex restrict_complex(const CellComplex& x, const Induction& ind) {
  const OrbitCategory& g = ind.ambient();
  const OrbitCategory& k = ind.sub();
  const SubgroupLattice& lat = g.lattice();
  const auto& embed = ind.embed();
  auto kset = [&](int s) {
    GSet w;
    w.size = lat.num_cosets(s);
    const auto& reps = lat.coset_reps(s);
    w.action.assign(k.group().order(), std::vector<int>(w.size));
    for (Elem a = 0; a < k.group().order(); ++a)
      for (int p = 0; p < w.size; ++p) w.action[a][p] = lat.coset_index(s, g.group().mul(embed[a], reps[p]));
    return w;
  };
  CellComplex out(ind.sub_ptr());
  out.dual = x.dual;
  for (int l = 0; l < k.num_objects(); ++l) out.grading.dims[l] = x.grading.dims[ind.object(l)];
  std::map<std::pair<int, int>, int> first;
  std::map<int, std::vector<Orbit>> orbits;  // by literal subgroup
  auto orbits_of = [&](int s) -> const std::vector<Orbit>& {
    auto it = orbits.find(s);
    if (it == orbits.end()) it = orbits.emplace(s, decompose_orbits(k.lattice(), kset(s))).first;
    return it->second;
  };
  for (int n : x.degrees())
    for (std::size_t i = 0; i < x.num_cells(n); ++i) {
      int idx = -1;
      for (const Orbit& o : orbits_of(g.rep(x.cells(n)[i]))) {
        const int c = out.add_cell(n, o.cls);
        if (idx < 0) idx = c;
      }
      first[{n, int(i)}] = idx;
    }
  for (const auto& [key, f] : x.boundaries()) {
    const auto [n, i, j] = key;
    const int hs = g.rep(f.src), ts = g.rep(f.tgt);
    for (std::size_t u = 0; u < f.coeffs.size(); ++u) {
      if (sgn(f.coeffs[u]) == 0) continue;
      const Span& sp = g.basis(f.src, f.tgt)[u];
      const GSet w = kset(sp.J);
      const auto& reps = lat.coset_reps(sp.J);
      std::vector<int> to_x(w.size), to_y(w.size);
      for (int p = 0; p < w.size; ++p) {
        to_x[p] = lat.coset_index(hs, reps[p]);
        to_y[p] = lat.coset_index(ts, g.group().mul(reps[p], sp.g));
      }
      const auto m = gset_span_matrix(k, w, to_x, to_y, orbits_of(hs), lat.num_cosets(hs), orbits_of(ts), lat.num_cosets(ts));
      for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < m[a].size(); ++b)
          if (!m[a][b].is_zero())
            out.add_boundary(n, first[{n, i}] + int(a), first[{n - 1, j}] + int(b), m[a][b].scaled(f.coeffs[u]));
    }
  }
  out.name = "restrict(" + x.name + ")";
  return out;
}

CellComplex underlying_complex(const CellComplex& x) {
  const auto ind = subgroup_induction(x.category_ptr(), x.category().rep(x.category().lattice().trivial_class()));
  CellComplex out = restrict_complex(x, *ind);
  out.name = "underlying(" + x.name + ")";
  return out;
}

CellComplex fixed_point_complex(const CellComplex& x, int k_lit, const QuotientCategory& q) {
  const OrbitCategory& g = x.category();
  const SubgroupLattice& lat = g.lattice();
  if (!lat.is_normal(k_lit)) throw Error(ErrorKind::NotNormal, "fixed points need a normal subgroup");
  CellComplex out(q.cat);
  out.dual = x.dual;
  for (int h = 0; h < q.cat->num_objects(); ++h) out.grading.dims[h] = x.grading.dims[q.object[h]];
  std::map<std::pair<int, int>, int> idx;
  for (int n : x.degrees())
    for (std::size_t i = 0; i < x.num_cells(n); ++i) {
      const int h = x.cells(n)[i];
      if (lat.is_subset(k_lit, g.rep(h))) idx[{n, int(i)}] = out.add_cell(n, quotient_object(g, q, h));
    }
  for (const auto& [key, f] : x.boundaries()) {
    const auto [n, i, j] = key;
    auto a = idx.find({n, i});
    auto b = idx.find({n - 1, j});
    if (a == idx.end() || b == idx.end()) continue;
    const SpanMorphism qf = quotient_span(g, q, k_lit, f);
    if (!qf.is_zero()) out.add_boundary(n, a->second, b->second, qf);
  }
  out.name = "fixed(" + x.name + ")";
  return out;
}

CellComplex dualize(const CellComplex& x, const DimensionFunction& v) {
  if (!x.grading.is_zero() || x.dual) throw Error(ErrorKind::InvalidComplex, "dualize expects an ordinary structure");
  const OrbitCategory& cat = x.category();
  if (static_cast<int>(v.dims.size()) != cat.num_objects())
    throw Error(ErrorKind::InvalidComplex, "dimension function has the wrong number of entries");
  CellComplex out(x.category_ptr());
  out.grading = v;
  out.dual = true;
  const int top = v.total();
  for (int n : x.degrees())
    for (int h : x.cells(n)) out.add_cell(top - n, h);
  for (const auto& [key, f] : x.boundaries()) {
    const auto [n, i, j] = key;
    out.add_boundary(top - n + 1, j, i, cat.transpose(f));
  }
  out.name = "dual(" + x.name + ")";
  return out;
}

// ------------------------------------------------------------------ library

namespace {

struct Library {
  std::shared_ptr<const OrbitCategory> cat;
  CellComplex x;
  int top, free;
  Elem gen;

  Library(std::shared_ptr<const OrbitCategory> c, const std::string& name) : cat(c), x(c) {
    top = cat->lattice().top_class();
    free = cat->lattice().trivial_class();
    gen = -1;
    for (Elem a = 0; a < cat->group().order() && gen < 0; ++a)
      if (cat->group().element_order(a) == cat->group().order()) gen = a;
    x.name = name;
  }
  int rep(int h) const { return cat->rep(h); }
  /// G/H -> G/K for H <= K
  SpanMorphism proj(int h, int k) const { return cat->make_span(rep(h), rep(k), rep(h), 0, 0); }
  /// the transfer G/K -> G/H
  SpanMorphism tr(int k, int h) const { return cat->transpose(proj(h, k)); }
  /// right translation by a on G/H
  SpanMorphism conj(int h, Elem a) const { return cat->make_span(rep(h), rep(h), rep(h), 0, a); }
  SpanMorphism id(int h) const { return cat->identity(h); }
  void dims(std::initializer_list<int> d) {
    x.grading.dims.assign(d);
    x.dual = true;
  }
};

const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {"circle",   "sphere2",        "torus",          "S_sigma",
                                             "S_2sigma", "S_lambda",       "torus_z2",       "S_sigma_dual",
                                             "S_2sigma_dual", "S_lambda_dual", "torus_z2_dual"};
  return n;
}

bool starts_with(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

int required_order(const std::string& name) {
  if (starts_with(name, "S_lambda")) return 3;
  if (starts_with(name, "S_") || starts_with(name, "torus_z2")) return 2;
  return 0;
}

}  // namespace

std::vector<std::string> library_names() { return names(); }

std::shared_ptr<const FiniteGroup> library_group(const std::string& name) {
  if (std::find(names().begin(), names().end(), name) == names().end())
    throw Error(ErrorKind::UnknownExample, "no library structure named '" + name + "'");
  const int order = required_order(name);
  if (order == 0) return nullptr;
  return std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(order));
}

std::string ordinary_of(const std::string& dual_name) {
  const std::string suffix = "_dual";
  if (dual_name.size() <= suffix.size() || dual_name.substr(dual_name.size() - suffix.size()) != suffix)
    throw Error(ErrorKind::UnknownExample, "'" + dual_name + "' is not a dual structure");
  return dual_name.substr(0, dual_name.size() - suffix.size());
}

CellComplex library_complex(const std::string& name, std::shared_ptr<const OrbitCategory> cat) {
  if (std::find(names().begin(), names().end(), name) == names().end())
    throw Error(ErrorKind::UnknownExample, "no library structure named '" + name + "'");
  const int order = required_order(name);
  if (order != 0) {
    const FiniteGroup& g = cat->group();
    bool cyclic = false;
    for (Elem a = 0; a < g.order(); ++a) cyclic = cyclic || g.element_order(a) == g.order();
    if (g.order() != order || !cyclic)
      throw Error(ErrorKind::UnsupportedGroup, name + " lives on the cyclic group of order " + std::to_string(order));
  }
  Library L(cat, name);
  CellComplex& x = L.x;
  const int T = L.top, F = L.free;
  const Elem g = L.gen;
  if (name == "circle") {
    x.add_cell(0, T), x.add_cell(0, T), x.add_cell(1, T), x.add_cell(1, T);
    x.add_boundary(1, 0, 1, L.id(T));
    x.add_boundary(1, 0, 0, -L.id(T));
    x.add_boundary(1, 1, 0, L.id(T));
    x.add_boundary(1, 1, 1, -L.id(T));
  } else if (name == "sphere2") {
    x.add_cell(0, T), x.add_cell(0, T), x.add_cell(1, T), x.add_cell(1, T), x.add_cell(2, T), x.add_cell(2, T);
    for (int m = 0; m < 2; ++m) {
      x.add_boundary(1, m, 0, L.id(T));
      x.add_boundary(1, m, 1, -L.id(T));
    }
    x.add_boundary(2, 0, 0, L.id(T));
    x.add_boundary(2, 0, 1, -L.id(T));
    x.add_boundary(2, 1, 1, L.id(T));
    x.add_boundary(2, 1, 0, -L.id(T));
  } else if (name == "torus") {
    x.add_cell(0, T), x.add_cell(1, T), x.add_cell(1, T), x.add_cell(2, T);
    // the square a b a^-1 b^-1: every incidence cancels
  } else if (name == "S_sigma") {
    x.add_cell(0, T), x.add_cell(0, T), x.add_cell(1, F);
    x.add_boundary(1, 0, 0, L.proj(F, T));
    x.add_boundary(1, 0, 1, -L.proj(F, T));
  } else if (name == "S_2sigma" || name == "S_lambda") {
    x.add_cell(0, T), x.add_cell(0, T), x.add_cell(1, F), x.add_cell(2, F);
    x.add_boundary(1, 0, 0, L.proj(F, T));
    x.add_boundary(1, 0, 1, -L.proj(F, T));
    x.add_boundary(2, 0, 0, L.id(F) - L.conj(F, g));
  } else if (name == "torus_z2") {
    for (int i = 0; i < 4; ++i) x.add_cell(0, T);  // P00 P10 P01 P11
    for (int i = 0; i < 4; ++i) x.add_cell(1, F);  // a b c d
    x.add_cell(2, F), x.add_cell(2, F);            // Q1 Q2
    const SpanMorphism p = L.proj(F, T);
    const int ends[4][2] = {{0, 1}, {2, 3}, {0, 2}, {1, 3}};
    for (int e = 0; e < 4; ++e) {
      x.add_boundary(1, e, ends[e][1], p);
      x.add_boundary(1, e, ends[e][0], -p);
    }
    x.add_boundary(2, 0, 0, L.id(F));
    x.add_boundary(2, 0, 3, L.id(F));
    x.add_boundary(2, 0, 1, -L.id(F));
    x.add_boundary(2, 0, 2, -L.id(F));
    x.add_boundary(2, 1, 0, -L.conj(F, g));
    x.add_boundary(2, 1, 2, L.id(F));
    x.add_boundary(2, 1, 1, L.conj(F, g));
    x.add_boundary(2, 1, 3, -L.id(F));
  } else if (name == "S_sigma_dual") {
    L.dims({1, 0});
    x.add_cell(0, F), x.add_cell(1, T), x.add_cell(1, T);
    x.add_boundary(1, 0, 0, L.tr(T, F));
    x.add_boundary(1, 1, 0, -L.tr(T, F));
  } else if (name == "S_2sigma_dual" || name == "S_lambda_dual") {
    L.dims({2, 0});
    x.add_cell(0, F), x.add_cell(1, F), x.add_cell(2, T), x.add_cell(2, T);
    x.add_boundary(1, 0, 0, L.id(F) - L.conj(F, g));
    x.add_boundary(2, 0, 0, L.tr(T, F));
    x.add_boundary(2, 1, 0, -L.tr(T, F));
  } else if (name == "torus_z2_dual") {
    L.dims({2, 0});
    x.add_cell(0, F), x.add_cell(0, F);            // q1 q2
    for (int i = 0; i < 4; ++i) x.add_cell(1, F);  // a* b* c* d*
    for (int i = 0; i < 4; ++i) x.add_cell(2, T);  // P00* P10* P01* P11*
    const SpanMorphism one = L.id(F), gq = L.conj(F, g);
    x.add_boundary(1, 0, 0, one), x.add_boundary(1, 0, 1, -gq);
    x.add_boundary(1, 1, 0, -one), x.add_boundary(1, 1, 1, gq);
    x.add_boundary(1, 2, 0, -one), x.add_boundary(1, 2, 1, one);
    x.add_boundary(1, 3, 0, one), x.add_boundary(1, 3, 1, -one);
    const SpanMorphism t = L.tr(T, F);
    x.add_boundary(2, 0, 0, -t), x.add_boundary(2, 0, 2, -t);
    x.add_boundary(2, 1, 0, t), x.add_boundary(2, 1, 3, -t);
    x.add_boundary(2, 2, 1, -t), x.add_boundary(2, 2, 2, t);
    x.add_boundary(2, 3, 1, t), x.add_boundary(2, 3, 3, t);
  }
  return x;
}

// ------------------------------------------------------------------- parser

namespace {

struct Node {
  std::string head;
  bool number = false;
  long value = 0;
  bool call = false;
  std::vector<Node> args;
  std::size_t pos = 0;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Node parse() {
    Node n = term();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg + " at column " + std::to_string(i_ + 1), s_);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  Node term() {
    skip();
    Node n;
    n.pos = i_ + 1;
    if (i_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      std::size_t j = i_ + (c == '-' ? 1 : 0);
      if (j >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[j]))) fail("expected a number");
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      n.number = true;
      n.value = std::stol(s_.substr(i_, j - i_));
      i_ = j;
      return n;
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail("expected a constructor name");
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
    n.head = s_.substr(i_, j - i_);
    i_ = j;
    skip();
    if (i_ < s_.size() && s_[i_] == '(') {
      n.call = true;
      ++i_;
      skip();
      if (i_ < s_.size() && s_[i_] == ')') {
        ++i_;
        return n;
      }
      while (true) {
        n.args.push_back(term());
        skip();
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        if (i_ < s_.size() && s_[i_] == ')') {
          ++i_;
          break;
        }
        fail("expected ',' or ')'");
      }
    }
    return n;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

[[noreturn]] void bad(const Node& n, const std::string& msg) {
  throw Error(ErrorKind::Parse, msg + " at column " + std::to_string(n.pos));
}

long number(const Node& n) {
  if (!n.number) bad(n, "expected a number");
  return n.value;
}

int subgroup_class(const Node& n, const OrbitCategory& cat) {
  if (!n.number && !n.call) {
    if (n.head == "e") return cat.lattice().trivial_class();
    if (n.head == "G") return cat.lattice().top_class();
  }
  const long v = number(n);
  if (v < 0 || v >= cat.num_objects())
    throw Error(ErrorKind::InvalidSubgroup, "subgroup class " + std::to_string(v) + " out of range at column " +
                                                std::to_string(n.pos));
  return static_cast<int>(v);
}

CellComplex eval(const Node& n, std::shared_ptr<const OrbitCategory> cat) {
  if (n.number) bad(n, "expected a complex, found a number");
  auto arity = [&](std::size_t k) {
    if (n.args.size() != k)
      bad(n, n.head + " takes " + std::to_string(k) + " argument" + (k == 1 ? "" : "s"));
  };
  const std::string& h = n.head;
  if (!n.call) {
    if (h == "point") return orbit_complex(cat, cat->lattice().top_class());
    return library_complex(h, cat);
  }
  if (h == "orbit") {
    arity(1);
    return orbit_complex(cat, subgroup_class(n.args[0], *cat));
  }
  if (h == "sphere_char") {
    arity(1);
    return sphere_char(cat, static_cast<int>(number(n.args[0])));
  }
  if (h == "trivial_sphere") {
    arity(1);
    return trivial_sphere(cat, static_cast<int>(number(n.args[0])));
  }
  if (h == "suspension" || h == "underlying") {
    arity(1);
    const CellComplex x = eval(n.args[0], cat);
    return h == "suspension" ? suspension(x) : underlying_complex(x);
  }
  if (h == "join" || h == "product" || h == "wedge" || h == "disjoint_union" || h == "external_product") {
    arity(2);
    const CellComplex x = eval(n.args[0], cat);
    const CellComplex y = eval(n.args[1], cat);
    if (h == "join") return join(x, y);
    if (h == "product") return internal_product(x, y);
    if (h == "wedge") return wedge(x, y);
    if (h == "disjoint_union") return disjoint_union(x, y);
    ProductContext ctx(x.category_ptr(), y.category_ptr());
    return external_product(x, y, ctx);
  }
  if (h == "induced" || h == "restrict" || h == "fixed") {
    arity(2);
    const int k = subgroup_class(n.args[0], *cat);
    const int k_lit = cat->rep(k);
    if (h == "fixed") {
      const CellComplex x = eval(n.args[1], cat);
      return fixed_point_complex(x, k_lit, quotient_category(*cat, k_lit));
    }
    const auto ind = subgroup_induction(cat, k_lit);
    if (h == "induced") return induced_complex(eval(n.args[1], ind->sub_ptr()), *ind);
    return restrict_complex(eval(n.args[1], cat), *ind);
  }
  bad(n, "unknown constructor '" + h + "'");
}

}  // namespace

CellComplex build(const std::string& expr, std::shared_ptr<const OrbitCategory> cat) {
  Parser p(expr);
  CellComplex x = eval(p.parse(), std::move(cat));
  x.name = expr;
  return x;
}

// -------------------------------------------------------------------- checks

bool GradedComparison::ok() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const auto& kv) { return kv.second.first == kv.second.second; });
}

GradedComparison compare_graded(const GradedAbGroups& lhs, const GradedAbGroups& rhs, int lo, int hi) {
  GradedComparison out;
  for (const auto& [n, g] : lhs) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  for (const auto& [n, g] : rhs) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  for (int n = lo; n <= hi; ++n) out.degrees[n] = {graded_at(lhs, n), graded_at(rhs, n)};
  return out;
}

GradedComparison wirthmuller_check(const CellComplex& x, const Induction& ind, const MackeyFunctor& s) {
  const CellComplex gx = induced_complex(x, ind);
  const MackeyPtr sk = restrict_group(s, ind);
  return compare_graded(compute_with(gx, s), compute_with(x, *sk), x.min_degree() - 1, x.max_degree() + 1);
}

FixedRestrictionReport fixed_restriction_check(const CellComplex& x, int k_lit, const MackeyFunctor& s) {
  const OrbitCategory& g = x.category();
  const SubgroupLattice& lat = g.lattice();
  const QuotientCategory q = quotient_category(g, k_lit);
  const FixedQuotient fq = fixed_quotient(s, k_lit, q);
  const NatTransf pi = quotient_map(std::make_shared<const MackeyFunctor>(s), fq.sub);
  const bool co = s.variance() == Variance::Covariant;
  FixedRestrictionReport rep;
  auto kept = [&](int n, int i) { return lat.is_subset(k_lit, g.rep(x.cells(n)[i])); };
  for (const auto& [key, f] : x.boundaries()) {
    const auto [n, i, j] = key;
    // the square runs from cell `from` to cell `to`
    const int from_deg = co ? n : n - 1, from = co ? i : j;
    const int to_deg = co ? n - 1 : n, to = co ? j : i;
    if (!kept(to_deg, to)) continue;
    const int th = x.cells(to_deg)[to], fh = x.cells(from_deg)[from];
    const FgAbGroup& target = fq.quotient->value(quotient_object(g, q, th));
    IntMatrix lhs = pi.components[th] * s.act(f);
    IntMatrix rhs(lhs.rows(), lhs.cols());
    if (kept(from_deg, from)) rhs = fq.quotient->act(quotient_span(g, q, k_lit, f)) * pi.components[fh];
    IntMatrix diff = lhs - rhs;
    reduce_rows(diff, target.orders());
    if (!diff.is_zero())
      rep.violations.push_back("square at boundary(" + std::to_string(n) + ", " + std::to_string(i) + ", " +
                               std::to_string(j) + ") does not commute");
  }
  rep.ambient = compute_with(x, s);
  rep.fixed = compute_with(fixed_point_complex(x, k_lit, q), *fq.quotient);
  return rep;
}

std::vector<Int> fixed_euler_characteristics(const CellComplex& x) {
  const OrbitCategory& cat = x.category();
  const SubgroupLattice& lat = cat.lattice();
  const FiniteGroup& g = cat.group();
  std::vector<Int> out(cat.num_objects());
  const int v = x.grading.total();
  for (int k = 0; k < cat.num_objects(); ++k) {
    const int ks = cat.rep(k);
    for (int n : x.degrees())
      for (int h : x.cells(n)) {
        // |(G/H)^K| = number of cosets aH with a^-1 K a <= H
        long fixed = 0;
        for (Elem a : lat.coset_reps(cat.rep(h)))
          if (lat.is_subset(lat.conjugate(g.inv(a), ks), cat.rep(h))) ++fixed;
        const int dim = x.grading.dims[k] - v + n;
        out[k] += (dim % 2 == 0 ? 1 : -1) * fixed;
      }
  }
  return out;
}

}  // namespace equihom
