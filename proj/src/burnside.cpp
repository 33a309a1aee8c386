#include "equihom/burnside.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

#include "equihom/error.hpp"

namespace equihom {

// ------------------------------------------------------------- SpanMorphism

bool SpanMorphism::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Int& x) { return sgn(x) == 0; });
}

SpanMorphism& SpanMorphism::operator+=(const SpanMorphism& rhs) {
  if (src != rhs.src || tgt != rhs.tgt || coeffs.size() != rhs.coeffs.size())
    throw Error(ErrorKind::ObjectMismatch, "adding span morphisms between different objects");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += rhs.coeffs[i];
  return *this;
}

SpanMorphism SpanMorphism::operator+(const SpanMorphism& rhs) const {
  SpanMorphism out = *this;
  out += rhs;
  return out;
}

SpanMorphism SpanMorphism::operator-(const SpanMorphism& rhs) const { return *this + (-rhs); }

SpanMorphism SpanMorphism::operator-() const { return scaled(Int(-1)); }

SpanMorphism SpanMorphism::scaled(const Int& c) const {
  SpanMorphism out = *this;
  for (auto& x : out.coeffs) x *= c;
  return out;
}

// ------------------------------------------------------------ OrbitCategory

OrbitCategory::OrbitCategory(std::shared_ptr<const SubgroupLattice> lattice)
    : lat_(std::move(lattice)), n_(lat_->num_classes()) {
  const SubgroupLattice& lat = *lat_;
  basis_.resize(n_ * n_);
  for (int h = 0; h < n_; ++h) {
    const int hs = lat.rep(h);
    std::vector<int> inner;
    for (int j = 0; j < lat.num_subgroups(); ++j)
      if (lat.is_subset(j, hs)) inner.push_back(j);
    for (int k = 0; k < n_; ++k) {
      const int ks = lat.rep(k);
      std::set<Span> found;
      for (int j : inner) {
        for (Elem g : lat.coset_reps(ks)) {
          // J fixes gK iff g^-1 J g <= K
          const int c = lat.conjugate(group().inv(g), j);
          if (!lat.is_subset(c, ks)) continue;
          found.insert(canonical(h, k, j, g));
        }
      }
      basis_[h * n_ + k].assign(found.begin(), found.end());
    }
  }
  transpose_.resize(n_ * n_);
  for (int h = 0; h < n_; ++h)
    for (int k = 0; k < n_; ++k) {
      auto& t = transpose_[h * n_ + k];
      for (const Span& s : basis(h, k)) {
        const Ref r = locate(lat.rep(k), lat.rep(h), s.J, s.g, 0);
        t.push_back(r.index);
      }
    }
  // J < M with nothing in between
  auto maximal_in = [&](int j, int m) {
    if (j == m) return true;
    if (!lat.is_subset(j, m)) return false;
    for (int x = 0; x < lat.num_subgroups(); ++x)
      if (x != j && x != m && lat.is_subset(j, x) && lat.is_subset(x, m)) return false;
    return true;
  };
  for (int h = 0; h < n_; ++h)
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < static_cast<int>(basis_size(h, k)); ++i) {
        const Span& s = basis(h, k)[i];
        const int hs = lat.rep(h), ks = lat.rep(k);
        const int moved = lat.conjugate(group().inv(s.g), s.J);
        const bool restriction = lat.size(moved) == lat.size(ks) && maximal_in(s.J, hs);
        const bool transfer = s.J == hs && maximal_in(moved, ks);
        if (restriction || transfer) generators_.push_back({h, k, i});
      }
}

std::shared_ptr<const OrbitCategory> OrbitCategory::create(std::shared_ptr<const FiniteGroup> g) {
  return std::make_shared<const OrbitCategory>(std::make_shared<const SubgroupLattice>(std::move(g)));
}

Span OrbitCategory::canonical(int h, int k, int J, Elem g) const {
  const SubgroupLattice& lat = *lat_;
  const int ks = lat.rep(k);
  Span best{J, lat.coset_min(ks, g)};
  for (Elem x : lat.subgroup(lat.rep(h))) {
    const Span cand{lat.conjugate(x, J), lat.coset_min(ks, group().mul(x, g))};
    if (cand < best) best = cand;
  }
  return best;
}

int OrbitCategory::basis_index(int h, int k, const Span& s) const {
  const auto& b = basis(h, k);
  auto it = std::lower_bound(b.begin(), b.end(), s);
  if (it == b.end() || *it != s) throw std::logic_error("basis_index: span is not canonical");
  return static_cast<int>(it - b.begin());
}

OrbitCategory::Ref OrbitCategory::locate(int h_lit, int k_lit, int J, Elem a, Elem b) const {
  const SubgroupLattice& lat = *lat_;
  const FiniteGroup& g = group();
  const int h = lat.class_of(h_lit), k = lat.class_of(k_lit);
  const Elem a2 = g.mul(a, g.inv(lat.conjugator(h_lit)));
  const Elem b2 = g.mul(b, g.inv(lat.conjugator(k_lit)));
  const Elem ainv = g.inv(a2);
  const int j2 = lat.conjugate(ainv, J);
  const Elem g2 = g.mul(ainv, b2);
  if (!lat.is_subset(j2, lat.rep(h)) || !lat.is_subset(lat.conjugate(g.inv(g2), j2), lat.rep(k)))
    throw Error(ErrorKind::ObjectMismatch, "span legs are not G-maps");
  return Ref{h, k, basis_index(h, k, canonical(h, k, j2, g2))};
}

SpanMorphism OrbitCategory::make_span(int h_lit, int k_lit, int J, Elem a, Elem b) const {
  return from_ref(locate(h_lit, k_lit, J, a, b));
}

int OrbitCategory::identity_index(int h) const { return basis_index(h, h, Span{rep(h), 0}); }

SpanMorphism OrbitCategory::identity(int h) const { return basis_morphism(h, h, identity_index(h)); }

SpanMorphism OrbitCategory::basis_morphism(int h, int k, int i) const {
  SpanMorphism m = zero(h, k);
  m.coeffs[i] = 1;
  return m;
}

IntVector OrbitCategory::compute_composite(int h, int k, int m, int i, int j) const {
  const SubgroupLattice& lat = *lat_;
  const FiniteGroup& G = group();
  const Span f = basis(h, k)[i];
  const Span s = basis(k, m)[j];
  const int ks = lat.rep(k);
  // Orbits of G/J x_{G/K} G/J' correspond to J-orbits of the cosets bJ' inside gK.
  std::set<Elem> fiber;
  for (Elem x : lat.subgroup(ks)) fiber.insert(lat.coset_min(s.J, G.mul(f.g, x)));
  IntVector out(basis_size(h, m));
  std::set<Elem> done;
  for (Elem b : fiber) {
    if (done.count(b)) continue;
    for (Elem x : lat.subgroup(f.J)) done.insert(lat.coset_min(s.J, G.mul(x, b)));
    const int n = lat.intersect(f.J, lat.conjugate(b, s.J));
    const Ref r = locate(lat.rep(h), lat.rep(m), n, 0, G.mul(b, s.g));
    out[r.index] += 1;
  }
  return out;
}

const IntVector& OrbitCategory::compose_basis(int h, int k, int m, int i, int j) const {
  const std::uint64_t key = (((static_cast<std::uint64_t>(h) * n_ + k) * n_ + m) << 40) |
                           (static_cast<std::uint64_t>(i) << 20) | static_cast<std::uint64_t>(j);
  {
    std::shared_lock lock(cache_mutex_);
    auto it = composites_.find(key);
    if (it != composites_.end()) return it->second;
  }
  IntVector v = compute_composite(h, k, m, i, j);
  std::unique_lock lock(cache_mutex_);
  return composites_.emplace(key, std::move(v)).first->second;
}

SpanMorphism OrbitCategory::compose(const SpanMorphism& f, const SpanMorphism& s) const {
  if (f.tgt != s.src) throw Error(ErrorKind::ObjectMismatch, "composing span morphisms with different middle objects");
  SpanMorphism out = zero(f.src, s.tgt);
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (sgn(f.coeffs[i]) == 0) continue;
    for (std::size_t j = 0; j < s.coeffs.size(); ++j) {
      if (sgn(s.coeffs[j]) == 0) continue;
      const Int c = f.coeffs[i] * s.coeffs[j];
      const IntVector& v = compose_basis(f.src, f.tgt, s.tgt, static_cast<int>(i), static_cast<int>(j));
      for (std::size_t t = 0; t < v.size(); ++t)
        if (sgn(v[t]) != 0) out.coeffs[t] += c * v[t];
    }
  }
  return out;
}

int OrbitCategory::transpose_index(int h, int k, int i) const { return transpose_[h * n_ + k][i]; }

SpanMorphism OrbitCategory::transpose(const SpanMorphism& f) const {
  SpanMorphism out = zero(f.tgt, f.src);
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    if (sgn(f.coeffs[i]) != 0) out.coeffs[transpose_index(f.src, f.tgt, static_cast<int>(i))] += f.coeffs[i];
  return out;
}

int OrbitCategory::left_index(int h, int k, int i) const {
  return lat_->size(rep(h)) / lat_->size(basis(h, k)[i].J);
}

int OrbitCategory::right_index(int h, int k, int i) const {
  return lat_->size(rep(k)) / lat_->size(basis(h, k)[i].J);
}

std::string OrbitCategory::describe(int h, int k, int i) const {
  const Span& s = basis(h, k)[i];
  std::ostringstream os;
  auto list = [&](const Subgroup& sg) {
    os << '{';
    for (std::size_t t = 0; t < sg.size(); ++t) os << (t ? "," : "") << sg[t];
    os << '}';
  };
  os << "[H";
  os << h << " <- ";
  list(lat_->subgroup(s.J));
  os << " -> H" << k << ", g=" << s.g << "]";
  return os.str();
}

// ------------------------------------------------------------ G-set spans

std::vector<std::vector<SpanMorphism>> gset_span_matrix(const OrbitCategory& cat, const GSet& w,
                                                        const std::vector<int>& to_x, const std::vector<int>& to_y,
                                                        const std::vector<Orbit>& x_orbits, int x_size,
                                                        const std::vector<Orbit>& y_orbits, int y_size) {
  std::vector<int> x_orbit_of(x_size, -1), y_orbit_of(y_size, -1);
  for (std::size_t i = 0; i < x_orbits.size(); ++i)
    for (int p : x_orbits[i].points) x_orbit_of[p] = static_cast<int>(i);
  for (std::size_t j = 0; j < y_orbits.size(); ++j)
    for (int p : y_orbits[j].points) y_orbit_of[p] = static_cast<int>(j);
  std::vector<std::vector<SpanMorphism>> m(x_orbits.size());
  for (std::size_t i = 0; i < x_orbits.size(); ++i)
    for (std::size_t j = 0; j < y_orbits.size(); ++j) m[i].push_back(cat.zero(x_orbits[i].cls, y_orbits[j].cls));
  for (const Orbit& o : decompose_orbits(cat.lattice(), w)) {
    const int x = to_x[o.base], y = to_y[o.base];
    const int i = x_orbit_of[x], j = y_orbit_of[y];
    const Orbit& xo = x_orbits[i];
    const Orbit& yo = y_orbits[j];
    const auto r = cat.locate(xo.stabilizer, yo.stabilizer, o.stabilizer, xo.transversal[x], yo.transversal[y]);
    m[i][j].coeffs[r.index] += 1;
  }
  return m;
}

// ---------------------------------------------------------------- Induction

Induction::Induction(std::shared_ptr<const OrbitCategory> sub, std::shared_ptr<const OrbitCategory> ambient,
                     std::vector<Elem> embed)
    : sub_(std::move(sub)), amb_(std::move(ambient)), embed_(std::move(embed)) {
  const FiniteGroup& k = sub_->group();
  const FiniteGroup& g = amb_->group();
  if (static_cast<int>(embed_.size()) != k.order()) throw Error(ErrorKind::InvalidSubgroup, "embedding has wrong size");
  for (Elem a = 0; a < k.order(); ++a)
    for (Elem b = 0; b < k.order(); ++b)
      if (embed_[k.mul(a, b)] != g.mul(embed_[a], embed_[b]))
        throw Error(ErrorKind::InvalidSubgroup, "embedding is not a homomorphism");
  const SubgroupLattice& sl = sub_->lattice();
  for (int s = 0; s < sl.num_subgroups(); ++s) {
    Subgroup img;
    for (Elem x : sl.subgroup(s)) img.push_back(embed_[x]);
    std::sort(img.begin(), img.end());
    const int idx = amb_->lattice().index_of(img);
    if (idx < 0) throw Error(ErrorKind::InvalidSubgroup, "image of subgroup is not a subgroup");
    image_sub_.push_back(idx);
  }
}

SpanMorphism Induction::span(int h, int k, int i) const {
  const Span& s = sub_->basis(h, k)[i];
  return amb_->make_span(image_sub_[sub_->rep(h)], image_sub_[sub_->rep(k)], image_sub_[s.J], 0, embed_[s.g]);
}

SpanMorphism Induction::map(const SpanMorphism& f) const {
  SpanMorphism out = amb_->zero(object(f.src), object(f.tgt));
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    if (sgn(f.coeffs[i]) != 0) out += span(f.src, f.tgt, static_cast<int>(i)).scaled(f.coeffs[i]);
  return out;
}

std::shared_ptr<const Induction> subgroup_induction(std::shared_ptr<const OrbitCategory> g, int k_lit) {
  const auto sg = subgroup_as_group(g->group(), g->lattice().subgroup(k_lit), "K");
  auto sub = OrbitCategory::create(sg.group);
  return std::make_shared<const Induction>(sub, std::move(g), sg.embed);
}

}  // namespace equihom
