#include "equihom/homalg.hpp"

#include "equihom/error.hpp"

namespace equihom {

namespace {

std::vector<int> level_order(int n, CoverOrder order) {
  std::vector<int> v;
  for (int b = 0; b < n; ++b) v.push_back(order == CoverOrder::SmallestFirst ? b : n - 1 - b);
  return v;
}

/// A lattice kept in echelon form, grown one batch of columns at a time.
class Lattice {
 public:
  explicit Lattice(std::size_t dim) : dim_(dim), ech_(column_echelon(IntMatrix(dim, 0))) {}
  bool contains(const IntVector& v) const { return ech_.solve(v).has_value(); }
  void add(const IntMatrix& cols) {
    if (cols.cols() == 0) return;
    ech_ = column_echelon(IntMatrix::hstack(ech_.basis, cols));
  }
  const IntMatrix& basis() const { return ech_.basis; }

 private:
  std::size_t dim_;
  ColumnEchelon ech_;
};

/// Offsets of the summands of a free sum at level b.
std::vector<std::size_t> block_offsets(const OrbitCategory& cat, const std::vector<int>& objs, int b, std::size_t* total) {
  std::vector<std::size_t> off;
  std::size_t t = 0;
  for (int a : objs) {
    off.push_back(t);
    t += cat.basis_size(b, a);
  }
  if (total) *total = t;
  return off;
}

/// Image at level c of the element v (a vector over the free sum at level b):
/// u in A(c, b) sends v to u then v.
IntMatrix images(const OrbitCategory& cat, const std::vector<int>& objs, int b, const IntVector& v, int c) {
  std::size_t tb = 0, tc = 0;
  const auto ob = block_offsets(cat, objs, b, &tb);
  const auto oc = block_offsets(cat, objs, c, &tc);
  IntMatrix out(tc, cat.basis_size(c, b));
  for (std::size_t u = 0; u < cat.basis_size(c, b); ++u)
    for (std::size_t k = 0; k < objs.size(); ++k)
      for (std::size_t i = 0; i < cat.basis_size(b, objs[k]); ++i) {
        const Int& x = v[ob[k] + i];
        if (sgn(x) == 0) continue;
        const IntVector& comp = cat.compose_basis(c, b, objs[k], int(u), int(i));
        for (std::size_t j = 0; j < comp.size(); ++j)
          if (sgn(comp[j]) != 0) out(oc[k] + j, u) += x * comp[j];
      }
  return out;
}

/// Matrix at level b of the map between free sums given by boundary(p, ., .).
IntMatrix level_matrix(const CellComplex& x, int p, int b) {
  const OrbitCategory& cat = x.category();
  std::size_t ts = 0, tt = 0;
  const auto os = block_offsets(cat, x.cells(p), b, &ts);
  const auto ot = block_offsets(cat, x.cells(p - 1), b, &tt);
  IntMatrix m(tt, ts);
  for (const auto& [key, f] : x.boundaries()) {
    const auto [deg, k, l] = key;
    if (deg != p) continue;
    const int ak = x.cells(p)[k];
    for (std::size_t u = 0; u < cat.basis_size(b, ak); ++u) {
      const SpanMorphism c = cat.compose(cat.basis_morphism(b, ak, int(u)), f);
      for (std::size_t j = 0; j < c.coeffs.size(); ++j)
        if (sgn(c.coeffs[j]) != 0) m(ot[l] + j, os[k] + u) += c.coeffs[j];
    }
  }
  return m;
}

/// Augmentation at level b: the free sum at b -> T(b).
IntMatrix augmentation_matrix(const MackeyFunctor& t, const std::vector<int>& objs, const std::vector<IntVector>& xs,
                              int b) {
  const OrbitCategory& cat = t.category();
  std::size_t total = 0;
  const auto off = block_offsets(cat, objs, b, &total);
  IntMatrix m(t.value(b).ngens(), total);
  for (std::size_t k = 0; k < objs.size(); ++k)
    for (std::size_t u = 0; u < cat.basis_size(b, objs[k]); ++u)
      m.set_column(off[k] + u, t.act(cat.basis_morphism(b, objs[k], int(u))) * xs[k]);
  reduce_rows(m, t.value(b).orders());
  return m;
}

/// Chooses generators of the subfunctor K of the free sum on objs with K(b) = kernels[b].
std::vector<std::pair<int, IntVector>> cover_kernel(const OrbitCategory& cat, const std::vector<int>& objs,
                                                    const std::vector<IntMatrix>& kernels, CoverOrder order) {
  const int n = cat.num_objects();
  std::vector<Lattice> img;
  for (int b = 0; b < n; ++b) img.emplace_back(kernels[b].rows());
  std::vector<std::pair<int, IntVector>> chosen;
  for (int b : level_order(n, order)) {
    // add lifts of generators of K(b) / (image so far) until nothing is left
    for (;;) {
      const Subquotient rest(kernels[b], img[b].basis());
      if (rest.group().ngens() == 0) break;
      const IntVector v = rest.lift(0);
      chosen.emplace_back(b, v);
      for (int c = 0; c < n; ++c) img[c].add(images(cat, objs, b, v, c));
    }
  }
  return chosen;
}

}  // namespace

FreeCover free_cover(const MackeyPtr& tp, CoverOrder order) {
  const MackeyFunctor& t = *tp;
  if (t.variance() != Variance::Contravariant) throw Error(ErrorKind::ObjectMismatch, "free covers of contravariant functors");
  const auto cat = t.category_ptr();
  const int n = cat->num_objects();
  FreeCover fc;
  std::vector<Lattice> img;
  for (int b = 0; b < n; ++b) {
    img.emplace_back(t.value(b).ngens());
    img.back().add(relation_lattice(t.value(b)));
  }
  auto image_cols = [&](int a, const IntVector& e, int b) {
    IntMatrix cols(t.value(b).ngens(), cat->basis_size(b, a));
    for (std::size_t u = 0; u < cat->basis_size(b, a); ++u)
      cols.set_column(u, t.act(cat->basis_morphism(b, a, int(u))) * e);
    return cols;
  };
  // generators left to cover at every level once e in T(a) is added
  auto leftover = [&](int a, const IntVector& e) {
    std::size_t k = 0;
    for (int b = 0; b < n; ++b) {
      Lattice l = img[b];
      l.add(image_cols(a, e, b));
      k += Subquotient::quotient(t.value(b).ngens(), l.basis()).group().ngens();
    }
    return k;
  };
  for (int a : level_order(n, order)) {
    for (;;) {
      const Subquotient rest = Subquotient::quotient(t.value(a).ngens(), img[a].basis());
      if (rest.group().ngens() == 0) break;
      // candidates: uncovered basis elements of T(a), else a lift of the rest
      std::vector<IntVector> cands;
      for (std::size_t i = 0; i < t.value(a).ngens(); ++i) {
        IntVector e(t.value(a).ngens());
        e[i] = 1;
        if (!img[a].contains(e)) cands.push_back(e);
      }
      if (cands.empty()) cands.push_back(rest.lift(0));
      std::size_t best = 0, best_left = leftover(a, cands[0]);
      for (std::size_t c = 1; c < cands.size(); ++c) {
        const std::size_t left = leftover(a, cands[c]);
        if (left < best_left) {
          best = c;
          best_left = left;
        }
      }
      const IntVector e = cands[best];
      fc.objects.push_back(a);
      fc.elements.push_back(e);
      for (int b = 0; b < n; ++b) img[b].add(image_cols(a, e, b));
    }
  }
  std::vector<MackeyPtr> parts;
  for (int a : fc.objects) parts.push_back(free_functor(cat, Variance::Contravariant, a));
  fc.free = parts.empty() ? builtin_functor(cat, "zero", Variance::Contravariant) : direct_sum(parts);
  fc.epi.source = fc.free;
  fc.epi.target = tp;
  for (int b = 0; b < n; ++b) fc.epi.components.push_back(augmentation_matrix(t, fc.objects, fc.elements, b));
  return fc;
}

Resolution resolution(const MackeyPtr& tp, int length, CoverOrder order) {
  if (length < 0) throw Error(ErrorKind::Usage, "resolution length must be >= 0");
  const MackeyFunctor& t = *tp;
  const FreeCover fc = free_cover(tp, order);
  const auto cat = t.category_ptr();
  const int n = cat->num_objects();
  Resolution r;
  r.target = tp;
  r.length = length;
  r.augmentation = fc.elements;
  r.complex = CellComplex(cat);
  r.complex.name = "resolution";
  for (int a : fc.objects) r.complex.add_cell(0, a);
  for (int p = 1; p <= length; ++p) {
    const std::vector<int> objs = r.complex.cells(p - 1);
    std::vector<IntMatrix> kernels;
    for (int b = 0; b < n; ++b) {
      if (p == 1) {
        std::size_t total = 0;
        block_offsets(*cat, objs, b, &total);
        const IntMatrix m = augmentation_matrix(t, objs, fc.elements, b);
        kernels.push_back(kernel_lattice(AbMap(FgAbGroup::free(total), t.value(b), m)));
      } else {
        kernels.push_back(integer_kernel(level_matrix(r.complex, p - 1, b)));
      }
    }
    const auto chosen = cover_kernel(*cat, objs, kernels, order);
    for (const auto& [b, v] : chosen) {
      const int k = r.complex.add_cell(p, b);
      std::size_t total = 0;
      const auto off = block_offsets(*cat, objs, b, &total);
      for (std::size_t l = 0; l < objs.size(); ++l) {
        SpanMorphism f = cat->zero(b, objs[l]);
        for (std::size_t i = 0; i < f.coeffs.size(); ++i) f.coeffs[i] = v[off[l] + i];
        if (!f.is_zero()) r.complex.add_boundary(p, k, int(l), f);
      }
    }
  }
  return r;
}

std::optional<std::string> exactness_defect(const Resolution& r) {
  const MackeyFunctor& t = *r.target;
  const CellComplex& x = r.complex;
  const int n = x.category().num_objects();
  for (int b = 0; b < n; ++b) {
    const IntMatrix aug = augmentation_matrix(t, x.cells(0), r.augmentation, b);
    if (!lattice_contains(IntMatrix::hstack(aug, relation_lattice(t.value(b))), IntMatrix::identity(t.value(b).ngens())))
      return "augmentation is not onto at level " + std::to_string(b);
    for (int p = 1; p <= r.length; ++p) {
      std::size_t total = 0;
      block_offsets(x.category(), x.cells(p - 1), b, &total);
      const IntMatrix ker = p == 1 ? kernel_lattice(AbMap(FgAbGroup::free(total), t.value(b), aug))
                                   : integer_kernel(level_matrix(x, p - 1, b));
      const IntMatrix im = level_matrix(x, p, b);
      if (!lattice_contains(ker, im) || !lattice_contains(im, ker))
        return "not exact at stage " + std::to_string(p - 1) + ", level " + std::to_string(b);
    }
  }
  return std::nullopt;
}

FgAbGroup tor(const Resolution& r, const MackeyFunctor& s, int p) {
  if (p < 0 || p > r.length - 1)
    throw Error(ErrorKind::LengthExceeded, "tor in degree " + std::to_string(p) + " needs a resolution of length > " +
                                               std::to_string(p));
  return chains_with(r.complex, s).homology_at(p).group();
}

FgAbGroup ext(const Resolution& r, const MackeyFunctor& u, int p) {
  if (p < 0 || p > r.length - 1)
    throw Error(ErrorKind::LengthExceeded, "ext in degree " + std::to_string(p) + " needs a resolution of length > " +
                                               std::to_string(p));
  return cochains_with(r.complex, u).homology_at(p).group();
}

FgAbGroup tor(const MackeyPtr& t, const MackeyFunctor& s, int p, int length) {
  return tor(resolution(t, length), s, p);
}

FgAbGroup ext(const MackeyPtr& t, const MackeyFunctor& u, int p, int length) {
  return ext(resolution(t, length), u, p);
}

}  // namespace equihom
