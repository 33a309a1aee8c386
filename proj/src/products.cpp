#include "equihom/products.hpp"

#include <set>

#include "equihom/error.hpp"

namespace equihom {

namespace {

/// C_p(X) as a sum of free contravariant functors, one per cell (null when empty).
MackeyPtr cell_functor(const CellComplex& x, int p) {
  std::vector<MackeyPtr> parts;
  for (int h : x.cells(p)) parts.push_back(free_functor(x.category_ptr(), Variance::Contravariant, h));
  return parts.empty() ? nullptr : direct_sum(parts);
}

/// Coordinates in C_p(X)(b) = sum_l A(b, H_l) of the span f : b -> H_l in summand l.
IntVector in_cell_sum(const CellComplex& x, int p, int b, int l, const SpanMorphism& f) {
  const OrbitCategory& cat = x.category();
  std::size_t off = 0, total = 0;
  for (std::size_t m = 0; m < x.num_cells(p); ++m) {
    if (int(m) == l) off = total;
    total += cat.basis_size(b, x.cells(p)[m]);
  }
  IntVector v(total);
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) v[off + i] = f.coeffs[i];
  return v;
}

/// The generator e_i of C_p(X) at H_i.
IntVector cell_generator(const CellComplex& x, int p, int i) {
  const int h = x.cells(p)[i];
  return in_cell_sum(x, p, h, i, x.category().identity(h));
}

/// d e_i in C_{p-1}(X)(H_i).
IntVector cell_boundary(const CellComplex& x, int p, int i) {
  const int h = x.cells(p)[i];
  std::size_t total = 0;
  for (int l : x.cells(p - 1)) total += x.category().basis_size(h, l);
  IntVector v(total);
  for (std::size_t l = 0; l < x.num_cells(p - 1); ++l) {
    const IntVector w = in_cell_sum(x, p - 1, h, int(l), x.boundary(p, i, int(l)));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += w[k];
  }
  return v;
}

IntVector kron(const IntVector& a, const IntVector& b) {
  IntVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0)
      for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

void add_into(IntVector& v, std::size_t off, const IntVector& w) {
  for (std::size_t k = 0; k < w.size(); ++k) v[off + k] += w[k];
}

std::string cell_name(int p, int i) { return "cell " + std::to_string(i) + " in degree " + std::to_string(p); }

void check_transformation(const NatTransf& f, const std::string& what, CheckReport& out) {
  if (auto d = f.naturality_defect()) out.violations.push_back(what + ": not natural: " + *d);
  const int n = f.source->num_objects();
  for (int b = 0; b < n; ++b)
    if (!is_isomorphism(f.component(b)))
      out.violations.push_back(what + ": not invertible at object " + std::to_string(b));
}

}  // namespace

// ------------------------------------------------------------------ products

CheckReport box_chains_check(const CellComplex& x, const CellComplex& y, const ProductContext& ctx) {
  CheckReport out;
  const CellComplex z = external_product(x, y, ctx);
  const OrbitCategory& P = ctx.product();
  const int nb = ctx.right().num_objects();

  std::map<std::pair<int, int>, std::unique_ptr<KanExtension>> kan;
  for (int p : x.degrees())
    for (int q : y.degrees())
      kan[{p, q}] = std::make_unique<KanExtension>(box_source(*cell_functor(x, p), *cell_functor(y, q), ctx));
  auto kan_at = [&](int p, int q) -> const KanExtension* {
    auto it = kan.find({p, q});
    return it == kan.end() ? nullptr : it->second.get();
  };

  // product cells in the order external_product creates them
  struct Cell {
    int p, i, q, j;
  };
  std::map<int, std::vector<Cell>> cells;
  for (int p : x.degrees())
    for (std::size_t i = 0; i < x.num_cells(p); ++i)
      for (int q : y.degrees())
        for (std::size_t j = 0; j < y.num_cells(q); ++j) cells[p + q].push_back({p, int(i), q, int(j)});

  for (const auto& [n, list] : cells) {
    if (list.size() != z.num_cells(n)) {
      out.violations.push_back("degree " + std::to_string(n) + ": cell count differs");
      continue;
    }
    // blocks of the degree-n part of C(X) ⊠ C(Y), by bidegree
    std::vector<std::pair<int, int>> bideg;
    for (int p : x.degrees())
      if (kan_at(p, n - p)) bideg.emplace_back(p, n - p);
    for (std::size_t c = 0; c < list.size(); ++c) {
      const Cell& e = list[c];
      if (z.cells(n)[c] != ctx.product_object(x.cells(e.p)[e.i], y.cells(e.q)[e.j]))
        out.violations.push_back("degree " + std::to_string(n) + ": cell " + std::to_string(c) + " has the wrong orbit");
    }
    for (int b = 0; b < P.num_objects(); ++b) {
      std::vector<FgAbGroup> parts;
      std::map<std::pair<int, int>, std::size_t> off;
      std::size_t rows = 0;
      for (const auto& pq : bideg) {
        off[pq] = rows;
        parts.push_back(kan_at(pq.first, pq.second)->value(b));
        rows += parts.back().ngens();
      }
      std::size_t cols = 0;
      for (int h : z.cells(n)) cols += P.basis_size(b, h);
      IntMatrix m(rows, cols);
      std::size_t col = 0;
      for (std::size_t c = 0; c < list.size(); ++c) {
        const Cell& e = list[c];
        const int obj = z.cells(n)[c];
        const int a = x.cells(e.p)[e.i] * nb + y.cells(e.q)[e.j];
        const IntVector t = kron(cell_generator(x, e.p, e.i), cell_generator(y, e.q, e.j));
        for (std::size_t u = 0; u < P.basis_size(b, obj); ++u, ++col) {
          const IntVector v = kan_at(e.p, e.q)->element(b, a, P.basis_morphism(b, obj, int(u)), t);
          for (std::size_t k = 0; k < v.size(); ++k) m(off[{e.p, e.q}] + k, col) = v[k];
        }
      }
      if (!is_isomorphism(AbMap(FgAbGroup::free(cols), FgAbGroup::direct_sum(parts), m)))
        out.violations.push_back("degree " + std::to_string(n) + ": not invertible at object " + std::to_string(b));
    }
  }

  // the differentials
  for (const auto& [n, list] : cells) {
    if (!cells.count(n - 1) || list.size() != z.num_cells(n)) continue;
    std::map<std::pair<int, int>, std::size_t> off;
    std::vector<FgAbGroup> parts;
    for (std::size_t c = 0; c < list.size(); ++c) {
      const Cell& e = list[c];
      const int obj = z.cells(n)[c];
      const int a = x.cells(e.p)[e.i] * nb + y.cells(e.q)[e.j];
      // block layout of degree n - 1 at level obj
      off.clear();
      parts.clear();
      std::size_t rows = 0;
      for (int p : x.degrees())
        if (const KanExtension* k = kan_at(p, n - 1 - p)) {
          off[{p, n - 1 - p}] = rows;
          parts.push_back(k->value(obj));
          rows += parts.back().ngens();
        }
      IntVector lhs(rows), rhs(rows);
      const auto& prev = cells.at(n - 1);
      for (std::size_t c2 = 0; c2 < prev.size(); ++c2) {
        const SpanMorphism f = z.boundary(n, int(c), int(c2));
        if (f.is_zero()) continue;
        const Cell& e2 = prev[c2];
        const int a2 = x.cells(e2.p)[e2.i] * nb + y.cells(e2.q)[e2.j];
        add_into(lhs, off.at({e2.p, e2.q}),
                 kan_at(e2.p, e2.q)->element(obj, a2, f, kron(cell_generator(x, e2.p, e2.i), cell_generator(y, e2.q, e2.j))));
      }
      const SpanMorphism id = P.identity(obj);
      if (const KanExtension* k = kan_at(e.p - 1, e.q))
        add_into(rhs, off.at({e.p - 1, e.q}),
                 k->element(obj, a, id, kron(cell_boundary(x, e.p, e.i), cell_generator(y, e.q, e.j))));
      if (const KanExtension* k = kan_at(e.p, e.q - 1)) {
        IntVector w = k->element(obj, a, id, kron(cell_generator(x, e.p, e.i), cell_boundary(y, e.q, e.j)));
        if (e.p % 2 != 0)
          for (Int& v : w) v = -v;
        add_into(rhs, off.at({e.p, e.q - 1}), w);
      }
      const FgAbGroup g = FgAbGroup::direct_sum(parts);
      for (std::size_t k = 0; k < rows; ++k) lhs[k] -= rhs[k];
      if (!g.is_zero_element(lhs))
        out.violations.push_back("differential differs on product cell " + std::to_string(c) + " of degree " +
                                 std::to_string(n));
    }
  }
  return out;
}

CheckReport unit_box_check(const MackeyPtr& t, const ProductContext& ctx) {
  CheckReport out;
  const auto cat = t->category_ptr();
  const OrbitCategory& P = ctx.product();
  const int n = cat->num_objects();
  const int top = cat->lattice().top_class();
  const auto a = free_functor(cat, Variance::Contravariant, top);
  const KanExtension kan(box_source(*a, *t, ctx));
  const auto diag = ctx.diagonal();
  NatTransf phi;
  phi.source = t;
  phi.target = box_internal(kan, ctx);
  const IntVector one = cat->identity(top).coeffs;
  for (int b = 0; b < n; ++b) {
    // G x G / diag(H) -> G x G / (G x H)
    const int dh = diag->image_subgroup(cat->rep(b));
    const SpanMorphism v = P.make_span(dh, ctx.product_subgroup(cat->rep(top), cat->rep(b)), dh, 0, 0);
    const FgAbGroup& tb = t->value(b);
    IntMatrix m(phi.target->value(b).ngens(), tb.ngens());
    for (std::size_t i = 0; i < tb.ngens(); ++i) {
      IntVector e(tb.ngens());
      e[i] = 1;
      m.set_column(i, kan.element(diag->object(b), top * n + b, v, kron(one, e)));
    }
    phi.components.push_back(std::move(m));
  }
  check_transformation(phi, "A_{G/G} □ " + t->name, out);
  return out;
}

CheckReport unit_mixed_check(const MackeyPtr& s) {
  CheckReport out;
  const auto cat = s->category_ptr();
  const SubgroupLattice& lat = cat->lattice();
  const int n = cat->num_objects();
  const int top = lat.top_class();
  const auto a = free_functor(cat, Variance::Contravariant, top);
  const MixedProduct mp(*s, *a);
  NatTransf phi;
  phi.source = s;
  phi.target = mp.functor();
  const IntVector one = cat->identity(top).coeffs;
  for (int l = 0; l < n; ++l) {
    // G/L -> G/G x G/L, eL |-> (G, eL), onto the single orbit
    const Orbit& orb = mp.orbits(top, l).at(0);
    const int point = lat.coset_index(cat->rep(l), 0);
    const SpanMorphism u = cat->make_span(cat->rep(l), orb.stabilizer, cat->rep(l), 0, orb.transversal.at(point));
    const FgAbGroup& sl = s->value(l);
    IntMatrix m(phi.target->value(l).ngens(), sl.ngens());
    for (std::size_t i = 0; i < sl.ngens(); ++i) {
      IntVector e(sl.ngens());
      e[i] = 1;
      m.set_column(i, mp.element(l, l, top, 0, u, e, one));
    }
    phi.components.push_back(std::move(m));
  }
  check_transformation(phi, s->name + " ⋄ A_{G/G}", out);
  return out;
}

CheckReport mixed_box_check(const MackeyFunctor& s, const MackeyFunctor& t, const ProductContext& ctx) {
  CheckReport out;
  const auto lhs = mixed_product(s, t);
  const auto rhs = box_internal(*transpose_variance(s), t, ctx);
  for (int l = 0; l < lhs->num_objects(); ++l)
    if (!(lhs->value(l) == rhs->value(l)))
      out.violations.push_back("object " + std::to_string(l) + ": " + lhs->value(l).to_string() + " vs " +
                               rhs->value(l).to_string());
  return out;
}

// ---------------------------------------------------------- (co)cycle classes

namespace {

IntVector concat(const std::vector<IntVector>& parts) {
  IntVector v;
  for (const auto& p : parts) v.insert(v.end(), p.begin(), p.end());
  return v;
}

std::vector<IntVector> split(const CellComplex& x, const MackeyFunctor& f, int degree, const IntVector& v) {
  std::vector<IntVector> out;
  std::size_t k = 0;
  for (int h : x.cells(degree)) {
    const std::size_t w = f.value(h).ngens();
    out.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(k), v.begin() + static_cast<std::ptrdiff_t>(k + w));
    k += w;
  }
  return out;
}

void check_shape(const CellComplex& x, const MackeyFunctor& f, int degree, const std::vector<IntVector>& values) {
  if (values.size() != x.num_cells(degree))
    throw Error(ErrorKind::DegreeMismatch, "expected one value per cell in degree " + std::to_string(degree));
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i].size() != f.value(x.cells(degree)[i]).ngens())
      throw Error(ErrorKind::DegreeMismatch, "value of " + cell_name(degree, int(i)) + " has the wrong length");
}

}  // namespace

CochainClass make_cocycle(std::shared_ptr<const CellComplex> x, MackeyPtr t, int degree, std::vector<IntVector> values) {
  check_shape(*x, *t, degree, values);
  const AbComplex c = cochains_with(*x, *t);
  const AbMap d = c.map(degree);
  if (!d.target.is_zero_element(d.apply(concat(values))))
    throw Error(ErrorKind::NotACocycle, "cochain of degree " + std::to_string(degree) + " is not a cocycle");
  CochainClass out;
  out.complex = std::move(x);
  out.coefficients = std::move(t);
  out.degree = degree;
  out.values = std::move(values);
  return out;
}

ChainClass make_cycle(std::shared_ptr<const CellComplex> x, MackeyPtr s, int degree, std::vector<IntVector> values) {
  check_shape(*x, *s, degree, values);
  const AbComplex c = chains_with(*x, *s);
  const AbMap d = c.map(degree);
  if (!d.target.is_zero_element(d.apply(concat(values))))
    throw Error(ErrorKind::NotACocycle, "chain of degree " + std::to_string(degree) + " is not a cycle");
  ChainClass out;
  out.complex = std::move(x);
  out.coefficients = std::move(s);
  out.degree = degree;
  out.values = std::move(values);
  return out;
}

std::vector<CochainClass> cohomology_generators(std::shared_ptr<const CellComplex> x, MackeyPtr t, int degree) {
  const Subquotient h = cochains_with(*x, *t).homology_at(degree);
  std::vector<CochainClass> out;
  for (std::size_t i = 0; i < h.group().ngens(); ++i)
    out.push_back(make_cocycle(x, t, degree, split(*x, *t, degree, h.lift(i))));
  return out;
}

std::vector<ChainClass> homology_generators(std::shared_ptr<const CellComplex> x, MackeyPtr s, int degree) {
  const Subquotient h = chains_with(*x, *s).homology_at(degree);
  std::vector<ChainClass> out;
  for (std::size_t i = 0; i < h.group().ngens(); ++i)
    out.push_back(make_cycle(x, s, degree, split(*x, *s, degree, h.lift(i))));
  return out;
}

IntVector class_of(const CochainClass& c) {
  return cochains_with(*c.complex, *c.coefficients).homology_at(c.degree).coords(concat(c.values));
}

IntVector class_of(const ChainClass& c) {
  return chains_with(*c.complex, *c.coefficients).homology_at(c.degree).coords(concat(c.values));
}

CupProduct external_cup(const CochainClass& x, const CochainClass& y, const ProductContext& ctx) {
  const CellComplex& X = *x.complex;
  const CellComplex& Y = *y.complex;
  CupProduct out;
  out.complex = std::make_shared<const CellComplex>(external_product(X, Y, ctx));
  out.kan = std::make_shared<const KanExtension>(box_source(*x.coefficients, *y.coefficients, ctx));
  const auto coeff = out.kan->functor(false);
  const OrbitCategory& P = ctx.product();
  const int nb = ctx.right().num_objects();
  const int n = x.degree + y.degree;
  std::vector<IntVector> values;
  std::size_t c = 0;
  for (int p : X.degrees())
    for (std::size_t i = 0; i < X.num_cells(p); ++i)
      for (int q : Y.degrees())
        for (std::size_t j = 0; j < Y.num_cells(q); ++j) {
          if (p + q != n) continue;
          const int obj = out.complex->cells(n)[c++];
          if (p == x.degree && q == y.degree) {
            const int a = X.cells(p)[i] * nb + Y.cells(q)[j];
            values.push_back(out.kan->element(obj, a, P.identity(obj), kron(x.values[i], y.values[j])));
          } else {
            values.emplace_back(coeff->value(obj).ngens());
          }
        }
  out.cocycle = make_cocycle(out.complex, coeff, n, std::move(values));
  return out;
}

PairingValue evaluation_pairing(const CochainClass& x, const ChainClass& z) {
  const CellComplex& X = *x.complex;
  const CellComplex& Z = *z.complex;
  if (x.degree != z.degree)
    throw Error(ErrorKind::DegreeMismatch, "pairing a degree " + std::to_string(x.degree) + " cochain with a degree " +
                                               std::to_string(z.degree) + " chain");
  if (x.complex != z.complex && (X.cells(x.degree) != Z.cells(z.degree) || X.boundaries() != Z.boundaries()))
    throw Error(ErrorKind::DegreeMismatch, "cochain and chain live on different complexes");
  const TensorProduct tp(*x.coefficients, *z.coefficients);
  PairingValue out{tp.group(), IntVector(tp.group().ngens())};
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    const IntVector v = tp.element(X.cells(x.degree)[i], x.values[i], z.values[i]);
    for (std::size_t k = 0; k < v.size(); ++k) out.value[k] += v[k];
  }
  out.group.reduce(out.value);
  return out;
}

// ----------------------------------------------------- diagonals, cap, cup

SpanMorphism DiagonalApprox::entry(int degree, int z, int r) const {
  auto it = entries.find({degree, z, r});
  if (it != entries.end()) return it->second;
  return source->category().zero(source->cells(degree)[z], product->cells(degree)[r]);
}

namespace {

bool same_complex(const std::shared_ptr<const CellComplex>& a, const std::shared_ptr<const CellComplex>& b) {
  return a == b || (a->degrees() == b->degrees() && a->boundaries() == b->boundaries() &&
                    [&] {
                      for (int n : a->degrees())
                        if (a->cells(n) != b->cells(n)) return false;
                      return true;
                    }());
}

std::string span_text(const SpanMorphism& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) s += (i ? " " : "") + f.coeffs[i].get_str();
  return s + "]";
}

}  // namespace

CheckReport check_diagonal(const DiagonalApprox& d) {
  CheckReport out;
  const CellComplex& Z = *d.source;
  const CellComplex& P = *d.product;
  const OrbitCategory& cat = Z.category();
  // d_P o D = D o d_Z
  for (int n : Z.degrees())
    for (std::size_t c = 0; c < Z.num_cells(n); ++c) {
      const int k = Z.cells(n)[c];
      for (std::size_t s = 0; s < P.num_cells(n - 1); ++s) {
        SpanMorphism lhs = cat.zero(k, P.cells(n - 1)[s]);
        SpanMorphism rhs = lhs;
        for (std::size_t r = 0; r < P.num_cells(n); ++r) {
          const SpanMorphism e = d.entry(n, int(c), int(r));
          if (e.is_zero()) continue;
          lhs += cat.compose(e, P.boundary(n, int(r), int(s)));
        }
        for (std::size_t c2 = 0; c2 < Z.num_cells(n - 1); ++c2) {
          const SpanMorphism b = Z.boundary(n, int(c), int(c2));
          if (b.is_zero()) continue;
          rhs += cat.compose(b, d.entry(n - 1, int(c2), int(s)));
        }
        if (lhs.coeffs != rhs.coeffs)
          out.violations.push_back("not a chain map at " + cell_name(n, int(c)) + ", product cell " + std::to_string(s) +
                                   " in degree " + std::to_string(n - 1) + ": " + span_text(lhs) + " vs " +
                                   span_text(rhs));
      }
    }
  if (!same_complex(d.source, d.left) || !same_complex(d.source, d.right)) return out;
  const auto table = product_cell_table(*d.left, *d.right);
  for (int n : Z.degrees()) {
    auto it = table.find(n);
    for (std::size_t c = 0; c < Z.num_cells(n); ++c) {
      const int k = Z.cells(n)[c];
      std::vector<SpanMorphism> left(Z.num_cells(n)), right(Z.num_cells(n));
      for (std::size_t i = 0; i < Z.num_cells(n); ++i) left[i] = right[i] = cat.zero(k, Z.cells(n)[i]);
      if (it != table.end())
        for (std::size_t r = 0; r < it->second.size(); ++r) {
          const ProductCell& pc = it->second[r];
          const SpanMorphism e = d.entry(n, int(c), int(r));
          if (e.is_zero()) continue;
          if (pc.q == 0) left[pc.i] += cat.compose(e, pc.to_left);
          if (pc.p == 0) right[pc.j] += cat.compose(e, pc.to_right);
        }
      for (std::size_t i = 0; i < Z.num_cells(n); ++i) {
        const SpanMorphism want = i == c ? cat.identity(k) : cat.zero(k, Z.cells(n)[i]);
        if (left[i].coeffs != want.coeffs)
          out.violations.push_back("left counit fails at " + cell_name(n, int(c)));
        if (right[i].coeffs != want.coeffs)
          out.violations.push_back("right counit fails at " + cell_name(n, int(c)));
      }
    }
  }
  return out;
}

DiagonalApprox diagonal_approximation(std::shared_ptr<const CellComplex> x) {
  const CellComplex& X = *x;
  const OrbitCategory& cat = X.category();
  const SubgroupLattice& lat = cat.lattice();
  DiagonalApprox d;
  d.source = d.left = d.right = x;
  d.product = std::make_shared<const CellComplex>(internal_product(X, X));
  const CellComplex& P = *d.product;
  const auto table = product_cell_table(X, X);
  std::map<std::pair<int, int>, std::set<std::pair<int, int>>> closure;
  for (int n : X.degrees())
    for (std::size_t c = 0; c < X.num_cells(n); ++c) {
      auto& cl = closure[{n, int(c)}];
      cl.insert({n, int(c)});
      for (std::size_t f = 0; f < X.num_cells(n - 1); ++f)
        if (!X.boundary(n, int(c), int(f)).is_zero()) {
          const auto& sub = closure.at({n - 1, int(f)});
          cl.insert(sub.begin(), sub.end());
        }
    }
  for (int n : X.degrees()) {
    static const std::vector<ProductCell> none;
    const auto found = table.find(n);
    const auto& cells = found == table.end() ? none : found->second;
    for (std::size_t c = 0; c < X.num_cells(n); ++c) {
      const int k = X.cells(n)[c];
      if (n == 0) {
        // v |-> v x v through eK |-> (eK, eK)
        const int hk = cat.rep(k);
        const GSet orbit = GSet::cosets(lat, hk);
        const GSet sq = GSet::product(orbit, orbit);
        std::vector<int> to_x(orbit.size), to_y(orbit.size);
        for (int pt = 0; pt < orbit.size; ++pt) to_x[pt] = pt, to_y[pt] = pt * orbit.size + pt;
        const auto m = gset_span_matrix(cat, orbit, to_x, to_y, decompose_orbits(lat, orbit), orbit.size,
                                        decompose_orbits(lat, sq), sq.size);
        for (std::size_t r = 0; r < cells.size(); ++r)
          if (cells[r].i == int(c) && cells[r].j == int(c) && !m[0][cells[r].orbit].is_zero())
            d.entries[{0, int(c), int(r)}] = m[0][cells[r].orbit];
        continue;
      }
      const auto& cl = closure.at({n, int(c)});
      std::vector<std::pair<int, int>> unknowns;  // (product cell, basis index)
      for (std::size_t r = 0; r < cells.size(); ++r)
        if (cl.count({cells[r].p, cells[r].i}) && cl.count({cells[r].q, cells[r].j}))
          for (std::size_t u = 0; u < cat.basis_size(k, P.cells(n)[r]); ++u) unknowns.push_back({int(r), int(u)});
      std::vector<std::size_t> row_of(P.num_cells(n - 1) + 1, 0);
      for (std::size_t s = 0; s < P.num_cells(n - 1); ++s)
        row_of[s + 1] = row_of[s] + cat.basis_size(k, P.cells(n - 1)[s]);
      IntMatrix m(row_of.back(), unknowns.size());
      IntVector rhs(row_of.back());
      for (std::size_t col = 0; col < unknowns.size(); ++col) {
        const auto [r, u] = unknowns[col];
        const SpanMorphism e = cat.basis_morphism(k, P.cells(n)[r], u);
        for (std::size_t s = 0; s < P.num_cells(n - 1); ++s) {
          const SpanMorphism b = P.boundary(n, r, int(s));
          if (b.is_zero()) continue;
          const SpanMorphism f = cat.compose(e, b);
          for (std::size_t t = 0; t < f.coeffs.size(); ++t) m(row_of[s] + t, col) = f.coeffs[t];
        }
      }
      for (std::size_t c2 = 0; c2 < X.num_cells(n - 1); ++c2) {
        const SpanMorphism b = X.boundary(n, int(c), int(c2));
        if (b.is_zero()) continue;
        for (std::size_t s = 0; s < P.num_cells(n - 1); ++s) {
          const SpanMorphism e = d.entry(n - 1, int(c2), int(s));
          if (e.is_zero()) continue;
          const SpanMorphism f = cat.compose(b, e);
          for (std::size_t t = 0; t < f.coeffs.size(); ++t) rhs[row_of[s] + t] += f.coeffs[t];
        }
      }
      const auto sol = solve_integer(m, rhs);
      if (!sol)
        throw Error(ErrorKind::InvalidDiagonal, "no diagonal carried by the closure of " + cell_name(n, int(c)));
      for (std::size_t col = 0; col < unknowns.size(); ++col) {
        if (sgn((*sol)[col]) == 0) continue;
        const auto [r, u] = unknowns[col];
        auto it = d.entries.find({n, int(c), r});
        if (it == d.entries.end()) it = d.entries.emplace(std::make_tuple(n, int(c), r), cat.zero(k, P.cells(n)[r])).first;
        it->second.coeffs[u] += (*sol)[col];
      }
    }
  }
  const CheckReport rep = check_diagonal(d);
  if (!rep.ok()) throw Error(ErrorKind::InvalidDiagonal, rep.violations.front());
  return d;
}

ChainClass cap_product(const CochainClass& y, const ChainClass& z, const DiagonalApprox& d) {
  if (!same_complex(y.complex, d.right) || !same_complex(z.complex, d.source))
    throw Error(ErrorKind::DegreeMismatch, "cap product: classes do not live on the diagonal's complexes");
  const int n = z.degree, q = y.degree;
  const CellComplex& X = *d.left;
  const CellComplex& Z = *d.source;
  const OrbitCategory& cat = X.category();
  const MixedProduct mp(*z.coefficients, *y.coefficients);
  const MackeyPtr coeff = mp.functor();
  std::vector<IntVector> values;
  for (int l : X.cells(n - q)) values.emplace_back(coeff->value(l).ngens());
  const auto table = product_cell_table(*d.left, *d.right);
  if (auto it = table.find(n); it != table.end())
    for (std::size_t r = 0; r < it->second.size(); ++r) {
      const ProductCell& pc = it->second[r];
      if (pc.q != q) continue;
      const int l = X.cells(pc.p)[pc.i];
      const int j = d.right->cells(q)[pc.j];
      for (std::size_t c = 0; c < Z.num_cells(n); ++c) {
        const SpanMorphism e = d.entry(n, int(c), int(r));
        if (e.is_zero()) continue;
        for (std::size_t r2 = 0; r2 < pc.swap.size(); ++r2) {
          if (pc.swap[r2].is_zero()) continue;
          const SpanMorphism u = cat.compose(e, pc.swap[r2]);
          const IntVector v = mp.element(l, Z.cells(n)[c], j, int(r2), u, z.values[c], y.values[pc.j]);
          for (std::size_t t = 0; t < v.size(); ++t) values[pc.i][t] += v[t];
        }
      }
    }
  for (std::size_t i = 0; i < values.size(); ++i) coeff->value(X.cells(n - q)[i]).reduce(values[i]);
  return make_cycle(d.left, coeff, n - q, std::move(values));
}

CochainClass classical_cup(const CochainClass& x, const CochainClass& y, const DiagonalApprox& d) {
  const CellComplex& Z = *d.source;
  const OrbitCategory& cat = Z.category();
  if (cat.group().order() != 1) throw Error(ErrorKind::UnsupportedGroup, "the internal cup product is for the trivial group");
  if (!same_complex(x.complex, d.left) || !same_complex(y.complex, d.right))
    throw Error(ErrorKind::DegreeMismatch, "cup product: classes do not live on the diagonal's complexes");
  const FgAbGroup& tv = x.coefficients->value(0);
  const FgAbGroup& uv = y.coefficients->value(0);
  if (!tv.is_free() || !uv.is_free()) throw Error(ErrorKind::UnsupportedGroup, "the internal cup product needs free values");
  const std::size_t rank = tv.rank() * uv.rank();
  MackeyFunctor::Actions actions(1);
  actions[0].push_back(IntMatrix::identity(rank));
  auto coeff = std::make_shared<MackeyFunctor>(x.coefficients->variance(), Z.category_ptr(),
                                               std::vector<FgAbGroup>{FgAbGroup::free(rank)}, std::move(actions));
  const int n = x.degree + y.degree;
  std::vector<IntVector> values(Z.num_cells(n), IntVector(rank));
  const auto table = product_cell_table(*d.left, *d.right);
  if (auto it = table.find(n); it != table.end())
    for (std::size_t r = 0; r < it->second.size(); ++r) {
      const ProductCell& pc = it->second[r];
      if (pc.p != x.degree) continue;
      const IntVector v = kron(x.values[pc.i], y.values[pc.j]);
      for (std::size_t c = 0; c < Z.num_cells(n); ++c) {
        const SpanMorphism e = d.entry(n, int(c), int(r));
        if (e.is_zero()) continue;
        for (std::size_t t = 0; t < rank; ++t) values[c][t] += e.coeffs[0] * v[t];
      }
    }
  return make_cocycle(d.source, coeff, n, std::move(values));
}

// ------------------------------------------------------------------ duality

bool DualityReport::ok() const {
  if (!violations.empty()) return false;
  for (const auto& [name, entries] : coefficients)
    for (const auto& e : entries)
      if (!e.equal()) return false;
  for (const auto& e : classical)
    if (!e.equal()) return false;
  return true;
}

namespace {

/// H^n(M; Z) against H_{d-n}(M; Z) on a nonequivariant structure.
std::vector<DualityEntry> classical_duality(const CellComplex& m, int d) {
  const auto cat = m.category_ptr();
  const auto cz = builtin_functor(cat, "constant_Z", Variance::Contravariant);
  const auto hz = builtin_functor(cat, "constant_Z", Variance::Covariant);
  const GradedAbGroups co = cohomology(m, *cz);
  const GradedAbGroups ho = homology(m, *hz);
  std::vector<DualityEntry> out;
  for (int n = -1; n <= d + 1; ++n) out.push_back({n, graded_at(co, n), graded_at(ho, d - n)});
  return out;
}

bool is_classical(const std::string& name) { return name == "circle" || name == "sphere2" || name == "torus"; }

}  // namespace

DualityReport duality_report(const std::string& name, const std::vector<std::string>& coefficients) {
  const auto names = library_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw Error(ErrorKind::UnknownExample, "no library structure named '" + name + "'");
  DualityReport out;
  out.example = name;
  if (is_classical(name)) {
    auto cat = OrbitCategory::create(std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(1)));
    const CellComplex m = library_complex(name, cat);
    out.dimension = m.max_degree();
    out.classical = classical_duality(m, out.dimension);
    return out;
  }
  const bool is_dual = name.size() > 5 && name.substr(name.size() - 5) == "_dual";
  const std::string ordinary = is_dual ? ordinary_of(name) : name;
  const std::string dual = ordinary + "_dual";
  if (std::find(names.begin(), names.end(), dual) == names.end())
    throw Error(ErrorKind::UnknownExample, "'" + name + "' has no dual structure");
  auto cat = OrbitCategory::create(library_group(ordinary));
  const CellComplex m = library_complex(ordinary, cat);
  const CellComplex md = library_complex(dual, cat);
  const int v = md.grading.total();
  out.dimension = v;
  for (const auto& c : coefficients) {
    const auto t = builtin_functor(cat, c, Variance::Contravariant);
    const auto s = transpose_variance(*t);
    const GradedAbGroups lhs = cohomology(m, *t);
    const GradedAbGroups rhs = homology(md, *s);
    auto& entries = out.coefficients[c];
    for (int n = -1; n <= v + 1; ++n) entries.push_back({n, graded_at(lhs, n), graded_at(rhs, v - n)});
  }
  const CellComplex u = underlying_complex(m);
  out.classical = classical_duality(u, v);
  const auto em = fixed_euler_characteristics(m);
  const auto ed = fixed_euler_characteristics(md);
  for (std::size_t k = 0; k < em.size(); ++k)
    if (em[k] != ed[k])
      out.violations.push_back("Euler characteristic of the fixed set at class " + std::to_string(k) + ": " +
                               em[k].get_str() + " vs " + ed[k].get_str());
  return out;
}

}  // namespace equihom
