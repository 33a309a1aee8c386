#include "equihom/mackey.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "equihom/error.hpp"

namespace equihom {

const char* to_string(Variance v) { return v == Variance::Contravariant ? "contravariant" : "covariant"; }

Variance parse_variance(const std::string& s) {
  if (s == "contravariant" || s == "contra") return Variance::Contravariant;
  if (s == "covariant" || s == "co") return Variance::Covariant;
  throw Error(ErrorKind::Usage, "unknown variance '" + s + "' (expected contravariant or covariant)");
}

namespace {

bool contra(Variance v) { return v == Variance::Contravariant; }

IntMatrix reduced(IntMatrix m, const FgAbGroup& target) {
  reduce_rows(m, target.orders());
  return m;
}

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n);
  v[i] = 1;
  return v;
}

using SpanFn = std::function<SpanMorphism(int, int, int)>;

/// Accumulates one sparse relation.
class Relation {
 public:
  void add(std::size_t i, const Int& v) {
    if (sgn(v) != 0) entries_[i] += v;
  }
  SparseVector take() {
    SparseVector out;
    for (auto& [i, v] : entries_)
      if (sgn(v) != 0) out.emplace_back(i, std::move(v));
    entries_.clear();
    return out;
  }

 private:
  std::map<std::size_t, Int> entries_;
};

/// T composed with a functor into its category, given on objects and basis spans.
MackeyPtr pull_back(Variance v, std::shared_ptr<const OrbitCategory> cat, const std::vector<FgAbGroup>& values,
                    const std::function<IntMatrix(const SpanMorphism&)>& act, const SpanFn& span, bool validate) {
  const int n = cat->num_objects();
  MackeyFunctor::Actions actions(n * n);
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      for (std::size_t i = 0; i < cat->basis_size(h, k); ++i) actions[h * n + k].push_back(act(span(h, k, int(i))));
  return std::make_shared<const MackeyFunctor>(v, std::move(cat), values, std::move(actions), validate);
}

}  // namespace

// ------------------------------------------------------------ MackeyFunctor

MackeyFunctor::MackeyFunctor(Variance v, std::shared_ptr<const OrbitCategory> cat, std::vector<FgAbGroup> values,
                             Actions actions, bool validate)
    : variance_(v), cat_(std::move(cat)), values_(std::move(values)), actions_(std::move(actions)) {
  const int n = num_objects();
  if (static_cast<int>(values_.size()) != n)
    throw Error(ErrorKind::ObjectMismatch, "functor has " + std::to_string(values_.size()) + " values for " +
                                               std::to_string(n) + " objects");
  if (static_cast<int>(actions_.size()) != n * n) throw Error(ErrorKind::ObjectMismatch, "functor action table has wrong size");
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k) {
      auto& acts = actions_[h * n + k];
      if (acts.size() != cat_->basis_size(h, k))
        throw Error(ErrorKind::ObjectMismatch, "wrong number of span actions between objects " + std::to_string(h) +
                                                   " and " + std::to_string(k));
      const FgAbGroup& src = contra(v) ? values_[k] : values_[h];
      const FgAbGroup& tgt = contra(v) ? values_[h] : values_[k];
      for (std::size_t i = 0; i < acts.size(); ++i) {
        IntMatrix& m = acts[i];
        if (m.rows() != tgt.ngens() || m.cols() != src.ngens())
          throw Error(ErrorKind::ObjectMismatch, "action of " + cat_->describe(h, k, int(i)) + " has wrong shape");
        reduce_rows(m, tgt.orders());
        if (!AbMap(src, tgt, m).is_well_defined())
          throw Error(ErrorKind::FunctorialityFailure, "action of " + cat_->describe(h, k, int(i)) + " is not a homomorphism",
                      cat_->describe(h, k, int(i)));
      }
    }
  if (validate) {
    if (auto d = functoriality_defect()) throw Error(ErrorKind::FunctorialityFailure, "functor is not functorial: " + *d, *d);
  }
}

const FgAbGroup& MackeyFunctor::act_source(const SpanMorphism& f) const {
  return contra(variance_) ? values_[f.tgt] : values_[f.src];
}

const FgAbGroup& MackeyFunctor::act_target(const SpanMorphism& f) const {
  return contra(variance_) ? values_[f.src] : values_[f.tgt];
}

IntMatrix MackeyFunctor::act(const SpanMorphism& f) const {
  const FgAbGroup& src = act_source(f);
  const FgAbGroup& tgt = act_target(f);
  IntMatrix m(tgt.ngens(), src.ngens());
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    if (sgn(f.coeffs[i]) != 0) m += action(f.src, f.tgt, int(i)).scaled(f.coeffs[i]);
  reduce_rows(m, tgt.orders());
  return m;
}

AbMap MackeyFunctor::act_map(const SpanMorphism& f) const { return AbMap(act_source(f), act_target(f), act(f)); }

std::optional<std::string> MackeyFunctor::functoriality_defect() const {
  const int n = num_objects();
  const OrbitCategory& cat = *cat_;
  for (int h = 0; h < n; ++h) {
    const IntMatrix& id = action(h, h, cat.identity_index(h));
    if (id != reduced(IntMatrix::identity(values_[h].ngens()), values_[h]))
      return "identity of object " + std::to_string(h) + " does not act as the identity";
  }
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      for (int m = 0; m < n; ++m) {
        const std::size_t bi = cat.basis_size(h, k), bj = cat.basis_size(k, m);
        for (std::size_t i = 0; i < bi; ++i)
          for (std::size_t j = 0; j < bj; ++j) {
            SpanMorphism c(h, m, 0);
            c.coeffs = cat.compose_basis(h, k, m, int(i), int(j));
            const IntMatrix lhs = act(c);
            const IntMatrix& a = action(h, k, int(i));
            const IntMatrix& b = action(k, m, int(j));
            const IntMatrix rhs = contra(variance_) ? reduced(a * b, values_[h]) : reduced(b * a, values_[m]);
            if (lhs != rhs) return cat.describe(h, k, int(i)) + " then " + cat.describe(k, m, int(j));
          }
      }
  return std::nullopt;
}

bool MackeyFunctor::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const FgAbGroup& g) { return g.is_zero(); });
}

std::optional<std::string> NatTransf::naturality_defect() const {
  const MackeyFunctor& t = *source;
  const MackeyFunctor& u = *target;
  if (t.variance() != u.variance()) return std::string("source and target have different variance");
  const OrbitCategory& cat = t.category();
  const int n = cat.num_objects();
  for (int h = 0; h < n; ++h)
    if (!component(h).is_well_defined()) return "component at object " + std::to_string(h) + " is not a homomorphism";
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      for (std::size_t i = 0; i < cat.basis_size(h, k); ++i) {
        IntMatrix lhs, rhs;
        if (contra(t.variance())) {
          lhs = reduced(components[h] * t.action(h, k, int(i)), u.value(h));
          rhs = reduced(u.action(h, k, int(i)) * components[k], u.value(h));
        } else {
          lhs = reduced(components[k] * t.action(h, k, int(i)), u.value(k));
          rhs = reduced(u.action(h, k, int(i)) * components[h], u.value(k));
        }
        if (lhs != rhs) return "square for " + cat.describe(h, k, int(i)) + " does not commute";
      }
  return std::nullopt;
}

// ------------------------------------------------------------- constructions

MackeyPtr free_functor(std::shared_ptr<const OrbitCategory> cat, Variance v, int a) {
  const int n = cat->num_objects();
  std::vector<FgAbGroup> values;
  for (int b = 0; b < n; ++b)
    values.push_back(FgAbGroup::free(contra(v) ? cat->basis_size(b, a) : cat->basis_size(a, b)));
  MackeyFunctor::Actions actions(n * n);
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      for (std::size_t i = 0; i < cat->basis_size(h, k); ++i) {
        if (contra(v)) {
          // phi: k -> a goes to alpha then phi
          IntMatrix m(cat->basis_size(h, a), cat->basis_size(k, a));
          for (std::size_t p = 0; p < m.cols(); ++p) m.set_column(p, cat->compose_basis(h, k, a, int(i), int(p)));
          actions[h * n + k].push_back(std::move(m));
        } else {
          IntMatrix m(cat->basis_size(a, k), cat->basis_size(a, h));
          for (std::size_t p = 0; p < m.cols(); ++p) m.set_column(p, cat->compose_basis(a, h, k, int(p), int(i)));
          actions[h * n + k].push_back(std::move(m));
        }
      }
  auto f = std::make_shared<MackeyFunctor>(v, std::move(cat), std::move(values), std::move(actions), false);
  f->name = (contra(v) ? "A_" : "A^") + std::to_string(a);
  return f;
}

MackeyPtr builtin_functor(std::shared_ptr<const OrbitCategory> cat, const std::string& name, Variance v) {
  const int n = cat->num_objects();
  if (name == "burnside") {
    auto a = free_functor(cat, Variance::Contravariant, n - 1);
    MackeyPtr out = contra(v) ? a : transpose_variance(*a);
    auto named = std::make_shared<MackeyFunctor>(*out);
    named->name = name;
    return named;
  }
  MackeyFunctor::Actions actions(n * n);
  std::vector<FgAbGroup> values;
  if (name == "constant_Z") {
    values.assign(n, FgAbGroup::free(1));
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k)
        for (std::size_t i = 0; i < cat->basis_size(h, k); ++i)
          actions[h * n + k].push_back(IntMatrix{{cat->left_index(h, k, int(i))}});
  } else if (name == "zero") {
    values.assign(n, FgAbGroup::zero());
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k) actions[h * n + k].assign(cat->basis_size(h, k), IntMatrix());
  } else {
    throw Error(ErrorKind::UnknownExample, "unknown coefficient functor '" + name + "'");
  }
  auto t = std::make_shared<MackeyFunctor>(Variance::Contravariant, cat, std::move(values), std::move(actions), true);
  t->name = name;
  if (contra(v)) return t;
  auto s = std::make_shared<MackeyFunctor>(*transpose_variance(*t));
  s->name = name;
  return s;
}

MackeyPtr transpose_variance(const MackeyFunctor& t) {
  const OrbitCategory& cat = t.category();
  const int n = cat.num_objects();
  MackeyFunctor::Actions actions(n * n);
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      for (std::size_t i = 0; i < cat.basis_size(h, k); ++i)
        actions[h * n + k].push_back(t.action(k, h, cat.transpose_index(h, k, int(i))));
  auto out = std::make_shared<MackeyFunctor>(opposite(t.variance()), t.category_ptr(), t.values(), std::move(actions), false);
  out->name = t.name;
  return out;
}

MackeyPtr direct_sum(const std::vector<MackeyPtr>& parts) {
  if (parts.empty()) throw Error(ErrorKind::Usage, "direct sum of no functors");
  const MackeyFunctor& first = *parts.front();
  const OrbitCategory& cat = first.category();
  const int n = cat.num_objects();
  for (const auto& p : parts)
    if (p->variance() != first.variance() || p->num_objects() != n)
      throw Error(ErrorKind::ObjectMismatch, "direct sum of functors on different categories");
  std::vector<FgAbGroup> values;
  for (int h = 0; h < n; ++h) {
    std::vector<FgAbGroup> vs;
    for (const auto& p : parts) vs.push_back(p->value(h));
    values.push_back(FgAbGroup::direct_sum(vs));
  }
  MackeyFunctor::Actions actions(n * n);
  const bool c = contra(first.variance());
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      for (std::size_t i = 0; i < cat.basis_size(h, k); ++i) {
        const FgAbGroup& src = c ? values[k] : values[h];
        const FgAbGroup& tgt = c ? values[h] : values[k];
        IntMatrix m(tgt.ngens(), src.ngens());
        std::size_t r = 0, col = 0;
        for (const auto& p : parts) {
          const IntMatrix& a = p->action(h, k, int(i));
          m.place(r, col, a);
          r += a.rows();
          col += a.cols();
        }
        actions[h * n + k].push_back(std::move(m));
      }
  return std::make_shared<const MackeyFunctor>(first.variance(), first.category_ptr(), std::move(values), std::move(actions),
                                               false);
}

NatTransf quotient_map(const MackeyPtr& t, const std::vector<IntMatrix>& sub) {
  const OrbitCategory& cat = t->category();
  const int n = cat.num_objects();
  std::vector<Subquotient> sq;
  std::vector<FgAbGroup> values;
  for (int h = 0; h < n; ++h) {
    const std::size_t g = t->value(h).ngens();
    const IntMatrix s = sub[h].rows() == g ? sub[h] : IntMatrix(g, 0);
    sq.push_back(Subquotient::quotient(g, IntMatrix::hstack(s, relation_lattice(t->value(h)))));
    values.push_back(sq.back().group());
  }
  MackeyFunctor::Actions actions(n * n);
  const bool c = contra(t->variance());
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      for (std::size_t i = 0; i < cat.basis_size(h, k); ++i) {
        const IntMatrix& a = t->action(h, k, int(i));
        actions[h * n + k].push_back(c ? sq[h].coords_matrix(a * sq[k].lift_matrix())
                                       : sq[k].coords_matrix(a * sq[h].lift_matrix()));
      }
  NatTransf out;
  out.source = t;
  out.target = std::make_shared<const MackeyFunctor>(t->variance(), t->category_ptr(), std::move(values), std::move(actions),
                                                     false);
  for (int h = 0; h < n; ++h) out.components.push_back(sq[h].coords_matrix(IntMatrix::identity(t->value(h).ngens())));
  return out;
}

MackeyPtr quotient_functor(const MackeyFunctor& t, const std::vector<IntMatrix>& sub) {
  return quotient_map(std::make_shared<const MackeyFunctor>(t), sub).target;
}

MackeyPtr cokernel_functor(const NatTransf& f) { return quotient_map(f.target, f.components).target; }

NatTransf kernel_functor(const NatTransf& f) {
  const MackeyFunctor& t = *f.source;
  const OrbitCategory& cat = t.category();
  const int n = cat.num_objects();
  std::vector<Subquotient> sq;
  std::vector<FgAbGroup> values;
  for (int h = 0; h < n; ++h) {
    sq.push_back(kernel(f.component(h)));
    values.push_back(sq.back().group());
  }
  MackeyFunctor::Actions actions(n * n);
  const bool c = contra(t.variance());
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      for (std::size_t i = 0; i < cat.basis_size(h, k); ++i) {
        const IntMatrix& a = t.action(h, k, int(i));
        actions[h * n + k].push_back(c ? sq[h].coords_matrix(a * sq[k].lift_matrix())
                                       : sq[k].coords_matrix(a * sq[h].lift_matrix()));
      }
  NatTransf out;
  out.source = std::make_shared<const MackeyFunctor>(t.variance(), t.category_ptr(), std::move(values), std::move(actions),
                                                     false);
  out.target = f.source;
  for (int h = 0; h < n; ++h) out.components.push_back(reduced(sq[h].lift_matrix(), t.value(h)));
  return out;
}

NatTransf yoneda_map(const MackeyPtr& free, const MackeyPtr& t, int a, const IntVector& x) {
  const OrbitCategory& cat = t->category();
  const int n = cat.num_objects();
  const bool c = contra(t->variance());
  NatTransf out{free, t, {}};
  for (int b = 0; b < n; ++b) {
    const std::size_t nb = c ? cat.basis_size(b, a) : cat.basis_size(a, b);
    IntMatrix m(t->value(b).ngens(), nb);
    for (std::size_t p = 0; p < nb; ++p) {
      const SpanMorphism phi = c ? cat.basis_morphism(b, a, int(p)) : cat.basis_morphism(a, b, int(p));
      m.set_column(p, t->value(b).reduced(t->act(phi) * x));
    }
    out.components.push_back(std::move(m));
  }
  return out;
}

bool is_isomorphism(const NatTransf& f) {
  for (int h = 0; h < f.source->num_objects(); ++h)
    if (!is_isomorphism(f.component(h))) return false;
  return true;
}

bool same_values(const MackeyFunctor& a, const MackeyFunctor& b) {
  if (a.variance() != b.variance() || a.num_objects() != b.num_objects()) return false;
  for (int h = 0; h < a.num_objects(); ++h)
    if (!(a.value(h) == b.value(h))) return false;
  return true;
}

MackeyPtr random_functor(std::shared_ptr<const OrbitCategory> cat, Variance v, std::mt19937_64& rng) {
  const int n = cat->num_objects();
  auto pick = [&](int bound) { return static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); };
  std::vector<int> rel_objs, gen_objs;
  const int ngen = 1 + pick(2), nrel = pick(3);
  for (int i = 0; i < ngen; ++i) gen_objs.push_back(pick(n));
  for (int i = 0; i < nrel; ++i) rel_objs.push_back(pick(n));
  std::vector<MackeyPtr> gens;
  for (int a : gen_objs) gens.push_back(free_functor(cat, Variance::Contravariant, a));
  const MackeyPtr f0 = direct_sum(gens);
  MackeyPtr t = f0;
  if (nrel > 0) {
    std::vector<MackeyPtr> rels;
    for (int a : rel_objs) rels.push_back(free_functor(cat, Variance::Contravariant, a));
    const MackeyPtr f1 = direct_sum(rels);
    std::vector<NatTransf> parts;
    for (std::size_t r = 0; r < rel_objs.size(); ++r) {
      static const int choices[] = {0, 0, 0, 1, -1, 2, 3, -2};
      IntVector x(f0->value(rel_objs[r]).ngens());
      for (auto& e : x) e = choices[pick(8)];
      parts.push_back(yoneda_map(rels[r], f0, rel_objs[r], x));
    }
    NatTransf map{f1, f0, {}};
    for (int b = 0; b < n; ++b) {
      IntMatrix m(f0->value(b).ngens(), f1->value(b).ngens());
      std::size_t off = 0;
      for (const auto& y : parts) {
        m.place(0, off, y.components[b]);
        off += y.components[b].cols();
      }
      map.components.push_back(std::move(m));
    }
    t = cokernel_functor(map);
  }
  auto out = std::make_shared<MackeyFunctor>(contra(v) ? *t : *transpose_variance(*t));
  out->name = "random";
  return out;
}

// --------------------------------------------------------------- Hom and (x)

HomResult hom_mackey(const MackeyFunctor& t, const MackeyFunctor& u) {
  if (t.variance() != u.variance() || t.num_objects() != u.num_objects())
    throw Error(ErrorKind::ObjectMismatch, "Hom of functors with different variance or category");
  const OrbitCategory& cat = t.category();
  const int n = cat.num_objects();
  const bool c = contra(t.variance());
  std::vector<FgAbGroup> blocks;
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (int b = 0; b < n; ++b) {
    blocks.push_back(hom_ab(t.value(b), u.value(b)));
    offset.push_back(total);
    total += blocks.back().ngens();
  }
  const FgAbGroup source = FgAbGroup::direct_sum(blocks);

  // One defect block per generating span.
  std::vector<FgAbGroup> defect_groups;
  std::vector<std::vector<IntVector>> columns;  // per defect block, per source generator
  for (const auto& g : cat.generators()) {
    const int h = g.h, k = g.k;
    const FgAbGroup& dsrc = c ? t.value(k) : t.value(h);
    const FgAbGroup& dtgt = c ? u.value(h) : u.value(k);
    const IntMatrix& ta = t.action(h, k, g.index);
    const IntMatrix& ua = u.action(h, k, g.index);
    defect_groups.push_back(hom_ab(dsrc, dtgt));
    std::vector<IntVector> cols(total, IntVector(defect_groups.back().ngens()));
    auto add = [&](int b, bool first_factor) {
      for (std::size_t e = 0; e < blocks[b].ngens(); ++e) {
        const IntMatrix phi = hom_matrix(t.value(b), u.value(b), unit(blocks[b].ngens(), e));
        IntMatrix d = first_factor ? phi * ta : ua * phi;
        if (!first_factor) d = d.scaled(Int(-1));
        const IntVector v = hom_coords(dsrc, dtgt, reduced(d, dtgt));
        IntVector& col = cols[offset[b] + e];
        for (std::size_t r = 0; r < v.size(); ++r) col[r] += v[r];
      }
    };
    // contravariant: phi_h T(a) - U(a) phi_k ; covariant: phi_k S(a) - U(a) phi_h
    add(c ? h : k, true);
    add(c ? k : h, false);
    columns.push_back(std::move(cols));
  }
  const FgAbGroup target = FgAbGroup::direct_sum(defect_groups);
  IntMatrix m(target.ngens(), total);
  std::size_t row = 0;
  for (std::size_t d = 0; d < columns.size(); ++d) {
    const std::size_t rows = defect_groups[d].ngens();
    for (std::size_t j = 0; j < total; ++j)
      for (std::size_t r = 0; r < rows; ++r) m(row + r, j) = columns[d][j][r];
    row += rows;
  }
  const Subquotient k = kernel(AbMap(source, target, m));
  HomResult out;
  out.group = k.group();
  for (std::size_t i = 0; i < out.group.ngens(); ++i) {
    const IntVector x = k.lift(i);
    std::vector<IntMatrix> comps;
    for (int b = 0; b < n; ++b) {
      IntVector part(x.begin() + offset[b], x.begin() + offset[b] + blocks[b].ngens());
      comps.push_back(hom_matrix(t.value(b), u.value(b), blocks[b].reduced(part)));
    }
    out.generators.push_back(std::move(comps));
  }
  return out;
}

TensorProduct::TensorProduct(const MackeyFunctor& t, const MackeyFunctor& s) {
  if (t.variance() != Variance::Contravariant || s.variance() != Variance::Covariant)
    throw Error(ErrorKind::ObjectMismatch, "tensor product needs a contravariant and a covariant functor");
  if (t.num_objects() != s.num_objects()) throw Error(ErrorKind::ObjectMismatch, "tensor of functors on different groups");
  const OrbitCategory& cat = t.category();
  const int n = cat.num_objects();
  for (int a = 0; a < n; ++a) {
    offset_.push_back(total_);
    width_.push_back(s.value(a).ngens());
    total_ += t.value(a).ngens() * s.value(a).ngens();
  }
  auto at = [&](int a, std::size_t i, std::size_t j) { return offset_[a] + i * width_[a] + j; };
  std::vector<SparseVector> rels;
  Relation r;
  for (int a = 0; a < n; ++a)
    for (std::size_t i = 0; i < t.value(a).ngens(); ++i)
      for (std::size_t j = 0; j < s.value(a).ngens(); ++j) {
        Int o;
        mpz_gcd(o.get_mpz_t(), t.value(a).order(i).get_mpz_t(), s.value(a).order(j).get_mpz_t());
        if (sgn(o) == 0) continue;
        r.add(at(a, i, j), o);
        rels.push_back(r.take());
      }
  for (const auto& g : cat.generators()) {
    const IntMatrix& ta = t.action(g.h, g.k, g.index);  // T(k) -> T(h)
    const IntMatrix& sa = s.action(g.h, g.k, g.index);  // S(h) -> S(k)
    for (std::size_t p = 0; p < t.value(g.k).ngens(); ++p)
      for (std::size_t q = 0; q < s.value(g.h).ngens(); ++q) {
        for (std::size_t i = 0; i < ta.rows(); ++i) r.add(at(g.h, i, q), ta(i, p));
        for (std::size_t j = 0; j < sa.rows(); ++j) r.add(at(g.k, p, j), -sa(j, q));
        rels.push_back(r.take());
      }
  }
  sq_ = Subquotient::quotient(total_, std::move(rels));
}

IntVector TensorProduct::element(int a, const IntVector& x, const IntVector& y) const {
  IntVector v(total_);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) v[offset_[a] + i * width_[a] + j] += x[i] * y[j];
  return sq_.coords(v);
}

FgAbGroup tensor_mackey(const MackeyFunctor& t, const MackeyFunctor& s) { return TensorProduct(t, s).group(); }

// ------------------------------------------------------------ Kan extension

KanExtension::KanExtension(KanSource src) : src_(std::move(src)) {
  levels_.resize(src_.target->num_objects());
}

KanExtension::Level KanExtension::build(int b) const {
  const OrbitCategory& cat = *src_.target;
  const bool c = contra(src_.variance);
  const std::size_t na = src_.values.size();
  auto nbasis = [&](int a) {
    return c ? cat.basis_size(b, src_.image[a]) : cat.basis_size(src_.image[a], b);
  };
  Level lv;
  for (std::size_t a = 0; a < na; ++a) {
    lv.offset.push_back(lv.dim);
    lv.dim += nbasis(int(a)) * ngens(a);
  }
  auto at = [&](int a, std::size_t u, std::size_t t) { return lv.offset[a] + u * ngens(a) + t; };
  std::vector<SparseVector> rels;
  Relation r;
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t u = 0; u < nbasis(int(a)); ++u)
      for (std::size_t t = 0; t < ngens(a); ++t) {
        const Int& o = src_.values[a].order(t);
        if (sgn(o) == 0) continue;
        r.add(at(int(a), u, t), o);
        rels.push_back(r.take());
      }
  for (const auto& gen : src_.generators) {
    // contravariant: (u then F g) (x) t ~ u (x) T(g) t, u : b -> F(from), t in values[to]
    // covariant:     (F g then u) (x) s ~ u (x) S(g) s, u : F(to) -> b, s in values[from]
    const int near = c ? gen.from : gen.to;   // block holding u
    const int far = c ? gen.to : gen.from;    // block holding the composite
    const std::size_t nu = nbasis(near);
    for (std::size_t u = 0; u < nu; ++u) {
      const SpanMorphism um = c ? cat.basis_morphism(b, src_.image[near], int(u))
                                : cat.basis_morphism(src_.image[near], b, int(u));
      const SpanMorphism comp = c ? cat.compose(um, gen.image) : cat.compose(gen.image, um);
      for (std::size_t t = 0; t < ngens(far); ++t) {
        for (std::size_t u2 = 0; u2 < comp.coeffs.size(); ++u2) r.add(at(far, u2, t), comp.coeffs[u2]);
        for (std::size_t t2 = 0; t2 < ngens(near); ++t2) r.add(at(near, u, t2), -gen.action(t2, t));
        rels.push_back(r.take());
      }
    }
  }
  lv.sq = Subquotient::quotient(lv.dim, std::move(rels));
  return lv;
}

const KanExtension::Level& KanExtension::level(int b) const {
  {
    std::lock_guard lock(mutex_);
    if (levels_[b]) return *levels_[b];
  }
  auto lv = std::make_unique<Level>(build(b));
  std::lock_guard lock(mutex_);
  if (!levels_[b]) levels_[b] = std::move(lv);
  return *levels_[b];
}

IntMatrix KanExtension::act(const SpanMorphism& beta) const {
  const OrbitCategory& cat = *src_.target;
  const bool c = contra(src_.variance);
  const int from = c ? beta.tgt : beta.src;  // level acted on
  const int to = c ? beta.src : beta.tgt;
  const Level& lf = level(from);
  const Level& lt = level(to);
  const IntMatrix& lift = lf.sq.lift_matrix();
  IntMatrix image(lt.dim, lift.cols());
  for (std::size_t a = 0; a < src_.values.size(); ++a) {
    const int fa = src_.image[a];
    const std::size_t nu = c ? cat.basis_size(from, fa) : cat.basis_size(fa, from);
    const std::size_t g = ngens(a);
    for (std::size_t u = 0; u < nu; ++u) {
      bool any = false;
      for (std::size_t t = 0; t < g && !any; ++t)
        for (std::size_t col = 0; col < lift.cols() && !any; ++col) any = sgn(lift(lf.offset[a] + u * g + t, col)) != 0;
      if (!any) continue;
      const SpanMorphism comp = c ? cat.compose(beta, cat.basis_morphism(from, fa, int(u)))
                                  : cat.compose(cat.basis_morphism(fa, from, int(u)), beta);
      for (std::size_t u2 = 0; u2 < comp.coeffs.size(); ++u2) {
        if (sgn(comp.coeffs[u2]) == 0) continue;
        for (std::size_t t = 0; t < g; ++t)
          for (std::size_t col = 0; col < lift.cols(); ++col) {
            const Int& x = lift(lf.offset[a] + u * g + t, col);
            if (sgn(x) != 0) image(lt.offset[a] + u2 * g + t, col) += comp.coeffs[u2] * x;
          }
      }
    }
  }
  return lt.sq.coords_matrix(image);
}

IntVector KanExtension::element(int b, int a, const SpanMorphism& u, const IntVector& t) const {
  const Level& lv = level(b);
  IntVector x(lv.dim);
  const std::size_t g = ngens(a);
  for (std::size_t i = 0; i < u.coeffs.size(); ++i)
    if (sgn(u.coeffs[i]) != 0)
      for (std::size_t j = 0; j < g; ++j) x[lv.offset[a] + i * g + j] += u.coeffs[i] * t[j];
  return lv.sq.coords(x);
}

MackeyPtr KanExtension::functor(bool validate) const {
  const auto& cat = src_.target;
  const int n = cat->num_objects();
  std::vector<FgAbGroup> values;
  for (int b = 0; b < n; ++b) values.push_back(value(b));
  return pull_back(
      src_.variance, cat, values, [&](const SpanMorphism& f) { return act(f); },
      [&](int h, int k, int i) { return cat->basis_morphism(h, k, i); }, validate);
}

// ------------------------------------------------- restriction and induction

MackeyPtr restrict_group(const MackeyFunctor& t, const Induction& ind) {
  const int n = ind.sub().num_objects();
  std::vector<FgAbGroup> values;
  for (int h = 0; h < n; ++h) values.push_back(t.value(ind.object(h)));
  return pull_back(
      t.variance(), ind.sub_ptr(), values, [&](const SpanMorphism& f) { return t.act(f); },
      [&](int h, int k, int i) { return ind.span(h, k, i); }, false);
}

KanSource induction_source(const MackeyFunctor& c, const Induction& ind) {
  KanSource src;
  src.variance = c.variance();
  src.target = ind.ambient_ptr();
  src.values = c.values();
  for (int h = 0; h < c.num_objects(); ++h) src.image.push_back(ind.object(h));
  for (const auto& g : c.category().generators())
    src.generators.push_back({g.h, g.k, ind.span(g.h, g.k, g.index), c.action(g.h, g.k, g.index)});
  return src;
}

MackeyPtr induce_group(const MackeyFunctor& c, const Induction& ind) {
  return KanExtension(induction_source(c, ind)).functor(false);
}

// ----------------------------------------------------------------- products

ProductContext::ProductContext(std::shared_ptr<const OrbitCategory> a, std::shared_ptr<const OrbitCategory> b)
    : a_(std::move(a)), b_(std::move(b)) {
  auto g = std::make_shared<const FiniteGroup>(FiniteGroup::product(a_->group(), b_->group()));
  ab_ = OrbitCategory::create(g);
}

int ProductContext::product_subgroup(int s, int t) const {
  Subgroup out;
  for (Elem x : a_->lattice().subgroup(s))
    for (Elem y : b_->lattice().subgroup(t)) out.push_back(pair(x, y));
  std::sort(out.begin(), out.end());
  const int idx = ab_->lattice().index_of(out);
  if (idx < 0) throw std::logic_error("product of subgroups missing from the product lattice");
  return idx;
}

int ProductContext::product_object(int h, int k) const {
  return ab_->lattice().class_of(product_subgroup(a_->rep(h), b_->rep(k)));
}

SpanMorphism ProductContext::product_span(const SpanMorphism& f, const SpanMorphism& g) const {
  SpanMorphism out = ab_->zero(product_object(f.src, g.src), product_object(f.tgt, g.tgt));
  const int hs = product_subgroup(a_->rep(f.src), b_->rep(g.src));
  const int ks = product_subgroup(a_->rep(f.tgt), b_->rep(g.tgt));
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (sgn(f.coeffs[i]) == 0) continue;
    const Span& si = a_->basis(f.src, f.tgt)[i];
    for (std::size_t j = 0; j < g.coeffs.size(); ++j) {
      if (sgn(g.coeffs[j]) == 0) continue;
      const Span& sj = b_->basis(g.src, g.tgt)[j];
      const auto r = ab_->locate(hs, ks, product_subgroup(si.J, sj.J), 0, pair(si.g, sj.g));
      out.coeffs[r.index] += f.coeffs[i] * g.coeffs[j];
    }
  }
  return out;
}

std::shared_ptr<const Induction> ProductContext::diagonal() const {
  std::lock_guard lock(mutex_);
  if (!diagonal_) {
    if (a_->group().table() != b_->group().table())
      throw Error(ErrorKind::ObjectMismatch, "internal product of functors over different groups");
    std::vector<Elem> embed;
    for (Elem g = 0; g < a_->group().order(); ++g) embed.push_back(pair(g, g));
    diagonal_ = std::make_shared<const Induction>(a_, ab_, embed);
  }
  return diagonal_;
}

KanSource box_source(const MackeyFunctor& t, const MackeyFunctor& u, const ProductContext& ctx) {
  if (t.variance() != u.variance()) throw Error(ErrorKind::ObjectMismatch, "box product of functors with different variance");
  const OrbitCategory& A = ctx.left();
  const OrbitCategory& B = ctx.right();
  const int na = A.num_objects(), nb = B.num_objects();
  KanSource src;
  src.variance = t.variance();
  src.target = ctx.product_ptr();
  for (int h = 0; h < na; ++h)
    for (int k = 0; k < nb; ++k) {
      src.values.push_back(tensor_ab(t.value(h), u.value(k)));
      src.image.push_back(ctx.product_object(h, k));
    }
  for (const auto& g : A.generators()) {
    const SpanMorphism alpha = A.basis_morphism(g.h, g.k, g.index);
    const AbMap ta = t.act_map(alpha);
    for (int k = 0; k < nb; ++k)
      src.generators.push_back({g.h * nb + k, g.k * nb + k, ctx.product_span(alpha, B.identity(k)),
                                tensor_map(ta, AbMap::identity(u.value(k))).matrix});
  }
  for (const auto& g : B.generators()) {
    const SpanMorphism beta = B.basis_morphism(g.h, g.k, g.index);
    const AbMap ub = u.act_map(beta);
    for (int h = 0; h < na; ++h)
      src.generators.push_back({h * nb + g.h, h * nb + g.k, ctx.product_span(A.identity(h), beta),
                                tensor_map(AbMap::identity(t.value(h)), ub).matrix});
  }
  return src;
}

MackeyPtr box_external(const MackeyFunctor& t, const MackeyFunctor& u, const ProductContext& ctx) {
  return KanExtension(box_source(t, u, ctx)).functor(false);
}

MackeyPtr box_internal(const MackeyFunctor& t, const MackeyFunctor& u, const ProductContext& ctx) {
  return box_internal(KanExtension(box_source(t, u, ctx)), ctx);
}

MackeyPtr box_internal(const KanExtension& kan, const ProductContext& ctx) {
  const auto diag = ctx.diagonal();
  const int n = diag->sub().num_objects();
  std::vector<FgAbGroup> values;
  for (int h = 0; h < n; ++h) values.push_back(kan.value(diag->object(h)));
  return pull_back(
      kan.source().variance, diag->sub_ptr(), values, [&](const SpanMorphism& f) { return kan.act(f); },
      [&](int h, int k, int i) { return diag->span(h, k, i); }, false);
}

namespace {

/// Orbits of G/J x G/L for every pair of objects.
class ProductOrbits {
 public:
  explicit ProductOrbits(const OrbitCategory& cat) : cat_(cat), n_(cat.num_objects()) {
    const SubgroupLattice& lat = cat.lattice();
    for (int j = 0; j < n_; ++j)
      for (int l = 0; l < n_; ++l)
        orbits_.push_back(decompose_orbits(lat, GSet::product(GSet::cosets(lat, cat.rep(j)), GSet::cosets(lat, cat.rep(l)))));
  }
  const std::vector<Orbit>& orbits(int j, int l) const { return orbits_[j * n_ + l]; }
  int size(int j, int l) const {
    return cat_.lattice().num_cosets(cat_.rep(j)) * cat_.lattice().num_cosets(cat_.rep(l));
  }

  /// Matrix between orbits for alpha x 1 (side 0) or 1 x alpha (side 1), with
  /// alpha basis span i : a -> b and the other factor G/rep(c).
  std::vector<std::vector<SpanMorphism>> times(int side, int a, int b, int i, int c) const {
    const SubgroupLattice& lat = cat_.lattice();
    const FiniteGroup& G = cat_.group();
    const Span& s = cat_.basis(a, b)[i];
    const GSet leg = GSet::cosets(lat, s.J);
    const GSet other = GSet::cosets(lat, cat_.rep(c));
    const GSet w = side == 0 ? GSet::product(leg, other) : GSet::product(other, leg);
    const int nc = other.size;
    const int na = lat.num_cosets(cat_.rep(a)), nbb = lat.num_cosets(cat_.rep(b));
    std::vector<int> to_x(w.size), to_y(w.size);
    for (int p = 0; p < w.size; ++p) {
      const int lp = side == 0 ? p / nc : p % leg.size;
      const int op = side == 0 ? p % nc : p / leg.size;
      const Elem x = lat.coset_reps(s.J)[lp];
      const int xa = lat.coset_index(cat_.rep(a), x);
      const int xb = lat.coset_index(cat_.rep(b), G.mul(x, s.g));
      to_x[p] = side == 0 ? xa * nc + op : op * na + xa;
      to_y[p] = side == 0 ? xb * nc + op : op * nbb + xb;
    }
    if (side == 0)
      return gset_span_matrix(cat_, w, to_x, to_y, orbits(a, c), size(a, c), orbits(b, c), size(b, c));
    return gset_span_matrix(cat_, w, to_x, to_y, orbits(c, a), size(c, a), orbits(c, b), size(c, b));
  }

 private:
  const OrbitCategory& cat_;
  int n_;
  std::vector<std::vector<Orbit>> orbits_;
};

}  // namespace

struct MixedProduct::Impl {
  // Generators at level l: (k, j, orbit r of G/J x G/L, u : k -> orbit r, s, t).
  struct Level {
    std::map<std::tuple<int, int, int>, std::size_t> offset;
    std::size_t dim = 0;
    Subquotient sq;
  };
  std::shared_ptr<const OrbitCategory> cat;
  ProductOrbits po;
  std::vector<std::size_t> ns, nt;
  std::vector<Level> levels;
  std::string name;

  explicit Impl(std::shared_ptr<const OrbitCategory> c) : cat(std::move(c)), po(*cat) {}
  std::size_t at(const Level& lv, int k, int j, int r, std::size_t u, std::size_t a, std::size_t b) const {
    return lv.offset.at({k, j, r}) + (u * ns[k] + a) * nt[j] + b;
  }
};

MixedProduct::MixedProduct(const MackeyFunctor& s, const MackeyFunctor& t) {
  if (s.variance() != Variance::Covariant || t.variance() != Variance::Contravariant)
    throw Error(ErrorKind::ObjectMismatch, "mixed product needs a covariant and a contravariant functor");
  if (s.num_objects() != t.num_objects()) throw Error(ErrorKind::ObjectMismatch, "mixed product over different groups");
  auto im = std::make_shared<Impl>(s.category_ptr());
  const OrbitCategory& cat = *im->cat;
  const int n = cat.num_objects();
  const ProductOrbits& po = im->po;
  for (int k = 0; k < n; ++k) {
    im->ns.push_back(s.value(k).ngens());
    im->nt.push_back(t.value(k).ngens());
  }
  auto ns = [&](int k) { return im->ns[k]; };
  auto nt = [&](int j) { return im->nt[j]; };
  using Level = Impl::Level;
  std::vector<Level>& levels = im->levels;
  levels.resize(n);
  for (int l = 0; l < n; ++l) {
    Level& lv = levels[l];
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (std::size_t r = 0; r < po.orbits(j, l).size(); ++r) {
          lv.offset[{k, j, int(r)}] = lv.dim;
          lv.dim += cat.basis_size(k, po.orbits(j, l)[r].cls) * ns(k) * nt(j);
        }
  }
  auto at = [&](const Level& lv, int k, int j, int r, std::size_t u, std::size_t a, std::size_t b) {
    return im->at(lv, k, j, r, u, a, b);
  };
  // g x 1 matrices for each generating span g : j -> j' and level l.
  for (int l = 0; l < n; ++l) {
    Level& lv = levels[l];
    std::vector<SparseVector> rels;
    Relation rel;
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (std::size_t r = 0; r < po.orbits(j, l).size(); ++r) {
          const int cr = po.orbits(j, l)[r].cls;
          for (std::size_t u = 0; u < cat.basis_size(k, cr); ++u)
            for (std::size_t a = 0; a < ns(k); ++a)
              for (std::size_t b = 0; b < nt(j); ++b) {
                Int o;
                mpz_gcd(o.get_mpz_t(), s.value(k).order(a).get_mpz_t(), t.value(j).order(b).get_mpz_t());
                if (sgn(o) == 0) continue;
                rel.add(at(lv, k, j, int(r), u, a, b), o);
                rels.push_back(rel.take());
              }
        }
    // (f then u) (x) s (x) t ~ u (x) f_* s (x) t
    for (const auto& f : cat.generators()) {
      const int k2 = f.h, k = f.k;
      const IntMatrix& sf = s.action(k2, k, f.index);
      const SpanMorphism fm = cat.basis_morphism(k2, k, f.index);
      for (int j = 0; j < n; ++j)
        for (std::size_t r = 0; r < po.orbits(j, l).size(); ++r) {
          const int cr = po.orbits(j, l)[r].cls;
          for (std::size_t u = 0; u < cat.basis_size(k, cr); ++u) {
            const SpanMorphism comp = cat.compose(fm, cat.basis_morphism(k, cr, int(u)));
            for (std::size_t a = 0; a < ns(k2); ++a)
              for (std::size_t b = 0; b < nt(j); ++b) {
                for (std::size_t u2 = 0; u2 < comp.coeffs.size(); ++u2)
                  rel.add(at(lv, k2, j, int(r), u2, a, b), comp.coeffs[u2]);
                for (std::size_t a2 = 0; a2 < ns(k); ++a2) rel.add(at(lv, k, j, int(r), u, a2, b), -sf(a2, a));
                rels.push_back(rel.take());
              }
          }
        }
    }
    // (u then g x 1) (x) s (x) t ~ u (x) s (x) g^* t
    for (const auto& g : cat.generators()) {
      const int j = g.h, j2 = g.k;
      const IntMatrix& tg = t.action(j, j2, g.index);
      const auto mat = po.times(0, j, j2, g.index, l);
      for (int k = 0; k < n; ++k)
        for (std::size_t r = 0; r < po.orbits(j, l).size(); ++r) {
          const int cr = po.orbits(j, l)[r].cls;
          for (std::size_t u = 0; u < cat.basis_size(k, cr); ++u) {
            const SpanMorphism um = cat.basis_morphism(k, cr, int(u));
            std::vector<SpanMorphism> comps;
            for (std::size_t r2 = 0; r2 < mat[r].size(); ++r2) comps.push_back(cat.compose(um, mat[r][r2]));
            for (std::size_t a = 0; a < ns(k); ++a)
              for (std::size_t b = 0; b < nt(j2); ++b) {
                for (std::size_t r2 = 0; r2 < comps.size(); ++r2)
                  for (std::size_t u2 = 0; u2 < comps[r2].coeffs.size(); ++u2)
                    rel.add(at(lv, k, j2, int(r2), u2, a, b), comps[r2].coeffs[u2]);
                for (std::size_t b2 = 0; b2 < nt(j); ++b2) rel.add(at(lv, k, j, int(r), u, a, b2), -tg(b2, b));
                rels.push_back(rel.take());
              }
          }
        }
    }
    lv.sq = Subquotient::quotient(lv.dim, std::move(rels));
  }
  im->name = s.name + " <> " + t.name;
  impl_ = std::move(im);
}

const FgAbGroup& MixedProduct::value(int l) const { return impl_->levels[l].sq.group(); }

const std::vector<Orbit>& MixedProduct::orbits(int j, int l) const { return impl_->po.orbits(j, l); }

IntVector MixedProduct::element(int l, int k, int j, int r, const SpanMorphism& u, const IntVector& x,
                                const IntVector& y) const {
  const Impl& im = *impl_;
  const Impl::Level& lv = im.levels[l];
  IntVector v(lv.dim);
  for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
    if (sgn(u.coeffs[i]) == 0) continue;
    for (std::size_t a = 0; a < x.size(); ++a)
      for (std::size_t b = 0; b < y.size(); ++b) v[im.at(lv, k, j, r, i, a, b)] += u.coeffs[i] * x[a] * y[b];
  }
  return lv.sq.coords(v);
}

MackeyPtr MixedProduct::functor() const {
  const Impl& im = *impl_;
  const OrbitCategory& cat = *im.cat;
  const int n = cat.num_objects();
  const ProductOrbits& po = im.po;
  const auto& levels = im.levels;
  auto ns = [&](int k) { return im.ns[k]; };
  auto nt = [&](int j) { return im.nt[j]; };
  using Level = Impl::Level;
  auto at = [&](const Level& lv, int k, int j, int r, std::size_t u, std::size_t a, std::size_t b) {
    return im.at(lv, k, j, r, u, a, b);
  };
  // psi : l -> l' acts by u |-> u then (1 x psi).
  MackeyFunctor::Actions actions(n * n);
  std::vector<FgAbGroup> values;
  for (int l = 0; l < n; ++l) values.push_back(levels[l].sq.group());
  for (int l = 0; l < n; ++l)
    for (int l2 = 0; l2 < n; ++l2)
      for (std::size_t i = 0; i < cat.basis_size(l, l2); ++i) {
        const Level& from = levels[l];
        const Level& to = levels[l2];
        const IntMatrix& lift = from.sq.lift_matrix();
        IntMatrix image(to.dim, lift.cols());
        for (int j = 0; j < n; ++j) {
          const auto mat = po.times(1, l, l2, int(i), j);
          for (int k = 0; k < n; ++k)
            for (std::size_t r = 0; r < po.orbits(j, l).size(); ++r) {
              const int cr = po.orbits(j, l)[r].cls;
              for (std::size_t u = 0; u < cat.basis_size(k, cr); ++u) {
                std::vector<SpanMorphism> comps;
                bool computed = false;
                for (std::size_t a = 0; a < ns(k); ++a)
                  for (std::size_t b = 0; b < nt(j); ++b) {
                    const std::size_t src = at(from, k, j, int(r), u, a, b);
                    for (std::size_t col = 0; col < lift.cols(); ++col) {
                      const Int& x = lift(src, col);
                      if (sgn(x) == 0) continue;
                      if (!computed) {
                        const SpanMorphism um = cat.basis_morphism(k, cr, int(u));
                        for (std::size_t r2 = 0; r2 < mat[r].size(); ++r2) comps.push_back(cat.compose(um, mat[r][r2]));
                        computed = true;
                      }
                      for (std::size_t r2 = 0; r2 < comps.size(); ++r2)
                        for (std::size_t u2 = 0; u2 < comps[r2].coeffs.size(); ++u2)
                          if (sgn(comps[r2].coeffs[u2]) != 0)
                            image(at(to, k, j, int(r2), u2, a, b), col) += comps[r2].coeffs[u2] * x;
                    }
                  }
              }
            }
        }
        actions[l * n + l2].push_back(to.sq.coords_matrix(image));
      }
  auto out = std::make_shared<MackeyFunctor>(Variance::Covariant, im.cat, std::move(values), std::move(actions), false);
  out->name = im.name;
  return out;
}

MackeyPtr mixed_product(const MackeyFunctor& s, const MackeyFunctor& t) { return MixedProduct(s, t).functor(); }


// ------------------------------------------------ fixed points and inflation

namespace {

int preimage_of(const SubgroupLattice& g, const QuotientCategory& q, int s) {
  const SubgroupLattice& ql = q.cat->lattice();
  Subgroup pre;
  for (Elem x = 0; x < g.group().order(); ++x)
    if (ql.contains(s, q.quotient.project[x])) pre.push_back(x);
  return g.index_of(pre);
}

}  // namespace

int quotient_subgroup(const SubgroupLattice& g, const QuotientCategory& q, int s) {
  Subgroup img;
  for (Elem x : g.subgroup(s)) img.push_back(q.quotient.project[x]);
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return q.cat->lattice().index_of(img);
}

int quotient_object(const OrbitCategory& g, const QuotientCategory& q, int h) {
  return q.cat->lattice().class_of(quotient_subgroup(g.lattice(), q, g.rep(h)));
}

SpanMorphism quotient_span(const OrbitCategory& g, const QuotientCategory& q, int k_lit, const SpanMorphism& f) {
  const SubgroupLattice& lat = g.lattice();
  if (!lat.is_subset(k_lit, g.rep(f.src)) || !lat.is_subset(k_lit, g.rep(f.tgt)))
    throw Error(ErrorKind::ObjectMismatch, "span endpoints do not contain the normal subgroup");
  const OrbitCategory& qc = *q.cat;
  const int hq = quotient_subgroup(lat, q, g.rep(f.src)), kq = quotient_subgroup(lat, q, g.rep(f.tgt));
  SpanMorphism out = qc.zero(qc.lattice().class_of(hq), qc.lattice().class_of(kq));
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (sgn(f.coeffs[i]) == 0) continue;
    const Span& sp = g.basis(f.src, f.tgt)[i];
    if (!lat.is_subset(k_lit, sp.J)) continue;
    const auto r = qc.locate(hq, kq, quotient_subgroup(lat, q, sp.J), 0, q.quotient.project[sp.g]);
    out.coeffs[r.index] += f.coeffs[i];
  }
  return out;
}

QuotientCategory quotient_category(const OrbitCategory& g, int k_lit) {
  const SubgroupLattice& lat = g.lattice();
  if (!lat.is_normal(k_lit)) throw Error(ErrorKind::NotNormal, "subgroup is not normal");
  QuotientCategory q{quotient_group(g.group(), lat.subgroup(k_lit), "G/K"), nullptr, {}, {}};
  q.cat = OrbitCategory::create(q.quotient.group);
  for (int h = 0; h < q.cat->num_objects(); ++h) {
    const int pre = preimage_of(lat, q, q.cat->rep(h));
    q.preimage.push_back(pre);
    q.object.push_back(lat.class_of(pre));
  }
  return q;
}

FixedQuotient fixed_quotient(const MackeyFunctor& s, int k_lit, const QuotientCategory& q) {
  const OrbitCategory& cat = s.category();
  const SubgroupLattice& lat = cat.lattice();
  if (!lat.is_normal(k_lit)) throw Error(ErrorKind::NotNormal, "subgroup is not normal");
  const int n = cat.num_objects();
  const bool c = contra(s.variance());
  FixedQuotient out;
  for (int l = 0; l < n; ++l) {
    const std::size_t g = s.value(l).ngens();
    if (!lat.is_subset(k_lit, cat.rep(l))) {
      out.sub.push_back(IntMatrix::identity(g));
      continue;
    }
    IntMatrix cols(g, 0);
    for (int l2 = 0; l2 < n; ++l2) {
      if (lat.is_subset(k_lit, cat.rep(l2))) continue;
      const std::size_t nb = c ? cat.basis_size(l, l2) : cat.basis_size(l2, l);
      for (std::size_t i = 0; i < nb; ++i)
        cols = IntMatrix::hstack(cols, c ? s.action(l, l2, int(i)) : s.action(l2, l, int(i)));
    }
    out.sub.push_back(std::move(cols));
  }
  const MackeyPtr quot = quotient_functor(s, out.sub);
  std::vector<FgAbGroup> values;
  for (int h = 0; h < q.cat->num_objects(); ++h) values.push_back(quot->value(q.object[h]));
  const OrbitCategory& qc = *q.cat;
  auto m = pull_back(
      s.variance(), q.cat, values, [&](const SpanMorphism& f) { return quot->act(f); },
      [&](int h, int k, int i) {
        const Span& sp = qc.basis(h, k)[i];
        return cat.make_span(q.preimage[h], q.preimage[k], preimage_of(lat, q, sp.J), 0, q.quotient.labels[sp.g]);
      },
      false);
  auto named = std::make_shared<MackeyFunctor>(*m);
  named->name = s.name + "^K";
  out.quotient = named;
  return out;
}

MackeyPtr inflate(const MackeyFunctor& s, std::shared_ptr<const OrbitCategory> gp, int k_lit, const QuotientCategory& q) {
  const OrbitCategory& g = *gp;
  const SubgroupLattice& lat = g.lattice();
  if (!lat.is_normal(k_lit)) throw Error(ErrorKind::NotNormal, "subgroup is not normal");
  const int n = g.num_objects();
  const OrbitCategory& qc = *q.cat;
  std::vector<FgAbGroup> values;
  std::vector<int> qobj(n, -1);
  for (int l = 0; l < n; ++l) {
    if (!lat.is_subset(k_lit, g.rep(l))) {
      values.push_back(FgAbGroup::zero());
      continue;
    }
    qobj[l] = qc.lattice().class_of(quotient_subgroup(lat, q, g.rep(l)));
    values.push_back(s.value(qobj[l]));
  }
  const bool c = contra(s.variance());
  MackeyFunctor::Actions actions(n * n);
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      for (std::size_t i = 0; i < g.basis_size(h, k); ++i) {
        const Span& sp = g.basis(h, k)[i];
        const FgAbGroup& src = c ? values[k] : values[h];
        const FgAbGroup& tgt = c ? values[h] : values[k];
        if (!lat.is_subset(k_lit, sp.J)) {
          actions[h * n + k].emplace_back(tgt.ngens(), src.ngens());
          continue;
        }
        const SpanMorphism f = qc.make_span(quotient_subgroup(lat, q, g.rep(h)), quotient_subgroup(lat, q, g.rep(k)),
                                            quotient_subgroup(lat, q, sp.J), 0, q.quotient.project[sp.g]);
        actions[h * n + k].push_back(s.act(f));
      }
  auto out = std::make_shared<MackeyFunctor>(s.variance(), std::move(gp),
                                             std::move(values), std::move(actions), false);
  out->name = "Inf " + s.name;
  return out;
}

}  // namespace equihom
