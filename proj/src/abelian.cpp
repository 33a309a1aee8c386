#include "equihom/abelian.hpp"

#include <map>
#include <sstream>

#include "equihom/error.hpp"

namespace equihom {

namespace {

Int gcd_with_zero(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

void reduce_mod(Int& x, const Int& m) {
  if (sgn(m) == 0) return;
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NonClosedGenerators: return "NonClosedGenerators";
    case ErrorKind::InvalidSubgroup: return "InvalidSubgroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::ObjectMismatch: return "ObjectMismatch";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::FunctorialityFailure: return "FunctorialityFailure";
    case ErrorKind::InvalidComplex: return "InvalidComplex";
    case ErrorKind::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorKind::UnknownExample: return "UnknownExample";
    case ErrorKind::LengthExceeded: return "LengthExceeded";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::InvalidDiagonal: return "InvalidDiagonal";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- FgAbGroup

FgAbGroup::FgAbGroup(IntVector orders) : orders_(std::move(orders)) {
  IntVector finite;
  for (const Int& o : orders_) {
    if (sgn(o) < 0) throw std::invalid_argument("FgAbGroup: negative order");
    if (sgn(o) == 0)
      ++rank_;
    else if (o > 1)
      finite.push_back(o);
  }
  if (finite.empty()) return;
  bool chain = true;
  for (std::size_t i = 1; i < finite.size() && chain; ++i)
    chain = mpz_divisible_p(finite[i].get_mpz_t(), finite[i - 1].get_mpz_t()) != 0;
  if (chain) {
    torsion_ = std::move(finite);
    return;
  }
  // Z/a + Z/b = Z/gcd + Z/lcm; one sweep per position leaves a divisibility chain.
  Int g, l;
  for (std::size_t i = 0; i < finite.size(); ++i)
    for (std::size_t j = i + 1; j < finite.size(); ++j) {
      mpz_gcd(g.get_mpz_t(), finite[i].get_mpz_t(), finite[j].get_mpz_t());
      if (g == finite[i]) continue;
      mpz_lcm(l.get_mpz_t(), finite[i].get_mpz_t(), finite[j].get_mpz_t());
      finite[i] = g;
      finite[j] = l;
    }
  for (const Int& x : finite)
    if (x > 1) torsion_.push_back(x);
}

FgAbGroup FgAbGroup::free(std::size_t rank) { return FgAbGroup(IntVector(rank, Int(0))); }

FgAbGroup FgAbGroup::cyclic(const Int& d) {
  if (d == 1) return FgAbGroup();
  return FgAbGroup(IntVector{d});
}

FgAbGroup FgAbGroup::from_invariants(std::size_t rank, const IntVector& torsion) {
  IntVector orders;
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) throw std::invalid_argument("FgAbGroup: invariant factor < 2");
    if (i && !mpz_divisible_p(torsion[i].get_mpz_t(), torsion[i - 1].get_mpz_t()))
      throw std::invalid_argument("FgAbGroup: invariant factors do not form a divisibility chain");
    orders.push_back(torsion[i]);
  }
  orders.resize(orders.size() + rank, Int(0));
  return FgAbGroup(std::move(orders));
}

FgAbGroup FgAbGroup::direct_sum(const std::vector<FgAbGroup>& parts) {
  IntVector orders;
  for (const auto& p : parts) orders.insert(orders.end(), p.orders().begin(), p.orders().end());
  return FgAbGroup(std::move(orders));
}

bool FgAbGroup::is_canonical() const {
  if (orders_.size() != rank_ + torsion_.size()) return false;
  for (std::size_t i = 0; i < torsion_.size(); ++i)
    if (orders_[i] != torsion_[i]) return false;
  return true;
}

Int FgAbGroup::cardinality() const {
  if (rank_) return 0;
  Int c = 1;
  for (const Int& t : torsion_) c *= t;
  return c;
}

void FgAbGroup::reduce(IntVector& v) const {
  for (std::size_t i = 0; i < v.size(); ++i) reduce_mod(v[i], orders_[i]);
}

bool FgAbGroup::is_zero_element(const IntVector& v) const {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(orders_[i]) == 0) {
      if (sgn(v[i]) != 0) return false;
    } else if (!mpz_divisible_p(v[i].get_mpz_t(), orders_[i].get_mpz_t())) {
      return false;
    }
  }
  return true;
}

std::string FgAbGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank_) {
    os << "Z";
    if (rank_ > 1) os << '^' << rank_;
    first = false;
  }
  for (const Int& t : torsion_) {
    if (!first) os << " + ";
    os << "Z/" << t.get_str();
    first = false;
  }
  return os.str();
}

// -------------------------------------------------------------------- AbMap

void reduce_rows(IntMatrix& m, const IntVector& orders) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (sgn(orders[i]) == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) reduce_mod(m(i, j), orders[i]);
  }
}

AbMap::AbMap(FgAbGroup src, FgAbGroup tgt, IntMatrix m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
  if (matrix.rows() != target.ngens() || matrix.cols() != source.ngens())
    throw std::invalid_argument("AbMap: matrix shape does not match groups");
  reduce_rows(matrix, target.orders());
}

AbMap AbMap::zero(const FgAbGroup& src, const FgAbGroup& tgt) {
  return AbMap(src, tgt, IntMatrix(tgt.ngens(), src.ngens()));
}

AbMap AbMap::identity(const FgAbGroup& g) { return AbMap(g, g, IntMatrix::identity(g.ngens())); }

IntVector AbMap::apply(const IntVector& x) const { return target.reduced(matrix * x); }

bool AbMap::is_well_defined() const {
  for (std::size_t j = 0; j < source.ngens(); ++j) {
    const Int& o = source.order(j);
    if (sgn(o) == 0) continue;
    IntVector col = matrix.column(j);
    for (auto& x : col) x *= o;
    if (!target.is_zero_element(col)) return false;
  }
  return true;
}

bool AbMap::is_zero() const {
  for (std::size_t j = 0; j < matrix.cols(); ++j)
    if (!target.is_zero_element(matrix.column(j))) return false;
  return true;
}

AbMap AbMap::after(const AbMap& first) const {
  if (first.target.orders() != source.orders()) throw Error(ErrorKind::ObjectMismatch, "AbMap composition: middle groups differ");
  return AbMap(first.source, target, matrix * first.matrix);
}

// -------------------------------------------------------------- Subquotient

Subquotient::Subquotient(const IntMatrix& gens_L, const IntMatrix& gens_N) : n_(gens_L.rows()), full_(false) {
  l_ = column_echelon(gens_L);
  const std::size_t r = l_.basis.cols();
  const IntMatrix& basis = l_.basis;

  IntMatrix c(r, gens_N.cols());
  for (std::size_t j = 0; j < gens_N.cols(); ++j) {
    bool ok = true;
    IntVector v = local_coords(gens_N.column(j), &ok);
    if (!ok) throw std::invalid_argument("Subquotient: N is not contained in L");
    c.set_column(j, v);
  }
  const SmithForm q = smith_normal_form(c, kSmithLeft | kSmithLeftInv);
  std::vector<std::size_t> keep;
  IntVector orders;
  for (std::size_t i = 0; i < r; ++i) {
    if (i < q.rank) {
      if (q.diagonal[i] == 1) continue;
      orders.push_back(q.diagonal[i]);
    } else {
      orders.push_back(0);
    }
    keep.push_back(i);
  }
  group_ = FgAbGroup(orders);
  to_canon_ = IntMatrix(keep.size(), r);
  IntMatrix lift_local(r, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    for (std::size_t j = 0; j < r; ++j) {
      to_canon_(k, j) = q.U(keep[k], j);
      lift_local(j, k) = q.U_inv(j, keep[k]);
    }
  }
  lift_ = basis * lift_local;
}

Subquotient Subquotient::quotient(std::size_t n, const IntMatrix& gens_N) {
  if (gens_N.rows() != n) throw std::invalid_argument("Subquotient::quotient: dimension mismatch");
  std::vector<SparseVector> cols(gens_N.cols());
  for (std::size_t j = 0; j < gens_N.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(gens_N(i, j)) != 0) cols[j].emplace_back(i, gens_N(i, j));
  return quotient(n, std::move(cols));
}

Subquotient Subquotient::quotient(std::size_t n, std::vector<SparseVector> relations) {
  Subquotient s;
  s.n_ = n;
  s.full_ = true;

  // Sparse elimination of unit pivots, cheapest columns first.
  std::vector<std::map<std::size_t, Int>> cols(relations.size());
  std::vector<std::vector<std::size_t>> occ(n);
  for (std::size_t c = 0; c < relations.size(); ++c)
    for (auto& [i, v] : relations[c]) {
      if (i >= n) throw std::invalid_argument("Subquotient::quotient: relation index out of range");
      if (sgn(v) == 0) continue;
      auto [it, fresh] = cols[c].emplace(i, v);
      if (!fresh) it->second += v;
      if (fresh) occ[i].push_back(c);
    }
  relations.clear();
  std::vector<char> gen_alive(n, 1), col_alive(cols.size(), 1);
  auto pivot = [&](std::size_t i, std::size_t c) {
    const Int u = cols[c].at(i);
    SparseVector column;
    for (const auto& [j, v] : cols[c])
      if (j != i) column.emplace_back(j, v);
    Int q;
    for (std::size_t c2 : occ[i]) {
      if (c2 == c || !col_alive[c2]) continue;
      auto it = cols[c2].find(i);
      if (it == cols[c2].end()) continue;
      q = it->second * u;
      cols[c2].erase(it);
      for (const auto& [j, v] : column) {
        auto [jt, fresh] = cols[c2].emplace(j, Int(0));
        jt->second -= q * v;
        if (sgn(jt->second) == 0)
          cols[c2].erase(jt);
        else if (fresh)
          occ[j].push_back(c2);
      }
    }
    col_alive[c] = 0;
    cols[c].clear();
    gen_alive[i] = 0;
    occ[i].clear();
    s.elim_.push_back({i, u, std::move(column)});
  };
  std::size_t limit = 1;
  for (;;) {
    bool progress = false, any_unit = false;
    std::size_t largest = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (!col_alive[c]) continue;
      if (cols[c].empty()) {
        col_alive[c] = 0;
        continue;
      }
      largest = std::max(largest, cols[c].size());
      std::size_t best = n, best_occ = 0;
      for (const auto& [i, v] : cols[c]) {
        if (v != 1 && v != -1) continue;
        any_unit = true;
        if (cols[c].size() > limit) break;
        if (best == n || occ[i].size() < best_occ) {
          best = i;
          best_occ = occ[i].size();
        }
      }
      if (best != n) {
        pivot(best, c);
        progress = true;
      }
    }
    if (!any_unit) break;
    if (!progress) {
      if (limit >= largest) break;
      limit *= 2;
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    if (gen_alive[i]) s.kept_.push_back(i);
  const std::size_t m = s.kept_.size();
  std::vector<std::size_t> pos(n, 0);
  for (std::size_t k = 0; k < m; ++k) pos[s.kept_[k]] = k;
  std::vector<IntVector> dense;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (!col_alive[c] || cols[c].empty()) continue;
    IntVector v(m);
    for (const auto& [i, x] : cols[c]) v[pos[i]] = x;
    dense.push_back(std::move(v));
  }
  IntMatrix rel = IntMatrix::from_columns(dense, m);
  if (rel.cols() > m) rel = column_echelon(rel).basis;

  const SmithForm q = smith_normal_form(rel, kSmithLeft | kSmithLeftInv);
  std::vector<std::size_t> keep;
  IntVector orders;
  for (std::size_t i = 0; i < m; ++i) {
    if (i < q.rank) {
      if (q.diagonal[i] == 1) continue;
      orders.push_back(q.diagonal[i]);
    } else {
      orders.push_back(0);
    }
    keep.push_back(i);
  }
  s.group_ = FgAbGroup(orders);
  s.to_canon_ = IntMatrix(keep.size(), m);
  s.lift_ = IntMatrix(n, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      s.to_canon_(k, j) = q.U(keep[k], j);
      s.lift_(s.kept_[j], k) = q.U_inv(j, keep[k]);
    }
  }
  return s;
}

IntVector Subquotient::local_coords(const IntVector& x, bool* ok) const {
  *ok = true;
  if (full_) {
    if (elim_.empty() && kept_.size() == n_) return x;
    IntVector y = x;
    for (const auto& e : elim_) {
      if (sgn(y[e.gen]) == 0) continue;
      // e_gen = -unit * (sum of the other entries of its relation)
      const Int f = -e.unit * y[e.gen];
      for (const auto& [j, v] : e.column) y[j] += f * v;
      y[e.gen] = 0;
    }
    IntVector out(kept_.size());
    for (std::size_t k = 0; k < kept_.size(); ++k) out[k] = std::move(y[kept_[k]]);
    return out;
  }
  auto c = l_.solve(x);
  if (!c) {
    *ok = false;
    return {};
  }
  return std::move(*c);
}

bool Subquotient::contains(const IntVector& x) const {
  bool ok = true;
  local_coords(x, &ok);
  return ok;
}

IntVector Subquotient::coords(const IntVector& x) const {
  if (x.size() != n_) throw std::invalid_argument("Subquotient::coords: dimension mismatch");
  bool ok = true;
  IntVector c = local_coords(x, &ok);
  if (!ok) throw std::invalid_argument("Subquotient::coords: element outside the subgroup");
  return group_.reduced(to_canon_ * c);
}

IntMatrix Subquotient::coords_matrix(const IntMatrix& m) const {
  IntMatrix out(group_.ngens(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) out.set_column(j, coords(m.column(j)));
  return out;
}

IntVector Subquotient::lift(std::size_t i) const { return lift_.column(i); }

// ------------------------------------------------------------ constructions

FgAbGroup present(std::size_t generators, const IntMatrix& relations) {
  if (relations.rows() && relations.cols() != generators)
    throw std::invalid_argument("present: relation width differs from generator count");
  if (relations.rows() == 0) return FgAbGroup::free(generators);
  return Subquotient::quotient(generators, relations.transposed()).group();
}

IntMatrix relation_lattice(const FgAbGroup& g) {
  std::size_t t = 0;
  for (const Int& o : g.orders()) t += sgn(o) != 0;
  IntMatrix r(g.ngens(), t);
  std::size_t k = 0;
  for (std::size_t i = 0; i < g.ngens(); ++i)
    if (sgn(g.order(i)) != 0) r(i, k++) = g.order(i);
  return r;
}

IntMatrix kernel_lattice(const AbMap& f) {
  // Rows are processed in chunks so that each elimination stays small: K
  // holds a basis of the solutions of the rows seen so far.
  const std::size_t n = f.source.ngens(), rows = f.target.ngens();
  constexpr std::size_t kChunk = 24;
  IntMatrix k = IntMatrix::identity(n);
  for (std::size_t first = 0; first < rows && k.cols() > 0; first += kChunk) {
    const std::size_t count = std::min(kChunk, rows - first);
    const IntMatrix m = f.matrix.row_range(first, count) * k;
    std::size_t t = 0;
    for (std::size_t i = 0; i < count; ++i) t += sgn(f.target.order(first + i)) != 0;
    IntMatrix aug(count, m.cols() + t);
    aug.place(0, 0, m);
    for (std::size_t i = 0, c = m.cols(); i < count; ++i)
      if (sgn(f.target.order(first + i)) != 0) aug(i, c++) = f.target.order(first + i);
    if (aug.is_zero()) continue;
    const IntMatrix sol = integer_kernel(aug);
    k = k * sol.row_range(0, m.cols());
  }
  return k;
}

Subquotient kernel(const AbMap& f) {
  return Subquotient(IntMatrix::hstack(kernel_lattice(f), relation_lattice(f.source)), relation_lattice(f.source));
}

Subquotient cokernel(const AbMap& f) {
  return Subquotient::quotient(f.target.ngens(), IntMatrix::hstack(f.matrix, relation_lattice(f.target)));
}

Subquotient image(const AbMap& f) {
  const IntMatrix rel = relation_lattice(f.target);
  return Subquotient(IntMatrix::hstack(f.matrix, rel), rel);
}

Subquotient homology_pair(const AbMap& d_in, const AbMap& d_out) {
  if (d_in.target.orders() != d_out.source.orders())
    throw Error(ErrorKind::ObjectMismatch, "homology_pair: middle groups differ");
  const AbMap comp = d_out.after(d_in);
  for (std::size_t j = 0; j < comp.matrix.cols(); ++j) {
    IntVector col = comp.matrix.column(j);
    if (!comp.target.is_zero_element(col)) {
      std::ostringstream w;
      w << "source generator " << j << " maps to nonzero element";
      throw Error(ErrorKind::NotAComplex, "d_out * d_in != 0", w.str());
    }
  }
  const IntMatrix rel = relation_lattice(d_out.source);
  return Subquotient(IntMatrix::hstack(kernel_lattice(d_out), rel), IntMatrix::hstack(d_in.matrix, rel));
}

bool is_isomorphism(const AbMap& f) { return kernel(f).group().is_zero() && cokernel(f).group().is_zero(); }

bool lattice_contains(const IntMatrix& b, const IntMatrix& a) {
  if (a.cols() == 0) return true;
  const SmithForm s = smith_normal_form(b, kSmithLeft);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    IntVector y = s.U * a.column(j);
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (i < s.rank) {
        if (!mpz_divisible_p(y[i].get_mpz_t(), s.diagonal[i].get_mpz_t())) return false;
      } else if (sgn(y[i]) != 0) {
        return false;
      }
    }
  }
  return true;
}

// ------------------------------------------------------------- Hom, tensor

Int hom_order(const Int& a, const Int& b) {
  if (sgn(a) == 0) return b;
  if (sgn(b) == 0) return 1;
  return gcd_with_zero(a, b);
}

Int hom_generator(const Int& a, const Int& b) {
  if (sgn(a) == 0) return 1;
  if (sgn(b) == 0) return 0;
  return b / gcd_with_zero(a, b);
}

FgAbGroup hom_ab(const FgAbGroup& a, const FgAbGroup& b) {
  IntVector orders;
  orders.reserve(a.ngens() * b.ngens());
  for (std::size_t i = 0; i < b.ngens(); ++i)
    for (std::size_t j = 0; j < a.ngens(); ++j) orders.push_back(hom_order(a.order(j), b.order(i)));
  return FgAbGroup(std::move(orders));
}

FgAbGroup tensor_ab(const FgAbGroup& a, const FgAbGroup& b) {
  IntVector orders;
  orders.reserve(a.ngens() * b.ngens());
  for (std::size_t i = 0; i < a.ngens(); ++i)
    for (std::size_t j = 0; j < b.ngens(); ++j) orders.push_back(gcd_with_zero(a.order(i), b.order(j)));
  return FgAbGroup(std::move(orders));
}

IntVector hom_coords(const FgAbGroup& a, const FgAbGroup& b, const IntMatrix& phi) {
  const std::size_t na = a.ngens();
  IntVector c(na * b.ngens());
  for (std::size_t i = 0; i < b.ngens(); ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      Int v = phi(i, j);
      reduce_mod(v, b.order(i));
      const Int gen = hom_generator(a.order(j), b.order(i));
      Int& out = c[i * na + j];
      if (sgn(gen) == 0) {
        if (sgn(v) != 0) throw std::invalid_argument("hom_coords: matrix is not a homomorphism");
        continue;
      }
      if (!mpz_divisible_p(v.get_mpz_t(), gen.get_mpz_t()))
        throw std::invalid_argument("hom_coords: matrix is not a homomorphism");
      mpz_divexact(out.get_mpz_t(), v.get_mpz_t(), gen.get_mpz_t());
      reduce_mod(out, hom_order(a.order(j), b.order(i)));
    }
  }
  return c;
}

IntMatrix hom_matrix(const FgAbGroup& a, const FgAbGroup& b, const IntVector& c) {
  const std::size_t na = a.ngens();
  IntMatrix phi(b.ngens(), na);
  for (std::size_t i = 0; i < b.ngens(); ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      phi(i, j) = c[i * na + j] * hom_generator(a.order(j), b.order(i));
      reduce_mod(phi(i, j), b.order(i));
    }
  }
  return phi;
}

AbMap hom_map(const AbMap& f, const AbMap& g) {
  const FgAbGroup& a = f.target;
  const FgAbGroup& b = g.source;
  const FgAbGroup src = hom_ab(a, b);
  const FgAbGroup tgt = hom_ab(f.source, g.target);
  IntMatrix m(tgt.ngens(), src.ngens());
  for (std::size_t k = 0; k < src.ngens(); ++k) {
    IntVector e(src.ngens());
    e[k] = 1;
    const IntMatrix phi = g.matrix * hom_matrix(a, b, e) * f.matrix;
    m.set_column(k, hom_coords(f.source, g.target, phi));
  }
  return AbMap(src, tgt, m);
}

AbMap tensor_map(const AbMap& f, const AbMap& g) {
  const FgAbGroup src = tensor_ab(f.source, g.source);
  const FgAbGroup tgt = tensor_ab(f.target, g.target);
  const std::size_t nb = g.source.ngens(), nb2 = g.target.ngens();
  IntMatrix m(tgt.ngens(), src.ngens());
  for (std::size_t i = 0; i < f.source.ngens(); ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t i2 = 0; i2 < f.target.ngens(); ++i2) {
        if (sgn(f.matrix(i2, i)) == 0) continue;
        for (std::size_t j2 = 0; j2 < nb2; ++j2) m(i2 * nb2 + j2, i * nb + j) = f.matrix(i2, i) * g.matrix(j2, j);
      }
  return AbMap(src, tgt, m);
}

}  // namespace equihom
