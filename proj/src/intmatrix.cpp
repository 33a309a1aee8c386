#include "equihom/intmatrix.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace equihom {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: bad row length");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("IntMatrix::from_columns: bad column length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

void IntMatrix::set_column(std::size_t c, const IntVector& v) {
  assert(v.size() == rows_);
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = v[i];
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Int& b = rhs(k, j);
        if (sgn(b) != 0) out(i, j) += a * b;
      }
    }
  }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("IntMatrix: dimension mismatch in matrix-vector product");
  IntVector out(rows_);
  for (std::size_t k = 0; k < cols_; ++k) {
    if (sgn(v[k]) == 0) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Int& a = (*this)(i, k);
      if (sgn(a) != 0) out[i] += a * v[k];
    }
  }
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  IntMatrix out = *this;
  out += rhs;
  return out;
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("IntMatrix: dimension mismatch in sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("IntMatrix: dimension mismatch in difference");
  IntMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

IntMatrix IntMatrix::scaled(const Int& c) const {
  IntMatrix out = *this;
  for (auto& x : out.data_) x *= c;
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return sgn(x) == 0; });
}

IntMatrix IntMatrix::column_range(std::size_t first, std::size_t count) const {
  IntMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

IntMatrix IntMatrix::row_range(std::size_t first, std::size_t count) const {
  IntMatrix out(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(first + i, j);
  return out;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("IntMatrix::hstack: row mismatch");
  IntMatrix out(a.rows_, a.cols_ + b.cols_);
  out.place(0, 0, a);
  out.place(0, a.cols_, b);
  return out;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix::vstack: column mismatch");
  IntMatrix out(a.rows_ + b.rows_, a.cols_);
  out.place(0, 0, a);
  out.place(a.rows_, 0, b);
  return out;
}

void IntMatrix::place(std::size_t row, std::size_t col, const IntMatrix& b) {
  assert(row + b.rows_ <= rows_ && col + b.cols_ <= cols_);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(row + i, col + j) = b(i, j);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j).get_str();
    }
    os << ']';
  }
  return os << ']';
}

namespace {

// Working state for the Smith reduction. Row operations act on A and are
// mirrored into U (left) and U^-1 (right); column operations likewise into
// V (right) and V^-1 (left).
class SmithWorker {
 public:
  SmithWorker(const IntMatrix& m, unsigned transforms)
      : m_(m.rows()), n_(m.cols()), a_(m.rows(), IntVector(m.cols())), flags_(transforms) {
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) a_[i][j] = m(i, j);
    if (flags_ & kSmithLeft) u_ = identity(m_);
    if (flags_ & kSmithLeftInv) uinv_ = identity(m_);
    if (flags_ & kSmithRight) v_ = identity(n_);
    if (flags_ & kSmithRightInv) vinv_ = identity(n_);
  }

  SmithForm run() {
    const std::size_t lim = std::min(m_, n_);
    std::size_t t = 0;
    for (; t < lim; ++t) {
      if (!select_pivot(t)) break;
      clear_cross(t);
      if (sgn(a_[t][t]) < 0) negate_row(t);
    }
    const std::size_t rank = t;
    enforce_divisibility(rank);

    SmithForm out;
    out.rank = rank;
    out.D = IntMatrix(m_, n_);
    for (std::size_t i = 0; i < rank; ++i) {
      out.D(i, i) = a_[i][i];
      out.diagonal.push_back(a_[i][i]);
    }
    if (flags_ & kSmithLeft) out.U = to_matrix(u_);
    if (flags_ & kSmithLeftInv) out.U_inv = to_matrix(uinv_);
    if (flags_ & kSmithRight) out.V = to_matrix(v_);
    if (flags_ & kSmithRightInv) out.V_inv = to_matrix(vinv_);
    return out;
  }

 private:
  using Rows = std::vector<IntVector>;

  static Rows identity(std::size_t n) {
    Rows r(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
    return r;
  }
  static IntMatrix to_matrix(const Rows& r) {
    IntMatrix out(r.size(), r.empty() ? 0 : r[0].size());
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < r[i].size(); ++j) out(i, j) = r[i][j];
    return out;
  }

  // Moves a minimal-absolute-value nonzero entry of the trailing block to (t,t).
  bool select_pivot(std::size_t t) {
    std::size_t bi = m_, bj = n_;
    Int best;
    for (std::size_t i = t; i < m_; ++i) {
      for (std::size_t j = t; j < n_; ++j) {
        const Int& x = a_[i][j];
        if (sgn(x) == 0) continue;
        if (bi == m_ || mpz_cmpabs((x).get_mpz_t(), (best).get_mpz_t()) < 0) {
          best = x;
          bi = i;
          bj = j;
          if (best == 1 || best == -1) goto found;
        }
      }
    }
    if (bi == m_) return false;
  found:
    if (bi != t) swap_rows(t, bi);
    if (bj != t) swap_cols(t, bj);
    return true;
  }

  // Clears row t and column t outside the pivot.
  void clear_cross(std::size_t t) {
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m_; ++i) {
        if (sgn(a_[i][t]) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), a_[i][t].get_mpz_t(), a_[t][t].get_mpz_t());
        if (sgn(q) != 0) add_row(i, t, -q);
        if (sgn(a_[i][t]) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n_; ++j) {
        if (sgn(a_[t][j]) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), a_[t][j].get_mpz_t(), a_[t][t].get_mpz_t());
        if (sgn(q) != 0) add_col(j, t, -q);
        if (sgn(a_[t][j]) != 0) dirty = true;
      }
      if (!dirty) return;
      // Some remainder is smaller than the pivot; promote it.
      std::size_t bi = t, bj = t;
      Int best = a_[t][t];
      for (std::size_t i = t + 1; i < m_; ++i)
        if (sgn(a_[i][t]) != 0 && mpz_cmpabs((a_[i][t]).get_mpz_t(), (best).get_mpz_t()) < 0) {
          best = a_[i][t];
          bi = i;
          bj = t;
        }
      for (std::size_t j = t + 1; j < n_; ++j)
        if (sgn(a_[t][j]) != 0 && mpz_cmpabs((a_[t][j]).get_mpz_t(), (best).get_mpz_t()) < 0) {
          best = a_[t][j];
          bi = t;
          bj = j;
        }
      if (bi != t) swap_rows(t, bi);
      if (bj != t) swap_cols(t, bj);
    }
  }

  // Diagonal (d_i, d_j) -> (gcd, lcm) until d_0 | d_1 | ... holds.
  void enforce_divisibility(std::size_t rank) {
    for (std::size_t i = 0; i < rank; ++i) {
      for (std::size_t j = i + 1; j < rank; ++j) {
        const Int a = a_[i][i];
        const Int b = a_[j][j];
        if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) continue;
        Int g, s, tt;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        const Int ag = a / g;
        const Int bg = b / g;
        // Rows: L = [[s, t], [-b/g, a/g]];  columns: R = [[1, -t b/g], [1, s a/g]].
        row_transform(i, j, s, tt, -bg, ag);
        col_transform(i, j, Int(1), Int(-tt * bg), Int(1), Int(s * ag));
        a_[i][i] = g;
        a_[j][j] = a * b / g;
        a_[i][j] = 0;
        a_[j][i] = 0;
      }
    }
  }

  // rows (i, j) <- [[p, q], [r, s]] * rows (i, j), det = 1.
  void row_transform(std::size_t i, std::size_t j, const Int& p, const Int& q, const Int& r, const Int& s) {
    auto apply = [&](Rows& rows) {
      for (std::size_t c = 0; c < rows[i].size(); ++c) {
        Int x = rows[i][c], y = rows[j][c];
        rows[i][c] = p * x + q * y;
        rows[j][c] = r * x + s * y;
      }
    };
    if (flags_ & kSmithLeft) apply(u_);
    if (flags_ & kSmithLeftInv) {
      // U^-1 <- U^-1 * L^-1, L^-1 = [[s, -q], [-r, p]] acting on columns i, j.
      for (auto& row : uinv_) {
        Int x = row[i], y = row[j];
        row[i] = s * x - r * y;
        row[j] = -q * x + p * y;
      }
    }
  }

  // columns (i, j) <- columns (i, j) * [[p, q], [r, s]], det = 1.
  void col_transform(std::size_t i, std::size_t j, const Int& p, const Int& q, const Int& r, const Int& s) {
    if (flags_ & kSmithRight) {
      for (auto& row : v_) {
        Int x = row[i], y = row[j];
        row[i] = p * x + r * y;
        row[j] = q * x + s * y;
      }
    }
    if (flags_ & kSmithRightInv) {
      // V^-1 <- R^-1 * V^-1, R^-1 = [[s, -q], [-r, p]] acting on rows i, j.
      for (std::size_t c = 0; c < vinv_[i].size(); ++c) {
        Int x = vinv_[i][c], y = vinv_[j][c];
        vinv_[i][c] = s * x - q * y;
        vinv_[j][c] = -r * x + p * y;
      }
    }
  }

  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < n_; ++k)
      if (sgn(a_[j][k]) != 0) a_[i][k] += c * a_[j][k];
    if (flags_ & kSmithLeft)
      for (std::size_t k = 0; k < m_; ++k)
        if (sgn(u_[j][k]) != 0) u_[i][k] += c * u_[j][k];
    if (flags_ & kSmithLeftInv)
      for (auto& row : uinv_)
        if (sgn(row[i]) != 0) row[j] -= c * row[i];
  }

  // col_i += c * col_j
  void add_col(std::size_t i, std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < m_; ++k)
      if (sgn(a_[k][j]) != 0) a_[k][i] += c * a_[k][j];
    if (flags_ & kSmithRight)
      for (auto& row : v_)
        if (sgn(row[j]) != 0) row[i] += c * row[j];
    if (flags_ & kSmithRightInv)
      for (std::size_t k = 0; k < n_; ++k)
        if (sgn(vinv_[i][k]) != 0) vinv_[j][k] -= c * vinv_[i][k];
  }

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(a_[i], a_[j]);
    if (flags_ & kSmithLeft) std::swap(u_[i], u_[j]);
    if (flags_ & kSmithLeftInv)
      for (auto& row : uinv_) std::swap(row[i], row[j]);
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& row : a_) std::swap(row[i], row[j]);
    if (flags_ & kSmithRight)
      for (auto& row : v_) std::swap(row[i], row[j]);
    if (flags_ & kSmithRightInv) std::swap(vinv_[i], vinv_[j]);
  }

  void negate_row(std::size_t i) {
    for (auto& x : a_[i]) x = -x;
    if (flags_ & kSmithLeft)
      for (auto& x : u_[i]) x = -x;
    if (flags_ & kSmithLeftInv)
      for (auto& row : uinv_) row[i] = -row[i];
  }

  std::size_t m_, n_;
  Rows a_;
  Rows u_, uinv_, v_, vinv_;
  unsigned flags_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m, unsigned transforms) {
  return SmithWorker(m, transforms).run();
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<IntVector> a(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a[p][k]) == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

namespace {

// Column elimination with the column transforms carried along.  Pivots are
// picked anywhere in the matrix, smallest entry first (sparser column on ties):
// on the 0/+-1 matrices met in practice this keeps the entries from growing.
struct ColumnEliminator {
  struct Col {
    IntVector a, v;
    std::size_t nnz() const {
      std::size_t k = 0;
      for (const Int& x : a) k += sgn(x) != 0;
      return k;
    }
  };
  std::vector<Col> active, pivots;
  std::vector<std::size_t> pivot_rows;

  ColumnEliminator(const IntMatrix& m, bool track) {
    const std::size_t cols = m.cols();
    active.resize(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      active[j].a = m.column(j);
      if (track) {
        active[j].v.assign(cols, Int(0));
        active[j].v[j] = 1;
      }
    }
    std::vector<bool> done(m.rows(), false);
    Int q;
    for (;;) {
      // global choice of the next pivot row
      std::size_t r = m.rows(), piv = 0, best_nnz = 0;
      for (std::size_t j = 0; j < active.size(); ++j) {
        std::size_t nz = 0;
        bool counted = false;
        for (std::size_t i = 0; i < m.rows(); ++i) {
          const Int& x = active[j].a[i];
          if (done[i] || sgn(x) == 0) continue;
          if (!counted) {
            nz = active[j].nnz();
            counted = true;
          }
          const int c = r == m.rows() ? -1 : mpz_cmpabs(x.get_mpz_t(), active[piv].a[r].get_mpz_t());
          if (c < 0 || (c == 0 && nz < best_nnz)) {
            r = i;
            piv = j;
            best_nnz = nz;
          }
        }
      }
      if (r == m.rows()) break;
      for (;;) {
        bool others = false;
        for (std::size_t j = 0; j < active.size(); ++j) {
          if (j == piv || sgn(active[j].a[r]) == 0) continue;
          mpz_fdiv_q(q.get_mpz_t(), active[j].a[r].get_mpz_t(), active[piv].a[r].get_mpz_t());
          axpy(active[j], active[piv], q);
          others = others || sgn(active[j].a[r]) != 0;
        }
        if (!others) break;
        for (std::size_t j = 0; j < active.size(); ++j)
          if (sgn(active[j].a[r]) != 0 && mpz_cmpabs(active[j].a[r].get_mpz_t(), active[piv].a[r].get_mpz_t()) < 0) piv = j;
      }
      done[r] = true;
      pivots.push_back(std::move(active[piv]));
      pivot_rows.push_back(r);
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(piv));
    }
  }

  static void axpy(Col& dst, const Col& src, const Int& q) {
    for (std::size_t i = 0; i < dst.a.size(); ++i)
      if (sgn(src.a[i]) != 0) dst.a[i] -= q * src.a[i];
    for (std::size_t i = 0; i < dst.v.size(); ++i)
      if (sgn(src.v[i]) != 0) dst.v[i] -= q * src.v[i];
  }
};

}  // namespace

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_integer: right-hand side has the wrong length");
  // U M V = D: solve D y = U b, then x = V y.
  const SmithForm f = smith_normal_form(m, kSmithLeft | kSmithRight);
  const IntVector ub = m.rows() ? f.U * b : IntVector{};
  IntVector y(m.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < f.rank) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), f.diagonal[i].get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), ub[i].get_mpz_t(), f.diagonal[i].get_mpz_t());
    } else if (sgn(ub[i]) != 0) {
      return std::nullopt;
    }
  }
  return m.cols() ? f.V * y : IntVector{};
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const ColumnEliminator e(m, true);
  IntMatrix out(m.cols(), e.active.size());
  for (std::size_t j = 0; j < e.active.size(); ++j) out.set_column(j, e.active[j].v);
  return out;
}

ColumnEchelon column_echelon(const IntMatrix& m) {
  const ColumnEliminator e(m, false);
  ColumnEchelon out;
  out.basis = IntMatrix(m.rows(), e.pivots.size());
  for (std::size_t j = 0; j < e.pivots.size(); ++j) out.basis.set_column(j, e.pivots[j].a);
  out.pivot_rows = e.pivot_rows;
  return out;
}

std::optional<IntVector> ColumnEchelon::solve(IntVector x) const {
  IntVector c(basis.cols());
  Int q;
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    const std::size_t r = pivot_rows[j];
    if (sgn(x[r]) == 0) continue;
    if (!mpz_divisible_p(x[r].get_mpz_t(), basis(r, j).get_mpz_t())) return std::nullopt;
    mpz_divexact(q.get_mpz_t(), x[r].get_mpz_t(), basis(r, j).get_mpz_t());
    c[j] = q;
    for (std::size_t i = 0; i < basis.rows(); ++i)
      if (sgn(basis(i, j)) != 0) x[i] -= q * basis(i, j);
  }
  for (const Int& v : x)
    if (sgn(v) != 0) return std::nullopt;
  return c;
}

}  // namespace equihom
