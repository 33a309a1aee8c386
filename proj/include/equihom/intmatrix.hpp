#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace equihom {

using Int = mpz_class;
using IntVector = std::vector<Int>;
/// (index, value) pairs with distinct indices.
using SparseVector = std::vector<std::pair<std::size_t, Int>>;

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  void set_column(std::size_t c, const IntVector& v);

  IntMatrix transposed() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix& operator+=(const IntMatrix& rhs);
  IntMatrix scaled(const Int& c) const;
  bool operator==(const IntMatrix& rhs) const = default;

  bool is_zero() const;

  /// Columns [first, first + count).
  IntMatrix column_range(std::size_t first, std::size_t count) const;
  /// Rows [first, first + count).
  IntMatrix row_range(std::size_t first, std::size_t count) const;

  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
  /// Block-diagonal placement of `b` at (row, col) inside `*this`.
  void place(std::size_t row, std::size_t col, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Which unimodular transforms smith_normal_form should accumulate.
enum SmithTransforms : unsigned {
  kSmithNone = 0,
  kSmithLeft = 1,      // U
  kSmithLeftInv = 2,   // U^-1
  kSmithRight = 4,     // V
  kSmithRightInv = 8,  // V^-1
  kSmithAll = 15,
};

struct SmithForm {
  IntMatrix D;
  IntMatrix U, U_inv;  // rows x rows, empty unless requested
  IntMatrix V, V_inv;  // cols x cols, empty unless requested
  std::size_t rank = 0;
  /// The nonzero diagonal entries d_0 | d_1 | ... | d_{rank-1}, all positive.
  IntVector diagonal;
};

/// U * M * V = D with D diagonal, positive diagonal entries forming a
/// divisibility chain, and U, V unimodular.
SmithForm smith_normal_form(const IntMatrix& m, unsigned transforms = kSmithAll);

/// Integer determinant by fraction-free elimination (Bareiss).
Int determinant(const IntMatrix& m);

/// One integer solution of M x = b, or nothing when there is none.
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b);

/// A Z-basis of {x : M x = 0}, one basis vector per column.
IntMatrix integer_kernel(const IntMatrix& m);

/// A basis of the column span in (row-permuted) echelon form: column j is zero
/// in the pivot rows of the columns before it.
struct ColumnEchelon {
  IntMatrix basis;
  std::vector<std::size_t> pivot_rows;
  /// Coordinates of x in the basis, or nothing when x is outside the span.
  std::optional<IntVector> solve(IntVector x) const;
};
ColumnEchelon column_echelon(const IntMatrix& m);

}  // namespace equihom
