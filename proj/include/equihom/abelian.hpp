#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equihom/intmatrix.hpp"

namespace equihom {

/// A finitely generated abelian group given by a diagonal presentation
/// Z/o_0 + Z/o_1 + ... (o_i = 0 means a free summand).  Elements are integer
/// vectors in these generators.  Equality compares invariants (rank and
/// invariant factors), so two presentations of isomorphic groups are equal.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  explicit FgAbGroup(IntVector orders);

  static FgAbGroup zero() { return FgAbGroup(); }
  static FgAbGroup free(std::size_t rank);
  static FgAbGroup cyclic(const Int& d);
  /// Canonical group Z/d_1 + ... + Z/d_k + Z^rank; torsion must be a divisibility chain of entries >= 2.
  static FgAbGroup from_invariants(std::size_t rank, const IntVector& torsion);
  static FgAbGroup direct_sum(const std::vector<FgAbGroup>& parts);

  std::size_t ngens() const { return orders_.size(); }
  const IntVector& orders() const { return orders_; }
  const Int& order(std::size_t i) const { return orders_[i]; }

  std::size_t rank() const { return rank_; }
  const IntVector& torsion() const { return torsion_; }
  bool is_zero() const { return rank_ == 0 && torsion_.empty(); }
  bool is_free() const { return torsion_.empty(); }
  /// True when the presentation is already the canonical one (torsion chain, then free).
  bool is_canonical() const;
  FgAbGroup canonical() const { return from_invariants(rank_, torsion_); }
  /// Number of elements, or 0 when infinite.
  Int cardinality() const;

  void reduce(IntVector& v) const;
  IntVector reduced(IntVector v) const {
    reduce(v);
    return v;
  }
  bool is_zero_element(const IntVector& v) const;

  bool operator==(const FgAbGroup& rhs) const { return rank_ == rhs.rank_ && torsion_ == rhs.torsion_; }

  /// "0", "Z", "Z^2 + Z/2 + Z/4"
  std::string to_string() const;

 private:
  IntVector orders_;
  std::size_t rank_ = 0;
  IntVector torsion_;
};

/// Homomorphism between presented groups: matrix is target.ngens() x source.ngens(),
/// acting on column vectors.
struct AbMap {
  FgAbGroup source, target;
  IntMatrix matrix;

  AbMap() = default;
  AbMap(FgAbGroup src, FgAbGroup tgt, IntMatrix m);

  static AbMap zero(const FgAbGroup& src, const FgAbGroup& tgt);
  static AbMap identity(const FgAbGroup& g);

  IntVector apply(const IntVector& x) const;
  /// Every relation of the source maps into the relations of the target.
  bool is_well_defined() const;
  bool is_zero() const;
  /// this after first: x -> this(first(x))
  AbMap after(const AbMap& first) const;
};

/// Reduces every row i of m modulo orders[i] (rows with order 0 untouched).
void reduce_rows(IntMatrix& m, const IntVector& orders);

/// The subquotient L / N of Z^n, where L and N are the column spans of two
/// integer matrices with N inside L.  Provides the canonical group together with
/// explicit coordinates and lifts.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(const IntMatrix& gens_L, const IntMatrix& gens_N);
  /// Z^n / colspan(gens_N).
  static Subquotient quotient(std::size_t n, const IntMatrix& gens_N);
  /// Same, from sparse relation columns; unit pivots are eliminated first.
  static Subquotient quotient(std::size_t n, std::vector<SparseVector> relations);

  std::size_t ambient_dim() const { return n_; }
  const FgAbGroup& group() const { return group_; }

  bool contains(const IntVector& x) const;
  /// Canonical coordinates of x (must lie in L), reduced.
  IntVector coords(const IntVector& x) const;
  /// Coordinates of every column of m.
  IntMatrix coords_matrix(const IntMatrix& m) const;
  /// Representative in Z^n of canonical generator i.
  IntVector lift(std::size_t i) const;
  /// n x ngens matrix of lifts.
  const IntMatrix& lift_matrix() const { return lift_; }

 private:
  IntVector local_coords(const IntVector& x, bool* ok) const;

  std::size_t n_ = 0;
  bool full_ = true;   // L = Z^n
  ColumnEchelon l_;    // basis of L
  // quotients only: generators removed by unit pivots, then the survivors
  struct Elimination {
    std::size_t gen;
    Int unit;
    SparseVector column;
  };
  std::vector<Elimination> elim_;
  std::vector<std::size_t> kept_;
  IntMatrix to_canon_; // ngens x r
  IntMatrix lift_;     // n x ngens
  FgAbGroup group_;
};

/// Group presented by `generators` generators and one relation per row of `relations`.
FgAbGroup present(std::size_t generators, const IntMatrix& relations);

/// A Z-lattice in Z^n (as generating columns) equal to {x : f(x) = 0 in target}.
IntMatrix kernel_lattice(const AbMap& f);
/// Generators (columns) of the lattice of relations of g: one column per nonzero order.
IntMatrix relation_lattice(const FgAbGroup& g);

Subquotient kernel(const AbMap& f);
Subquotient cokernel(const AbMap& f);
Subquotient image(const AbMap& f);

/// ker(d_out) / im(d_in).  Throws NotAComplex if d_out d_in != 0.
Subquotient homology_pair(const AbMap& d_in, const AbMap& d_out);

/// True iff f is bijective.
bool is_isomorphism(const AbMap& f);

/// Is every column of a contained in the lattice spanned by the columns of b?
bool lattice_contains(const IntMatrix& b, const IntMatrix& a);

// Hom and tensor products of diagonal presentations.  Hom(A, B) is presented
// by one generator per (i, j) pair (target index i, source index j); the
// generator is the map sending a_j to hom_generator(o_j, p_i) * b_i.
FgAbGroup hom_ab(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup tensor_ab(const FgAbGroup& a, const FgAbGroup& b);
/// Hom(Z/a, Z/b) is cyclic generated by 1 -> hom_generator(a, b); (0 means Z).
Int hom_generator(const Int& a, const Int& b);
Int hom_order(const Int& a, const Int& b);
/// Hom(f, g): Hom(A, B) -> Hom(A', B') for f: A' -> A, g: B -> B'.
AbMap hom_map(const AbMap& f, const AbMap& g);
AbMap tensor_map(const AbMap& f, const AbMap& g);
/// Hom-group coordinates of a matrix representing a homomorphism A -> B.
IntVector hom_coords(const FgAbGroup& a, const FgAbGroup& b, const IntMatrix& phi);
/// Matrix of the homomorphism with Hom-group coordinates c.
IntMatrix hom_matrix(const FgAbGroup& a, const FgAbGroup& b, const IntVector& c);

}  // namespace equihom
