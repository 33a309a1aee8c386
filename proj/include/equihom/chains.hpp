#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "equihom/abelian.hpp"
#include "equihom/burnside.hpp"
#include "equihom/mackey.hpp"

namespace equihom {

/// K -> |V^K| on class ids; |V| = dims[trivial class].
struct DimensionFunction {
  std::vector<int> dims;

  static DimensionFunction zero(int classes) { return {std::vector<int>(classes, 0)}; }
  int total() const { return dims.empty() ? 0 : dims[0]; }
  bool is_zero() const;
  /// K <= L (up to conjugacy) implies dims[L] <= dims[K].
  bool is_monotone(const SubgroupLattice& lat) const;
  DimensionFunction operator+(const DimensionFunction& rhs) const;
  bool operator==(const DimensionFunction&) const = default;
};

/// Cells G/H_i x D(V - |V| + n) per degree n, with the differential as a matrix
/// of span morphisms: boundary(n, i, j) runs from cell i in degree n (object H_i)
/// to cell j in degree n - 1.  Dual structures keep geometric degrees.
class CellComplex {
 public:
  CellComplex() = default;
  explicit CellComplex(std::shared_ptr<const OrbitCategory> cat);

  const OrbitCategory& category() const { return *cat_; }
  std::shared_ptr<const OrbitCategory> category_ptr() const { return cat_; }

  int add_cell(int degree, int cls);
  /// boundary(n, i, j) += f.
  void add_boundary(int degree, int i, int j, const SpanMorphism& f);
  void add_boundary(int degree, int i, int j, int basis_index, const Int& coeff);

  const std::vector<int>& cells(int degree) const;
  std::size_t num_cells(int degree) const { return cells(degree).size(); }
  std::size_t total_cells() const;
  /// Degrees holding at least one cell, increasing.
  std::vector<int> degrees() const;
  bool empty() const { return cells_.empty(); }
  int min_degree() const;
  int max_degree() const;

  /// Zero morphism when absent.
  SpanMorphism boundary(int degree, int i, int j) const;
  const std::map<std::tuple<int, int, int>, SpanMorphism>& boundaries() const { return d_; }

  DimensionFunction grading;
  bool dual = false;
  std::string name;

 private:
  std::shared_ptr<const OrbitCategory> cat_;
  std::map<int, std::vector<int>> cells_;
  std::map<std::tuple<int, int, int>, SpanMorphism> d_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
ValidationReport validate_complex(const CellComplex& x);
/// Throws InvalidComplex with the first violation.
void require_valid(const CellComplex& x);

using GradedAbGroups = std::map<int, FgAbGroup>;
/// Value at n, zero when absent.
FgAbGroup graded_at(const GradedAbGroups& g, int n);
bool same_graded(const GradedAbGroups& a, const GradedAbGroups& b);

/// Chain complex of abelian groups; for cochains the maps raise degree.
struct AbComplex {
  bool cochain = false;
  std::map<int, FgAbGroup> groups;
  std::map<int, AbMap> maps;  // out of degree n
  FgAbGroup group(int n) const;
  AbMap map(int n) const;     // zero map when absent
  Subquotient homology_at(int n) const;
  GradedAbGroups homology() const;
};

/// C_*(X) (x) S, for S covariant: degree n is the sum of S(H_i).
AbComplex chains_with(const CellComplex& x, const MackeyFunctor& s);
/// Hom(C_*(X), T), for T contravariant: degree n is the sum of T(H_i).
AbComplex cochains_with(const CellComplex& x, const MackeyFunctor& t);

GradedAbGroups homology(const CellComplex& x, const MackeyFunctor& s);
GradedAbGroups cohomology(const CellComplex& x, const MackeyFunctor& t);
/// Homology for covariant coefficients, cohomology for contravariant ones.
GradedAbGroups compute_with(const CellComplex& x, const MackeyFunctor& f);

// Builders.  Cell order is deterministic: by construction order, product
// cells by (left cell, right cell, orbit).

CellComplex orbit_complex(std::shared_ptr<const OrbitCategory> cat, int cls);
/// Unit sphere of the character g -> exp(2 pi i k/n) of a cyclic group: a
/// circle, or S^0 when the character is real.
CellComplex sphere_char(std::shared_ptr<const OrbitCategory> cat, int k);
CellComplex trivial_sphere(std::shared_ptr<const OrbitCategory> cat, int n);
CellComplex join(const CellComplex& x, const CellComplex& y);
CellComplex suspension(const CellComplex& x);
CellComplex internal_product(const CellComplex& x, const CellComplex& y);
CellComplex external_product(const CellComplex& x, const CellComplex& y, const ProductContext& ctx);
/// Cell (p + q, index) of internal_product(x, y): orbit `orbit` of G/H_i x G/K_j
/// for cell i of x in degree p and cell j of y in degree q, with the
/// projections onto G/H_i and G/K_j and the swap onto the orbits of
/// G/K_j x G/H_i (decompose_orbits order).
struct ProductCell {
  int p = 0, i = 0, q = 0, j = 0, orbit = 0;
  SpanMorphism to_left, to_right;
  std::vector<SpanMorphism> swap;
};
std::map<int, std::vector<ProductCell>> product_cell_table(const CellComplex& x, const CellComplex& y);
CellComplex disjoint_union(const CellComplex& x, const CellComplex& y);
/// Glues the first G/G 0-cell of y onto the first G/G 0-cell of x.
CellComplex wedge(const CellComplex& x, const CellComplex& y);
/// G x_K X for X over the subgroup side of ind.
CellComplex induced_complex(const CellComplex& x, const Induction& ind);
/// X regarded as a K-complex.
CellComplex restrict_complex(const CellComplex& x, const Induction& ind);
/// The nonequivariant complex underlying X.
CellComplex underlying_complex(const CellComplex& x);
/// X^K over G/K (K normal, literal index).
CellComplex fixed_point_complex(const CellComplex& x, int k_lit, const QuotientCategory& q);
/// Dual structure of a closed V-manifold structure: same orbits in degree
/// |V| - n, transposed incidences.
CellComplex dualize(const CellComplex& x, const DimensionFunction& v);

/// Named structures: circle, sphere2, torus (trivial action), S_sigma,
/// S_2sigma, S_lambda, torus_z2 and their duals (suffix _dual).
std::vector<std::string> library_names();
/// Builds over cat; throws UnsupportedGroup when the group does not fit.
CellComplex library_complex(const std::string& name, std::shared_ptr<const OrbitCategory> cat);
/// The group a library entry lives on (null for the trivial-action entries).
std::shared_ptr<const FiniteGroup> library_group(const std::string& name);
/// Ordinary structure paired with a dual library entry, and V.
std::string ordinary_of(const std::string& dual_name);

/// Prefix expressions: orbit(k), sphere_char(k), trivial_sphere(n), join(X,Y),
/// suspension(X), product(X,Y), external_product(X,Y), wedge(X,Y),
/// disjoint_union(X,Y), induced(k,X), restrict(k,X), underlying(X), fixed(k,X),
/// and library names.  Subgroup arguments are class ids or e / G.
CellComplex build(const std::string& expr, std::shared_ptr<const OrbitCategory> cat);

// Checks.

struct GradedComparison {
  std::map<int, std::pair<FgAbGroup, FgAbGroup>> degrees;
  bool ok() const;
};
GradedComparison compare_graded(const GradedAbGroups& lhs, const GradedAbGroups& rhs, int lo, int hi);

/// H(G x_K X; S) against H(X; S|K).
GradedComparison wirthmuller_check(const CellComplex& x, const Induction& ind, const MackeyFunctor& s);

struct FixedRestrictionReport {
  std::vector<std::string> violations;  // non-commuting squares
  GradedAbGroups ambient, fixed;        // H(X; S) and H(X^K; S^K)
  bool ok() const { return violations.empty(); }
};
FixedRestrictionReport fixed_restriction_check(const CellComplex& x, int k_lit, const MackeyFunctor& s);

/// Euler characteristic of X^K for every class K (dual complexes count the
/// K-fixed dimension of each dual cell).
std::vector<Int> fixed_euler_characteristics(const CellComplex& x);

}  // namespace equihom
