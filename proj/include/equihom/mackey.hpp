#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "equihom/abelian.hpp"
#include "equihom/burnside.hpp"

namespace equihom {

enum class Variance { Contravariant, Covariant };
inline Variance opposite(Variance v) {
  return v == Variance::Contravariant ? Variance::Covariant : Variance::Contravariant;
}
const char* to_string(Variance v);
Variance parse_variance(const std::string& s);

/// Additive functor on the stable orbit category, stored on basis spans.
/// Contravariant: a span H -> K acts T(K) -> T(H).  Covariant: S(H) -> S(K).
class MackeyFunctor {
 public:
  using Actions = std::vector<std::vector<IntMatrix>>;  // [h * n + k][basis index]

  MackeyFunctor(Variance v, std::shared_ptr<const OrbitCategory> cat, std::vector<FgAbGroup> values, Actions actions,
                bool validate = true);

  Variance variance() const { return variance_; }
  const OrbitCategory& category() const { return *cat_; }
  std::shared_ptr<const OrbitCategory> category_ptr() const { return cat_; }
  int num_objects() const { return cat_->num_objects(); }
  const FgAbGroup& value(int h) const { return values_[h]; }
  const std::vector<FgAbGroup>& values() const { return values_; }

  const IntMatrix& action(int h, int k, int i) const { return actions_[h * num_objects() + k][i]; }
  /// Matrix of a span morphism f: H -> K (T(K) -> T(H) or S(H) -> S(K)), reduced.
  IntMatrix act(const SpanMorphism& f) const;
  AbMap act_map(const SpanMorphism& f) const;
  const FgAbGroup& act_source(const SpanMorphism& f) const;
  const FgAbGroup& act_target(const SpanMorphism& f) const;

  /// Empty when functorial; otherwise a description of a failing span pair.
  std::optional<std::string> functoriality_defect() const;
  bool is_zero() const;

  std::string name;

 private:
  Variance variance_;
  std::shared_ptr<const OrbitCategory> cat_;
  std::vector<FgAbGroup> values_;
  Actions actions_;
};

using MackeyPtr = std::shared_ptr<const MackeyFunctor>;

/// Natural transformation given by one matrix per object.
struct NatTransf {
  MackeyPtr source, target;
  std::vector<IntMatrix> components;

  std::optional<std::string> naturality_defect() const;
  AbMap component(int h) const { return AbMap(source->value(h), target->value(h), components[h]); }
};

// Constructions.

/// A_a = A(-, a) (contravariant) or A^a = A(a, -) (covariant).
MackeyPtr free_functor(std::shared_ptr<const OrbitCategory> cat, Variance v, int a);
/// "burnside", "constant_Z", "zero".
MackeyPtr builtin_functor(std::shared_ptr<const OrbitCategory> cat, const std::string& name, Variance v);
/// Same values, the variance changed through the self-duality of the orbit category.
MackeyPtr transpose_variance(const MackeyFunctor& t);
MackeyPtr direct_sum(const std::vector<MackeyPtr>& parts);
/// T / U where U(h) is spanned by the columns of sub[h] (must be a subfunctor).
MackeyPtr quotient_functor(const MackeyFunctor& t, const std::vector<IntMatrix>& sub);
/// The projection T -> T / U.
NatTransf quotient_map(const MackeyPtr& t, const std::vector<IntMatrix>& sub);
MackeyPtr cokernel_functor(const NatTransf& f);
/// The kernel functor together with its inclusion.
NatTransf kernel_functor(const NatTransf& f);
/// The natural transformation A_a -> T (or A^a -> S) classified by x in T(a).
NatTransf yoneda_map(const MackeyPtr& free, const MackeyPtr& t, int a, const IntVector& x);
bool is_isomorphism(const NatTransf& f);
/// Equal canonical values at every object.
bool same_values(const MackeyFunctor& a, const MackeyFunctor& b);

/// Seeded random functor: cokernel of a random map between small sums of free functors.
MackeyPtr random_functor(std::shared_ptr<const OrbitCategory> cat, Variance v, std::mt19937_64& rng);

// Hom and tensor.

struct HomResult {
  FgAbGroup group;
  /// One natural transformation per canonical generator of group.
  std::vector<std::vector<IntMatrix>> generators;
};
HomResult hom_mackey(const MackeyFunctor& t, const MackeyFunctor& u);
FgAbGroup tensor_mackey(const MackeyFunctor& t, const MackeyFunctor& s);

/// T (x) S over the orbit category, with classes of elementary tensors.
class TensorProduct {
 public:
  TensorProduct(const MackeyFunctor& t, const MackeyFunctor& s);
  const FgAbGroup& group() const { return sq_.group(); }
  /// Class of x (x) y for x in T(a), y in S(a).
  IntVector element(int a, const IntVector& x, const IntVector& y) const;

 private:
  std::vector<std::size_t> offset_, width_;
  std::size_t total_ = 0;
  Subquotient sq_;
};

// Left Kan extension along an additive functor F into the orbit category of G,
// presented on generating morphisms of the source.
struct KanSource {
  Variance variance = Variance::Contravariant;
  std::shared_ptr<const OrbitCategory> target;
  std::vector<FgAbGroup> values;  // per source object
  std::vector<int> image;         // F(a)
  struct Generator {
    int from, to;          // a morphism from -> to in the source
    SpanMorphism image;    // F of it, F(from) -> F(to)
    IntMatrix action;      // contravariant: values[to] -> values[from]; covariant: values[from] -> values[to]
  };
  std::vector<Generator> generators;
};

class KanExtension {
 public:
  explicit KanExtension(KanSource src);

  const KanSource& source() const { return src_; }
  const FgAbGroup& value(int b) const { return level(b).sq.group(); }
  /// Contravariant: beta: b' -> b acts value(b) -> value(b').  Covariant: beta: b -> b' acts value(b) -> value(b').
  IntMatrix act(const SpanMorphism& beta) const;
  /// Class of u (x) t at level b; u in A(b, F a) (contravariant) or A(F a, b) (covariant).
  IntVector element(int b, int a, const SpanMorphism& u, const IntVector& t) const;
  MackeyPtr functor(bool validate = true) const;

 private:
  struct Level {
    std::vector<std::size_t> offset;
    std::size_t dim = 0;
    Subquotient sq;
  };
  const Level& level(int b) const;
  Level build(int b) const;
  std::size_t ngens(int a) const { return src_.values[a].ngens(); }

  KanSource src_;
  mutable std::mutex mutex_;
  mutable std::vector<std::unique_ptr<Level>> levels_;
};

/// T|K along an induction K -> G.
MackeyPtr restrict_group(const MackeyFunctor& t, const Induction& ind);
/// G x_K C.
MackeyPtr induce_group(const MackeyFunctor& c, const Induction& ind);
KanSource induction_source(const MackeyFunctor& c, const Induction& ind);

/// Orbit categories of G, G' and G x G' with the product bookkeeping.
class ProductContext {
 public:
  ProductContext(std::shared_ptr<const OrbitCategory> a, std::shared_ptr<const OrbitCategory> b);
  const OrbitCategory& left() const { return *a_; }
  const OrbitCategory& right() const { return *b_; }
  const OrbitCategory& product() const { return *ab_; }
  std::shared_ptr<const OrbitCategory> left_ptr() const { return a_; }
  std::shared_ptr<const OrbitCategory> right_ptr() const { return b_; }
  std::shared_ptr<const OrbitCategory> product_ptr() const { return ab_; }
  Elem pair(Elem x, Elem y) const { return x * b_->group().order() + y; }
  /// Literal index of S x S' in the product lattice.
  int product_subgroup(int s, int t) const;
  int product_object(int h, int k) const;
  SpanMorphism product_span(const SpanMorphism& f, const SpanMorphism& g) const;
  /// The diagonal G -> G x G (requires equal factors).
  std::shared_ptr<const Induction> diagonal() const;

 private:
  std::shared_ptr<const OrbitCategory> a_, b_, ab_;
  mutable std::mutex mutex_;
  mutable std::shared_ptr<const Induction> diagonal_;
};

KanSource box_source(const MackeyFunctor& t, const MackeyFunctor& u, const ProductContext& ctx);
MackeyPtr box_external(const MackeyFunctor& t, const MackeyFunctor& u, const ProductContext& ctx);
MackeyPtr box_internal(const MackeyFunctor& t, const MackeyFunctor& u, const ProductContext& ctx);
/// The internal product read off an external one (levels diag(b)).
MackeyPtr box_internal(const KanExtension& kan, const ProductContext& ctx);

/// S (covariant) mixed with T (contravariant), from the generators-and-relations formula.
/// Level l is generated by s (x) u (x) t with u : k -> r, r an orbit of G/J x G/L,
/// s in S(k), t in T(j).
class MixedProduct {
 public:
  MixedProduct(const MackeyFunctor& s, const MackeyFunctor& t);
  const FgAbGroup& value(int l) const;
  /// Orbits of G/J x G/L (points x * |G/L| + y).
  const std::vector<Orbit>& orbits(int j, int l) const;
  /// Class of x (x) u (x) y at level l; u : k -> orbits(j, l)[r].cls.
  IntVector element(int l, int k, int j, int r, const SpanMorphism& u, const IntVector& x, const IntVector& y) const;
  MackeyPtr functor() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};
MackeyPtr mixed_product(const MackeyFunctor& s, const MackeyFunctor& t);

// Fixed points and inflation for a normal subgroup K (literal index).

struct QuotientCategory {
  QuotientGroup quotient;
  std::shared_ptr<const OrbitCategory> cat;
  /// Q object -> G literal subgroup (preimage of its representative) and G object.
  std::vector<int> preimage, object;
};
QuotientCategory quotient_category(const OrbitCategory& g, int k_lit);
/// Literal subgroup S/K of the quotient, for K <= S.
int quotient_subgroup(const SubgroupLattice& g, const QuotientCategory& q, int s_lit);
/// Q object of G/H for a G object h with K <= H.
int quotient_object(const OrbitCategory& g, const QuotientCategory& q, int h);
/// The K-fixed part of a span morphism between objects containing K: spans
/// whose inner subgroup misses K vanish, the others pass to G/K.
SpanMorphism quotient_span(const OrbitCategory& g, const QuotientCategory& q, int k_lit, const SpanMorphism& f);

struct FixedQuotient {
  /// S_K(L): generating columns inside S(L), per G object.
  std::vector<IntMatrix> sub;
  MackeyPtr quotient;  // S^K over G/K
};
FixedQuotient fixed_quotient(const MackeyFunctor& s, int k_lit, const QuotientCategory& q);
MackeyPtr inflate(const MackeyFunctor& s, std::shared_ptr<const OrbitCategory> g, int k_lit, const QuotientCategory& q);

}  // namespace equihom
