#pragma once

#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "equihom/group.hpp"
#include "equihom/intmatrix.hpp"

namespace equihom {

/// A span G/H <- G/J -> G/K between class representatives H and K: J is a
/// literal subgroup of H, and the right leg sends eJ to gK (g the minimal
/// element of its coset).  Stored in canonical (lex-minimal) form.
struct Span {
  int J = 0;
  Elem g = 0;
  auto operator<=>(const Span&) const = default;
};

/// Integer combination of basis spans from object src to object tgt
/// (objects are conjugacy-class ids), dense over the basis.
struct SpanMorphism {
  int src = 0, tgt = 0;
  IntVector coeffs;

  SpanMorphism() = default;
  SpanMorphism(int s, int t, std::size_t n) : src(s), tgt(t), coeffs(n) {}

  bool is_zero() const;
  SpanMorphism& operator+=(const SpanMorphism& rhs);
  SpanMorphism operator+(const SpanMorphism& rhs) const;
  SpanMorphism operator-(const SpanMorphism& rhs) const;
  SpanMorphism operator-() const;
  SpanMorphism scaled(const Int& c) const;
  bool operator==(const SpanMorphism& rhs) const = default;
};

/// The stable orbit category of a finite group: objects G/H for class
/// representatives H, morphisms free on canonical spans.
class OrbitCategory {
 public:
  explicit OrbitCategory(std::shared_ptr<const SubgroupLattice> lattice);
  static std::shared_ptr<const OrbitCategory> create(std::shared_ptr<const FiniteGroup> g);

  const SubgroupLattice& lattice() const { return *lat_; }
  std::shared_ptr<const SubgroupLattice> lattice_ptr() const { return lat_; }
  const FiniteGroup& group() const { return lat_->group(); }
  int num_objects() const { return lat_->num_classes(); }
  /// Literal subgroup index of the representative of object h.
  int rep(int h) const { return lat_->rep(h); }

  const std::vector<Span>& basis(int h, int k) const { return basis_[h * n_ + k]; }
  std::size_t basis_size(int h, int k) const { return basis_[h * n_ + k].size(); }
  int basis_index(int h, int k, const Span& s) const;
  /// Canonical form of (J, gK) under the H-action.
  Span canonical(int h, int k, int J, Elem g) const;

  /// G/H_lit <- G/J -> G/K_lit with eJ -> aH_lit and eJ -> bK_lit, for literal
  /// subgroups H_lit, K_lit; rewritten through the stored conjugators.
  struct Ref {
    int src, tgt, index;
  };
  Ref locate(int h_lit, int k_lit, int J, Elem a, Elem b) const;
  SpanMorphism make_span(int h_lit, int k_lit, int J, Elem a, Elem b) const;

  SpanMorphism zero(int h, int k) const { return SpanMorphism(h, k, basis_size(h, k)); }
  SpanMorphism identity(int h) const;
  SpanMorphism basis_morphism(int h, int k, int i) const;
  SpanMorphism from_ref(const Ref& r) const { return basis_morphism(r.src, r.tgt, r.index); }
  int identity_index(int h) const;

  /// f then s: for f: H -> K and s: K -> M, the composite H -> M.
  SpanMorphism compose(const SpanMorphism& f, const SpanMorphism& s) const;
  /// Composite of basis spans i in (h,k) and j in (k,m), over basis(h,m).
  const IntVector& compose_basis(int h, int k, int m, int i, int j) const;

  /// Index in basis(k, h) of the reversed basis span i of basis(h, k).
  int transpose_index(int h, int k, int i) const;
  SpanMorphism transpose(const SpanMorphism& f) const;

  /// Index [H : J] of the inner subgroup, and of g^-1 J g in K.
  int left_index(int h, int k, int i) const;
  int right_index(int h, int k, int i) const;

  std::string describe(int h, int k, int i) const;

  /// Basis spans that generate the category under composition and sums:
  /// restrictions to maximal subgroups, transfers from maximal subgroups, and
  /// Weyl conjugations (triples h, k, index).
  struct Generator {
    int h, k, index;
  };
  const std::vector<Generator>& generators() const { return generators_; }

 private:
  IntVector compute_composite(int h, int k, int m, int i, int j) const;

  std::shared_ptr<const SubgroupLattice> lat_;
  int n_;
  std::vector<std::vector<Span>> basis_;
  std::vector<std::vector<int>> transpose_;
  std::vector<Generator> generators_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<std::uint64_t, IntVector> composites_;
};

/// For a G-set span X <- W -> Y (maps given pointwise), the matrix of span
/// morphisms between the orbits of X and of Y: entry [i][j] runs from orbit i of X
/// to orbit j of Y.
std::vector<std::vector<SpanMorphism>> gset_span_matrix(const OrbitCategory& cat, const GSet& w,
                                                        const std::vector<int>& to_x, const std::vector<int>& to_y,
                                                        const std::vector<Orbit>& x_orbits, int x_size,
                                                        const std::vector<Orbit>& y_orbits, int y_size);

/// An injective homomorphism K -> G, given by images, with the induced map on
/// orbit categories.
class Induction {
 public:
  Induction(std::shared_ptr<const OrbitCategory> sub, std::shared_ptr<const OrbitCategory> ambient,
            std::vector<Elem> embed);

  const OrbitCategory& sub() const { return *sub_; }
  const OrbitCategory& ambient() const { return *amb_; }
  std::shared_ptr<const OrbitCategory> sub_ptr() const { return sub_; }
  std::shared_ptr<const OrbitCategory> ambient_ptr() const { return amb_; }
  const std::vector<Elem>& embed() const { return embed_; }
  /// Ambient literal subgroup index of the image of a sub-lattice subgroup.
  int image_subgroup(int s) const { return image_sub_[s]; }
  /// Ambient object of the image of a sub object.
  int object(int h) const { return amb_->lattice().class_of(image_sub_[sub_->rep(h)]); }
  SpanMorphism span(int h, int k, int i) const;
  SpanMorphism map(const SpanMorphism& f) const;

 private:
  std::shared_ptr<const OrbitCategory> sub_, amb_;
  std::vector<Elem> embed_;
  std::vector<int> image_sub_;
};

/// The inclusion of a subgroup (given by literal index in the lattice of G).
std::shared_ptr<const Induction> subgroup_induction(std::shared_ptr<const OrbitCategory> g, int k_lit);

}  // namespace equihom
