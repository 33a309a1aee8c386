#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "equihom/chains.hpp"
#include "equihom/mackey.hpp"

namespace equihom {

struct CheckReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// C(X x Y) against C(X) ⊠ C(Y): the map sending the product cell to the
/// tensor of the two cells is invertible at every level and commutes with the
/// differentials (d ⊠ 1 + (-1)^p 1 ⊠ d).
CheckReport box_chains_check(const CellComplex& x, const CellComplex& y, const ProductContext& ctx);
/// T -> A_{G/G} □ T, t |-> [1 ⊗ t], is a natural isomorphism (ctx over G x G).
CheckReport unit_box_check(const MackeyPtr& t, const ProductContext& ctx);
/// S -> S ⋄ A_{G/G}, s |-> [s ⊗ u ⊗ 1], is a natural isomorphism.
CheckReport unit_mixed_check(const MackeyPtr& s);
/// S ⋄ T and S^t □ T have the same canonical value at every level.
CheckReport mixed_box_check(const MackeyFunctor& s, const MackeyFunctor& t, const ProductContext& ctx);

/// A cocycle of Hom(C_*(X), T) (T contravariant) or a cycle of C_*(X) ⊗ S (S
/// covariant): one value per cell of the given degree.
struct CochainClass {
  std::shared_ptr<const CellComplex> complex;
  MackeyPtr coefficients;
  int degree = 0;
  std::vector<IntVector> values;
};
struct ChainClass {
  std::shared_ptr<const CellComplex> complex;
  MackeyPtr coefficients;
  int degree = 0;
  std::vector<IntVector> values;
};
/// Throws NotACocycle unless the values are killed by the differential.
CochainClass make_cocycle(std::shared_ptr<const CellComplex> x, MackeyPtr t, int degree, std::vector<IntVector> values);
ChainClass make_cycle(std::shared_ptr<const CellComplex> x, MackeyPtr s, int degree, std::vector<IntVector> values);
/// Cocycles (cycles) representing the canonical generators of H^n (H_n).
std::vector<CochainClass> cohomology_generators(std::shared_ptr<const CellComplex> x, MackeyPtr t, int degree);
std::vector<ChainClass> homology_generators(std::shared_ptr<const CellComplex> x, MackeyPtr s, int degree);
/// Canonical coordinates of the class in H^n (H_n).
IntVector class_of(const CochainClass& c);
IntVector class_of(const ChainClass& c);

struct CupProduct {
  std::shared_ptr<const CellComplex> complex;  // external_product(X, Y)
  std::shared_ptr<const KanExtension> kan;     // T ⊠ U
  CochainClass cocycle;                        // coefficients kan->functor()
};
/// x × y on X × Y with (x × y)(a × b) = [x(a) ⊗ y(b)].
CupProduct external_cup(const CochainClass& x, const CochainClass& y, const ProductContext& ctx);

/// A cellular chain map C(Z) -> C(X x Y) into internal_product(X, Y): one span
/// from each cell of Z to each product cell of the same degree.
struct DiagonalApprox {
  std::shared_ptr<const CellComplex> source, left, right;
  std::shared_ptr<const CellComplex> product;  // internal_product(left, right)
  std::map<std::tuple<int, int, int>, SpanMorphism> entries;  // (degree, Z cell, product cell)
  SpanMorphism entry(int degree, int z, int r) const;
};
/// Chain-map violations, and when source, left and right agree the counit
/// laws (1 x e) d = id = (e x 1) d.
CheckReport check_diagonal(const DiagonalApprox& d);
/// A diagonal of X carried by closed cells: d(c) lies in C(c' x c'') with c',
/// c'' in the closure of c, solved degree by degree from d(v) = v x v.  Needs
/// closures read off nonzero incidences (regular structures); InvalidDiagonal
/// otherwise.
DiagonalApprox diagonal_approximation(std::shared_ptr<const CellComplex> x);

/// y ∩ z for y on d.right (coefficients U) and z on d.source (coefficients S):
/// a ⊗ b |-> [s ⊗ u ⊗ y(b)] on a, a cycle of d.left with coefficients S ⋄ U.
ChainClass cap_product(const CochainClass& y, const ChainClass& z, const DiagonalApprox& d);
/// x ∪ y = d^*(x × y) for the trivial group, where every coefficient system
/// is one abelian group; free values only.  Coefficients are T ⊗ U.
CochainClass classical_cup(const CochainClass& x, const CochainClass& y, const DiagonalApprox& d);

struct PairingValue {
  FgAbGroup group;
  IntVector value;
};
/// <x, z> = sum over cells of [x_i ⊗ z_i] in T ⊗ S, which is (S ⋄ T)(G/G).
PairingValue evaluation_pairing(const CochainClass& x, const ChainClass& z);

// Poincaré duality at desk scale.

struct DualityEntry {
  int degree = 0;
  FgAbGroup lhs, rhs;
  bool equal() const { return lhs == rhs; }
};
struct DualityReport {
  std::string example;
  int dimension = 0;                                     // |V|
  std::map<std::string, std::vector<DualityEntry>> coefficients;  // H^n(M; T) vs H_{|V|-n}(M*; T^t)
  std::vector<DualityEntry> classical;                   // underlying H^n vs H_{d-n}, integer coefficients
  std::vector<std::string> violations;                   // fixed-level Euler characteristics
  bool ok() const;
};
/// name: a dual library entry, its ordinary partner, or one of the classical
/// manifolds circle / sphere2 / torus (no group).
DualityReport duality_report(const std::string& name,
                             const std::vector<std::string>& coefficients = {"burnside", "constant_Z"});

}  // namespace equihom
