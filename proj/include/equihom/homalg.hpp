#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equihom/chains.hpp"
#include "equihom/mackey.hpp"

namespace equihom {

/// Order in which levels are visited when choosing generators.
enum class CoverOrder { SmallestFirst, LargestFirst };

/// F = sum of A_{a_k} -> T, one summand per chosen element x_k of T(a_k).
struct FreeCover {
  std::vector<int> objects;
  std::vector<IntVector> elements;
  MackeyPtr free;  // the sum, summands in the order above
  NatTransf epi;
};
FreeCover free_cover(const MackeyPtr& t, CoverOrder order = CoverOrder::SmallestFirst);

/// Free resolution F_L -> ... -> F_0 -> T of a contravariant functor, stored as
/// a complex of free functors: degree p holds the summands of F_p, and
/// boundary(p, k, l) is the component A_{a_k} -> A_{a_l} of F_p -> F_{p-1}.
struct Resolution {
  MackeyPtr target;
  CellComplex complex;
  std::vector<IntVector> augmentation;  // x_k in T(a_k) for the degree-0 summands
  int length = 0;
};

Resolution resolution(const MackeyPtr& t, int length = 4, CoverOrder order = CoverOrder::SmallestFirst);
/// Empty when the augmented complex is exact at every level and stage.
std::optional<std::string> exactness_defect(const Resolution& r);

FgAbGroup tor(const Resolution& r, const MackeyFunctor& s, int p);
FgAbGroup ext(const Resolution& r, const MackeyFunctor& u, int p);
FgAbGroup tor(const MackeyPtr& t, const MackeyFunctor& s, int p, int length = 4);
FgAbGroup ext(const MackeyPtr& t, const MackeyFunctor& u, int p, int length = 4);

}  // namespace equihom
