#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace equihom {

using Elem = int;

/// Finite group as a multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<Elem>>{{0}}, "1") {}
  /// Validates the table (identity at 0, inverses, associativity).
  FiniteGroup(std::vector<std::vector<Elem>> table, std::string label = {});

  /// Closure of permutations of {0..degree-1}; elements in breadth-first order
  /// from the identity, multiplying by generators on the right.
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& generators, int degree,
                                       std::string label = {});
  static FiniteGroup cyclic(int n);
  static FiniteGroup dihedral(int n);  // order 2n
  static FiniteGroup quaternion8();
  static FiniteGroup symmetric(int n);
  /// (g, h) has index g * |b| + h.
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

  int order() const { return static_cast<int>(mul_.size()); }
  Elem mul(Elem a, Elem b) const { return mul_[a][b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  /// g x g^-1
  Elem conj(Elem g, Elem x) const { return mul_[mul_[g][x]][inv_[g]]; }
  Elem element_order(Elem a) const;
  const std::string& label() const { return label_; }
  const std::vector<std::vector<Elem>>& table() const { return mul_; }
  bool is_abelian() const;

 private:
  std::vector<std::vector<Elem>> mul_;
  std::vector<Elem> inv_;
  std::string label_;
};

/// Strictly increasing list of elements containing 0, closed under mul/inv.
using Subgroup = std::vector<Elem>;

/// Closure of a set of elements to the subgroup it generates.
Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Elem>& gens);
bool is_subgroup(const FiniteGroup& g, const Subgroup& s);

class SubgroupLattice;

/// Complete subgroup lattice with canonical conjugacy-class representatives.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(std::shared_ptr<const FiniteGroup> group);

  const FiniteGroup& group() const { return *group_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const { return group_; }

  /// All subgroups, sorted lexicographically by element list.
  int num_subgroups() const { return static_cast<int>(subs_.size()); }
  const Subgroup& subgroup(int s) const { return subs_[s]; }
  int index_of(const Subgroup& s) const;  // -1 if absent
  bool contains(int s, Elem x) const { return member_[s][x] != 0; }
  int size(int s) const { return static_cast<int>(subs_[s].size()); }
  bool is_subset(int a, int b) const;  // a <= b
  int intersect(int a, int b) const;

  /// Index of g S g^-1.
  int conjugate(Elem g, int s) const { return conj_[g][s]; }

  // Conjugacy classes.  Class ids are ordered by (subgroup order, lex);
  // the representative of each class is its lex-minimal member.
  int num_classes() const { return static_cast<int>(reps_.size()); }
  int rep(int cls) const { return reps_[cls]; }
  int class_of(int s) const { return class_of_[s]; }
  /// c with c S c^-1 = rep(class_of(S)).
  Elem conjugator(int s) const { return conjugator_[s]; }
  const Subgroup& rep_subgroup(int cls) const { return subs_[reps_[cls]]; }
  int class_size(int cls) const;
  int trivial_class() const { return 0; }
  int top_class() const { return num_classes() - 1; }
  bool is_normal(int s) const;
  int normalizer(int s) const;
  /// K <= some conjugate of L (by class ids)
  bool subconjugate(int k_cls, int l_cls) const;

  // Left cosets gS: coset id = min element of gS.
  Elem coset_min(int s, Elem g) const { return coset_min_[s][g]; }
  /// min elements of the cosets of S, increasing.
  const std::vector<Elem>& coset_reps(int s) const { return coset_reps_[s]; }
  int num_cosets(int s) const { return static_cast<int>(coset_reps_[s].size()); }
  /// position of coset gS in coset_reps(s)
  int coset_index(int s, Elem g) const { return coset_pos_[s][coset_min_[s][g]]; }

  /// Weyl group N(H)/H of a class representative, with coset labels (min elements).
  struct Weyl {
    std::shared_ptr<const FiniteGroup> group;
    std::vector<Elem> labels;
  };
  const Weyl& weyl(int cls) const;

 private:
  std::shared_ptr<const FiniteGroup> group_;
  std::vector<Subgroup> subs_;
  std::map<Subgroup, int> index_;
  std::vector<std::vector<char>> member_;
  std::vector<std::vector<int>> conj_;
  std::vector<int> reps_, class_of_;
  std::vector<Elem> conjugator_;
  std::vector<std::vector<Elem>> coset_min_, coset_reps_;
  std::vector<std::vector<int>> coset_pos_;
  mutable std::mutex weyl_mutex_;
  mutable std::map<int, Weyl> weyl_;
};

/// The group structure on a subgroup, elements re-indexed in increasing order.
struct SubgroupAsGroup {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<Elem> embed;  // sub index -> ambient element
};
SubgroupAsGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& s, std::string label = {});

/// G/N for a normal subgroup; cosets ordered by min element.
struct QuotientGroup {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<Elem> project;  // ambient element -> quotient element
  std::vector<Elem> labels;   // quotient element -> min element of the coset
};
QuotientGroup quotient_group(const FiniteGroup& g, const Subgroup& n, std::string label = {});

/// Finite set with a left action: action[g][x].
struct GSet {
  int size = 0;
  std::vector<std::vector<int>> action;
  std::vector<std::string> labels;

  /// G/S with points the cosets in coset_reps order.
  static GSet cosets(const SubgroupLattice& lat, int s);
  /// Diagonal action on a product; point (x, y) has index x * b.size + y.
  static GSet product(const GSet& a, const GSet& b);
  bool is_action(const FiniteGroup& g) const;
};

struct Orbit {
  std::vector<int> points;     // increasing
  int base = 0;                // point whose stabilizer is the class representative
  int stabilizer = 0;          // literal subgroup index of Stab(base) (= a class rep)
  int cls = 0;                 // class id
  std::vector<Elem> transversal;  // point x -> a with a . base = x; -1 off the orbit
};

/// Orbits ordered by their minimal point.
std::vector<Orbit> decompose_orbits(const SubgroupLattice& lat, const GSet& x);

/// One representative (the minimal element) per double coset H g K.
std::vector<Elem> double_cosets(const SubgroupLattice& lat, int h, int k);

}  // namespace equihom
