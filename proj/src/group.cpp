#include "equihom/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "equihom/error.hpp"

namespace equihom {

// -------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(std::vector<std::vector<Elem>> table, std::string label)
    : mul_(std::move(table)), label_(std::move(label)) {
  const int n = static_cast<int>(mul_.size());
  if (n == 0) throw Error(ErrorKind::NoIdentity, "empty multiplication table");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(mul_[i].size()) != n) throw Error(ErrorKind::Parse, "multiplication table is not square");
    for (int j = 0; j < n; ++j)
      if (mul_[i][j] < 0 || mul_[i][j] >= n)
        throw Error(ErrorKind::Parse, "table entry out of range", "(" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  for (int i = 0; i < n; ++i)
    if (mul_[0][i] != i || mul_[i][0] != i)
      throw Error(ErrorKind::NoIdentity, "element 0 is not a two-sided identity", "(0," + std::to_string(i) + ")");
  inv_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (mul_[i][j] == 0 && mul_[j][i] == 0) {
        inv_[i] = j;
        break;
      }
    if (inv_[i] < 0) throw Error(ErrorKind::NoIdentity, "element has no inverse", std::to_string(i));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Elem ab = mul_[a][b];
      for (int c = 0; c < n; ++c)
        if (mul_[ab][c] != mul_[a][mul_[b][c]]) {
          std::ostringstream w;
          w << "(" << a << "," << b << "," << c << ")";
          throw Error(ErrorKind::NonAssociative, "multiplication is not associative", w.str());
        }
    }
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& generators, int degree,
                                           std::string label) {
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const auto& p = generators[k];
    std::vector<char> seen(degree, 0);
    bool ok = static_cast<int>(p.size()) == degree;
    for (std::size_t i = 0; ok && i < p.size(); ++i) {
      if (p[i] < 0 || p[i] >= degree || seen[p[i]]) ok = false;
      else seen[p[i]] = 1;
    }
    if (!ok) {
      std::ostringstream w;
      w << "(" << k << "," << degree << "," << p.size() << ")";
      throw Error(ErrorKind::NonClosedGenerators, "generator is not a permutation of the stated degree", w.str());
    }
  }
  using Perm = std::vector<int>;
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Perm> elems{id};
  std::map<Perm, int> index{{id, 0}};
  // x * s = x o s (apply s first)
  auto compose = [](const Perm& x, const Perm& s) {
    Perm r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[s[i]];
    return r;
  };
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& s : generators) {
      Perm y = compose(elems[head], s);
      if (index.emplace(y, static_cast<int>(elems.size())).second) elems.push_back(std::move(y));
    }
  }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<Elem>> table(n, std::vector<Elem>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
  return FiniteGroup(std::move(table), std::move(label));
}

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup(std::move(t), "Z/" + std::to_string(n));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  std::vector<int> r(n), s(n);
  for (int i = 0; i < n; ++i) {
    r[i] = (i + 1) % n;
    s[i] = (n - i) % n;
  }
  return from_permutations({r, s}, n, "D" + std::to_string(n));
}

FiniteGroup FiniteGroup::quaternion8() {
  // element 2u + e is (-1)^e * unit[u], units 1, i, j, k
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<Elem>> t(8, std::vector<Elem>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int ua = a / 2, ub = b / 2;
      const int e = (a % 2 + b % 2 + sign_mul[ua][ub]) % 2;
      t[a][b] = 2 * unit_mul[ua][ub] + e;
    }
  return FiniteGroup(std::move(t), "Q8");
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n <= 1) return FiniteGroup();
  std::vector<int> cycle(n), swap(n);
  for (int i = 0; i < n; ++i) {
    cycle[i] = (i + 1) % n;
    swap[i] = i;
  }
  std::swap(swap[0], swap[1]);
  if (n == 2) return from_permutations({swap}, n, "S2");
  return from_permutations({cycle, swap}, n, "S" + std::to_string(n));
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  std::vector<std::vector<Elem>> t(na * nb, std::vector<Elem>(na * nb));
  for (int x = 0; x < na * nb; ++x)
    for (int y = 0; y < na * nb; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return FiniteGroup(std::move(t), a.label() + "x" + b.label());
}

Elem FiniteGroup::element_order(Elem a) const {
  Elem x = a;
  int k = 1;
  while (x != 0) {
    x = mul_[x][a];
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < a; ++b)
      if (mul_[a][b] != mul_[b][a]) return false;
  return true;
}

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Elem>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> elems{0};
  in[0] = 1;
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (Elem s : gens) {
      const Elem y = g.mul(elems[head], s);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

bool is_subgroup(const FiniteGroup& g, const Subgroup& s) {
  if (s.empty() || s[0] != 0 || !std::is_sorted(s.begin(), s.end())) return false;
  std::vector<char> in(g.order(), 0);
  for (Elem x : s) {
    if (x < 0 || x >= g.order() || in[x]) return false;
    in[x] = 1;
  }
  for (Elem a : s)
    for (Elem b : s)
      if (!in[g.mul(a, b)]) return false;
  return true;
}

// --------------------------------------------------------- SubgroupLattice

SubgroupLattice::SubgroupLattice(std::shared_ptr<const FiniteGroup> group) : group_(std::move(group)) {
  const FiniteGroup& g = *group_;
  const int n = g.order();

  // cyclic subgroups, each with a generator
  std::map<Subgroup, std::vector<Elem>> found;
  std::vector<std::pair<Subgroup, Elem>> cyclics;
  for (Elem x = 0; x < n; ++x) {
    Subgroup c = generated_subgroup(g, {x});
    if (found.emplace(c, std::vector<Elem>{x}).second) cyclics.emplace_back(c, x);
  }
  // joins with cyclic subgroups until closed
  std::vector<Subgroup> frontier;
  for (const auto& [c, x] : cyclics) frontier.push_back(c);
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const Subgroup& a : frontier) {
      std::vector<char> in(n, 0);
      for (Elem x : a) in[x] = 1;
      const std::vector<Elem> gens_a = found.at(a);
      for (const auto& [c, x] : cyclics) {
        if (in[x]) continue;
        std::vector<Elem> gens = gens_a;
        gens.push_back(x);
        Subgroup j = generated_subgroup(g, gens);
        if (found.emplace(j, gens).second) next.push_back(std::move(j));
      }
    }
    frontier = std::move(next);
  }
  for (auto& [s, gens] : found) subs_.push_back(s);  // std::map order is lexicographic
  const int m = static_cast<int>(subs_.size());
  for (int i = 0; i < m; ++i) index_[subs_[i]] = i;
  member_.assign(m, std::vector<char>(n, 0));
  for (int i = 0; i < m; ++i)
    for (Elem x : subs_[i]) member_[i][x] = 1;

  conj_.assign(n, std::vector<int>(m));
  for (Elem x = 0; x < n; ++x)
    for (int i = 0; i < m; ++i) {
      Subgroup c;
      c.reserve(subs_[i].size());
      for (Elem y : subs_[i]) c.push_back(g.conj(x, y));
      std::sort(c.begin(), c.end());
      conj_[x][i] = index_.at(c);
    }

  // classes: the first member met in lex order is the lex-minimal one
  class_of_.assign(m, -1);
  conjugator_.assign(m, 0);
  std::vector<int> rep_list;
  for (int i = 0; i < m; ++i) {
    if (class_of_[i] >= 0) continue;
    const int c = static_cast<int>(rep_list.size());
    rep_list.push_back(i);
    for (Elem x = 0; x < n; ++x) {
      const int j = conj_[x][i];
      if (class_of_[j] < 0) {
        class_of_[j] = c;
        conjugator_[j] = g.inv(x);  // x^-1 (x S x^-1) x = S
      }
    }
  }
  std::vector<int> order(rep_list.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return subs_[rep_list[a]].size() < subs_[rep_list[b]].size(); });
  std::vector<int> renumber(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    reps_.push_back(rep_list[order[k]]);
    renumber[order[k]] = static_cast<int>(k);
  }
  for (int i = 0; i < m; ++i) class_of_[i] = renumber[class_of_[i]];
  for (int i = 0; i < m; ++i)
    if (conj_[conjugator_[i]][i] != reps_[class_of_[i]])
      throw std::logic_error("SubgroupLattice: conjugator verification failed");

  coset_min_.assign(m, std::vector<Elem>(n));
  coset_reps_.assign(m, {});
  coset_pos_.assign(m, std::vector<int>(n, -1));
  for (int i = 0; i < m; ++i) {
    for (Elem x = 0; x < n; ++x) {
      Elem best = n;
      for (Elem h : subs_[i]) best = std::min(best, g.mul(x, h));
      coset_min_[i][x] = best;
      if (best == x) {
        coset_pos_[i][x] = static_cast<int>(coset_reps_[i].size());
        coset_reps_[i].push_back(x);
      }
    }
  }
}

int SubgroupLattice::index_of(const Subgroup& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

bool SubgroupLattice::is_subset(int a, int b) const {
  if (subs_[a].size() > subs_[b].size()) return false;
  for (Elem x : subs_[a])
    if (!member_[b][x]) return false;
  return true;
}

int SubgroupLattice::intersect(int a, int b) const {
  Subgroup c;
  for (Elem x : subs_[a])
    if (member_[b][x]) c.push_back(x);
  return index_.at(c);
}

int SubgroupLattice::class_size(int cls) const {
  return static_cast<int>(std::count(class_of_.begin(), class_of_.end(), cls));
}

bool SubgroupLattice::is_normal(int s) const {
  for (Elem x = 0; x < group_->order(); ++x)
    if (conj_[x][s] != s) return false;
  return true;
}

int SubgroupLattice::normalizer(int s) const {
  Subgroup n;
  for (Elem x = 0; x < group_->order(); ++x)
    if (conj_[x][s] == s) n.push_back(x);
  return index_.at(n);
}

bool SubgroupLattice::subconjugate(int k_cls, int l_cls) const {
  const int k = reps_[k_cls];
  for (int i = 0; i < num_subgroups(); ++i)
    if (class_of_[i] == l_cls && is_subset(k, i)) return true;
  return false;
}

const SubgroupLattice::Weyl& SubgroupLattice::weyl(int cls) const {
  std::lock_guard<std::mutex> lock(weyl_mutex_);
  auto it = weyl_.find(cls);
  if (it != weyl_.end()) return it->second;
  const int h = reps_[cls];
  const Subgroup& nrm = subs_[normalizer(h)];
  Weyl w;
  for (Elem x : nrm)
    if (coset_min_[h][x] == x) w.labels.push_back(x);
  const int k = static_cast<int>(w.labels.size());
  std::map<Elem, int> pos;
  for (int i = 0; i < k; ++i) pos[w.labels[i]] = i;
  std::vector<std::vector<Elem>> t(k, std::vector<Elem>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) t[a][b] = pos.at(coset_min_[h][group_->mul(w.labels[a], w.labels[b])]);
  w.group = std::make_shared<const FiniteGroup>(std::move(t), "W");
  return weyl_.emplace(cls, std::move(w)).first->second;
}

SubgroupAsGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& s, std::string label) {
  SubgroupAsGroup out;
  out.embed = s;
  std::map<Elem, int> pos;
  for (std::size_t i = 0; i < s.size(); ++i) pos[s[i]] = static_cast<int>(i);
  const int k = static_cast<int>(s.size());
  std::vector<std::vector<Elem>> t(k, std::vector<Elem>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      auto it = pos.find(g.mul(s[a], s[b]));
      if (it == pos.end()) throw Error(ErrorKind::InvalidSubgroup, "element list is not closed under multiplication");
      t[a][b] = it->second;
    }
  out.group = std::make_shared<const FiniteGroup>(std::move(t), std::move(label));
  return out;
}

QuotientGroup quotient_group(const FiniteGroup& g, const Subgroup& n, std::string label) {
  if (!is_subgroup(g, n)) throw Error(ErrorKind::InvalidSubgroup, "quotient by a non-subgroup");
  std::vector<char> in(g.order(), 0);
  for (Elem x : n) in[x] = 1;
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y : n)
      if (!in[g.conj(x, y)]) throw Error(ErrorKind::NotNormal, "subgroup is not normal", std::to_string(x));
  QuotientGroup q;
  q.project.assign(g.order(), -1);
  for (Elem x = 0; x < g.order(); ++x) {
    if (q.project[x] >= 0) continue;
    const int id = static_cast<int>(q.labels.size());
    q.labels.push_back(x);
    for (Elem y : n) q.project[g.mul(x, y)] = id;
  }
  const int k = static_cast<int>(q.labels.size());
  std::vector<std::vector<Elem>> t(k, std::vector<Elem>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) t[a][b] = q.project[g.mul(q.labels[a], q.labels[b])];
  q.group = std::make_shared<const FiniteGroup>(std::move(t), std::move(label));
  return q;
}

// --------------------------------------------------------------------- GSet

GSet GSet::cosets(const SubgroupLattice& lat, int s) {
  const FiniteGroup& g = lat.group();
  GSet x;
  x.size = lat.num_cosets(s);
  x.action.assign(g.order(), std::vector<int>(x.size));
  for (Elem a = 0; a < g.order(); ++a)
    for (int p = 0; p < x.size; ++p) x.action[a][p] = lat.coset_index(s, g.mul(a, lat.coset_reps(s)[p]));
  for (Elem r : lat.coset_reps(s)) x.labels.push_back(std::to_string(r));
  return x;
}

GSet GSet::product(const GSet& a, const GSet& b) {
  GSet x;
  x.size = a.size * b.size;
  x.action.assign(a.action.size(), std::vector<int>(x.size));
  for (std::size_t g = 0; g < a.action.size(); ++g)
    for (int p = 0; p < a.size; ++p)
      for (int q = 0; q < b.size; ++q) x.action[g][p * b.size + q] = a.action[g][p] * b.size + b.action[g][q];
  return x;
}

bool GSet::is_action(const FiniteGroup& g) const {
  if (static_cast<int>(action.size()) != g.order()) return false;
  for (int p = 0; p < size; ++p)
    if (action[0][p] != p) return false;
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      for (int p = 0; p < size; ++p)
        if (action[g.mul(a, b)][p] != action[a][action[b][p]]) return false;
  return true;
}

std::vector<Orbit> decompose_orbits(const SubgroupLattice& lat, const GSet& x) {
  const FiniteGroup& g = lat.group();
  std::vector<Orbit> out;
  std::vector<char> seen(x.size, 0);
  for (int p0 = 0; p0 < x.size; ++p0) {
    if (seen[p0]) continue;
    Orbit o;
    o.transversal.assign(x.size, -1);
    std::vector<Elem> to_p0(x.size, -1);  // a with a . p0 = point
    Subgroup stab;
    for (Elem a = 0; a < g.order(); ++a) {
      const int q = x.action[a][p0];
      if (q == p0) stab.push_back(a);
      if (to_p0[q] < 0) {
        to_p0[q] = a;
        seen[q] = 1;
        o.points.push_back(q);
      }
    }
    std::sort(o.points.begin(), o.points.end());
    const int s = lat.index_of(stab);
    const Elem c = lat.conjugator(s);
    o.base = x.action[c][p0];
    o.cls = lat.class_of(s);
    o.stabilizer = lat.rep(o.cls);
    const Elem cinv = g.inv(c);
    for (int q : o.points) o.transversal[q] = g.mul(to_p0[q], cinv);
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<Elem> double_cosets(const SubgroupLattice& lat, int h, int k) {
  const FiniteGroup& g = lat.group();
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (Elem a : lat.subgroup(h))
      for (Elem b : lat.subgroup(k)) seen[g.mul(g.mul(a, x), b)] = 1;
  }
  return reps;
}

}  // namespace equihom
