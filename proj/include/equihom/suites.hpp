#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "equihom/io.hpp"

namespace equihom {

/// Checked-in corpus settings (data/corpus.json).
struct CorpusConfig {
  std::map<std::string, std::uint64_t> seeds;  // per suite
  int random_functors = 20;                    // per group, yoneda suite
  int adjunction_functors = 4;                 // per (group, subgroup), yoneda suite
  int corpus_random = 2;                       // random members of the coefficient corpus
  int homalg_length = 3;
  std::uint64_t seed(const std::string& suite) const;
  static CorpusConfig load(const std::string& path);
  static CorpusConfig defaults();
};

struct NamedGroup {
  std::string name;
  std::shared_ptr<const FiniteGroup> group;
};

struct SuiteOptions {
  CorpusConfig config = CorpusConfig::defaults();
  std::optional<std::uint64_t> seed;  // overrides every corpus seed
  std::vector<NamedGroup> groups;     // empty: the suite's own corpus
  std::vector<std::string> examples;  // duality / classical scope
  std::vector<std::string> coefficients;
  int threads = 1;
};

struct CaseResult {
  std::string label;
  bool ok = true;
  std::string detail;  // first violation, empty when ok
  Json data;           // optional structured payload
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;
  bool ok() const;
  Json to_json() const;
  std::string to_table() const;
};

/// dimension-axiom, yoneda, wirthmuller, fixed-sets, products, duality,
/// functoriality, homalg, classical.
std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt);

/// The ten corpus groups (trivial ... z12) in a fixed order.
std::vector<NamedGroup> corpus_groups();
/// Named coefficient functors for a group: burnside, constant_Z, zero and
/// `randoms` seeded random functors, in the requested variance.
std::vector<MackeyPtr> coefficient_corpus(std::shared_ptr<const OrbitCategory> cat, Variance v, std::uint64_t seed,
                                          int randoms);
/// A coefficient by name: burnside, constant_Z, zero, free:<class>, random:<seed>.
MackeyPtr named_coefficient(std::shared_ptr<const OrbitCategory> cat, const std::string& name, Variance v);

/// EQUIHOM_THREADS, defaulting to the hardware concurrency.
int default_threads();
/// Runs fn(0) ... fn(n - 1) on up to `threads` workers; results keep index order.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace equihom
