#pragma once
// Brute-force ground truth on tiny leaf sets.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "retnet/bounds.hpp"
#include "retnet/canonical.hpp"
#include "retnet/enumerate.hpp"
#include "retnet/network.hpp"

namespace retnet {

// One bit per tree in EnumerateTrees(n, mode) order.
using TreeMask = std::vector<std::uint64_t>;

// Enumerated networks of one (n, r, mode), each with the trees it displays.
struct CatalogLevel {
  std::vector<Network> networks;
  std::vector<TreeMask> displayed;
};

// Lazily built, shared across queries with the same leaf count and mode.
class NetworkCatalog {
 public:
  NetworkCatalog(int n, Mode mode, EnumerateOptions options = {});

  int leaf_count() const { return n_; }
  Mode mode() const { return mode_; }
  const std::vector<PhyloTree>& trees() const { return trees_; }
  // Index of `tree` in trees(); Error(kLeafsetMismatch / kModeMismatch) if foreign.
  int IndexOf(const PhyloTree& tree) const;
  TreeMask MaskOf(const TreeSet& set) const;

  // Throws Error(kBudgetExceeded) if (n, r) is outside the budget.
  const CatalogLevel& Level(int r);

 private:
  int n_;
  Mode mode_;
  EnumerateOptions options_;
  std::vector<PhyloTree> trees_;
  std::map<CanonicalCode, int> index_;
  std::map<int, std::unique_ptr<CatalogLevel>> levels_;
  std::mutex mutex_;
};

bool Covers(const TreeMask& have, const TreeMask& want);

struct MinRetResult {
  int r = 0;
  Network witness;
};

struct SolverOptions {
  EnumerateOptions enumerate;
  std::optional<int> r_cap;  // default (t - 1) n
};

// Least r such that some network with r reticulations displays every member;
// the witness is the first such network in canonical order.
MinRetResult MinReticulations(const TreeSet& trees, const SolverOptions& options = {});
MinRetResult MinReticulations(const TreeSet& trees, NetworkCatalog& catalog, std::optional<int> r_cap = {});

struct WorstCaseOptions {
  // Exhaustive by default for n <= 4 rooted / n <= 5 unrooted.
  std::optional<bool> exhaustive;
  std::uint64_t samples = 200;
  std::uint64_t seed = 1;
  EnumerateOptions enumerate;
};

struct WorstCaseResult {
  int r = 0;
  std::vector<int> witness;  // tree indices into EnumerateTrees(n, mode)
  std::uint64_t sets_examined = 0;
  bool exhaustive = false;
};

WorstCaseResult WorstCaseR(int n, int t, Mode mode, const WorstCaseOptions& options = {});

// Enumeration-vs-formula checks for 1 <= n <= n_max, 0 <= r <= r_max.
std::vector<BoundReport> VerifyCounts(int n_max, int r_max, Mode mode, const EnumerateOptions& options = {});

}  // namespace retnet
