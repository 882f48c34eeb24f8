#include "retnet/solver.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <set>
#include <thread>

#include "retnet/codec.hpp"
#include "retnet/display.hpp"
#include "retnet/error.hpp"

namespace retnet {

namespace {

std::size_t Words(std::size_t bits) { return (bits + 63) / 64; }

void SetBit(TreeMask& mask, int i) { mask[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64); }

template <typename Fn>
void ParallelFor(std::size_t count, int jobs, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

bool Covers(const TreeMask& have, const TreeMask& want) {
  for (std::size_t i = 0; i < want.size(); ++i) {
    if ((have[i] & want[i]) != want[i]) return false;
  }
  return true;
}

NetworkCatalog::NetworkCatalog(int n, Mode mode, EnumerateOptions options)
    : n_(n), mode_(mode), options_(options), trees_(EnumerateTrees(n, mode)) {
  for (std::size_t i = 0; i < trees_.size(); ++i) index_.emplace(CanonicalCodeOf(trees_[i]), static_cast<int>(i));
}

int NetworkCatalog::IndexOf(const PhyloTree& tree) const {
  if (tree.mode() != mode_) throw Error(ErrorCode::kModeMismatch, "tree mode differs from the catalog");
  if (tree.leaf_count() != n_) throw Error(ErrorCode::kLeafsetMismatch, "tree leaf count differs from the catalog");
  return index_.at(CanonicalCodeOf(tree));
}

TreeMask NetworkCatalog::MaskOf(const TreeSet& set) const {
  TreeMask mask(Words(trees_.size()), 0);
  for (const auto& tree : set.trees()) SetBit(mask, IndexOf(tree));
  return mask;
}

const CatalogLevel& NetworkCatalog::Level(int r) {
  std::lock_guard lock(mutex_);
  if (auto it = levels_.find(r); it != levels_.end()) return *it->second;
  auto level = std::make_unique<CatalogLevel>();
  level->networks = EnumerateNetworks(n_, r, mode_, options_);
  level->displayed.assign(level->networks.size(), TreeMask(Words(trees_.size()), 0));
  DisplayOptions display;
  display.switching_limit = UINT64_MAX;
  ParallelFor(level->networks.size(), options_.jobs, [&](std::size_t i) {
    for (const auto& tree : DisplayedTrees(level->networks[i], display)) {
      SetBit(level->displayed[i], index_.at(CanonicalCodeOf(tree)));
    }
  });
  return *levels_.emplace(r, std::move(level)).first->second;
}

MinRetResult MinReticulations(const TreeSet& trees, NetworkCatalog& catalog, std::optional<int> r_cap) {
  if (trees.size() == 1) return {0, trees.trees().front().network()};
  const int cap = r_cap.value_or(static_cast<int>(trees.size() - 1) * trees.leaf_count());
  const TreeMask want = catalog.MaskOf(trees);
  for (int r = 0; r <= cap; ++r) {
    const CatalogLevel& level = catalog.Level(r);
    for (std::size_t i = 0; i < level.networks.size(); ++i) {
      if (Covers(level.displayed[i], want)) return {r, level.networks[i]};
    }
  }
  throw Error(ErrorCode::kBudgetExceeded, "no displaying network with at most " + std::to_string(cap) + " reticulations");
}

MinRetResult MinReticulations(const TreeSet& trees, const SolverOptions& options) {
  if (trees.size() == 1) return {0, trees.trees().front().network()};
  NetworkCatalog catalog(trees.leaf_count(), trees.mode(), options.enumerate);
  return MinReticulations(trees, catalog, options.r_cap);
}

namespace {

// Smallest r whose level covers `want`, scanning levels from 0 upward.
int MinOverLevels(NetworkCatalog& catalog, const TreeMask& want, int cap) {
  for (int r = 0; r <= cap; ++r) {
    const CatalogLevel& level = catalog.Level(r);
    for (const auto& have : level.displayed) {
      if (Covers(have, want)) return r;
    }
  }
  throw Error(ErrorCode::kBudgetExceeded, "no displaying network with at most " + std::to_string(cap) + " reticulations");
}

bool NextCombination(std::vector<int>& c, int m) {
  const int t = static_cast<int>(c.size());
  int i = t - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == m - t + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < t; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

}  // namespace

WorstCaseResult WorstCaseR(int n, int t, Mode mode, const WorstCaseOptions& options) {
  if (t < 1) throw Error(ErrorCode::kDomain, "t must be at least 1");
  NetworkCatalog catalog(n, mode, options.enumerate);
  const int m = static_cast<int>(catalog.trees().size());
  if (t > m) throw Error(ErrorCode::kTTooLarge, "t exceeds the number of trees");
  WorstCaseResult out;
  out.exhaustive = options.exhaustive.value_or(mode == Mode::kRooted ? n <= 4 : n <= 5);
  const int cap = (t - 1) * n;
  auto consider = [&](const std::vector<int>& set) {
    TreeMask want(Words(static_cast<std::size_t>(m)), 0);
    for (int i : set) SetBit(want, i);
    const int r = t == 1 ? 0 : MinOverLevels(catalog, want, cap);
    ++out.sets_examined;
    if (out.witness.empty() || r > out.r) {
      out.r = r;
      out.witness = set;
    }
  };
  if (out.exhaustive) {
    std::vector<int> set(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) set[static_cast<std::size_t>(i)] = i;
    do {
      consider(set);
    } while (NextCombination(set, m));
    return out;
  }
  std::mt19937_64 rng(options.seed);
  std::vector<int> pool(static_cast<std::size_t>(m));
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    for (int i = 0; i < m; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < t; ++i) {
      std::uniform_int_distribution<int> pick(i, m - 1);
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
    }
    std::vector<int> set(pool.begin(), pool.begin() + t);
    std::sort(set.begin(), set.end());
    consider(set);
  }
  return out;
}

std::vector<BoundReport> VerifyCounts(int n_max, int r_max, Mode mode, const EnumerateOptions& options) {
  std::vector<BoundReport> out;
  const std::string suffix = "_" + std::string(ModeName(mode));
  const bool rooted = mode == Mode::kRooted;
  for (int n = 2; n <= n_max; ++n) {
    for (int r = 0; r <= r_max; ++r) {
      const std::vector<Network> nets = EnumerateNetworks(n, r, mode, options);
      const BigInt count(nets.size());
      const std::vector<std::pair<std::string, long>> params = {{"n", n}, {"r", r}};

      const BigInt chain_rhs = DoubleFactorial(2L * (n + 2 * r) - (rooted ? 3 : 5));
      const BigInt chain_lhs = count * Factorial(static_cast<unsigned long>(r));
      out.push_back({"chain" + suffix, params, chain_lhs.str(), "<=", chain_rhs.str(), chain_lhs <= chain_rhs});
      if (r >= 1) {
        const NetworkCountBound b = NetworkCountBoundOf(n, r, mode);
        out.push_back({"network_count" + suffix, params, count.str(), "<=", ToString(b.tight), Rational(count) <= b.tight});
        if (b.relaxed) {
          out.push_back({"network_count_relaxed" + suffix, params, ToString(b.tight), "<=", b.relaxed->str(),
                         b.tight <= Rational(*b.relaxed)});
        }
      }

      // Displayed trees per network against 2^r / C(n+3r-3, r).
      const BigInt per_net = rooted ? Pow2(static_cast<unsigned long>(r))
                                    : (n + 3 * r - 3 >= 0 ? Binomial(BigInt(n + 3 * r - 3), static_cast<unsigned long>(r))
                                                          : BigInt(1));
      std::vector<std::size_t> displayed(nets.size());
      std::vector<std::size_t> switchings(nets.size());
      DisplayOptions display;
      display.switching_limit = UINT64_MAX;
      ParallelFor(nets.size(), options.jobs, [&](std::size_t i) {
        displayed[i] = DisplayedTrees(nets[i], display).size();
        switchings[i] = EnumerateSwitchings(nets[i]).size();
      });
      const std::size_t max_displayed = displayed.empty() ? 0 : *std::max_element(displayed.begin(), displayed.end());
      out.push_back({"displayed_trees" + suffix, params, std::to_string(max_displayed), "<=", per_net.str(),
                     BigInt(max_displayed) <= per_net});
      if (!rooted) {
        const std::size_t max_sw = switchings.empty() ? 0 : *std::max_element(switchings.begin(), switchings.end());
        out.push_back({"spanning_trees" + suffix, params, std::to_string(max_sw), "<=", per_net.str(),
                       BigInt(max_sw) <= per_net});
        long bad_edges = 0;
        for (const auto& net : nets) bad_edges += net.edge_count() != 2 * n + 3 * r - 3 ? 1 : 0;
        out.push_back({"edge_count" + suffix, params, std::to_string(bad_edges), "==", "0", bad_edges == 0});
      }

      // Codec: tau is injective on (network, fixed switching, labelling) and decodes back.
      std::vector<std::vector<CanonicalCode>> codes(nets.size());
      std::vector<long> failures(nets.size(), 0);
      std::vector<std::uint64_t> max_aut(nets.size(), 0);
      ParallelFor(nets.size(), options.jobs, [&](std::size_t i) {
        const Network& net = nets[i];
        if (!rooted && r > 0 && !IsLeafConnecting(net)) return;
        const CanonicalCode original = CanonicalCodeOf(net);
        for (const auto& lab : ReticulationLabellings(net, FixedSwitching(net))) {
          const PhyloTree tree = EncodeTau(net, lab);
          codes[i].push_back(CanonicalCodeOf(tree));
          const DecodeResult back = DecodeTau(tree, n, r);
          if (!back.ok() || CanonicalCodeOf(back.value->network, &back.value->labelling) != CanonicalCodeOf(net, &lab) ||
              CanonicalCodeOf(back.value->network) != original) {
            ++failures[i];
          }
          max_aut[i] = std::max(max_aut[i], AutomorphismCount(net, &lab));
        }
      });
      std::set<CanonicalCode> distinct;
      std::size_t total = 0;
      for (const auto& list : codes) {
        total += list.size();
        distinct.insert(list.begin(), list.end());
      }
      long failed = 0;
      for (long f : failures) failed += f;
      out.push_back({"codec_injective" + suffix, params, std::to_string(distinct.size()), "==", std::to_string(total),
                     distinct.size() == total});
      out.push_back({"codec_roundtrip" + suffix, params, std::to_string(failed), "==", "0", failed == 0});
      const std::uint64_t worst_aut = max_aut.empty() ? 1 : std::max<std::uint64_t>(1, *std::max_element(max_aut.begin(), max_aut.end()));
      out.push_back({"labelled_automorphisms" + suffix, params, std::to_string(worst_aut), "==", "1", worst_aut == 1});
    }
  }
  return out;
}

}  // namespace retnet
