#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "retnet/network.hpp"

namespace retnet {

// The tree certified by one switching: keep the labelled edges, prune
// unlabelled dead ends, suppress.
PhyloTree DisplayedTree(const Network& net, const Switching& sw);

// Edge ids of the embedding certified by `sw` (the pruned switching tree,
// before suppression).
std::vector<int> Embedding(const Network& net, const Switching& sw);

struct DisplayOptions {
  // Largest number of switchings examined before Error(kBudgetExceeded).
  std::uint64_t switching_limit = std::uint64_t{1} << 20;
};

// Distinct displayed trees, in canonical-code order.
std::vector<PhyloTree> DisplayedTrees(const Network& net, const DisplayOptions& options = {});

struct DisplayResult {
  bool displayed = false;
  std::optional<Switching> witness;
};

// Errors: kModeMismatch, kLeafsetMismatch.
DisplayResult Displays(const Network& net, const PhyloTree& tree, const DisplayOptions& options = {});

// Disjoint union of the trees under a caterpillar cap (tree i hangs at depth
// i), with every leaf label merged through a chain of t - 1 reticulations in
// tree order. Has (t - 1) n reticulations.
Network TrivialNetwork(const TreeSet& trees);

// For each member i, a switching of TrivialNetwork(trees) whose displayed
// tree is member i.
std::vector<Switching> TrivialNetworkSelectors(const TreeSet& trees);

// Binomial coefficient for small arguments (spanning-tree bound).
std::uint64_t SmallBinomial(int n, int k);

}  // namespace retnet
