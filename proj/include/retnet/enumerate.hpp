#pragma once

#include <vector>

#include "retnet/network.hpp"

namespace retnet {

// Caps on n + 2r for exhaustive network generation. RETNET_BUDGET overrides
// both ("14") or either ("rooted=14,unrooted=11").
struct Budget {
  int rooted = 12;
  int unrooted = 10;

  static Budget FromEnv();
  int For(Mode mode) const { return mode == Mode::kRooted ? rooted : unrooted; }
  void Check(int n, int r, Mode mode) const;
};

struct EnumerateOptions {
  Budget budget = Budget::FromEnv();
  // Unrooted only: emit leaf-connecting networks (the counted class).
  bool leaf_connecting_only = true;
  int jobs = 1;
};

// All trees on leaf set [n], one per isomorphism class, in canonical-code
// order: (2n-3)!! rooted, (2n-5)!! unrooted (one tree for n <= 2).
std::vector<PhyloTree> EnumerateTrees(int n, Mode mode);

// All binary networks with n leaves and r reticulations up to isomorphism,
// in canonical-code order. Candidates are grown one reticulation edge at a
// time from the trees and deduplicated by canonical code.
std::vector<Network> EnumerateNetworks(int n, int r, Mode mode, const EnumerateOptions& options = {});

// Rooted: one switching per choice of parent edge at each reticulation
// (2^r). Unrooted: one per spanning tree.
std::vector<Switching> EnumerateSwitchings(const Network& net);

// Lexicographically smallest switching under canonical edge order, with
// "labelled" ordered before "unlabelled".
Switching FixedSwitching(const Network& net);

// The r! extensions of `sw` numbering its unlabelled edges 1..r.
// Throws Error(kSwitchingMismatch) if `sw` is not a switching of `net`.
std::vector<ReticulationLabelling> ReticulationLabellings(const Network& net, const Switching& sw);

}  // namespace retnet
