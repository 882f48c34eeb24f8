#pragma once
// Independent reference implementations used only by the tests. None of these
// call into the canonical, enumerate or display modules.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "retnet/interval.hpp"
#include "retnet/network.hpp"

namespace oracle {

using retnet::BigInt;
using retnet::Mode;
using retnet::Network;

// k (k-2) (k-4) ... by plain multiplication.
BigInt DoubleFactorialLoop(long k);

// Label-preserving isomorphism by backtracking over node bijections. With
// edge labels, the bijection must also preserve them.
bool Isomorphic(const Network& a, const Network& b, const std::vector<int>* la = nullptr,
                const std::vector<int>* lb = nullptr);
std::uint64_t Automorphisms(const Network& net, const std::vector<int>* labels = nullptr);

// Kirchhoff: any cofactor of the Laplacian, via fraction-free elimination.
BigInt SpanningTreeCount(const Network& net);

// Every edge on a simple path between two distinct leaves, by path search.
bool LeafConnecting(const Network& net);

// Rooted trees as nested splits of the label set; unrooted trees by hanging
// leaf m at the root of a rooted tree on [m - 1].
std::vector<Network> AllTrees(int m, Mode mode);

// Clusters (rooted) or splits normalized to exclude leaf 1 (unrooted) of a
// tree-shaped graph; bits over labels 1..n.
std::set<std::uint64_t> Clusters(const Network& tree);

// Search over edge subsets of `net` for a subdivision of `tree`.
bool DisplaysBySubgraph(const Network& net, const Network& tree);

// Uniform-ish random tree by random leaf insertion.
Network RandomTree(int n, Mode mode, std::mt19937_64& rng);

}  // namespace oracle
