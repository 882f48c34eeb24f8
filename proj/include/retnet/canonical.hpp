#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "retnet/network.hpp"

namespace retnet {

// Opaque isomorphism invariant: two graphs (with optional edge labels) have
// equal codes iff they are isomorphic as labelled graphs. The first byte is a
// format version.
struct CanonicalCode {
  static constexpr std::uint8_t kVersion = 1;

  std::string bytes;

  std::string Hex() const;
  static CanonicalCode FromHex(std::string_view hex);

  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
};

struct CanonicalForm {
  CanonicalCode code;
  // position[v] is the index of node v in the canonical ordering.
  std::vector<int> position;
  // Number of labelled-graph automorphisms (each search leaf reaching the
  // canonical graph is one automorphism).
  std::uint64_t automorphisms = 0;
};

CanonicalCode CanonicalCodeOf(const Network& net, const ReticulationLabelling* edge_labels = nullptr);
CanonicalCode CanonicalCodeOf(const PhyloTree& tree);

// Full individualization-refinement run, including the canonical ordering.
CanonicalForm Canonicalize(const Network& net, const ReticulationLabelling* edge_labels = nullptr);

// Throws Error(kModeMismatch) if the modes differ.
bool AreIsomorphic(const Network& a, const Network& b);
bool AreIsomorphic(const PhyloTree& a, const PhyloTree& b);

std::uint64_t AutomorphismCount(const Network& net, const ReticulationLabelling* edge_labels = nullptr);

// Canonical edge order: edge ids sorted by their endpoints' canonical
// positions (rooted: (parent, child); unrooted: (min, max)).
std::vector<int> CanonicalEdgeOrder(const Network& net, const CanonicalForm& form);

}  // namespace retnet
