#pragma once

#include <optional>
#include <string>

#include "retnet/network.hpp"

namespace retnet {

struct LabelledNetwork {
  Network network;
  ReticulationLabelling labelling;
};

// Replaces every edge (u, v) with label h != 0 by a pendant leaf under u
// labelled n + 2h - 1 and a pendant leaf under v labelled n + 2h. The edge is
// taken as stored, so in unrooted mode the first endpoint receives the odd
// label. Throws Error(kInvalidLabelling) on an invalid (network, labelling).
PhyloTree EncodeTau(const Network& net, const ReticulationLabelling& labelling);

// Outcome of inverting EncodeTau. Trees outside the image come back with
// `value` empty and the first violated network invariant in `violation`.
struct DecodeResult {
  std::optional<LabelledNetwork> value;
  std::string violation;

  bool ok() const { return value.has_value(); }
};

// Requires a tree on leaf set [n + 2r]; throws Error(kInvalid) otherwise.
DecodeResult DecodeTau(const PhyloTree& tree, int n, int r);

}  // namespace retnet
