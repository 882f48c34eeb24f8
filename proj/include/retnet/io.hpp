#pragma once

// Text formats:
//   trees            Newick with decimal leaf labels, e.g. "((1,2),3);"
//   rooted networks  extended Newick; a reticulation is written once as
//                    "(child)#Hk" and elsewhere as the bare reference "#Hk"
//   unrooted nets    JSON {"nodes":[...],"edges":[[u,v],...],"leaves":{"1":node,...}}
//   edge labels      JSON sidecar {"edge_labels":[...]} listing one label per
//                    edge, in the order the edges appear in the main text
//
// Serializers are canonical: isomorphic inputs produce identical bytes, and
// Write(Read(s)) == s for every s produced by Write.

#include <string>
#include <string_view>
#include <vector>

#include "retnet/network.hpp"

namespace retnet::io {

struct Serialized {
  std::string text;
  // edge_order[i] is the edge id written at position i.
  std::vector<int> edge_order;
};

// Newick / extended Newick. In unrooted mode the outermost node is suppressed
// when it has degree 2.
Network ParseNewick(std::string_view text, Mode mode);
PhyloTree ParseTree(std::string_view text, Mode mode);
Serialized WriteNewick(const Network& net);
std::string WriteTree(const PhyloTree& tree);

Network ParseJson(std::string_view text, Mode mode = Mode::kUnrooted);
Serialized WriteJson(const Network& net);

// Picks JSON for unrooted networks with reticulations, Newick otherwise.
Serialized Write(const Network& net);
// Dispatches on the first non-space character ('{' means JSON).
Network Read(std::string_view text, Mode mode);

std::string WriteEdgeLabels(const Serialized& layout, const ReticulationLabelling& labels);
// Edge labels given in file order, mapped back onto `net`'s edge ids where
// `net` was produced by Read() of the same main text.
ReticulationLabelling ParseEdgeLabels(std::string_view json, int edge_count);

std::string ReadFile(const std::string& path);

}  // namespace retnet::io
