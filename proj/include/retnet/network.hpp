#pragma once

// Value types for leaf-labelled phylogenetic trees and binary networks.
//
// Every graph is stored as a flat edge list over contiguous node ids 0..V-1
// together with a per-node leaf label (0 for unlabelled nodes). In rooted mode
// an edge (u, v) points from parent u to child v; in unrooted mode the pair is
// unordered. Node ids carry no meaning: equality of graphs is decided by the
// canonical module, never by comparing ids.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace retnet {

enum class Mode : std::uint8_t { kRooted, kUnrooted };

std::string_view ModeName(Mode mode);
Mode ParseMode(std::string_view text);

struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Mutable graph used while building or transforming networks. Nodes may be
// marked dead and are dropped by Compact().
struct Draft {
  Mode mode = Mode::kRooted;
  std::vector<Edge> edges;
  std::vector<int> labels;  // per node; 0 = unlabelled

  int AddNode(int label = 0) {
    labels.push_back(label);
    return static_cast<int>(labels.size()) - 1;
  }
  int node_count() const { return static_cast<int>(labels.size()); }
};

using ValidationReport = std::vector<std::string>;

class Network {
 public:
  Network() = default;
  // Builds the adjacency structure; does not validate (see Validate()).
  Network(Mode mode, int node_count, std::vector<Edge> edges, std::vector<int> labels);
  explicit Network(const Draft& draft);

  Mode mode() const { return mode_; }
  int node_count() const { return static_cast<int>(labels_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const int> labels() const { return labels_; }
  int label(int v) const { return labels_[static_cast<std::size_t>(v)]; }

  // Number of labelled nodes.
  int leaf_count() const { return leaf_count_; }
  // Node carrying `label`, or -1.
  int NodeOfLabel(int label) const;

  // Edge ids leaving / entering v (rooted), or all incident edges (unrooted,
  // reported by Incident()).
  std::span<const int> OutEdges(int v) const { return out_[static_cast<std::size_t>(v)]; }
  std::span<const int> InEdges(int v) const { return in_[static_cast<std::size_t>(v)]; }
  std::span<const int> Incident(int v) const { return incident_[static_cast<std::size_t>(v)]; }
  int Degree(int v) const { return static_cast<int>(Incident(v).size()); }
  int Other(int e, int v) const {
    const Edge& ed = edge(e);
    return ed.u == v ? ed.v : ed.u;
  }

  // Unique in-degree-0 node in rooted mode (first one if several), -1 if none.
  int Root() const;

  // Rooted: number of nodes with in-degree >= 2. Unrooted: |E| - |V| + 1.
  int ReticulationCount() const;
  bool IsTree() const { return ReticulationCount() == 0 && edge_count() + 1 == node_count(); }

  Draft ToDraft() const;

 private:
  Mode mode_ = Mode::kRooted;
  std::vector<Edge> edges_;
  std::vector<int> labels_;
  std::vector<std::vector<int>> out_, in_, incident_;
  int leaf_count_ = 0;
};

// A network without reticulations. The constructor enforces the tree
// invariants and throws Error(kInvalid) otherwise.
class PhyloTree {
 public:
  explicit PhyloTree(Network net);

  const Network& network() const { return net_; }
  Mode mode() const { return net_.mode(); }
  int leaf_count() const { return net_.leaf_count(); }

 private:
  Network net_;
};

// Per-edge on/off choice. on[e] == true means the edge carries label 0.
struct Switching {
  std::vector<bool> on;

  friend bool operator==(const Switching&, const Switching&) = default;
};

// Per-edge label in {0} u [r]; the nonzero labels are a bijection onto [r].
struct ReticulationLabelling {
  std::vector<int> labels;

  Switching Restrict() const;
  friend bool operator==(const ReticulationLabelling&, const ReticulationLabelling&) = default;
};

// A set of pairwise non-isomorphic trees sharing mode and leaf set [n].
// The constructor checks membership invariants and drops nothing: duplicate
// members raise Error(kInvalid).
class TreeSet {
 public:
  explicit TreeSet(std::vector<PhyloTree> trees);

  const std::vector<PhyloTree>& trees() const { return trees_; }
  std::size_t size() const { return trees_.size(); }
  Mode mode() const { return trees_.front().mode(); }
  int leaf_count() const { return trees_.front().leaf_count(); }

 private:
  std::vector<PhyloTree> trees_;
};

// --- validation ----------------------------------------------------------

// Rooted: binary network invariants; unrooted: connected simple binary graph.
// Leaf labels must be a bijection onto [n]. Never throws.
ValidationReport Validate(const Network& net);
ValidationReport ValidateTree(const Network& net);
ValidationReport Validate(const Network& net, const Switching& sw);
ValidationReport Validate(const Network& net, const ReticulationLabelling& lab);

int ReticulationCount(const Network& net);

// True iff every edge lies on a simple path between two distinct leaves.
bool IsLeafConnecting(const Network& net);

// Reduces a graph-theoretic tree with labelled leaves to a phylogenetic tree:
// unlabelled sinks (rooted) / degree-1 nodes (unrooted) are pruned, an
// out-degree-1 unlabelled root is dropped, and degree-2 chains are contracted.
// Throws Error(kNotATree) when the input contains a cycle or is disconnected.
PhyloTree Suppress(const Draft& graph);

// Subdivides edge `e` of the tree with a fresh unlabelled node.
Draft SubdivideEdge(const PhyloTree& tree, int e);

// Subnetwork on the union of the given edge sets, with degree-2 nodes
// suppressed. Parallel edges produced by suppression are collapsed to one
// copy, which keeps every embedding and lowers the reticulation number.
Network RestrictToEmbeddings(const Network& net, std::span<const std::vector<int>> embeddings);

// Relabels nodes so that ids follow `order` (order[i] = old id placed at i).
Network Permute(const Network& net, std::span<const int> new_id_of_old);

}  // namespace retnet
