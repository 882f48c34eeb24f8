#include "retnet/codec.hpp"

#include <algorithm>

#include "retnet/error.hpp"

namespace retnet {

PhyloTree EncodeTau(const Network& net, const ReticulationLabelling& labelling) {
  ValidationReport report = Validate(net);
  for (const auto& issue : Validate(net, labelling)) report.push_back(issue);
  if (net.mode() == Mode::kUnrooted && net.ReticulationCount() > 0 && !IsLeafConnecting(net)) {
    report.push_back("network is not leaf-connecting");
  }
  if (!report.empty()) throw Error(ErrorCode::kInvalidLabelling, report.front());

  const int n = net.leaf_count();
  Draft d{net.mode(), {}, std::vector<int>(net.labels().begin(), net.labels().end())};
  for (int e = 0; e < net.edge_count(); ++e) {
    const int h = labelling.labels[static_cast<std::size_t>(e)];
    const Edge& ed = net.edge(e);
    if (h == 0) {
      d.edges.push_back(ed);
      continue;
    }
    const int z = d.AddNode(n + 2 * h - 1);
    const int z2 = d.AddNode(n + 2 * h);
    d.edges.push_back({ed.u, z});
    d.edges.push_back({ed.v, z2});
  }
  return PhyloTree(Network(d));
}

DecodeResult DecodeTau(const PhyloTree& tree, int n, int r) {
  const Network& t = tree.network();
  if (n < 1 || r < 0 || t.leaf_count() != n + 2 * r) {
    throw Error(ErrorCode::kInvalid, "tree has " + std::to_string(t.leaf_count()) + " leaves, expected n + 2r = " +
                                         std::to_string(n + 2 * r));
  }
  const bool rooted = t.mode() == Mode::kRooted;
  auto attach = [&](int leaf) { return rooted ? t.edge(t.InEdges(leaf)[0]).u : t.Other(t.Incident(leaf)[0], leaf); };

  std::vector<char> drop(static_cast<std::size_t>(t.node_count()), 0);
  std::vector<Edge> added;
  for (int h = 1; h <= r; ++h) {
    const int z = t.NodeOfLabel(n + 2 * h - 1);
    const int z2 = t.NodeOfLabel(n + 2 * h);
    drop[static_cast<std::size_t>(z)] = drop[static_cast<std::size_t>(z2)] = 1;
    added.push_back({attach(z), attach(z2)});
  }

  std::vector<int> id(static_cast<std::size_t>(t.node_count()), -1);
  Draft d{t.mode(), {}, {}};
  for (int v = 0; v < t.node_count(); ++v) {
    if (!drop[static_cast<std::size_t>(v)]) id[static_cast<std::size_t>(v)] = d.AddNode(t.label(v));
  }
  ReticulationLabelling labelling;
  for (const Edge& e : t.edges()) {
    if (drop[static_cast<std::size_t>(e.u)] || drop[static_cast<std::size_t>(e.v)]) continue;
    d.edges.push_back({id[static_cast<std::size_t>(e.u)], id[static_cast<std::size_t>(e.v)]});
    labelling.labels.push_back(0);
  }
  DecodeResult result;
  for (int h = 1; h <= r; ++h) {
    const Edge& e = added[static_cast<std::size_t>(h - 1)];
    if (e.u == e.v) {
      result.violation = "pair " + std::to_string(h) + " hangs from one node (self-loop)";
      return result;
    }
    d.edges.push_back({id[static_cast<std::size_t>(e.u)], id[static_cast<std::size_t>(e.v)]});
    labelling.labels.push_back(h);
  }

  Network net(d);
  ValidationReport report = Validate(net);
  if (report.empty()) report = Validate(net, labelling);
  if (report.empty() && !rooted && r > 0 && !IsLeafConnecting(net)) report.push_back("not leaf-connecting");
  if (!report.empty()) {
    result.violation = report.front();
    return result;
  }
  result.value = LabelledNetwork{std::move(net), std::move(labelling)};
  return result;
}

}  // namespace retnet
