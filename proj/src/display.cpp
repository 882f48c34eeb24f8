#include "retnet/display.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "retnet/canonical.hpp"
#include "retnet/enumerate.hpp"
#include "retnet/error.hpp"

namespace retnet {

std::uint64_t SmallBinomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc);
}

namespace {

Draft SwitchedDraft(const Network& net, const Switching& sw) {
  Draft d{net.mode(), {}, std::vector<int>(net.labels().begin(), net.labels().end())};
  for (int e = 0; e < net.edge_count(); ++e) {
    if (sw.on[static_cast<std::size_t>(e)]) d.edges.push_back(net.edge(e));
  }
  return d;
}

std::uint64_t SwitchingCountBound(const Network& net) {
  const int r = net.ReticulationCount();
  if (net.mode() == Mode::kRooted) return r >= 63 ? UINT64_MAX : std::uint64_t{1} << r;
  int inner = 0;
  for (const Edge& e : net.edges()) inner += net.label(e.u) == 0 && net.label(e.v) == 0 ? 1 : 0;
  return SmallBinomial(inner, r);
}

void CheckBudget(const Network& net, const DisplayOptions& options) {
  if (SwitchingCountBound(net) > options.switching_limit) {
    throw Error(ErrorCode::kBudgetExceeded, "more than " + std::to_string(options.switching_limit) + " switchings");
  }
}

}  // namespace

PhyloTree DisplayedTree(const Network& net, const Switching& sw) {
  if (!Validate(net, sw).empty()) throw Error(ErrorCode::kSwitchingMismatch, "switching does not belong to the network");
  return Suppress(SwitchedDraft(net, sw));
}

std::vector<int> Embedding(const Network& net, const Switching& sw) {
  if (!Validate(net, sw).empty()) throw Error(ErrorCode::kSwitchingMismatch, "switching does not belong to the network");
  const bool rooted = net.mode() == Mode::kRooted;
  std::vector<char> keep(sw.on.begin(), sw.on.end());
  std::vector<int> out_deg(static_cast<std::size_t>(net.node_count()), 0);
  std::vector<int> in_deg(static_cast<std::size_t>(net.node_count()), 0);
  for (int e = 0; e < net.edge_count(); ++e) {
    if (!keep[static_cast<std::size_t>(e)]) continue;
    ++out_deg[static_cast<std::size_t>(net.edge(e).u)];
    ++(rooted ? in_deg : out_deg)[static_cast<std::size_t>(net.edge(e).v)];
  }
  auto prunable = [&](int v) {
    if (net.label(v) != 0) return false;
    if (rooted) return out_deg[static_cast<std::size_t>(v)] == 0 ||
                       (in_deg[static_cast<std::size_t>(v)] == 0 && out_deg[static_cast<std::size_t>(v)] == 1);
    return out_deg[static_cast<std::size_t>(v)] == 1;
  };
  std::deque<int> queue;
  for (int v = 0; v < net.node_count(); ++v) queue.push_back(v);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (!prunable(v)) continue;
    for (int e : net.Incident(v)) {
      if (!keep[static_cast<std::size_t>(e)]) continue;
      keep[static_cast<std::size_t>(e)] = 0;
      const int w = net.Other(e, v);
      if (rooted) {
        if (net.edge(e).u == v) {
          --out_deg[static_cast<std::size_t>(v)];
          --in_deg[static_cast<std::size_t>(w)];
        } else {
          --out_deg[static_cast<std::size_t>(w)];
          --in_deg[static_cast<std::size_t>(v)];
        }
      } else {
        --out_deg[static_cast<std::size_t>(v)];
        --out_deg[static_cast<std::size_t>(w)];
      }
      queue.push_back(w);
    }
  }
  std::vector<int> edges;
  for (int e = 0; e < net.edge_count(); ++e) {
    if (keep[static_cast<std::size_t>(e)]) edges.push_back(e);
  }
  return edges;
}

std::vector<PhyloTree> DisplayedTrees(const Network& net, const DisplayOptions& options) {
  CheckBudget(net, options);
  std::map<CanonicalCode, PhyloTree> by_code;
  for (const auto& sw : EnumerateSwitchings(net)) {
    PhyloTree tree = Suppress(SwitchedDraft(net, sw));
    by_code.try_emplace(CanonicalCodeOf(tree), std::move(tree));
  }
  std::vector<PhyloTree> out;
  for (auto& [code, tree] : by_code) out.push_back(std::move(tree));
  return out;
}

DisplayResult Displays(const Network& net, const PhyloTree& tree, const DisplayOptions& options) {
  if (net.mode() != tree.mode()) throw Error(ErrorCode::kModeMismatch, "network and tree modes differ");
  if (net.leaf_count() != tree.leaf_count()) {
    throw Error(ErrorCode::kLeafsetMismatch, "network has " + std::to_string(net.leaf_count()) +
                                                 " leaves, tree has " + std::to_string(tree.leaf_count()));
  }
  CheckBudget(net, options);
  const CanonicalCode target = CanonicalCodeOf(tree);
  for (auto& sw : EnumerateSwitchings(net)) {
    if (CanonicalCodeOf(Suppress(SwitchedDraft(net, sw))) == target) return {true, std::move(sw)};
  }
  return {};
}

namespace {

struct TrivialBuild {
  Network network;
  std::vector<Switching> selectors;
};

TrivialBuild BuildTrivial(const TreeSet& set) {
  if (set.mode() != Mode::kRooted) throw Error(ErrorCode::kModeMismatch, "the trivial network is rooted");
  const int t = static_cast<int>(set.size());
  const int n = set.leaf_count();
  if (t == 1) {
    const Network& only = set.trees().front().network();
    return {only, {Switching{std::vector<bool>(static_cast<std::size_t>(only.edge_count()), true)}}};
  }
  Draft d{Mode::kRooted, {}, {}};
  std::vector<int> cap(static_cast<std::size_t>(t - 1));
  for (auto& c : cap) c = d.AddNode();
  for (int j = 0; j + 1 < t - 1; ++j) d.edges.push_back({cap[static_cast<std::size_t>(j)], cap[static_cast<std::size_t>(j + 1)]});

  // merge[x][j] is the j-th reticulation (0-based) of the chain for label x.
  std::vector<std::vector<int>> merge(static_cast<std::size_t>(n) + 1);
  std::vector<int> leaf(static_cast<std::size_t>(n) + 1);
  for (int x = 1; x <= n; ++x) {
    for (int j = 0; j < t - 1; ++j) merge[static_cast<std::size_t>(x)].push_back(d.AddNode());
    leaf[static_cast<std::size_t>(x)] = d.AddNode(x);
    for (int j = 0; j + 1 < t - 1; ++j) {
      d.edges.push_back({merge[static_cast<std::size_t>(x)][static_cast<std::size_t>(j)],
                         merge[static_cast<std::size_t>(x)][static_cast<std::size_t>(j + 1)]});
    }
    d.edges.push_back({merge[static_cast<std::size_t>(x)].back(), leaf[static_cast<std::size_t>(x)]});
  }
  // leaf_edge[i][x]: edge from tree i's copy into the chain of label x.
  std::vector<std::vector<int>> leaf_edge(static_cast<std::size_t>(t), std::vector<int>(static_cast<std::size_t>(n) + 1, -1));
  for (int i = 0; i < t; ++i) {
    const Network& tree = set.trees()[static_cast<std::size_t>(i)].network();
    std::vector<int> id(static_cast<std::size_t>(tree.node_count()), -1);
    for (int v = 0; v < tree.node_count(); ++v) {
      if (tree.label(v) == 0) id[static_cast<std::size_t>(v)] = d.AddNode();
    }
    const int top = id[static_cast<std::size_t>(tree.Root())];
    const int hook = i < t - 1 ? cap[static_cast<std::size_t>(i)] : cap.back();
    d.edges.push_back({hook, top});
    for (const Edge& e : tree.edges()) {
      const int x = tree.label(e.v);
      if (x == 0) {
        d.edges.push_back({id[static_cast<std::size_t>(e.u)], id[static_cast<std::size_t>(e.v)]});
        continue;
      }
      const int target = merge[static_cast<std::size_t>(x)][static_cast<std::size_t>(std::max(0, i - 1))];
      leaf_edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] = static_cast<int>(d.edges.size());
      d.edges.push_back({id[static_cast<std::size_t>(e.u)], target});
    }
  }
  Network net(d);

  std::vector<Switching> selectors;
  for (int i = 0; i < t; ++i) {
    Switching sw{std::vector<bool>(static_cast<std::size_t>(net.edge_count()), true)};
    for (int x = 1; x <= n; ++x) {
      // Chain reticulation j takes tree i's edge if it is the entry point,
      // otherwise the chain edge from above (or tree 0 at j = 0).
      for (int j = 0; j < t - 1; ++j) {
        const int chain_node = merge[static_cast<std::size_t>(x)][static_cast<std::size_t>(j)];
        int keep_edge = -1;
        if (j == std::max(0, i - 1)) {
          keep_edge = leaf_edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
        } else if (j == 0) {
          keep_edge = leaf_edge[0][static_cast<std::size_t>(x)];
        }
        for (int e : net.InEdges(chain_node)) {
          const bool from_chain = net.label(net.edge(e).u) == 0 && keep_edge < 0 &&
                                  std::find(merge[static_cast<std::size_t>(x)].begin(), merge[static_cast<std::size_t>(x)].end(),
                                            net.edge(e).u) != merge[static_cast<std::size_t>(x)].end();
          sw.on[static_cast<std::size_t>(e)] = keep_edge >= 0 ? e == keep_edge : from_chain;
        }
      }
    }
    selectors.push_back(std::move(sw));
  }
  return {std::move(net), std::move(selectors)};
}

}  // namespace

Network TrivialNetwork(const TreeSet& trees) { return BuildTrivial(trees).network; }

std::vector<Switching> TrivialNetworkSelectors(const TreeSet& trees) { return BuildTrivial(trees).selectors; }

}  // namespace retnet
