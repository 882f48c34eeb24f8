#include "retnet/network.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "retnet/canonical.hpp"
#include "retnet/error.hpp"

namespace retnet {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "PARSE";
    case ErrorCode::kInvalid: return "INVALID";
    case ErrorCode::kNotATree: return "NOT_A_TREE";
    case ErrorCode::kEmptyUnion: return "EMPTY_UNION";
    case ErrorCode::kModeMismatch: return "MODE_MISMATCH";
    case ErrorCode::kLeafsetMismatch: return "LEAFSET_MISMATCH";
    case ErrorCode::kBudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::kInvalidLabelling: return "INVALID_LABELLING";
    case ErrorCode::kSwitchingMismatch: return "SWITCHING_MISMATCH";
    case ErrorCode::kTTooLarge: return "T_TOO_LARGE";
    case ErrorCode::kDomain: return "DOMAIN";
    case ErrorCode::kUndecided: return "UNDECIDED";
  }
  return "UNKNOWN";
}

std::string_view ModeName(Mode mode) { return mode == Mode::kRooted ? "rooted" : "unrooted"; }

Mode ParseMode(std::string_view text) {
  if (text == "rooted") return Mode::kRooted;
  if (text == "unrooted") return Mode::kUnrooted;
  throw Error(ErrorCode::kParse, "unknown mode '" + std::string(text) + "'");
}

Network::Network(Mode mode, int node_count, std::vector<Edge> edges, std::vector<int> labels)
    : mode_(mode), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (static_cast<int>(labels_.size()) != node_count) {
    throw Error(ErrorCode::kInvalid, "label vector size does not match node count");
  }
  const auto nc = static_cast<std::size_t>(node_count);
  out_.resize(nc);
  in_.resize(nc);
  incident_.resize(nc);
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    if (ed.u < 0 || ed.v < 0 || ed.u >= node_count || ed.v >= node_count) {
      throw Error(ErrorCode::kInvalid, "edge endpoint out of range");
    }
    out_[static_cast<std::size_t>(ed.u)].push_back(e);
    in_[static_cast<std::size_t>(ed.v)].push_back(e);
    incident_[static_cast<std::size_t>(ed.u)].push_back(e);
    if (ed.v != ed.u) incident_[static_cast<std::size_t>(ed.v)].push_back(e);
  }
  leaf_count_ = static_cast<int>(std::count_if(labels_.begin(), labels_.end(), [](int l) { return l != 0; }));
}

Network::Network(const Draft& draft)
    : Network(draft.mode, draft.node_count(), draft.edges, draft.labels) {}

int Network::NodeOfLabel(int label) const {
  for (int v = 0; v < node_count(); ++v) {
    if (labels_[static_cast<std::size_t>(v)] == label) return v;
  }
  return -1;
}

int Network::Root() const {
  if (mode_ != Mode::kRooted) return -1;
  for (int v = 0; v < node_count(); ++v) {
    if (in_[static_cast<std::size_t>(v)].empty()) return v;
  }
  return -1;
}

int Network::ReticulationCount() const {
  if (mode_ == Mode::kUnrooted) return edge_count() - node_count() + 1;
  int r = 0;
  for (const auto& in : in_) r += in.size() >= 2 ? static_cast<int>(in.size()) - 1 : 0;
  return r;
}

Draft Network::ToDraft() const { return Draft{mode_, edges_, labels_}; }

int ReticulationCount(const Network& net) { return net.ReticulationCount(); }

PhyloTree::PhyloTree(Network net) : net_(std::move(net)) {
  auto report = ValidateTree(net_);
  if (!report.empty()) throw Error(ErrorCode::kInvalid, "not a phylogenetic tree: " + report.front());
}

Switching ReticulationLabelling::Restrict() const {
  Switching sw;
  sw.on.reserve(labels.size());
  for (int l : labels) sw.on.push_back(l == 0);
  return sw;
}

TreeSet::TreeSet(std::vector<PhyloTree> trees) : trees_(std::move(trees)) {
  if (trees_.empty()) throw Error(ErrorCode::kInvalid, "tree set must contain at least one tree");
  for (const auto& t : trees_) {
    if (t.mode() != trees_.front().mode()) throw Error(ErrorCode::kModeMismatch, "tree set mixes modes");
    if (t.leaf_count() != trees_.front().leaf_count()) {
      throw Error(ErrorCode::kLeafsetMismatch, "tree set members have different leaf sets");
    }
  }
  std::set<CanonicalCode> codes;
  for (std::size_t i = 0; i < trees_.size(); ++i) {
    if (!codes.insert(CanonicalCodeOf(trees_[i])).second) {
      throw Error(ErrorCode::kInvalid, "tree set member " + std::to_string(i + 1) + " repeats an earlier member");
    }
  }
}

// --- validation ----------------------------------------------------------

namespace {

void CheckLabels(const Network& net, ValidationReport& report) {
  const int n = net.leaf_count();
  std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 0; v < net.node_count(); ++v) {
    const int l = net.label(v);
    if (l == 0) continue;
    if (l < 0 || l > n) {
      report.push_back("leaf label " + std::to_string(l) + " outside [1, " + std::to_string(n) + "]");
    } else if (seen[static_cast<std::size_t>(l)]++) {
      report.push_back("leaf label " + std::to_string(l) + " used twice");
    }
  }
}

void CheckSimple(const Network& net, ValidationReport& report) {
  std::set<std::pair<int, int>> pairs;
  for (const Edge& e : net.edges()) {
    if (e.u == e.v) {
      report.push_back("self-loop at node " + std::to_string(e.u));
      continue;
    }
    const std::pair<int, int> key = net.mode() == Mode::kRooted ? std::pair{e.u, e.v} : std::pair{std::min(e.u, e.v), std::max(e.u, e.v)};
    if (!pairs.insert(key).second) {
      report.push_back("parallel edges between " + std::to_string(e.u) + " and " + std::to_string(e.v));
    }
  }
  if (net.mode() == Mode::kRooted) {
    for (const Edge& e : net.edges()) {
      if (pairs.count({e.v, e.u})) {
        report.push_back("antiparallel edges between " + std::to_string(e.u) + " and " + std::to_string(e.v));
        break;
      }
    }
  }
}

bool IsConnected(const Network& net) {
  if (net.node_count() == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(net.node_count()), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : net.Incident(v)) {
      int w = net.Other(e, v);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++visited;
        stack.push_back(w);
      }
    }
  }
  return visited == net.node_count();
}

bool IsAcyclicDirected(const Network& net) {
  std::vector<int> indeg(static_cast<std::size_t>(net.node_count()));
  std::deque<int> queue;
  for (int v = 0; v < net.node_count(); ++v) {
    indeg[static_cast<std::size_t>(v)] = static_cast<int>(net.InEdges(v).size());
    if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
  }
  int popped = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    ++popped;
    for (int e : net.OutEdges(v)) {
      int w = net.edge(e).v;
      if (--indeg[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
    }
  }
  return popped == net.node_count();
}

std::string NodeDesc(const Network& net, int v) {
  std::ostringstream os;
  os << "node " << v << " has in-degree " << net.InEdges(v).size() << " and out-degree "
     << net.OutEdges(v).size();
  return os.str();
}

void ValidateRooted(const Network& net, ValidationReport& report) {
  int sources = 0;
  for (int v = 0; v < net.node_count(); ++v) sources += net.InEdges(v).empty() ? 1 : 0;
  if (sources != 1) report.push_back("single source violated: " + std::to_string(sources) + " sources");
  if (!IsAcyclicDirected(net)) report.push_back("graph contains a directed cycle");

  const int n = net.leaf_count();
  if (net.node_count() == 1) {
    if (n != 1) report.push_back("single node must be the leaf labelled 1");
    return;
  }
  for (int v = 0; v < net.node_count(); ++v) {
    const auto in = net.InEdges(v).size();
    const auto out = net.OutEdges(v).size();
    if (in > 2 || out > 2) {
      report.push_back("not binary: " + NodeDesc(net, v));
      continue;
    }
    if (net.label(v) != 0) {
      if (out != 0) report.push_back("labelled node " + std::to_string(v) + " is not a leaf");
      if (in != 1) report.push_back("leaf " + std::to_string(v) + " must have in-degree 1");
      continue;
    }
    if (out == 0) {
      report.push_back("unlabelled leaf at node " + std::to_string(v));
    } else if (in == 0) {
      if (out != 2) report.push_back("root must have out-degree 2: " + NodeDesc(net, v));
    } else if (!((in == 1 && out == 2) || (in == 2 && out == 1))) {
      report.push_back("not binary: " + NodeDesc(net, v));
    }
  }
}

void ValidateUnrooted(const Network& net, ValidationReport& report) {
  if (!IsConnected(net)) report.push_back("graph is not connected");
  const int n = net.leaf_count();
  if (net.node_count() == 1) {
    if (n != 1) report.push_back("single node must be the leaf labelled 1");
    return;
  }
  for (int v = 0; v < net.node_count(); ++v) {
    const int deg = net.Degree(v);
    if (net.label(v) != 0) {
      if (deg != 1) report.push_back("leaf " + std::to_string(v) + " must have degree 1");
    } else if (deg == 1) {
      report.push_back("unlabelled leaf at node " + std::to_string(v));
    } else if (deg != 3) {
      report.push_back("not binary: node " + std::to_string(v) + " has degree " + std::to_string(deg));
    }
  }
  if (net.ReticulationCount() < 0) report.push_back("negative reticulation number");
}

}  // namespace

ValidationReport Validate(const Network& net) {
  ValidationReport report;
  if (net.node_count() == 0) {
    report.push_back("empty graph");
    return report;
  }
  if (net.leaf_count() == 0) report.push_back("no labelled leaves");
  CheckLabels(net, report);
  CheckSimple(net, report);
  if (net.mode() == Mode::kRooted) {
    ValidateRooted(net, report);
  } else {
    ValidateUnrooted(net, report);
  }
  return report;
}

ValidationReport ValidateTree(const Network& net) {
  ValidationReport report = Validate(net);
  if (net.ReticulationCount() != 0) {
    report.push_back("tree has " + std::to_string(net.ReticulationCount()) + " reticulations");
  }
  if (net.edge_count() + 1 != net.node_count()) report.push_back("tree must have |E| = |V| - 1");
  return report;
}

ValidationReport Validate(const Network& net, const Switching& sw) {
  ValidationReport report;
  if (static_cast<int>(sw.on.size()) != net.edge_count()) {
    report.push_back("switching has " + std::to_string(sw.on.size()) + " entries for " +
                     std::to_string(net.edge_count()) + " edges");
    return report;
  }
  const int off = static_cast<int>(std::count(sw.on.begin(), sw.on.end(), false));
  if (off != net.ReticulationCount()) {
    report.push_back("switching leaves " + std::to_string(off) + " edges unlabelled, expected " +
                     std::to_string(net.ReticulationCount()));
  }
  if (net.mode() == Mode::kRooted) {
    for (int v = 0; v < net.node_count(); ++v) {
      if (net.InEdges(v).empty()) continue;
      int labelled = 0;
      for (int e : net.InEdges(v)) labelled += sw.on[static_cast<std::size_t>(e)] ? 1 : 0;
      if (labelled != 1) {
        report.push_back("node " + std::to_string(v) + " has " + std::to_string(labelled) +
                         " labelled parent edges");
      }
    }
  } else {
    // Labelled edges must form a spanning tree: V-1 of them, connected.
    Draft d{Mode::kUnrooted, {}, std::vector<int>(static_cast<std::size_t>(net.node_count()), 0)};
    for (int e = 0; e < net.edge_count(); ++e) {
      if (sw.on[static_cast<std::size_t>(e)]) d.edges.push_back(net.edge(e));
    }
    Network sub(d);
    if (sub.edge_count() != net.node_count() - 1 || !IsConnected(sub)) {
      report.push_back("labelled edges do not form a spanning tree");
    }
  }
  return report;
}

ValidationReport Validate(const Network& net, const ReticulationLabelling& lab) {
  ValidationReport report;
  if (static_cast<int>(lab.labels.size()) != net.edge_count()) {
    report.push_back("labelling size does not match edge count");
    return report;
  }
  const int r = net.ReticulationCount();
  std::vector<int> seen(static_cast<std::size_t>(r) + 1, 0);
  for (int l : lab.labels) {
    if (l < 0 || l > r) {
      report.push_back("edge label " + std::to_string(l) + " outside {0} u [" + std::to_string(r) + "]");
    } else if (l > 0 && seen[static_cast<std::size_t>(l)]++) {
      report.push_back("edge label " + std::to_string(l) + " used twice");
    }
  }
  for (const auto& issue : Validate(net, lab.Restrict())) report.push_back(issue);
  return report;
}

// --- leaf-connecting -------------------------------------------------------

namespace {

// Unit-capacity max flow on a small graph, stops once `limit` is reached.
class SmallFlow {
 public:
  explicit SmallFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

  void Add(int a, int b) {
    adj_[static_cast<std::size_t>(a)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({b, 1});
    adj_[static_cast<std::size_t>(b)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({a, 0});
  }

  int Run(int s, int t, int limit) {
    int flow = 0;
    while (flow < limit) {
      std::vector<int> via(adj_.size(), -1);
      std::deque<int> queue{s};
      via[static_cast<std::size_t>(s)] = -2;
      while (!queue.empty() && via[static_cast<std::size_t>(t)] == -1) {
        int x = queue.front();
        queue.pop_front();
        for (int a : adj_[static_cast<std::size_t>(x)]) {
          const auto& arc = arcs_[static_cast<std::size_t>(a)];
          if (arc.cap > 0 && via[static_cast<std::size_t>(arc.to)] == -1) {
            via[static_cast<std::size_t>(arc.to)] = a;
            queue.push_back(arc.to);
          }
        }
      }
      if (via[static_cast<std::size_t>(t)] == -1) break;
      for (int x = t; x != s;) {
        int a = via[static_cast<std::size_t>(x)];
        arcs_[static_cast<std::size_t>(a)].cap -= 1;
        arcs_[static_cast<std::size_t>(a ^ 1)].cap += 1;
        x = arcs_[static_cast<std::size_t>(a ^ 1)].to;
      }
      ++flow;
    }
    return flow;
  }

 private:
  struct Arc {
    int to;
    int cap;
  };
  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
};

}  // namespace

bool IsLeafConnecting(const Network& net) {
  const int nv = net.node_count();
  // Edge {a,b} lies on a leaf-to-leaf path iff, without the edge, a and b
  // reach two distinct leaves along vertex-disjoint paths.
  for (int e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    const int s = 2 * nv;
    const int t = 2 * nv + 1;
    SmallFlow flow(2 * nv + 2);
    for (int v = 0; v < nv; ++v) {
      flow.Add(2 * v, 2 * v + 1);
      if (net.label(v) != 0) flow.Add(2 * v + 1, t);
    }
    for (int f = 0; f < net.edge_count(); ++f) {
      if (f == e) continue;
      const Edge& g = net.edge(f);
      flow.Add(2 * g.u + 1, 2 * g.v);
      flow.Add(2 * g.v + 1, 2 * g.u);
    }
    flow.Add(s, 2 * ed.u);
    flow.Add(s, 2 * ed.v);
    if (ed.u == ed.v || flow.Run(s, t, 2) < 2) return false;
  }
  return true;
}

// --- suppression -----------------------------------------------------------

namespace {

// Adjacency-set view of a draft used for in-place contraction.
struct Workspace {
  Mode mode;
  std::vector<std::set<int>> out, in;  // unrooted: out holds all neighbours
  std::vector<int> labels;
  std::vector<char> alive;

  explicit Workspace(const Draft& d)
      : mode(d.mode),
        out(static_cast<std::size_t>(d.node_count())),
        in(static_cast<std::size_t>(d.node_count())),
        labels(d.labels),
        alive(static_cast<std::size_t>(d.node_count()), 1) {
    for (const Edge& e : d.edges) {
      out[static_cast<std::size_t>(e.u)].insert(e.v);
      if (mode == Mode::kRooted) {
        in[static_cast<std::size_t>(e.v)].insert(e.u);
      } else {
        out[static_cast<std::size_t>(e.v)].insert(e.u);
      }
    }
  }

  std::size_t Deg(int v) const { return out[static_cast<std::size_t>(v)].size(); }

  void Remove(int v) {
    alive[static_cast<std::size_t>(v)] = 0;
    for (int w : out[static_cast<std::size_t>(v)]) {
      (mode == Mode::kRooted ? in : out)[static_cast<std::size_t>(w)].erase(v);
    }
    for (int w : in[static_cast<std::size_t>(v)]) out[static_cast<std::size_t>(w)].erase(v);
    out[static_cast<std::size_t>(v)].clear();
    in[static_cast<std::size_t>(v)].clear();
  }

  Draft ToDraft() const {
    std::vector<int> id(labels.size(), -1);
    Draft d{mode, {}, {}};
    for (std::size_t v = 0; v < labels.size(); ++v) {
      if (alive[v]) id[v] = d.AddNode(labels[v]);
    }
    for (std::size_t v = 0; v < labels.size(); ++v) {
      if (!alive[v]) continue;
      for (int w : out[v]) {
        if (mode == Mode::kUnrooted && w < static_cast<int>(v)) continue;
        d.edges.push_back({id[v], id[static_cast<std::size_t>(w)]});
      }
    }
    return d;
  }
};

bool DraftIsTree(const Draft& g) {
  if (g.node_count() == 0) return false;
  if (static_cast<int>(g.edges.size()) != g.node_count() - 1) return false;
  Network net(Mode::kUnrooted, g.node_count(), g.edges, std::vector<int>(g.labels.size(), 0));
  if (!IsConnected(net)) return false;
  if (g.mode == Mode::kRooted) {
    std::vector<int> indeg(g.labels.size(), 0);
    for (const Edge& e : g.edges) {
      if (++indeg[static_cast<std::size_t>(e.v)] > 1) return false;
    }
  }
  return true;
}

}  // namespace

PhyloTree Suppress(const Draft& graph) {
  if (!DraftIsTree(graph)) throw Error(ErrorCode::kNotATree, "input graph is not a tree");
  Workspace ws(graph);
  const int nv = graph.node_count();

  for (int v = 0; v < nv; ++v) {
    if (ws.labels[static_cast<std::size_t>(v)] != 0) {
      const bool leaf = graph.mode == Mode::kRooted ? ws.Deg(v) == 0 : ws.Deg(v) <= 1;
      if (!leaf) throw Error(ErrorCode::kInvalid, "labelled node " + std::to_string(v) + " is not a leaf");
    }
  }

  // Prune unlabelled leaves until none remain.
  std::deque<int> queue;
  for (int v = 0; v < nv; ++v) queue.push_back(v);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (!ws.alive[static_cast<std::size_t>(v)] || ws.labels[static_cast<std::size_t>(v)] != 0) continue;
    const bool prune = graph.mode == Mode::kRooted ? ws.Deg(v) == 0 : ws.Deg(v) <= 1;
    if (!prune) continue;
    std::vector<int> nbrs(ws.in[static_cast<std::size_t>(v)].begin(), ws.in[static_cast<std::size_t>(v)].end());
    nbrs.insert(nbrs.end(), ws.out[static_cast<std::size_t>(v)].begin(), ws.out[static_cast<std::size_t>(v)].end());
    ws.Remove(v);
    for (int w : nbrs) queue.push_back(w);
  }

  if (graph.mode == Mode::kRooted) {
    // Drop unlabelled roots with a single child.
    for (bool changed = true; changed;) {
      changed = false;
      for (int v = 0; v < nv; ++v) {
        if (ws.alive[static_cast<std::size_t>(v)] && ws.in[static_cast<std::size_t>(v)].empty() &&
            ws.labels[static_cast<std::size_t>(v)] == 0 && ws.Deg(v) == 1) {
          ws.Remove(v);
          changed = true;
        }
      }
    }
    for (int v = 0; v < nv; ++v) {
      if (!ws.alive[static_cast<std::size_t>(v)] || ws.labels[static_cast<std::size_t>(v)] != 0) continue;
      auto& in = ws.in[static_cast<std::size_t>(v)];
      auto& out = ws.out[static_cast<std::size_t>(v)];
      if (in.size() == 1 && out.size() == 1) {
        int p = *in.begin();
        int c = *out.begin();
        ws.Remove(v);
        ws.out[static_cast<std::size_t>(p)].insert(c);
        ws.in[static_cast<std::size_t>(c)].insert(p);
      }
    }
  } else {
    for (int v = 0; v < nv; ++v) {
      if (!ws.alive[static_cast<std::size_t>(v)] || ws.labels[static_cast<std::size_t>(v)] != 0) continue;
      auto& nb = ws.out[static_cast<std::size_t>(v)];
      if (nb.size() == 2) {
        int a = *nb.begin();
        int b = *std::next(nb.begin());
        ws.Remove(v);
        ws.out[static_cast<std::size_t>(a)].insert(b);
        ws.out[static_cast<std::size_t>(b)].insert(a);
      }
    }
  }
  return PhyloTree(Network(ws.ToDraft()));
}

Draft SubdivideEdge(const PhyloTree& tree, int e) {
  Draft d = tree.network().ToDraft();
  const Edge old = d.edges[static_cast<std::size_t>(e)];
  const int mid = d.AddNode();
  d.edges[static_cast<std::size_t>(e)] = {old.u, mid};
  d.edges.push_back({mid, old.v});
  return d;
}

Network RestrictToEmbeddings(const Network& net, std::span<const std::vector<int>> embeddings) {
  if (net.mode() != Mode::kUnrooted) {
    throw Error(ErrorCode::kModeMismatch, "restriction to embeddings is defined for unrooted networks");
  }
  std::vector<char> used(static_cast<std::size_t>(net.edge_count()), 0);
  for (const auto& emb : embeddings) {
    for (int e : emb) {
      if (e < 0 || e >= net.edge_count()) throw Error(ErrorCode::kInvalid, "embedding edge out of range");
      used[static_cast<std::size_t>(e)] = 1;
    }
  }
  bool touches_leaf = false;
  // Multigraph as edge multiset; node ids stay those of `net` until the end.
  std::vector<Edge> edges;
  for (int e = 0; e < net.edge_count(); ++e) {
    if (!used[static_cast<std::size_t>(e)]) continue;
    edges.push_back(net.edge(e));
    touches_leaf |= net.label(net.edge(e).u) != 0 || net.label(net.edge(e).v) != 0;
  }
  if (!touches_leaf) throw Error(ErrorCode::kEmptyUnion, "embeddings cover no leaf edge");

  const auto nv = static_cast<std::size_t>(net.node_count());
  for (bool changed = true; changed;) {
    changed = false;
    // Collapse parallel edges and drop loops.
    std::set<std::pair<int, int>> seen;
    std::vector<Edge> kept;
    for (const Edge& e : edges) {
      if (e.u == e.v) {
        changed = true;
        continue;
      }
      if (!seen.insert(std::minmax(e.u, e.v)).second) {
        changed = true;
        continue;
      }
      kept.push_back(e);
    }
    edges = std::move(kept);
    std::vector<std::vector<int>> inc(nv);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      inc[static_cast<std::size_t>(edges[i].u)].push_back(static_cast<int>(i));
      inc[static_cast<std::size_t>(edges[i].v)].push_back(static_cast<int>(i));
    }
    for (std::size_t v = 0; v < nv; ++v) {
      if (net.label(static_cast<int>(v)) != 0) continue;
      if (inc[v].size() == 1) {
        // Unlabelled dangling node.
        edges.erase(edges.begin() + inc[v][0]);
        changed = true;
        break;
      }
      if (inc[v].size() == 2) {
        Edge& a = edges[static_cast<std::size_t>(inc[v][0])];
        Edge& b = edges[static_cast<std::size_t>(inc[v][1])];
        const int x = a.u == static_cast<int>(v) ? a.v : a.u;
        const int y = b.u == static_cast<int>(v) ? b.v : b.u;
        a = {x, y};
        edges.erase(edges.begin() + inc[v][1]);
        changed = true;
        break;
      }
    }
  }

  std::vector<int> id(nv, -1);
  Draft d{Mode::kUnrooted, {}, {}};
  for (const Edge& e : edges) {
    for (int v : {e.u, e.v}) {
      if (id[static_cast<std::size_t>(v)] < 0) id[static_cast<std::size_t>(v)] = d.AddNode(net.label(v));
    }
  }
  // Leaves whose edges were not covered stay isolated only if nothing else
  // touched them; keep them so the leaf set is preserved.
  for (std::size_t v = 0; v < nv; ++v) {
    if (net.label(static_cast<int>(v)) != 0 && id[v] < 0) id[v] = d.AddNode(net.label(static_cast<int>(v)));
  }
  for (const Edge& e : edges) d.edges.push_back({id[static_cast<std::size_t>(e.u)], id[static_cast<std::size_t>(e.v)]});
  return Network(d);
}

Network Permute(const Network& net, std::span<const int> new_id_of_old) {
  std::vector<int> labels(static_cast<std::size_t>(net.node_count()));
  for (int v = 0; v < net.node_count(); ++v) labels[static_cast<std::size_t>(new_id_of_old[static_cast<std::size_t>(v)])] = net.label(v);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(net.edge_count()));
  for (const Edge& e : net.edges()) {
    edges.push_back({new_id_of_old[static_cast<std::size_t>(e.u)], new_id_of_old[static_cast<std::size_t>(e.v)]});
  }
  return Network(net.mode(), net.node_count(), std::move(edges), std::move(labels));
}

}  // namespace retnet
