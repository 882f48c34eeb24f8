#include "retnet/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <thread>

#include "retnet/canonical.hpp"
#include "retnet/error.hpp"

namespace retnet {

Budget Budget::FromEnv() {
  Budget b;
  const char* env = std::getenv("RETNET_BUDGET");
  if (env == nullptr || *env == '\0') return b;
  std::string text(env);
  try {
    if (text.find('=') == std::string::npos) {
      b.rooted = b.unrooted = std::stoi(text);
      return b;
    }
    std::size_t start = 0;
    while (start < text.size()) {
      auto end = text.find(',', start);
      if (end == std::string::npos) end = text.size();
      const std::string item = text.substr(start, end - start);
      const auto eq = item.find('=');
      const std::string key = item.substr(0, eq);
      const int value = std::stoi(item.substr(eq + 1));
      if (key == "rooted") {
        b.rooted = value;
      } else if (key == "unrooted") {
        b.unrooted = value;
      } else {
        throw Error(ErrorCode::kParse, "unknown RETNET_BUDGET key '" + key + "'");
      }
      start = end + 1;
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kParse, "malformed RETNET_BUDGET '" + text + "'");
  }
  return b;
}

void Budget::Check(int n, int r, Mode mode) const {
  if (n + 2 * r > For(mode)) {
    throw Error(ErrorCode::kBudgetExceeded, "n + 2r = " + std::to_string(n + 2 * r) + " exceeds the " +
                                                std::string(ModeName(mode)) + " cap " + std::to_string(For(mode)));
  }
}

namespace {

void GrowTrees(Draft& d, int next, int n, std::vector<Draft>& out) {
  if (next > n) {
    out.push_back(d);
    return;
  }
  const int edges = static_cast<int>(d.edges.size());
  for (int e = 0; e < edges; ++e) {
    Draft copy = d;
    const Edge old = copy.edges[static_cast<std::size_t>(e)];
    const int mid = copy.AddNode();
    const int leaf = copy.AddNode(next);
    copy.edges[static_cast<std::size_t>(e)] = {old.u, mid};
    copy.edges.push_back({mid, old.v});
    copy.edges.push_back({mid, leaf});
    GrowTrees(copy, next + 1, n, out);
  }
  if (d.mode == Mode::kRooted) {
    // Above the current root.
    std::vector<int> indeg(d.labels.size(), 0);
    for (const Edge& e : d.edges) ++indeg[static_cast<std::size_t>(e.v)];
    const int root = static_cast<int>(std::find(indeg.begin(), indeg.end(), 0) - indeg.begin());
    Draft copy = d;
    const int top = copy.AddNode();
    const int leaf = copy.AddNode(next);
    copy.edges.push_back({top, root});
    copy.edges.push_back({top, leaf});
    GrowTrees(copy, next + 1, n, out);
  }
}

template <typename T>
std::vector<T> SortedByCode(std::map<CanonicalCode, T>&& by_code) {
  std::vector<T> out;
  out.reserve(by_code.size());
  for (auto& [code, value] : by_code) out.push_back(std::move(value));
  return out;
}

// Descendants (inclusive) of every node as bit rows.
std::vector<std::vector<char>> Descendants(const Network& net) {
  const auto nv = static_cast<std::size_t>(net.node_count());
  std::vector<std::vector<char>> desc(nv, std::vector<char>(nv, 0));
  std::function<void(int)> fill = [&](int v) {
    auto& row = desc[static_cast<std::size_t>(v)];
    if (row[static_cast<std::size_t>(v)]) return;
    row[static_cast<std::size_t>(v)] = 1;
    for (int e : net.OutEdges(v)) {
      const int w = net.edge(e).v;
      fill(w);
      const auto& sub = desc[static_cast<std::size_t>(w)];
      for (std::size_t i = 0; i < nv; ++i) row[i] |= sub[i];
    }
  };
  for (int v = 0; v < net.node_count(); ++v) fill(v);
  return desc;
}

// Intermediate levels are multigraphs: some simple networks only arise from
// parents with parallel edges (unrooted: also loops), so nothing is filtered
// until the last level.
void AugmentRooted(const Network& net, std::map<CanonicalCode, Network>& out) {
  const int ne = net.edge_count();
  const auto desc = Descendants(net);
  const int root = net.Root();
  for (int e1 = -1; e1 < ne; ++e1) {
    // e = -1 is a virtual edge into the root.
    for (int e2 = e1 < 0 ? -1 : 0; e2 < ne; ++e2) {
      const Edge top = e1 >= 0 ? net.edge(e1) : Edge{-1, root};
      const Edge bottom = e2 >= 0 ? net.edge(e2) : Edge{-1, root};
      // a sits on `top`, b on `bottom`; a -> b closes a cycle iff top.u lies below bottom.v.
      if (e1 >= 0 && e1 != e2 && desc[static_cast<std::size_t>(bottom.v)][static_cast<std::size_t>(top.u)]) continue;
      Draft d = net.ToDraft();
      const int a = d.AddNode();
      const int b = d.AddNode();
      if (e1 == e2) {
        // Both on one edge, a above b.
        if (e1 >= 0) d.edges[static_cast<std::size_t>(e1)] = {top.u, a};
        d.edges.push_back({a, b});
        d.edges.push_back({b, top.v});
      } else {
        if (e1 >= 0) d.edges[static_cast<std::size_t>(e1)] = {top.u, a};
        d.edges.push_back({a, top.v});
        d.edges[static_cast<std::size_t>(e2)] = {bottom.u, b};
        d.edges.push_back({b, bottom.v});
      }
      d.edges.push_back({a, b});
      Network candidate(d);
      out.try_emplace(CanonicalCodeOf(candidate), std::move(candidate));
    }
  }
}

void AugmentUnrooted(const Network& net, std::map<CanonicalCode, Network>& out) {
  const int ne = net.edge_count();
  auto keep = [&](Draft&& d) {
    Network candidate(d);
    out.try_emplace(CanonicalCodeOf(candidate), std::move(candidate));
  };
  for (int e1 = 0; e1 < ne; ++e1) {
    const Edge x = net.edge(e1);
    for (int e2 = e1; e2 < ne; ++e2) {
      const Edge y = net.edge(e2);
      Draft d = net.ToDraft();
      const int a = d.AddNode();
      const int b = d.AddNode();
      if (e1 == e2) {
        d.edges[static_cast<std::size_t>(e1)] = {x.u, a};
        d.edges.push_back({a, b});
        d.edges.push_back({b, x.v});
      } else {
        d.edges[static_cast<std::size_t>(e1)] = {x.u, a};
        d.edges.push_back({a, x.v});
        d.edges[static_cast<std::size_t>(e2)] = {y.u, b};
        d.edges.push_back({b, y.v});
      }
      d.edges.push_back({a, b});
      keep(std::move(d));
    }
    // Pendant loop on a new node hung from the middle of e1.
    Draft d = net.ToDraft();
    const int a = d.AddNode();
    const int b = d.AddNode();
    d.edges[static_cast<std::size_t>(e1)] = {x.u, a};
    d.edges.push_back({a, x.v});
    d.edges.push_back({a, b});
    d.edges.push_back({b, b});
    keep(std::move(d));
  }
}

std::vector<Network> NextLevel(const std::vector<Network>& level, Mode mode, int jobs) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(level.size())));
  std::vector<std::map<CanonicalCode, Network>> partial(static_cast<std::size_t>(std::max(jobs, 1)));
  auto work = [&](int worker) {
    for (std::size_t i = static_cast<std::size_t>(worker); i < level.size(); i += static_cast<std::size_t>(jobs)) {
      if (mode == Mode::kRooted) {
        AugmentRooted(level[i], partial[static_cast<std::size_t>(worker)]);
      } else {
        AugmentUnrooted(level[i], partial[static_cast<std::size_t>(worker)]);
      }
    }
  };
  if (jobs <= 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  std::map<CanonicalCode, Network> merged;
  for (auto& part : partial) merged.merge(part);
  return SortedByCode(std::move(merged));
}

}  // namespace

std::vector<PhyloTree> EnumerateTrees(int n, Mode mode) {
  if (n < 1) throw Error(ErrorCode::kDomain, "trees need at least one leaf");
  Draft seed{mode, {}, {}};
  int next = 2;
  seed.AddNode(1);
  if (mode == Mode::kUnrooted && n >= 2) {
    seed.AddNode(2);
    seed.edges.push_back({0, 1});
    next = 3;
    if (n >= 3) {
      const int hub = seed.AddNode();
      seed.AddNode(3);
      seed.edges = {{hub, 0}, {hub, 1}, {hub, 3}};
      next = 4;
    }
  }
  std::vector<Draft> drafts;
  GrowTrees(seed, next, n, drafts);
  std::map<CanonicalCode, PhyloTree> by_code;
  for (const Draft& d : drafts) {
    PhyloTree tree{Network(d)};
    by_code.try_emplace(CanonicalCodeOf(tree), std::move(tree));
  }
  return SortedByCode(std::move(by_code));
}

std::vector<Network> EnumerateNetworks(int n, int r, Mode mode, const EnumerateOptions& options) {
  if (n < 1 || r < 0) throw Error(ErrorCode::kDomain, "need n >= 1 and r >= 0");
  options.budget.Check(n, r, mode);
  std::vector<Network> level;
  for (auto& tree : EnumerateTrees(n, mode)) level.push_back(tree.network());
  for (int k = 1; k <= r; ++k) level = NextLevel(level, mode, options.jobs);
  std::erase_if(level, [&](const Network& net) {
    if (!Validate(net).empty()) return true;
    return mode == Mode::kUnrooted && options.leaf_connecting_only && !IsLeafConnecting(net);
  });
  return level;
}

std::vector<Switching> EnumerateSwitchings(const Network& net) {
  std::vector<Switching> out;
  const int r = net.ReticulationCount();
  if (net.mode() == Mode::kRooted) {
    std::vector<int> retics;
    for (int v = 0; v < net.node_count(); ++v) {
      if (net.InEdges(v).size() == 2) retics.push_back(v);
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << retics.size()); ++mask) {
      Switching sw{std::vector<bool>(static_cast<std::size_t>(net.edge_count()), true)};
      for (std::size_t i = 0; i < retics.size(); ++i) {
        const auto in = net.InEdges(retics[i]);
        sw.on[static_cast<std::size_t>(in[(mask >> i) & 1U ? 0 : 1])] = false;
      }
      out.push_back(std::move(sw));
    }
    return out;
  }
  // Unrooted: delete r non-pendant edges, keep the remainder if connected.
  std::vector<int> inner;
  for (int e = 0; e < net.edge_count(); ++e) {
    if (net.label(net.edge(e).u) == 0 && net.label(net.edge(e).v) == 0) inner.push_back(e);
  }
  if (r < 0 || r > static_cast<int>(inner.size())) return out;
  std::vector<char> pick(inner.size(), 0);
  std::fill(pick.end() - r, pick.end(), 1);
  do {
    Switching sw{std::vector<bool>(static_cast<std::size_t>(net.edge_count()), true)};
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (pick[i]) sw.on[static_cast<std::size_t>(inner[i])] = false;
    }
    if (Validate(net, sw).empty()) out.push_back(std::move(sw));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

Switching FixedSwitching(const Network& net) {
  const CanonicalForm form = Canonicalize(net);
  const std::vector<int> order = CanonicalEdgeOrder(net, form);
  auto key = [&](const Switching& sw) {
    std::vector<char> k;
    k.reserve(order.size());
    for (int e : order) k.push_back(sw.on[static_cast<std::size_t>(e)] ? 0 : 1);
    return k;
  };
  auto all = EnumerateSwitchings(net);
  if (all.empty()) throw Error(ErrorCode::kInvalid, "network has no switching");
  return *std::min_element(all.begin(), all.end(),
                           [&](const Switching& a, const Switching& b) { return key(a) < key(b); });
}

std::vector<ReticulationLabelling> ReticulationLabellings(const Network& net, const Switching& sw) {
  if (!Validate(net, sw).empty()) {
    throw Error(ErrorCode::kSwitchingMismatch, "switching does not belong to the network");
  }
  std::vector<int> off;
  for (int e = 0; e < net.edge_count(); ++e) {
    if (!sw.on[static_cast<std::size_t>(e)]) off.push_back(e);
  }
  std::vector<int> perm(off.size());
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<ReticulationLabelling> out;
  do {
    ReticulationLabelling lab{std::vector<int>(static_cast<std::size_t>(net.edge_count()), 0)};
    for (std::size_t i = 0; i < off.size(); ++i) lab.labels[static_cast<std::size_t>(off[i])] = perm[i];
    out.push_back(std::move(lab));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace retnet
