#include "retnet/canonical.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "retnet/error.hpp"

namespace retnet {

std::string CanonicalCode::Hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xF]);
  }
  return out;
}

CanonicalCode CanonicalCode::FromHex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw Error(ErrorCode::kParse, "invalid hex digit");
  };
  if (hex.size() % 2 != 0) throw Error(ErrorCode::kParse, "odd-length hex code");
  CanonicalCode code;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    code.bytes.push_back(static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  }
  return code;
}

namespace {

constexpr char kRootedTree = 'R';
constexpr char kUnrootedTree = 'U';
constexpr char kRootedNet = 'N';
constexpr char kUnrootedNet = 'M';

void PutInt(std::string& out, int x) {
  const auto u = static_cast<std::uint32_t>(x);
  out.push_back(static_cast<char>((u >> 24) & 0xFF));
  out.push_back(static_cast<char>((u >> 16) & 0xFF));
  out.push_back(static_cast<char>((u >> 8) & 0xFF));
  out.push_back(static_cast<char>(u & 0xFF));
}

// --- trees: nested form with children ordered by smallest leaf --------------

struct Nested {
  int min_leaf;
  std::string text;
};

Nested NestRooted(const Network& net, int v, int from) {
  if (net.label(v) != 0) return {net.label(v), std::to_string(net.label(v))};
  std::vector<Nested> parts;
  for (int e : net.Incident(v)) {
    int w = net.Other(e, v);
    if (w == from) continue;
    if (net.mode() == Mode::kRooted && net.edge(e).u != v) continue;
    parts.push_back(NestRooted(net, w, v));
  }
  std::sort(parts.begin(), parts.end(), [](const Nested& a, const Nested& b) { return a.min_leaf < b.min_leaf; });
  Nested out{parts.front().min_leaf, "("};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.text.push_back(',');
    out.text += parts[i].text;
  }
  out.text.push_back(')');
  return out;
}

std::string TreeText(const Network& net) {
  if (net.mode() == Mode::kRooted) return NestRooted(net, net.Root(), -1).text;
  if (net.node_count() == 1) return "1";
  if (net.node_count() == 2) return "(1,2)";
  const int leaf = net.NodeOfLabel(1);
  const int hub = net.Other(net.Incident(leaf)[0], leaf);
  return NestRooted(net, hub, -1).text;
}

bool AllZero(const ReticulationLabelling* labels) {
  return labels == nullptr ||
         std::all_of(labels->labels.begin(), labels->labels.end(), [](int l) { return l == 0; });
}

// --- individualization-refinement ------------------------------------------

class Canonizer {
 public:
  Canonizer(const Network& net, const ReticulationLabelling* labels) : net_(net), labels_(labels) {}

  CanonicalForm Run() {
    const int nv = net_.node_count();
    // Initial colours from (label, in-degree, out-degree).
    std::vector<std::vector<int>> keys(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) keys[static_cast<std::size_t>(v)] = VertexKey(v);
    std::vector<int> colors = Rank(keys);
    Search(Refine(std::move(colors)));
    CanonicalForm form;
    form.code.bytes.push_back(static_cast<char>(CanonicalCode::kVersion));
    form.code.bytes.push_back(net_.mode() == Mode::kRooted ? kRootedNet : kUnrootedNet);
    form.code.bytes += best_code_;
    form.position = best_position_;
    form.automorphisms = best_count_;
    return form;
  }

 private:
  std::vector<int> VertexKey(int v) const {
    if (net_.mode() == Mode::kRooted) {
      return {net_.label(v), static_cast<int>(net_.InEdges(v).size()), static_cast<int>(net_.OutEdges(v).size())};
    }
    return {net_.label(v), net_.Degree(v)};
  }

  int EdgeColor(int e) const { return labels_ ? labels_->labels[static_cast<std::size_t>(e)] : 0; }

  static std::vector<int> Rank(const std::vector<std::vector<int>>& keys) {
    std::vector<int> order(keys.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)]; });
    std::vector<int> rank(keys.size());
    int r = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i == 0 || keys[static_cast<std::size_t>(order[i])] != keys[static_cast<std::size_t>(order[i - 1])]) ++r;
      rank[static_cast<std::size_t>(order[i])] = r;
    }
    return rank;
  }

  static int ClassCount(const std::vector<int>& colors) {
    return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  }

  std::vector<int> Refine(std::vector<int> colors) const {
    const int nv = net_.node_count();
    int classes = ClassCount(colors);
    while (true) {
      std::vector<std::vector<int>> sig(static_cast<std::size_t>(nv));
      for (int v = 0; v < nv; ++v) {
        auto& s = sig[static_cast<std::size_t>(v)];
        s.push_back(colors[static_cast<std::size_t>(v)]);
        std::vector<std::pair<int, int>> outs, ins;
        for (int e : net_.Incident(v)) {
          const int w = net_.Other(e, v);
          const bool outgoing = net_.mode() == Mode::kUnrooted || net_.edge(e).u == v;
          (outgoing ? outs : ins).push_back({EdgeColor(e), colors[static_cast<std::size_t>(w)]});
        }
        std::sort(outs.begin(), outs.end());
        std::sort(ins.begin(), ins.end());
        for (auto [c, w] : outs) {
          s.push_back(c);
          s.push_back(w);
        }
        s.push_back(-1);
        for (auto [c, w] : ins) {
          s.push_back(c);
          s.push_back(w);
        }
      }
      std::vector<int> next = Rank(sig);
      const int next_classes = ClassCount(next);
      colors = std::move(next);
      if (next_classes == classes) return colors;
      classes = next_classes;
    }
  }

  std::string CodeFor(const std::vector<int>& position) const {
    const int nv = net_.node_count();
    std::vector<int> at(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) at[static_cast<std::size_t>(position[static_cast<std::size_t>(v)])] = v;
    std::string out;
    PutInt(out, nv);
    PutInt(out, net_.edge_count());
    for (int i = 0; i < nv; ++i) {
      for (int k : VertexKey(at[static_cast<std::size_t>(i)])) PutInt(out, k);
    }
    std::vector<std::array<int, 3>> edges;
    edges.reserve(static_cast<std::size_t>(net_.edge_count()));
    for (int e = 0; e < net_.edge_count(); ++e) {
      int a = position[static_cast<std::size_t>(net_.edge(e).u)];
      int b = position[static_cast<std::size_t>(net_.edge(e).v)];
      if (net_.mode() == Mode::kUnrooted && a > b) std::swap(a, b);
      edges.push_back({a, b, EdgeColor(e)});
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) {
      for (int x : e) PutInt(out, x);
    }
    return out;
  }

  void Search(const std::vector<int>& colors) {
    const int nv = net_.node_count();
    const int classes = ClassCount(colors);
    if (classes == nv) {
      std::string code = CodeFor(colors);
      if (best_count_ == 0 || code < best_code_) {
        best_code_ = std::move(code);
        best_position_ = colors;
        best_count_ = 1;
      } else if (code == best_code_) {
        ++best_count_;
      }
      return;
    }
    // Target cell: smallest colour shared by several nodes.
    std::vector<int> size(static_cast<std::size_t>(classes), 0);
    for (int c : colors) ++size[static_cast<std::size_t>(c)];
    int cell = 0;
    while (size[static_cast<std::size_t>(cell)] < 2) ++cell;
    for (int v = 0; v < nv; ++v) {
      if (colors[static_cast<std::size_t>(v)] != cell) continue;
      std::vector<int> next(colors);
      for (int w = 0; w < nv; ++w) {
        const int c = colors[static_cast<std::size_t>(w)];
        if (c > cell || (c == cell && w != v)) next[static_cast<std::size_t>(w)] = c + 1;
      }
      Search(Refine(std::move(next)));
    }
  }

  const Network& net_;
  const ReticulationLabelling* labels_;
  std::string best_code_;
  std::vector<int> best_position_;
  std::uint64_t best_count_ = 0;
};

}  // namespace

CanonicalCode CanonicalCodeOf(const Network& net, const ReticulationLabelling* edge_labels) {
  if (net.IsTree() && AllZero(edge_labels) && ValidateTree(net).empty()) {
    CanonicalCode code;
    code.bytes.push_back(static_cast<char>(CanonicalCode::kVersion));
    code.bytes.push_back(net.mode() == Mode::kRooted ? kRootedTree : kUnrootedTree);
    code.bytes += TreeText(net);
    return code;
  }
  return Canonizer(net, edge_labels).Run().code;
}

CanonicalCode CanonicalCodeOf(const PhyloTree& tree) { return CanonicalCodeOf(tree.network()); }

CanonicalForm Canonicalize(const Network& net, const ReticulationLabelling* edge_labels) {
  CanonicalForm form = Canonizer(net, edge_labels).Run();
  if (net.IsTree() && AllZero(edge_labels) && ValidateTree(net).empty()) form.code = CanonicalCodeOf(net);
  return form;
}

bool AreIsomorphic(const Network& a, const Network& b) {
  if (a.mode() != b.mode()) throw Error(ErrorCode::kModeMismatch, "cannot compare rooted with unrooted graphs");
  return CanonicalCodeOf(a) == CanonicalCodeOf(b);
}

bool AreIsomorphic(const PhyloTree& a, const PhyloTree& b) { return AreIsomorphic(a.network(), b.network()); }

std::uint64_t AutomorphismCount(const Network& net, const ReticulationLabelling* edge_labels) {
  return Canonizer(net, edge_labels).Run().automorphisms;
}

std::vector<int> CanonicalEdgeOrder(const Network& net, const CanonicalForm& form) {
  std::vector<int> order(static_cast<std::size_t>(net.edge_count()));
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](int e) {
    int a = form.position[static_cast<std::size_t>(net.edge(e).u)];
    int b = form.position[static_cast<std::size_t>(net.edge(e).v)];
    if (net.mode() == Mode::kUnrooted && a > b) std::swap(a, b);
    return std::pair{a, b};
  };
  std::sort(order.begin(), order.end(), [&](int x, int y) { return key(x) < key(y); });
  return order;
}

}  // namespace retnet
