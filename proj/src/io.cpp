#include "retnet/io.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "retnet/canonical.hpp"
#include "retnet/error.hpp"

namespace retnet::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  Draft Parse() {
    SkipSpace();
    const int root = Subtree();
    SkipSpace();
    Expect(';');
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing characters after ';'");
    (void)root;
    return Compact();
  }

 private:
  int Subtree() {
    SkipSpace();
    if (Peek() == '(') {
      ++pos_;
      const int node = NewNode();
      while (true) {
        const auto slot = draft_.edges.size();
        draft_.edges.push_back({node, -1});
        const int child = Subtree();
        draft_.edges[slot].v = child;
        SkipSpace();
        if (Peek() == ',') {
          ++pos_;
          continue;
        }
        Expect(')');
        break;
      }
      SkipSpace();
      if (Peek() == '#') {
        const int k = Hybrid();
        auto it = hybrids_.find(k);
        if (it == hybrids_.end()) {
          hybrids_[k] = node;
          defined_.insert(k);
          return node;
        }
        if (!defined_.insert(k).second) Fail("reticulation #H" + std::to_string(k) + " defined twice");
        // An earlier bare reference created the node; move the children over.
        for (auto& e : draft_.edges) {
          if (e.u == node) e.u = it->second;
        }
        dead_.push_back(node);
        return it->second;
      }
      if (std::isdigit(static_cast<unsigned char>(Peek()))) Fail("internal nodes cannot carry labels");
      if (Peek() == ':') Fail("branch lengths are not supported");
      return node;
    }
    if (Peek() == '#') {
      const int k = Hybrid();
      auto it = hybrids_.find(k);
      if (it != hybrids_.end()) return it->second;
      const int node = NewNode();
      hybrids_[k] = node;
      return node;
    }
    if (!std::isdigit(static_cast<unsigned char>(Peek()))) Fail("expected '(' or a leaf label");
    const int label = Number();
    if (label <= 0) Fail("leaf labels must be positive");
    SkipSpace();
    if (Peek() == ':') Fail("branch lengths are not supported");
    if (Peek() == '#') Fail("leaves cannot be reticulations");
    return NewNode(label);
  }

  int Hybrid() {
    Expect('#');
    Expect('H');
    return Number();
  }

  int Number() {
    if (!std::isdigit(static_cast<unsigned char>(Peek()))) Fail("expected a number");
    long value = 0;
    while (std::isdigit(static_cast<unsigned char>(Peek()))) {
      value = value * 10 + (text_[pos_++] - '0');
      if (value > 1'000'000'000) Fail("number too large");
    }
    return static_cast<int>(value);
  }

  int NewNode(int label = 0) { return draft_.AddNode(label); }

  Draft Compact() {
    for (const auto& [k, node] : hybrids_) {
      if (!defined_.count(k)) Fail("reticulation #H" + std::to_string(k) + " is referenced but never defined");
    }
    std::vector<int> id(draft_.labels.size(), -1);
    std::vector<char> dead(draft_.labels.size(), 0);
    for (int d : dead_) dead[static_cast<std::size_t>(d)] = 1;
    Draft out{Mode::kRooted, {}, {}};
    for (std::size_t v = 0; v < draft_.labels.size(); ++v) {
      if (!dead[v]) id[v] = out.AddNode(draft_.labels[v]);
    }
    for (const Edge& e : draft_.edges) {
      out.edges.push_back({id[static_cast<std::size_t>(e.u)], id[static_cast<std::size_t>(e.v)]});
    }
    return out;
  }

  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void Expect(char c) {
    SkipSpace();
    if (Peek() != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void Fail(const std::string& what) const {
    throw Error(ErrorCode::kParse, what + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Draft draft_;
  std::map<int, int> hybrids_;
  std::set<int> defined_;
  std::vector<int> dead_;
};

// Unrooted reading: drop the orientation and splice out a degree-2 root.
Draft Unroot(Draft d) {
  d.mode = Mode::kUnrooted;
  if (d.node_count() < 3) return d;
  std::vector<int> indeg(d.labels.size(), 0);
  for (const Edge& e : d.edges) ++indeg[static_cast<std::size_t>(e.v)];
  int root = -1;
  for (int v = 0; v < d.node_count(); ++v) {
    if (indeg[static_cast<std::size_t>(v)] == 0) root = v;
  }
  std::vector<int> root_edges;
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    if (d.edges[static_cast<std::size_t>(e)].u == root) root_edges.push_back(e);
  }
  if (root < 0 || d.labels[static_cast<std::size_t>(root)] != 0 || root_edges.size() != 2) return d;
  const int a = d.edges[static_cast<std::size_t>(root_edges[0])].v;
  const int b = d.edges[static_cast<std::size_t>(root_edges[1])].v;
  d.edges[static_cast<std::size_t>(root_edges[0])] = {a, b};
  d.edges.erase(d.edges.begin() + root_edges[1]);
  // Remove the root id by swapping the last node into its place.
  const int last = d.node_count() - 1;
  for (Edge& e : d.edges) {
    if (e.u == last) e.u = root;
    if (e.v == last) e.v = root;
  }
  d.labels[static_cast<std::size_t>(root)] = d.labels[static_cast<std::size_t>(last)];
  d.labels.pop_back();
  return d;
}

struct MinLeaf {
  const Network& net;
  std::vector<int> memo;

  int operator()(int v) {
    auto& m = memo[static_cast<std::size_t>(v)];
    if (m) return m;
    if (net.label(v) != 0) return m = net.label(v);
    int best = INT32_MAX;
    for (int e : net.OutEdges(v)) best = std::min(best, (*this)(net.edge(e).v));
    return m = best;
  }
};

class NewickWriter {
 public:
  NewickWriter(const Network& net, std::vector<int> rank) : net_(net), rank_(std::move(rank)) {}

  Serialized Run(int start, int from) {
    Emit(start, from);
    out_.text.push_back(';');
    return std::move(out_);
  }

 private:
  void Emit(int v, int from) {
    if (net_.label(v) != 0) {
      out_.text += std::to_string(net_.label(v));
      return;
    }
    const bool reticulation = net_.mode() == Mode::kRooted && net_.InEdges(v).size() >= 2;
    int tag = 0;
    if (reticulation) {
      auto [it, fresh] = tags_.try_emplace(v, static_cast<int>(tags_.size()) + 1);
      if (!fresh) {
        out_.text += "#H" + std::to_string(it->second);
        return;
      }
      tag = it->second;
    }
    std::vector<int> kids;
    for (int e : net_.Incident(v)) {
      if (net_.Other(e, v) == from && net_.mode() == Mode::kUnrooted) continue;
      if (net_.mode() == Mode::kRooted && net_.edge(e).u != v) continue;
      kids.push_back(e);
    }
    std::sort(kids.begin(), kids.end(), [&](int a, int b) {
      return rank_[static_cast<std::size_t>(net_.Other(a, v))] < rank_[static_cast<std::size_t>(net_.Other(b, v))];
    });
    out_.text.push_back('(');
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i) out_.text.push_back(',');
      out_.edge_order.push_back(kids[i]);
      Emit(net_.Other(kids[i], v), v);
    }
    out_.text.push_back(')');
    if (tag) out_.text += "#H" + std::to_string(tag);
  }

  const Network& net_;
  std::vector<int> rank_;
  std::map<int, int> tags_;
  Serialized out_;
};

}  // namespace

Network ParseNewick(std::string_view text, Mode mode) {
  Draft d = NewickParser(text).Parse();
  if (mode == Mode::kUnrooted) {
    for (int v = 0; v < d.node_count(); ++v) {
      int indeg = 0;
      for (const Edge& e : d.edges) indeg += e.v == v ? 1 : 0;
      if (indeg > 1) throw Error(ErrorCode::kParse, "unrooted Newick cannot contain reticulations");
    }
    d = Unroot(std::move(d));
  }
  return Network(d);
}

PhyloTree ParseTree(std::string_view text, Mode mode) { return PhyloTree(ParseNewick(text, mode)); }

Serialized WriteNewick(const Network& net) {
  if (net.node_count() == 1) return {std::to_string(net.label(0)) + ";", {}};
  if (net.mode() == Mode::kUnrooted) {
    if (!net.IsTree()) throw Error(ErrorCode::kInvalid, "unrooted networks are written as JSON");
    if (net.node_count() == 2) return {"(" + std::to_string(std::min(net.label(0), net.label(1))) + "," +
                                           std::to_string(std::max(net.label(0), net.label(1))) + ");",
                                       {0}};
    // Hang the tree from the neighbour of leaf 1, children by smallest leaf.
    const int leaf = net.NodeOfLabel(1);
    const int hub = net.Other(net.Incident(leaf)[0], leaf);
    std::vector<int> rank(static_cast<std::size_t>(net.node_count()), 0);
    // Smallest leaf on the far side of each edge seen from the hub.
    std::function<int(int, int)> smallest = [&](int v, int from) {
      if (net.label(v) != 0) return rank[static_cast<std::size_t>(v)] = net.label(v);
      int best = INT32_MAX;
      for (int e : net.Incident(v)) {
        const int w = net.Other(e, v);
        if (w != from) best = std::min(best, smallest(w, v));
      }
      return rank[static_cast<std::size_t>(v)] = best;
    };
    smallest(hub, -1);
    return NewickWriter(net, std::move(rank)).Run(hub, -1);
  }
  if (net.IsTree()) {
    MinLeaf min_leaf{net, std::vector<int>(static_cast<std::size_t>(net.node_count()), 0)};
    std::vector<int> rank(static_cast<std::size_t>(net.node_count()));
    for (int v = 0; v < net.node_count(); ++v) rank[static_cast<std::size_t>(v)] = min_leaf(v);
    return NewickWriter(net, std::move(rank)).Run(net.Root(), -1);
  }
  CanonicalForm form = Canonicalize(net);
  return NewickWriter(net, form.position).Run(net.Root(), -1);
}

std::string WriteTree(const PhyloTree& tree) { return WriteNewick(tree.network()).text; }

Network ParseJson(std::string_view text, Mode mode) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  try {
    if (doc.contains("mode")) mode = ParseMode(doc.at("mode").get<std::string>());
    std::map<long, int> id;
    Draft d{mode, {}, {}};
    for (const auto& node : doc.at("nodes")) {
      if (!id.emplace(node.get<long>(), d.node_count()).second) throw Error(ErrorCode::kParse, "duplicate node id");
      d.AddNode();
    }
    auto lookup = [&](const json& x) {
      auto it = id.find(x.get<long>());
      if (it == id.end()) throw Error(ErrorCode::kParse, "unknown node id " + x.dump());
      return it->second;
    };
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::kParse, "edges must be pairs");
      d.edges.push_back({lookup(e[0]), lookup(e[1])});
    }
    for (const auto& [label, node] : doc.at("leaves").items()) {
      const int l = std::stoi(label);
      if (l <= 0) throw Error(ErrorCode::kParse, "leaf labels must be positive");
      d.labels[static_cast<std::size_t>(lookup(node))] = l;
    }
    return Network(d);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

Serialized WriteJson(const Network& net) {
  CanonicalForm form = Canonicalize(net);
  const auto& pos = form.position;
  std::vector<int> order = CanonicalEdgeOrder(net, form);
  ordered_json doc;
  doc["nodes"] = ordered_json::array();
  for (int i = 0; i < net.node_count(); ++i) doc["nodes"].push_back(i);
  doc["edges"] = ordered_json::array();
  for (int e : order) {
    int a = pos[static_cast<std::size_t>(net.edge(e).u)];
    int b = pos[static_cast<std::size_t>(net.edge(e).v)];
    if (net.mode() == Mode::kUnrooted && a > b) std::swap(a, b);
    doc["edges"].push_back({a, b});
  }
  std::vector<std::pair<int, int>> leaves;
  for (int v = 0; v < net.node_count(); ++v) {
    if (net.label(v) != 0) leaves.push_back({net.label(v), pos[static_cast<std::size_t>(v)]});
  }
  std::sort(leaves.begin(), leaves.end());
  doc["leaves"] = ordered_json::object();
  for (auto [label, node] : leaves) doc["leaves"][std::to_string(label)] = node;
  if (net.mode() == Mode::kRooted) doc["mode"] = "rooted";
  return {doc.dump(), order};
}

Serialized Write(const Network& net) {
  if (net.mode() == Mode::kUnrooted && !net.IsTree()) return WriteJson(net);
  return WriteNewick(net);
}

Network Read(std::string_view text, Mode mode) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return ParseJson(text, mode);
  return ParseNewick(text, mode);
}

std::string WriteEdgeLabels(const Serialized& layout, const ReticulationLabelling& labels) {
  json doc;
  doc["edge_labels"] = json::array();
  for (int e : layout.edge_order) doc["edge_labels"].push_back(labels.labels[static_cast<std::size_t>(e)]);
  return doc.dump();
}

ReticulationLabelling ParseEdgeLabels(std::string_view text, int edge_count) {
  try {
    json doc = json::parse(text);
    ReticulationLabelling out;
    for (const auto& l : doc.at("edge_labels")) out.labels.push_back(l.get<int>());
    if (static_cast<int>(out.labels.size()) != edge_count) {
      throw Error(ErrorCode::kParse, "edge label count " + std::to_string(out.labels.size()) +
                                         " does not match " + std::to_string(edge_count) + " edges");
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace retnet::io
