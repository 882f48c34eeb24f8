#include <gtest/gtest.h>

#include <map>
#include <random>
#include <regex>
#include <set>

#include "oracles.hpp"
#include "retnet/canonical.hpp"
#include "retnet/display.hpp"
#include "retnet/enumerate.hpp"
#include "retnet/error.hpp"
#include "retnet/io.hpp"

using namespace retnet;

namespace {

TreeSet RandomTreeSet(int n, int t, std::mt19937_64& rng) {
  std::vector<PhyloTree> trees;
  std::set<CanonicalCode> seen;
  while (static_cast<int>(trees.size()) < t) {
    PhyloTree tree(oracle::RandomTree(n, Mode::kRooted, rng));
    if (seen.insert(CanonicalCodeOf(tree)).second) trees.push_back(std::move(tree));
  }
  return TreeSet(std::move(trees));
}

}  // namespace

TEST(Display, TreeDisplaysOnlyItself) {
  const PhyloTree a = io::ParseTree("((1,2),(3,4));", Mode::kRooted);
  const PhyloTree b = io::ParseTree("((1,3),(2,4));", Mode::kRooted);
  EXPECT_TRUE(Displays(a.network(), a).displayed);
  EXPECT_FALSE(Displays(a.network(), b).displayed);
  const auto shown = DisplayedTrees(a.network());
  ASSERT_EQ(shown.size(), 1u);
  EXPECT_TRUE(AreIsomorphic(shown[0], a));
}

TEST(Display, Errors) {
  const PhyloTree a = io::ParseTree("((1,2),3);", Mode::kRooted);
  const PhyloTree u = io::ParseTree("(1,2,3);", Mode::kUnrooted);
  const PhyloTree big = io::ParseTree("((1,2),(3,4));", Mode::kRooted);
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalid;
  };
  EXPECT_EQ(code([&] { Displays(a.network(), u); }), ErrorCode::kModeMismatch);
  EXPECT_EQ(code([&] { Displays(a.network(), big); }), ErrorCode::kLeafsetMismatch);
  const Network net = EnumerateNetworks(3, 2, Mode::kRooted).front();
  DisplayOptions tiny;
  tiny.switching_limit = 2;
  EXPECT_EQ(code([&] { DisplayedTrees(net, tiny); }), ErrorCode::kBudgetExceeded);
}

TEST(Display, WitnessCertifiesTheTree) {
  for (const auto& net : EnumerateNetworks(3, 2, Mode::kRooted)) {
    for (const auto& tree : EnumerateTrees(3, Mode::kRooted)) {
      const DisplayResult res = Displays(net, tree);
      if (!res.displayed) continue;
      ASSERT_TRUE(res.witness.has_value());
      EXPECT_TRUE(AreIsomorphic(DisplayedTree(net, *res.witness), tree));
    }
  }
}

TEST(Display, AgreesWithSubgraphSearch) {
  for (Mode mode : {Mode::kRooted, Mode::kUnrooted}) {
    for (int n = 2; n <= 3; ++n) {
      for (int r = 0; r <= 1; ++r) {
        for (const auto& net : EnumerateNetworks(n, r, mode)) {
          for (const auto& tree : EnumerateTrees(n, mode)) {
            EXPECT_EQ(Displays(net, tree).displayed, oracle::DisplaysBySubgraph(net, tree.network()));
          }
        }
      }
    }
  }
}

TEST(Display, AtMostTwoToTheR) {
  bool collision = false;
  for (int r = 0; r <= 2; ++r) {
    for (const auto& net : EnumerateNetworks(3, r, Mode::kRooted)) {
      const std::size_t k = DisplayedTrees(net).size();
      EXPECT_LE(k, std::size_t{1} << r);
      collision |= k < (std::size_t{1} << r);
    }
  }
  EXPECT_TRUE(collision);
}

TEST(Display, EmbeddingIsASubdivision) {
  for (Mode mode : {Mode::kRooted, Mode::kUnrooted}) {
    for (const auto& net : EnumerateNetworks(3, 2, mode)) {
      for (const auto& sw : EnumerateSwitchings(net)) {
        const std::vector<int> emb = Embedding(net, sw);
        std::set<int> touched;
        for (int e : emb) {
          touched.insert(net.edge(e).u);
          touched.insert(net.edge(e).v);
        }
        for (int x = 1; x <= net.leaf_count(); ++x) EXPECT_TRUE(touched.count(net.NodeOfLabel(x)));
        // Keep only the nodes the embedding uses.
        Draft d{mode, {}, {}};
        std::map<int, int> id;
        for (int v : touched) id[v] = d.AddNode(net.label(v));
        for (int e : emb) d.edges.push_back({id[net.edge(e).u], id[net.edge(e).v]});
        EXPECT_TRUE(AreIsomorphic(Suppress(d), DisplayedTree(net, sw)));
      }
    }
  }
}

TEST(TrivialNetwork, SingleTree) {
  const PhyloTree a = io::ParseTree("((1,2),3);", Mode::kRooted);
  const Network net = TrivialNetwork(TreeSet({a}));
  EXPECT_EQ(net.ReticulationCount(), 0);
  EXPECT_TRUE(AreIsomorphic(net, a.network()));
}

TEST(TrivialNetwork, RandomSets) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const int t = 2 + static_cast<int>(rng() % 2);
    const TreeSet set = RandomTreeSet(n, t, rng);
    const Network net = TrivialNetwork(set);
    EXPECT_TRUE(Validate(net).empty());
    EXPECT_EQ(net.ReticulationCount(), (t - 1) * n);
    const auto selectors = TrivialNetworkSelectors(set);
    ASSERT_EQ(selectors.size(), set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
      EXPECT_TRUE(AreIsomorphic(DisplayedTree(net, selectors[i]), set.trees()[i]));
      if (n <= 4) EXPECT_TRUE(Displays(net, set.trees()[i]).displayed);
    }
  }
}

TEST(TrivialNetwork, EightLeavesThreeTrees) {
  std::mt19937_64 rng(8);
  const TreeSet set = RandomTreeSet(8, 3, rng);
  const Network net = TrivialNetwork(set);
  EXPECT_EQ(net.ReticulationCount(), 16);
  const std::string text = io::WriteNewick(net).text;
  std::set<std::string> tags;
  const std::regex tag("#H[0-9]+");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), tag); it != std::sregex_iterator(); ++it) {
    tags.insert(it->str());
  }
  EXPECT_EQ(tags.size(), 16u);
}

TEST(TrivialNetwork, RejectsUnrooted) {
  const PhyloTree u = io::ParseTree("(1,2,3);", Mode::kUnrooted);
  EXPECT_THROW(TrivialNetwork(TreeSet({u})), Error);
}
