#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "retnet/canonical.hpp"
#include "retnet/codec.hpp"
#include "retnet/enumerate.hpp"
#include "retnet/error.hpp"
#include "retnet/io.hpp"

using namespace retnet;

TEST(Tau, IdentityOnTrees) {
  const PhyloTree t = io::ParseTree("((1,2),(3,4));", Mode::kRooted);
  ReticulationLabelling none{std::vector<int>(static_cast<std::size_t>(t.network().edge_count()), 0)};
  EXPECT_TRUE(AreIsomorphic(EncodeTau(t.network(), none), t));
  const DecodeResult d = DecodeTau(t, 4, 0);
  ASSERT_TRUE(d.ok());
  EXPECT_TRUE(AreIsomorphic(d.value->network, t.network()));
}

TEST(Tau, RoundTripOverAllLabelledNetworks) {
  for (Mode mode : {Mode::kRooted, Mode::kUnrooted}) {
    for (int n = 2; n <= 3; ++n) {
      for (int r = 1; r <= 2; ++r) {
        for (const auto& net : EnumerateNetworks(n, r, mode)) {
          for (const auto& sw : EnumerateSwitchings(net)) {
            for (const auto& lab : ReticulationLabellings(net, sw)) {
              const PhyloTree tree = EncodeTau(net, lab);
              ASSERT_EQ(tree.leaf_count(), n + 2 * r);
              const DecodeResult back = DecodeTau(tree, n, r);
              ASSERT_TRUE(back.ok()) << back.violation;
              EXPECT_TRUE(oracle::Isomorphic(back.value->network, net, &back.value->labelling.labels, &lab.labels));
            }
          }
        }
      }
    }
  }
}

TEST(Tau, EncodeInvertsDecodeOnTheImage) {
  for (Mode mode : {Mode::kRooted, Mode::kUnrooted}) {
    int hits = 0;
    for (const auto& t : oracle::AllTrees(5, mode)) {
      const PhyloTree tree(t);
      const DecodeResult d = DecodeTau(tree, 3, 1);
      if (!d.ok()) continue;
      ++hits;
      EXPECT_TRUE(oracle::Isomorphic(EncodeTau(d.value->network, d.value->labelling).network(), t));
    }
    EXPECT_GT(hits, 0);
  }
}

TEST(Tau, MostRandomTreesAreOutsideTheImage) {
  std::mt19937_64 rng(99);
  int rejected = 0;
  for (int i = 0; i < 1000; ++i) {
    const DecodeResult d = DecodeTau(PhyloTree(oracle::RandomTree(8, Mode::kRooted, rng)), 4, 2);
    if (!d.ok()) {
      ++rejected;
      EXPECT_FALSE(d.violation.empty());
    }
  }
  EXPECT_GT(rejected, 500);
}

TEST(Tau, RejectsBadLabellings) {
  const Network net = io::ParseNewick("((1,(2)#H1),(#H1,3));", Mode::kRooted);
  ReticulationLabelling all_zero{std::vector<int>(static_cast<std::size_t>(net.edge_count()), 0)};
  try {
    EncodeTau(net, all_zero);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidLabelling);
  }
}

TEST(Tau, DecodeChecksLeafCount) {
  const PhyloTree t = io::ParseTree("((1,2),3);", Mode::kRooted);
  try {
    DecodeTau(t, 2, 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalid);
  }
}

TEST(Tau, PairLabelsFollowTheEdge) {
  const Network net = io::ParseNewick("((1,(2)#H1),(#H1,3));", Mode::kRooted);
  const auto sw = EnumerateSwitchings(net).front();
  const auto lab = ReticulationLabellings(net, sw).front();
  const Network tree = EncodeTau(net, lab).network();
  // Leaf 4 hangs under the tail of the off edge, leaf 5 under its head.
  int off = -1;
  for (int e = 0; e < net.edge_count(); ++e) {
    if (lab.labels[static_cast<std::size_t>(e)] == 1) off = e;
  }
  ASSERT_GE(off, 0);
  const int z = tree.NodeOfLabel(4);
  const int z2 = tree.NodeOfLabel(5);
  const int pz = tree.edge(tree.InEdges(z)[0]).u;
  const int pz2 = tree.edge(tree.InEdges(z2)[0]).u;
  // Head side carries the reticulation's child (leaf 2) below it.
  EXPECT_EQ(tree.OutEdges(pz2).size(), 2u);
  EXPECT_NE(pz, pz2);
  bool sees_two = false;
  for (int e : tree.OutEdges(pz2)) sees_two |= tree.label(tree.edge(e).v) == 2;
  EXPECT_TRUE(sees_two);
}
