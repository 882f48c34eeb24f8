#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "oracles.hpp"
#include "retnet/canonical.hpp"
#include "retnet/codec.hpp"
#include "retnet/enumerate.hpp"
#include "retnet/error.hpp"

using namespace retnet;

namespace {

std::set<CanonicalCode> Codes(const std::vector<Network>& nets) {
  std::set<CanonicalCode> out;
  for (const auto& n : nets) out.insert(CanonicalCodeOf(n));
  return out;
}

}  // namespace

TEST(EnumerateTrees, CountsAreDoubleFactorials) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(BigInt(EnumerateTrees(n, Mode::kRooted).size()), oracle::DoubleFactorialLoop(2 * n - 3)) << n;
  }
  for (int n = 1; n <= 7; ++n) {
    EXPECT_EQ(BigInt(EnumerateTrees(n, Mode::kUnrooted).size()), oracle::DoubleFactorialLoop(2 * n - 5)) << n;
  }
}

TEST(EnumerateTrees, SameClassesAsSplitGenerator) {
  for (Mode mode : {Mode::kRooted, Mode::kUnrooted}) {
    for (int n = 1; n <= 6; ++n) {
      std::vector<Network> mine;
      for (const auto& t : EnumerateTrees(n, mode)) mine.push_back(t.network());
      const auto theirs = oracle::AllTrees(n, mode);
      EXPECT_EQ(theirs.size(), mine.size());
      EXPECT_EQ(Codes(mine), Codes(theirs));
    }
  }
}

TEST(EnumerateNetworks, SortedAndDistinct) {
  for (Mode mode : {Mode::kRooted, Mode::kUnrooted}) {
    const auto nets = EnumerateNetworks(3, 2, mode);
    for (std::size_t i = 1; i < nets.size(); ++i) EXPECT_LT(CanonicalCodeOf(nets[i - 1]), CanonicalCodeOf(nets[i]));
  }
}

// Every network arises as decode(tree) for some tree on n + 2r leaves, so
// decoding all such trees yields the full class independently of augmentation.
TEST(EnumerateNetworks, CompleteAgainstDecodeRoute) {
  const std::vector<std::tuple<Mode, int, int>> cases = {
      {Mode::kRooted, 2, 1},   {Mode::kRooted, 2, 2},   {Mode::kRooted, 3, 1}, {Mode::kRooted, 3, 2},
      {Mode::kRooted, 4, 1},   {Mode::kUnrooted, 3, 1}, {Mode::kUnrooted, 3, 2},
      {Mode::kUnrooted, 4, 1}, {Mode::kUnrooted, 4, 2}, {Mode::kUnrooted, 2, 2}};
  for (const auto& [mode, n, r] : cases) {
    std::set<CanonicalCode> decoded;
    for (const auto& tree : oracle::AllTrees(n + 2 * r, mode)) {
      const DecodeResult d = DecodeTau(PhyloTree(tree), n, r);
      if (d.ok()) decoded.insert(CanonicalCodeOf(d.value->network));
    }
    EXPECT_EQ(Codes(EnumerateNetworks(n, r, mode)), decoded) << ModeName(mode) << " n=" << n << " r=" << r;
  }
}

TEST(EnumerateNetworks, IndependentOfJobs) {
  EnumerateOptions one;
  EnumerateOptions four;
  four.jobs = 4;
  for (Mode mode : {Mode::kRooted, Mode::kUnrooted}) {
    const auto a = EnumerateNetworks(3, 2, mode, one);
    const auto b = EnumerateNetworks(3, 2, mode, four);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(CanonicalCodeOf(a[i]), CanonicalCodeOf(b[i]));
  }
}

TEST(EnumerateNetworks, LeafConnectingFilter) {
  EnumerateOptions all;
  all.leaf_connecting_only = false;
  const auto every = EnumerateNetworks(4, 2, Mode::kUnrooted, all);
  const auto lc = EnumerateNetworks(4, 2, Mode::kUnrooted);
  EXPECT_LE(lc.size(), every.size());
  for (const auto& net : lc) EXPECT_TRUE(oracle::LeafConnecting(net));
}

TEST(Budget, ChecksAndEnvironment) {
  Budget b;
  EXPECT_NO_THROW(b.Check(4, 4, Mode::kRooted));
  try {
    b.Check(5, 4, Mode::kRooted);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudgetExceeded);
  }
  setenv("RETNET_BUDGET", "rooted=14,unrooted=11", 1);
  const Budget env = Budget::FromEnv();
  EXPECT_EQ(env.rooted, 14);
  EXPECT_EQ(env.unrooted, 11);
  setenv("RETNET_BUDGET", "9", 1);
  EXPECT_EQ(Budget::FromEnv().rooted, 9);
  EXPECT_EQ(Budget::FromEnv().unrooted, 9);
  unsetenv("RETNET_BUDGET");
}

TEST(Switchings, CountsMatchFormulas) {
  for (int n = 2; n <= 3; ++n) {
    for (int r = 0; r <= 2; ++r) {
      for (const auto& net : EnumerateNetworks(n, r, Mode::kRooted)) {
        EXPECT_EQ(EnumerateSwitchings(net).size(), std::size_t{1} << r);
      }
      for (const auto& net : EnumerateNetworks(n + 1, r, Mode::kUnrooted)) {
        EXPECT_EQ(BigInt(EnumerateSwitchings(net).size()), oracle::SpanningTreeCount(net));
      }
    }
  }
}

TEST(Labellings, FactorialManyAndValid) {
  for (Mode mode : {Mode::kRooted, Mode::kUnrooted}) {
    for (const auto& net : EnumerateNetworks(3, 2, mode)) {
      const Switching sw = FixedSwitching(net);
      EXPECT_TRUE(Validate(net, sw).empty());
      const auto labs = ReticulationLabellings(net, sw);
      EXPECT_EQ(labs.size(), 2u);
      for (const auto& lab : labs) {
        EXPECT_TRUE(Validate(net, lab).empty());
        EXPECT_EQ(lab.Restrict(), sw);
      }
    }
  }
}

TEST(Labellings, RejectForeignSwitching) {
  const auto nets = EnumerateNetworks(3, 1, Mode::kRooted);
  Switching wrong{std::vector<bool>(static_cast<std::size_t>(nets[0].edge_count()), true)};
  try {
    ReticulationLabellings(nets[0], wrong);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSwitchingMismatch);
  }
}

TEST(FixedSwitching, InvariantUnderRelabelling) {
  for (const auto& net : EnumerateNetworks(3, 2, Mode::kRooted)) {
    std::vector<int> perm(static_cast<std::size_t>(net.node_count()));
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(perm.size() - 1 - i);
    const Network other = Permute(net, perm);
    std::set<CanonicalCode> mine, theirs;
    for (const auto& lab : ReticulationLabellings(net, FixedSwitching(net))) mine.insert(CanonicalCodeOf(net, &lab));
    for (const auto& lab : ReticulationLabellings(other, FixedSwitching(other))) theirs.insert(CanonicalCodeOf(other, &lab));
    EXPECT_EQ(mine, theirs);
  }
}
