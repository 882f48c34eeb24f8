#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "retnet/canonical.hpp"
#include "retnet/enumerate.hpp"
#include "retnet/error.hpp"
#include "retnet/io.hpp"

using namespace retnet;

TEST(Newick, TreeRoundTrip) {
  EXPECT_EQ(io::WriteTree(io::ParseTree("(3,(2,1));", Mode::kRooted)), "((1,2),3);");
  EXPECT_EQ(io::WriteTree(io::ParseTree("1;", Mode::kRooted)), "1;");
  EXPECT_EQ(io::WriteTree(io::ParseTree("(2,1);", Mode::kUnrooted)), "(1,2);");
  const PhyloTree u = io::ParseTree("((1,2),(3,4));", Mode::kUnrooted);
  EXPECT_TRUE(ValidateTree(u.network()).empty());
  EXPECT_EQ(io::WriteTree(u), io::WriteTree(io::ParseTree("(1,2,(3,4));", Mode::kUnrooted)));
}

TEST(Newick, RejectsMalformedInput) {
  for (const char* bad : {"((1,2),3", "((1,2),3):", "((1:0.5,2),3);", "((1,2)x,3);", "((1,2),#H1);"}) {
    try {
      io::ParseNewick(bad, Mode::kRooted);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::kParse || e.code() == ErrorCode::kInvalid) << bad;
    }
  }
}

TEST(Newick, ReticulationTags) {
  const Network a = io::ParseNewick("((1,(2)#H1),(#H1,3));", Mode::kRooted);
  const Network b = io::ParseNewick("((3,#H1),((2)#H1,1));", Mode::kRooted);
  EXPECT_EQ(CanonicalCodeOf(a), CanonicalCodeOf(b));
  EXPECT_EQ(io::WriteNewick(a).text, io::WriteNewick(b).text);
}

TEST(Serialize, CanonicalAndStable) {
  std::mt19937_64 rng(3);
  for (Mode mode : {Mode::kRooted, Mode::kUnrooted}) {
    for (int n = 1; n <= 3; ++n) {
      for (int r = 0; r <= 2; ++r) {
        for (const auto& net : EnumerateNetworks(n, r, mode)) {
          const std::string text = io::Write(net).text;
          const Network back = io::Read(text, mode);
          ASSERT_TRUE(oracle::Isomorphic(net, back)) << text;
          EXPECT_EQ(io::Write(back).text, text);
          std::vector<int> perm(static_cast<std::size_t>(net.node_count()));
          std::iota(perm.begin(), perm.end(), 0);
          std::shuffle(perm.begin(), perm.end(), rng);
          EXPECT_EQ(io::Write(Permute(net, perm)).text, text);
        }
      }
    }
  }
}

TEST(Serialize, JsonForRootedNetworksToo) {
  const Network net = io::ParseNewick("((1,(2)#H1),(#H1,3));", Mode::kRooted);
  const std::string json = io::WriteJson(net).text;
  EXPECT_NE(json.find("\"mode\":\"rooted\""), std::string::npos);
  EXPECT_EQ(CanonicalCodeOf(io::ParseJson(json)), CanonicalCodeOf(net));
}

TEST(EdgeLabels, SidecarRoundTrip) {
  for (Mode mode : {Mode::kRooted, Mode::kUnrooted}) {
    for (const auto& net : EnumerateNetworks(3, 2, mode)) {
      const Switching sw = FixedSwitching(net);
      for (const auto& lab : ReticulationLabellings(net, sw)) {
        const io::Serialized s = io::Write(net);
        const std::string sidecar = io::WriteEdgeLabels(s, lab);
        const Network back = io::Read(s.text, mode);
        const ReticulationLabelling back_lab = io::ParseEdgeLabels(sidecar, back.edge_count());
        EXPECT_EQ(CanonicalCodeOf(back, &back_lab), CanonicalCodeOf(net, &lab)) << s.text << " " << sidecar;
      }
    }
  }
}

TEST(EdgeLabels, RejectsWrongLength) {
  EXPECT_THROW(io::ParseEdgeLabels(R"({"edge_labels":[0,1]})", 5), Error);
}
