#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "retnet/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = retnet::cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string TempFile(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("retnet_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, TreeCount) {
  const Outcome o = Call({"trees", "--n", "4", "--mode", "rooted", "--count-only"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "15\n");
  EXPECT_EQ(Call({"--mode", "unrooted", "trees", "--n", "6", "--count-only"}).out, "105\n");
}

TEST(Cli, LemmasAsCsv) {
  const Outcome o = Call({"verify", "--lemmas", "--kmax", "64"});
  EXPECT_EQ(o.code, 0);
  std::istringstream lines(o.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "name,params,lhs,relation,rhs,holds");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "true") << line;
  }
  EXPECT_GT(rows, 100);
}

TEST(Cli, UsageErrorsExitTwo) {
  const Outcome o = Call({"trees", "--n", "3", "--bogus"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("--bogus"), std::string::npos);
  EXPECT_EQ(Call({"trees"}).code, 2);
  EXPECT_EQ(Call({"--help"}).code, 0);
}

TEST(Cli, DomainErrorsExitOne) {
  const Outcome o = Call({"bounds", "--stmt", "network_count_bound", "--n", "3", "--r", "0"});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("DOMAIN"), std::string::npos);
}

TEST(Cli, TrivialAndMinret) {
  const std::string a = TempFile("a.nwk", "((1,2),3);\n");
  const std::string b = TempFile("b.nwk", "((1,3),2);\n");
  const Outcome t = Call({"trivial", "--trees", a, b});
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("#H3"), std::string::npos);
  const Outcome m = Call({"minret", "--trees", a, b});
  EXPECT_EQ(m.code, 0);
  EXPECT_NE(m.out.find("\"r\":1"), std::string::npos) << m.out;
}

TEST(Cli, DecodeOutsideImage) {
  const std::string tree = TempFile("c.nwk", "((((1,2),3),4),5);\n");
  const Outcome o = Call({"decode", "--tree", tree, "--n", "3", "--r", "1"});
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(o.err.rfind("NOT_IN_IMAGE", 0), 0u) << o.err;
}

TEST(Cli, JobsDoNotChangeOutput) {
  for (const char* mode : {"rooted", "unrooted"}) {
    const Outcome one = Call({"--mode", mode, "--jobs", "1", "networks", "--n", "3", "--r", "2"});
    const Outcome four = Call({"--mode", mode, "--jobs", "4", "networks", "--n", "3", "--r", "2"});
    EXPECT_EQ(one.code, 0);
    EXPECT_EQ(one.out, four.out);
  }
}

TEST(Cli, BinaryRuns) {
  const std::string cmd = std::string(RETNET_CLI_PATH) + " trees --n 5 --count-only";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  char buf[64] = {};
  ASSERT_NE(fgets(buf, sizeof buf, pipe), nullptr);
  EXPECT_EQ(pclose(pipe), 0);
  EXPECT_EQ(std::string(buf), "105\n");
}
