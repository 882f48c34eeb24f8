// Exit-gate checks. One PASS/FAIL line per criterion; nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "retnet/bounds.hpp"
#include "retnet/canonical.hpp"
#include "retnet/codec.hpp"
#include "retnet/display.hpp"
#include "retnet/enumerate.hpp"
#include "retnet/solver.hpp"

using namespace retnet;

namespace {

// Wall-clock limits, seconds.
constexpr double kTreesLimit = 60;
constexpr double kLemmasLimit = 5;
constexpr double kCodecLimit = 300;
constexpr double kWorstLimit = 600;
constexpr double kFormulaLimit = 120;
constexpr double kFormulaRadius = 1e-20;

struct Check {
  bool ok = true;
  std::ostringstream why;
  void Require(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

int failures = 0;

void Criterion(int id, const std::string& title, double limit, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.Require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0) c.Require(secs < limit, "took " + std::to_string(secs) + " s");
  if (!c.ok) ++failures;
  std::printf("%s %d %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(), secs, c.ok ? "" : ": ",
              c.ok ? "" : c.why.str().c_str());
  std::fflush(stdout);
}

std::string Tag(Mode mode, int n, int r) {
  return std::string(ModeName(mode)) + " n=" + std::to_string(n) + " r=" + std::to_string(r);
}

struct CodecCase {
  Mode mode;
  int n;
  int r;
};

std::vector<CodecCase> CodecSweep() {
  std::vector<CodecCase> out;
  for (int n = 1; n <= 3; ++n) {
    for (int r = 0; r <= 2; ++r) out.push_back({Mode::kRooted, n, r});
  }
  for (int r = 0; r <= 1; ++r) out.push_back({Mode::kRooted, 4, r});
  for (int n = 1; n <= 4; ++n) {
    for (int r = 0; r <= 1; ++r) out.push_back({Mode::kUnrooted, n, r});
  }
  return out;
}

// Filled by criterion 3, checked by criterion 4.
std::vector<LabelledNetwork> sweep;

}  // namespace

int main() {
  Criterion(1, "tree counts", kTreesLimit, [](Check& c) {
    for (int n = 1; n <= 7; ++n) {
      c.Require(BigInt(EnumerateTrees(n, Mode::kRooted).size()) == oracle::DoubleFactorialLoop(2 * n - 3),
                "rooted n=" + std::to_string(n));
    }
    c.Require(EnumerateTrees(7, Mode::kRooted).size() == 10395, "rooted n=7 != 10395");
    for (int n = 1; n <= 8; ++n) {
      c.Require(BigInt(EnumerateTrees(n, Mode::kUnrooted).size()) == oracle::DoubleFactorialLoop(2 * n - 5),
                "unrooted n=" + std::to_string(n));
    }
  });

  Criterion(2, "lemma suite", kLemmasLimit, [](Check& c) {
    const auto reports = VerifyMathLemmas(64);
    std::set<std::string> names;
    for (const auto& r : reports) {
      names.insert(r.name);
      c.Require(r.holds, r.name + ": " + r.lhs + " " + r.relation + " " + r.rhs);
    }
    for (const char* want : {"double_factorial_closed_form", "factorial_split", "power_ratio_upper", "power_ratio_lower",
                             "factorial_lower", "factorial_upper", "double_factorial_lower"}) {
      c.Require(names.count(want) == 1, std::string("missing ") + want);
    }
  });

  Criterion(3, "codec injective and invertible", kCodecLimit, [](Check& c) {
    for (const auto& [mode, n, r] : CodecSweep()) {
      // Labellings related by an automorphism of the network are the same
      // labelled network; keep one per labelled class.
      std::map<CanonicalCode, LabelledNetwork> labelled;
      for (const auto& net : EnumerateNetworks(n, r, mode)) {
        for (const auto& sw : EnumerateSwitchings(net)) {
          for (const auto& lab : ReticulationLabellings(net, sw)) {
            labelled.try_emplace(CanonicalCodeOf(net, &lab), LabelledNetwork{net, lab});
          }
        }
      }
      std::map<CanonicalCode, const LabelledNetwork*> images;
      for (const auto& [code, ln] : labelled) {
        const PhyloTree tree = EncodeTau(ln.network, ln.labelling);
        const auto [it, fresh] = images.emplace(CanonicalCodeOf(tree), &ln);
        c.Require(fresh, "collision at " + Tag(mode, n, r));
        const DecodeResult back = DecodeTau(tree, n, r);
        c.Require(back.ok(), "decode rejected image at " + Tag(mode, n, r) + ": " + back.violation);
        if (back.ok()) {
          c.Require(oracle::Isomorphic(back.value->network, ln.network, &back.value->labelling.labels, &ln.labelling.labels),
                    "round trip differs at " + Tag(mode, n, r));
        }
        sweep.push_back(ln);
      }
    }
    c.Require(!sweep.empty(), "empty sweep");
  });

  Criterion(4, "labelled networks are asymmetric", 0, [](Check& c) {
    c.Require(!sweep.empty(), "criterion 3 produced no networks");
    for (const auto& ln : sweep) {
      c.Require(AutomorphismCount(ln.network, &ln.labelling) == 1, "automorphism_count != 1");
      c.Require(oracle::Automorphisms(ln.network, &ln.labelling.labels) == 1, "oracle automorphisms != 1");
    }
  });

  Criterion(5, "counting chain", 0, [](Check& c) {
    for (Mode mode : {Mode::kRooted, Mode::kUnrooted}) {
      const int shift = mode == Mode::kRooted ? 3 : 5;
      for (int n = 1; n <= 3; ++n) {
        for (int r = 1; r <= 2; ++r) {
          const BigInt count(EnumerateNetworks(n, r, mode).size());
          const BigInt rf = oracle::DoubleFactorialLoop(r) * oracle::DoubleFactorialLoop(r - 1);
          c.Require(count * rf <= oracle::DoubleFactorialLoop(2 * (n + 2 * r) - shift), "image bound " + Tag(mode, n, r));
          const Rational tight(oracle::DoubleFactorialLoop(2 * n + 4 * r - shift), rf);
          c.Require(Rational(count) <= tight, "tight bound " + Tag(mode, n, r));
          const NetworkCountBound b = NetworkCountBoundOf(n, r, mode);
          c.Require(b.tight == tight, "tight value " + Tag(mode, n, r));
          if (b.relaxed) c.Require(tight <= Rational(*b.relaxed), "relaxed bound " + Tag(mode, n, r));
          if (mode == Mode::kRooted) c.Require(b.relaxed.has_value(), "rooted relaxed missing " + Tag(mode, n, r));
        }
      }
    }
  });

  Criterion(6, "display bounds", 0, [](Check& c) {
    for (int n = 1; n <= 3; ++n) {
      for (int r = 0; r <= 2; ++r) {
        for (const auto& net : EnumerateNetworks(n, r, Mode::kRooted)) {
          c.Require(DisplayedTrees(net).size() <= (std::size_t{1} << r), "too many trees " + Tag(Mode::kRooted, n, r));
        }
      }
    }
    for (int n = 2; n <= 4; ++n) {
      for (int r = 0; r <= 2; ++r) {
        for (const auto& net : EnumerateNetworks(n, r, Mode::kUnrooted)) {
          const BigInt spanning = oracle::SpanningTreeCount(net);
          c.Require(spanning <= Binomial(BigInt(n + 3 * r - 3), static_cast<unsigned long>(r)),
                    "spanning trees " + Tag(Mode::kUnrooted, n, r));
          c.Require(BigInt(EnumerateSwitchings(net).size()) == spanning, "switchings " + Tag(Mode::kUnrooted, n, r));
          c.Require(net.edge_count() == 2 * n + 3 * r - 3, "edge count " + Tag(Mode::kUnrooted, n, r));
        }
      }
    }
  });

  Criterion(7, "display oracle equivalence", 0, [](Check& c) {
    long pairs = 0;
    for (Mode mode : {Mode::kRooted, Mode::kUnrooted}) {
      for (int n = 1; n <= 3; ++n) {
        const auto trees = EnumerateTrees(n, mode);
        for (int r = 0; r <= 2; ++r) {
          for (const auto& net : EnumerateNetworks(n, r, mode)) {
            for (const auto& tree : trees) {
              ++pairs;
              c.Require(Displays(net, tree).displayed == oracle::DisplaysBySubgraph(net, tree.network()),
                        "disagreement at " + Tag(mode, n, r));
            }
          }
        }
      }
    }
    c.Require(pairs > 0, "no pairs");
  });

  Criterion(8, "trivial network", 0, [](Check& c) {
    std::mt19937_64 rng(20240917);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 6);
      const int max_t = n <= 2 ? 1 : 3;
      const int t = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_t));
      std::vector<PhyloTree> members;
      std::set<std::set<std::uint64_t>> seen;
      while (static_cast<int>(members.size()) < t) {
        Network tree = oracle::RandomTree(n, Mode::kRooted, rng);
        if (seen.insert(oracle::Clusters(tree)).second) members.emplace_back(std::move(tree));
      }
      const TreeSet set(std::move(members));
      const Network net = TrivialNetwork(set);
      const std::string tag = "trial " + std::to_string(trial);
      c.Require(net.ReticulationCount() == (t - 1) * n, tag + " reticulations");
      c.Require(Validate(net).empty(), tag + " invalid");
      for (const auto& tree : set.trees()) {
        c.Require(Displays(net, tree).displayed, tag + " member not displayed");
        // Subset search is exponential in |E|; only the small ones.
        if (net.edge_count() <= 20) c.Require(oracle::DisplaysBySubgraph(net, tree.network()), tag + " oracle disagrees");
      }
    }
  });

  Criterion(9, "worst case at tiny n", kWorstLimit, [](Check& c) {
    for (const auto& [n, want] : {std::pair{3, 1}, std::pair{4, 2}}) {
      WorstCaseOptions opts;
      opts.exhaustive = true;
      const WorstCaseResult res = WorstCaseR(n, 2, Mode::kRooted, opts);
      c.Require(res.exhaustive, "not exhaustive");
      c.Require(res.r == want, "worst_case_r(" + std::to_string(n) + ", 2) = " + std::to_string(res.r));
      c.Require(CountingLowerBound(n, 2, Mode::kRooted) <= res.r, "counting bound above worst case");
    }
  });

  Criterion(10, "theorem evaluators", kFormulaLimit, [](Check& c) {
    const FormulaValue f = FormulaLowerBound(1 << 16, 4, Mode::kRooted);
    c.Require(f.exact.has_value() && *f.exact == Rational(1572856, 22), "formula(2^16, 4) != 1572856/22");
    c.Require(f.value.radius() <= kFormulaRadius, "radius too large");
    for (int k = 10; k <= 20; ++k) {
      for (int t = 2; t <= 16; ++t) {
        const int n = 1 << k;
        const FormulaValue v = FormulaLowerBound(n, t, Mode::kRooted);
        if (!v.value.CertainlyLess(Interval(0L)) && !v.value.ContainsZero()) {
          BigInt ceil = v.value.CeilHi();
          if (v.exact) {
            const BigInt& num = numerator(*v.exact);
            const BigInt& den = denominator(*v.exact);
            ceil = num / den + (num % den != 0 ? 1 : 0);
          }
          const int counting = CountingLowerBound(n, t, Mode::kRooted);
          c.Require(BigInt(counting) >= ceil, "n=2^" + std::to_string(k) + " t=" + std::to_string(t) + ": " +
                                          std::to_string(counting) + " < " + ceil.str());
        }
      }
    }
  });

  return failures == 0 ? 0 : 1;
}
