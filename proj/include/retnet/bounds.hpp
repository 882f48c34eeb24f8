#pragma once
// Exact and interval-certified evaluation of the counting formulas.

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "retnet/interval.hpp"
#include "retnet/network.hpp"

namespace retnet {

// k!! = k (k-2) (k-4) ...; (-1)!! = 0!! = 1.
BigInt DoubleFactorial(long k);
BigInt Factorial(unsigned long k);
BigInt Binomial(const BigInt& n, unsigned long k);
BigInt Pow2(unsigned long k);

// (2n-3)!! rooted, (2n-5)!! unrooted; 1 for n <= 2.
BigInt TreeCount(int n, Mode mode);

struct TreeSetCount {
  BigInt count;               // C(tree_count(n), t)
  Rational first_lower;       // (M/t)^t
  Rational second_lower;      // (n/2)^{tn} t^{-t}; n - 1 in place of n when unrooted
  bool lower_bounds_apply;    // n >= 5 rooted, n >= 6 unrooted
};
// Throws Error(kTTooLarge) when t exceeds the number of trees, kDomain when t < 1.
TreeSetCount TreeSetCountOf(int n, int t, Mode mode);

struct NetworkCountBound {
  Rational tight;                // (2n+4r-3)!!/r!, or (2n+4r-5)!!/r! unrooted
  std::optional<BigInt> relaxed; // n!(r-1)!2^{2n+6r-3}, or n!(r-2)!2^{2n+6r-6}
};
// Throws Error(kDomain) for r < 1. The relaxed form is absent for unrooted r = 1.
NetworkCountBound NetworkCountBoundOf(int n, int r, Mode mode);

// Rooted: 2^{rt} n! (r-1)! 2^{2n+6r-3} (r >= 1).
// Unrooted: 2^{(t+2)(n+3r-3)} n! (r-2)! (r >= 2). Error(kDomain) otherwise.
BigInt PairCountBound(int n, int t, int r, Mode mode);

// Tight per-r pair bound used by the search: networks times the number of
// ordered t-tuples of displayed trees per network.
// Rooted: (2n+4r-3)!!/r! * 2^{rt}. Unrooted: (2n+4r-5)!!/r! * C(n+3r-3, r)^t.
Rational TightPairBound(int n, int t, int r, Mode mode);

enum class EvalPath { kAuto, kExact, kInterval };

// Least r in [0, (t-1)n] with TightPairBound(n, t, r) >= C(tree_count(n), t).
// Exact big-integer search for small n; certified lg-interval search
// otherwise (Error(kUndecided) if an interval straddles the threshold).
int CountingLowerBound(int n, int t, Mode mode, EvalPath path = EvalPath::kAuto);

struct FormulaValue {
  Interval value;
  std::optional<Rational> exact;  // set when lg n and lg t are integers
};
// Closed-form lower bound on the worst-case reticulation number.
// Rooted:   ((t-1) n lg n - 6tn - t lg t) / (lg n + t + lg t)
// Unrooted: ((t-1) n lg n - t(8n + lg n + lg t - 1)) / (lg n + 3t + lg t)
// Error(kDomain) for n < 6 or t < 1.
FormulaValue FormulaLowerBound(int n, int t, Mode mode, EvalPath path = EvalPath::kAuto);

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, long>> params;
  std::string lhs;
  std::string relation;  // "==", "<=", "<", ">", ">="
  std::string rhs;
  bool holds = false;
};

std::vector<BoundReport> VerifyMathLemmas(int kmax);

// Reports for one named statement: double_factorial, tree_count,
// tree_set_count, network_count_bound, pair_count_bound,
// counting_lower_bound, formula_lower_bound.
std::vector<BoundReport> StatementReports(const std::string& stmt, int n, int t, int r, Mode mode);

std::string ToString(const Rational& q);
void WriteCsv(std::ostream& out, const std::vector<BoundReport>& reports);
void WriteJsonLines(std::ostream& out, const std::vector<BoundReport>& reports);

}  // namespace retnet
