#include "retnet/bounds.hpp"

#include <gmp.h>

#include <algorithm>
#include <functional>

#include <json.hpp>

#include "retnet/error.hpp"

namespace retnet {

namespace {

// Above this n the counting search runs on lg-intervals.
constexpr int kExactSearchLimit = 256;
// Above this n the tree count is not materialised on the interval path.
constexpr int kExactTreeCountLimit = 2048;

Rational Pow(const Rational& base, unsigned long k) {
  Rational out(1);
  Rational b = base;
  while (k > 0) {
    if (k & 1UL) out *= b;
    b *= b;
    k >>= 1;
  }
  return out;
}

bool IsPowerOfTwo(long x) { return x > 0 && (x & (x - 1)) == 0; }

long Lg(long x) {
  long k = 0;
  while (x > 1) {
    x >>= 1;
    ++k;
  }
  return k;
}

std::string Str(const BigInt& x) { return x.str(); }

BoundReport Report(std::string name, std::vector<std::pair<std::string, long>> params, std::string lhs,
                   std::string relation, std::string rhs, bool holds) {
  return {std::move(name), std::move(params), std::move(lhs), std::move(relation), std::move(rhs), holds};
}

// Index m of the odd double factorial (2m-1)!! counting trees on n leaves.
long TreeIndex(int n, Mode mode) { return mode == Mode::kRooted ? n - 1 : n - 2; }

Interval Log2Binomial(const BigInt& a, const BigInt& k) {
  if (k < 0 || k > a) throw Error(ErrorCode::kDomain, "binomial out of range");
  return Log2Factorial(a) - Log2Factorial(k) - Log2Factorial(a - k);
}

Interval Log2TightPair(int n, int t, long r, Mode mode) {
  if (mode == Mode::kRooted) {
    return Log2DoubleFactorialOdd(BigInt(n) + 2 * r - 1) - Log2Factorial(BigInt(r)) + Interval(r * t);
  }
  const long a = n + 3 * r - 3;
  Interval out = Log2DoubleFactorialOdd(BigInt(n) + 2 * r - 2) - Log2Factorial(BigInt(r));
  if (a >= 0) out = out + Interval(static_cast<long>(t)) * Log2Binomial(BigInt(a), BigInt(r));
  return out;
}

// lg C(M, t) for M = tree_count(n), enclosed without materialising M.
Interval Log2TreeSets(int n, int t, Mode mode) {
  if (n <= kExactTreeCountLimit) {
    const BigInt count = TreeSetCountOf(n, t, mode).count;
    return Interval(count).Log2();
  }
  const Interval lg_m = Log2DoubleFactorialOdd(BigInt(TreeIndex(n, mode)));
  const Interval lg_tfac = Log2Factorial(BigInt(t));
  const Interval tt(static_cast<long>(t));
  // lg(M - t + 1) >= lg M - 3 (t - 1) / M for M >= 2t.
  const Interval eps = Interval(3L * (t - 1)) * (-lg_m).Exp2();
  const Interval upper = tt * lg_m - lg_tfac;
  const Interval lower = tt * (lg_m - eps) - lg_tfac;
  return Interval::Hull(lower, upper);
}

}  // namespace

BigInt DoubleFactorial(long k) {
  if (k < -1) throw Error(ErrorCode::kDomain, "double factorial below -1");
  if (k <= 0) return 1;
  BigInt out;
  mpz_2fac_ui(out.backend().data(), static_cast<unsigned long>(k));
  return out;
}

BigInt Factorial(unsigned long k) {
  BigInt out;
  mpz_fac_ui(out.backend().data(), k);
  return out;
}

BigInt Binomial(const BigInt& n, unsigned long k) {
  if (k == 0) return 1;
  if (n < 0) throw Error(ErrorCode::kDomain, "binomial with negative top");
  BigInt out;
  mpz_bin_ui(out.backend().data(), n.backend().data(), k);
  return out;
}

BigInt Pow2(unsigned long k) {
  BigInt out;
  mpz_ui_pow_ui(out.backend().data(), 2, k);
  return out;
}

BigInt TreeCount(int n, Mode mode) {
  if (n < 1) throw Error(ErrorCode::kDomain, "tree_count needs n >= 1");
  return DoubleFactorial(2 * std::max(0L, TreeIndex(n, mode)) - 1);
}

TreeSetCount TreeSetCountOf(int n, int t, Mode mode) {
  if (t < 1) throw Error(ErrorCode::kDomain, "tree set size must be at least 1");
  const BigInt m = TreeCount(n, mode);
  if (BigInt(t) > m) {
    throw Error(ErrorCode::kTTooLarge, "t = " + std::to_string(t) + " exceeds the " + Str(m) + " trees on " +
                                           std::to_string(n) + " leaves");
  }
  TreeSetCount out;
  out.count = Binomial(m, static_cast<unsigned long>(t));
  out.first_lower = Pow(Rational(m, t), static_cast<unsigned long>(t));
  const long base = mode == Mode::kRooted ? n : n - 1;
  out.second_lower = Pow(Rational(base, 2), static_cast<unsigned long>(t * base)) /
                     Pow(Rational(t), static_cast<unsigned long>(t));
  out.lower_bounds_apply = mode == Mode::kRooted ? n >= 5 : n >= 6;
  return out;
}

NetworkCountBound NetworkCountBoundOf(int n, int r, Mode mode) {
  if (r < 1) throw Error(ErrorCode::kDomain, "network_count_bound needs r >= 1");
  if (n < 1) throw Error(ErrorCode::kDomain, "network_count_bound needs n >= 1");
  NetworkCountBound out;
  const long odd = mode == Mode::kRooted ? 2L * n + 4L * r - 3 : 2L * n + 4L * r - 5;
  out.tight = Rational(DoubleFactorial(odd), Factorial(static_cast<unsigned long>(r)));
  if (mode == Mode::kRooted) {
    out.relaxed = Factorial(static_cast<unsigned long>(n)) * Factorial(static_cast<unsigned long>(r - 1)) *
                  Pow2(static_cast<unsigned long>(2 * n + 6 * r - 3));
  } else if (r >= 2) {
    out.relaxed = Factorial(static_cast<unsigned long>(n)) * Factorial(static_cast<unsigned long>(r - 2)) *
                  Pow2(static_cast<unsigned long>(2 * n + 6 * r - 6));
  }
  return out;
}

BigInt PairCountBound(int n, int t, int r, Mode mode) {
  if (n < 1 || t < 1) throw Error(ErrorCode::kDomain, "pair_count_bound needs n, t >= 1");
  if (mode == Mode::kRooted) {
    if (r < 1) throw Error(ErrorCode::kDomain, "rooted pair_count_bound needs r >= 1");
    return Pow2(static_cast<unsigned long>(r * t)) * Factorial(static_cast<unsigned long>(n)) *
           Factorial(static_cast<unsigned long>(r - 1)) * Pow2(static_cast<unsigned long>(2 * n + 6 * r - 3));
  }
  if (r < 2) throw Error(ErrorCode::kDomain, "unrooted pair_count_bound needs r >= 2");
  return Pow2(static_cast<unsigned long>((t + 2) * (n + 3 * r - 3))) * Factorial(static_cast<unsigned long>(n)) *
         Factorial(static_cast<unsigned long>(r - 2));
}

Rational TightPairBound(int n, int t, int r, Mode mode) {
  if (n < 1 || t < 1 || r < 0) throw Error(ErrorCode::kDomain, "tight pair bound needs n, t >= 1, r >= 0");
  const BigInt rfac = Factorial(static_cast<unsigned long>(r));
  if (mode == Mode::kRooted) {
    return Rational(DoubleFactorial(2L * n + 4L * r - 3) * Pow2(static_cast<unsigned long>(r) * t), rfac);
  }
  const long a = n + 3L * r - 3;
  BigInt per_net = a >= 0 ? Binomial(BigInt(a), static_cast<unsigned long>(r)) : BigInt(1);
  BigInt tuples = 1;
  for (int i = 0; i < t; ++i) tuples *= per_net;
  return Rational(DoubleFactorial(2L * n + 4L * r - 5) * tuples, rfac);
}

int CountingLowerBound(int n, int t, Mode mode, EvalPath path) {
  if (n < 2 || t < 1) throw Error(ErrorCode::kDomain, "counting_lower_bound needs n >= 2, t >= 1");
  if (path == EvalPath::kAuto) path = n <= kExactSearchLimit ? EvalPath::kExact : EvalPath::kInterval;
  const long cap = static_cast<long>(t - 1) * n;

  std::function<bool(long)> enough;
  if (path == EvalPath::kExact) {
    const BigInt sets = TreeSetCountOf(n, t, mode).count;
    enough = [=](long r) { return TightPairBound(n, t, static_cast<int>(r), mode) >= Rational(sets); };
  } else {
    if (n <= kExactTreeCountLimit) TreeSetCountOf(n, t, mode);  // range check
    const Interval lg_sets = Log2TreeSets(n, t, mode);
    enough = [=](long r) {
      const Interval diff = Log2TightPair(n, t, r, mode) - lg_sets;
      if (Interval(0L).CertainlyLessEq(diff)) return true;
      if (diff.CertainlyLess(Interval(0L))) return false;
      throw Error(ErrorCode::kUndecided, "pair bound at r = " + std::to_string(r) + " is within " +
                                             diff.ToString(6) + " bits of the tree-set count");
    };
  }
  if (!enough(cap)) {
    throw Error(ErrorCode::kDomain, "pair bound at r = (t-1)n is below the number of tree sets");
  }
  long lo = 0;
  long hi = cap;
  while (lo < hi) {
    const long mid = lo + (hi - lo) / 2;
    if (enough(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return static_cast<int>(lo);
}

FormulaValue FormulaLowerBound(int n, int t, Mode mode, EvalPath path) {
  if (n < 6 || t < 1) throw Error(ErrorCode::kDomain, "formula_lower_bound needs n >= 6, t >= 1");
  const bool integral = IsPowerOfTwo(n) && IsPowerOfTwo(t);
  if (path == EvalPath::kExact && !integral) {
    throw Error(ErrorCode::kDomain, "exact evaluation needs n and t to be powers of two");
  }
  FormulaValue out;
  if (integral && path != EvalPath::kInterval) {
    const Rational lg_n(Lg(n));
    const Rational lg_t(Lg(t));
    const Rational nn(n);
    const Rational tt(t);
    Rational num;
    Rational den;
    if (mode == Mode::kRooted) {
      num = (tt - 1) * nn * lg_n - 6 * tt * nn - tt * lg_t;
      den = lg_n + tt + lg_t;
    } else {
      num = (tt - 1) * nn * lg_n - tt * (8 * nn + lg_n + lg_t - 1);
      den = lg_n + 3 * tt + lg_t;
    }
    out.exact = num / den;
    out.value = Interval(*out.exact);
    return out;
  }
  const Interval lg_n = Interval(static_cast<long>(n)).Log2();
  const Interval lg_t = Interval(static_cast<long>(t)).Log2();
  const Interval nn(static_cast<long>(n));
  const Interval tt(static_cast<long>(t));
  const Interval one(1L);
  if (mode == Mode::kRooted) {
    out.value = ((tt - one) * nn * lg_n - Interval(6L) * tt * nn - tt * lg_t) / (lg_n + tt + lg_t);
  } else {
    out.value = ((tt - one) * nn * lg_n - tt * (Interval(8L) * nn + lg_n + lg_t - one)) /
                (lg_n + Interval(3L) * tt + lg_t);
  }
  return out;
}

std::string ToString(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

std::vector<BoundReport> VerifyMathLemmas(int kmax) {
  if (kmax < 6) throw Error(ErrorCode::kDomain, "verify_math_lemmas needs kmax >= 6");
  std::vector<BoundReport> out;
  for (long k = 0; k <= kmax; ++k) {
    const BigInt lhs = DoubleFactorial(2 * k - 1);
    const Rational rhs(Factorial(static_cast<unsigned long>(2 * k)),
                       Pow2(static_cast<unsigned long>(k)) * Factorial(static_cast<unsigned long>(k)));
    out.push_back(Report("double_factorial_closed_form", {{"k", k}}, Str(lhs), "==", ToString(rhs), Rational(lhs) == rhs));
  }
  for (long a = 0; a <= kmax; ++a) {
    for (long b = 0; a + b <= kmax; ++b) {
      const BigInt lhs = Factorial(static_cast<unsigned long>(a + b));
      const BigInt rhs = Pow2(static_cast<unsigned long>(a + b)) * Factorial(static_cast<unsigned long>(a)) *
                         Factorial(static_cast<unsigned long>(b));
      out.push_back(Report("factorial_split", {{"a", a}, {"b", b}}, Str(lhs), "<=", Str(rhs), lhs <= rhs));
    }
  }
  const Interval inv_e = Interval(1L) / Interval::E();
  for (long n = 1; n <= kmax; ++n) {
    const Rational q = Pow(Rational(n, n + 1), static_cast<unsigned long>(n));
    out.push_back(Report("power_ratio_upper", {{"n", n}}, ToString(q), "<=", "1/2", q <= Rational(1, 2)));
    out.push_back(Report("power_ratio_lower", {{"n", n}}, inv_e.ToString(30), "<", ToString(q),
                         inv_e.CertainlyLess(Interval(q))));
  }
  for (long n = 6; n <= kmax; ++n) {
    const BigInt fac = Factorial(static_cast<unsigned long>(n));
    const Interval low = (Interval(n) / Interval::E()).Pow(static_cast<unsigned long>(n));
    out.push_back(Report("factorial_lower", {{"n", n}}, low.ToString(30), "<", Str(fac), low.CertainlyLess(Interval(fac))));
    const Rational high = Pow(Rational(n, 2), static_cast<unsigned long>(n));
    out.push_back(Report("factorial_upper", {{"n", n}}, Str(fac), "<", ToString(high), Rational(fac) < high));
  }
  for (long n = 5; n <= kmax; ++n) {
    const BigInt lhs = DoubleFactorial(2 * n - 3);
    const Rational rhs = Pow(Rational(n, 2), static_cast<unsigned long>(n));
    out.push_back(Report("double_factorial_lower", {{"n", n}}, Str(lhs), ">", ToString(rhs), Rational(lhs) > rhs));
  }
  return out;
}

std::vector<BoundReport> StatementReports(const std::string& stmt, int n, int t, int r, Mode mode) {
  const std::string mode_name(ModeName(mode));
  std::vector<BoundReport> out;
  if (stmt == "double_factorial") {
    const BigInt lhs = DoubleFactorial(2L * n - 1);
    const Rational rhs(Factorial(static_cast<unsigned long>(2 * n)),
                       Pow2(static_cast<unsigned long>(n)) * Factorial(static_cast<unsigned long>(n)));
    out.push_back(Report(stmt, {{"k", n}}, Str(lhs), "==", ToString(rhs), Rational(lhs) == rhs));
  } else if (stmt == "tree_count") {
    const long m = TreeIndex(n, mode);
    const BigInt lhs = TreeCount(n, mode);
    const Rational rhs = m < 0 ? Rational(1)
                               : Rational(Factorial(static_cast<unsigned long>(2 * m)),
                                          Pow2(static_cast<unsigned long>(m)) * Factorial(static_cast<unsigned long>(m)));
    out.push_back(Report(stmt + "_" + mode_name, {{"n", n}}, Str(lhs), "==", ToString(rhs), Rational(lhs) == rhs));
  } else if (stmt == "tree_set_count") {
    const TreeSetCount c = TreeSetCountOf(n, t, mode);
    out.push_back(Report(stmt + "_" + mode_name, {{"n", n}, {"t", t}}, Str(c.count), ">=", ToString(c.first_lower),
                         Rational(c.count) >= c.first_lower));
    if (c.lower_bounds_apply) {
      out.push_back(Report(stmt + "_chain_" + mode_name, {{"n", n}, {"t", t}}, ToString(c.first_lower), ">=",
                           ToString(c.second_lower), c.first_lower >= c.second_lower));
    }
  } else if (stmt == "network_count_bound") {
    const NetworkCountBound b = NetworkCountBoundOf(n, r, mode);
    if (b.relaxed) {
      out.push_back(Report(stmt + "_" + mode_name, {{"n", n}, {"r", r}}, ToString(b.tight), "<=", Str(*b.relaxed),
                           b.tight <= Rational(*b.relaxed)));
    } else {
      out.push_back(Report(stmt + "_" + mode_name, {{"n", n}, {"r", r}}, ToString(b.tight), "==",
                           ToString(b.tight), true));
    }
  } else if (stmt == "pair_count_bound") {
    const Rational tight = TightPairBound(n, t, r, mode);
    const BigInt relaxed = PairCountBound(n, t, r, mode);
    out.push_back(Report(stmt + "_" + mode_name, {{"n", n}, {"t", t}, {"r", r}}, ToString(tight), "<=", Str(relaxed),
                         tight <= Rational(relaxed)));
  } else if (stmt == "counting_lower_bound") {
    const int v = CountingLowerBound(n, t, mode);
    out.push_back(Report(stmt + "_" + mode_name, {{"n", n}, {"t", t}}, std::to_string(v), "<=",
                         std::to_string(static_cast<long>(t - 1) * n), v <= static_cast<long>(t - 1) * n));
  } else if (stmt == "formula_lower_bound") {
    const FormulaValue f = FormulaLowerBound(n, t, mode);
    const int v = CountingLowerBound(n, t, mode);
    const bool holds = !Interval(0L).CertainlyLess(f.value) || f.value.CeilHi() <= v;
    out.push_back(Report(stmt + "_" + mode_name, {{"n", n}, {"t", t}}, f.exact ? ToString(*f.exact) : f.value.ToString(30),
                         "<=", std::to_string(v), holds));
  } else {
    throw Error(ErrorCode::kInvalid, "unknown statement '" + stmt + "'");
  }
  return out;
}

namespace {

std::string ParamString(const BoundReport& r) {
  std::string s;
  for (const auto& [k, v] : r.params) {
    if (!s.empty()) s += ';';
    s += k + "=" + std::to_string(v);
  }
  return s;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

void WriteCsv(std::ostream& out, const std::vector<BoundReport>& reports) {
  out << "name,params,lhs,relation,rhs,holds\n";
  for (const auto& r : reports) {
    out << r.name << ',' << ParamString(r) << ',' << CsvField(r.lhs) << ',' << r.relation << ',' << CsvField(r.rhs)
        << ',' << (r.holds ? "true" : "false") << '\n';
  }
}

void WriteJsonLines(std::ostream& out, const std::vector<BoundReport>& reports) {
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    j["lhs"] = r.lhs;
    j["relation"] = r.relation;
    j["rhs"] = r.rhs;
    j["holds"] = r.holds;
    out << j.dump() << '\n';
  }
}

}  // namespace retnet
