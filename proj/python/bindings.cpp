#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "retnet/bounds.hpp"
#include "retnet/canonical.hpp"
#include "retnet/codec.hpp"
#include "retnet/display.hpp"
#include "retnet/enumerate.hpp"
#include "retnet/error.hpp"
#include "retnet/io.hpp"
#include "retnet/solver.hpp"

namespace py = pybind11;
using namespace retnet;

namespace {

py::object ToInt(const BigInt& x) { return py::module_::import("builtins").attr("int")(x.str()); }

py::object ToFraction(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(ToInt(numerator(q)), ToInt(denominator(q)));
}

TreeSet Trees(const std::vector<std::string>& newicks, const std::string& mode) {
  std::vector<PhyloTree> trees;
  for (const auto& s : newicks) trees.push_back(io::ParseTree(s, ParseMode(mode)));
  return TreeSet(std::move(trees));
}

std::string Text(const Network& net) {
  return net.mode() == Mode::kRooted ? io::WriteNewick(net).text : io::Write(net).text;
}

py::list Reports(const std::vector<BoundReport>& reports) {
  py::list out;
  for (const auto& r : reports) {
    py::dict params;
    for (const auto& [k, v] : r.params) params[py::str(k)] = v;
    out.append(py::dict(py::arg("name") = r.name, py::arg("params") = params, py::arg("lhs") = r.lhs,
                        py::arg("relation") = r.relation, py::arg("rhs") = r.rhs, py::arg("holds") = r.holds));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Phylogenetic network enumeration, containment and counting bounds";
  py::register_exception<Error>(m, "RetnetError", PyExc_ValueError);

  m.def("tree_count", [](int n, const std::string& mode) { return ToInt(TreeCount(n, ParseMode(mode))); },
        py::arg("n"), py::arg("mode") = "rooted");
  m.def(
      "trees",
      [](int n, const std::string& mode) {
        std::vector<std::string> out;
        for (const auto& t : EnumerateTrees(n, ParseMode(mode))) out.push_back(io::WriteTree(t));
        return out;
      },
      py::arg("n"), py::arg("mode") = "rooted");
  m.def(
      "networks",
      [](int n, int r, const std::string& mode, bool leaf_connecting_only, int jobs) {
        EnumerateOptions opts;
        opts.leaf_connecting_only = leaf_connecting_only;
        opts.jobs = jobs;
        std::vector<std::string> out;
        for (const auto& net : EnumerateNetworks(n, r, ParseMode(mode), opts)) out.push_back(Text(net));
        return out;
      },
      py::arg("n"), py::arg("r"), py::arg("mode") = "rooted", py::arg("leaf_connecting_only") = true,
      py::arg("jobs") = 1);
  m.def(
      "canonical_code",
      [](const std::string& network, const std::string& mode) {
        return CanonicalCodeOf(io::Read(network, ParseMode(mode))).Hex();
      },
      py::arg("network"), py::arg("mode") = "rooted");
  m.def(
      "encode",
      [](const std::string& network, const std::string& labels, const std::string& mode) {
        const Network net = io::Read(network, ParseMode(mode));
        return io::WriteTree(EncodeTau(net, io::ParseEdgeLabels(labels, net.edge_count())));
      },
      py::arg("network"), py::arg("labels"), py::arg("mode") = "rooted");
  m.def(
      "decode",
      [](const std::string& tree, int n, int r, const std::string& mode) -> py::object {
        const DecodeResult res = DecodeTau(io::ParseTree(tree, ParseMode(mode)), n, r);
        if (!res.ok()) return py::none();
        const io::Serialized s = io::Write(res.value->network);
        return py::make_tuple(s.text, io::WriteEdgeLabels(s, res.value->labelling));
      },
      py::arg("tree"), py::arg("n"), py::arg("r"), py::arg("mode") = "rooted",
      "(network, edge-label sidecar), or None when the tree is outside the image");
  m.def(
      "displays",
      [](const std::string& network, const std::string& tree, const std::string& mode) {
        const Mode md = ParseMode(mode);
        return Displays(io::Read(network, md), io::ParseTree(tree, md)).displayed;
      },
      py::arg("network"), py::arg("tree"), py::arg("mode") = "rooted");
  m.def(
      "displayed_trees",
      [](const std::string& network, const std::string& mode) {
        std::vector<std::string> out;
        for (const auto& t : DisplayedTrees(io::Read(network, ParseMode(mode)))) out.push_back(io::WriteTree(t));
        return out;
      },
      py::arg("network"), py::arg("mode") = "rooted");
  m.def(
      "trivial_network", [](const std::vector<std::string>& trees) { return Text(TrivialNetwork(Trees(trees, "rooted"))); },
      py::arg("trees"));
  m.def(
      "min_reticulations",
      [](const std::vector<std::string>& trees, const std::string& mode) {
        const MinRetResult res = MinReticulations(Trees(trees, mode));
        return py::make_tuple(res.r, Text(res.witness));
      },
      py::arg("trees"), py::arg("mode") = "rooted");
  m.def(
      "counting_lower_bound",
      [](int n, int t, const std::string& mode) { return CountingLowerBound(n, t, ParseMode(mode)); }, py::arg("n"),
      py::arg("t"), py::arg("mode") = "rooted");
  m.def(
      "formula_lower_bound",
      [](int n, int t, const std::string& mode) {
        const FormulaValue v = FormulaLowerBound(n, t, ParseMode(mode));
        return py::make_tuple(v.value.lo_double(), v.value.hi_double(), v.exact ? ToFraction(*v.exact) : py::none());
      },
      py::arg("n"), py::arg("t"), py::arg("mode") = "rooted", "(lo, hi, exact Fraction or None)");
  m.def("verify_lemmas", [](int kmax) { return Reports(VerifyMathLemmas(kmax)); }, py::arg("kmax") = 64);
  m.def(
      "bounds",
      [](const std::string& stmt, int n, int t, int r, const std::string& mode) {
        return Reports(StatementReports(stmt, n, t, r, ParseMode(mode)));
      },
      py::arg("stmt"), py::arg("n"), py::arg("t") = 1, py::arg("r") = 1, py::arg("mode") = "rooted");
}
