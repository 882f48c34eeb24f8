#include "retnet/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <set>
#include <sstream>

#include "retnet/bounds.hpp"
#include "retnet/canonical.hpp"
#include "retnet/codec.hpp"
#include "retnet/display.hpp"
#include "retnet/enumerate.hpp"
#include "retnet/error.hpp"
#include "retnet/io.hpp"
#include "retnet/solver.hpp"

namespace retnet::cli {

namespace {

using nlohmann::ordered_json;

struct Common {
  std::string mode = "rooted";
  std::string format = "jsonl";
  int jobs = 1;
};

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string Trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

// Emits rows either as JSON Lines or as CSV with a header taken from the
// first row's keys.
class Table {
 public:
  Table(std::ostream& out, const std::string& format) : out_(out), csv_(format == "csv") {}

  void Row(const ordered_json& row) {
    if (!csv_) {
      out_ << row.dump() << '\n';
      return;
    }
    if (!header_) {
      bool first = true;
      for (const auto& [key, value] : row.items()) {
        out_ << (first ? "" : ",") << key;
        first = false;
      }
      out_ << '\n';
      header_ = true;
    }
    bool first = true;
    for (const auto& [key, value] : row.items()) {
      out_ << (first ? "" : ",") << CsvField(value.is_string() ? value.get<std::string>() : value.dump());
      first = false;
    }
    out_ << '\n';
  }

 private:
  std::ostream& out_;
  bool csv_;
  bool header_ = false;
};

std::string NetworkText(const Network& net) { return io::Write(net).text; }

PhyloTree LoadTree(const std::string& path, Mode mode) { return io::ParseTree(Trim(io::ReadFile(path)), mode); }

Network LoadNetwork(const std::string& path, Mode mode) {
  const Network net = io::Read(Trim(io::ReadFile(path)), mode);
  ValidationReport report = Validate(net);
  if (!report.empty()) throw Error(ErrorCode::kInvalid, path + ": " + report.front());
  return net;
}

TreeSet LoadTreeSet(const std::vector<std::string>& paths, Mode mode) {
  std::vector<PhyloTree> trees;
  for (const auto& p : paths) trees.push_back(LoadTree(p, mode));
  return TreeSet(std::move(trees));
}

ordered_json OffEdges(const Switching& sw) {
  ordered_json off = ordered_json::array();
  for (std::size_t e = 0; e < sw.on.size(); ++e) {
    if (!sw.on[e]) off.push_back(e);
  }
  return off;
}

void ReportRows(std::ostream& out, const std::string& format, const std::vector<BoundReport>& reports) {
  if (format == "csv") {
    WriteCsv(out, reports);
  } else {
    WriteJsonLines(out, reports);
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact combinatorics for phylogenetic networks", "retnet"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--mode", common.mode, "rooted or unrooted")->check(CLI::IsMember({"rooted", "unrooted"}));
  app.add_option("--format", common.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
  app.add_option("--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);

  int n = 0;
  int r = 0;
  int t = 1;
  bool count_only = false;
  bool all = false;
  std::string network_path;
  std::string tree_path;
  std::string labels_path;
  std::string labels_out;
  std::vector<std::string> tree_paths;
  std::uint64_t limit = std::uint64_t{1} << 20;
  bool exhaustive = false;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 1;
  std::string stmt;
  bool lemmas = false;
  bool counts = false;
  int kmax = 64;
  int n_max = 3;
  int r_max = 2;

  auto* trees = app.add_subcommand("trees", "all trees on [n]");
  trees->add_option("--n", n)->required()->check(CLI::Range(1, 64));
  trees->add_flag("--count-only", count_only);

  auto* networks = app.add_subcommand("networks", "all networks with n leaves and r reticulations");
  networks->add_option("--n", n)->required()->check(CLI::Range(1, 64));
  networks->add_option("--r", r)->required()->check(CLI::Range(0, 64));
  networks->add_flag("--count-only", count_only);
  networks->add_flag("--all", all, "unrooted: include networks that are not leaf-connecting");

  auto* switchings = app.add_subcommand("switchings", "switchings of a network with their displayed trees");
  switchings->add_option("--network", network_path)->required();

  auto* encode = app.add_subcommand("encode", "tau: labelled network to tree");
  encode->add_option("--network", network_path)->required();
  encode->add_option("--labels", labels_path)->required();

  auto* decode = app.add_subcommand("decode", "inverse of tau");
  decode->add_option("--tree", tree_path)->required();
  decode->add_option("--n", n)->required()->check(CLI::Range(1, 1 << 20));
  decode->add_option("--r", r)->required()->check(CLI::Range(0, 1 << 20));
  decode->add_option("--labels-out", labels_out, "write the edge-label sidecar here instead of stdout");

  auto* display = app.add_subcommand("display", "does the network display the tree");
  display->add_option("--network", network_path)->required();
  display->add_option("--tree", tree_path)->required();
  display->add_option("--limit", limit, "largest number of switchings to examine");

  auto* displayed = app.add_subcommand("displayed", "all trees displayed by a network");
  displayed->add_option("--network", network_path)->required();
  displayed->add_option("--limit", limit, "largest number of switchings to examine");
  displayed->add_flag("--count-only", count_only);

  auto* trivial = app.add_subcommand("trivial", "trivial network of a tree set");
  trivial->add_option("--trees", tree_paths)->required();

  auto* minret = app.add_subcommand("minret", "minimum reticulation number of a tree set");
  minret->add_option("--trees", tree_paths)->required();

  auto* worstcase = app.add_subcommand("worstcase", "largest minimum reticulation number over tree sets");
  worstcase->add_option("--n", n)->required()->check(CLI::Range(1, 16));
  worstcase->add_option("--t", t)->required()->check(CLI::Range(1, 1 << 20));
  auto* exhaustive_flag = worstcase->add_flag("--exhaustive", exhaustive);
  worstcase->add_option("--samples", samples)->excludes(exhaustive_flag);
  worstcase->add_option("--seed", seed);

  auto* bounds = app.add_subcommand("bounds", "evaluate one counting statement");
  bounds->add_option("--stmt", stmt)
      ->required()
      ->check(CLI::IsMember({"double_factorial", "tree_count", "tree_set_count", "network_count_bound",
                             "pair_count_bound", "counting_lower_bound", "formula_lower_bound"}));
  bounds->add_option("--n", n)->check(CLI::Range(0, 1 << 22));
  bounds->add_option("--t", t)->check(CLI::Range(1, 1 << 20));
  bounds->add_option("--r", r)->check(CLI::Range(0, 1 << 20));

  auto* verify = app.add_subcommand("verify", "lemma and enumeration checks");
  auto* lemmas_flag = verify->add_flag("--lemmas", lemmas);
  verify->add_flag("--counts", counts)->excludes(lemmas_flag);
  verify->add_option("--kmax", kmax)->check(CLI::Range(6, 4096));
  verify->add_option("--n-max", n_max)->check(CLI::Range(2, 16));
  verify->add_option("--r-max", r_max)->check(CLI::Range(0, 16));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (verify->parsed() && !lemmas && !counts) throw CLI::RequiredError("--lemmas or --counts");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const Mode mode = ParseMode(common.mode);
    EnumerateOptions enumerate;
    enumerate.jobs = common.jobs;
    Table table(out, common.format);

    if (trees->parsed()) {
      const auto list = EnumerateTrees(n, mode);
      if (count_only) {
        out << list.size() << '\n';
        return 0;
      }
      for (std::size_t i = 0; i < list.size(); ++i) table.Row({{"index", i}, {"newick", io::WriteTree(list[i])}});
    } else if (networks->parsed()) {
      enumerate.leaf_connecting_only = !all;
      const auto list = EnumerateNetworks(n, r, mode, enumerate);
      if (count_only) {
        out << list.size() << '\n';
        return 0;
      }
      for (std::size_t i = 0; i < list.size(); ++i) table.Row({{"index", i}, {"network", NetworkText(list[i])}});
    } else if (switchings->parsed()) {
      const Network net = LoadNetwork(network_path, mode);
      const auto list = EnumerateSwitchings(net);
      for (std::size_t i = 0; i < list.size(); ++i) {
        table.Row({{"index", i}, {"off_edges", OffEdges(list[i]).dump()}, {"tree", io::WriteTree(DisplayedTree(net, list[i]))}});
      }
    } else if (encode->parsed()) {
      const Network net = LoadNetwork(network_path, mode);
      const ReticulationLabelling lab = io::ParseEdgeLabels(io::ReadFile(labels_path), net.edge_count());
      out << io::WriteTree(EncodeTau(net, lab)) << '\n';
    } else if (decode->parsed()) {
      const DecodeResult result = DecodeTau(LoadTree(tree_path, mode), n, r);
      if (!result.ok()) {
        err << "NOT_IN_IMAGE: " << result.violation << '\n';
        return 1;
      }
      const io::Serialized s = io::Write(result.value->network);
      const std::string sidecar = io::WriteEdgeLabels(s, result.value->labelling);
      out << s.text << '\n';
      if (labels_out.empty()) {
        out << sidecar << '\n';
      } else {
        std::ofstream f(labels_out);
        if (!f) throw Error(ErrorCode::kInvalid, "cannot write " + labels_out);
        f << sidecar << '\n';
      }
    } else if (display->parsed()) {
      const Network net = LoadNetwork(network_path, mode);
      DisplayOptions opts;
      opts.switching_limit = limit;
      const DisplayResult result = Displays(net, LoadTree(tree_path, mode), opts);
      ordered_json row{{"displayed", result.displayed}};
      if (result.witness) row["off_edges"] = OffEdges(*result.witness).dump();
      table.Row(row);
    } else if (displayed->parsed()) {
      const Network net = LoadNetwork(network_path, mode);
      DisplayOptions opts;
      opts.switching_limit = limit;
      const auto list = DisplayedTrees(net, opts);
      if (count_only) {
        out << list.size() << '\n';
        return 0;
      }
      for (std::size_t i = 0; i < list.size(); ++i) table.Row({{"index", i}, {"newick", io::WriteTree(list[i])}});
    } else if (trivial->parsed()) {
      out << io::WriteNewick(TrivialNetwork(LoadTreeSet(tree_paths, mode))).text << '\n';
    } else if (minret->parsed()) {
      SolverOptions opts;
      opts.enumerate = enumerate;
      const MinRetResult result = MinReticulations(LoadTreeSet(tree_paths, mode), opts);
      table.Row({{"r", result.r}, {"witness", NetworkText(result.witness)}});
    } else if (worstcase->parsed()) {
      WorstCaseOptions opts;
      opts.enumerate = enumerate;
      opts.seed = seed;
      if (exhaustive) opts.exhaustive = true;
      if (samples) {
        opts.exhaustive = false;
        opts.samples = *samples;
      }
      const WorstCaseResult result = WorstCaseR(n, t, mode, opts);
      const auto all_trees = EnumerateTrees(n, mode);
      ordered_json witness = ordered_json::array();
      for (int i : result.witness) witness.push_back(io::WriteTree(all_trees[static_cast<std::size_t>(i)]));
      table.Row({{"n", n},
                 {"t", t},
                 {"r", result.r},
                 {"exhaustive", result.exhaustive},
                 {"sets_examined", result.sets_examined},
                 {"witness", common.format == "csv" ? ordered_json(witness.dump()) : witness}});
    } else if (bounds->parsed()) {
      ReportRows(out, common.format, StatementReports(stmt, n, t, r, mode));
    } else if (verify->parsed()) {
      const std::string format = app.get_option("--format")->count() > 0 ? common.format : "csv";
      ReportRows(out, format, lemmas ? VerifyMathLemmas(kmax) : VerifyCounts(n_max, r_max, mode, enumerate));
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace retnet::cli
