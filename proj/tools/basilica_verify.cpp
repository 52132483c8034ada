// Command-line front end: runs a named campaign or exports an object.
//
//   basilica_verify key-lemma --n 1 --slack 2
//   basilica_verify quarter-spaces --n 3 --out report.json
//   basilica_verify export graph --graph J2 --format dot
//
// Exit status: 0 certified, 1 falsified, 2 inconclusive, 3 usage or I/O error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "basilica/campaigns.hpp"
#include "basilica/io.hpp"

namespace {

constexpr int kUsageError = 3;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

/// --out when given, else $BASILICA_OUT_DIR/<name>, else stdout.
std::string output_path(const std::string& out, const std::string& default_name) {
  if (!out.empty()) return out;
  if (const char* dir = std::getenv("BASILICA_OUT_DIR"); dir && *dir) {
    return (std::filesystem::path(dir) / default_name).string();
  }
  return "";
}

basilica::AddressedGraph named_graph(const std::string& name) {
  using namespace basilica;
  if (name == "G0") return make_G0();
  if (name == "dance") return make_graph_dance();
  if (name.size() > 1 && (name[0] == 'J' || name[0] == 'O')) {
    const auto n = static_cast<std::size_t>(std::stoul(name.substr(1)));
    return name[0] == 'J' ? make_J(n) : make_O(n);
  }
  throw std::invalid_argument("unknown graph " + name + " (expected G0, Jn, On or dance)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks of the Basilica cube complex computations"};
  app.require_subcommand(1);

  basilica::CampaignConfig cfg;
  std::size_t rank_cap = 0;
  std::string out;
  std::string format = "json";

  for (const auto& name : basilica::campaign_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " campaign");
    sub->add_option("--n", cfg.n, "family index n")->capture_default_str();
    sub->add_option("--slack", cfg.slack, "extra expansions allowed in the key-lemma search")->capture_default_str();
    sub->add_option("--budget", cfg.budget, "node budget (0: campaign default)")->capture_default_str();
    sub->add_option("--rank-cap", rank_cap, "rank cap override");
    sub->add_option("--seed", cfg.seed, "seed for randomized suites")->capture_default_str();
    sub->add_option("--samples", cfg.samples, "sample count (0: campaign default)");
    sub->add_option("--out", out, "report path (default: $BASILICA_OUT_DIR/<campaign>.json or stdout)");
    sub->add_option("--format", format, "json or summary")->check(CLI::IsMember({"json", "summary"}));
    sub->callback([&cfg, name] { cfg.campaign = name; });
  }

  std::string what;
  std::string graph = "G0";
  auto* exp = app.add_subcommand("export", "export a graph, diagram, BFS graph or complex");
  exp->add_option("what", what, "graph | diagram | bfs | complex")
      ->required()
      ->check(CLI::IsMember({"graph", "diagram", "bfs", "complex"}));
  exp->add_option("--graph", graph, "graph name: G0, Jn, On, dance")->capture_default_str();
  exp->add_option("--n", cfg.n, "n for the f_n diagram and the nerve complex")->capture_default_str();
  exp->add_option("--rank-cap", rank_cap, "rank cap for bfs");
  exp->add_option("--budget", cfg.budget, "node budget for bfs");
  exp->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  exp->add_option("--out", out, "output path (default: $BASILICA_OUT_DIR/<what>.<format> or stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }
  if (rank_cap > 0) cfg.rank_cap = rank_cap;

  try {
    if (exp->parsed()) {
      using namespace basilica;
      std::string text;
      if (what == "graph") {
        const auto g = named_graph(graph);
        text = format == "dot" ? io::to_dot(g, graph) : io::to_json(g).dump(2) + "\n";
      } else if (what == "diagram") {
        const auto f = make_f_n(cfg.n);
        text = format == "dot" ? io::to_dot(f) : io::to_json(f).dump(2) + "\n";
      } else if (what == "bfs") {
        const auto g = bfs_sublevel(CubeVertex::of(GraphPairDiagram::identity(named_graph(graph))),
                                    cfg.rank_cap.value_or(4), cfg.budget ? cfg.budget : 200);
        text = format == "dot" ? io::to_dot(g) : io::to_json(g).dump(2) + "\n";
      } else {
        if (format == "dot") throw std::invalid_argument("complexes export as json only");
        const auto r = check_nerve(cfg.n, 2 * cfg.n + 9, cfg.budget ? cfg.budget : 400);
        text = io::to_json(r.nerve).dump(2) + "\n";
      }
      write_output(text, output_path(out, what + "." + format));
      return 0;
    }

    const auto report = basilica::run_campaign(cfg);
    const std::string text = format == "summary"
                                 ? cfg.campaign + ": " + basilica::status_name(report.status) + "\n"
                                 : report.body.dump(2) + "\n";
    write_output(text, output_path(out, cfg.campaign + ".json"));
    return static_cast<int>(report.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
