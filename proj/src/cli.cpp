#include "powersim/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "powersim/core.hpp"
#include "powersim/export.hpp"
#include "powersim/frames.hpp"
#include "powersim/parallel.hpp"
#include "powersim/reels.hpp"
#include "powersim/scenario.hpp"

namespace powersim {

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  unsigned threads = default_thread_count();
};

struct RuntimeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeFailure("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeFailure("cannot write '" + path.string() + "'");
  out << text;
}

fs::path output_dir(const GlobalOptions& g) {
  fs::path dir = g.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv(kOutDirEnv);
    dir = env && *env ? env : ".";
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw RuntimeFailure("cannot create output directory '" + dir.string() + "'");
  return dir;
}

Scenario load(const std::string& path, const GlobalOptions& g, std::ostream& err) {
  ParsedScenario parsed = parse_scenario(read_file(path));
  for (const auto& w : parsed.warnings) err << "warning: " << w << "\n";
  if (g.seed) parsed.scenario.sampler.rng_seed = *g.seed;
  parsed.scenario.simulation.frame.threads = std::max(1u, g.threads);
  return parsed.scenario;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Power-struggle simulation engine"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Master seed (overrides the scenario)");
  app.add_option("--out-dir", g.out_dir,
                 std::string("Output directory (default: $") + kOutDirEnv + " or .)");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string file;
  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("file", file, "Scenario JSON")->required();

  std::size_t steps = 1;
  auto* step = app.add_subcommand("step", "Evolve sizes under fixed tactics, CSV out");
  step->add_option("file", file, "Scenario JSON")->required();
  step->add_option("--t", steps, "Number of steps");

  std::optional<std::size_t> lines, horizon, depth, branch;
  std::optional<double> p_min;
  auto* frame = app.add_subcommand("frame", "One transition distribution, JSON and DOT out");
  frame->add_option("file", file, "Scenario JSON")->required();
  frame->add_option("--lines", lines, "Lines of play");
  frame->add_option("--horizon", horizon, "Horizon of each line");

  auto* reels = app.add_subcommand("reels", "Full reel tree, JSON, DOT and reel table out");
  reels->add_option("file", file, "Scenario JSON")->required();
  reels->add_option("--lines", lines, "Lines of play per node");
  reels->add_option("--horizon", horizon, "Horizon of each line");
  reels->add_option("--depth", depth, "Maximum tree depth");
  reels->add_option("--branch", branch, "Children kept per node (0 keeps all)");
  reels->add_option("--p-min", p_min, "Smallest edge probability kept");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitFailure;
  }
  if (seed_opt->count() > 0) g.seed = seed_value;

  try {
    Scenario sc = load(file, g, err);
    if (lines) sc.simulation.frame.lines = *lines;
    if (horizon) sc.simulation.frame.horizon = *horizon;
    if (depth) sc.simulation.depth_max = *depth;
    if (branch) sc.simulation.branch_k = *branch;
    if (p_min) sc.simulation.p_min = *p_min;
    const State root = sc.state();

    if (validate->parsed()) {
      out << "valid: " << sc.agents.size() << " agents\n";
      return kExitOk;
    }

    const fs::path dir = output_dir(g);
    write_file(dir / "state.dot", export_state_dot(root, sc.agents));

    if (step->parsed()) {
      const std::string csv = export_sizes_csv(evolve(root, sc.params, steps), sc.agents);
      write_file(dir / "sizes.csv", csv);
      out << csv;
      return kExitOk;
    }

    if (frame->parsed()) {
      const FrameDistribution dist =
          transition_distribution(root, sc.params, sc.sampler, sc.simulation.frame);
      write_file(dir / "frame.json", frame_distribution_json(dist).dump(2) + "\n");
      ReelNode one;
      one.state = root;
      for (std::size_t k = 0; k < dist.frames.size(); ++k) {
        ReelNode child;
        child.state = State{dist.frames[k].representative, dist.frames[k].next_sizes};
        child.depth = 1;
        child.edge_probability = dist.frames[k].probability;
        child.path = {k};
        child.reason = LeafReason::depth_limit;
        one.children.push_back(std::move(child));
      }
      write_file(dir / "frame.dot", export_tree_dot(one));
      const auto& d = dist.diagnostics;
      out << "status: " << to_string(d.status) << "\n"
          << "lines: " << d.lines_retained << " of " << d.lines_generated << " rational\n"
          << "frames: " << dist.frames.size() << "\n";
      for (std::size_t k = 0; k < std::min<std::size_t>(dist.frames.size(), 10); ++k) {
        out << "  p=" << format_number(dist.frames[k].probability) << " sizes=";
        for (double s : dist.frames[k].next_sizes) out << ' ' << format_number(s);
        out << "\n";
      }
      return kExitOk;
    }

    if (reels->parsed()) {
      const ReelNode tree = build_reel_tree(root, sc.simulation, sc.params, sc.sampler);
      const std::vector<Reel> table = enumerate_reels(tree);
      nlohmann::ordered_json doc;
      doc["schema"] = "powersim.reels/1";
      doc["agents"] = sc.agents;
      doc["tree"] = reel_tree_json(tree);
      doc["reels"] = reel_table_json(table);
      write_file(dir / "reels.json", doc.dump(2) + "\n");
      write_file(dir / "reels.dot", export_tree_dot(tree));
      out << "nodes: " << count_nodes(tree) << ", reels: " << table.size() << "\n";
      for (std::size_t k = 0; k < std::min<std::size_t>(table.size(), 10); ++k) {
        out << "  p=" << format_number(table[k].probability) << " path=";
        for (std::size_t idx : table[k].path) out << '/' << idx;
        out << "\n";
      }
      return kExitOk;
    }
  } catch (const ScenarioError& e) {
    err << "invalid scenario (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace powersim
