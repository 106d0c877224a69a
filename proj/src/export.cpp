#include "powersim/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace powersim {

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

namespace {

constexpr double kMinNodeWidth = 0.2;
constexpr double kMaxNodeWidth = 2.0;
constexpr double kMinPenWidth = 0.5;
constexpr double kPenScale = 10.0;

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string sizes_label(const SizeVector& sizes) {
  std::string out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) out += ", ";
    out += fixed(sizes[i], 3);
  }
  return out;
}

}  // namespace

std::string export_state_dot(const State& state, const std::vector<std::string>& names) {
  check_state(state);
  const std::size_t n = state.agents();
  if (!names.empty() && names.size() != n)
    throw std::invalid_argument("export_state_dot: name count does not match agents");
  const double max = n ? *std::max_element(state.sizes.begin(), state.sizes.end()) : 0.0;

  std::ostringstream os;
  os << "digraph state {\n";
  os << "  node [shape=circle, style=filled, fillcolor=\"#d9d9d9\", fixedsize=true];\n";
  for (std::size_t i = 0; i < n; ++i) {
    const std::string name = names.empty() ? "agent" + std::to_string(i + 1) : names[i];
    const double s = state.sizes[i];
    const bool dead = s <= 0.0;
    const double width =
        dead || max <= 0.0 ? kMinNodeWidth : std::max(kMinNodeWidth, kMaxNodeWidth * s / max);
    std::string label = name + "\\n" + (dead ? std::string("dead") : fixed(s, 3));
    const double self = state.tactics(i, i);
    if (self != 0.0) label += "\\nself " + format_number(self);
    os << "  a" << i << " [label=" << quote(label) << ", width=" << fixed(width, 3)
       << ", size_power=" << format_number(s) << (dead ? ", dead=true" : "") << "];\n";
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double tau = state.tactics(i, j);
      if (i == j || tau == 0.0) continue;
      const double pen = std::max(kMinPenWidth, kPenScale * std::abs(tau) * state.sizes[j]);
      os << "  a" << j << " -> a" << i << " [color=" << (tau > 0.0 ? "green" : "red")
         << ", penwidth=" << fixed(pen, 3) << ", label=" << quote(format_number(tau)) << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string export_tree_dot(const ReelNode& tree) {
  std::ostringstream os;
  os << "digraph reels {\n";
  os << "  node [shape=box];\n";
  std::size_t next_id = 0;
  std::function<std::size_t(const ReelNode&)> emit = [&](const ReelNode& node) {
    const std::size_t id = next_id++;
    std::string label = "s: " + sizes_label(node.state.sizes);
    if (node.dropped_mass > 0.0) label += "\\ndropped " + fixed(node.dropped_mass, 3);
    if (node.is_leaf() && node.reason != LeafReason::depth_limit)
      label += std::string("\\n") + to_string(node.reason);
    os << "  n" << id << " [label=" << quote(label) << "];\n";
    for (const ReelNode& child : node.children) {
      const std::size_t cid = emit(child);
      os << "  n" << id << " -> n" << cid << " [label=" << quote(fixed(child.edge_probability, 3))
         << "];\n";
    }
    return id;
  };
  emit(tree);
  os << "}\n";
  return os.str();
}

std::string export_sizes_csv(const std::vector<SizeVector>& frames,
                             const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  out += '\n';
  for (const auto& row : frames) {
    if (row.size() != names.size())
      throw std::invalid_argument("export_sizes_csv: row length does not match names");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json tactics_json(const TacticMatrix& tactics) {
  return nlohmann::ordered_json(tactics.columns());
}

nlohmann::ordered_json frame_distribution_json(const FrameDistribution& dist) {
  using oj = nlohmann::ordered_json;
  const auto& d = dist.diagnostics;
  oj out;
  out["schema"] = "powersim.frames/1";
  out["status"] = to_string(d.status);
  out["diagnostics"] = {{"lines_generated", d.lines_generated},
                        {"lines_retained", d.lines_retained},
                        {"clusters", d.clusters},
                        {"equilibria", d.equilibria},
                        {"security_fallback", d.security_fallback},
                        {"candidates_limited", d.candidates_limited},
                        {"minimax", d.minimax}};
  oj frames = oj::array();
  for (const Frame& f : dist.frames) {
    frames.push_back({{"probability", f.probability},
                      {"support", f.support},
                      {"total_weight", f.total_weight},
                      {"tactics", tactics_json(f.representative)},
                      {"sizes", f.next_sizes},
                      {"grid_steps", f.key.steps},
                      {"grid_key", f.key.cells}});
  }
  out["frames"] = std::move(frames);
  return out;
}

nlohmann::ordered_json reel_tree_json(const ReelNode& node) {
  using oj = nlohmann::ordered_json;
  oj out;
  out["path"] = node.path;
  out["depth"] = node.depth;
  out["edge_probability"] = node.edge_probability;
  out["sizes"] = node.state.sizes;
  out["tactics"] = tactics_json(node.state.tactics);
  out["reason"] = to_string(node.reason);
  if (node.reason == LeafReason::expanded || node.reason == LeafReason::empty_distribution ||
      node.reason == LeafReason::all_pruned) {
    out["status"] = to_string(node.status);
    out["lines_retained"] = node.lines_retained;
    out["dropped_mass"] = node.dropped_mass;
  }
  oj children = oj::array();
  for (const auto& c : node.children) children.push_back(reel_tree_json(c));
  out["children"] = std::move(children);
  return out;
}

nlohmann::ordered_json reel_table_json(const std::vector<Reel>& reels) {
  using oj = nlohmann::ordered_json;
  oj out = oj::array();
  for (const Reel& r : reels) {
    out.push_back({{"path", r.path},
                   {"probability", r.probability},
                   {"edges", r.edges},
                   {"final_sizes", r.states.back().sizes}});
  }
  return out;
}

}  // namespace powersim
