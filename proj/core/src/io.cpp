// Copyright 2026 The multicon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "multicon/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace multicon {

namespace {

using nlohmann::json;

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

// Splits into non-empty, comment-stripped lines; tolerates CRLF.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream in(line);
    Line l{number, {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()}};
    if (!l.tokens.empty()) out.push_back(std::move(l));
    if (end == text.size()) break;
  }
  return out;
}

std::size_t parse_index(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty())
    throw ParseError("line " + std::to_string(line) + ": '" + token + "' is not an integer");
  if (v < 1) throw InvalidNode("line " + std::to_string(line) + ": node " + token + " is not a positive index");
  return static_cast<std::size_t>(v);
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + " JSON: " + e.what());
  }
}

std::size_t json_index(const json& v, const char* what) {
  if (!v.is_number_integer()) throw ParseError(std::string(what) + " must be an integer, got " + v.dump());
  const auto i = v.get<long long>();
  if (i < 1) throw InvalidNode(std::string(what) + " " + std::to_string(i) + " is not a positive index");
  return static_cast<std::size_t>(i);
}

}  // namespace

Digraph parse_edge_list(std::string_view text) {
  std::optional<std::size_t> declared;
  std::vector<Edge> edges;
  std::size_t largest = 0;
  for (const auto& line : tokenize(text)) {
    if (line.tokens.size() == 2 && line.tokens[0] == "n") {
      declared = parse_index(line.tokens[1], line.number);
      continue;
    }
    if (line.tokens.size() != 2)
      throw ParseError("line " + std::to_string(line.number) + ": expected 'u v', got " +
                       std::to_string(line.tokens.size()) + " fields");
    const std::size_t u = parse_index(line.tokens[0], line.number);
    const std::size_t v = parse_index(line.tokens[1], line.number);
    largest = std::max({largest, u, v});
    edges.push_back({u - 1, v - 1});
  }
  const std::size_t n = declared.value_or(largest);
  if (n == 0) throw InvalidGraph("edge list has no nodes");
  if (largest > n)
    throw InvalidNode("edge endpoint " + std::to_string(largest) + " exceeds the declared node count " +
                      std::to_string(n));
  return Digraph(n, std::move(edges));
}

Digraph parse_graph_json(std::string_view text) {
  const json j = parse_json(text, "graph");
  if (!j.is_object() || !j.contains("n")) throw ParseError("graph JSON needs an object with \"n\"");
  const std::size_t n = json_index(j.at("n"), "\"n\"");
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    if (!j.at("edges").is_array()) throw ParseError("\"edges\" must be an array");
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("edge " + e.dump() + " is not a [u, v] pair");
      const std::size_t u = json_index(e[0], "edge endpoint");
      const std::size_t v = json_index(e[1], "edge endpoint");
      if (u > n || v > n) throw InvalidNode("edge " + e.dump() + " is outside 1.." + std::to_string(n));
      edges.push_back({u - 1, v - 1});
    }
  }
  return Digraph(n, std::move(edges));
}

Digraph parse_graph(std::string_view text) {
  const auto first = std::find_if(text.begin(), text.end(), [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
  if (first != text.end() && *first == '{') return parse_graph_json(text);
  return parse_edge_list(text);
}

Partition parse_partition_json(std::string_view text, std::size_t n) {
  const json j = parse_json(text, "partition");
  if (!j.is_object() || !j.contains("cells") || !j.at("cells").is_array())
    throw ParseError("partition JSON needs an object with a \"cells\" array");
  std::vector<NodeSet> cells;
  for (const auto& c : j.at("cells")) {
    if (!c.is_array()) throw ParseError("cell " + c.dump() + " is not an array");
    NodeSet cell;
    for (const auto& v : c) {
      const std::size_t i = json_index(v, "cell member");
      if (i > n) throw InvalidPartition("node " + std::to_string(i) + " is outside 1.." + std::to_string(n));
      cell.push_back(i - 1);
    }
    cells.push_back(std::move(cell));
  }
  return Partition(n, std::move(cells));
}

ControlLayer parse_layer_diff(std::string_view text, std::size_t n, LayerMode mode) {
  std::vector<LinkChange> changes;
  for (const auto& line : tokenize(text)) {
    if (line.tokens.size() != 3 || (line.tokens[0] != "+" && line.tokens[0] != "-"))
      throw ParseError("line " + std::to_string(line.number) + ": expected '+ u v' or '- u v'");
    const std::size_t u = parse_index(line.tokens[1], line.number);
    const std::size_t v = parse_index(line.tokens[2], line.number);
    if (u > n || v > n)
      throw InvalidNode("line " + std::to_string(line.number) + ": node outside 1.." + std::to_string(n));
    changes.push_back({u - 1, v - 1, line.tokens[0] == "+"});
  }
  return ControlLayer::from_changes(n, changes, mode);
}

std::string format_edge_list(const Digraph& g) {
  std::ostringstream out;
  out << "n " << g.size() << "\n";
  for (const auto& e : g.edges()) out << e.from + 1 << " " << e.to + 1 << "\n";
  return out.str();
}

std::string format_graph_json(const Digraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.from + 1, e.to + 1});
  return json{{"n", g.size()}, {"edges", edges}}.dump() + "\n";
}

std::string format_partition_json(const Partition& p) {
  json cells = json::array();
  for (const auto& c : p.cells()) {
    json cell = json::array();
    for (Node v : c) cell.push_back(v + 1);
    cells.push_back(cell);
  }
  return json{{"cells", cells}}.dump() + "\n";
}

std::string format_layer_diff(const ControlLayer& layer) {
  std::ostringstream out;
  for (const auto& c : layer.changes()) out << (c.added ? "+ " : "- ") << c.from + 1 << " " << c.to + 1 << "\n";
  return out.str();
}

std::string format_matrix(const IntMatrix& m) {
  std::size_t width = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) width = std::max(width, std::to_string(m(i, j)).size());
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << std::setw(static_cast<int>(width)) << m(i, j);
    out << "\n";
  }
  return out.str();
}

std::string format_dot(const Digraph& original, const ControlLayer& layer) {
  std::ostringstream out;
  out << "digraph G {\n";
  for (Node v = 0; v < original.size(); ++v) out << "  " << v + 1 << ";\n";
  std::vector<Edge> removed;
  for (const auto& c : layer.changes())
    if (!c.added) removed.push_back({c.from, c.to});
  for (const auto& e : original.edges()) {
    if (std::find(removed.begin(), removed.end(), e) != removed.end()) continue;
    out << "  " << e.from + 1 << " -> " << e.to + 1 << " [class=\"original\", style=solid, color=blue];\n";
  }
  for (const auto& c : layer.changes()) {
    out << "  " << c.from + 1 << " -> " << c.to + 1;
    if (c.added)
      out << " [class=\"added\", label=\"+\", color=red];\n";
    else
      out << " [class=\"removed\", label=\"-\", style=dashed, color=green];\n";
  }
  out << "}\n";
  return out.str();
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
  out << "t";
  for (std::size_t i = 1; i <= t.agents; ++i) out << ",x_" << i;
  if (t.model == Model::Second)
    for (std::size_t i = 1; i <= t.agents; ++i) out << ",v_" << i;
  out << "\n";
  out << std::setprecision(17);
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    out << t.times[k];
    for (Eigen::Index i = 0; i < t.states[k].size(); ++i) out << "," << t.states[k](i);
    out << "\n";
  }
}

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ParseError("failed writing '" + path + "'");
}

}  // namespace multicon
