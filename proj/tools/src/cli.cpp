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

#include "multicon/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "multicon/coarsest.hpp"
#include "multicon/examples.hpp"
#include "multicon/io.hpp"
#include "multicon/sim.hpp"
#include "multicon/stability.hpp"
#include "multicon/synthesis.hpp"

namespace multicon::cli {

namespace {

using nlohmann::json;

// --- JSON shapes ----------------------------------------------------------------

json nodes_json(const NodeSet& s) {
  json a = json::array();
  for (Node v : s) a.push_back(v + 1);
  return a;
}

json cells_json(const std::vector<NodeSet>& cells) {
  json a = json::array();
  for (const auto& c : cells) a.push_back(nodes_json(c));
  return a;
}

json complex_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

json spectrum_json(const std::vector<Complex>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(complex_json(z));
  return a;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json changes_json(const ControlLayer& layer) {
  json a = json::array();
  for (const auto& c : layer.changes())
    a.push_back(std::string(c.added ? "+ " : "- ") + std::to_string(c.from + 1) + " " + std::to_string(c.to + 1));
  return a;
}

json report_json(const ConvergenceReport& rep, bool with_means) {
  json cells = json::array();
  json stable = json::array();
  json clusters = json::array();
  for (const auto& c : rep.cells) {
    json cell{{"cell", nodes_json(c.cell)}, {"final_dispersion", finite_or_null(c.final_dispersion)}, {"stable", c.stable}};
    if (with_means) cell["final_mean"] = finite_or_null(c.final_mean);
    cells.push_back(std::move(cell));
    if (c.stable) {
      stable.push_back(nodes_json(c.cell));
      if (c.cell.size() > 1) clusters.push_back(nodes_json(c.cell));
    }
  }
  json j{{"final_time", rep.final_time},
         {"diverged", rep.diverged},
         {"tol", rep.tol},
         {"cells", cells},
         {"stable_cells", stable},
         {"converged_clusters", clusters}};
  if (with_means) {
    json gaps = json::array();
    for (const auto& row : rep.mean_gaps) {
      json r = json::array();
      for (double g : row) r.push_back(finite_or_null(g));
      gaps.push_back(r);
    }
    j["mean_gaps"] = gaps;
  }
  return j;
}

json region_json(const GainRegion& g, const std::optional<double>& k1, const std::optional<double>& k2) {
  json clusters = json::array();
  for (const auto& c : g.clusters) {
    json row{{"kind", c.common ? "common" : "exclusive"},
             {"cells", cells_json(c.cells)},
             {"eigenvalues", spectrum_json(c.spectrum)},
             {"lambda2", finite_or_null(c.lambda2)},
             {"k1_min", c.k1_min},
             {"k2_min", c.k2_min}};
    if (k1 && k2) row["stable"] = std::isinf(c.lambda2) || routh_check(g.a, g.b, *k1, *k2, c.lambda2);
    clusters.push_back(std::move(row));
  }
  json j{{"gamma", g.gamma}, {"a", g.a}, {"b", g.b}, {"k1_min", g.k1_min}, {"k2_min", g.k2_min}, {"clusters", clusters}};
  if (k1 && k2) {
    j["k1"] = *k1;
    j["k2"] = *k2;
    j["stable"] = g.contains(*k1, *k2);
  }
  return j;
}

// --- inputs -----------------------------------------------------------------------

Digraph load_graph(const std::string& path) {
  if (path.empty()) throw ParseError("--graph is required");
  return parse_graph(read_text(path));
}

ControlLayer load_layer(const std::string& path, std::size_t n) {
  if (path.empty()) return ControlLayer::empty(n);
  ControlLayer layer = parse_layer_diff(read_text(path), n, LayerMode::Signed);
  const auto changes = layer.changes();
  const bool removes = std::any_of(changes.begin(), changes.end(), [](const LinkChange& c) { return !c.added; });
  layer.mode = removes ? LayerMode::Signed : LayerMode::AddOnly;
  return layer;
}

std::optional<Partition> load_partition(const std::string& path, std::size_t n) {
  if (path.empty()) return std::nullopt;
  return parse_partition_json(read_text(path), n);
}

Eigen::VectorXd load_vector(const std::string& source, std::size_t n, std::mt19937_64& rng) {
  if (source == "random") return random_state(n, rng);
  std::istringstream in(read_text(source));
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError("'" + source + "': '" + token + "' is not a number");
    }
  }
  if (values.size() != n)
    throw DimensionMismatch("'" + source + "' has " + std::to_string(values.size()) + " values, expected " +
                            std::to_string(n));
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(n));
}

struct Loaded {
  Digraph graph;
  ControlLayer layer;
  AppliedLayer applied;
};

Loaded load_system(const RunConfig& cfg) {
  Digraph g = load_graph(cfg.graph);
  ControlLayer layer = load_layer(cfg.layer, g.size());
  AppliedLayer applied = apply_layer(laplacian(g), layer);
  return Loaded{std::move(g), std::move(layer), std::move(applied)};
}

void emit(const RunConfig& cfg, std::ostream& out, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.report.empty())
    out << text;
  else
    write_text(cfg.report, text);
}

StepOptions step_options(const RunConfig& cfg) { return StepOptions{cfg.dt, cfg.horizon, cfg.stride, 1e9}; }

// --- subcommands ------------------------------------------------------------------

int analyze(const RunConfig& cfg, std::ostream& out) {
  const Loaded sys = load_system(cfg);
  const IntMatrix& total = sys.applied.laplacian;
  const CoarsestEep c = coarsest_eep(total);

  json gamma = json::array();
  for (const auto& g : c.gamma) {
    json v = json::array();
    for (const auto& q : g) v.push_back(to_string(q));
    gamma.push_back(v);
  }
  json j{{"n", sys.graph.size()},
         {"links", sys.applied.graph.edges().size()},
         {"mu", c.mu},
         {"H", cells_json(c.decomposition.exclusive)},
         {"C", nodes_json(c.decomposition.common)},
         {"pi_star", cells_json(c.pi_star.cells())},
         {"pi_star_is_eep", is_eep(total, c.pi_star)},
         {"gamma", gamma},
         {"rooted", is_rooted(sys.applied.graph)},
         {"weakly_connected", is_weakly_connected(sys.applied.graph)}};
  if (c.mu == 1) j["note"] = "consensus case, L^u = 0 suffices";

  if (auto target = load_partition(cfg.partition, sys.graph.size())) {
    const NodeSet rooted = rooted_nodes(sys.applied.graph);
    json per_cell = json::array();
    for (const auto& cell : target->cells()) {
      std::size_t k = 0;
      for (Node v : cell) k += std::binary_search(rooted.begin(), rooted.end(), v) ? 1 : 0;
      per_cell.push_back(k);
    }
    j["target"] = json{{"cells", cells_json(target->cells())},
                       {"is_eep", is_eep(total, *target)},
                       {"refines_pi_star", target->refines(c.pi_star)},
                       {"rooted_nodes_per_cell", per_cell}};
  }
  emit(cfg, out, j);
  return kOk;
}

int synthesize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Digraph g = load_graph(cfg.graph);
  const auto target = load_partition(cfg.partition, g.size());
  if (!target) throw ParseError("--partition is required");
  const IntMatrix l = laplacian(g);

  ControlLayer layer;
  std::optional<std::size_t> constructive_cost;
  SolveStats stats;
  if (cfg.mode == "constructive") {
    layer = constructive_add(l, *target);
  } else {
    const auto mode = parse_layer_mode(cfg.mode);
    if (!mode) throw ParseError("unknown mode '" + cfg.mode + "'");
    layer = solve_bip(build_bip(l, *target, *mode), SolveOptions{cfg.node_limit}, &stats);
    if (*mode == LayerMode::AddOnly) {
      try {
        constructive_cost = constructive_add(l, *target).cost();
      } catch (const InsufficientSources& e) {
        err << "note: constructive algorithm not applicable: " << e.what() << "\n";
      }
    }
  }
  const AppliedLayer applied = apply_layer(l, layer);

  std::ostringstream text;
  text << "# mode " << cfg.mode << "\n# cost " << layer.cost() << "\n";
  if (constructive_cost) {
    text << "# constructive cost " << *constructive_cost << "\n";
    if (*constructive_cost != layer.cost())
      err << "warning: constructive cost " << *constructive_cost << " differs from the optimum " << layer.cost()
          << "\n";
  }
  text << "# weakly connected " << (is_weakly_connected(applied.graph) ? "yes" : "no") << "\n";
  text << "# L + L^u\n";
  std::istringstream rows(format_matrix(applied.laplacian));
  for (std::string row; std::getline(rows, row);) text << "#   " << row << "\n";
  text << format_layer_diff(layer);
  out << text.str();

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path dir(cfg.out_dir);
    write_text((dir / "layer.diff").string(), format_layer_diff(layer));
    write_text((dir / "laplacian.txt").string(), format_matrix(applied.laplacian));
    write_text((dir / "result.edges").string(), format_edge_list(applied.graph));
    write_text((dir / "graph.dot").string(), format_dot(g, layer));
  }
  return kOk;
}

int gains(const RunConfig& cfg, std::ostream& out) {
  const Loaded sys = load_system(cfg);
  const IntMatrix& total = sys.applied.laplacian;
  const CoarsestEep c = coarsest_eep(total);
  const Partition pi = load_partition(cfg.partition, sys.graph.size()).value_or(c.pi_star);
  const GainRegion region = gain_region(total, pi, cfg.a, cfg.b, c.decomposition);
  json j = region_json(region, cfg.k1, cfg.k2);
  j["partition"] = cells_json(pi.cells());
  emit(cfg, out, j);
  return kOk;
}

int simulate(const RunConfig& cfg, std::ostream& out) {
  const Loaded sys = load_system(cfg);
  const IntMatrix& total = sys.applied.laplacian;
  const std::size_t n = sys.graph.size();
  const Partition pi = load_partition(cfg.partition, n).value_or(coarsest_eep(total).pi_star);
  std::mt19937_64 rng(cfg.seed);
  const Eigen::VectorXd x0 = load_vector(cfg.x0, n, rng);

  Trajectory t;
  bool with_means = true;
  if (cfg.model == "single") {
    t = simulate_single(total, x0, step_options(cfg));
  } else if (cfg.model == "second") {
    if (!cfg.k1 || !cfg.k2) throw ParseError("--k1 and --k2 are required for the second-order model");
    const Eigen::VectorXd v0 = load_vector(cfg.v0, n, rng);
    const SecondOrderGains g{cfg.a, cfg.b, *cfg.k1, *cfg.k2};
    if (cfg.coords == "error") {
      t = simulate_second_error(total, pi, g, x0, v0, step_options(cfg));
      with_means = false;
    } else {
      t = simulate_second(total, g, x0, v0, step_options(cfg));
    }
  } else {
    throw ParseError("unknown model '" + cfg.model + "'");
  }

  if (!cfg.csv.empty()) {
    std::ostringstream csv;
    write_trajectory_csv(csv, t);
    if (cfg.csv == "-")
      out << csv.str();
    else
      write_text(cfg.csv, csv.str());
  }
  json j = report_json(convergence_report(t, pi, cfg.tol), with_means);
  j["model"] = cfg.model;
  j["coords"] = cfg.model == "second" ? cfg.coords : "state";
  j["partition"] = cells_json(pi.cells());
  j["dt"] = cfg.dt;
  j["seed"] = cfg.seed;
  if (cfg.csv != "-") emit(cfg, out, j);
  return kOk;
}

int example(const RunConfig& cfg, std::ostream& out) {
  const BuiltinExample e = builtin_example(cfg.example);
  const std::size_t n = e.original.rows();
  SolveStats stats;
  const ControlLayer layer = solve_bip(build_bip(e.original, e.target, e.mode), SolveOptions{cfg.node_limit}, &stats);
  const AppliedLayer applied = apply_layer(e.original, layer);
  const CoarsestEep c = coarsest_eep(applied.laplacian);

  json j{{"example", e.id},
         {"summary", e.summary},
         {"mode", std::string(to_string(e.mode))},
         {"target", cells_json(e.target.cells())},
         {"layer", changes_json(layer)},
         {"cost", layer.cost()},
         {"target_is_eep", is_eep(applied.laplacian, e.target)},
         {"weakly_connected", is_weakly_connected(applied.graph)},
         {"pi_star", cells_json(c.pi_star.cells())},
         {"target_refines_pi_star", e.target.refines(c.pi_star)},
         {"pi_star_equals_target", c.pi_star == e.target}};
  if (e.mode == LayerMode::AddOnly) j["constructive_cost"] = constructive_add(e.original, e.target).cost();

  std::mt19937_64 rng(cfg.seed);
  const Eigen::VectorXd x0 = random_state(n, rng);
  if (!e.second_order) {
    const Trajectory t = simulate_single(applied.laplacian, x0, step_options(cfg));
    j["simulation"] = report_json(convergence_report(t, e.target, cfg.tol), true);
  } else {
    const Eigen::VectorXd v0 = random_state(n, rng);
    const double a = e.gains.front().a;
    const double b = e.gains.front().b;
    const GainRegion region = gain_region(applied.laplacian, c.pi_star, a, b, c.decomposition);
    j["gains"] = region_json(region, std::nullopt, std::nullopt);
    std::vector<SecondOrderGains> runs = e.gains;
    if (cfg.k1 || cfg.k2) runs = {{a, b, cfg.k1.value_or(e.gains.front().k1), cfg.k2.value_or(e.gains.front().k2)}};
    json sims = json::array();
    for (const auto& g : runs) {
      const Trajectory t = simulate_second_error(applied.laplacian, c.pi_star, g, x0, v0, step_options(cfg));
      json s = report_json(convergence_report(t, c.pi_star, cfg.tol), false);
      s["k1"] = g.k1;
      s["k2"] = g.k2;
      s["in_gain_region"] = region.contains(g.k1, g.k2);
      sims.push_back(std::move(s));
    }
    j["simulations"] = sims;
  }
  emit(cfg, out, j);
  return kOk;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "analyze") return analyze(cfg, out);
    if (cfg.command == "synthesize") return synthesize(cfg, out, err);
    if (cfg.command == "gains") return gains(cfg, out);
    if (cfg.command == "simulate") return simulate(cfg, out);
    if (cfg.command == "example") return example(cfg, out);
    err << "error: unknown command '" << cfg.command << "'\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Multi-consensus control-layer synthesis and analysis"};
  app.require_subcommand(1);

  const auto input_file = CLI::Validator(
      [](std::string& path) -> std::string {
        if (path == "-" || std::filesystem::is_regular_file(path)) return {};
        return "file does not exist: " + path;
      },
      "FILE|-");
  const auto vector_source = CLI::Validator(
      [](std::string& source) -> std::string {
        if (source == "random" || source == "-" || std::filesystem::is_regular_file(source)) return {};
        return "expected 'random' or an existing file: " + source;
      },
      "FILE|random");
  double k1 = 0.0;
  double k2 = 0.0;
  std::vector<CLI::Option*> k1_opts;
  std::vector<CLI::Option*> k2_opts;

  auto add_graph = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--graph", cfg.graph, "Edge list or graph JSON (1-based), '-' for stdin")
                  ->check(input_file);
    if (required) o->required();
  };
  auto add_layer = [&](CLI::App* sub) {
    sub->add_option("--layer", cfg.layer, "Layer diff ('+ u v' / '- u v') applied to the graph")->check(input_file);
  };
  auto add_partition = [&](CLI::App* sub, const std::string& help) {
    return sub->add_option("--partition", cfg.partition, help)->check(input_file);
  };
  auto add_gains = [&](CLI::App* sub) {
    sub->add_option("--a", cfg.a, "Agent position feedback a");
    sub->add_option("--b", cfg.b, "Agent velocity feedback b");
    k1_opts.push_back(sub->add_option("--k1", k1, "Position coupling gain"));
    k2_opts.push_back(sub->add_option("--k2", k2, "Velocity coupling gain"));
  };
  auto add_steps = [&](CLI::App* sub) {
    sub->add_option("--dt", cfg.dt, "RK4 step")->check(CLI::PositiveNumber);
    sub->add_option("--horizon", cfg.horizon, "Final time")->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tol, "Dispersion tolerance for the stable flag")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Seed for random initial states");
    sub->add_option("--stride", cfg.stride, "Keep every k-th step in the trajectory")->check(CLI::PositiveNumber);
    sub->add_option("--report", cfg.report, "Write the JSON report here instead of stdout");
  };

  auto* an = app.add_subcommand("analyze", "Reaches, coarsest EEP and target checks");
  add_graph(an, true);
  add_layer(an);
  add_partition(an, "Target partition JSON to check");
  an->add_option("--report", cfg.report, "Write the JSON report here instead of stdout");

  auto* sy = app.add_subcommand("synthesize", "Minimal control layer making the target an EEP");
  add_graph(sy, true);
  add_partition(sy, "Target partition JSON")->required();
  sy->add_option("--mode", cfg.mode, "Layer kind")
      ->check(CLI::IsMember({"add", "signed", "signed-connected", "constructive"}));
  sy->add_option("--out-dir", cfg.out_dir, "Write layer.diff, laplacian.txt, result.edges and graph.dot here");
  sy->add_option("--node-limit", cfg.node_limit, "Branch-and-bound node budget")->check(CLI::PositiveNumber);

  auto* ga = app.add_subcommand("gains", "Second-order gain region");
  add_graph(ga, true);
  add_layer(ga);
  add_partition(ga, "Partition (default: the coarsest EEP)");
  add_gains(ga);
  ga->add_option("--report", cfg.report, "Write the JSON report here instead of stdout");

  auto* si = app.add_subcommand("simulate", "Integrate the closed loop and report convergence");
  add_graph(si, true);
  add_layer(si);
  add_partition(si, "Partition for the report (default: the coarsest EEP)");
  si->add_option("--model", cfg.model, "Agent model")->check(CLI::IsMember({"single", "second"}));
  si->add_option("--coords", cfg.coords, "Second-order coordinates")->check(CLI::IsMember({"state", "error"}));
  add_gains(si);
  add_steps(si);
  si->add_option("--x0", cfg.x0, "Initial positions: file or 'random'")->check(vector_source);
  si->add_option("--v0", cfg.v0, "Initial velocities: file or 'random'")->check(vector_source);
  si->add_option("--csv", cfg.csv, "Write the trajectory CSV here ('-' for stdout)");

  auto* ex = app.add_subcommand("example", "Run a built-in instance end to end");
  ex->add_option("id", cfg.example, "Instance 1..6")->required()->check(CLI::Range(1, 6));
  k1_opts.push_back(ex->add_option("--k1", k1, "Override the position gain"));
  k2_opts.push_back(ex->add_option("--k2", k2, "Override the velocity gain"));
  add_steps(ex);
  ex->add_option("--node-limit", cfg.node_limit, "Branch-and-bound node budget")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }
  for (auto* o : k1_opts)
    if (o->count()) cfg.k1 = k1;
  for (auto* o : k2_opts)
    if (o->count()) cfg.k2 = k2;
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  return run(cfg, out, err);
}

}  // namespace multicon::cli
